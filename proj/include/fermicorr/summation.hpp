#pragma once

#include <cstddef>
#include <cmath>
#include <functional>
#include <vector>

namespace fermicorr {

/// Neumaier's variant of Kahan summation.  The running compensation also
/// captures the error when the addend is larger than the partial sum.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init) {}

    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    // Merge another accumulator; both the sum and its compensation are kept.
    CompensatedSum& operator+=(const CompensatedSum& other) noexcept
    {
        add(other.sum_);
        add(other.comp_);
        return *this;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Number of worker threads.  Honours FERMI_CORR_THREADS when set to a
/// positive integer, otherwise std::thread::hardware_concurrency().
unsigned thread_count();

/// Runs body(i) for i in [0, n) across worker threads.  Iterations must be
/// independent; no ordering guarantee.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Deterministic reduction over [0, n).  The range is cut into fixed chunks
/// of `chunk` items (independent of the thread count); each chunk is summed
/// sequentially in index order and chunk totals are merged in chunk order,
/// so the result is bit-identical for any number of threads.
double ordered_sum(std::size_t n, std::size_t chunk,
                   const std::function<void(std::size_t, CompensatedSum&)>& body);

} // namespace fermicorr
