#pragma once

#include "fermicorr/fock/basis.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace fermicorr::fock {

struct LadderOp {
    std::size_t mode = 0;
    bool creation = false;
};

inline LadderOp create(std::size_t i) { return {i, true}; }
inline LadderOp annihilate(std::size_t i) { return {i, false}; }

/// Signed result of applying an operator string to a basis vector.
struct Transition {
    Mask mask = 0;
    int sign = 1;
};

/// a*_i or a_i acting on |mask>: flips bit i with sign (-1)^{#occupied below i}.
std::optional<Transition> apply_ladder(const LadderOp& op, Transition state) noexcept;

/// coeff * ops[0] ops[1] ... ops[n-1]; the last factor acts first.
struct Monomial {
    double coeff = 0.0;
    std::vector<LadderOp> ops;

    std::optional<Transition> apply(Mask mask) const noexcept;
    Monomial adjoint() const;
};

/// Formal sum of monomials.  No normal ordering or simplification is done;
/// the matrix of the sum is the sum of the monomial matrices.
class OperatorSum {
public:
    OperatorSum() = default;

    void add(double coeff, std::vector<LadderOp> ops);
    void add(const OperatorSum& other, double scale = 1.0);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    OperatorSum adjoint() const;
    /// Product A B as the concatenation of every pair of strings.
    friend OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);
    friend OperatorSum operator+(OperatorSum a, const OperatorSum& b)
    {
        a.add(b);
        return a;
    }
    friend OperatorSum operator*(double s, OperatorSum a)
    {
        for (auto& t : a.terms_) t.coeff *= s;
        return a;
    }

private:
    std::vector<Monomial> terms_;
};

/// y = A x on `basis` without assembling a matrix.  Throws CapacityError if
/// a term leaves the basis.
Eigen::VectorXd apply(const OperatorSum& op, const Basis& basis, const Eigen::VectorXd& x);

} // namespace fermicorr::fock
