#pragma once

#include "fermicorr/fock/operators.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace fermicorr::fock {

/// Square CSR matrix over a fixed occupation basis.  Columns within a row
/// are sorted and unique; explicit zeros are dropped.
class SparseOperator {
public:
    SparseOperator() = default;

    /// Matrix of `op` restricted to `basis`.  Every term must map the basis
    /// into itself, otherwise CapacityError names the escaping state.
    static SparseOperator assemble(const OperatorSum& op, const Basis& basis);
    static SparseOperator from_triplets(std::size_t dimension, std::uint64_t basis_hash,
                                        std::vector<std::tuple<std::size_t, std::size_t, double>> triplets);
    static SparseOperator identity(std::size_t dimension, std::uint64_t basis_hash);
    static SparseOperator diagonal(const Eigen::VectorXd& d, std::uint64_t basis_hash);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }
    std::uint64_t basis_hash() const noexcept { return hash_; }

    /// y = A x, parallel over fixed row ranges.
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    double expectation(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd to_dense() const;
    SparseOperator transpose() const;

    /// max_ij |A_ij - A_ji|.
    double hermiticity_defect() const;
    /// max_i sum_j |A_ij|, an upper bound on the spectral norm.
    double norm_bound() const;
    double max_abs() const;

    friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
    friend SparseOperator operator*(double s, const SparseOperator& a);
    /// Matrix product A B.
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

    /// Text dump: `# dimension D`, `# basis_hash H`, then `row col value`
    /// lines with 17 significant digits.
    void write_triplets(std::ostream& out) const;
    static SparseOperator read_triplets(std::istream& in);

    const std::vector<std::size_t>& row_offsets() const noexcept { return offsets_; }
    const std::vector<std::size_t>& columns() const noexcept { return cols_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t dim_ = 0;
    std::uint64_t hash_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

/// max |A_ij - B_ij|; both must share dimension and basis hash.
double max_entry_difference(const SparseOperator& a, const SparseOperator& b);

} // namespace fermicorr::fock
