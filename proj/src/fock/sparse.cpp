#include "fermicorr/fock/sparse.hpp"

#include "fermicorr/error.hpp"
#include "fermicorr/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

namespace fermicorr::fock {

namespace {

constexpr std::size_t kRowChunk = 256;

using Entries = std::vector<std::pair<std::size_t, double>>;

// Sorts by index (stable, so duplicates merge in insertion order) and sums
// duplicates; exact zeros are dropped.
void compress(Entries& e)
{
    std::stable_sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < e.size();) {
        std::size_t j = i;
        double s = 0.0;
        while (j < e.size() && e[j].first == e[i].first) s += e[j++].second;
        if (s != 0.0) e[out++] = {e[i].first, s};
        i = j;
    }
    e.resize(out);
}

} // namespace

SparseOperator SparseOperator::assemble(const OperatorSum& op, const Basis& basis)
{
    const std::size_t dim = basis.dimension();
    // Build column by column (the action on each basis state), then transpose.
    std::vector<Entries> columns(dim);
    const std::size_t chunks = (dim + kRowChunk - 1) / kRowChunk;
    std::vector<std::string> failures(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        for (std::size_t j = c * kRowChunk; j < std::min(dim, (c + 1) * kRowChunk); ++j) {
            auto& col = columns[j];
            for (const auto& t : op.terms()) {
                const auto r = t.apply(basis[j]);
                if (!r) continue;
                const auto i = basis.find(r->mask);
                if (!i) {
                    if (failures[c].empty())
                        failures[c] = "operator maps basis state " + std::to_string(basis[j]) + " to " +
                                      std::to_string(r->mask) + " outside the basis";
                    continue;
                }
                col.emplace_back(*i, t.coeff * r->sign);
            }
            compress(col);
        }
    });
    for (const auto& f : failures)
        if (!f.empty()) throw CapacityError(f);

    SparseOperator m;
    m.dim_ = dim;
    m.hash_ = basis.hash();
    m.offsets_.assign(dim + 1, 0);
    for (const auto& col : columns)
        for (const auto& e : col) ++m.offsets_[e.first + 1];
    for (std::size_t i = 0; i < dim; ++i) m.offsets_[i + 1] += m.offsets_[i];
    m.cols_.resize(m.offsets_[dim]);
    m.values_.resize(m.offsets_[dim]);
    std::vector<std::size_t> fill(m.offsets_.begin(), m.offsets_.end() - 1);
    // Columns are visited in increasing order, so each row ends up sorted.
    for (std::size_t j = 0; j < dim; ++j)
        for (const auto& [i, v] : columns[j]) {
            m.cols_[fill[i]] = j;
            m.values_[fill[i]++] = v;
        }
    return m;
}

SparseOperator SparseOperator::from_triplets(std::size_t dimension, std::uint64_t basis_hash,
                                             std::vector<std::tuple<std::size_t, std::size_t, double>> triplets)
{
    std::vector<Entries> rows(dimension);
    for (const auto& [i, j, v] : triplets) {
        if (i >= dimension || j >= dimension) throw DomainError("triplet index out of range");
        rows[i].emplace_back(j, v);
    }
    SparseOperator m;
    m.dim_ = dimension;
    m.hash_ = basis_hash;
    m.offsets_.assign(dimension + 1, 0);
    for (std::size_t i = 0; i < dimension; ++i) {
        compress(rows[i]);
        for (const auto& [j, v] : rows[i]) {
            m.cols_.push_back(j);
            m.values_.push_back(v);
        }
        m.offsets_[i + 1] = m.cols_.size();
    }
    return m;
}

SparseOperator SparseOperator::identity(std::size_t dimension, std::uint64_t basis_hash)
{
    return diagonal(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dimension)), basis_hash);
}

SparseOperator SparseOperator::diagonal(const Eigen::VectorXd& d, std::uint64_t basis_hash)
{
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    for (Eigen::Index i = 0; i < d.size(); ++i) t.emplace_back(i, i, d[i]);
    return from_triplets(static_cast<std::size_t>(d.size()), basis_hash, std::move(t));
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const
{
    if (static_cast<std::size_t>(x.size()) != dim_) throw DomainError("vector dimension mismatch");
    Eigen::VectorXd y(x.size());
    const std::size_t chunks = (dim_ + kRowChunk - 1) / kRowChunk;
    parallel_for(chunks, [&](std::size_t c) {
        for (std::size_t i = c * kRowChunk; i < std::min(dim_, (c + 1) * kRowChunk); ++i) {
            double s = 0.0;
            for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) s += values_[e] * x[cols_[e]];
            y[i] = s;
        }
    });
    return y;
}

double SparseOperator::expectation(const Eigen::VectorXd& x) const
{
    const Eigen::VectorXd y = apply(x);
    CompensatedSum s;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s.value();
}

Eigen::MatrixXd SparseOperator::to_dense() const
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) d(i, cols_[e]) = values_[e];
    return d;
}

SparseOperator SparseOperator::transpose() const
{
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    t.reserve(values_.size());
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) t.emplace_back(cols_[e], i, values_[e]);
    return from_triplets(dim_, hash_, std::move(t));
}

double SparseOperator::hermiticity_defect() const
{
    return max_entry_difference(*this, transpose());
}

double SparseOperator::norm_bound() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) s += std::abs(values_[e]);
        m = std::max(m, s);
    }
    return m;
}

double SparseOperator::max_abs() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

SparseOperator combine(const SparseOperator& a, const SparseOperator& b, double sb)
{
    if (a.dimension() != b.dimension() || a.basis_hash() != b.basis_hash())
        throw DomainError("operators live on different bases");
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    t.reserve(a.nonzeros() + b.nonzeros());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        for (std::size_t e = a.row_offsets()[i]; e < a.row_offsets()[i + 1]; ++e)
            t.emplace_back(i, a.columns()[e], a.values()[e]);
        for (std::size_t e = b.row_offsets()[i]; e < b.row_offsets()[i + 1]; ++e)
            t.emplace_back(i, b.columns()[e], sb * b.values()[e]);
    }
    return SparseOperator::from_triplets(a.dimension(), a.basis_hash(), std::move(t));
}

} // namespace

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) { return combine(a, b, 1.0); }
SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) { return combine(a, b, -1.0); }

SparseOperator operator*(double s, const SparseOperator& a)
{
    SparseOperator out = a;
    for (auto& v : out.values_) v *= s;
    if (s == 0.0) out = SparseOperator::from_triplets(a.dim_, a.hash_, {});
    return out;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b)
{
    if (a.dim_ != b.dim_ || a.hash_ != b.hash_) throw DomainError("operators live on different bases");
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    for (std::size_t i = 0; i < a.dim_; ++i)
        for (std::size_t e = a.offsets_[i]; e < a.offsets_[i + 1]; ++e) {
            const std::size_t k = a.cols_[e];
            for (std::size_t f = b.offsets_[k]; f < b.offsets_[k + 1]; ++f)
                t.emplace_back(i, b.cols_[f], a.values_[e] * b.values_[f]);
        }
    return SparseOperator::from_triplets(a.dim_, a.hash_, std::move(t));
}

double max_entry_difference(const SparseOperator& a, const SparseOperator& b)
{
    return (a - b).max_abs();
}

void SparseOperator::write_triplets(std::ostream& out) const
{
    out << "# dimension " << dim_ << "\n# basis_hash " << hash_ << "\n";
    char buf[64];
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
            std::snprintf(buf, sizeof buf, "%.17g", values_[e]);
            out << i << ' ' << cols_[e] << ' ' << buf << '\n';
        }
}

SparseOperator SparseOperator::read_triplets(std::istream& in)
{
    std::string line;
    std::size_t dim = 0;
    std::uint64_t hash = 0;
    bool have_dim = false;
    std::vector<std::tuple<std::size_t, std::size_t, double>> t;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream s(line);
        if (line[0] == '#') {
            std::string hashmark, key;
            s >> hashmark >> key;
            if (key == "dimension") have_dim = static_cast<bool>(s >> dim);
            else if (key == "basis_hash") s >> hash;
            continue;
        }
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(s >> i >> j >> v)) throw ConfigError("triplet line " + std::to_string(lineno) + " is malformed");
        t.emplace_back(i, j, v);
    }
    if (!have_dim) throw ConfigError("triplet dump has no '# dimension' header");
    return from_triplets(dim, hash, std::move(t));
}

} // namespace fermicorr::fock
