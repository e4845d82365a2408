#include "fermicorr/fock/operators.hpp"

#include "fermicorr/error.hpp"

#include <algorithm>

namespace fermicorr::fock {

std::optional<Transition> apply_ladder(const LadderOp& op, Transition state) noexcept
{
    const Mask bit = Mask{1} << op.mode;
    const bool occupied = (state.mask & bit) != 0;
    if (occupied == op.creation) return std::nullopt;
    if (__builtin_popcountll(state.mask & (bit - 1)) & 1) state.sign = -state.sign;
    state.mask ^= bit;
    return state;
}

std::optional<Transition> Monomial::apply(Mask mask) const noexcept
{
    Transition t{mask, 1};
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto next = apply_ladder(*it, t);
        if (!next) return std::nullopt;
        t = *next;
    }
    return t;
}

Monomial Monomial::adjoint() const
{
    Monomial m{coeff, {}};
    m.ops.reserve(ops.size());
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) m.ops.push_back({it->mode, !it->creation});
    return m;
}

void OperatorSum::add(double coeff, std::vector<LadderOp> ops)
{
    if (coeff == 0.0) return;
    terms_.push_back({coeff, std::move(ops)});
}

void OperatorSum::add(const OperatorSum& other, double scale)
{
    for (const auto& t : other.terms_) add(scale * t.coeff, t.ops);
}

OperatorSum OperatorSum::adjoint() const
{
    OperatorSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
    return out;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b)
{
    OperatorSum out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            std::vector<LadderOp> ops = x.ops;
            ops.insert(ops.end(), y.ops.begin(), y.ops.end());
            out.add(x.coeff * y.coeff, std::move(ops));
        }
    return out;
}

Eigen::VectorXd apply(const OperatorSum& op, const Basis& basis, const Eigen::VectorXd& x)
{
    if (static_cast<std::size_t>(x.size()) != basis.dimension()) throw DomainError("vector does not match basis");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        if (x[j] == 0.0) continue;
        for (const auto& t : op.terms()) {
            const auto r = t.apply(basis[j]);
            if (!r) continue;
            const auto i = basis.find(r->mask);
            if (!i) throw CapacityError("operator leaves the basis at mask " + std::to_string(r->mask));
            y[*i] += t.coeff * r->sign * x[j];
        }
    }
    return y;
}

} // namespace fermicorr::fock
