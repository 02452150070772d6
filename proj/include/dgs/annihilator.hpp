#pragma once

#include "dgs/equation.hpp"
#include "dgs/multi_index.hpp"
#include "dgs/operators.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/series.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace dgs {

/// Annihilating operator of a forward equation sum p_alpha(x) f(x+alpha) = 0:
/// one normal-form term per alpha,
///
///     S^(m-alpha) o [p_alpha(t - alpha)](theta).
///
/// Applied to the series of any solution, the result is supported only on
/// the initial-data indices y with y "not >=" m (all coefficients at
/// y >= m vanish exactly).
inline SeriesOperator to_annihilator(const DifferenceEquation& eq, MultiIndex ell) {
    if (eq.form() != EquationForm::forward)
        throw std::invalid_argument("annihilator construction expects the forward form");
    ell.check_dim(eq.order());
    SeriesOperator op(std::move(ell));
    for (const auto& [alpha, p] : eq.terms())
        op.add_term(Rational(1), eq.order() - alpha, p.shifted(-alpha));
    return op;
}

/// Recurrence encoded by a normal-form operator: equating the coefficient
/// of every basis term of op(F) to zero gives the backward equation
///
///     sum over beta of Q_beta(y - beta) f(y - beta) = 0.
///
/// A common shift across all terms carries no constraint (S^c is injective
/// on series), so it is cancelled first; the returned equation has a
/// non-vanishing leading coefficient and minimal order.
inline DifferenceEquation to_recurrence(const SeriesOperator& op) {
    if (op.is_zero()) throw std::invalid_argument("zero operator encodes no recurrence");
    MultiIndex lo = op.terms().begin()->first;
    MultiIndex hi = lo;
    for (const auto& [beta, q] : op.terms()) {
        lo = componentwise_min(lo, beta);
        hi = componentwise_max(hi, beta);
    }
    const MultiIndex order = hi - lo;
    std::vector<std::pair<MultiIndex, Polynomial>> terms;
    terms.reserve(op.terms().size());
    for (const auto& [beta, q] : op.terms()) {
        const MultiIndex reduced = beta - lo;
        terms.emplace_back(reduced, q.shifted(-reduced));
    }
    return DifferenceEquation(EquationForm::backward, order, std::move(terms));
}

/// One-dimensional annihilating prefactor of a finitely supported series:
/// the operator term prod over support points x of (theta - x). Composing
/// it in front of anything that lands on that support yields zero, since
/// (theta - x) kills the basis term b_x.
inline SeriesOperator support_prefactor(const Series& rhs) {
    if (rhs.dim() != 1)
        throw std::invalid_argument("the annihilating prefactor is one-dimensional only");
    Polynomial q = Polynomial::one(1);
    for (const auto& [x, v] : rhs.coeffs())
        q = q * Polynomial::univariate({Rational(-x[0]), Rational(1)});
    SeriesOperator op(rhs.ell());
    op.add_term(Rational(1), MultiIndex::zero(1), q);
    return op;
}

}  // namespace dgs
