#pragma once

#include "dgs/annihilator.hpp"
#include "dgs/equation.hpp"
#include "dgs/multi_index.hpp"
#include "dgs/operators.hpp"
#include "dgs/series.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

struct VerificationMismatch {
    std::string pair;  // e.g. "LHS-A" or "A-B"
    MultiIndex x;
    Rational lhs;
    Rational rhs;
};

struct VerificationReport {
    std::string theorem;  // "t1" | "t3" | "t4" | "t5"
    MultiIndex window;
    std::vector<VerificationMismatch> mismatches;
    std::size_t dropped = 0;  // basis terms pushed past the window while building

    bool pass() const { return mismatches.empty(); }
};

enum class TheoremSelector { automatic, t1, t3, t5 };

struct FormSelection {
    bool a = true;
    bool b = true;
    bool c = true;
};

/// The three equal right-hand sides of the constant-coefficient functional
/// equation, each built by an independent route.
struct ConstantRhsForms {
    Series a;  // shifted truncated series
    Series b;  // backward convolution of the initial data
    Series c;  // truncated operator applied per initial point
    std::size_t dropped = 0;
};

namespace detail {

inline void require_constant(const DifferenceEquation& eq) {
    if (!eq.is_constant_coefficient())
        throw std::invalid_argument("this functional equation requires constant coefficients");
}

inline std::vector<std::pair<MultiIndex, Rational>> backward_constants(
    const DifferenceEquation& eq) {
    const DifferenceEquation bwd = eq.backward();
    std::vector<std::pair<MultiIndex, Rational>> out;
    for (const auto& [beta, p] : bwd.terms()) out.emplace_back(beta, p.constant_value());
    return out;
}

/// Truncated series of the initial data: phi on the points of
/// [base, window] with x "not >=" base + tau.
inline Series initial_series_outside(const CauchyProblem& problem, const MultiIndex& window,
                                     const MultiIndex& tau) {
    const MultiIndex& base = problem.data.base_offset();
    const MultiIndex& m = problem.equation.order();
    const MultiIndex threshold = base + tau;
    Series out(problem.ell, window);
    for (const auto& x : box_points_grlex(base, window)) {
        if (x.not_ge(threshold)) out.add_at(x, problem.data.at(x, m));
    }
    return out;
}

/// Initial-data region of the window box: x >= base with x - base "not >=" m.
inline std::vector<MultiIndex> initial_points(const CauchyProblem& problem,
                                              const MultiIndex& window) {
    std::vector<MultiIndex> out;
    for (const auto& x : box_points_grlex(problem.data.base_offset(), window))
        if (problem.data.in_region(x, problem.equation.order())) out.push_back(x);
    return out;
}

/// Form B value at y: the backward difference operator applied to the
/// zero-extended initial data.
inline Series data_convolution_form(const CauchyProblem& problem, const MultiIndex& window,
                                    const std::vector<std::pair<MultiIndex, Rational>>& bwd) {
    const MultiIndex& m = problem.equation.order();
    Series out(problem.ell, window);
    for (const auto& y : initial_points(problem, window)) {
        Rational v(0);
        for (const auto& [beta, c] : bwd) v += c * problem.data.at_or_zero(y - beta, m);
        out.add_at(y, v);
    }
    return out;
}

/// Form C: for every initial point x, the strictly truncated shift operator
/// (keeping only shifts alpha with x + alpha still "not >=" base + m)
/// applied to phi(x) b_x.
inline Series truncated_operator_form(const CauchyProblem& problem, const MultiIndex& window,
                                      const std::vector<std::pair<MultiIndex, Rational>>& bwd,
                                      std::size_t& dropped) {
    const MultiIndex& m = problem.equation.order();
    const MultiIndex& base = problem.data.base_offset();
    const MultiIndex limit = base + m;
    Series out(problem.ell, window);
    for (const auto& x : initial_points(problem, window)) {
        const Rational phi = problem.data.at(x, m);
        if (phi.is_zero()) continue;
        for (const auto& [alpha, c] : bwd) {
            const MultiIndex y = x + alpha;
            if (!y.not_ge(limit)) continue;  // strict truncation: alpha "not >=" limit - x
            if (window.all_ge(y)) {
                out.add_at(y, c * phi);
            } else {
                ++dropped;
            }
        }
    }
    return out;
}

inline void compare_series(const Series& lhs, const Series& rhs, const std::string& pair,
                           VerificationReport& report) {
    lhs.check_compatible(rhs);
    std::vector<MultiIndex> keys;
    for (const auto& [x, v] : lhs.coeffs()) keys.push_back(x);
    for (const auto& [x, v] : rhs.coeffs())
        if (lhs.at(x).is_zero()) keys.push_back(x);
    std::sort(keys.begin(), keys.end(), GrlexLess{});
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const auto& x : keys) {
        const Rational l = lhs.at(x), r = rhs.at(x);
        if (l != r) report.mismatches.push_back({pair, x, l, r});
    }
}

}  // namespace detail

/// One-dimensional constant-coefficient right-hand sides. Form A is built
/// from truncations of the solved series itself; Forms B and C use only the
/// initial data.
inline ConstantRhsForms rhs_constant_univariate(const CauchyProblem& problem,
                                                const MultiIndex& window) {
    if (problem.equation.dim() != 1)
        throw std::invalid_argument("the univariate functional equation requires dim = 1");
    detail::require_constant(problem.equation);
    const auto bwd = detail::backward_constants(problem.equation);
    const std::int64_t r = problem.equation.order()[0];
    const std::int64_t base = problem.data.base_offset()[0];

    const Series solved = solve_cauchy(problem, window);
    ConstantRhsForms forms{Series(problem.ell, window), Series(problem.ell, window),
                           Series(problem.ell, window)};
    for (const auto& [beta, c] : bwd) {
        const std::int64_t k = beta[0];
        if (k >= r) continue;  // empty truncation
        const MultiIndex bound{base + r - k - 1};
        auto piece = shift_weight(solved.truncated(bound).resized(window), beta);
        forms.dropped += piece.dropped;
        forms.a += c * piece.series;
    }
    forms.b = detail::data_convolution_form(problem, window, bwd);
    forms.c = detail::truncated_operator_form(problem, window, bwd, forms.dropped);
    return forms;
}

/// Multidimensional constant-coefficient right-hand sides. Form A shifts the
/// truncated initial-data series; Forms B and C are as in one dimension.
inline ConstantRhsForms rhs_constant(const CauchyProblem& problem, const MultiIndex& window) {
    detail::require_constant(problem.equation);
    const auto bwd = detail::backward_constants(problem.equation);
    const MultiIndex& m = problem.equation.order();

    ConstantRhsForms forms{Series(problem.ell, window), Series(problem.ell, window),
                           Series(problem.ell, window)};
    for (const auto& [beta, c] : bwd) {
        const Series phi_tau = detail::initial_series_outside(problem, window, m - beta);
        auto piece = shift_weight(phi_tau, beta);
        forms.dropped += piece.dropped;
        forms.a += c * piece.series;
    }
    forms.b = detail::data_convolution_form(problem, window, bwd);
    forms.c = detail::truncated_operator_form(problem, window, bwd, forms.dropped);
    return forms;
}

/// Right-hand side for polynomial coefficients: with backward coefficients
/// q_beta, the contribution of shift beta is
///
///     sum over initial x with x "not >=" base + m - beta of
///         q_beta(x + beta) * phi(x)  at index  x + beta.
///
/// Equals the annihilator applied to the solved series on the whole window.
inline Series rhs_polynomial(const CauchyProblem& problem, const MultiIndex& window) {
    const DifferenceEquation bwd = problem.equation.backward();
    const MultiIndex& m = problem.equation.order();
    const MultiIndex& base = problem.data.base_offset();
    if (!window.all_ge(base + m))
        throw std::domain_error("window too small to contain the initial-data box");
    Series out(problem.ell, window);
    for (const auto& [beta, q] : bwd.terms()) {
        const MultiIndex threshold = base + m - beta;
        for (const auto& x : box_points_grlex(base, window)) {
            if (!x.not_ge(threshold)) continue;
            const MultiIndex y = x + beta;
            if (!window.all_ge(y)) continue;  // outside the truncation window
            out.add_at(y, q.evaluate(y) * problem.data.at(x, m));
        }
    }
    return out;
}

/// Solves the problem, applies the annihilating operator, builds the
/// requested right-hand sides, and compares everything coefficient-exactly
/// on the window. `rhs_data` substitutes different initial data into the
/// right-hand sides only (the solved left side keeps the problem's data),
/// which is useful for demonstrating a failing report.
inline VerificationReport verify_functional_equation(
    const CauchyProblem& problem, const MultiIndex& window,
    TheoremSelector selector = TheoremSelector::automatic, FormSelection forms = {},
    const std::optional<InitialData>& rhs_data = std::nullopt) {
    if (selector == TheoremSelector::automatic) {
        if (problem.equation.is_constant_coefficient())
            selector = problem.equation.dim() == 1 ? TheoremSelector::t1 : TheoremSelector::t3;
        else
            selector = TheoremSelector::t5;
    }

    const CauchyProblem rhs_problem =
        rhs_data ? CauchyProblem(problem.equation, *rhs_data, problem.ell) : problem;

    VerificationReport report;
    report.window = window;

    const Series solved = solve_cauchy(problem, window);
    const SeriesOperator ann = to_annihilator(problem.equation.forward(), problem.ell);
    auto lhs = ann.apply(solved);
    report.dropped += lhs.dropped;

    if (selector == TheoremSelector::t5) {
        report.theorem = "t5";
        const Series rhs = rhs_polynomial(rhs_problem, window);
        detail::compare_series(lhs.series, rhs, "LHS-RHS", report);
        return report;
    }

    report.theorem = selector == TheoremSelector::t1 ? "t1" : "t3";
    const ConstantRhsForms rhs = selector == TheoremSelector::t1
                                     ? rhs_constant_univariate(rhs_problem, window)
                                     : rhs_constant(rhs_problem, window);
    report.dropped += rhs.dropped;

    std::vector<std::pair<std::string, const Series*>> picked;
    if (forms.a) picked.emplace_back("A", &rhs.a);
    if (forms.b) picked.emplace_back("B", &rhs.b);
    if (forms.c) picked.emplace_back("C", &rhs.c);
    if (picked.empty()) throw std::invalid_argument("no right-hand-side forms selected");

    for (const auto& [label, series] : picked)
        detail::compare_series(lhs.series, *series, "LHS-" + label, report);
    for (std::size_t i = 0; i < picked.size(); ++i)
        for (std::size_t j = i + 1; j < picked.size(); ++j)
            detail::compare_series(*picked[i].second, *picked[j].second,
                                   picked[i].first + "-" + picked[j].first, report);
    return report;
}

/// Projection identity check: with S_j the axis shift-weights,
///
///   Pi[(1 - sum c_j S_j) F]  ==  sum over x >= (1,..,1) of
///                                 (f(x) - sum c_j f(x - e_j)) b_x,
///
/// the left side via combined projection of series operations, the right
/// side summed directly from the coefficient table. When the right side
/// vanishes (f solves the recurrence on the interior), the left side is the
/// zero series.
inline VerificationReport check_projection_identity(const std::vector<Rational>& c,
                                                    const Series& f, const MultiIndex& window) {
    if (static_cast<int>(c.size()) != f.dim())
        throw std::invalid_argument("coefficient vector dimension mismatch");
    for (int j = 0; j < f.dim(); ++j)
        if (f.ell()[j] < 1)
            throw std::domain_error("the projection identity requires ell >= (1,...,1)");

    VerificationReport report;
    report.theorem = "t4";
    report.window = componentwise_min(window, f.window());
    const Series g = f.truncated(report.window);

    Series combination = g;
    for (int j = 0; j < g.dim(); ++j) {
        auto piece = shift_weight(g, MultiIndex::unit(g.dim(), j));
        report.dropped += piece.dropped;
        combination -= c[static_cast<std::size_t>(j)] * piece.series;
    }
    const Series lhs = combination.combined_projection();

    Series rhs(g.ell(), report.window);
    for (const auto& y : box_points_grlex(MultiIndex::ones(g.dim()), report.window)) {
        Rational v = g.at(y);
        for (int j = 0; j < g.dim(); ++j)
            v -= c[static_cast<std::size_t>(j)] * g.at(y - MultiIndex::unit(g.dim(), j));
        rhs.add_at(y, v);
    }

    detail::compare_series(lhs, rhs, "LHS-RHS", report);
    if (rhs.is_zero() && !lhs.is_zero())
        report.mismatches.push_back(
            {"corollary", lhs.coeffs().begin()->first, lhs.coeffs().begin()->second, Rational(0)});
    return report;
}

}  // namespace dgs
