#pragma once

#include "dgs/multi_index.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/rational.hpp"
#include "dgs/series.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

/// Membership in the initial-data region X_m: the points of the nonnegative
/// orthant that are not componentwise >= m.
inline bool in_initial_set(const MultiIndex& x, const MultiIndex& m) {
    x.check_dim(m);
    if (!x.is_nonneg() || !m.is_nonneg())
        throw std::invalid_argument("initial-set membership expects nonnegative indices");
    return x.not_ge(m);
}

enum class EquationForm { forward, backward };

/// Homogeneous linear difference equation with polynomial coefficients.
///
/// forward:   sum over alpha in [0,m] of p_alpha(x) f(x+alpha) = 0,  x >= 0
/// backward:  sum over alpha in [0,m] of p_alpha(x) f(x-alpha) = 0,  x >= m
///
/// The two encode the same solution set; the leading polynomial (p_m forward,
/// p_0 backward) must not vanish identically. Constant-coefficient equations
/// are the special case where every p_alpha is constant.
class DifferenceEquation {
public:
    using TermMap = std::map<MultiIndex, Polynomial, GrlexLess>;

    DifferenceEquation(EquationForm form, MultiIndex order,
                       std::vector<std::pair<MultiIndex, Polynomial>> terms)
        : dim_(order.dim()), form_(form), m_(std::move(order)) {
        if (dim_ < 1) throw std::invalid_argument("equation dimension must be >= 1");
        if (!m_.is_nonneg()) throw std::invalid_argument("equation order must be >= 0");
        for (auto& [alpha, p] : terms) {
            alpha.check_dim(m_);
            if (!alpha.is_nonneg() || !m_.all_ge(alpha))
                throw std::invalid_argument("equation term shift " + alpha.str() +
                                            " outside [0, " + m_.str() + "]");
            if (p.dim() != dim_)
                throw std::invalid_argument("equation coefficient dimension mismatch");
            if (p.is_zero()) continue;
            auto it = terms_.find(alpha);
            if (it == terms_.end()) {
                terms_.emplace(std::move(alpha), std::move(p));
            } else {
                it->second += p;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        const MultiIndex lead =
            form_ == EquationForm::forward ? m_ : MultiIndex::zero(dim_);
        if (terms_.find(lead) == terms_.end())
            throw std::invalid_argument("leading coefficient must not vanish identically");
    }

    int dim() const { return dim_; }
    EquationForm form() const { return form_; }
    const MultiIndex& order() const { return m_; }
    const TermMap& terms() const { return terms_; }

    const Polynomial& leading() const {
        return terms_.at(form_ == EquationForm::forward ? m_ : MultiIndex::zero(dim_));
    }

    Polynomial coefficient(const MultiIndex& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Polynomial::zero(dim_) : it->second;
    }

    bool is_constant_coefficient() const {
        for (const auto& [alpha, p] : terms_)
            if (!p.is_constant()) return false;
        return true;
    }

    /// Forward <-> backward. The backward coefficient at beta is the forward
    /// coefficient at m - beta with its argument shifted by -m, and vice
    /// versa; the round trip is the identity.
    DifferenceEquation converted() const {
        std::vector<std::pair<MultiIndex, Polynomial>> flipped;
        flipped.reserve(terms_.size());
        const MultiIndex shift = form_ == EquationForm::forward ? -m_ : m_;
        for (const auto& [alpha, p] : terms_)
            flipped.emplace_back(m_ - alpha, p.shifted(shift));
        return DifferenceEquation(
            form_ == EquationForm::forward ? EquationForm::backward : EquationForm::forward, m_,
            std::move(flipped));
    }

    DifferenceEquation forward() const {
        return form_ == EquationForm::forward ? *this : converted();
    }
    DifferenceEquation backward() const {
        return form_ == EquationForm::backward ? *this : converted();
    }

    /// Scales all coefficients by a common factor so the forward leading
    /// polynomial has graded-lex leading coefficient 1. Equations are
    /// projective in an overall constant; this fixes a representative.
    DifferenceEquation normalized() const {
        const DifferenceEquation fwd = forward();
        const Rational lead = fwd.leading().leading_coefficient();
        std::vector<std::pair<MultiIndex, Polynomial>> scaled;
        scaled.reserve(fwd.terms_.size());
        for (const auto& [alpha, p] : fwd.terms_)
            scaled.emplace_back(alpha, p * lead.inverse());
        return DifferenceEquation(EquationForm::forward, fwd.m_, std::move(scaled));
    }

    friend bool operator==(const DifferenceEquation& a, const DifferenceEquation& b) {
        return a.dim_ == b.dim_ && a.form_ == b.form_ && a.m_ == b.m_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DifferenceEquation& a, const DifferenceEquation& b) {
        return !(a == b);
    }

private:
    int dim_;
    EquationForm form_;
    MultiIndex m_;
    TermMap terms_;
};

/// Initial data phi on the region base_offset + X_m: finitely many listed
/// values plus a default for the unlisted points (X_m is infinite for
/// n >= 2, so a finite listing plus default is the only finite encoding).
class InitialData {
public:
    using ValueMap = std::map<MultiIndex, Rational, GrlexLess>;

    InitialData(MultiIndex base_offset, std::vector<std::pair<MultiIndex, Rational>> values,
                Rational default_value)
        : base_(std::move(base_offset)), default_(std::move(default_value)) {
        if (!base_.is_nonneg())
            throw std::invalid_argument("initial-data base offset must be >= 0");
        for (auto& [x, v] : values) {
            x.check_dim(base_);
            if (!x.all_ge(base_))
                throw std::invalid_argument("initial value at " + x.str() +
                                            " lies below the base offset " + base_.str());
            if (!values_.emplace(std::move(x), std::move(v)).second)
                throw std::invalid_argument("duplicate initial value");
        }
    }

    static InitialData zero(int dim) {
        return InitialData(MultiIndex::zero(dim), {}, Rational(0));
    }

    const MultiIndex& base_offset() const { return base_; }
    const ValueMap& values() const { return values_; }
    const Rational& default_value() const { return default_; }

    bool in_region(const MultiIndex& x, const MultiIndex& m) const {
        return x.all_ge(base_) && (x - base_).not_ge(m);
    }

    /// Value of phi at a point of base + X_m.
    Rational at(const MultiIndex& x, const MultiIndex& m) const {
        if (!in_region(x, m))
            throw std::invalid_argument("index " + x.str() + " is outside the initial region");
        auto it = values_.find(x);
        return it == values_.end() ? default_ : it->second;
    }

    /// Zero-extended read: 0 below the base region, phi inside it.
    /// Reads at or beyond base + m are contract violations.
    Rational at_or_zero(const MultiIndex& x, const MultiIndex& m) const {
        if (!x.all_ge(base_)) return Rational(0);
        return at(x, m);
    }

    /// Same data shifted to the listed indices' region check of another m.
    void check_region(const MultiIndex& m) const {
        for (const auto& [x, v] : values_)
            if (!in_region(x, m))
                throw std::invalid_argument("initial value at " + x.str() +
                                            " is outside the initial region");
    }

private:
    MultiIndex base_;
    ValueMap values_;
    Rational default_;
};

struct CauchyProblem {
    DifferenceEquation equation;
    InitialData data;
    MultiIndex ell;

    CauchyProblem(DifferenceEquation eq, InitialData init, MultiIndex stretch)
        : equation(std::move(eq)), data(std::move(init)), ell(std::move(stretch)) {
        ell.check_dim(equation.order());
        data.base_offset().check_dim(equation.order());
        if (!ell.is_nonneg()) throw std::invalid_argument("ell must be >= 0");
        data.check_region(equation.order());
    }
};

/// Residual of one forward equation instance at x: sum p_alpha(x) f(x+alpha)
/// with absent table entries read as zero. Exactly zero on every instance
/// inside the window when the table solves the problem.
inline Rational equation_residual(const DifferenceEquation& eq, const Series& table,
                                  const MultiIndex& x) {
    const DifferenceEquation fwd = eq.forward();
    Rational r(0);
    for (const auto& [alpha, p] : fwd.terms()) r += p.evaluate(x) * table.at(x + alpha);
    return r;
}

/// Solves the Cauchy problem on the window box: phi on the initial region,
/// and for the remaining points the forward recursion
///
///   f(x+m) = -p_m(x)^{-1} * sum over alpha < m of p_alpha(x) f(x+alpha),
///
/// computed in graded-lex order (every dependency has strictly smaller
/// coordinate sum, so the order is well-founded). Points below the base
/// offset are absent from the table.
inline Series solve_cauchy(const CauchyProblem& problem, const MultiIndex& window) {
    const DifferenceEquation eq = problem.equation.forward();
    const MultiIndex& m = eq.order();
    const MultiIndex& base = problem.data.base_offset();
    window.check_dim(m);
    if (!window.all_ge(base + m))
        throw std::domain_error("window " + window.str() +
                                " too small: it must contain the initial-data box up to " +
                                (base + m).str());

    // The leading polynomial must be nonzero at every recursion site.
    const Polynomial& lead = eq.leading();
    for (const auto& x : box_points_grlex(base, window - m)) {
        if (lead.evaluate(x).is_zero())
            throw std::domain_error("leading coefficient vanishes at lattice point " + x.str());
    }

    Series table(problem.ell, window);
    for (const auto& y : box_points_grlex(base, window)) {
        if (problem.data.in_region(y, m)) {
            table.add_at(y, problem.data.at(y, m));
            continue;
        }
        const MultiIndex x = y - m;  // recursion site: y = x + m
        Rational acc(0);
        for (const auto& [alpha, p] : eq.terms()) {
            if (alpha == m) continue;
            acc += p.evaluate(x) * table.at(x + alpha);
        }
        table.add_at(y, -acc / lead.evaluate(x));
    }
    return table;
}

}  // namespace dgs
