#pragma once

#include "dgs/multi_index.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/rational.hpp"
#include "dgs/series.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgs {

/// theta_j on the coefficient table: the coefficient at x becomes x_j * f(x).
/// (On basis terms, theta_j b_x = x_j b_x.) Defined for every ell, including
/// ell_j = 0; only the analytic evaluation route needs ell_j >= 1.
inline Series theta(const Series& f, int axis) {
    f.check_axis(axis);
    Series out(f.ell(), f.window());
    for (const auto& [x, v] : f.coeffs()) out.add_at(x, Rational(x[axis]) * v);
    return out;
}

struct ShiftResult {
    Series series;
    std::size_t dropped = 0;  // input terms shifted past the window
};

/// Shift-weight factor xi^beta z^(falling ell*beta) rho^(ell*beta): sends the
/// basis term b_x to b_{x+beta}. The output window equals the input window;
/// terms shifted past it are dropped and counted, never silently lost.
inline ShiftResult shift_weight(const Series& f, const MultiIndex& beta) {
    beta.check_dim(f.window());
    if (!beta.is_nonneg()) throw std::invalid_argument("shift must be nonnegative");
    ShiftResult r{Series(f.ell(), f.window()), 0};
    for (const auto& [x, v] : f.coeffs()) {
        const MultiIndex y = x + beta;
        if (f.window().all_ge(y)) {
            r.series.add_at(y, v);
        } else {
            ++r.dropped;
        }
    }
    return r;
}

/// Presentation of one normal-form term: coeff * S^beta o q(theta).
struct OperatorTerm {
    Rational coeff;
    MultiIndex beta;
    Polynomial q;
};

struct OperatorApplication {
    Series series;
    std::size_t dropped = 0;
};

/// Annihilating/shift operator in normal form: a finite sum of terms
/// S^beta o q(theta), at most one per shift beta. A term acts on the
/// coefficient table as
///
///     output at x + beta  +=  q(x) * f(x),
///
/// i.e. the index polynomial reads the pre-shift index. Composition follows
/// from the commutation law q(theta) o S^beta = S^beta o q(theta + beta).
class SeriesOperator {
public:
    using TermMap = std::map<MultiIndex, Polynomial, GrlexLess>;

    SeriesOperator(MultiIndex ell) : dim_(ell.dim()), ell_(std::move(ell)) {
        if (dim_ < 1) throw std::invalid_argument("operator dimension must be >= 1");
        if (!ell_.is_nonneg()) throw std::invalid_argument("operator ell must be >= 0");
    }

    static SeriesOperator identity(MultiIndex ell) {
        SeriesOperator op(std::move(ell));
        op.add_term(Rational(1), MultiIndex::zero(op.dim_), Polynomial::one(op.dim_));
        return op;
    }

    int dim() const { return dim_; }
    const MultiIndex& ell() const { return ell_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Rational& coeff, MultiIndex beta, const Polynomial& q) {
        beta.check_dim(ell_);
        if (!beta.is_nonneg()) throw std::invalid_argument("operator shift must be >= 0");
        if (q.dim() != dim_) throw std::invalid_argument("operator polynomial dimension mismatch");
        Polynomial scaled = q * coeff;
        if (scaled.is_zero()) return;
        auto it = terms_.find(beta);
        if (it == terms_.end()) {
            terms_.emplace(std::move(beta), std::move(scaled));
        } else {
            it->second += scaled;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Canonical presentation: the constant part of each shift lives in the
    /// coefficient, a non-constant index polynomial keeps coefficient 1.
    std::vector<OperatorTerm> presentation() const {
        std::vector<OperatorTerm> out;
        out.reserve(terms_.size());
        for (const auto& [beta, q] : terms_) {
            if (q.is_constant()) {
                out.push_back({q.constant_value(), beta, Polynomial::one(dim_)});
            } else {
                out.push_back({Rational(1), beta, q});
            }
        }
        return out;
    }

    OperatorApplication apply(const Series& f) const {
        if (f.dim() != dim_ || f.ell() != ell_)
            throw std::invalid_argument("operator/series dim or ell mismatch");
        OperatorApplication r{Series(f.ell(), f.window()), 0};
        for (const auto& [beta, q] : terms_) {
            for (const auto& [x, v] : f.coeffs()) {
                const MultiIndex y = x + beta;
                if (f.window().all_ge(y)) {
                    r.series.add_at(y, q.evaluate(x) * v);
                } else {
                    ++r.dropped;
                }
            }
        }
        return r;
    }

    /// Composition a o b: (a*b).apply(f) == a.apply(b.apply(f).series).series
    /// whenever nothing falls off the window. Term-by-term,
    /// (S^b1 o q1) o (S^b2 o q2) = S^(b1+b2) o [q1(t + b2) * q2(t)].
    friend SeriesOperator operator*(const SeriesOperator& a, const SeriesOperator& b) {
        if (a.dim_ != b.dim_ || a.ell_ != b.ell_)
            throw std::invalid_argument("operator dim or ell mismatch");
        SeriesOperator r(a.ell_);
        for (const auto& [ba, qa] : a.terms_)
            for (const auto& [bb, qb] : b.terms_)
                r.add_term(Rational(1), ba + bb, qa.shifted(bb) * qb);
        return r;
    }

    SeriesOperator& operator+=(const SeriesOperator& o) {
        if (o.dim_ != dim_ || o.ell_ != ell_)
            throw std::invalid_argument("operator dim or ell mismatch");
        for (const auto& [beta, q] : o.terms_) add_term(Rational(1), beta, q);
        return *this;
    }
    friend SeriesOperator operator+(SeriesOperator a, const SeriesOperator& b) { return a += b; }
    friend SeriesOperator operator*(SeriesOperator a, const Rational& s) {
        for (auto& [beta, q] : a.terms_) q *= s;
        if (s.is_zero()) a.terms_.clear();
        return a;
    }

    friend bool operator==(const SeriesOperator& a, const SeriesOperator& b) {
        return a.dim_ == b.dim_ && a.ell_ == b.ell_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SeriesOperator& a, const SeriesOperator& b) { return !(a == b); }

private:
    int dim_;
    MultiIndex ell_;
    TermMap terms_;
};

namespace detail {

/// theta^e F evaluated as a function of z at the point w, by the recursion
/// theta_j G(w) = (1/ell_j) * w_j * (G(w) - G(w - e_j)).
inline Rational theta_power_eval(const Series& f, MultiIndex e,
                                 const std::vector<Rational>& xi, std::vector<Rational> w) {
    for (int j = 0; j < f.dim(); ++j) {
        if (e[j] > 0) {
            if (f.ell()[j] < 1)
                throw std::domain_error(
                    "analytic theta evaluation requires ell_j >= 1 on axis " +
                    std::to_string(j + 1));
            --e[j];
            const Rational here = theta_power_eval(f, e, xi, w);
            std::vector<Rational> prev = w;
            prev[j] -= Rational(1);
            const Rational before = theta_power_eval(f, e, xi, std::move(prev));
            return w[j] * (here - before) / Rational(f.ell()[j]);
        }
    }
    return f.evaluate(xi, w);
}

}  // namespace detail

/// Evaluates op(F) at the point (xi, z) as a function of z, without ever
/// forming the output coefficient table:
///
///   S^beta G(z) = xi^beta * z^(falling ell*beta) * G(z - ell*beta),
///   theta_j G(z) = (1/ell_j) * z_j * (G(z) - G(z - e_j)).
///
/// Independent of apply(); the two routes agree exactly whenever apply()
/// dropped nothing.
inline Rational analytic_eval(const SeriesOperator& op, const Series& f,
                              const std::vector<Rational>& xi, const std::vector<Rational>& z) {
    if (f.dim() != op.dim() || f.ell() != op.ell())
        throw std::invalid_argument("operator/series dim or ell mismatch");
    if (static_cast<int>(xi.size()) != op.dim() || static_cast<int>(z.size()) != op.dim())
        throw std::invalid_argument("evaluation point dimension mismatch");
    Rational total(0);
    for (const auto& [beta, q] : op.terms()) {
        Rational weight(1);
        std::vector<Rational> shifted_z = z;
        for (int j = 0; j < op.dim(); ++j) {
            weight *= xi[j].pow(static_cast<std::uint64_t>(beta[j]));
            weight *= falling_factorial(z[j], op.ell()[j] * beta[j]);
            shifted_z[j] -= Rational(op.ell()[j] * beta[j]);
        }
        if (weight.is_zero()) continue;
        Rational inner(0);
        for (const auto& [e, c] : q.terms())
            inner += c * detail::theta_power_eval(f, e, xi, shifted_z);
        total += weight * inner;
    }
    return total;
}

}  // namespace dgs
