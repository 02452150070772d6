#pragma once

#include "dgs/multi_index.hpp"
#include "dgs/polynomial.hpp"
#include "dgs/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dgs {

/// Truncated discrete generating series
///
///     sum over 0 <= x <= window of  f(x) * xi^x * z^(falling ell*x)
///
/// represented by its coefficient table x -> f(x). The basis term
/// xi^x z^(falling ell*x) is determined by the index x, so xi and z never
/// appear until evaluation; every operator of the algebra acts as an exact
/// index manipulation on the table. No zero coefficients are stored.
class Series {
public:
    using CoeffMap = std::map<MultiIndex, Rational, GrlexLess>;
    using Entry = std::pair<MultiIndex, Rational>;

    Series(MultiIndex ell, MultiIndex window)
        : dim_(ell.dim()), ell_(std::move(ell)), window_(std::move(window)) {
        if (dim_ < 1) throw std::invalid_argument("series dimension must be >= 1");
        window_.check_dim(ell_);
        if (!ell_.is_nonneg()) throw std::invalid_argument("series parameter ell must be >= 0");
        if (!window_.is_nonneg()) throw std::invalid_argument("series window must be >= 0");
    }

    /// Canonical construction: duplicate indices are summed, zeros dropped,
    /// out-of-window or negative indices rejected.
    Series(MultiIndex ell, MultiIndex window, const std::vector<Entry>& entries)
        : Series(std::move(ell), std::move(window)) {
        for (const auto& [x, v] : entries) add_at(x, v);
    }

    int dim() const { return dim_; }
    const MultiIndex& ell() const { return ell_; }
    const MultiIndex& window() const { return window_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient at x; absent entries read as 0.
    Rational at(const MultiIndex& x) const {
        x.check_dim(window_);
        auto it = coeffs_.find(x);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    /// Accumulate v into the coefficient at x, keeping the table canonical.
    void add_at(const MultiIndex& x, const Rational& v) {
        x.check_dim(window_);
        if (!x.is_nonneg() || !window_.all_ge(x))
            throw std::invalid_argument("series index " + x.str() + " outside window [0, " +
                                        window_.str() + "]");
        if (v.is_zero()) return;
        auto it = coeffs_.find(x);
        if (it == coeffs_.end()) {
            coeffs_.emplace(x, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    /// Coefficients with x <= s retained; the window shrinks to min(s, window).
    Series truncated(const MultiIndex& s) const {
        s.check_dim(window_);
        if (!s.is_nonneg()) throw std::invalid_argument("truncation bound must be >= 0");
        Series out(ell_, componentwise_min(s, window_));
        for (const auto& [x, v] : coeffs_)
            if (s.all_ge(x)) out.add_at(x, v);
        return out;
    }

    /// Same coefficients on a different window; every stored index must fit.
    Series resized(const MultiIndex& new_window) const {
        Series out(ell_, new_window);
        for (const auto& [x, v] : coeffs_) out.add_at(x, v);
        return out;
    }

    /// Coefficient slice x_j = 0, realizing the substitution z_j = 0.
    /// Requires ell_j >= 1: only then do the basis terms with x_j >= 1
    /// vanish at z_j = 0.
    Series projected(int axis) const {
        check_axis(axis);
        if (ell_[axis] < 1)
            throw std::domain_error("projection undefined for ell_j = 0 (axis " +
                                    std::to_string(axis + 1) + ")");
        Series out(ell_, window_);
        for (const auto& [x, v] : coeffs_)
            if (x[axis] == 0) out.add_at(x, v);
        return out;
    }

    /// Combined projection: retains exactly the coefficients with
    /// x >= (1,...,1). Requires ell >= (1,...,1).
    Series combined_projection() const {
        for (int j = 0; j < dim_; ++j)
            if (ell_[j] < 1)
                throw std::domain_error("combined projection requires ell >= (1,...,1)");
        const MultiIndex ones = MultiIndex::ones(dim_);
        Series out(ell_, window_);
        for (const auto& [x, v] : coeffs_)
            if (x.all_ge(ones)) out.add_at(x, v);
        return out;
    }

    /// Exact literal evaluation of the truncated sum:
    /// sum f(x) * prod_j xi_j^{x_j} * (z_j)^(falling ell_j*x_j).
    Rational evaluate(const std::vector<Rational>& xi, const std::vector<Rational>& z) const {
        if (static_cast<int>(xi.size()) != dim_ || static_cast<int>(z.size()) != dim_)
            throw std::invalid_argument("evaluation point dimension mismatch");
        Rational total(0);
        for (const auto& [x, v] : coeffs_) {
            Rational term = v;
            for (int j = 0; j < dim_ && !term.is_zero(); ++j) {
                term *= xi[j].pow(static_cast<std::uint64_t>(x[j]));
                term *= falling_factorial(z[j], ell_[j] * x[j]);
            }
            total += term;
        }
        return total;
    }

    Series& operator+=(const Series& o) {
        check_compatible(o);
        for (const auto& [x, v] : o.coeffs_) add_at(x, v);
        return *this;
    }
    Series& operator-=(const Series& o) {
        check_compatible(o);
        for (const auto& [x, v] : o.coeffs_) add_at(x, -v);
        return *this;
    }
    Series& operator*=(const Rational& s) {
        if (s.is_zero()) {
            coeffs_.clear();
        } else {
            for (auto& [x, v] : coeffs_) v *= s;
        }
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Rational& s) { return a *= s; }
    friend Series operator*(const Rational& s, Series a) { return a *= s; }

    /// Strict equality: same dimension, ell, window and coefficient table.
    /// All verification comparisons use this form.
    friend bool operator==(const Series& a, const Series& b) {
        return a.dim_ == b.dim_ && a.ell_ == b.ell_ && a.window_ == b.window_ &&
               a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    void check_axis(int axis) const {
        if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
    }
    void check_compatible(const Series& o) const {
        if (o.dim_ != dim_ || o.ell_ != ell_ || o.window_ != window_)
            throw std::invalid_argument("series dim/ell/window mismatch");
    }

private:
    int dim_;
    MultiIndex ell_;
    MultiIndex window_;
    CoeffMap coeffs_;
};

/// Comparison over the intersection of the two windows (the loose variant;
/// the strict one is operator==).
inline bool agree_on_common_window(const Series& a, const Series& b) {
    if (a.dim() != b.dim() || a.ell() != b.ell()) return false;
    const MultiIndex common = componentwise_min(a.window(), b.window());
    for (const auto& [x, v] : a.coeffs())
        if (common.all_ge(x) && b.at(x) != v) return false;
    for (const auto& [x, v] : b.coeffs())
        if (common.all_ge(x) && a.at(x) != v) return false;
    return true;
}

}  // namespace dgs
