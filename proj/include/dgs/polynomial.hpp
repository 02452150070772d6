#pragma once

#include "dgs/multi_index.hpp"
#include "dgs/rational.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgs {

/// Falling factorial z(z-1)...(z-n+1); the empty product (n = 0) is 1.
/// z may be any rational, which the evaluation cross-checks rely on.
inline Rational falling_factorial(const Rational& z, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("falling factorial needs a nonnegative length");
    Rational result(1);
    Rational factor = z;
    for (std::int64_t i = 0; i < n; ++i) {
        result *= factor;
        factor -= Rational(1);
        if (result.is_zero()) break;
    }
    return result;
}

/// Sparse polynomial over Q in n index variables t_1..t_n, stored as
/// exponent -> coefficient with no zero entries. Terms are kept in graded
/// lexicographic order, which doubles as the canonical serialization order.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

    explicit Polynomial(int dim) : dim_(check_dim_arg(dim)) {}

    static Polynomial zero(int dim) { return Polynomial(dim); }
    static Polynomial constant(int dim, Rational value) {
        Polynomial p(dim);
        p.add_term(MultiIndex::zero(dim), std::move(value));
        return p;
    }
    static Polynomial one(int dim) { return constant(dim, Rational(1)); }
    static Polynomial variable(int dim, int axis) {
        Polynomial p(dim);
        p.add_term(MultiIndex::unit(dim, axis), Rational(1));
        return p;
    }
    static Polynomial monomial(MultiIndex exponent, Rational coeff) {
        if (!exponent.is_nonneg())
            throw std::invalid_argument("polynomial exponent must be nonnegative");
        Polynomial p(exponent.dim());
        p.add_term(std::move(exponent), std::move(coeff));
        return p;
    }
    /// One-variable polynomial from ascending coefficients c0, c1, ...
    static Polynomial univariate(const std::vector<Rational>& coeffs) {
        Polynomial p(1);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            p.add_term(MultiIndex{static_cast<std::int64_t>(j)}, coeffs[j]);
        return p;
    }

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.sum() == 0);
    }
    Rational constant_value() const {
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }
    std::int64_t total_degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.sum();
    }
    std::int64_t degree_in(int axis) const {
        std::int64_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[axis]);
        return d;
    }
    /// Coefficient of the graded-lex largest term (0 for the zero polynomial).
    Rational leading_coefficient() const {
        return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
    }

    void add_term(MultiIndex exponent, Rational coeff) {
        if (exponent.dim() != dim_)
            throw std::invalid_argument("polynomial term dimension mismatch");
        if (!exponent.is_nonneg())
            throw std::invalid_argument("polynomial exponent must be nonnegative");
        if (coeff.is_zero()) return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(std::move(exponent), std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_same_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
        } else {
            for (auto& [e, c] : terms_) c *= s;
        }
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Exact evaluation at a rational point.
    Rational evaluate(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != dim_)
            throw std::invalid_argument("evaluation point dimension mismatch");
        Rational result(0);
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (int j = 0; j < dim_; ++j)
                if (e[j] > 0) term *= point[j].pow(static_cast<std::uint64_t>(e[j]));
            result += term;
        }
        return result;
    }
    Rational evaluate(const MultiIndex& point) const {
        std::vector<Rational> p;
        p.reserve(point.dim());
        for (int j = 0; j < point.dim(); ++j) p.emplace_back(point[j]);
        return evaluate(p);
    }

    /// Argument shift: returns r with r(t) = (*this)(t + beta). beta may
    /// have negative components.
    Polynomial shifted(const MultiIndex& beta) const {
        if (beta.dim() != dim_)
            throw std::invalid_argument("shift dimension mismatch");
        Polynomial result(dim_);
        for (const auto& [e, c] : terms_) {
            Polynomial term = constant(dim_, c);
            for (int j = 0; j < dim_; ++j) {
                if (e[j] == 0) continue;
                term = term * binomial_power(dim_, j, e[j], beta[j]);
            }
            result += term;
        }
        return result;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // graded-lex descending, largest term first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational a = c;
            if (first) {
                if (a.sign() < 0) {
                    os << '-';
                    a = -a;
                }
            } else {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            first = false;
            const bool has_vars = e.sum() > 0;
            if (!has_vars || !a.is_one()) os << a.str();
            bool printed = !has_vars || !a.is_one();
            for (int j = 0; j < dim_; ++j) {
                if (e[j] == 0) continue;
                if (printed) os << '*';
                if (dim_ == 1) os << 't';
                else os << 't' << (j + 1);
                if (e[j] > 1) os << '^' << e[j];
                printed = true;
            }
        }
        return os.str();
    }

private:
    static int check_dim_arg(int dim) {
        if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
        return dim;
    }
    void check_same_dim(const Polynomial& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    /// Expansion of (t_j + b)^e by the binomial theorem.
    static Polynomial binomial_power(int dim, int axis, std::int64_t e, std::int64_t b) {
        Polynomial p(dim);
        Rational binom(1);
        Rational b_rat(b);
        // k from e down to 0: coefficient C(e,k) * b^(e-k) on t_j^k
        Rational b_pow(1);
        std::vector<Rational> coeffs(static_cast<std::size_t>(e) + 1);
        for (std::int64_t k = e; k >= 0; --k) {
            coeffs[static_cast<std::size_t>(k)] = binom * b_pow;
            if (k > 0) {
                binom *= Rational(k) / Rational(e - k + 1);
                b_pow *= b_rat;
            }
        }
        for (std::int64_t k = 0; k <= e; ++k) {
            MultiIndex exp = MultiIndex::zero(dim);
            exp[axis] = k;
            p.add_term(std::move(exp), coeffs[static_cast<std::size_t>(k)]);
        }
        return p;
    }

    int dim_;
    TermMap terms_;
};

/// Monomial-basis expansion of the falling factorial: coefficients c_0..c_n
/// with z^(falling n) = sum c_j z^j, built by repeated multiplication by
/// (z - k). The c_j are the signed Stirling numbers of the first kind.
inline Polynomial falling_factorial_expansion(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("falling factorial needs a nonnegative length");
    Polynomial p = Polynomial::one(1);
    for (std::int64_t k = 0; k < n; ++k) {
        p = p * Polynomial::univariate({Rational(-k), Rational(1)});
    }
    return p;
}

}  // namespace dgs
