#pragma once

// Brute-force reference implementations used only by tests and the
// acceptance suite. Each one is structurally independent of the library
// path it cross-checks: the recursion oracle evaluates top-down with
// memoization instead of the solver's ordered sweep, dissections are
// counted by exhaustive enumeration over diagonal subsets, and binomials
// come from the multiplicative formula.

#include "dgs/equation.hpp"
#include "dgs/multi_index.hpp"
#include "dgs/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracles {

using dgs::MultiIndex;
using dgs::Rational;

class DirectRecursion {
public:
    explicit DirectRecursion(const dgs::CauchyProblem& problem)
        : eq_(problem.equation.forward()), data_(problem.data) {}

    Rational value(const MultiIndex& y) {
        auto it = memo_.find(y);
        if (it != memo_.end()) return it->second;
        Rational v;
        if (data_.in_region(y, eq_.order())) {
            v = data_.at(y, eq_.order());
        } else {
            const MultiIndex x = y - eq_.order();
            const Rational lead = eq_.leading().evaluate(x);
            if (lead.is_zero())
                throw std::domain_error("leading coefficient vanishes at " + x.str());
            Rational acc(0);
            for (const auto& [alpha, p] : eq_.terms()) {
                if (alpha == eq_.order()) continue;
                acc += p.evaluate(x) * value(x + alpha);
            }
            v = -acc / lead;
        }
        memo_.emplace(y, v);
        return v;
    }

    /// Full table on [base_offset, upto].
    std::map<MultiIndex, Rational, dgs::GrlexLess> table(const MultiIndex& upto) {
        std::map<MultiIndex, Rational, dgs::GrlexLess> out;
        for (const auto& y : dgs::box_points_grlex(data_.base_offset(), upto))
            out.emplace(y, value(y));
        return out;
    }

private:
    dgs::DifferenceEquation eq_;
    dgs::InitialData data_;
    std::map<MultiIndex, Rational, dgs::GrlexLess> memo_;
};

/// Number of ways to divide a convex n-gon by pairwise non-crossing
/// diagonals (the empty set counts). Diagonals (a,b) and (c,d) cross in
/// the interior iff exactly one of c, d lies strictly between a and b
/// cyclically; sharing an endpoint never counts as crossing. Counted by
/// exhaustive enumeration of valid subsets.
inline std::int64_t polygon_dissections(int n_gon) {
    if (n_gon < 3 || n_gon > 10)
        throw std::invalid_argument("polygon size out of the enumerable range [3, 10]");

    struct Diagonal { int a, b; };
    std::vector<Diagonal> diagonals;
    for (int a = 0; a < n_gon; ++a)
        for (int b = a + 2; b < n_gon; ++b)
            if (!(a == 0 && b == n_gon - 1)) diagonals.push_back({a, b});

    const auto crosses = [](const Diagonal& d1, const Diagonal& d2) {
        if (d1.a == d2.a || d1.a == d2.b || d1.b == d2.a || d1.b == d2.b) return false;
        const bool c_inside = d1.a < d2.a && d2.a < d1.b;
        const bool d_inside = d1.a < d2.b && d2.b < d1.b;
        return c_inside != d_inside;
    };

    std::vector<int> chosen;
    const auto count = [&](const auto& self, std::size_t i) -> std::int64_t {
        if (i == diagonals.size()) return 1;
        std::int64_t total = self(self, i + 1);  // skip diagonal i
        bool compatible = true;
        for (int c : chosen) {
            if (crosses(diagonals[i], diagonals[static_cast<std::size_t>(c)])) {
                compatible = false;
                break;
            }
        }
        if (compatible) {
            chosen.push_back(static_cast<int>(i));
            total += self(self, i + 1);
            chosen.pop_back();
        }
        return total;
    };
    return count(count, 0);
}

/// C(n, k) by the multiplicative formula; k > n gives 0.
inline Rational binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial expects nonnegative arguments");
    if (k > n) return Rational(0);
    Rational result(1);
    for (std::int64_t i = 1; i <= k; ++i) result *= Rational(n - k + i, i);
    return result;
}

}  // namespace oracles
