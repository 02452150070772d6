#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgs {

/// Point of Z^n. Series indices, operator shifts, equation orders and
/// lattice sites are all MultiIndex values; the componentwise partial
/// order is the one that matters (x <= y iff x_i <= y_i for all i).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::int64_t> components) : c_(std::move(components)) {}
    MultiIndex(std::initializer_list<std::int64_t> components) : c_(components) {}

    static MultiIndex zero(int dim) { return MultiIndex(std::vector<std::int64_t>(dim, 0)); }
    static MultiIndex ones(int dim) { return MultiIndex(std::vector<std::int64_t>(dim, 1)); }
    static MultiIndex unit(int dim, int axis) {
        MultiIndex e = zero(dim);
        e.c_.at(axis) = 1;
        return e;
    }
    static MultiIndex constant(int dim, std::int64_t value) {
        return MultiIndex(std::vector<std::int64_t>(dim, value));
    }

    int dim() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int i) const { return c_[i]; }
    std::int64_t& operator[](int i) { return c_[i]; }
    const std::vector<std::int64_t>& components() const { return c_; }

    std::int64_t sum() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }
    bool is_nonneg() const {
        return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v >= 0; });
    }

    /// Componentwise x >= other.
    bool all_ge(const MultiIndex& other) const {
        check_dim(other);
        for (int i = 0; i < dim(); ++i)
            if (c_[i] < other.c_[i]) return false;
        return true;
    }
    bool all_le(const MultiIndex& other) const { return other.all_ge(*this); }
    /// x "not >=" other: some component strictly below. This is the
    /// membership test of the initial-data region.
    bool not_ge(const MultiIndex& other) const { return !all_ge(other); }

    MultiIndex operator+(const MultiIndex& other) const {
        check_dim(other);
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[i] += other.c_[i];
        return r;
    }
    MultiIndex operator-(const MultiIndex& other) const {
        check_dim(other);
        MultiIndex r = *this;
        for (int i = 0; i < dim(); ++i) r.c_[i] -= other.c_[i];
        return r;
    }
    MultiIndex operator-() const {
        MultiIndex r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.c_ == b.c_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.c_ != b.c_; }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < dim(); ++i) {
            if (i) os << ',';
            os << c_[i];
        }
        os << ')';
        return os.str();
    }

    void check_dim(const MultiIndex& other) const {
        if (other.dim() != dim())
            throw std::invalid_argument("dimension mismatch: " + str() + " vs " + other.str());
    }

private:
    std::vector<std::int64_t> c_;
};

inline MultiIndex componentwise_min(const MultiIndex& a, const MultiIndex& b) {
    a.check_dim(b);
    MultiIndex r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline MultiIndex componentwise_max(const MultiIndex& a, const MultiIndex& b) {
    a.check_dim(b);
    MultiIndex r = a;
    for (int i = 0; i < a.dim(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

/// Graded lexicographic order: by coordinate sum, ties broken
/// lexicographically. Canonical ordering for coefficient tables,
/// polynomial terms and serialization.
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        a.check_dim(b);
        if (a.sum() != b.sum()) return a.sum() < b.sum();
        for (int i = 0; i < a.dim(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// All lattice points of the box [lo, hi], sorted graded-lexicographically.
/// Empty if hi < lo in some component.
inline std::vector<MultiIndex> box_points_grlex(const MultiIndex& lo, const MultiIndex& hi) {
    lo.check_dim(hi);
    std::vector<MultiIndex> points;
    if (!hi.all_ge(lo)) return points;
    MultiIndex x = lo;
    const int n = lo.dim();
    while (true) {
        points.push_back(x);
        int j = n - 1;
        while (j >= 0 && x[j] == hi[j]) {
            x[j] = lo[j];
            --j;
        }
        if (j < 0) break;
        ++x[j];
    }
    std::sort(points.begin(), points.end(), GrlexLess{});
    return points;
}

}  // namespace dgs
