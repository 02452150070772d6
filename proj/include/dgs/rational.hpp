#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dgs {

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. All arithmetic is exact; division by zero throws.
///
/// Text form is "p/q" with "/q" omitted when q == 1 (e.g. "-3", "7/2").
/// Decimal notation is rejected on parse.
class Rational {
public:
    using Integer = boost::multiprecision::cpp_int;

    Rational() = default;
    Rational(std::int64_t value) : v_(value) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) : v_(make(Integer(num), Integer(den))) {}
    explicit Rational(Integer num, Integer den = 1) : v_(make(std::move(num), std::move(den))) {}

    Integer numerator() const { return boost::multiprecision::numerator(v_); }
    Integer denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("rational division by zero");
        Rational r;
        r.v_ = 1 / v_;
        return r;
    }

    /// Nonnegative integer power; 0^0 = 1.
    Rational pow(std::uint64_t e) const {
        Rational result(1), base = *this;
        while (e) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    std::string str() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

    /// Strict parse of the "p/q" text form. No signs on q, no whitespace,
    /// no decimal point, q != 0.
    static Rational parse(std::string_view text) {
        const auto fail = [&] {
            throw std::runtime_error("invalid rational literal: '" + std::string(text) + "'");
        };
        std::size_t pos = 0;
        if (pos < text.size() && text[pos] == '-') ++pos;
        std::size_t num_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == num_begin) fail();
        Integer num(std::string(text.substr(0, pos)));
        Integer den = 1;
        if (pos < text.size()) {
            if (text[pos] != '/') fail();
            ++pos;
            std::size_t den_begin = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == den_begin || pos != text.size()) fail();
            den = Integer(std::string(text.substr(den_begin)));
            if (den.is_zero()) fail();
        }
        return Rational(std::move(num), std::move(den));
    }

private:
    static boost::multiprecision::cpp_rational make(Integer num, Integer den) {
        if (den.is_zero()) throw std::domain_error("rational with zero denominator");
        boost::multiprecision::cpp_rational r(std::move(num));
        r /= boost::multiprecision::cpp_rational(std::move(den));
        return r;
    }

    boost::multiprecision::cpp_rational v_{};
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dgs
