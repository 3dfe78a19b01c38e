#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cylfloer {

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// Exact rational on int64 numerator/denominator, always reduced, denominator > 0.
// Intermediates run in __int128; anything that leaves the int64 range throws
// OverflowError instead of silently wrapping.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return combine(a, b, +1);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return combine(a, b, -1);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        Rational r;
        r.assign128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
        return r;
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // "p" when the denominator is 1, "p/q" otherwise.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    // Accepts "p" and "p/q" with optional leading '-'.
    static Rational parse(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'"); };
        auto slash = s.find('/');
        std::string_view ns = s.substr(0, slash);
        std::int64_t n = parse_int(ns, bad);
        std::int64_t d = 1;
        if (slash != std::string_view::npos) d = parse_int(s.substr(slash + 1), bad);
        if (d == 0) bad();
        return Rational(n, d);
    }

private:
    using i128 = __int128;

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    static Rational combine(const Rational& a, const Rational& b, int sgn) {
        i128 g = gcd128(a.den_, b.den_);
        i128 bd = b.den_ / g;
        i128 n = i128(a.num_) * bd + i128(sgn) * i128(b.num_) * (a.den_ / g);
        i128 d = i128(a.den_) * bd;
        Rational r;
        r.assign128(n, d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        assign128(n, d);
    }

    void assign128(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw OverflowError("Rational: value exceeds 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    template <class F>
    static std::int64_t parse_int(std::string_view s, F bad) {
        if (s.empty()) bad();
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-') {
            neg = true;
            i = 1;
            if (s.size() == 1) bad();
        }
        i128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') bad();
            v = v * 10 + (s[i] - '0');
            if (v > i128(INT64_MAX) + 1) bad();
        }
        if (neg) v = -v;
        if (v < INT64_MIN || v > INT64_MAX) bad();
        return static_cast<std::int64_t>(v);
    }
};

inline Rational half(const Rational& r) { return r / Rational(2); }

} // namespace cylfloer
