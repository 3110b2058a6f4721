#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "sympl/errors.hpp"

namespace sympl {

// Exact rational with int64 numerator/denominator and overflow-checked
// arithmetic. Values stay tiny here (angle fractions, mean indices), so
// int64 with __int128 intermediates is plenty.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ParameterError("Rational: division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rational from128(i128 n, i128 d) {
        if (d == 0) throw ParameterError("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim)
            throw NumericalError("Rational: arithmetic overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw ParameterError("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_;
    std::int64_t den_;
};

// Continued-fraction recognition of x as p/q with q <= max_den. Returns the
// convergent only if it reproduces x to within tol; otherwise nullopt.
inline std::optional<Rational> recognize_rational(double x, std::int64_t max_den = 1000000,
                                                  double tol = 1e-10) {
    if (!std::isfinite(x)) return std::nullopt;
    // convergents p_k/q_k of the continued fraction of x
    double frac = x;
    std::int64_t p_prev = 1, q_prev = 0;
    std::int64_t p = static_cast<std::int64_t>(std::floor(frac)), q = 1;
    frac -= std::floor(frac);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol)
            return Rational(p, q);
        if (frac < 1e-18) break;
        frac = 1.0 / frac;
        double a_f = std::floor(frac);
        if (a_f > 9e18) break;
        auto a = static_cast<std::int64_t>(a_f);
        frac -= a_f;
        std::int64_t p_next = a * p + p_prev;
        std::int64_t q_next = a * q + q_prev;
        if (q_next > max_den || q_next < 0 || p_next < std::min<std::int64_t>(0, p)) break;
        p_prev = p; q_prev = q;
        p = p_next; q = q_next;
    }
    if (q <= max_den && std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol)
        return Rational(p, q);
    return std::nullopt;
}

// A value that is either an exact rational or a float. Mean indices carry
// their rationality classification through the jump search, where (4.20)-style
// constraints demand exactness.
class ExactOrFloat {
public:
    ExactOrFloat() : rat_(Rational(0)), val_(0.0) {}
    explicit ExactOrFloat(Rational r) : rat_(r), val_(r.value()) {}
    explicit ExactOrFloat(double v) : val_(v) {}

    bool is_rational() const { return rat_.has_value(); }
    const Rational& rational() const {
        if (!rat_) throw NumericalError("ExactOrFloat: not rational");
        return *rat_;
    }
    double value() const { return val_; }

    std::string str() const { return rat_ ? rat_->str() : std::to_string(val_); }

private:
    std::optional<Rational> rat_;
    double val_ = 0.0;
};

} // namespace sympl
