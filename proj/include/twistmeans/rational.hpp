#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace twistmeans {

/// Exact rational over int64 with overflow detection. Used for the
/// Laplacian kernel computation and the B constants; all values there are
/// small enough that overflow signals a bug rather than a limitation.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        const std::int64_t g = std::gcd(a.den_, b.den_);
        const std::int64_t l = checked_mul(a.den_ / g, b.den_);
        return Rational(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        const std::int64_t g1 = std::gcd(a.num_, b.den_);
        const std::int64_t g2 = std::gcd(b.num_, a.den_);
        const std::int64_t s1 = g1 == 0 ? 1 : g1;
        const std::int64_t s2 = g2 == 0 ? 1 : g2;
        return Rational(checked_mul(a.num_ / s1, b.num_ / s2), checked_mul(a.den_ / s2, b.den_ / s1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r = 0;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
        return r;
    }
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace twistmeans
