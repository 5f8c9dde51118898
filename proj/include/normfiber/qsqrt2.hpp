#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace normfiber {

/// Exact rational on int64 with overflow detection. All intermediates go
/// through __int128; anything that cannot be reduced back into int64 throws
/// std::overflow_error rather than degrading silently.
class Rat {
public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        num_ = g ? n / g : n;
        den_ = g ? d / g : d;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
        return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "n" or "n/d".
    static Rat parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    using i128 = __int128;

    static Rat reduce(i128 n, i128 d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: value exceeds the int64 range");
        Rat r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

/// Element of the quadratic field Q(sqrt 2): a + b*sqrt(2). Houses every
/// matrix entry that appears in the constructions here (0, ±1, ±1/2,
/// ±sqrt2/2, ±sqrt2) with exact ring arithmetic.
class QSqrt2 {
public:
    constexpr QSqrt2() = default;
    QSqrt2(Rat a, Rat b = Rat()) : a_(a), b_(b) {}
    QSqrt2(std::int64_t a) : a_(a) {}

    static QSqrt2 sqrt2(Rat coeff = Rat(1)) { return QSqrt2(Rat(), coeff); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return QSqrt2(x.a_ * y.a_ + Rat(2) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    QSqrt2 operator-() const { return QSqrt2(-a_, -b_); }

    /// (a + b√2)^-1 = (a - b√2) / (a² - 2b²); exists iff a² != 2b², which
    /// holds for every nonzero element (√2 is irrational).
    QSqrt2 inverse() const {
        const Rat norm = a_ * a_ - Rat(2) * b_ * b_;
        if (norm.is_zero()) throw std::invalid_argument("QSqrt2: not invertible");
        return QSqrt2(a_ / norm, -(b_ / norm));
    }

    friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }
    friend bool operator<(const QSqrt2& x, const QSqrt2& y) {
        if (x.a_ != y.a_) return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    double to_double() const {
        return a_.to_double() + b_.to_double() * 1.4142135623730950488016887242097;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        if (a_.is_zero()) return b_.str() + "*r2";
        return a_.str() + "+" + b_.str() + "*r2";
    }

private:
    Rat a_;
    Rat b_;
};

}  // namespace normfiber
