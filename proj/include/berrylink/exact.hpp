#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace berrylink {

/// Exact rational with int64 storage, normalized (gcd-reduced, positive
/// denominator). Intermediate products use 128-bit arithmetic.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;
    static Rational parse(const std::string& text);

private:
    long long num_ = 0;
    long long den_ = 1;
};

/// Element of the coefficient field Q(sqrt): value = factor * sqrt(radicand)
/// with radicand a square-free positive integer (1 for pure rationals).
/// Sums are defined only between like radicands, which is all the ladder
/// algebra ever produces within one harmonic.
class SqrtRational {
public:
    SqrtRational() = default;  // zero
    SqrtRational(const Rational& q) : factor_(q) {}  // NOLINT(google-explicit-constructor)
    SqrtRational(long long n) : factor_(n) {}        // NOLINT(google-explicit-constructor)

    /// sqrt(r) for r >= 0.
    static SqrtRational sqrt_of(const Rational& r);

    const Rational& factor() const { return factor_; }
    long long radicand() const { return radicand_; }
    bool is_zero() const { return factor_.is_zero(); }

    SqrtRational operator-() const;
    SqrtRational operator+(const SqrtRational& o) const;
    SqrtRational operator-(const SqrtRational& o) const { return *this + (-o); }
    SqrtRational operator*(const SqrtRational& o) const;
    SqrtRational operator/(const SqrtRational& o) const;
    bool operator==(const SqrtRational& o) const;
    bool operator!=(const SqrtRational& o) const { return !(*this == o); }

    double to_double() const;

private:
    Rational factor_;
    long long radicand_ = 1;

    void normalize();
};

}  // namespace berrylink
