#include "berrylink/exact.hpp"

#include <cmath>
#include <numeric>

namespace berrylink {

namespace {

long long checked_ll(__int128 v, const char* where) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error(std::string("Rational overflow in ") + where);
    return static_cast<long long>(v);
}

// n = s^2 * r with r square-free; returns {s, r}
std::pair<long long, long long> extract_square(long long n) {
    long long s = 1, r = 1;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) s *= p;
        if (e % 2) r *= p;
    }
    r *= n;
    return {s, r};
}

}  // namespace

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    const __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    const __int128 d = static_cast<__int128>(den_) * o.den_;
    return Rational(checked_ll(n, "+"), checked_ll(d, "+"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    // cross-reduce before multiplying
    const long long g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    const long long g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    const __int128 n = static_cast<__int128>(num_ / g1) * (o.num_ / g2);
    const __int128 d = static_cast<__int128>(den_ / g2) * (o.den_ / g1);
    return Rational(checked_ll(n, "*"), checked_ll(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    const std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)),
                        std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational::parse: bad input '" + text + "'");
    }
}

void SqrtRational::normalize() {
    if (factor_.is_zero()) {
        radicand_ = 1;
        return;
    }
    if (radicand_ < 1) throw std::logic_error("SqrtRational: nonpositive radicand");
    auto [s, r] = extract_square(radicand_);
    factor_ = factor_ * Rational(s);
    radicand_ = r;
}

SqrtRational SqrtRational::sqrt_of(const Rational& r) {
    if (r.is_negative()) throw std::invalid_argument("SqrtRational::sqrt_of: negative input");
    if (r.is_zero()) return SqrtRational();
    // sqrt(p/q) = sqrt(p*q)/q
    SqrtRational out;
    out.factor_ = Rational(1, r.den());
    const __int128 pq = static_cast<__int128>(r.num()) * r.den();
    out.radicand_ = checked_ll(pq, "sqrt_of");
    out.normalize();
    return out;
}

SqrtRational SqrtRational::operator-() const {
    SqrtRational out = *this;
    out.factor_ = -out.factor_;
    return out;
}

SqrtRational SqrtRational::operator+(const SqrtRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (radicand_ != o.radicand_)
        throw std::logic_error("SqrtRational: sum of unlike radicands");
    SqrtRational out = *this;
    out.factor_ = factor_ + o.factor_;
    if (out.factor_.is_zero()) out.radicand_ = 1;
    return out;
}

SqrtRational SqrtRational::operator*(const SqrtRational& o) const {
    SqrtRational out;
    out.factor_ = factor_ * o.factor_;
    out.radicand_ = checked_ll(static_cast<__int128>(radicand_) * o.radicand_, "mul");
    out.normalize();
    return out;
}

SqrtRational SqrtRational::operator/(const SqrtRational& o) const {
    if (o.is_zero()) throw std::invalid_argument("SqrtRational: division by zero");
    // x / (f sqrt(r)) = x * sqrt(r) / (f r)
    SqrtRational inv;
    inv.factor_ = Rational(1) / (o.factor_ * Rational(o.radicand_));
    inv.radicand_ = o.radicand_;
    return *this * inv;
}

bool SqrtRational::operator==(const SqrtRational& o) const {
    return factor_ == o.factor_ && radicand_ == o.radicand_;
}

double SqrtRational::to_double() const {
    return factor_.to_double() * std::sqrt(static_cast<double>(radicand_));
}

}  // namespace berrylink
