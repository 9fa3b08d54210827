#include "selfadjoint/rational.hpp"

#include <limits>
#include <numeric>

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

namespace {

long long narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min() + 1)
        throw EngineError("rational coefficient overflow");
    return static_cast<long long>(v);
}

} // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0)
        throw EngineError("division by zero rational");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = narrow(-static_cast<__int128>(num_));
        den_ = narrow(-static_cast<__int128>(den_));
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<__int128>(num_));
    r.den_ = den_;
    return r;
}

Rational Rational::inverse() const {
    if (num_ == 0)
        throw EngineError("division by zero rational");
    return Rational(den_, num_);
}

Rational& Rational::operator+=(const Rational& o) {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    // Reduce in 128 bits before narrowing so mid-sized sums cannot spuriously overflow.
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    num_ = narrow(n);
    den_ = narrow(d);
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    long long g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    long long g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    num_ = narrow(static_cast<__int128>(num_ / g1) * (o.num_ / g2));
    den_ = narrow(static_cast<__int128>(den_ / g2) * (o.den_ / g1));
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    __int128 lhs = static_cast<__int128>(num_) * o.den_;
    __int128 rhs = static_cast<__int128>(o.num_) * den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1)
        s += "/" + std::to_string(den_);
    return s;
}

} // namespace selfadjoint
