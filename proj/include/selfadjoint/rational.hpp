#pragma once

#include <compare>
#include <string>

namespace selfadjoint {

// Exact rational number over 64-bit integers. Always stored reduced with a
// positive denominator. Arithmetic is overflow-checked through 128-bit
// intermediates and throws EngineError instead of wrapping.
class Rational {
  public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational inverse() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    // "3", "-1/2"
    std::string str() const;

  private:
    long long num_ = 0;
    long long den_ = 1;

    void normalize();
};

} // namespace selfadjoint
