#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hasm {

// Arbitrary-precision signed integer. Every count, weight and factor in this
// library is exact; the counting path never touches floating point.
using BigInt = mpz_class;

// Binomial coefficient, 0 when k > n.
BigInt binom(unsigned long n, unsigned long k);

BigInt int_pow(const BigInt& base, unsigned long e);

std::string to_string(const BigInt& v);
BigInt bigint_from_string(const std::string& s);

// Exact rational number, always stored in lowest terms with a positive
// denominator. Immutable value semantics; safe to share across threads.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long v) : q_(v) {}
    Rational(const BigInt& v) : q_(v) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_positive() const { return q_ > 0; }

    Rational operator+(const Rational& o) const { return Rational(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return Rational(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return Rational(q_ * o.q_); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    Rational inverse() const;

    // "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    static Rational parse(const std::string& s);

  private:
    explicit Rational(const mpq_class& q) : q_(q) {}
    mpq_class q_;  // kept canonical
};

Rational rat_pow(const Rational& base, unsigned long e);

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace hasm
