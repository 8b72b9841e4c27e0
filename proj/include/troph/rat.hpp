#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace troph {

/// Exact rational number backed by GMP.
///
/// Always held in canonical form: lowest terms, denominator > 0, zero as
/// 0/1. Everything in this library is exact; there is deliberately no
/// implicit conversion from floating point.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d);
    explicit Rat(mpq_class q) : q_(std::move(q)) { canonicalize(); }
    Rat(mpz_class n, mpz_class d);

    /// Parses "p", "-p", "p/q" with arbitrary-precision integers.
    static Rat parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
    Rat operator/(const Rat& o) const;

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return q_ == o.q_; }
    bool operator!=(const Rat& o) const { return q_ != o.q_; }
    bool operator<(const Rat& o) const { return q_ < o.q_; }
    bool operator<=(const Rat& o) const { return q_ <= o.q_; }
    bool operator>(const Rat& o) const { return q_ > o.q_; }
    bool operator>=(const Rat& o) const { return q_ >= o.q_; }

    Rat abs() const { return sign() < 0 ? -*this : *this; }
    Rat reciprocal() const;

    /// Largest integer <= value.
    mpz_class floor() const;
    /// Fractional part in [0, 1): *this - floor().
    Rat frac() const;

    /// Canonical serialization "p/q" with the denominator always printed
    /// and the sign on the numerator ("0/1", "-7/300").
    std::string str() const;

    /// Decimal rendering with the given number of fractional digits,
    /// rounded half away from zero. For human-readable columns only.
    std::string decimal(int digits) const;

    double to_double() const { return q_.get_d(); }

private:
    void canonicalize() { q_.canonicalize(); }

    mpq_class q_;
};

Rat pow_int(const Rat& base, long exp);

/// 4^k as an exact rational, k may be negative.
Rat pow4(long k);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace troph
