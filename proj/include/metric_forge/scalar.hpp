#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace metric_forge {

// Exact nonnegative rational. Every distance value, tolerance and radius in
// the library is a Scalar; the canonical (reduced) form makes equality
// structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t num, std::int64_t den);

  // Throws DomainError when q is negative.
  static Scalar from_rational(mpq_class q);

  // Accepts "p/q" or an integer string. No sign, no decimal point.
  static Scalar parse(std::string_view text);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }

  // Canonical wire form: "p/q", or "p" when the denominator is 1.
  std::string str() const;

  // Smallest integer k with value <= k.
  mpz_class ceil() const;
  mpz_class floor() const;

  Scalar pow(unsigned exponent) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  // Throws DomainError on a zero divisor.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  // Throws DomainError when b > a; use abs_diff or value() for signed work.
  friend Scalar operator-(const Scalar& a, const Scalar& b);

  Scalar& operator+=(const Scalar& other);

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  struct Canonical {};
  Scalar(mpq_class q, Canonical) : value_(std::move(q)) {}

  mpq_class value_{0};
};

Scalar abs_diff(const Scalar& a, const Scalar& b);

// 2^-k as an exact Scalar.
Scalar dyadic(unsigned k);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace metric_forge
