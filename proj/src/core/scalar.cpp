#include "metric_forge/scalar.hpp"

#include <ostream>

#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Scalar::Scalar(std::int64_t value) : value_(static_cast<long>(value)) {
  if (value < 0) throw DomainError("Scalar must be nonnegative");
}

Scalar::Scalar(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Scalar denominator must be nonzero");
  value_ = mpq_class(mpz_class(static_cast<long>(num)),
                     mpz_class(static_cast<long>(den)));
  value_.canonicalize();
  if (sgn(value_) < 0) throw DomainError("Scalar must be nonnegative");
}

Scalar Scalar::from_rational(mpq_class q) {
  q.canonicalize();
  if (sgn(q) < 0) {
    throw DomainError("Scalar must be nonnegative, got " + q.get_str());
  }
  return Scalar(std::move(q), Scalar::Canonical{});
}

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"}
                                                   : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw DomainError("malformed rational \"" + std::string(text) +
                      "\": expected p/q or an integer");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw DomainError("malformed rational \"" + std::string(text) +
                      "\": zero denominator");
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Scalar(std::move(q), Scalar::Canonical{});
}

std::string Scalar::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

mpz_class Scalar::ceil() const {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

mpz_class Scalar::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Scalar Scalar::pow(unsigned exponent) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  // Powers of a reduced fraction stay reduced.
  return Scalar(mpq_class(n, d), Scalar::Canonical{});
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return Scalar(mpq_class(a.value_ + b.value_), Scalar::Canonical{});
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Scalar(mpq_class(a.value_ * b.value_), Scalar::Canonical{});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return Scalar(mpq_class(a.value_ / b.value_), Scalar::Canonical{});
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (b > a) {
    throw DomainError("negative difference " + a.str() + " - " + b.str());
  }
  return Scalar(mpq_class(a.value_ - b.value_), Scalar::Canonical{});
}

Scalar& Scalar::operator+=(const Scalar& other) {
  value_ += other.value_;
  return *this;
}

Scalar abs_diff(const Scalar& a, const Scalar& b) {
  return a >= b ? a - b : b - a;
}

Scalar dyadic(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Scalar::from_rational(mpq_class(mpz_class(1), den));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace metric_forge
