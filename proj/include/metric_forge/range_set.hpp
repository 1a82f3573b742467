#pragma once

#include <cstdint>
#include <optional>

#include "metric_forge/scalar.hpp"

namespace metric_forge {

// Parameters of O(eta, u) = {0} u {eta * u^n} and
// E(eta, u) = eta * Z>=0 + O(eta, u) + O(eta, u).
struct RangeParams {
  Scalar eta;
  Scalar u;

  // Throws DomainError unless eta > 0 and 0 < u < 1.
  RangeParams(Scalar eta, Scalar u);
};

// Certifies value = eta * (l + u^n + u^m); an absent exponent contributes 0.
struct RangeCertificate {
  std::int64_t l = 0;
  std::optional<unsigned> n;
  std::optional<unsigned> m;

  Scalar value(const RangeParams& p) const;

  // Absent exponents last, present ones ascending. Does not change value().
  RangeCertificate normalized() const;

  friend bool operator==(const RangeCertificate&, const RangeCertificate&) = default;
};

// Decides t in E(eta, u) exactly. The certificate is canonical: largest l,
// exponents >= 1, n <= m, absent exponents last. nullopt is an exhaustive
// NOT_MEMBER verdict: with u = a/b reduced, any representation's largest
// exponent k satisfies b^k = den(t/eta) or b^k = 2 den(t/eta), so only those
// exponents need checking.
std::optional<RangeCertificate> range_membership(const Scalar& t,
                                                 const RangeParams& p);

// The n with eta * u^n = value, if any.
std::optional<unsigned> geometric_exponent(const Scalar& value,
                                           const RangeParams& p);

}  // namespace metric_forge
