#include "metric_forge/range_set.hpp"

#include <limits>
#include <tuple>
#include <vector>

#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

// k with base^k == target, if any. base >= 2.
std::optional<unsigned> exact_log(const mpz_class& target, const mpz_class& base) {
  if (target < 1) return std::nullopt;
  mpz_class rest = target;
  unsigned k = 0;
  while (rest != 1) {
    if (!mpz_divisible_p(rest.get_mpz_t(), base.get_mpz_t())) return std::nullopt;
    rest /= base;
    ++k;
  }
  return k;
}

// n >= 1 with u^n == f for a fraction 0 < f < 1.
std::optional<unsigned> power_of_u(const mpq_class& f, const Scalar& u) {
  const auto k = exact_log(f.get_den(), u.denominator());
  if (!k || *k == 0) return std::nullopt;
  mpz_class num;
  mpz_pow_ui(num.get_mpz_t(), u.value().get_num_mpz_t(), *k);
  if (num != f.get_num()) return std::nullopt;
  return k;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw DomainError("certificate integer part overflows");
  return z.get_si();
}

// Ordering used to choose the canonical certificate: larger l first, then
// smaller exponents, absent last.
auto rank(const RangeCertificate& c) {
  constexpr auto absent = std::numeric_limits<unsigned>::max();
  return std::tuple{-c.l, c.n.value_or(absent), c.m.value_or(absent)};
}

}  // namespace

RangeParams::RangeParams(Scalar eta_in, Scalar u_in)
    : eta(std::move(eta_in)), u(std::move(u_in)) {
  if (eta.is_zero()) throw DomainError("range parameters: eta must be positive");
  if (u.is_zero() || u >= Scalar{1}) {
    throw DomainError("range parameters: u must lie in (0, 1)");
  }
}

Scalar RangeCertificate::value(const RangeParams& p) const {
  if (l < 0) throw DomainError("certificate integer part must be nonnegative");
  Scalar sum{l};
  if (n) sum += p.u.pow(*n);
  if (m) sum += p.u.pow(*m);
  return p.eta * sum;
}

RangeCertificate RangeCertificate::normalized() const {
  RangeCertificate out = *this;
  if (!out.n && out.m) std::swap(out.n, out.m);
  if (out.n && out.m && *out.m < *out.n) std::swap(out.n, out.m);
  return out;
}

std::optional<RangeCertificate> range_membership(const Scalar& t,
                                                 const RangeParams& p) {
  const Scalar scaled = t / p.eta;
  const mpq_class& target = scaled.value();
  if (scaled.is_integer()) {
    return RangeCertificate{to_int64(target.get_num()), std::nullopt, std::nullopt};
  }

  const mpz_class b = p.u.denominator();
  const mpz_class q = target.get_den();
  std::vector<unsigned> tops;
  if (auto k = exact_log(q, b)) tops.push_back(*k);
  if (auto k = exact_log(mpz_class(2 * q), b)) tops.push_back(*k);

  std::optional<RangeCertificate> best;
  auto offer = [&](RangeCertificate c) {
    if (!best || rank(c) < rank(*best)) best = c;
  };
  mpq_class rest;
  for (const auto top : tops) {
    if (top == 0) continue;
    rest = target - p.u.pow(top).value();
    if (sgn(rest) < 0) continue;
    const mpz_class whole = Scalar::from_rational(rest).floor();
    const mpq_class frac = rest - whole;
    if (sgn(frac) == 0) {
      offer({to_int64(whole), top, std::nullopt});
    } else if (auto n = power_of_u(frac, p.u); n && *n <= top) {
      offer({to_int64(whole), *n, top});
    }
  }
  return best;
}

std::optional<unsigned> geometric_exponent(const Scalar& value,
                                           const RangeParams& p) {
  if (value.is_zero()) return std::nullopt;
  const Scalar ratio = value / p.eta;
  if (ratio == Scalar{1}) return 0U;
  if (ratio > Scalar{1}) return std::nullopt;
  return power_of_u(ratio.value(), p.u);
}

}  // namespace metric_forge
