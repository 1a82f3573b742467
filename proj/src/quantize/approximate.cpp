#include "metric_forge/approximate.hpp"

#include "metric_forge/error.hpp"
#include "metric_forge/transform.hpp"

namespace metric_forge {

ApproximationResult approximate(const FiniteMetricSpace& m,
                                const Scalar& epsilon,
                                const std::optional<Scalar>& r_override) {
  if (epsilon.is_zero()) throw DomainError("approximate: epsilon must be positive");
  const Scalar eta = epsilon / Scalar{5};
  Scalar r = r_override ? *r_override : std::min(Scalar{1, 2}, epsilon / Scalar{10});
  if (r.is_zero() || r >= Scalar{1}) {
    throw DomainError("approximate: r must lie in (0, 1), got " + r.str());
  }
  if (r + r > eta) {
    throw DomainError("approximate: r = " + r.str() +
                      " violates 2r <= eta = " + eta.str());
  }
  const RangeParams params(eta, r);

  auto plan = greedy_clopen_partition(m, r);
  const auto k = plan.clusters.size();

  const auto hub = quantize_discrete(m.restrict(plan.reps), eta);

  const auto round_up = Transform::round_up_geometric(eta, r);
  std::vector<FiniteMetricSpace> ultra;
  ultra.reserve(k);
  for (const auto& cluster : plan.clusters) {
    // An increasing image of an ultrametric is an ultrametric.
    ultra.push_back(FiniteMetricSpace::assume_metric(
        transform_metric(subdominant_ultrametric(m.restrict(cluster)), round_up)));
  }

  auto D = amalgamate(plan, ultra, hub.matrix());

  // Exponents of the cluster ultrametric values, by global index.
  const auto owner = plan.owner();
  std::vector<std::size_t> slot(owner.size());
  std::vector<std::size_t> rep_slot(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t s = 0; s < plan.clusters[c].size(); ++s) {
      slot[plan.clusters[c][s]] = s;
      if (plan.clusters[c][s] == plan.reps[c]) rep_slot[c] = s;
    }
  }
  auto exponent = [&](std::size_t c, std::size_t a, std::size_t b)
      -> std::optional<unsigned> {
    if (a == b) return std::nullopt;
    auto e = geometric_exponent(ultra[c](a, b), params);
    if (!e) throw DomainError("approximate: cluster value outside O(eta, r)");
    return e;
  };

  std::vector<PairCertificate> certs;
  certs.reserve(owner.size() * (owner.size() - (owner.empty() ? 0 : 1)) / 2);
  for (std::size_t x = 0; x < owner.size(); ++x) {
    for (std::size_t y = x + 1; y < owner.size(); ++y) {
      const auto cx = owner[x];
      const auto cy = owner[y];
      RangeCertificate cert;
      if (cx == cy) {
        cert = {0, exponent(cx, slot[x], slot[y]), std::nullopt};
      } else {
        const auto h = hub(cx, cy) / eta;
        if (!h.is_integer() || !h.numerator().fits_slong_p()) {
          throw DomainError("approximate: hub value off the eta grid");
        }
        cert = {h.numerator().get_si(), exponent(cx, slot[x], rep_slot[cx]),
                exponent(cy, rep_slot[cy], slot[y])};
      }
      certs.push_back({x, y, cert.normalized()});
    }
  }

  return {std::move(D), std::move(plan), std::move(certs), eta, std::move(r)};
}

}  // namespace metric_forge
