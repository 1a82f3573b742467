#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metric_forge/construct.hpp"
#include "metric_forge/range_set.hpp"

namespace metric_forge {

struct PairCertificate {
  std::size_t i;
  std::size_t j;
  RangeCertificate cert;

  friend bool operator==(const PairCertificate&, const PairCertificate&) = default;
};

struct ApproximationResult {
  FiniteMetricSpace D;
  PartitionPlan plan;
  // One entry per pair i < j, in row-major order.
  std::vector<PairCertificate> certificates;
  Scalar eta;
  Scalar r;

  RangeParams params() const { return RangeParams(eta, r); }

  friend bool operator==(const ApproximationResult&,
                         const ApproximationResult&) = default;
};

// Replaces m by a metric D with sup_distance(D, m) <= epsilon whose values
// all lie in E(epsilon/5, r), r = min{1/2, epsilon/10} unless overridden:
//
//   1. clusters: greedy_clopen_partition(m, r), each of diameter <= 2r <= eta
//   2. hub: eta * ceil(d / eta) on the representatives
//   3. per cluster: the subdominant ultrametric rounded up into O(eta, r)
//   4. D = amalgamate(clusters, cluster ultrametrics, hub)
//
// Every off-diagonal value carries the certificate read off step 4:
// (0, n, -) inside a cluster, (h/eta, n, m) across. Throws DomainError for
// epsilon = 0, or an override r outside (0, 1) or with 2r > eta.
ApproximationResult approximate(const FiniteMetricSpace& m,
                                const Scalar& epsilon,
                                const std::optional<Scalar>& r_override = std::nullopt);

}  // namespace metric_forge
