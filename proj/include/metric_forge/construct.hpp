#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "metric_forge/metric_space.hpp"

namespace metric_forge {

// Ordered clusters covering all point indices, one representative per
// cluster. Members of each cluster are listed in ascending index order.
struct PartitionPlan {
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> reps;
  Scalar radius;

  std::size_t point_count() const;
  // Cluster index of every point.
  std::vector<std::size_t> owner() const;

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;
};

// Peels open balls B(x, r) in point order: each unassigned point becomes the
// center of a new cluster holding every unassigned point within distance < r.
// Cluster diameters are < 2r. Throws DomainError when r is zero.
PartitionPlan greedy_clopen_partition(const FiniteMetricSpace& m,
                                      const Scalar& r);

// Glues cluster metrics through the representatives:
//   D(x, y) = e_i(x, y)                          x, y in cluster i
//   D(x, y) = e_i(x, p_i) + h(p_i, p_j) + e_j(p_j, y)   otherwise
//
// cluster_metrics[i] must be indexed like plan.clusters[i]; hub is indexed
// like plan.reps. The result takes its labels from the cluster metrics and
// places them at the plan's point indices. Throws PreconditionError when the
// hub has a zero off-diagonal entry or is not a metric, and DomainError on
// shape mismatches.
FiniteMetricSpace amalgamate(const PartitionPlan& plan,
                             const std::vector<FiniteMetricSpace>& cluster_metrics,
                             const DistanceMatrix& hub);

// Extends d (on A) to the labels of x, which must contain every label of A.
// Pairs touching a point outside A get 1 + max(d).
FiniteMetricSpace extend_metric(const FiniteMetricSpace& d,
                                const std::vector<std::string>& x);

// Shortest-path closure of a symmetric, zero-diagonal, positive weight matrix.
FiniteMetricSpace metric_repair(const DistanceMatrix& w);

// Largest ultrametric below m: the minimax path value over a minimum
// spanning tree.
FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& m);

// Seeded symmetric matrix with entries max_value * k / 1000, k in [1, 1000],
// closed under shortest paths. Labels p0..p{n-1}.
FiniteMetricSpace random_metric(std::size_t n, const Scalar& max_value,
                                std::uint64_t seed);

// {0,1}^k with d(x, y) = 2^-(first differing coordinate, 1-based).
FiniteMetricSpace cantor_approx(unsigned k);

// Labels a0, b0, a1, b1, ... for count pairs.
std::vector<std::string> pair_points(std::size_t count);

}  // namespace metric_forge
