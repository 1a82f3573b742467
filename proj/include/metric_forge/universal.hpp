#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metric_forge/approximate.hpp"
#include "metric_forge/metric_space.hpp"
#include "metric_forge/nebula.hpp"

namespace metric_forge {

// Injective map from pattern indices to host indices.
struct Embedding {
  std::vector<std::size_t> mapping;
  bool exact = false;
  // max |host(map x, map y) - pattern(x, y)|.
  Scalar distortion;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

// Measures an injective mapping; throws DomainError if it is not injective or
// out of range.
Embedding measure_embedding(const FiniteMetricSpace& pattern,
                            const FiniteMetricSpace& host,
                            std::vector<std::size_t> mapping);

inline constexpr std::size_t kDefaultSearchCap = 7;

// Backtracking search over injective maps, host candidates in index order,
// pruning on every pair against earlier assignments. Returns the first map
// with all pairwise errors <= distortion; nullopt is exhaustive. Throws
// RefusalError when the pattern has more than cap points.
std::optional<Embedding> find_isometric_embedding(const FiniteMetricSpace& pattern,
                                                  const FiniteMetricSpace& host,
                                                  const Scalar& distortion = Scalar{0},
                                                  std::size_t cap = kDefaultSearchCap);

// card <= n, diameter <= n, positive distances >= 1/n.
bool class_Cn_check(const FiniteMetricSpace& m, unsigned n);

using Point = std::vector<Scalar>;

Scalar linf_distance(const Point& a, const Point& b);

// phi(p_i) = (d(p_1, p_i), ..., d(p_k, p_i), 0, ..., 0) in [0, n]^n.
struct FrechetEmbedding {
  unsigned n = 0;
  std::vector<Point> coords;
};

// Throws PreconditionError unless class_Cn_check(m, n).
FrechetEmbedding frechet_embed(const FiniteMetricSpace& m, unsigned n);

// The delta-grid of [0, n]^n under the l-infinity metric.
struct NetSpace {
  unsigned n = 0;
  Scalar delta;
  std::vector<Point> points;
  FiniteMetricSpace metric;

  // Throws DomainError for coordinates off the grid.
  std::size_t index_of(const Point& p) const;
};

inline constexpr std::size_t kMaxNetPoints = 4096;

// Throws DomainError unless n / delta is a power of two and the grid has at
// most kMaxNetPoints points.
NetSpace make_net(unsigned n, const Scalar& delta);

// rho(x, y) = max(min(dX(x, y), r), eY(f(x), f(y))). f maps X indices onto
// Y indices; throws DomainError unless it is total and surjective.
FiniteMetricSpace pullback_universal(const FiniteMetricSpace& dX,
                                     const FiniteMetricSpace& eY,
                                     const std::vector<std::size_t>& f,
                                     const Scalar& r);

// Maps each point of `subset` (Y indices) to its preimage under f with the
// smallest label. Isometric for r-separated subsets.
std::vector<std::size_t> pullback_section(const FiniteMetricSpace& dX,
                                          const std::vector<std::size_t>& f,
                                          const std::vector<std::size_t>& subset);

// Points a_i, b_i with D(a_i, b_i) = s_i, glued by a hub that is 1 between
// distinct a_i. Throws DomainError for a zero or repeated value.
FiniteMetricSpace build_pair_universal(const std::vector<Scalar>& values);

struct FUnivApprox {
  FiniteMetricSpace space;
  NetSpace net;
  unsigned copies = 0;

  // Global index of net point `local` in piece `copy`.
  std::size_t global_index(unsigned copy, std::size_t local) const {
    return copy * net.points.size() + local;
  }
};

// `copies` pieces, each the delta-net of [0, n]^n carrying
// pullback_universal(Cantor-coded ultrametric, l-infinity, id, 1/n), glued by
// a hub of 1 + n between piece origins.
FUnivApprox build_funiv_approx(unsigned n, const Scalar& delta, unsigned copies);

// Embeds a member of C_n into piece `copy`: Frechet coordinates rounded up to
// the grid. Exact when every distance is a multiple of delta; distortion
// < delta otherwise.
Embedding embed_into_funiv(const FUnivApprox& host, const FiniteMetricSpace& m,
                           unsigned copy = 0);

// Widest gap between consecutive points of (range(m) n [0, t]) u {0, t}.
Interval widest_range_gap(const FiniteMetricSpace& m, const Scalar& t);
// Its length. Throws DomainError when t is zero.
Scalar range_density_gap(const FiniteMetricSpace& m, const Scalar& t);

struct FragilityReport {
  std::vector<Scalar> values;
  Scalar epsilon;
  Scalar eta;
  Scalar r;
  FiniteMetricSpace source;
  ApproximationResult approximation;
  Scalar sup_distance;
  Scalar max_value;
  // Widest open interval of [0, max_value] missed by range(D).
  Interval missed;
  Scalar missed_length;
  // Every certificate reconstructs its value and range_membership agrees.
  bool certificates_valid = false;
  // s whose two-point space no longer embeds exactly into D.
  std::vector<Scalar> lost;
  // s outside E(eta, r) according to range_membership.
  std::vector<Scalar> outside_range_set;

  // sup <= epsilon, missed_length >= epsilon/10, certificates valid, and
  // every value outside E(eta, r) is lost.
  bool consistent() const;
};

FragilityReport fragility_experiment(const std::vector<Scalar>& values,
                                     const Scalar& epsilon);

}  // namespace metric_forge
