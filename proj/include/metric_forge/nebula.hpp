#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metric_forge/metric_space.hpp"

namespace metric_forge {

struct Interval {
  Scalar lo;
  Scalar hi;

  bool contains(const Scalar& t) const { return lo <= t && t <= hi; }
  // Throws DomainError when hi < lo.
  Scalar width() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of closed intervals in [0, inf) plus an optional unbounded
// tail [tail, inf). Kept canonical: sorted, with overlapping or touching
// pieces merged, so equality is set equality.
class IntervalSet {
 public:
  IntervalSet() = default;
  // Throws DomainError for an interval with hi < lo.
  IntervalSet(std::vector<Interval> bounded, std::optional<Scalar> tail);

  const std::vector<Interval>& bounded() const { return bounded_; }
  const std::optional<Scalar>& tail() const { return tail_; }
  bool empty() const { return bounded_.empty() && !tail_; }

  bool contains(const Scalar& t) const;
  IntervalSet intersect(const IntervalSet& other) const;
  // Intersection with [0, hi].
  IntervalSet clip(const Scalar& hi) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> bounded_;
  std::optional<Scalar> tail_;
};

// q-nebula candidate: bounded pieces I_0 < I_1 < ... each of width < 2^-q,
// with 0 in I_0, and a tail [tail_start, inf) inside (q, inf).
struct Nebula {
  unsigned q = 0;
  std::vector<Interval> bounded;
  Scalar tail_start;

  IntervalSet as_set() const;

  friend bool operator==(const Nebula&, const Nebula&) = default;
};

enum class NebulaViolationKind { zero_membership, closed_interval, width, tail, disjoint };

const char* to_string(NebulaViolationKind kind);

struct NebulaViolation {
  NebulaViolationKind kind;
  std::string message;
};

struct NebulaReport {
  bool valid = true;
  std::vector<NebulaViolation> violations;
};

NebulaReport validate_nebula(const Nebula& a);

bool nebula_contains(const Nebula& a, const Scalar& t);

// A q-nebula containing the finite set s (0 must belong to s). Cuts [0, q+1]
// at points t_m near the grid m * 2^-(q+1), chosen off s (t_m = C_m, else
// C_m - 2^-(q+3), else the first point of a finer dyadic scan of the window),
// and takes [min, max] of s inside each cell that meets s. The tail starts at
// the first point of s past t_M, or at t_M. Every bounded piece meets s.
Nebula cover(std::span<const Scalar> s, unsigned q);

// cover(s, q) for q = 0..q_max.
std::vector<Nebula> cover_family(std::span<const Scalar> s, unsigned q_max);

struct IntersectionResult {
  IntervalSet set;
  // Longest piece of the result inside [0, min q + 1), clipped to that range.
  Scalar largest_low_component;
  // largest_low_component < 2^-(max q). Meaningful when the family holds
  // nebulae of distinct q.
  bool fine = false;
};

// Throws DomainError for an empty list.
IntersectionResult intersect(std::span<const Nebula> nebulae);

struct MarginResult {
  Scalar epsilon;
  Nebula fattened;
  // Smallest gap between consecutive value-carrying pieces of the witness.
  Scalar gap;
};

// Openness witness. Keeps I_0, the tail, and the bounded pieces that hold a
// value of m; with c the smallest gap between kept pieces and w the widest
// kept bounded piece,
//   epsilon = 1/2 * min{(2^-q - w) / 2, tail_start - q, c / 4},
// and the fattened nebula widens each kept piece by epsilon (I_0 to the right
// only, the tail downwards). Any metric within sup distance < epsilon of m
// takes all its values in the fattened nebula. Throws PreconditionError when
// a is not a valid nebula or misses a value of m.
MarginResult margin(const FiniteMetricSpace& m, const Nebula& a);

// Distinct values of m, ascending, including 0.
std::vector<Scalar> range_of_metric(const FiniteMetricSpace& m);

// Smallest positive value; nullopt for a one-point space.
std::optional<Scalar> gap_near_zero(const FiniteMetricSpace& m);

// Hausdorff distance between a bounded interval set and a nonempty finite
// point set. Throws DomainError for a set with a tail or empty inputs.
Scalar hausdorff_distance(const IntervalSet& set, std::span<const Scalar> points);

}  // namespace metric_forge
