#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "metric_forge/metric_space.hpp"

namespace metric_forge {

// Smallest integer k with x <= k * eta. Throws DomainError when eta is zero.
mpz_class ceil_ratio(const Scalar& x, const Scalar& eta);

// A member of the closed symbolic family of increasing functions
// f: [0, inf) -> [0, inf) with f(0) = 0 and f(s) > 0 for s > 0.
//
// Leaves:
//   identity            s
//   scaled_ceil(eta)    eta * ceil(s / eta)
//   truncate(r)         min(s, r)
//   round_up_to_set(R)  min{t in R : t >= s}, defined for s <= max R
//   round_up_geometric(eta, u)
//                       min{eta * u^n : eta * u^n >= s}, defined for s <= eta
//   affine_capped(a, c) s + a * min(s, c), a > -1
//   power(k)            s^k, k >= 1
// Combinators (operands must be subadditive):
//   sum(f, g)           f(s) + g(s)
//   compose(f, g)       f(g(s))
//
// Because combinators only take subadditive operands, subadditivity is
// decided exactly: combinators are always subadditive and each leaf has a
// closed-form rule.
class Transform {
 public:
  struct Identity {};
  struct ScaledCeil { Scalar eta; };
  struct Truncate { Scalar r; };
  struct RoundUpToSet { std::vector<Scalar> targets; };
  struct RoundUpGeometric { Scalar eta; Scalar u; };
  struct AffineCapped { mpq_class alpha; Scalar cap; };
  struct Power { unsigned k; };
  struct Sum { std::shared_ptr<const Transform> f, g; };
  struct Compose { std::shared_ptr<const Transform> outer, inner; };

  using Node = std::variant<Identity, ScaledCeil, Truncate, RoundUpToSet,
                            RoundUpGeometric, AffineCapped, Power, Sum, Compose>;

  static Transform identity();
  static Transform scaled_ceil(Scalar eta);
  static Transform truncate(Scalar r);
  static Transform round_up_to_set(std::vector<Scalar> targets);
  static Transform round_up_geometric(Scalar eta, Scalar u);
  static Transform affine_capped(mpq_class alpha, Scalar cap);
  static Transform power(unsigned k);
  static Transform sum(Transform f, Transform g);
  static Transform compose(Transform outer, Transform inner);

  // Throws DomainError outside the transform's domain.
  Scalar apply(const Scalar& s) const;

  bool is_subadditive() const;

  // Some (x, y) with f(x + y) > f(x) + f(y), x, y > 0, when one exists.
  std::optional<std::pair<Scalar, Scalar>> violation_witness() const;

  const Node& node() const { return node_; }
  std::string describe() const;

 private:
  explicit Transform(Node node) : node_(std::move(node)) {}
  Node node_;
};

// eta * ceil(d / eta) off the diagonal. Off-diagonal values land in
// eta * Z>=1 and lie within eta of the input.
FiniteMetricSpace quantize_discrete(const FiniteMetricSpace& m,
                                    const Scalar& eta);

// Pointwise f(d). A metric whenever f is subadditive; otherwise the result is
// returned for inspection and may fail validate_metric.
DistanceMatrix transform_metric(const FiniteMetricSpace& m, const Transform& f);

// The 3-point path space d(a,b) = x, d(b,c) = y, d(a,c) = x + y. Throws
// PreconditionError unless f(x + y) > f(x) + f(y) with x, y > 0.
FiniteMetricSpace subadditivity_counterexample(const Transform& f,
                                               const Scalar& x,
                                               const Scalar& y);

}  // namespace metric_forge
