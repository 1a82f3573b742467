#include "metric_forge/transform.hpp"

#include <algorithm>

#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Scalar min_of(const Scalar& a, const Scalar& b) { return a < b ? a : b; }

}  // namespace

mpz_class ceil_ratio(const Scalar& x, const Scalar& eta) {
  if (eta.is_zero()) throw DomainError("ceil_ratio: eta must be positive");
  return (x / eta).ceil();
}

Transform Transform::identity() { return Transform(Identity{}); }

Transform Transform::scaled_ceil(Scalar eta) {
  if (eta.is_zero()) throw DomainError("scaled_ceil: eta must be positive");
  return Transform(ScaledCeil{std::move(eta)});
}

Transform Transform::truncate(Scalar r) {
  if (r.is_zero()) throw DomainError("truncate: r must be positive");
  return Transform(Truncate{std::move(r)});
}

Transform Transform::round_up_to_set(std::vector<Scalar> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.empty()) throw DomainError("round_up_to_set: empty target set");
  if (targets.front().is_zero()) {
    targets.erase(targets.begin());
    if (targets.empty()) {
      throw DomainError("round_up_to_set: needs a positive target");
    }
  }
  return Transform(RoundUpToSet{std::move(targets)});
}

Transform Transform::round_up_geometric(Scalar eta, Scalar u) {
  if (eta.is_zero()) throw DomainError("round_up_geometric: eta must be positive");
  if (u.is_zero() || u >= Scalar{1}) {
    throw DomainError("round_up_geometric: u must lie in (0, 1)");
  }
  return Transform(RoundUpGeometric{std::move(eta), std::move(u)});
}

Transform Transform::affine_capped(mpq_class alpha, Scalar cap) {
  alpha.canonicalize();
  if (alpha <= -1) {
    throw DomainError("affine_capped: alpha must exceed -1 to stay increasing");
  }
  if (cap.is_zero()) throw DomainError("affine_capped: cap must be positive");
  return Transform(AffineCapped{std::move(alpha), std::move(cap)});
}

Transform Transform::power(unsigned k) {
  if (k == 0) throw DomainError("power: exponent must be at least 1");
  return Transform(Power{k});
}

Transform Transform::sum(Transform f, Transform g) {
  if (!f.is_subadditive() || !g.is_subadditive()) {
    throw UnsupportedTransform("sum: operands must be subadditive, got " +
                               f.describe() + " and " + g.describe());
  }
  return Transform(Sum{std::make_shared<const Transform>(std::move(f)),
                       std::make_shared<const Transform>(std::move(g))});
}

Transform Transform::compose(Transform outer, Transform inner) {
  if (!outer.is_subadditive() || !inner.is_subadditive()) {
    throw UnsupportedTransform("compose: operands must be subadditive, got " +
                               outer.describe() + " and " + inner.describe());
  }
  return Transform(Compose{std::make_shared<const Transform>(std::move(outer)),
                           std::make_shared<const Transform>(std::move(inner))});
}

Scalar Transform::apply(const Scalar& s) const {
  return std::visit(
      overloaded{
          [&](const Identity&) { return s; },
          [&](const ScaledCeil& t) {
            return t.eta * Scalar::from_rational(mpq_class(ceil_ratio(s, t.eta)));
          },
          [&](const Truncate& t) { return min_of(s, t.r); },
          [&](const RoundUpToSet& t) {
            if (s.is_zero()) return s;
            const auto it = std::lower_bound(t.targets.begin(), t.targets.end(), s);
            if (it == t.targets.end()) {
              throw DomainError("round_up_to_set: " + s.str() +
                                " exceeds the largest target");
            }
            return *it;
          },
          [&](const RoundUpGeometric& t) {
            if (s.is_zero()) return s;
            if (s > t.eta) {
              throw DomainError("round_up_geometric: " + s.str() +
                                " exceeds eta = " + t.eta.str());
            }
            Scalar v = t.eta;
            for (Scalar next = v * t.u; next >= s; next = v * t.u) v = next;
            return v;
          },
          [&](const AffineCapped& t) {
            return Scalar::from_rational(s.value() +
                                         t.alpha * min_of(s, t.cap).value());
          },
          [&](const Power& t) { return s.pow(t.k); },
          [&](const Sum& t) { return t.f->apply(s) + t.g->apply(s); },
          [&](const Compose& t) { return t.outer->apply(t.inner->apply(s)); },
      },
      node_);
}

bool Transform::is_subadditive() const {
  return !violation_witness().has_value();
}

std::optional<std::pair<Scalar, Scalar>> Transform::violation_witness() const {
  using Witness = std::optional<std::pair<Scalar, Scalar>>;
  return std::visit(
      overloaded{
          [](const Identity&) -> Witness { return std::nullopt; },
          [](const ScaledCeil&) -> Witness { return std::nullopt; },
          [](const Truncate&) -> Witness { return std::nullopt; },
          [](const Sum&) -> Witness { return std::nullopt; },
          [](const Compose&) -> Witness { return std::nullopt; },
          [](const RoundUpToSet& t) -> Witness {
            // Subadditive on its domain iff R is closed under sums that stay
            // at or below max R.
            const auto& top = t.targets.back();
            for (std::size_t i = 0; i < t.targets.size(); ++i) {
              for (std::size_t j = i; j < t.targets.size(); ++j) {
                const auto s = t.targets[i] + t.targets[j];
                if (s > top) break;
                if (!std::binary_search(t.targets.begin(), t.targets.end(), s)) {
                  return std::pair{t.targets[i], t.targets[j]};
                }
              }
            }
            return std::nullopt;
          },
          [](const RoundUpGeometric& t) -> Witness {
            // 2u^n is a power of u only when u = 1/2, and 1 + 2^-j never is.
            const Scalar half{1, 2};
            if (t.u == half) return std::pair{t.eta * half, t.eta * Scalar{1, 4}};
            Scalar p = t.u;
            while (p + p > Scalar{1}) p = p * t.u;
            return std::pair{t.eta * p, t.eta * p};
          },
          [](const AffineCapped& t) -> Witness {
            if (sgn(t.alpha) >= 0) return std::nullopt;
            return std::pair{t.cap, t.cap};
          },
          [](const Power& t) -> Witness {
            if (t.k == 1) return std::nullopt;
            return std::pair{Scalar{1}, Scalar{1}};
          },
      },
      node_);
}

std::string Transform::describe() const {
  return std::visit(
      overloaded{
          [](const Identity&) -> std::string { return "identity"; },
          [](const ScaledCeil& t) { return "scaled_ceil(" + t.eta.str() + ")"; },
          [](const Truncate& t) { return "truncate(" + t.r.str() + ")"; },
          [](const RoundUpToSet& t) {
            std::string out = "round_up_to_set(";
            for (std::size_t i = 0; i < t.targets.size(); ++i) {
              out += (i ? "," : "") + t.targets[i].str();
            }
            return out + ")";
          },
          [](const RoundUpGeometric& t) {
            return "round_up_geometric(" + t.eta.str() + "," + t.u.str() + ")";
          },
          [](const AffineCapped& t) {
            return "affine_capped(" + t.alpha.get_str() + "," + t.cap.str() + ")";
          },
          [](const Power& t) { return "power(" + std::to_string(t.k) + ")"; },
          [](const Sum& t) {
            return "sum(" + t.f->describe() + "," + t.g->describe() + ")";
          },
          [](const Compose& t) {
            return "compose(" + t.outer->describe() + "," + t.inner->describe() + ")";
          },
      },
      node_);
}

FiniteMetricSpace quantize_discrete(const FiniteMetricSpace& m,
                                    const Scalar& eta) {
  if (eta.is_zero()) throw DomainError("quantize_discrete: eta must be positive");
  return FiniteMetricSpace::assume_metric(
      transform_metric(m, Transform::scaled_ceil(eta)));
}

DistanceMatrix transform_metric(const FiniteMetricSpace& m, const Transform& f) {
  DistanceMatrix out(m.points());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      out.set_symmetric(i, j, f.apply(m(i, j)));
    }
  }
  return out;
}

FiniteMetricSpace subadditivity_counterexample(const Transform& f,
                                               const Scalar& x,
                                               const Scalar& y) {
  if (x.is_zero() || y.is_zero()) {
    throw PreconditionError("subadditivity_counterexample: x and y must be positive");
  }
  const auto whole = f.apply(x + y);
  const auto parts = f.apply(x) + f.apply(y);
  if (!(whole > parts)) {
    throw PreconditionError("subadditivity_counterexample: " + f.describe() +
                            " satisfies f(x+y) <= f(x)+f(y) at x=" + x.str() +
                            ", y=" + y.str());
  }
  DistanceMatrix out({"a", "b", "c"});
  out.set_symmetric(0, 1, x);
  out.set_symmetric(1, 2, y);
  out.set_symmetric(0, 2, x + y);
  return FiniteMetricSpace::assume_metric(std::move(out));
}

}  // namespace metric_forge
