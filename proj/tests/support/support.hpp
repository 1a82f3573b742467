#pragma once

// Seeded generators and brute-force oracles shared by the unit, property and
// acceptance tests. Oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "metric_forge/construct.hpp"
#include "metric_forge/metric_space.hpp"
#include "metric_forge/nebula.hpp"
#include "metric_forge/range_set.hpp"
#include "metric_forge/scalar.hpp"
#include "metric_forge/transform.hpp"

namespace mf_test {

using metric_forge::DistanceMatrix;
using metric_forge::FiniteMetricSpace;
using metric_forge::Scalar;

inline Scalar S(const char* text) { return Scalar::parse(text); }

// Symmetric matrix from the upper triangle given row by row, e.g.
// {"1", "2", "3/2"} for three points (ab, ac, bc).
inline DistanceMatrix upper(std::vector<std::string> labels,
                            const std::vector<std::string>& upper_values) {
  DistanceMatrix m(labels);
  std::size_t k = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      m.set_symmetric(i, j, Scalar::parse(upper_values.at(k++)));
    }
  }
  return m;
}

inline FiniteMetricSpace space(std::vector<std::string> labels,
                               const std::vector<std::string>& upper_values) {
  return FiniteMetricSpace(upper(std::move(labels), upper_values));
}

inline FiniteMetricSpace constant_space(std::size_t n, const Scalar& value) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  DistanceMatrix m(labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set_symmetric(i, j, value);
  return FiniteMetricSpace(std::move(m));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return below(2) == 1; }

  // num/den with num in [0, max_num], den in [1, max_den].
  Scalar rational(std::int64_t max_num, std::int64_t max_den) {
    return Scalar(between(0, max_num), between(1, max_den));
  }
  Scalar positive_rational(std::int64_t max_num, std::int64_t max_den) {
    return Scalar(between(1, max_num), between(1, max_den));
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Any symmetric matrix with off-diagonal values in [a, 2a] is a metric.
inline FiniteMetricSpace band_metric(Rng& rng, std::size_t points, const Scalar& a,
                                     std::int64_t steps) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points; ++i) labels.push_back("q" + std::to_string(i));
  DistanceMatrix m(labels);
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = i + 1; j < points; ++j) {
      m.set_symmetric(i, j, a + a * Scalar(rng.between(0, steps), steps));
    }
  }
  return FiniteMetricSpace(std::move(m));
}

// A random member of C_n: at most n points, diameter <= n, separation >= 1/n.
inline FiniteMetricSpace random_cn_member(Rng& rng, unsigned n) {
  const auto points = static_cast<std::size_t>(rng.between(1, n));
  if (n == 1) return band_metric(rng, points, Scalar{1}, 1);
  // Band [a, 2a] with 1/n <= a and 2a <= n.
  const Scalar lo(1, n);
  const Scalar hi(n, 2);
  const Scalar a = lo + (hi - lo) * Scalar(rng.between(0, 12), 12);
  return band_metric(rng, points, a, 24);
}

// Sorted distinct values in [0, 10] containing 0.
inline std::vector<Scalar> random_value_set(Rng& rng, std::size_t max_size) {
  const auto size = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_size)));
  std::vector<Scalar> s{Scalar{0}};
  while (s.size() < size) s.push_back(Scalar(rng.between(0, 1000), rng.between(1, 100)));
  for (auto& v : s) v = std::min(v, Scalar{10});
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// A subadditive member of the transform family, picked at random.
inline metric_forge::Transform random_subadditive(Rng& rng, int depth = 0) {
  using metric_forge::Transform;
  const auto pick = rng.below(depth < 2 ? 6 : 4);
  switch (pick) {
    case 0: return Transform::scaled_ceil(rng.positive_rational(5, 8));
    case 1: return Transform::truncate(rng.positive_rational(10, 4));
    case 2: return Transform::affine_capped(mpq_class(rng.between(0, 5), rng.between(1, 4)),
                                            rng.positive_rational(6, 3));
    case 3: return Transform::identity();
    case 4: return Transform::sum(random_subadditive(rng, depth + 1),
                                  random_subadditive(rng, depth + 1));
    default: return Transform::compose(random_subadditive(rng, depth + 1),
                                       random_subadditive(rng, depth + 1));
  }
}

// ---- oracles -------------------------------------------------------------

// t in E(eta, u) by enumeration over l and exponents 0..bound.
inline bool brute_force_member(const Scalar& t, const Scalar& eta, const Scalar& u,
                               unsigned bound) {
  const mpq_class x = t.value() / eta.value();
  std::vector<mpq_class> o{0};
  mpq_class p = 1;
  for (unsigned k = 0; k <= bound; ++k) {
    o.push_back(p);
    p *= u.value();
  }
  for (const auto& a : o) {
    for (const auto& b : o) {
      const mpq_class rest = x - a - b;
      if (sgn(rest) >= 0 && rest.get_den() == 1) return true;
    }
  }
  return false;
}

// All-pairs shortest paths by relaxation to a fixed point.
inline DistanceMatrix relax_to_fixed_point(DistanceMatrix w) {
  const auto n = w.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (w.at(i, k) + w.at(k, j) < w.at(i, j)) {
            w.set(i, j, w.at(i, k) + w.at(k, j));
            changed = true;
          }
  }
  return w;
}

// Minimax path value: the smallest threshold under which x and y are joined
// by edges of weight <= threshold.
inline Scalar minimax_path(const FiniteMetricSpace& m, std::size_t x, std::size_t y) {
  if (x == y) return Scalar{0};
  std::vector<Scalar> thresholds;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) thresholds.push_back(m(i, j));
  std::sort(thresholds.begin(), thresholds.end());
  for (const auto& t : thresholds) {
    std::vector<bool> seen(m.size(), false);
    std::vector<std::size_t> stack{x};
    seen[x] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < m.size(); ++w) {
        if (!seen[w] && m(v, w) <= t) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    if (seen[y]) return t;
  }
  return m(x, y);
}

// Enumerates every injective map of the pattern into the host.
inline bool brute_force_embeds(const FiniteMetricSpace& pattern, const FiniteMetricSpace& host,
                               const Scalar& distortion) {
  const auto k = pattern.size();
  const auto n = host.size();
  if (k > n) return false;
  std::vector<std::size_t> map(k, 0);
  while (true) {
    bool injective = true;
    for (std::size_t i = 0; i < k && injective; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (map[i] == map[j]) injective = false;
    if (injective) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i)
        for (std::size_t j = i + 1; j < k && ok; ++j)
          ok = metric_forge::abs_diff(host(map[i], map[j]), pattern(i, j)) <= distortion;
      if (ok) return true;
    }
    std::size_t pos = 0;
    while (pos < k && ++map[pos] == n) map[pos++] = 0;
    if (pos == k) return false;
  }
}

// Lower bound on the Hausdorff distance by sampling every interval on a grid
// of the given step.
inline Scalar sampled_hausdorff(const metric_forge::IntervalSet& set,
                                const std::vector<Scalar>& points, const Scalar& step) {
  auto to_points = [&](const Scalar& x) {
    Scalar best = metric_forge::abs_diff(x, points.front());
    for (const auto& p : points) best = std::min(best, metric_forge::abs_diff(x, p));
    return best;
  };
  Scalar worst{0};
  for (const auto& iv : set.bounded()) {
    for (Scalar x = iv.lo; x <= iv.hi; x += step) worst = std::max(worst, to_points(x));
    worst = std::max(worst, to_points(iv.hi));
  }
  for (const auto& p : points) {
    Scalar best = Scalar{1000000};
    for (const auto& iv : set.bounded()) {
      const Scalar d = iv.contains(p) ? Scalar{0}
                       : p < iv.lo    ? iv.lo - p
                                      : p - iv.hi;
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace mf_test
