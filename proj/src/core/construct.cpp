#include "metric_forge/construct.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>

#include "metric_forge/error.hpp"

namespace metric_forge {

std::size_t PartitionPlan::point_count() const {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size();
  return total;
}

std::vector<std::size_t> PartitionPlan::owner() const {
  std::vector<std::size_t> out(point_count(), clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (auto p : clusters[c]) {
      if (p >= out.size() || out[p] != clusters.size()) {
        throw DomainError("partition clusters do not partition 0..n-1");
      }
      out[p] = c;
    }
  }
  return out;
}

PartitionPlan greedy_clopen_partition(const FiniteMetricSpace& m,
                                      const Scalar& r) {
  if (r.is_zero()) throw DomainError("partition radius must be positive");
  PartitionPlan plan;
  plan.radius = r;
  std::vector<bool> taken(m.size(), false);
  for (std::size_t center = 0; center < m.size(); ++center) {
    if (taken[center]) continue;
    std::vector<std::size_t> cluster;
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (!taken[p] && m(center, p) < r) {
        taken[p] = true;
        cluster.push_back(p);
      }
    }
    plan.clusters.push_back(std::move(cluster));
    plan.reps.push_back(center);
  }
  return plan;
}

FiniteMetricSpace amalgamate(const PartitionPlan& plan,
                             const std::vector<FiniteMetricSpace>& cluster_metrics,
                             const DistanceMatrix& hub) {
  const auto k = plan.clusters.size();
  if (cluster_metrics.size() != k || plan.reps.size() != k || hub.size() != k) {
    throw DomainError("amalgamate: plan, cluster metrics and hub disagree in size");
  }
  const auto owner = plan.owner();
  const auto n = owner.size();

  // Position of each point inside its cluster, and of each rep.
  std::vector<std::size_t> slot(n);
  std::vector<std::size_t> rep_slot(k);
  std::vector<std::string> labels(n);
  for (std::size_t c = 0; c < k; ++c) {
    const auto& members = plan.clusters[c];
    if (cluster_metrics[c].size() != members.size()) {
      throw DomainError("amalgamate: cluster metric " + std::to_string(c) +
                        " has the wrong number of points");
    }
    const auto rep = std::find(members.begin(), members.end(), plan.reps[c]);
    if (rep == members.end()) {
      throw DomainError("amalgamate: representative outside its cluster");
    }
    rep_slot[c] = static_cast<std::size_t>(rep - members.begin());
    for (std::size_t s = 0; s < members.size(); ++s) {
      slot[members[s]] = s;
      labels[members[s]] = cluster_metrics[c].points()[s];
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && hub.at(i, j).is_zero()) {
        throw PreconditionError(
            "amalgamate: hub must be discrete (zero off-diagonal entry)");
      }
    }
  }
  if (!validate_metric(hub).is_metric) {
    throw PreconditionError("amalgamate: hub is not a metric");
  }

  DistanceMatrix out(std::move(labels));
  for (std::size_t x = 0; x < n; ++x) {
    const auto cx = owner[x];
    const auto& ex = cluster_metrics[cx];
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto cy = owner[y];
      if (cx == cy) {
        out.set_symmetric(x, y, ex(slot[x], slot[y]));
      } else {
        const auto& ey = cluster_metrics[cy];
        out.set_symmetric(x, y, ex(slot[x], rep_slot[cx]) + hub.at(cx, cy) +
                                    ey(rep_slot[cy], slot[y]));
      }
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

FiniteMetricSpace extend_metric(const FiniteMetricSpace& d,
                                const std::vector<std::string>& x) {
  if (d.size() == 0) throw DomainError("extend_metric: A must be nonempty");
  std::unordered_map<std::string, std::size_t> in_a;
  for (std::size_t i = 0; i < d.size(); ++i) in_a.emplace(d.points()[i], i);

  std::vector<std::ptrdiff_t> source(x.size(), -1);
  std::size_t found = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto it = in_a.find(x[i]); it != in_a.end()) {
      source[i] = static_cast<std::ptrdiff_t>(it->second);
      ++found;
    }
  }
  if (found != d.size()) {
    throw DomainError("extend_metric: X must contain every point of A");
  }

  const Scalar outer = d.diameter() + Scalar{1};
  DistanceMatrix out(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (source[i] >= 0 && source[j] >= 0) {
        out.set_symmetric(i, j,
                          d(static_cast<std::size_t>(source[i]),
                            static_cast<std::size_t>(source[j])));
      } else {
        out.set_symmetric(i, j, outer);
      }
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

FiniteMetricSpace metric_repair(const DistanceMatrix& w) {
  const auto n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!w.at(i, i).is_zero()) {
      throw DomainError("metric_repair: nonzero diagonal at " + w.points()[i]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.at(i, j) != w.at(j, i)) {
        throw DomainError("metric_repair: matrix is not symmetric at (" +
                          w.points()[i] + "," + w.points()[j] + ")");
      }
      if (w.at(i, j).is_zero()) {
        throw DomainError(
            "metric_repair: zero distance between distinct points (" +
            w.points()[i] + "," + w.points()[j] +
            ") violates identity of indiscernibles");
      }
    }
  }

  // Floyd-Warshall on raw rationals.
  std::vector<mpq_class> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = w.at(i, j).value();
  }
  mpq_class via;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j == k) continue;
        via = d[i * n + k] + d[k * n + j];
        if (via < d[i * n + j]) {
          d[i * n + j] = via;
          d[j * n + i] = via;
        }
      }
    }
  }

  DistanceMatrix out(w.points());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.set(i, j, Scalar::from_rational(d[i * n + j]));
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& m) {
  const auto n = m.size();
  if (n <= 1) return m;

  // Prim's algorithm; ties go to the lower index.
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<bool> in_tree(n, false);
  std::vector<std::size_t> parent(n, none);
  std::vector<const Scalar*> best(n, nullptr);
  std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> adj(n);
  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) {
    best[v] = &m(0, v);
    parent[v] = 0;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = none;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (pick == none || *best[v] < *best[pick])) pick = v;
    }
    in_tree[pick] = true;
    adj[pick].emplace_back(parent[pick], best[pick]);
    adj[parent[pick]].emplace_back(pick, best[pick]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && m(pick, v) < *best[v]) {
        best[v] = &m(pick, v);
        parent[v] = pick;
      }
    }
  }

  // Max edge on the tree path from each root.
  DistanceMatrix out(m.points());
  std::vector<const Scalar*> hop(n);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    std::fill(hop.begin(), hop.end(), nullptr);
    std::vector<bool> seen(n, false);
    seen[root] = true;
    stack.assign(1, root);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& [w, len] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        hop[w] = (hop[v] == nullptr || *len > *hop[v]) ? len : hop[v];
        stack.push_back(w);
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (v != root) out.set(root, v, *hop[v]);
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

FiniteMetricSpace random_metric(std::size_t n, const Scalar& max_value,
                                std::uint64_t seed) {
  if (n == 0) throw DomainError("random_metric: n must be at least 1");
  if (max_value.is_zero()) {
    throw DomainError("random_metric: max_value must be positive");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));

  // mt19937_64 output is fixed by the standard; the reduction below avoids
  // the implementation-defined distributions.
  std::mt19937_64 rng(seed);
  const Scalar step = max_value / Scalar{1000};
  DistanceMatrix w(std::move(labels));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto k = static_cast<std::int64_t>(rng() % 1000) + 1;
      w.set_symmetric(i, j, step * Scalar{k});
    }
  }
  return metric_repair(w);
}

FiniteMetricSpace cantor_approx(unsigned k) {
  if (k == 0) throw DomainError("cantor_approx: k must be at least 1");
  if (k > 16) throw DomainError("cantor_approx: k above 16 is too large");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    std::string bits;
    for (unsigned b = 0; b < k; ++b) bits += ((x >> (k - 1 - b)) & 1U) ? '1' : '0';
    labels.push_back(std::move(bits));
  }
  std::vector<Scalar> level;
  for (unsigned c = 1; c <= k; ++c) level.push_back(dyadic(c));

  DistanceMatrix out(std::move(labels));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      // Highest differing bit is the first differing coordinate.
      const auto diff = x ^ y;
      unsigned first = 1;
      while (!((diff >> (k - first)) & 1U)) ++first;
      out.set_symmetric(x, y, level[first - 1]);
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

std::vector<std::string> pair_points(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back("a" + std::to_string(i));
    out.push_back("b" + std::to_string(i));
  }
  return out;
}

}  // namespace metric_forge
