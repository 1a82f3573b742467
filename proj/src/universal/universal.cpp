#include "metric_forge/universal.hpp"

#include <algorithm>

#include "metric_forge/construct.hpp"
#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

struct Search {
  const FiniteMetricSpace& pattern;
  const FiniteMetricSpace& host;
  const mpq_class& tolerance;
  std::vector<std::size_t> mapping;
  std::vector<bool> used;
  mpq_class diff;

  bool fits(std::size_t i, std::size_t h) {
    for (std::size_t j = 0; j < i; ++j) {
      diff = host(mapping[j], h).value() - pattern(j, i).value();
      if (abs(diff) > tolerance) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == pattern.size()) return true;
    for (std::size_t h = 0; h < host.size(); ++h) {
      if (used[h] || !fits(i, h)) continue;
      used[h] = true;
      mapping[i] = h;
      if (extend(i + 1)) return true;
      used[h] = false;
    }
    return false;
  }
};

std::string point_label(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + p[i].str();
  return out + ")";
}

// 2^-(first differing bit from the top) over `bits`-bit codes.
Scalar cantor_code_distance(std::size_t x, std::size_t y, unsigned bits) {
  const auto diff = x ^ y;
  unsigned first = 1;
  while (!((diff >> (bits - first)) & 1U)) ++first;
  return dyadic(first);
}

}  // namespace

Embedding measure_embedding(const FiniteMetricSpace& pattern,
                            const FiniteMetricSpace& host,
                            std::vector<std::size_t> mapping) {
  if (mapping.size() != pattern.size()) {
    throw DomainError("embedding: mapping does not cover the pattern");
  }
  std::vector<bool> used(host.size(), false);
  for (auto h : mapping) {
    if (h >= host.size() || used[h]) {
      throw DomainError("embedding: mapping is not injective into the host");
    }
    used[h] = true;
  }
  Scalar worst{0};
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    for (std::size_t j = i + 1; j < pattern.size(); ++j) {
      worst = std::max(worst, abs_diff(host(mapping[i], mapping[j]), pattern(i, j)));
    }
  }
  const bool exact = worst.is_zero();
  return {std::move(mapping), exact, std::move(worst)};
}

std::optional<Embedding> find_isometric_embedding(const FiniteMetricSpace& pattern,
                                                  const FiniteMetricSpace& host,
                                                  const Scalar& distortion,
                                                  std::size_t cap) {
  if (pattern.size() > cap) {
    throw RefusalError("embedding search refuses patterns above " +
                       std::to_string(cap) + " points (got " +
                       std::to_string(pattern.size()) + ")");
  }
  if (pattern.size() > host.size()) return std::nullopt;
  Search search{pattern, host, distortion.value(),
                std::vector<std::size_t>(pattern.size()),
                std::vector<bool>(host.size(), false), {}};
  if (!search.extend(0)) return std::nullopt;
  return measure_embedding(pattern, host, std::move(search.mapping));
}

bool class_Cn_check(const FiniteMetricSpace& m, unsigned n) {
  if (n == 0 || m.size() > n) return false;
  const Scalar top{static_cast<std::int64_t>(n)};
  const Scalar sep{1, static_cast<std::int64_t>(n)};
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (m(i, j) > top || m(i, j) < sep) return false;
    }
  }
  return true;
}

Scalar linf_distance(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw DomainError("linf_distance: dimension mismatch");
  Scalar best{0};
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, abs_diff(a[i], b[i]));
  return best;
}

FrechetEmbedding frechet_embed(const FiniteMetricSpace& m, unsigned n) {
  if (!class_Cn_check(m, n)) {
    throw PreconditionError("frechet_embed: space is not in C_" + std::to_string(n));
  }
  FrechetEmbedding out;
  out.n = n;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Point p(n, Scalar{0});
    for (std::size_t c = 0; c < m.size(); ++c) p[c] = m(c, i);
    out.coords.push_back(std::move(p));
  }
  return out;
}

std::size_t NetSpace::index_of(const Point& p) const {
  if (p.size() != n) throw DomainError("net point has the wrong dimension");
  const std::size_t side = (Scalar{static_cast<std::int64_t>(n)} / delta).numerator().get_ui() + 1;
  std::size_t index = 0;
  for (const auto& c : p) {
    const auto k = c / delta;
    if (!k.is_integer() || k.numerator() >= side) {
      throw DomainError("coordinate " + c.str() + " is off the net");
    }
    index = index * side + k.numerator().get_ui();
  }
  return index;
}

NetSpace make_net(unsigned n, const Scalar& delta) {
  if (n == 0) throw DomainError("net: n must be at least 1");
  if (delta.is_zero()) throw DomainError("net: delta must be positive");
  const Scalar ratio = Scalar{static_cast<std::int64_t>(n)} / delta;
  if (!ratio.is_integer() || !ratio.numerator().fits_ulong_p() ||
      mpz_popcount(ratio.numerator().get_mpz_t()) != 1) {
    throw DomainError("net: delta must equal n / 2^t, got " + delta.str());
  }
  const std::size_t side = ratio.numerator().get_ui() + 1;
  std::size_t count = 1;
  for (unsigned d = 0; d < n; ++d) {
    count *= side;
    if (count > kMaxNetPoints) {
      throw DomainError("net: more than " + std::to_string(kMaxNetPoints) + " points");
    }
  }

  NetSpace net;
  net.n = n;
  net.delta = delta;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Point p(n);
    auto rest = idx;
    for (unsigned d = n; d-- > 0;) {
      p[d] = delta * Scalar{static_cast<std::int64_t>(rest % side)};
      rest /= side;
    }
    net.points.push_back(std::move(p));
  }
  std::vector<std::string> labels;
  for (const auto& p : net.points) labels.push_back(point_label(p));
  DistanceMatrix dm(std::move(labels));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      dm.set_symmetric(i, j, linf_distance(net.points[i], net.points[j]));
    }
  }
  net.metric = FiniteMetricSpace::assume_metric(std::move(dm));
  return net;
}

FiniteMetricSpace pullback_universal(const FiniteMetricSpace& dX,
                                     const FiniteMetricSpace& eY,
                                     const std::vector<std::size_t>& f,
                                     const Scalar& r) {
  if (r.is_zero()) throw DomainError("pullback_universal: r must be positive");
  if (f.size() != dX.size()) throw DomainError("pullback_universal: f must be total");
  std::vector<bool> hit(eY.size(), false);
  for (auto y : f) {
    if (y >= eY.size()) throw DomainError("pullback_universal: f leaves Y");
    hit[y] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw DomainError("pullback_universal: f is not surjective");
  }
  DistanceMatrix out(dX.points());
  for (std::size_t i = 0; i < dX.size(); ++i) {
    for (std::size_t j = i + 1; j < dX.size(); ++j) {
      const Scalar& near = std::min(dX(i, j), r);
      out.set_symmetric(i, j, std::max(near, eY(f[i], f[j])));
    }
  }
  return FiniteMetricSpace::assume_metric(std::move(out));
}

std::vector<std::size_t> pullback_section(const FiniteMetricSpace& dX,
                                          const std::vector<std::size_t>& f,
                                          const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> out;
  for (auto y : subset) {
    std::optional<std::size_t> pick;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f[x] == y && (!pick || dX.points()[x] < dX.points()[*pick])) pick = x;
    }
    if (!pick) throw DomainError("pullback_section: point has no preimage");
    out.push_back(*pick);
  }
  return out;
}

FiniteMetricSpace build_pair_universal(const std::vector<Scalar>& values) {
  if (values.empty()) throw DomainError("pair universal: need at least one value");
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("pair universal: values must be distinct");
  }
  if (sorted.front().is_zero()) {
    throw DomainError("pair universal: values must be positive");
  }

  const auto labels = pair_points(values.size());
  PartitionPlan plan;
  plan.radius = Scalar{0};
  std::vector<FiniteMetricSpace> pieces;
  std::vector<std::string> hub_labels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    plan.clusters.push_back({2 * i, 2 * i + 1});
    plan.reps.push_back(2 * i);
    DistanceMatrix pair({labels[2 * i], labels[2 * i + 1]});
    pair.set_symmetric(0, 1, values[i]);
    pieces.push_back(FiniteMetricSpace::assume_metric(std::move(pair)));
    hub_labels.push_back(labels[2 * i]);
  }
  DistanceMatrix h(std::move(hub_labels));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) h.set_symmetric(i, j, Scalar{1});
  }
  return amalgamate(plan, pieces, h);
}

FUnivApprox build_funiv_approx(unsigned n, const Scalar& delta, unsigned copies) {
  if (copies == 0) throw DomainError("funiv: copies must be at least 1");
  auto net = make_net(n, delta);
  const auto size = net.points.size();

  unsigned bits = 1;
  while ((std::size_t{1} << bits) < size) ++bits;
  DistanceMatrix proxy(net.metric.points());
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      proxy.set_symmetric(i, j, cantor_code_distance(i, j, bits));
    }
  }
  std::vector<std::size_t> id(size);
  for (std::size_t i = 0; i < size; ++i) id[i] = i;
  const auto piece = pullback_universal(
      FiniteMetricSpace::assume_metric(std::move(proxy)), net.metric, id,
      Scalar{1, static_cast<std::int64_t>(n)});

  PartitionPlan plan;
  plan.radius = Scalar{0};
  std::vector<FiniteMetricSpace> pieces;
  std::vector<std::string> hub_labels;
  for (unsigned c = 0; c < copies; ++c) {
    std::vector<std::size_t> members(size);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size; ++i) {
      members[i] = c * size + i;
      labels.push_back("k" + std::to_string(c) + piece.points()[i]);
    }
    DistanceMatrix copy(labels);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) copy.set(i, j, piece(i, j));
    }
    plan.clusters.push_back(std::move(members));
    plan.reps.push_back(c * size);
    hub_labels.push_back(labels.front());
    pieces.push_back(FiniteMetricSpace::assume_metric(std::move(copy)));
  }
  DistanceMatrix hub(std::move(hub_labels));
  const Scalar gap{static_cast<std::int64_t>(n) + 1};
  for (unsigned i = 0; i < copies; ++i) {
    for (unsigned j = i + 1; j < copies; ++j) hub.set_symmetric(i, j, gap);
  }
  return {amalgamate(plan, pieces, hub), std::move(net), copies};
}

Embedding embed_into_funiv(const FUnivApprox& host, const FiniteMetricSpace& m,
                           unsigned copy) {
  if (copy >= host.copies) throw DomainError("funiv: no such copy");
  const auto phi = frechet_embed(m, host.net.n);
  const auto& delta = host.net.delta;
  std::vector<std::size_t> mapping;
  for (const auto& p : phi.coords) {
    Point snapped;
    for (const auto& c : p) {
      snapped.push_back(delta * Scalar::from_rational(mpq_class((c / delta).ceil())));
    }
    mapping.push_back(host.global_index(copy, host.net.index_of(snapped)));
  }
  return measure_embedding(m, host.space, std::move(mapping));
}

Interval widest_range_gap(const FiniteMetricSpace& m, const Scalar& t) {
  if (t.is_zero()) throw DomainError("range gap: T must be positive");
  std::vector<Scalar> marks;
  for (const auto& v : range_of_metric(m)) {
    if (v <= t) marks.push_back(v);
  }
  if (marks.back() != t) marks.push_back(t);
  Interval best{marks[0], marks[0]};
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    if (marks[i + 1] - marks[i] > best.width()) best = {marks[i], marks[i + 1]};
  }
  return best;
}

Scalar range_density_gap(const FiniteMetricSpace& m, const Scalar& t) {
  return widest_range_gap(m, t).width();
}

bool FragilityReport::consistent() const {
  if (sup_distance > epsilon) return false;
  if (missed_length < epsilon / Scalar{10}) return false;
  if (!certificates_valid) return false;
  return std::all_of(outside_range_set.begin(), outside_range_set.end(),
                     [&](const Scalar& s) {
                       return std::find(lost.begin(), lost.end(), s) != lost.end();
                     });
}

FragilityReport fragility_experiment(const std::vector<Scalar>& values,
                                     const Scalar& epsilon) {
  FragilityReport rep;
  rep.values = values;
  rep.epsilon = epsilon;
  rep.source = build_pair_universal(values);
  rep.approximation = approximate(rep.source, epsilon);
  const auto& D = rep.approximation.D;
  const auto params = rep.approximation.params();
  rep.eta = params.eta;
  rep.r = params.u;
  rep.sup_distance = sup_distance(rep.source, D);
  rep.max_value = D.diameter();
  if (rep.max_value.is_zero()) {
    rep.missed = {Scalar{0}, Scalar{0}};
  } else {
    rep.missed = widest_range_gap(D, rep.max_value);
  }
  rep.missed_length = rep.missed.width();

  rep.certificates_valid = true;
  for (const auto& pc : rep.approximation.certificates) {
    const auto& v = D(pc.i, pc.j);
    if (pc.cert.value(params) != v || !range_membership(v, params)) {
      rep.certificates_valid = false;
    }
  }

  for (const auto& s : values) {
    DistanceMatrix two({"x", "y"});
    two.set_symmetric(0, 1, s);
    const auto pattern = FiniteMetricSpace::assume_metric(std::move(two));
    if (!find_isometric_embedding(pattern, D)) rep.lost.push_back(s);
    if (!range_membership(s, params)) rep.outside_range_set.push_back(s);
  }
  return rep;
}

}  // namespace metric_forge
