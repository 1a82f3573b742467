#include "metric_forge/nebula.hpp"

#include <algorithm>
#include <set>

#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

// A piece with hi == nullopt is unbounded.
struct Piece {
  Scalar lo;
  std::optional<Scalar> hi;
};

std::vector<Piece> pieces_of(const IntervalSet& s) {
  std::vector<Piece> out;
  for (const auto& iv : s.bounded()) out.push_back({iv.lo, iv.hi});
  if (s.tail()) out.push_back({*s.tail(), std::nullopt});
  return out;
}

bool hi_less(const std::optional<Scalar>& a, const std::optional<Scalar>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

std::vector<Scalar> sorted_unique(std::span<const Scalar> s) {
  std::vector<Scalar> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool member(const std::vector<Scalar>& sorted, const Scalar& t) {
  return std::binary_search(sorted.begin(), sorted.end(), t);
}

Scalar distance_to_points(const Scalar& x, const std::vector<Scalar>& pts) {
  const auto it = std::lower_bound(pts.begin(), pts.end(), x);
  std::optional<Scalar> best;
  if (it != pts.end()) best = *it - x;
  if (it != pts.begin()) {
    auto d = x - *std::prev(it);
    if (!best || d < *best) best = std::move(d);
  }
  return *best;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> bounded, std::optional<Scalar> tail)
    : tail_(std::move(tail)) {
  for (const auto& iv : bounded) {
    if (iv.hi < iv.lo) {
      throw DomainError("interval [" + iv.lo.str() + ", " + iv.hi.str() +
                        "] has hi < lo");
    }
  }
  std::sort(bounded.begin(), bounded.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& iv : bounded) {
    if (tail_ && iv.hi >= *tail_) {
      tail_ = std::min(*tail_, iv.lo);
      continue;
    }
    if (!bounded_.empty() && iv.lo <= bounded_.back().hi) {
      bounded_.back().hi = std::max(bounded_.back().hi, iv.hi);
    } else {
      bounded_.push_back(std::move(iv));
    }
  }
  // The tail may have grown downwards over earlier pieces.
  while (tail_ && !bounded_.empty() && bounded_.back().hi >= *tail_) {
    tail_ = std::min(*tail_, bounded_.back().lo);
    bounded_.pop_back();
  }
}

bool IntervalSet::contains(const Scalar& t) const {
  if (tail_ && t >= *tail_) return true;
  auto it = std::upper_bound(bounded_.begin(), bounded_.end(), t,
                             [](const Scalar& v, const Interval& iv) { return v < iv.lo; });
  return it != bounded_.begin() && std::prev(it)->contains(t);
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  const auto a = pieces_of(*this);
  const auto b = pieces_of(other);
  std::vector<Interval> bounded;
  std::optional<Scalar> tail;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const auto& lo = std::max(a[i].lo, b[j].lo);
    const auto& hi = hi_less(a[i].hi, b[j].hi) ? a[i].hi : b[j].hi;
    if (!hi) {
      tail = lo;
    } else if (lo <= *hi) {
      bounded.push_back({lo, *hi});
    }
    if (!a[i].hi && !b[j].hi) break;
    if (hi_less(a[i].hi, b[j].hi)) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(bounded), std::move(tail));
}

IntervalSet IntervalSet::clip(const Scalar& hi) const {
  return intersect(IntervalSet({{Scalar{0}, hi}}, std::nullopt));
}

IntervalSet Nebula::as_set() const { return IntervalSet(bounded, tail_start); }

const char* to_string(NebulaViolationKind kind) {
  switch (kind) {
    case NebulaViolationKind::zero_membership: return "zero_membership";
    case NebulaViolationKind::closed_interval: return "closed_interval";
    case NebulaViolationKind::width: return "width";
    case NebulaViolationKind::tail: return "tail";
    case NebulaViolationKind::disjoint: return "disjoint";
  }
  return "unknown";
}

NebulaReport validate_nebula(const Nebula& a) {
  NebulaReport report;
  auto flag = [&](NebulaViolationKind kind, std::string message) {
    report.valid = false;
    report.violations.push_back({kind, std::move(message)});
  };

  if (a.bounded.empty() || !a.bounded.front().lo.is_zero()) {
    flag(NebulaViolationKind::zero_membership,
         "first interval must start at 0");
  }
  const Scalar limit = dyadic(a.q);
  for (std::size_t i = 0; i < a.bounded.size(); ++i) {
    const auto& iv = a.bounded[i];
    const auto where = "interval " + std::to_string(i) + " [" + iv.lo.str() +
                       ", " + iv.hi.str() + "]";
    if (iv.hi < iv.lo) {
      flag(NebulaViolationKind::closed_interval, where + " has hi < lo");
      continue;
    }
    if (!(iv.width() < limit)) {
      flag(NebulaViolationKind::width,
           where + " has width >= 2^-" + std::to_string(a.q));
    }
  }
  if (!(a.tail_start > Scalar{static_cast<std::int64_t>(a.q)})) {
    flag(NebulaViolationKind::tail, "tail not in (q, ∞): starts at " +
                                        a.tail_start.str() + " with q = " +
                                        std::to_string(a.q));
  }
  for (std::size_t i = 0; i + 1 < a.bounded.size(); ++i) {
    if (!(a.bounded[i].hi < a.bounded[i + 1].lo)) {
      flag(NebulaViolationKind::disjoint,
           "intervals " + std::to_string(i) + " and " + std::to_string(i + 1) +
               " overlap or are out of order");
    }
  }
  if (!a.bounded.empty() && !(a.bounded.back().hi < a.tail_start)) {
    flag(NebulaViolationKind::disjoint, "last bounded interval meets the tail");
  }
  return report;
}

bool nebula_contains(const Nebula& a, const Scalar& t) {
  if (t >= a.tail_start) return true;
  return std::any_of(a.bounded.begin(), a.bounded.end(),
                     [&](const Interval& iv) { return iv.contains(t); });
}

Nebula cover(std::span<const Scalar> s_in, unsigned q) {
  const auto s = sorted_unique(s_in);
  if (s.empty() || !s.front().is_zero()) {
    throw DomainError("cover: the set must contain 0");
  }

  const std::int64_t cells = static_cast<std::int64_t>(q + 1) << (q + 1);
  const Scalar step = dyadic(q + 1);
  const Scalar window = dyadic(q + 3);

  std::vector<Scalar> cut{Scalar{0}};
  cut.reserve(static_cast<std::size_t>(cells) + 1);
  for (std::int64_t m = 1; m <= cells; ++m) {
    const Scalar c = step * Scalar{m};
    if (!member(s, c)) {
      cut.push_back(c);
      continue;
    }
    if (!member(s, c - window)) {
      cut.push_back(c - window);
      continue;
    }
    // Both preferred points lie in s; scan ever finer dyadic points of the
    // window. s is finite, so this ends.
    std::optional<Scalar> pick;
    for (unsigned e = q + 5; !pick; ++e) {
      const Scalar fine = dyadic(e);
      const std::int64_t span = std::int64_t{1} << (e - q - 2);  // 2*window / fine
      for (std::int64_t j = 0; j <= span && !pick; ++j) {
        Scalar cand = (c - window) + fine * Scalar{j};
        if (!member(s, cand)) pick = std::move(cand);
      }
    }
    cut.push_back(*pick);
  }

  Nebula out;
  out.q = q;
  for (std::size_t m = 0; m + 1 < cut.size(); ++m) {
    auto first = std::lower_bound(s.begin(), s.end(), cut[m]);
    auto last = std::upper_bound(s.begin(), s.end(), cut[m + 1]);
    if (first == last) continue;
    out.bounded.push_back({*first, *std::prev(last)});
  }
  const auto beyond = std::upper_bound(s.begin(), s.end(), cut.back());
  out.tail_start = beyond == s.end() ? cut.back() : *beyond;
  return out;
}

std::vector<Nebula> cover_family(std::span<const Scalar> s, unsigned q_max) {
  std::vector<Nebula> out;
  for (unsigned q = 0; q <= q_max; ++q) out.push_back(cover(s, q));
  return out;
}

IntersectionResult intersect(std::span<const Nebula> nebulae) {
  if (nebulae.empty()) throw DomainError("intersect: empty nebula list");
  IntersectionResult out;
  out.set = nebulae.front().as_set();
  unsigned q_min = nebulae.front().q;
  unsigned q_max = nebulae.front().q;
  for (const auto& a : nebulae.subspan(1)) {
    out.set = out.set.intersect(a.as_set());
    q_min = std::min(q_min, a.q);
    q_max = std::max(q_max, a.q);
  }

  const Scalar bound{static_cast<std::int64_t>(q_min) + 1};
  Scalar largest{0};
  for (const auto& p : pieces_of(out.set)) {
    if (p.lo >= bound) break;
    const Scalar hi = (!p.hi || *p.hi > bound) ? bound : *p.hi;
    if (hi - p.lo > largest) largest = hi - p.lo;
  }
  out.largest_low_component = largest;
  out.fine = largest < dyadic(q_max);
  return out;
}

MarginResult margin(const FiniteMetricSpace& m, const Nebula& a) {
  if (!validate_nebula(a).valid) {
    throw PreconditionError("margin: witness is not a valid q-nebula");
  }
  const auto values = range_of_metric(m);
  for (const auto& v : values) {
    if (!nebula_contains(a, v)) {
      throw PreconditionError("margin: metric value " + v.str() +
                              " lies outside the nebula");
    }
  }

  std::vector<Interval> kept{a.bounded.front()};
  for (std::size_t i = 1; i < a.bounded.size(); ++i) {
    const auto& iv = a.bounded[i];
    const auto it = std::lower_bound(values.begin(), values.end(), iv.lo);
    if (it != values.end() && *it <= iv.hi) kept.push_back(iv);
  }

  Scalar widest{0};
  for (const auto& iv : kept) widest = std::max(widest, iv.width());
  std::optional<Scalar> gap;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Scalar& next = i + 1 < kept.size() ? kept[i + 1].lo : a.tail_start;
    auto g = next - kept[i].hi;
    if (!gap || g < *gap) gap = std::move(g);
  }

  const Scalar q_value{static_cast<std::int64_t>(a.q)};
  Scalar eps = (dyadic(a.q) - widest) / Scalar{2};
  eps = std::min(eps, a.tail_start - q_value);
  eps = std::min(eps, *gap / Scalar{4});
  eps = eps / Scalar{2};

  Nebula fat;
  fat.q = a.q;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Scalar lo = i == 0 ? kept[i].lo : kept[i].lo - eps;
    fat.bounded.push_back({lo, kept[i].hi + eps});
  }
  fat.tail_start = a.tail_start - eps;
  return {std::move(eps), std::move(fat), std::move(*gap)};
}

std::vector<Scalar> range_of_metric(const FiniteMetricSpace& m) {
  std::set<Scalar> values{Scalar{0}};
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) values.insert(m(i, j));
  }
  return {values.begin(), values.end()};
}

std::optional<Scalar> gap_near_zero(const FiniteMetricSpace& m) {
  const auto values = range_of_metric(m);
  if (values.size() < 2) return std::nullopt;
  return values[1];
}

Scalar hausdorff_distance(const IntervalSet& set, std::span<const Scalar> points) {
  if (set.tail()) throw DomainError("hausdorff_distance: set must be bounded");
  if (set.empty() || points.empty()) {
    throw DomainError("hausdorff_distance: both sides must be nonempty");
  }
  const auto pts = sorted_unique(points);
  Scalar worst{0};

  // Within an interval the distance to a finite set peaks at an endpoint or
  // at a midpoint between consecutive points.
  for (const auto& iv : set.bounded()) {
    worst = std::max(worst, distance_to_points(iv.lo, pts));
    worst = std::max(worst, distance_to_points(iv.hi, pts));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Scalar mid = (pts[i] + pts[i + 1]) / Scalar{2};
      if (iv.contains(mid)) worst = std::max(worst, distance_to_points(mid, pts));
    }
  }

  for (const auto& p : pts) {
    std::optional<Scalar> best;
    for (const auto& iv : set.bounded()) {
      const Scalar d = iv.contains(p) ? Scalar{0}
                       : p < iv.lo    ? iv.lo - p
                                      : p - iv.hi;
      if (!best || d < *best) best = d;
    }
    worst = std::max(worst, *best);
  }
  return worst;
}

}  // namespace metric_forge
