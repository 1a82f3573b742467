#include "metric_forge/metric_space.hpp"

#include <algorithm>
#include <unordered_set>

#include "metric_forge/error.hpp"

namespace metric_forge {

namespace {

void require_distinct(const std::vector<std::string>& points) {
  std::unordered_set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) {
      throw DomainError("duplicate point label \"" + p + "\"");
    }
  }
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> points)
    : points_(std::move(points)),
      entries_(points_.size() * points_.size()) {
  require_distinct(points_);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> points,
                               const std::vector<std::vector<Scalar>>& rows)
    : DistanceMatrix(std::move(points)) {
  const auto n = points_.size();
  if (rows.size() != n) {
    throw ShapeError("matrix has " + std::to_string(rows.size()) +
                     " rows for " + std::to_string(n) + " points");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ShapeError("row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    std::copy(rows[i].begin(), rows[i].end(), entries_.begin() + i * n);
  }
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::diagonal: return "diagonal";
    case ViolationKind::symmetry: return "symmetry";
    case ViolationKind::positivity: return "positivity";
    case ViolationKind::triangle: return "triangle";
    case ViolationKind::ultrametric: return "ultrametric";
  }
  return "unknown";
}

ValidationReport validate_metric(const DistanceMatrix& m) {
  ValidationReport report;
  auto& out = report.violations;
  const auto n = m.size();

  bool symmetric = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.at(i, i).is_zero()) {
      out.push_back({ViolationKind::diagonal, {i}, m.at(i, i), Scalar{0}});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.at(i, j) != m.at(j, i)) {
        symmetric = false;
        out.push_back({ViolationKind::symmetry, {i, j}, m.at(i, j), m.at(j, i)});
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m.at(i, j).is_zero()) {
        out.push_back({ViolationKind::positivity, {i, j}, m.at(i, j), Scalar{0}});
      }
    }
  }

  // With a symmetric matrix dist(k,i) = dist(i,k), so i < k covers every
  // triangle up to reversal.
  mpq_class bound;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = symmetric ? i + 1 : 0; k < n; ++k) {
      if (k == i) continue;
      const mpq_class& lhs = m.at(i, k).value();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        bound = m.at(i, j).value() + m.at(j, k).value();
        if (lhs > bound) {
          out.push_back({ViolationKind::triangle, {i, j, k}, m.at(i, k),
                         Scalar::from_rational(bound)});
        }
      }
    }
  }

  report.is_metric = out.empty();
  if (!report.is_metric) return report;

  bool ultra = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const auto& hi = std::max(m.at(i, j), m.at(j, k));
        if (m.at(i, k) > hi) {
          ultra = false;
          out.push_back({ViolationKind::ultrametric, {i, j, k}, m.at(i, k), hi});
        }
      }
    }
  }
  report.is_ultrametric = ultra;
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(DistanceMatrix m) : m_(std::move(m)) {
  const auto report = validate_metric(m_);
  if (!report.is_metric) {
    const auto& v = report.violations.front();
    std::string msg = std::string("not a metric: ") + to_string(v.kind) +
                      " violation at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      msg += (i ? "," : "") + m_.points()[v.witness[i]];
    }
    msg += "), " + v.lhs.str() + " vs " + v.rhs.str();
    throw DomainError(msg);
  }
}

FiniteMetricSpace FiniteMetricSpace::assume_metric(DistanceMatrix m) {
  FiniteMetricSpace out;
  out.m_ = std::move(m);
  return out;
}

Scalar FiniteMetricSpace::diameter() const {
  Scalar best{0};
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if ((*this)(i, j) > best) best = (*this)(i, j);
    }
  }
  return best;
}

std::size_t FiniteMetricSpace::index_of(const std::string& label) const {
  const auto& pts = points();
  const auto it = std::find(pts.begin(), pts.end(), label);
  if (it == pts.end()) throw DomainError("unknown point \"" + label + "\"");
  return static_cast<std::size_t>(it - pts.begin());
}

FiniteMetricSpace FiniteMetricSpace::restrict(
    std::span<const std::size_t> indices) const {
  std::vector<std::string> labels;
  labels.reserve(indices.size());
  for (auto i : indices) {
    if (i >= size()) throw DomainError("restriction index out of range");
    labels.push_back(points()[i]);
  }
  DistanceMatrix sub(std::move(labels));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = 0; b < indices.size(); ++b) {
      sub.set(a, b, (*this)(indices[a], indices[b]));
    }
  }
  return assume_metric(std::move(sub));
}

Scalar sup_distance(const FiniteMetricSpace& d, const FiniteMetricSpace& e) {
  if (d.points() != e.points()) {
    throw DomainError("sup_distance: spaces have different point lists");
  }
  Scalar best{0};
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      auto diff = abs_diff(d(i, j), e(i, j));
      if (diff > best) best = std::move(diff);
    }
  }
  return best;
}

}  // namespace metric_forge
