#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "metric_forge/scalar.hpp"

namespace metric_forge {

// A labeled square matrix of Scalars that has not been proven to be a
// metric. Readers, transforms and repairs produce these; validate_metric
// decides whether one is a metric.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // All-zero matrix over the given labels. Labels must be distinct.
  explicit DistanceMatrix(std::vector<std::string> points);

  // Throws ShapeError when rows are not square or do not match the labels.
  DistanceMatrix(std::vector<std::string> points,
                 const std::vector<std::vector<Scalar>>& rows);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }

  const Scalar& at(std::size_t i, std::size_t j) const {
    return entries_[i * points_.size() + j];
  }
  void set(std::size_t i, std::size_t j, Scalar v) {
    entries_[i * points_.size() + j] = std::move(v);
  }
  // Sets (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, const Scalar& v) {
    set(i, j, v);
    set(j, i, v);
  }

  friend bool operator==(const DistanceMatrix&,
                         const DistanceMatrix&) = default;

 private:
  std::vector<std::string> points_;
  std::vector<Scalar> entries_;
};

enum class ViolationKind { diagonal, symmetry, positivity, triangle, ultrametric };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // diagonal: {i}; symmetry/positivity: {i, j}; triangle/ultrametric:
  // {i, j, k} meaning dist(i,k) exceeds the bound through j.
  std::vector<std::size_t> witness;
  Scalar lhs;
  Scalar rhs;
};

struct ValidationReport {
  bool is_metric = false;
  bool is_ultrametric = false;
  std::vector<Violation> violations;
};

// Exhaustive O(n^3) check of the metric axioms. The ultrametric inequality is
// only examined when the metric axioms hold.
ValidationReport validate_metric(const DistanceMatrix& m);

// A DistanceMatrix known to satisfy the metric axioms. Immutable.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  // Validates; throws DomainError listing the first violation otherwise.
  explicit FiniteMetricSpace(DistanceMatrix m);

  // For constructions whose output is a metric by theorem (amalgamation,
  // subadditive transforms, shortest-path closure). Skips the O(n^3) check.
  static FiniteMetricSpace assume_metric(DistanceMatrix m);

  std::size_t size() const { return m_.size(); }
  const std::vector<std::string>& points() const { return m_.points(); }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return m_.at(i, j);
  }
  const DistanceMatrix& matrix() const { return m_; }

  Scalar diameter() const;
  // Index of a label; throws DomainError when absent.
  std::size_t index_of(const std::string& label) const;

  // Subspace on the given indices, in the given order.
  FiniteMetricSpace restrict(std::span<const std::size_t> indices) const;

  friend bool operator==(const FiniteMetricSpace&,
                         const FiniteMetricSpace&) = default;

 private:
  DistanceMatrix m_;
};

// max |d - e| over all pairs. Both spaces must carry the same point list in
// the same order (DomainError otherwise).
Scalar sup_distance(const FiniteMetricSpace& d, const FiniteMetricSpace& e);

}  // namespace metric_forge
