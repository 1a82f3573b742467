#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "metric_forge/approximate.hpp"
#include "metric_forge/nebula.hpp"
#include "metric_forge/universal.hpp"

// JSON wire formats. Every rational travels as a "p/q" or integer string.
namespace metric_forge::io {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& what);

// {"points": [...], "dist": [[...], ...]}
Json to_json(const DistanceMatrix& m);
Json to_json(const FiniteMetricSpace& m);

// Shape and entries only: labels distinct, matrix square, entries
// nonnegative rationals. Throws DomainError / ShapeError.
DistanceMatrix distance_matrix_from_json(const Json& j);
// Additionally rejects asymmetric input and anything failing validate_metric.
FiniteMetricSpace metric_space_from_json(const Json& j);

Json to_json(const ValidationReport& r, const DistanceMatrix& m);

// {"q": 1, "bounded": [["0","0"], ...], "tail_start": "2"}
Json to_json(const Nebula& a);
Nebula nebula_from_json(const Json& j);
Json to_json(const NebulaReport& r);
Json to_json(const IntervalSet& s);
Json to_json(const MarginResult& m);

// A JSON array of rationals, or {"values": [...]}.
std::vector<Scalar> values_from_json(const Json& j);

Json to_json(const PartitionPlan& p);
PartitionPlan plan_from_json(const Json& j);
Json to_json(const RangeCertificate& c);
Json to_json(const ApproximationResult& r);
ApproximationResult approximation_from_json(const Json& j);

// {"exact": true, "distortion": "0", "map": {"p1": "a0", ...}}
Json to_json(const Embedding& e, const FiniteMetricSpace& pattern,
             const FiniteMetricSpace& host);
Json to_json(const FrechetEmbedding& f, const FiniteMetricSpace& m);
Json to_json(const FragilityReport& r);

// Parses text; throws DomainError carrying the parser's position on
// malformed JSON.
Json parse(const std::string& text, const std::string& source);
Json read_file(const std::string& path);

}  // namespace metric_forge::io
