#include "metric_forge/io.hpp"

#include <fstream>
#include <sstream>

#include "metric_forge/error.hpp"

namespace metric_forge::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(what + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

std::size_t index_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned()) throw DomainError(what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

Json exponent_json(const std::optional<unsigned>& e) {
  return e ? Json(*e) : Json(nullptr);
}

std::optional<unsigned> exponent_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_number_unsigned()) throw DomainError("certificate exponent must be null or a nonnegative integer");
  return j.get<unsigned>();
}

}  // namespace

Json to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j, const std::string& what) {
  if (!j.is_string()) {
    throw DomainError(what + ": rationals must be strings such as \"13/10\"");
  }
  const auto& text = j.get_ref<const std::string&>();
  if (!text.empty() && text.front() == '-') {
    throw DomainError(what + ": negative value " + text);
  }
  try {
    return Scalar::parse(text);
  } catch (const DomainError& e) {
    throw DomainError(what + ": " + e.what());
  }
}

Json to_json(const DistanceMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"points", m.points()}, {"dist", std::move(rows)}};
}

Json to_json(const FiniteMetricSpace& m) { return to_json(m.matrix()); }

DistanceMatrix distance_matrix_from_json(const Json& j) {
  const auto& pts = field(j, "points", "distance matrix");
  const auto& dist = field(j, "dist", "distance matrix");
  if (!pts.is_array()) throw DomainError("distance matrix: \"points\" must be an array");
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    if (!p.is_string()) throw DomainError("distance matrix: point labels must be strings");
    labels.push_back(p.get<std::string>());
  }
  if (!dist.is_array()) throw ShapeError("distance matrix: \"dist\" must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (!dist[i].is_array()) throw ShapeError("distance matrix: row " + std::to_string(i) + " is not an array");
    std::vector<Scalar> row;
    for (std::size_t k = 0; k < dist[i].size(); ++k) {
      row.push_back(scalar_from_json(
          dist[i][k], "dist[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    rows.push_back(std::move(row));
  }
  return DistanceMatrix(std::move(labels), rows);
}

FiniteMetricSpace metric_space_from_json(const Json& j) {
  auto m = distance_matrix_from_json(j);
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      if (m.at(a, b) != m.at(b, a)) {
        throw DomainError("distance matrix is not symmetric at (" + m.points()[a] +
                          "," + m.points()[b] + ")");
      }
    }
  }
  return FiniteMetricSpace(std::move(m));
}

Json to_json(const ValidationReport& r, const DistanceMatrix& m) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json witness = Json::array();
    for (auto i : v.witness) witness.push_back(m.points()[i]);
    violations.push_back(Json{{"kind", to_string(v.kind)},
                              {"witness", std::move(witness)},
                              {"lhs", to_json(v.lhs)},
                              {"rhs", to_json(v.rhs)}});
  }
  return Json{{"is_metric", r.is_metric},
              {"is_ultrametric", r.is_ultrametric},
              {"violations", std::move(violations)}};
}

Json to_json(const Nebula& a) {
  Json bounded = Json::array();
  for (const auto& iv : a.bounded) bounded.push_back(Json::array({to_json(iv.lo), to_json(iv.hi)}));
  return Json{{"q", a.q}, {"bounded", std::move(bounded)}, {"tail_start", to_json(a.tail_start)}};
}

Nebula nebula_from_json(const Json& j) {
  Nebula a;
  const auto& q = field(j, "q", "nebula");
  if (!q.is_number_unsigned()) throw DomainError("nebula: q must be a nonnegative integer");
  a.q = q.get<unsigned>();
  const auto& bounded = field(j, "bounded", "nebula");
  if (!bounded.is_array()) throw DomainError("nebula: \"bounded\" must be an array");
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    const auto& iv = bounded[i];
    if (!iv.is_array() || iv.size() != 2) {
      throw DomainError("nebula: interval " + std::to_string(i) + " must be [lo, hi]");
    }
    const auto where = "nebula interval " + std::to_string(i);
    a.bounded.push_back({scalar_from_json(iv[0], where), scalar_from_json(iv[1], where)});
  }
  a.tail_start = scalar_from_json(field(j, "tail_start", "nebula"), "nebula tail_start");
  return a;
}

Json to_json(const NebulaReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"kind", to_string(v.kind)}, {"message", v.message}});
  }
  return Json{{"valid", r.valid}, {"violations", std::move(violations)}};
}

Json to_json(const IntervalSet& s) {
  Json bounded = Json::array();
  for (const auto& iv : s.bounded()) bounded.push_back(Json::array({to_json(iv.lo), to_json(iv.hi)}));
  return Json{{"bounded", std::move(bounded)},
              {"tail_start", s.tail() ? to_json(*s.tail()) : Json(nullptr)}};
}

Json to_json(const MarginResult& m) {
  return Json{{"epsilon", to_json(m.epsilon)}, {"gap", to_json(m.gap)}, {"fattened", to_json(m.fattened)}};
}

std::vector<Scalar> values_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "values", "values") : j;
  if (!arr.is_array()) throw DomainError("values: expected an array of rationals");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(scalar_from_json(arr[i], "values[" + std::to_string(i) + "]"));
  }
  return out;
}

Json to_json(const PartitionPlan& p) {
  return Json{{"radius", to_json(p.radius)}, {"clusters", p.clusters}, {"reps", p.reps}};
}

PartitionPlan plan_from_json(const Json& j) {
  PartitionPlan p;
  p.radius = scalar_from_json(field(j, "radius", "plan"), "plan radius");
  for (const auto& c : field(j, "clusters", "plan")) {
    std::vector<std::size_t> members;
    for (const auto& m : c) members.push_back(index_from_json(m, "plan cluster"));
    p.clusters.push_back(std::move(members));
  }
  for (const auto& r : field(j, "reps", "plan")) p.reps.push_back(index_from_json(r, "plan rep"));
  return p;
}

Json to_json(const RangeCertificate& c) {
  return Json{{"l", c.l}, {"n", exponent_json(c.n)}, {"m", exponent_json(c.m)}};
}

Json to_json(const ApproximationResult& r) {
  Json certs = Json::array();
  for (const auto& pc : r.certificates) {
    certs.push_back(Json{{"i", pc.i}, {"j", pc.j}, {"l", pc.cert.l},
                         {"n", exponent_json(pc.cert.n)}, {"m", exponent_json(pc.cert.m)}});
  }
  return Json{{"eta", to_json(r.eta)},
              {"r", to_json(r.r)},
              {"plan", to_json(r.plan)},
              {"certificates", std::move(certs)},
              {"D", to_json(r.D)}};
}

ApproximationResult approximation_from_json(const Json& j) {
  ApproximationResult r;
  r.eta = scalar_from_json(field(j, "eta", "approximation"), "eta");
  r.r = scalar_from_json(field(j, "r", "approximation"), "r");
  r.plan = plan_from_json(field(j, "plan", "approximation"));
  for (const auto& c : field(j, "certificates", "approximation")) {
    const auto& l = field(c, "l", "certificate");
    if (!l.is_number_integer()) throw DomainError("certificate l must be an integer");
    r.certificates.push_back({index_from_json(field(c, "i", "certificate"), "certificate i"),
                              index_from_json(field(c, "j", "certificate"), "certificate j"),
                              {l.get<std::int64_t>(), exponent_from_json(field(c, "n", "certificate")),
                               exponent_from_json(field(c, "m", "certificate"))}});
  }
  r.D = metric_space_from_json(field(j, "D", "approximation"));
  return r;
}

Json to_json(const Embedding& e, const FiniteMetricSpace& pattern,
             const FiniteMetricSpace& host) {
  Json map = Json::object();
  for (std::size_t i = 0; i < e.mapping.size(); ++i) {
    map[pattern.points()[i]] = host.points()[e.mapping[i]];
  }
  return Json{{"exact", e.exact}, {"distortion", to_json(e.distortion)}, {"map", std::move(map)}};
}

Json to_json(const FrechetEmbedding& f, const FiniteMetricSpace& m) {
  Json coords = Json::array();
  for (std::size_t i = 0; i < f.coords.size(); ++i) {
    Json c = Json::array();
    for (const auto& v : f.coords[i]) c.push_back(to_json(v));
    coords.push_back(Json{{"point", m.points()[i]}, {"coords", std::move(c)}});
  }
  return Json{{"n", f.n}, {"coords", std::move(coords)}};
}

Json to_json(const FragilityReport& r) {
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(to_json(v));
  Json lost = Json::array();
  for (const auto& v : r.lost) lost.push_back(to_json(v));
  Json outside = Json::array();
  for (const auto& v : r.outside_range_set) outside.push_back(to_json(v));
  return Json{{"values", std::move(values)},
              {"epsilon", to_json(r.epsilon)},
              {"eta", to_json(r.eta)},
              {"r", to_json(r.r)},
              {"sup_distance", to_json(r.sup_distance)},
              {"max_value", to_json(r.max_value)},
              {"missed_interval", Json::array({to_json(r.missed.lo), to_json(r.missed.hi)})},
              {"missed_length", to_json(r.missed_length)},
              {"certificates_valid", r.certificates_valid},
              {"lost", std::move(lost)},
              {"outside_range_set", std::move(outside)},
              {"consistent", r.consistent()}};
}

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(source + ": malformed JSON: " + e.what() +
                      " (byte " + std::to_string(e.byte) + ")");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

}  // namespace metric_forge::io
