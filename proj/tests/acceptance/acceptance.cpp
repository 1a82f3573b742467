// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "metric_forge/approximate.hpp"
#include "metric_forge/cli.hpp"
#include "metric_forge/nebula.hpp"
#include "metric_forge/transform.hpp"
#include "metric_forge/universal.hpp"
#include "support.hpp"

using namespace metric_forge;
using mf_test::Rng;
using mf_test::S;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

// Approximations from criterion 1 with at most 16 points, reused by 2.
std::vector<FiniteMetricSpace> small_approximations;

Verdict density() {
  Verdict v;
  const std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
  const std::vector<Scalar> grid{S("1/10"), S("1/2"), S("1"), S("5")};
  const auto start = std::chrono::steady_clock::now();
  std::size_t runs = 0, certs = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto n = sizes[seed % sizes.size()];
    const auto m = random_metric(n, S("10"), 1000 + seed);
    for (const auto& eps : grid) {
      const auto r = approximate(m, eps);
      ++runs;
      const auto tag = "seed " + std::to_string(seed) + " eps " + eps.str();
      v.check(validate_metric(r.D.matrix()).is_metric, tag + ": D not a metric");
      v.check(sup_distance(r.D, m) <= eps, tag + ": sup distance above epsilon");
      v.check(r.eta == eps / Scalar{5}, tag + ": eta");
      v.check(r.r == std::min(S("1/2"), eps / Scalar{10}), tag + ": r");
      v.check(r.certificates.size() == n * (n - 1) / 2, tag + ": certificate count");
      const auto p = r.params();
      for (const auto& c : r.certificates) {
        ++certs;
        const auto& value = r.D(c.i, c.j);
        v.check(c.cert.value(p) == value, tag + ": certificate does not reconstruct");
        v.check(range_membership(value, p).has_value(), tag + ": range_membership disagrees");
      }
      if (n <= 16) small_approximations.push_back(r.D);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.check(secs < 60.0, "runtime over 60 s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu approximations, %zu certificates, %.2f s", runs, certs, secs);
  v.detail = buf;
  return v;
}

// A subadditive perturbation f with f(s) - s in (-epsilon, epsilon) on
// [0, top]: scaled upward bump, truncation just below the top, or both.
Transform perturbation(Rng& rng, const Scalar& epsilon, const Scalar& top) {
  const auto c = rng.positive_rational(4, 3);
  const auto t = epsilon / c * Scalar(rng.between(0, 49), 100);
  const auto bump = Transform::affine_capped(t.value(), c);
  const auto drop = epsilon * Scalar(rng.between(0, 49), 100);
  const auto cut = Transform::truncate(top > drop ? top - drop : top);
  switch (rng.below(3)) {
    case 0: return bump;
    case 1: return cut;
    default: return Transform::compose(cut, bump);
  }
}

Verdict openness() {
  Verdict v;
  Rng rng(2024);
  std::size_t spaces = 0, checks = 0;
  for (const auto& d : small_approximations) {
    ++spaces;
    const auto range = range_of_metric(d);
    for (unsigned q = 0; q <= 8; ++q) {
      const auto a = cover(range, q);
      const auto tag = "space " + std::to_string(spaces) + " q " + std::to_string(q);
      v.check(validate_nebula(a).valid, tag + ": cover invalid");
      for (const auto& s : range) v.check(nebula_contains(a, s), tag + ": value outside cover");
      const auto mr = margin(d, a);
      v.check(mr.epsilon > Scalar{0}, tag + ": margin not positive");
      v.check(validate_nebula(mr.fattened).valid, tag + ": fattened nebula invalid");
      for (int k = 0; k < 100; ++k) {
        const auto f = perturbation(rng, mr.epsilon, range.back());
        // The values of f(d) are f applied to range(d).
        for (const auto& s : range) {
          const auto e = f.apply(s);
          ++checks;
          v.check(abs_diff(e, s) < mr.epsilon, tag + ": perturbation too large");
          v.check(nebula_contains(mr.fattened, e), tag + ": perturbed value escaped " + f.describe());
        }
      }
    }
  }
  v.detail = std::to_string(spaces) + " spaces x 9 q, " + std::to_string(checks) + " perturbed values";
  return v;
}

Verdict quantization() {
  Verdict v;
  Rng rng(99);
  for (int draw = 0; draw < 1000; ++draw) {
    const auto m = random_metric(static_cast<std::size_t>(rng.between(2, 12)),
                                 rng.positive_rational(20, 3), rng.below(1u << 30));
    const auto eta = rng.positive_rational(7, 9);
    const auto e = quantize_discrete(m, eta);
    const auto tag = "draw " + std::to_string(draw);
    v.check(sup_distance(m, e) <= eta, tag + ": sup distance above eta");
    v.check(validate_metric(e.matrix()).is_metric, tag + ": not a metric");
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) v.check(e(i, j) >= eta, tag + ": value below eta");
  }
  for (int i = 0; i < 100000; ++i) {
    const auto x = rng.rational(1000, 97);
    const auto y = rng.rational(1000, 89);
    const auto eta = rng.positive_rational(50, 31);
    v.check(ceil_ratio(x + y, eta) <= ceil_ratio(x, eta) + ceil_ratio(y, eta),
            "ceiling subadditivity at " + x.str() + ", " + y.str());
  }
  v.detail = "1000 quantizations, 100000 ceiling pairs";
  return v;
}

Transform random_violator(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return Transform::power(static_cast<unsigned>(rng.between(2, 5)));
    case 1: return Transform::affine_capped(-mpq_class(rng.between(1, 9), 10), rng.positive_rational(5, 3));
    case 2: {
      // Gaps wider than the smallest target break subadditivity.
      const auto a = rng.positive_rational(5, 4);
      return Transform::round_up_to_set({a, a * Scalar{3}, a * Scalar{7}});
    }
    default:
      return Transform::round_up_geometric(rng.positive_rational(5, 2),
                                           Scalar(rng.between(1, 9), 10));
  }
}

Verdict subadditive_theorem() {
  Verdict v;
  Rng rng(555);
  for (int i = 0; i < 500; ++i) {
    const auto m = random_metric(static_cast<std::size_t>(rng.between(2, 10)), S("8"),
                                 rng.below(1u << 30));
    const auto f = mf_test::random_subadditive(rng);
    v.check(f.is_subadditive(), "family member not subadditive: " + f.describe());
    v.check(validate_metric(transform_metric(m, f)).is_metric, "metricity lost under " + f.describe());
  }
  std::size_t witnesses = 0;
  for (int i = 0; i < 500; ++i) {
    const auto f = random_violator(rng);
    const auto w = f.violation_witness();
    if (!w) {
      v.check(f.is_subadditive(), "no witness for " + f.describe());
      continue;
    }
    ++witnesses;
    const auto c = subadditivity_counterexample(f, w->first, w->second);
    v.check(!validate_metric(transform_metric(c, f)).is_metric,
            "counterexample survives " + f.describe());
  }
  v.check(witnesses > 0, "no violation witnesses produced");
  v.detail = "500 metric-preservation runs, " + std::to_string(witnesses) + " counterexamples";
  return v;
}

Verdict nebula_family() {
  Verdict v;
  Rng rng(606);
  constexpr unsigned kQ = 6;
  Scalar worst{0};
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = mf_test::random_value_set(rng, 200);
    const auto family = cover_family(s, kQ);
    const auto tag = "trial " + std::to_string(trial);
    for (const auto& a : family) v.check(validate_nebula(a).valid, tag + ": member invalid");
    const auto clipped = intersect(family).set.clip(Scalar{kQ});
    std::vector<Scalar> low;
    for (const auto& x : s)
      if (x <= Scalar{kQ}) low.push_back(x);
    const auto h = hausdorff_distance(clipped, low);
    worst = std::max(worst, h);
    v.check(h <= dyadic(kQ), tag + ": Hausdorff distance " + h.str());
  }
  v.detail = "100 sets, worst Hausdorff distance " + worst.str() + " (bound " + dyadic(kQ).str() + ")";
  return v;
}

Verdict frechet() {
  Verdict v;
  Rng rng(707);
  std::size_t pairs = 0;
  for (int draw = 0; draw < 500; ++draw) {
    const auto n = static_cast<unsigned>(rng.between(1, 7));
    const auto m = mf_test::random_cn_member(rng, n);
    v.check(class_Cn_check(m, n), "generator left C_n");
    const auto f = frechet_embed(m, n);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        ++pairs;
        v.check(linf_distance(f.coords[i], f.coords[j]) == m(i, j),
                "distortion at draw " + std::to_string(draw));
      }
  }
  v.detail = "500 draws, " + std::to_string(pairs) + " pairs, zero distortion";
  return v;
}

Verdict oracle_agreement() {
  Verdict v;
  Rng rng(808);
  std::size_t cases = 0, found = 0, none = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto host_size = static_cast<std::size_t>(rng.between(1, 8));
    // Small value pools make coincidences, and therefore embeddings, common.
    const auto host = metric_repair([&] {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < host_size; ++i) labels.push_back("h" + std::to_string(i));
      DistanceMatrix w(labels);
      for (std::size_t i = 0; i < host_size; ++i)
        for (std::size_t j = i + 1; j < host_size; ++j)
          w.set_symmetric(i, j, Scalar(rng.between(2, 4), 2));
      return w;
    }());
    const auto k = static_cast<std::size_t>(rng.between(1, 4));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("p" + std::to_string(i));
    DistanceMatrix w(labels);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) w.set_symmetric(i, j, Scalar(rng.between(2, 4), 2));
    const auto pattern = metric_repair(w);

    const auto distortion = rng.below(4) == 0 ? S("1/2") : Scalar{0};
    const auto search = find_isometric_embedding(pattern, host, distortion);
    const bool brute = mf_test::brute_force_embeds(pattern, host, distortion);
    ++cases;
    (brute ? found : none) += 1;
    v.check(search.has_value() == brute, "verdict mismatch at trial " + std::to_string(trial));
    if (search) {
      v.check(measure_embedding(pattern, host, search->mapping).distortion <= distortion,
              "returned map exceeds distortion");
    }
  }
  v.check(cases >= 200, "fewer than 200 cases");
  v.check(found > 0 && none > 0, "verdicts not mixed");
  v.detail = std::to_string(cases) + " cases, " + std::to_string(found) + " embeddings, " +
             std::to_string(none) + " NONE";
  return v;
}

Verdict pair_fragility() {
  Verdict v;
  std::vector<Scalar> values;
  for (int k = 1; k <= 32; ++k) values.push_back(Scalar(k, 8));
  const auto rep = fragility_experiment(values, S("1/2"));
  v.check(rep.sup_distance <= S("1/2"), "sup distance " + rep.sup_distance.str());
  v.check(rep.missed_length >= S("1/20"), "missed interval too short");
  v.check(rep.missed.hi <= rep.max_value, "missed interval outside [0, max]");
  // Oracle: enumerate range(D) and confirm the open interval is empty.
  for (const auto& x : range_of_metric(rep.approximation.D)) {
    v.check(!(rep.missed.lo < x && x < rep.missed.hi), "range value inside missed interval");
  }
  const auto p = rep.approximation.params();
  for (const auto& c : rep.approximation.certificates) {
    v.check(range_membership(rep.approximation.D(c.i, c.j), p).has_value(),
            "value outside E");
  }
  v.check(!rep.lost.empty(), "no value lost exact embeddability");
  for (const auto& s : rep.outside_range_set) {
    v.check(std::find(rep.lost.begin(), rep.lost.end(), s) != rep.lost.end(),
            s.str() + " outside E but still embeds");
  }
  v.detail = "sup " + rep.sup_distance.str() + ", missed (" + rep.missed.lo.str() + ", " +
             rep.missed.hi.str() + ") of length " + rep.missed_length.str() + ", " +
             std::to_string(rep.lost.size()) + " of 32 values lost";
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs every pipeline in a fresh directory and returns stdout, exit codes and
// artifact bytes concatenated.
std::string run_pipelines(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string transcript;
  auto step = [&](std::vector<std::string> args, const std::string& capture = "") {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (!capture.empty()) std::ofstream(dir / capture, std::ios::binary) << out.str();
    transcript += std::to_string(code) + "\n" + out.str();
  };
  const auto p = [&](const char* name) { return (dir / name).string(); };

  step({"gen", "random", "--n", "12", "--seed", "42"}, "space.json");
  step({"gen", "cantor", "--k", "3"}, "cantor.json");
  step({"validate", p("space.json")});
  step({"validate", p("cantor.json")});
  step({"approximate", p("space.json"), "--epsilon", "1/2", "-o", p("approx.json")});
  step({"approximate", p("space.json"), "--epsilon", "1", "--r", "1/20"});
  std::ofstream(dir / "values.json") << R"(["0","3/10","17/10","5/2","13/3"])";
  step({"nebula", "cover", p("values.json"), "--q", "2"}, "nebula.json");
  step({"nebula", "check", p("nebula.json")});
  step({"nebula", "margin", p("cantor.json"), p("nebula.json")});
  step({"nebula", "cover", p("values.json"), "--q", "0"}, "nebula0.json");
  step({"embed", "frechet", p("cantor.json"), "--n", "8"});
  step({"universal", "pairs", "--values", "1/2,3,5/4"}, "pairs.json");
  step({"embed", "search", p("cantor.json"), p("pairs.json")});
  step({"universal", "funiv", "--n", "2", "--delta", "1/2", "--copies", "2"});
  step({"fragility", "--values", "1/8,1/4,3/8,1/2,5/8,3/4,7/8,1", "--epsilon", "1/2"});
  step({"plot", "range", p("space.json"), "--nebula", p("nebula0.json"), "-o", p("range.svg")});

  for (const auto& entry : std::set<fs::path>(fs::directory_iterator(dir), fs::directory_iterator())) {
    transcript += entry.filename().string() + "\n" + slurp(entry);
  }
  return transcript;
}

Verdict determinism() {
  Verdict v;
  const auto base = fs::temp_directory_path() / "metric_forge_acceptance";
  const auto first = run_pipelines(base / "run");
  const auto second = run_pipelines(base / "run");
  fs::remove_all(base);
  v.check(!first.empty(), "empty transcript");
  v.check(first == second, "reruns differ");
  v.detail = "16 commands, " + std::to_string(first.size()) + " bytes compared";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 density", density},
      {"2 openness", openness},
      {"3 quantization", quantization},
      {"4 subadditive theorem", subadditive_theorem},
      {"5 nebula family", nebula_family},
      {"6 frechet", frechet},
      {"7 embedding oracle", oracle_agreement},
      {"8 pair-universal fragility", pair_fragility},
      {"9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.first_failure = std::string("exception: ") + e.what();
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail;
    if (!v.pass) std::cout << " [" << v.first_failure << "]";
    std::cout << std::endl;
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
