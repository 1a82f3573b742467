#include "metric_forge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "metric_forge/construct.hpp"
#include "metric_forge/error.hpp"
#include "metric_forge/io.hpp"
#include "metric_forge/svg.hpp"

namespace metric_forge::cli {

namespace {

using io::Json;

struct Context {
  std::ostream& out;
  std::string output_path;

  void emit_text(const std::string& text) const {
    if (output_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw DomainError("cannot write " + output_path);
    file << text;
  }
  void emit(const Json& j) const { emit_text(j.dump(2) + "\n"); }
};

Scalar parse_scalar(const std::string& text, const std::string& flag) {
  try {
    return Scalar::parse(text);
  } catch (const DomainError& e) {
    throw DomainError(flag + ": " + e.what());
  }
}

std::vector<Scalar> parse_list(const std::vector<std::string>& items) {
  std::vector<Scalar> out;
  for (const auto& item : items) out.push_back(parse_scalar(item, "--values"));
  return out;
}

// Reports go to stdout even when -o is given, so scripts always see the
// verdict.
int verdict(const Context& ctx, const Json& report, bool ok) {
  ctx.emit(report);
  if (!ok && !ctx.output_path.empty()) ctx.out << report.dump(2) << "\n";
  return ok ? kOk : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metric-forge: exact constructions on finite metric spaces", "metric-forge"};
  app.require_subcommand(1);

  std::string output_path;
  std::function<int(const Context&)> action;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output_path, "Write the artifact here instead of stdout");
  };

  // validate
  std::string space_path;
  auto* validate = app.add_subcommand("validate", "Check the metric and ultrametric axioms");
  validate->add_option("space", space_path, "Distance-matrix JSON")->required();
  add_output(validate);
  validate->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto m = io::distance_matrix_from_json(io::read_file(space_path));
      const auto report = validate_metric(m);
      return verdict(ctx, io::to_json(report, m), report.is_metric);
    };
  });

  // approximate
  std::string epsilon_text;
  std::string r_text;
  auto* approx = app.add_subcommand("approximate", "Approximate by a metric with range in E(eps/5, r)");
  approx->add_option("space", space_path, "Distance-matrix JSON")->required();
  approx->add_option("--epsilon", epsilon_text, "Target sup distance P/Q")->required();
  approx->add_option("--r", r_text, "Override r (default min{1/2, eps/10})");
  add_output(approx);
  approx->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto m = io::metric_space_from_json(io::read_file(space_path));
      std::optional<Scalar> r;
      if (!r_text.empty()) r = parse_scalar(r_text, "--r");
      ctx.emit(io::to_json(approximate(m, parse_scalar(epsilon_text, "--epsilon"), r)));
      return kOk;
    };
  });

  // nebula
  auto* nebula = app.add_subcommand("nebula", "q-nebula tools");
  nebula->require_subcommand(1);
  std::string values_path;
  std::string nebula_path;
  unsigned q = 0;
  auto* cover_cmd = nebula->add_subcommand("cover", "Cover a finite set containing 0 by a q-nebula");
  cover_cmd->add_option("values", values_path, "JSON array of rationals")->required();
  cover_cmd->add_option("--q", q, "Resolution q")->required();
  add_output(cover_cmd);
  cover_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto values = io::values_from_json(io::read_file(values_path));
      ctx.emit(io::to_json(cover(values, q)));
      return kOk;
    };
  });
  auto* check_cmd = nebula->add_subcommand("check", "Validate a q-nebula");
  check_cmd->add_option("nebula", nebula_path, "Nebula JSON")->required();
  add_output(check_cmd);
  check_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto report = validate_nebula(io::nebula_from_json(io::read_file(nebula_path)));
      return verdict(ctx, io::to_json(report), report.valid);
    };
  });
  auto* margin_cmd = nebula->add_subcommand("margin", "Openness margin of a metric inside a nebula");
  margin_cmd->add_option("space", space_path, "Distance-matrix JSON")->required();
  margin_cmd->add_option("nebula", nebula_path, "Nebula JSON")->required();
  add_output(margin_cmd);
  margin_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto m = io::metric_space_from_json(io::read_file(space_path));
      const auto a = io::nebula_from_json(io::read_file(nebula_path));
      ctx.emit(io::to_json(margin(m, a)));
      return kOk;
    };
  });

  // embed
  auto* embed = app.add_subcommand("embed", "Embeddings");
  embed->require_subcommand(1);
  unsigned n = 0;
  auto* frechet_cmd = embed->add_subcommand("frechet", "Frechet embedding into [0,n]^n");
  frechet_cmd->add_option("space", space_path, "Distance-matrix JSON")->required();
  frechet_cmd->add_option("--n", n, "Class C_n parameter")->required();
  add_output(frechet_cmd);
  frechet_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto m = io::metric_space_from_json(io::read_file(space_path));
      ctx.emit(io::to_json(frechet_embed(m, n), m));
      return kOk;
    };
  });
  std::string pattern_path;
  std::string host_path;
  std::string distortion_text = "0";
  std::size_t cap = kDefaultSearchCap;
  auto* search_cmd = embed->add_subcommand("search", "Search for an isometric embedding");
  search_cmd->add_option("pattern", pattern_path, "Pattern distance-matrix JSON")->required();
  search_cmd->add_option("host", host_path, "Host distance-matrix JSON")->required();
  search_cmd->add_option("--distortion", distortion_text, "Allowed additive error P/Q");
  search_cmd->add_option("--cap", cap, "Refuse patterns with more points");
  add_output(search_cmd);
  search_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto pattern = io::metric_space_from_json(io::read_file(pattern_path));
      const auto host = io::metric_space_from_json(io::read_file(host_path));
      const auto found = find_isometric_embedding(
          pattern, host, parse_scalar(distortion_text, "--distortion"), cap);
      if (!found) return verdict(ctx, Json{{"found", false}}, false);
      Json j = io::to_json(*found, pattern, host);
      j["found"] = true;
      ctx.emit(j);
      return kOk;
    };
  });

  // universal
  auto* universal = app.add_subcommand("universal", "Universal metric constructions");
  universal->require_subcommand(1);
  std::vector<std::string> value_items;
  auto* pairs_cmd = universal->add_subcommand("pairs", "T(S)-universal metric on pairs a_i, b_i");
  pairs_cmd->add_option("--values", value_items, "Comma-separated positive rationals")
      ->required()
      ->delimiter(',');
  add_output(pairs_cmd);
  pairs_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      ctx.emit(io::to_json(build_pair_universal(parse_list(value_items))));
      return kOk;
    };
  });
  std::string delta_text;
  unsigned copies = 1;
  auto* funiv_cmd = universal->add_subcommand("funiv", "Finite C_n-universal approximant");
  funiv_cmd->add_option("--n", n, "Class C_n parameter")->required();
  funiv_cmd->add_option("--delta", delta_text, "Net spacing n/2^t")->required();
  funiv_cmd->add_option("--copies", copies, "Number of pieces");
  add_output(funiv_cmd);
  funiv_cmd->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto built = build_funiv_approx(n, parse_scalar(delta_text, "--delta"), copies);
      ctx.emit(Json{{"n", built.net.n},
                    {"delta", io::to_json(built.net.delta)},
                    {"copies", built.copies},
                    {"piece_size", built.net.points.size()},
                    {"space", io::to_json(built.space)}});
      return kOk;
    };
  });

  // fragility
  auto* fragility = app.add_subcommand("fragility", "Approximate a pair-universal metric and report what breaks");
  fragility->add_option("--values", value_items, "Comma-separated positive rationals")
      ->required()
      ->delimiter(',');
  fragility->add_option("--epsilon", epsilon_text, "Approximation budget P/Q")->required();
  add_output(fragility);
  fragility->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto report = fragility_experiment(parse_list(value_items),
                                               parse_scalar(epsilon_text, "--epsilon"));
      return verdict(ctx, io::to_json(report), report.consistent());
    };
  });

  // plot
  auto* plot = app.add_subcommand("plot", "Static SVG figures");
  plot->require_subcommand(1);
  auto* plot_range = plot->add_subcommand("range", "Number line of a metric's range");
  plot_range->add_option("space", space_path, "Distance-matrix JSON")->required();
  plot_range->add_option("--nebula", nebula_path, "Nebula JSON to overlay");
  add_output(plot_range);
  plot_range->callback([&] {
    action = [&](const Context& ctx) -> int {
      const auto m = io::metric_space_from_json(io::read_file(space_path));
      std::optional<Nebula> a;
      if (!nebula_path.empty()) a = io::nebula_from_json(io::read_file(nebula_path));
      ctx.emit_text(svg::render_range(range_of_metric(m), a));
      return kOk;
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Generators");
  gen->require_subcommand(1);
  std::size_t points = 0;
  std::uint64_t seed = 0;
  std::string max_text = "10";
  auto* gen_random = gen->add_subcommand("random", "Seeded random metric");
  gen_random->add_option("--n", points, "Number of points")->required();
  gen_random->add_option("--seed", seed, "RNG seed")->required();
  gen_random->add_option("--max", max_text, "Largest raw weight P/Q");
  add_output(gen_random);
  gen_random->callback([&] {
    action = [&](const Context& ctx) -> int {
      ctx.emit(io::to_json(random_metric(points, parse_scalar(max_text, "--max"), seed)));
      return kOk;
    };
  });
  unsigned k = 0;
  auto* gen_cantor = gen->add_subcommand("cantor", "Cantor ultrametric on {0,1}^k");
  gen_cantor->add_option("--k", k, "Word length")->required();
  add_output(gen_cantor);
  gen_cantor->callback([&] {
    action = [&](const Context& ctx) -> int {
      ctx.emit(io::to_json(cantor_approx(k)));
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "metric-forge: " << e.what() << "\n";
    return kUsageError;
  }

  if (!action) {
    err << "metric-forge: no command given\n";
    return kUsageError;
  }
  try {
    return action(Context{out, output_path});
  } catch (const Error& e) {
    err << "metric-forge: " << e.what() << "\n";
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "metric-forge: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace metric_forge::cli
