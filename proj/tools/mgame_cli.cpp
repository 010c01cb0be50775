// mgame: command-line front end for the multi-game engine.
#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgame/error.hpp"
#include "mgame/game.hpp"
#include "mgame/io.hpp"
#include "mgame/mixed.hpp"
#include "mgame/multigame.hpp"
#include "mgame/regularity.hpp"
#include "mgame/social_dg.hpp"
#include "mgame/svg.hpp"
#include "mgame/tournament.hpp"

namespace {

using mgame::ErrorKind;
using mgame::Rational;
using mgame::io::ordered_json;

constexpr const char* kVersion = "1.0.0";

struct Output {
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
    } else {
      mgame::io::write_text_file(path, text);
    }
  }
  void emit(const ordered_json& value) const { emit(mgame::io::dump(value)); }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

Rational rational_arg(const std::string& text) { return mgame::parse_rational(text); }

// Game for ne / mixed: a plain game, a DG at given weights, or a multi-game
// with a weight file.
struct GameSource {
  std::string game_path;
  std::string dg_path;
  std::string multigame_path;
  std::string weights_path;
  std::string lambda;
  std::string gamma;

  void attach(CLI::App* cmd) {
    cmd->add_option("--game", game_path, "normal-form game JSON");
    cmd->add_option("--dg", dg_path, "double game JSON (with --lambda, --gamma)");
    cmd->add_option("--multigame", multigame_path, "multi-game JSON (with --weights)");
    cmd->add_option("--weights", weights_path, "weight vector JSON for --multigame");
    cmd->add_option("--lambda", lambda, "player 1 weight on the second game");
    cmd->add_option("--gamma", gamma, "player 2 weight on the second game");
  }

  mgame::NormalFormGame load() const {
    const int given = !game_path.empty() + !dg_path.empty() + !multigame_path.empty();
    if (given != 1) mgame::fail(ErrorKind::kInvalidInput, "give exactly one of --game, --dg, --multigame");
    if (dg_path.empty() && (!lambda.empty() || !gamma.empty())) {
      mgame::fail(ErrorKind::kInvalidInput, "--lambda and --gamma only apply to --dg");
    }
    if (multigame_path.empty() && !weights_path.empty()) {
      mgame::fail(ErrorKind::kInvalidInput, "--weights only applies to --multigame");
    }
    if (!game_path.empty()) return mgame::io::game_from_json(mgame::io::read_json_file(game_path));
    if (!dg_path.empty()) {
      if (lambda.empty() || gamma.empty()) mgame::fail(ErrorKind::kInvalidInput, "--dg needs --lambda and --gamma");
      auto dg = mgame::io::double_game_from_json(mgame::io::read_json_file(dg_path));
      const Rational l = rational_arg(lambda), g = rational_arg(gamma);
      if (!mgame::in_unit_interval(l) || !mgame::in_unit_interval(g)) {
        mgame::fail(ErrorKind::kValidation, "weights must lie in [0, 1]");
      }
      return mgame::instantiate(dg, l, g);
    }
    if (weights_path.empty()) mgame::fail(ErrorKind::kInvalidInput, "--multigame needs --weights");
    auto mg = mgame::io::multigame_from_json(mgame::io::read_json_file(multigame_path));
    return mgame::compose(mg, mgame::io::weights_from_json(mgame::io::read_json_file(weights_path)));
  }
};

struct SocialOptions {
  std::string T = "5", R = "3", P = "1", S = "0";
  std::string M1 = "5/2", M2 = "5/2", M1p = "0", M2p = "0";
  bool relax_mprime = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--T", T, "temptation")->capture_default_str();
    cmd->add_option("--R", R, "reward")->capture_default_str();
    cmd->add_option("--P", P, "punishment")->capture_default_str();
    cmd->add_option("--S", S, "sucker's payoff")->capture_default_str();
    cmd->add_option("--M1", M1, "player 1 cooperation reward")->capture_default_str();
    cmd->add_option("--M2", M2, "player 2 cooperation reward")->capture_default_str();
    cmd->add_option("--M1p", M1p, "player 1 defection value")->capture_default_str();
    cmd->add_option("--M2p", M2p, "player 2 defection value")->capture_default_str();
    cmd->add_flag("--relax-mprime", relax_mprime, "allow defection values other than S");
  }

  mgame::SocialParams params() const {
    return {rational_arg(T),  rational_arg(R),  rational_arg(P),   rational_arg(S),
            rational_arg(M1), rational_arg(M2), rational_arg(M1p), rational_arg(M2p)};
  }
};

mgame::GridVariant grid_variant(const std::string& name) {
  if (name == "I") return mgame::GridVariant::kI;
  if (name == "II") return mgame::GridVariant::kII;
  mgame::fail(ErrorKind::kInvalidInput, "unknown grid \"" + name + "\" (expected I or II)");
}

mgame::SocialParams params_from_list(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 8) mgame::fail(ErrorKind::kParse, "--params needs T,R,P,S,M1,M2,M1p,M2p");
  std::vector<Rational> v;
  for (const auto& p : parts) v.push_back(rational_arg(p));
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kIo:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-game equilibrium engine"};
  app.require_subcommand(0, 1);
  Output out;
  app.add_option("--out", out.path, "write output to this file instead of stdout");
  bool show_version = false, show_schema = false;
  app.add_flag("--version", show_version, "print version as JSON");
  app.add_flag("--schema", show_schema, "print the JSON schemas of all file formats");

  // ne
  GameSource ne_src;
  auto* ne = app.add_subcommand("ne", "pure Nash equilibria");
  ne_src.attach(ne);

  // mixed
  GameSource mixed_src;
  auto* mixed = app.add_subcommand("mixed", "all equilibria of a 2x2 game");
  mixed_src.attach(mixed);

  // regions
  std::string regions_dg, regions_svg, regions_params;
  auto* regions = app.add_subcommand("regions", "equilibrium regions over the weight square");
  regions->add_option("--dg", regions_dg, "double game JSON");
  regions->add_option("--params", regions_params, "social DG parameters T,R,P,S,M1,M2,M1p,M2p");
  regions->add_option("--svg", regions_svg, "also write the diagram as SVG");

  // regularity
  std::string reg_dg, reg_grid;
  bool reg_table = false;
  auto* regularity = app.add_subcommand("regularity", "completely pure regular test");
  regularity->add_option("--dg", reg_dg, "double game JSON")->required();
  regularity->add_option("--grid", reg_grid, "type grid JSON")->required();
  regularity->add_flag("--table", reg_table, "print the local equilibrium table as CSV");
  std::size_t reg_max_certificates = 16;
  regularity->add_option("--max-certificates", reg_max_certificates, "list at most this many certificates")
      ->capture_default_str();

  // bayes-verify
  std::string bv_dg, bv_grid, bv_profile, bv_prior;
  auto* bayes = app.add_subcommand("bayes-verify", "check a pure Bayesian equilibrium under a prior");
  bayes->add_option("--dg", bv_dg, "double game JSON")->required();
  bayes->add_option("--grid", bv_grid, "type grid JSON")->required();
  bayes->add_option("--profile", bv_profile, "per-type actions, e.g. DDCC,DDCC, or a JSON file")->required();
  bayes->add_option("--prior", bv_prior, "prior JSON (default uniform)");

  // social-dg
  SocialOptions social_opts;
  std::string social_grid, social_emit_dg, social_emit_grid;
  auto* social = app.add_subcommand("social-dg", "prisoner's dilemma plus social game");
  social_opts.attach(social);
  social->add_option("--grid", social_grid, "also report the I or II example grid");
  social->add_option("--emit-dg", social_emit_dg, "write the double game JSON here");
  social->add_option("--emit-grid", social_emit_grid, "write the --grid JSON here");

  // interpolate
  std::string ip_dg, ip_lambda, ip_p, ip_p0, ip_p1;
  std::vector<std::string> ip_gammas;
  auto* interpolate = app.add_subcommand("interpolate", "mixed equilibrium weight between a coherent pair");
  interpolate->add_option("--dg", ip_dg, "double game JSON")->required();
  interpolate->add_option("--lambda", ip_lambda, "player 1 type")->required();
  interpolate->add_option("--p", ip_p, "player 1 first-action probability")->required();
  interpolate->add_option("--p0", ip_p0, "player 2 first-action probability at gamma = 0")->required();
  interpolate->add_option("--p1", ip_p1, "player 2 first-action probability at gamma = 1")->required();
  interpolate->add_option("--gamma", ip_gammas, "gamma values (repeatable)")->required();

  // tournament
  std::size_t t_rounds = 200, t_threads = 1;
  std::string t_mode = "complete", t_strategies = "SEG,ALLC,ALLD,TFT", t_params, t_grid = "II", t_format = "json";
  std::string t_dg, t_out;
  std::uint64_t t_seed = 0;
  bool t_trace = false, t_timestamps = false;
  auto* tournament = app.add_subcommand("tournament", "repeated double game round robin");
  tournament->add_option("--rounds", t_rounds, "rounds per match")->capture_default_str();
  tournament->add_option("--mode", t_mode, "complete or incomplete information")->capture_default_str();
  tournament->add_option("--seed", t_seed, "tournament seed")->capture_default_str();
  tournament->add_option("--strategies", t_strategies, "comma separated NAME or NAME@coefficient")
      ->capture_default_str();
  tournament->add_option("--params", t_params, "T,R,P,S,M1,M2,M1p,M2p (default tournament constants)");
  tournament->add_option("--dg", t_dg, "double game JSON instead of --params");
  tournament->add_option("--grid", t_grid, "coefficient grid: I, II or a grid JSON file")->capture_default_str();
  auto* t_format_opt = tournament->add_option("--format", t_format, "json or csv")->capture_default_str();
  tournament->add_option("--out", t_out, "json, csv, or an output file (format taken from a .csv extension)");
  tournament->add_flag("--trace", t_trace, "include every round of every match");
  tournament->add_option("--threads", t_threads, "worker threads")->capture_default_str();
  tournament->add_flag("--timestamps", t_timestamps, "add a generation time to the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (show_version) {
      out.emit(ordered_json{{"name", "mgame"}, {"version", kVersion}});
      return 0;
    }
    if (show_schema) {
      out.emit(mgame::io::schemas());
      return 0;
    }

    if (ne->parsed()) {
      const auto game = ne_src.load();
      out.emit(ordered_json{{"equilibria", mgame::io::profiles_to_json(game, mgame::pure_nash(game))}});
    } else if (mixed->parsed()) {
      const auto game = mixed_src.load();
      out.emit(mgame::io::mixed_set_to_json(mgame::mixed_nash_2x2(game)));
    } else if (regions->parsed()) {
      if (regions_dg.empty() == regions_params.empty()) {
        mgame::fail(ErrorKind::kInvalidInput, "give exactly one of --dg, --params");
      }
      const auto dg = regions_dg.empty() ? mgame::build_dg(params_from_list(regions_params), true)
                                         : mgame::io::double_game_from_json(mgame::io::read_json_file(regions_dg));
      const auto diagram = mgame::region_diagram(dg);
      if (!regions_svg.empty()) mgame::io::write_text_file(regions_svg, mgame::render_region_svg(dg, diagram));
      out.emit(mgame::io::region_diagram_to_json(dg, diagram));
    } else if (regularity->parsed()) {
      const auto dg = mgame::io::double_game_from_json(mgame::io::read_json_file(reg_dg));
      const auto grid = mgame::io::grid_from_json(mgame::io::read_json_file(reg_grid));
      if (reg_table) {
        out.emit(mgame::ne_table_csv(dg, grid));
      } else {
        auto result = mgame::io::regularity_to_json(dg, grid, mgame::completely_pure_regular(dg, grid));
        ordered_json certificates = ordered_json::array();
        bool truncated = false;
        mgame::for_each_certificate(dg, grid, [&](const mgame::BayesianPureProfile& c) {
          if (certificates.size() == reg_max_certificates) {
            truncated = true;
            return false;
          }
          certificates.push_back(mgame::format_bayesian(dg, c));
          return true;
        });
        result["all_certificates"] = certificates;
        result["all_certificates_truncated"] = truncated;
        result["thresholds"] = mgame::io::thresholds_to_json(dg, grid);
        out.emit(result);
      }
    } else if (bayes->parsed()) {
      const auto dg = mgame::io::double_game_from_json(mgame::io::read_json_file(bv_dg));
      const auto grid = mgame::io::grid_from_json(mgame::io::read_json_file(bv_grid));
      const auto profile = bv_profile.ends_with(".json")
                               ? mgame::io::bayesian_from_json(dg, mgame::io::read_json_file(bv_profile))
                               : mgame::io::bayesian_from_string(dg, bv_profile);
      const auto prior = bv_prior.empty() ? mgame::TypePrior::uniform(grid.lambda.size(), grid.gamma.size())
                                          : mgame::io::prior_from_json(mgame::io::read_json_file(bv_prior));
      auto result = mgame::io::bayes_check_to_json(dg, mgame::verify_bayes_ne(dg, grid, profile, prior));
      result["profile"] = mgame::format_bayesian(dg, profile);
      out.emit(result);
    } else if (social->parsed()) {
      const auto params = social_opts.params();
      const auto dg = mgame::build_dg(params, social_opts.relax_mprime);
      const auto cp = mgame::crossing_points(params);
      auto point = [](const Rational& x) {
        return ordered_json{{"exact", mgame::to_string(x)}, {"decimal", mgame::to_decimal(x, 2)}};
      };
      ordered_json result;
      result["params"] = mgame::io::social_params_to_json(params);
      result["case"] = mgame::to_string(mgame::classify_case(params));
      result["symmetric"] = mgame::is_symmetric(params);
      result["crossing_points"] = {{"a1", point(cp.a1)}, {"b1", point(cp.b1)}, {"c1", point(cp.c1)},
                                   {"a2", point(cp.a2)}, {"b2", point(cp.b2)}, {"c2", point(cp.c2)}};
      result["dg"] = mgame::io::double_game_to_json(dg);
      result["regions"] = mgame::io::region_diagram_to_json(dg, mgame::region_diagram(dg));
      if (!social_grid.empty()) {
        const auto grid = mgame::example_grid(params, grid_variant(social_grid));
        result["grid"] = mgame::io::grid_to_json(grid);
        result["regularity"] = mgame::io::regularity_to_json(dg, grid, mgame::completely_pure_regular(dg, grid));
        if (!social_emit_grid.empty()) {
          mgame::io::write_text_file(social_emit_grid, mgame::io::dump(mgame::io::grid_to_json(grid)));
        }
      }
      if (!social_emit_dg.empty()) {
        mgame::io::write_text_file(social_emit_dg, mgame::io::dump(mgame::io::double_game_to_json(dg)));
      }
      out.emit(result);
    } else if (interpolate->parsed()) {
      const auto dg = mgame::io::double_game_from_json(mgame::io::read_json_file(ip_dg));
      const Rational lambda = rational_arg(ip_lambda), p = rational_arg(ip_p);
      const Rational p0 = rational_arg(ip_p0), p1 = rational_arg(ip_p1);
      ordered_json points = ordered_json::array();
      for (const auto& g : ip_gammas) {
        const Rational gamma = rational_arg(g);
        const Rational q = mgame::mixed_interpolate(dg, lambda, p, p0, p1, gamma);
        points.push_back({{"gamma", mgame::to_string(gamma)}, {"p_gamma", mgame::to_string(q)}});
      }
      out.emit(ordered_json{{"lambda", mgame::to_string(lambda)}, {"p", mgame::to_string(p)}, {"points", points}});
    } else if (tournament->parsed()) {
      if (!t_dg.empty() && !t_params.empty()) mgame::fail(ErrorKind::kInvalidInput, "give at most one of --dg, --params");
      if (t_out == "json" || t_out == "csv") {
        t_format = t_out;
      } else if (!t_out.empty()) {
        out.path = t_out;
        if (t_format_opt->count() == 0 && t_out.ends_with(".csv")) t_format = "csv";
      }
      if (t_format != "json" && t_format != "csv") mgame::fail(ErrorKind::kInvalidInput, "--format must be json or csv");
      const auto params = t_params.empty() ? mgame::SocialParams::tournament() : params_from_list(t_params);
      const auto dg = t_dg.empty() ? mgame::build_dg(params, true)
                                   : mgame::io::double_game_from_json(mgame::io::read_json_file(t_dg));
      mgame::TypeGrid grid;
      if (t_grid == "I" || t_grid == "II") {
        if (!t_dg.empty()) mgame::fail(ErrorKind::kInvalidInput, "--grid I/II needs --params, not --dg");
        grid = mgame::example_grid(params, grid_variant(t_grid));
      } else {
        grid = mgame::io::grid_from_json(mgame::io::read_json_file(t_grid));
      }
      std::vector<mgame::StrategySpec> specs;
      for (const auto& s : split(t_strategies, ',')) specs.push_back(mgame::StrategySpec::parse(s));
      const auto registry = mgame::StrategyRegistry::with_builtins();
      mgame::TournamentConfig config{t_rounds, mgame::parse_info_mode(t_mode), t_seed, t_threads};
      const auto result = mgame::run_tournament(specs, registry, dg, grid, config);
      if (t_format == "csv") {
        std::string text = mgame::io::standings_csv(result);
        if (t_trace) {
          for (const auto& m : result.matches) {
            text += "\n# " + m.a + " vs " + m.b + "\n" + mgame::io::match_trace_csv(dg, m);
          }
        }
        out.emit(text);
      } else {
        ordered_json doc;
        doc["rounds"] = t_rounds;
        doc["mode"] = mgame::to_string(config.mode);
        doc["seed"] = t_seed;
        doc["grid"] = mgame::io::grid_to_json(grid);
        if (t_timestamps) doc["generated_at"] = utc_now();
        auto body = mgame::io::tournament_to_json(dg, result, t_trace);
        for (auto& [key, value] : body.items()) doc[key] = value;
        out.emit(doc);
      }
    } else {
      std::cout << app.help();
    }
    return 0;
  } catch (const mgame::Error& e) {
    std::cerr << "mgame: " << mgame::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "mgame: " << e.what() << "\n";
    return 1;
  }
}
