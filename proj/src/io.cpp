#include "mgame/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mgame/error.hpp"

namespace mgame::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::kParse, what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) bad("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t index_from_json(const json& value, const char* what) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::vector<std::string> labels_from_json(const json& value) {
  if (!value.is_array()) bad("action list must be an array");
  std::vector<std::string> labels;
  for (const auto& v : value) {
    if (!v.is_string()) bad("action labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  return labels;
}

ordered_json rationals_to_json(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

ordered_json rational_pair(const Rational& value) {
  return ordered_json{{"exact", rational_to_json(value)}, {"decimal", to_decimal(value, 6)}};
}

}  // namespace

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(mpz_class(std::to_string(value.get<unsigned long long>())))
                                      : Rational(mpz_class(std::to_string(value.get<long long>())));
  }
  if (value.is_number_float()) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value.get<double>());
    if (ec != std::errc()) bad("cannot read number");
    std::string text(buffer, end);
    if (text.find_first_of("eE") != std::string::npos) {
      bad("write number " + text + " as a decimal or p/q string");
    }
    return parse_rational(text);
  }
  bad("expected a number or a numeric string");
}

std::string rational_to_json(const Rational& value) { return to_string(value); }

std::vector<Rational> rationals_from_json(const json& value) {
  if (!value.is_array()) bad("expected an array of numbers");
  std::vector<Rational> out;
  for (const auto& v : value) out.push_back(rational_from_json(v));
  return out;
}

ordered_json game_to_json(const NormalFormGame& game) {
  ordered_json out;
  out["players"] = game.num_players();
  ordered_json actions = ordered_json::array();
  for (std::size_t j = 0; j < game.num_players(); ++j) actions.push_back(game.action_labels(j));
  out["actions"] = actions;
  ordered_json payoffs = ordered_json::object();
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    payoffs[game.profile_key(game.profile_at(k))] = rationals_to_json(game.payoff_vector_at(k));
  }
  out["payoffs"] = payoffs;
  return out;
}

NormalFormGame game_from_json(const json& value) {
  const std::size_t players = index_from_json(field(value, "players"), "players");
  const json& actions = field(value, "actions");
  if (!actions.is_array() || actions.size() != players) bad("\"actions\" must list one array per player");
  std::vector<std::vector<std::string>> labels;
  for (const auto& a : actions) labels.push_back(labels_from_json(a));

  const json& payoffs = field(value, "payoffs");
  if (!payoffs.is_object()) bad("\"payoffs\" must be an object keyed by profile");
  std::size_t count = players ? 1 : 0;
  for (const auto& l : labels) count *= l.size();
  if (payoffs.size() != count) {
    bad("\"payoffs\" has " + std::to_string(payoffs.size()) + " entries, expected " + std::to_string(count));
  }

  // Build the table in profile order from the keyed entries.
  std::vector<std::vector<Rational>> table(count);
  std::vector<std::size_t> index(players, 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::string key;
    for (std::size_t j = 0; j < players; ++j) {
      if (j) key += ',';
      key += labels[j][index[j]];
    }
    auto it = payoffs.find(key);
    if (it == payoffs.end()) bad("missing payoff for profile \"" + key + "\"");
    table[k] = rationals_from_json(*it);
    if (table[k].size() != players) bad("payoff for \"" + key + "\" needs one value per player");
    for (std::size_t j = players; j-- > 0;) {
      if (++index[j] < labels[j].size()) break;
      index[j] = 0;
    }
  }
  try {
    return NormalFormGame(std::move(labels), std::move(table));
  } catch (const Error& e) {
    bad(e.what());
  }
}

ordered_json double_game_to_json(const DoubleGame& dg) {
  return ordered_json{{"g1", game_to_json(dg.g1())}, {"g2", game_to_json(dg.g2())}};
}

DoubleGame double_game_from_json(const json& value) {
  return DoubleGame(game_from_json(field(value, "g1")), game_from_json(field(value, "g2")));
}

ordered_json multigame_to_json(const MultiGame& mg) {
  ordered_json games = ordered_json::array();
  for (const auto& g : mg.games()) games.push_back(game_to_json(g));
  return ordered_json{{"games", games}, {"uniform", mg.uniform()}};
}

MultiGame multigame_from_json(const json& value) {
  const json& games = field(value, "games");
  if (!games.is_array()) bad("\"games\" must be an array");
  std::vector<NormalFormGame> basic;
  for (const auto& g : games) basic.push_back(game_from_json(g));
  bool uniform = true;
  if (auto it = value.find("uniform"); it != value.end()) {
    if (!it->is_boolean()) bad("\"uniform\" must be a boolean");
    uniform = it->get<bool>();
  }
  return MultiGame(std::move(basic), uniform);
}

WeightVector weights_from_json(const json& value) {
  if (!value.is_array()) bad("weights must be an array of per-player arrays");
  WeightVector w;
  for (const auto& row : value) w.weights.push_back(rationals_from_json(row));
  return w;
}

ordered_json grid_to_json(const TypeGrid& grid) {
  return ordered_json{{"lambda", rationals_to_json(grid.lambda)}, {"gamma", rationals_to_json(grid.gamma)}};
}

TypeGrid grid_from_json(const json& value) {
  TypeGrid grid{rationals_from_json(field(value, "lambda")), rationals_from_json(field(value, "gamma"))};
  grid.validate();
  return grid;
}

TypePrior prior_from_json(const json& value) {
  if (value.is_object() && value.contains("table")) {
    const json& table = value.at("table");
    if (!table.is_array()) bad("\"table\" must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : table) rows.push_back(rationals_from_json(row));
    return TypePrior(std::move(rows));
  }
  return TypePrior::independent(rationals_from_json(field(value, "lambda")),
                                rationals_from_json(field(value, "gamma")));
}

ordered_json prior_to_json(const TypePrior& prior) {
  ordered_json table = ordered_json::array();
  for (const auto& row : prior.table()) table.push_back(rationals_to_json(row));
  return ordered_json{{"table", table}};
}

ordered_json bayesian_to_json(const DoubleGame& dg, const BayesianPureProfile& profile) {
  ordered_json p1 = ordered_json::array();
  ordered_json p2 = ordered_json::array();
  for (auto a : profile.p1_actions) p1.push_back(dg.action_label(0, a));
  for (auto b : profile.p2_actions) p2.push_back(dg.action_label(1, b));
  return ordered_json{{"p1", p1}, {"p2", p2}};
}

BayesianPureProfile bayesian_from_json(const DoubleGame& dg, const json& value) {
  if (value.is_string()) return bayesian_from_string(dg, value.get<std::string>());
  BayesianPureProfile profile;
  for (const auto& label : labels_from_json(field(value, "p1"))) {
    profile.p1_actions.push_back(dg.g1().action_index(0, label));
  }
  for (const auto& label : labels_from_json(field(value, "p2"))) {
    profile.p2_actions.push_back(dg.g1().action_index(1, label));
  }
  return profile;
}

BayesianPureProfile bayesian_from_string(const DoubleGame& dg, const std::string& text) {
  std::string body = text;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string::npos) bad("Bayesian profile must look like \"DDCC,DDCC\"");
  auto decode = [&](std::size_t player, const std::string& part) {
    std::vector<std::size_t> actions;
    if (part.find(' ') != std::string::npos) {
      std::istringstream in(part);
      std::string label;
      while (in >> label) actions.push_back(dg.g1().action_index(player, label));
    } else {
      for (char c : part) actions.push_back(dg.g1().action_index(player, std::string(1, c)));
    }
    return actions;
  };
  return {decode(0, body.substr(0, comma)), decode(1, body.substr(comma + 1))};
}

ordered_json social_params_to_json(const SocialParams& x) {
  return ordered_json{{"T", rational_to_json(x.T)},     {"R", rational_to_json(x.R)},
                      {"P", rational_to_json(x.P)},     {"S", rational_to_json(x.S)},
                      {"M1", rational_to_json(x.M1)},   {"M2", rational_to_json(x.M2)},
                      {"M1p", rational_to_json(x.M1p)}, {"M2p", rational_to_json(x.M2p)}};
}

SocialParams social_params_from_json(const json& value) {
  auto get = [&](const char* key) { return rational_from_json(field(value, key)); };
  return {get("T"), get("R"), get("P"), get("S"), get("M1"), get("M2"), get("M1p"), get("M2p")};
}

ordered_json profiles_to_json(const NormalFormGame& game, const std::vector<PureProfile>& profiles) {
  ordered_json out = ordered_json::array();
  for (const auto& p : profiles) out.push_back(format_profile(game, p));
  return out;
}

ordered_json mixed_to_json(const MixedProfile& profile) {
  ordered_json out = ordered_json::array();
  for (const auto& probs : profile.probabilities) out.push_back(rationals_to_json(probs));
  return out;
}

ordered_json mixed_set_to_json(const MixedNashSet& set) {
  ordered_json points = ordered_json::array();
  for (const auto& p : set.points) points.push_back(mixed_to_json(p));
  ordered_json segments = ordered_json::array();
  for (const auto& [a, b] : set.segments) segments.push_back(ordered_json::array({mixed_to_json(a), mixed_to_json(b)}));
  return ordered_json{{"degenerate", set.degenerate}, {"equilibria", points}, {"segments", segments}};
}

ordered_json interval_to_json(const Interval& interval) {
  if (interval.empty) return ordered_json{{"empty", true}};
  return ordered_json{{"empty", false}, {"lo", rational_to_json(interval.lo)}, {"hi", rational_to_json(interval.hi)}};
}

namespace {

ordered_json axis_cell_to_json(const AxisCell& cell, const std::string& var) {
  return ordered_json{{"range", cell.describe(var)},
                      {"lo", rational_to_json(cell.lo)},
                      {"hi", rational_to_json(cell.hi)},
                      {"lo_closed", cell.lo_closed},
                      {"hi_closed", cell.hi_closed}};
}

}  // namespace

ordered_json region_diagram_to_json(const DoubleGame& dg, const RegionDiagram& diagram) {
  ordered_json cells = ordered_json::array();
  for (const auto& cell : diagram.cells) {
    cells.push_back(ordered_json{{"lambda", axis_cell_to_json(diagram.lambda_cells[cell.lambda_cell], "lambda")},
                                 {"gamma", axis_cell_to_json(diagram.gamma_cells[cell.gamma_cell], "gamma")},
                                 {"equilibria", profiles_to_json(dg.g1(), cell.equilibria)}});
  }
  return ordered_json{{"lambda_breaks", rationals_to_json(diagram.lambda_breaks)},
                      {"gamma_breaks", rationals_to_json(diagram.gamma_breaks)},
                      {"cells", cells}};
}

ordered_json regularity_to_json(const DoubleGame& dg, const TypeGrid& grid, const RegularityResult& result) {
  ordered_json quads = ordered_json::array();
  for (const auto& q : result.quadruples) {
    auto name = [&](std::size_t a, std::size_t b) { return format_profile(dg.g1(), PureProfile{{a, b}}); };
    quads.push_back(ordered_json::array({name(q.s, q.u), name(q.s, q.v), name(q.t, q.u), name(q.t, q.v)}));
  }
  ordered_json out;
  out["pure_regular"] = !result.quadruples.empty();
  out["quadruples"] = quads;
  out["completely_pure_regular"] = result.certificate.has_value();
  out["verdict"] = result.certificate ? "completely pure regular" : "not completely pure regular";
  if (result.certificate) {
    out["certificate"] = format_bayesian(dg, *result.certificate);
    out["certificate_actions"] = bayesian_to_json(dg, *result.certificate);
  } else {
    out["certificate"] = nullptr;
  }
  out["grid"] = grid_to_json(grid);
  return out;
}

ordered_json thresholds_to_json(const DoubleGame& dg, const TypeGrid& grid) {
  ordered_json out = ordered_json::array();
  for (std::size_t player = 0; player < 2; ++player) {
    const auto& types = grid.values(player);
    for (std::size_t m = 0; m < types.size(); ++m) {
      for (const auto& pair : coherent_pairs(dg, grid, player, m)) {
        ordered_json entry;
        entry["player"] = player + 1;
        entry["type_index"] = m + 1;
        entry["type"] = rational_to_json(pair.own_type);
        entry["action"] = dg.action_label(player, pair.own_action);
        entry["opp_at_zero"] = dg.action_label(1 - player, pair.opp_at_zero);
        entry["opp_at_one"] = dg.action_label(1 - player, pair.opp_at_one);
        try {
          entry["threshold"] = threshold(dg, grid, pair);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kContract) throw;
          entry["threshold"] = nullptr;
        }
        out.push_back(entry);
      }
    }
  }
  return out;
}

ordered_json bayes_check_to_json(const DoubleGame& dg, const BayesCheck& check) {
  ordered_json reports = ordered_json::array();
  for (const auto& r : check.reports) {
    ordered_json expected = ordered_json::object();
    for (std::size_t a = 0; a < r.expected.size(); ++a) {
      expected[dg.action_label(r.player, a)] = rational_to_json(r.expected[a]);
    }
    reports.push_back(ordered_json{{"player", r.player + 1},
                                   {"type_index", r.type_index + 1},
                                   {"marginal", rational_to_json(r.marginal)},
                                   {"assigned", dg.action_label(r.player, r.assigned)},
                                   {"expected", expected},
                                   {"best_response", r.best_response}});
  }
  return ordered_json{{"bayesian_nash", check.equilibrium}, {"types", reports}};
}

ordered_json match_to_json(const DoubleGame& dg, const MatchRecord& match) {
  ordered_json rounds = ordered_json::array();
  for (const auto& r : match.rounds) {
    rounds.push_back(ordered_json::array({r.round, dg.action_label(0, r.action_a), dg.action_label(1, r.action_b),
                                          rational_to_json(r.coeff_a), rational_to_json(r.coeff_b),
                                          rational_to_json(r.payoff_a), rational_to_json(r.payoff_b)}));
  }
  ordered_json out;
  out["a"] = match.a;
  out["b"] = match.b;
  out["total_a"] = rational_pair(match.total_a);
  out["total_b"] = rational_pair(match.total_b);
  if (match.forfeit_a || match.forfeit_b) {
    out["forfeit_a"] = match.forfeit_a;
    out["forfeit_b"] = match.forfeit_b;
    out["forfeit_reason"] = match.forfeit_reason;
  }
  out["rounds"] = rounds;
  return out;
}

ordered_json tournament_to_json(const DoubleGame& dg, const TournamentResult& result, bool with_matches) {
  ordered_json standings = ordered_json::array();
  for (const auto& s : result.standings) {
    standings.push_back(ordered_json{{"rank", s.rank},
                                     {"strategy", s.strategy},
                                     {"total", rational_pair(s.total)},
                                     {"average", rational_pair(s.average)},
                                     {"matches", s.matches},
                                     {"initial_coeff", rational_pair(s.initial_coeff)},
                                     {"round1_action", s.round1_action}});
  }
  ordered_json out;
  out["standings"] = standings;
  if (with_matches) {
    ordered_json matches = ordered_json::array();
    for (const auto& m : result.matches) matches.push_back(match_to_json(dg, m));
    out["matches"] = matches;
  }
  return out;
}

std::string standings_csv(const TournamentResult& result) {
  std::ostringstream out;
  out << "rank,strategy,total,average,initial_coeff,round1_action\n";
  for (const auto& s : result.standings) {
    out << s.rank << ',' << s.strategy << ',' << to_decimal(s.total, 2) << ',' << to_decimal(s.average, 2) << ','
        << to_decimal(s.initial_coeff, 2) << ',' << s.round1_action << '\n';
  }
  return out.str();
}

std::string match_trace_csv(const DoubleGame& dg, const MatchRecord& match) {
  std::ostringstream out;
  out << "round,action_a,action_b,coeff_a,coeff_b,payoff_a,payoff_b\n";
  for (const auto& r : match.rounds) {
    out << r.round << ',' << dg.action_label(0, r.action_a) << ',' << dg.action_label(1, r.action_b) << ','
        << to_string(r.coeff_a) << ',' << to_string(r.coeff_b) << ',' << to_string(r.payoff_a) << ','
        << to_string(r.payoff_b) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::kIo, "write failed for " + path);
}

std::string dump(const ordered_json& value) { return value.dump(2) + "\n"; }

ordered_json schemas() {
  const ordered_json number = {
      {"description", "integer, decimal string, or \"p/q\" string; always exact"},
      {"oneOf", ordered_json::array({ordered_json{{"type", "integer"}},
                                     ordered_json{{"type", "string"}, {"pattern", "^[-+]?([0-9]+(\\.[0-9]*)?|\\.[0-9]+|[0-9]+/[0-9]+)$"}}})}};
  const ordered_json numbers = {{"type", "array"}, {"items", number}};
  const ordered_json game = {
      {"type", "object"},
      {"required", {"players", "actions", "payoffs"}},
      {"properties",
       {{"players", {{"type", "integer"}, {"minimum", 1}}},
        {"actions", {{"type", "array"}, {"items", {{"type", "array"}, {"items", {{"type", "string"}}}}}}},
        {"payoffs",
         {{"type", "object"},
          {"description", "keys are action labels joined by ',' in player order; values hold one payoff per player"},
          {"additionalProperties", numbers}}}}}};
  ordered_json out;
  out["game"] = game;
  out["double_game"] = {{"type", "object"},
                        {"required", {"g1", "g2"}},
                        {"properties", {{"g1", {{"$ref", "#/game"}}}, {"g2", {{"$ref", "#/game"}}}}}};
  out["multigame"] = {{"type", "object"},
                      {"required", {"games"}},
                      {"properties", {{"games", {{"type", "array"}, {"items", {{"$ref", "#/game"}}}}},
                                      {"uniform", {{"type", "boolean"}}}}}};
  out["weights"] = {{"type", "array"}, {"items", numbers}};
  out["grid"] = {{"type", "object"},
                 {"required", {"lambda", "gamma"}},
                 {"properties", {{"lambda", numbers}, {"gamma", numbers}}}};
  out["prior"] = {{"oneOf", ordered_json::array({ordered_json{{"type", "object"},
                                                              {"required", {"table"}},
                                                              {"properties", {{"table", {{"type", "array"}, {"items", numbers}}}}}},
                                                 ordered_json{{"type", "object"},
                                                              {"required", {"lambda", "gamma"}},
                                                              {"properties", {{"lambda", numbers}, {"gamma", numbers}}}}})}};
  out["bayesian_profile"] = {
      {"type", "object"},
      {"required", {"p1", "p2"}},
      {"properties", {{"p1", {{"type", "array"}, {"items", {{"type", "string"}}}}},
                      {"p2", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}};
  out["social_params"] = {{"type", "object"},
                          {"required", {"T", "R", "P", "S", "M1", "M2", "M1p", "M2p"}},
                          {"additionalProperties", number}};
  out["tournament_result"] = {
      {"type", "object"},
      {"required", {"standings"}},
      {"properties",
       {{"standings",
         {{"type", "array"},
          {"items",
           {{"type", "object"},
            {"required", {"rank", "strategy", "total", "average", "matches", "initial_coeff", "round1_action"}}}}}},
        {"matches",
         {{"type", "array"},
          {"items",
           {{"type", "object"},
            {"description", "rounds: [round, action_a, action_b, coeff_a, coeff_b, payoff_a, payoff_b]"}}}}}}}};
  return out;
}

}  // namespace mgame::io
