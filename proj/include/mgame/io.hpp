#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mgame/game.hpp"
#include "mgame/mixed.hpp"
#include "mgame/multigame.hpp"
#include "mgame/regularity.hpp"
#include "mgame/social_dg.hpp"
#include "mgame/tournament.hpp"

namespace mgame::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Accepts integers, decimal or "p/q" strings, and JSON numbers (read through
// their shortest decimal spelling). Always written back as "p" or "p/q".
Rational rational_from_json(const json& value);
std::string rational_to_json(const Rational& value);
std::vector<Rational> rationals_from_json(const json& value);

// {"players": N, "actions": [[...], ...], "payoffs": {"C,D": ["0","5"], ...}}
// Payoff keys are written in lexicographic order of action indices, so
// serialize(parse(x)) == x for any file this module wrote.
ordered_json game_to_json(const NormalFormGame& game);
NormalFormGame game_from_json(const json& value);

// {"g1": <game>, "g2": <game>}
ordered_json double_game_to_json(const DoubleGame& dg);
DoubleGame double_game_from_json(const json& value);

// {"games": [<game>, ...], "uniform": true}
ordered_json multigame_to_json(const MultiGame& mg);
MultiGame multigame_from_json(const json& value);
WeightVector weights_from_json(const json& value);

// {"lambda": [...], "gamma": [...]}
ordered_json grid_to_json(const TypeGrid& grid);
TypeGrid grid_from_json(const json& value);

// {"table": [[...], ...]} (rows lambda, columns gamma), or independent
// marginals {"lambda": [...], "gamma": [...]}.
TypePrior prior_from_json(const json& value);
ordered_json prior_to_json(const TypePrior& prior);

// {"p1": ["D","D","C","C"], "p2": [...]}
ordered_json bayesian_to_json(const DoubleGame& dg, const BayesianPureProfile& profile);
BayesianPureProfile bayesian_from_json(const DoubleGame& dg, const json& value);
// "DDCC,DDCC" for single-character labels, or space separated labels.
BayesianPureProfile bayesian_from_string(const DoubleGame& dg, const std::string& text);

ordered_json social_params_to_json(const SocialParams& params);
SocialParams social_params_from_json(const json& value);

ordered_json profiles_to_json(const NormalFormGame& game, const std::vector<PureProfile>& profiles);
ordered_json mixed_to_json(const MixedProfile& profile);
ordered_json mixed_set_to_json(const MixedNashSet& set);
ordered_json interval_to_json(const Interval& interval);
ordered_json region_diagram_to_json(const DoubleGame& dg, const RegionDiagram& diagram);
ordered_json regularity_to_json(const DoubleGame& dg, const TypeGrid& grid, const RegularityResult& result);
// Every coherent pair per player and type with its threshold (null when the
// pair has none).
ordered_json thresholds_to_json(const DoubleGame& dg, const TypeGrid& grid);
ordered_json bayes_check_to_json(const DoubleGame& dg, const BayesCheck& check);

ordered_json match_to_json(const DoubleGame& dg, const MatchRecord& match);
ordered_json tournament_to_json(const DoubleGame& dg, const TournamentResult& result, bool with_matches);
// rank,strategy,total,average,initial_coeff,round1_action
std::string standings_csv(const TournamentResult& result);
// round,action_a,action_b,coeff_a,coeff_b,payoff_a,payoff_b
std::string match_trace_csv(const DoubleGame& dg, const MatchRecord& match);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const ordered_json& value);

// JSON schemas of the file formats above.
ordered_json schemas();

}  // namespace mgame::io
