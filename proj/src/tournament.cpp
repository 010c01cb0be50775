#include "mgame/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "mgame/error.hpp"

namespace mgame {

const char* to_string(InfoMode mode) {
  return mode == InfoMode::kComplete ? "complete" : "incomplete";
}

InfoMode parse_info_mode(const std::string& text) {
  if (text == "complete") return InfoMode::kComplete;
  if (text == "incomplete") return InfoMode::kIncomplete;
  fail(ErrorKind::kInvalidInput, "mode must be complete or incomplete, got \"" + text + "\"");
}

std::string StrategySpec::label() const {
  return initial_coeff ? name + "@" + to_string(*initial_coeff) : name;
}

StrategySpec StrategySpec::parse(const std::string& text) {
  StrategySpec spec;
  auto at = text.find('@');
  spec.name = text.substr(0, at);
  if (spec.name.empty()) fail(ErrorKind::kInvalidInput, "empty strategy name");
  if (at != std::string::npos) spec.initial_coeff = parse_rational(text.substr(at + 1));
  return spec;
}

int seg_update(Move own, Move opp) {
  if (own == Move::kCooperate) return opp == Move::kCooperate ? 0 : +1;
  return opp == Move::kCooperate ? -1 : +1;
}

namespace {

std::size_t defect_index(const DoubleGame& dg, std::size_t player) {
  const auto& labels = dg.g1().action_labels(player);
  auto it = std::find(labels.begin(), labels.end(), "D");
  return it != labels.end() ? static_cast<std::size_t>(it - labels.begin()) : labels.size() - 1;
}

std::size_t grid_index_of(const std::vector<Rational>& grid, const Rational& value) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == value) return i;
  }
  fail(ErrorKind::kInvalidInput, "initial coefficient " + to_string(value) + " is not a grid value");
}

// Built-ins play C/D games and start from a fixed coefficient value.
class BuiltinStrategy : public Strategy {
 public:
  BuiltinStrategy(std::string name, Rational initial) : name_(std::move(name)), initial_(std::move(initial)) {}

  std::string name() const override { return name_; }
  std::size_t initial_coeff_index(const std::vector<Rational>& grid) const override {
    return grid_index_of(grid, initial_);
  }

 protected:
  static std::size_t index_of(const Observation& obs, const char* label) {
    return obs.dg->g1().action_index(obs.player, label);
  }
  static Move move_of(const Observation& obs, std::size_t player, std::size_t action) {
    return obs.dg->action_label(player, action) == "C" ? Move::kCooperate : Move::kDefect;
  }

 private:
  std::string name_;
  Rational initial_;
};

class AlwaysCooperate : public BuiltinStrategy {
 public:
  using BuiltinStrategy::BuiltinStrategy;
  int coeff_delta(const Observation&) override { return 0; }
  std::size_t action(const Observation& obs) override { return index_of(obs, "C"); }
};

class AlwaysDefect : public BuiltinStrategy {
 public:
  using BuiltinStrategy::BuiltinStrategy;
  int coeff_delta(const Observation&) override { return 0; }
  std::size_t action(const Observation& obs) override { return index_of(obs, "D"); }
};

class TitForTat : public BuiltinStrategy {
 public:
  using BuiltinStrategy::BuiltinStrategy;
  int coeff_delta(const Observation&) override { return 0; }
  std::size_t action(const Observation& obs) override {
    if (!obs.opp_last) return index_of(obs, "C");
    return move_of(obs, 1 - obs.player, *obs.opp_last) == Move::kCooperate ? index_of(obs, "C")
                                                                             : index_of(obs, "D");
  }
};

// Plays what the pure equilibria of the current (lambda, gamma) game
// prescribe, defecting when they disagree, and steps its coefficient by
// seg_update. Without the opponent's coefficient it assumes its own.
class Seg : public BuiltinStrategy {
 public:
  using BuiltinStrategy::BuiltinStrategy;

  int coeff_delta(const Observation& obs) override {
    if (!obs.own_last || !obs.opp_last) return 0;
    return seg_update(move_of(obs, obs.player, *obs.own_last), move_of(obs, 1 - obs.player, *obs.opp_last));
  }

  std::size_t action(const Observation& obs) override {
    if (!regions_ || cached_dg_ != obs.dg) {
      regions_.emplace(*obs.dg);
      cached_dg_ = obs.dg;
    }
    const Rational& own = obs.own_coeff;
    const Rational& other = obs.opp_coeff ? *obs.opp_coeff : own;
    const Rational& lambda = obs.player == 0 ? own : other;
    const Rational& gamma = obs.player == 0 ? other : own;
    return ne_lookup(*regions_, *obs.dg, lambda, gamma, obs.player, index_of(obs, "D")).action;
  }

 private:
  std::optional<NeRegions> regions_;
  const DoubleGame* cached_dg_ = nullptr;
};

template <typename T>
StrategyFactory builtin(const char* name, Rational default_initial) {
  return [name, default_initial](const StrategySpec& spec, std::mt19937_64) -> std::unique_ptr<Strategy> {
    return std::make_unique<T>(name, spec.initial_coeff.value_or(default_initial));
  };
}

}  // namespace

StrategyRegistry StrategyRegistry::with_builtins() {
  StrategyRegistry registry;
  registry.add("SEG", builtin<Seg>("SEG", 0));
  registry.add("ALLC", builtin<AlwaysCooperate>("ALLC", 1));
  registry.add("ALLD", builtin<AlwaysDefect>("ALLD", 0));
  registry.add("TFT", builtin<TitForTat>("TFT", 0));
  return registry;
}

void StrategyRegistry::add(const std::string& name, StrategyFactory factory) {
  if (name.empty() || name.find('@') != std::string::npos || name.find(',') != std::string::npos) {
    fail(ErrorKind::kInvalidInput, "strategy names must be non-empty without '@' or ','");
  }
  factories_[name] = std::move(factory);
}

std::vector<std::string> StrategyRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : factories_) out.push_back(name);
  return out;
}

std::unique_ptr<Strategy> StrategyRegistry::make(const StrategySpec& spec, std::mt19937_64 rng) const {
  auto it = factories_.find(spec.name);
  if (it == factories_.end()) fail(ErrorKind::kInvalidInput, "unknown strategy \"" + spec.name + "\"");
  return it->second(spec, std::move(rng));
}

LookupResult ne_lookup(const NeRegions& regions, const DoubleGame& dg, const Rational& lambda,
                       const Rational& gamma, std::size_t player, std::size_t defect_action) {
  const auto equilibria = regions.equilibria_at(lambda, gamma);
  if (equilibria.empty()) {
    const NormalFormGame game = instantiate(dg, lambda, gamma);
    std::size_t best = 0;
    for (std::size_t k = 1; k < game.num_profiles(); ++k) {
      if (game.payoff_vector_at(k)[player] > game.payoff_vector_at(best)[player]) best = k;
    }
    return {game.profile_at(best)[player], true};
  }
  const std::size_t first = equilibria.front()[player];
  for (const auto& profile : equilibria) {
    if (profile[player] != first) return {defect_action, false};
  }
  return {first, false};
}

LookupResult ne_lookup(const DoubleGame& dg, const Rational& lambda, const Rational& gamma, std::size_t player) {
  if (player > 1) fail(ErrorKind::kInvalidInput, "double games have players 0 and 1");
  return ne_lookup(NeRegions(dg), dg, lambda, gamma, player, defect_index(dg, player));
}

StepResult step(Strategy& strategy, Observation obs) {
  if (!obs.own_grid || !obs.dg) fail(ErrorKind::kInvalidInput, "observation lacks game or grid");
  const int delta = obs.round > 1 ? strategy.coeff_delta(obs) : 0;
  if (delta < -1 || delta > 1) {
    fail(ErrorKind::kContract, strategy.name() + " changed its coefficient by " + std::to_string(delta));
  }
  const auto last = static_cast<long>(obs.own_grid->size()) - 1;
  const long moved = std::clamp(static_cast<long>(obs.own_coeff_index) + delta, 0L, last);
  obs.own_coeff_index = static_cast<std::size_t>(moved);
  obs.own_coeff = (*obs.own_grid)[obs.own_coeff_index];
  const std::size_t action = strategy.action(obs);
  obs.dg->action_label(obs.player, action);
  return {delta, obs.own_coeff_index, action};
}

MatchRecord play_match(Strategy& a, Strategy& b, const DoubleGame& dg, const TypeGrid& grid,
                       std::size_t rounds, InfoMode mode) {
  grid.validate();
  if (rounds == 0) fail(ErrorKind::kInvalidInput, "a match needs at least one round");

  MatchRecord record;
  record.a = a.name();
  record.b = b.name();
  record.total_a = 0;
  record.total_b = 0;

  Strategy* sides[2] = {&a, &b};
  const std::vector<Rational>* grids[2] = {&grid.lambda, &grid.gamma};
  std::size_t index[2];
  std::optional<std::size_t> last[2];
  bool broke[2] = {false, false};
  std::string reason;

  auto breach = [&](std::size_t side, const std::string& why) {
    broke[side] = true;
    if (!reason.empty()) reason += "; ";
    reason += why;
  };

  for (std::size_t side = 0; side < 2; ++side) {
    index[side] = sides[side]->initial_coeff_index(*grids[side]);
    if (index[side] >= grids[side]->size()) breach(side, sides[side]->name() + " chose an initial coefficient off the grid");
  }

  auto observe = [&](std::size_t side, std::size_t round) {
    Observation obs;
    obs.round = round;
    obs.player = side;
    obs.own_last = last[side];
    obs.opp_last = last[1 - side];
    obs.own_coeff_index = index[side];
    obs.own_coeff = (*grids[side])[index[side]];
    if (mode == InfoMode::kComplete) obs.opp_coeff = (*grids[1 - side])[index[1 - side]];
    obs.dg = &dg;
    obs.own_grid = grids[side];
    return obs;
  };

  for (std::size_t round = 1; round <= rounds && !broke[0] && !broke[1]; ++round) {
    if (round > 1) {
      int delta[2];
      for (std::size_t side = 0; side < 2; ++side) {
        delta[side] = sides[side]->coeff_delta(observe(side, round));
        if (delta[side] < -1 || delta[side] > 1) {
          breach(side, sides[side]->name() + " changed its coefficient by " + std::to_string(delta[side]));
        }
      }
      if (broke[0] || broke[1]) break;
      for (std::size_t side = 0; side < 2; ++side) {
        const auto top = static_cast<long>(grids[side]->size()) - 1;
        index[side] = static_cast<std::size_t>(std::clamp(static_cast<long>(index[side]) + delta[side], 0L, top));
      }
    }
    std::size_t act[2];
    for (std::size_t side = 0; side < 2; ++side) {
      act[side] = sides[side]->action(observe(side, round));
      if (act[side] >= dg.num_actions(side)) breach(side, sides[side]->name() + " chose an invalid action");
    }
    if (broke[0] || broke[1]) break;

    RoundRecord r;
    r.round = round;
    r.action_a = act[0];
    r.action_b = act[1];
    r.coeff_index_a = index[0];
    r.coeff_index_b = index[1];
    r.coeff_a = grid.lambda[index[0]];
    r.coeff_b = grid.gamma[index[1]];
    const PureProfile profile{{act[0], act[1]}};
    r.payoff_a = dg.weighted_payoff(profile, 0, r.coeff_a);
    r.payoff_b = dg.weighted_payoff(profile, 1, r.coeff_b);
    record.total_a += r.payoff_a;
    record.total_b += r.payoff_b;
    record.rounds.push_back(std::move(r));
    last[0] = act[0];
    last[1] = act[1];
  }

  if (broke[0]) record.total_a = 0;
  if (broke[1]) record.total_b = 0;
  record.forfeit_a = broke[0];
  record.forfeit_b = broke[1];
  record.forfeit_reason = reason;
  return record;
}

std::mt19937_64 match_rng(std::uint64_t seed, std::size_t pair_index, std::size_t side) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pair_index), static_cast<std::uint32_t>(side)};
  return std::mt19937_64(seq);
}

MatchRecord play_match(const StrategySpec& a, const StrategySpec& b, const StrategyRegistry& registry,
                       const DoubleGame& dg, const TypeGrid& grid, const MatchConfig& config,
                       std::size_t pair_index) {
  auto first = registry.make(a, match_rng(config.seed, pair_index, 0));
  auto second = registry.make(b, match_rng(config.seed, pair_index, 1));
  MatchRecord record = play_match(*first, *second, dg, grid, config.rounds, config.mode);
  record.a = a.label();
  record.b = b.label();
  return record;
}

TournamentResult run_tournament(const std::vector<StrategySpec>& strategies, const StrategyRegistry& registry,
                                const DoubleGame& dg, const TypeGrid& grid, const TournamentConfig& config) {
  if (strategies.empty()) fail(ErrorKind::kInvalidInput, "a tournament needs at least one strategy");
  grid.validate();
  std::set<std::string> labels;
  for (const auto& s : strategies) {
    if (!registry.contains(s.name)) fail(ErrorKind::kInvalidInput, "unknown strategy \"" + s.name + "\"");
    if (!labels.insert(s.label()).second) fail(ErrorKind::kInvalidInput, "duplicate entrant " + s.label());
  }

  const std::size_t n = strategies.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }

  TournamentResult result;
  result.matches.resize(pairs.size());
  const MatchConfig match_config{config.rounds, config.mode, config.seed};
  auto run = [&](std::size_t k) {
    result.matches[k] = play_match(strategies[pairs[k].first], strategies[pairs[k].second], registry, dg, grid,
                                   match_config, k);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, pairs.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < pairs.size(); ++k) run(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < pairs.size(); k = next++) run(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<StrategyScore> scores(n);
  std::vector<std::set<std::string>> first_moves(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i].strategy = strategies[i].label();
    scores[i].total = 0;
    auto probe = registry.make(strategies[i], match_rng(config.seed, 0, 0));
    scores[i].initial_coeff = grid.lambda.at(probe->initial_coeff_index(grid.lambda));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const MatchRecord& match = result.matches[k];
    scores[i].total += match.total_a;
    ++scores[i].matches;
    if (!match.rounds.empty()) first_moves[i].insert(dg.action_label(0, match.rounds.front().action_a));
    if (i != j) {
      scores[j].total += match.total_b;
      ++scores[j].matches;
      if (!match.rounds.empty()) first_moves[j].insert(dg.action_label(1, match.rounds.front().action_b));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    scores[i].average = scores[i].total / static_cast<long>(scores[i].matches);
    for (const auto& label : first_moves[i]) {
      if (!scores[i].round1_action.empty()) scores[i].round1_action += '/';
      scores[i].round1_action += label;
    }
  }
  std::sort(scores.begin(), scores.end(), [](const StrategyScore& x, const StrategyScore& y) {
    if (x.total != y.total) return x.total > y.total;
    return x.strategy < y.strategy;
  });
  for (std::size_t i = 0; i < n; ++i) scores[i].rank = i + 1;
  result.standings = std::move(scores);
  return result;
}

}  // namespace mgame
