#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mgame/multigame.hpp"

namespace mgame {

enum class InfoMode { kComplete, kIncomplete };

const char* to_string(InfoMode mode);
InfoMode parse_info_mode(const std::string& text);

// What a strategy sees when it decides. History fields are empty in round 1;
// opp_coeff is only filled in complete-information mode.
struct Observation {
  std::size_t round = 1;
  std::size_t player = 0;
  std::optional<std::size_t> own_last;
  std::optional<std::size_t> opp_last;
  std::size_t own_coeff_index = 0;
  Rational own_coeff;
  std::optional<Rational> opp_coeff;
  const DoubleGame* dg = nullptr;
  const std::vector<Rational>* own_grid = nullptr;
};

// A tournament entrant. Each round runs in two phases: every strategy first
// reports its coefficient step from the previous round's observation, the
// steps are applied to both players at once, and then each strategy picks an
// action seeing the updated coefficients.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  // Index into the player's coefficient grid used in round 1.
  virtual std::size_t initial_coeff_index(const std::vector<Rational>& grid) const = 0;
  // Must be -1, 0 or +1.
  virtual int coeff_delta(const Observation& obs) = 0;
  virtual std::size_t action(const Observation& obs) = 0;
};

// Strategy name plus optional initial coefficient value, written "ALLC@1".
struct StrategySpec {
  std::string name;
  std::optional<Rational> initial_coeff;

  std::string label() const;
  static StrategySpec parse(const std::string& text);
};

using StrategyFactory = std::function<std::unique_ptr<Strategy>(const StrategySpec&, std::mt19937_64 rng)>;

// Name -> factory. Ships SEG, ALLC, ALLD and TFT; more can be added.
class StrategyRegistry {
 public:
  static StrategyRegistry with_builtins();

  void add(const std::string& name, StrategyFactory factory);
  bool contains(const std::string& name) const { return factories_.count(name) != 0; }
  std::vector<std::string> names() const;
  std::unique_ptr<Strategy> make(const StrategySpec& spec, std::mt19937_64 rng) const;

 private:
  std::map<std::string, StrategyFactory> factories_;
};

struct StepResult {
  int coeff_delta = 0;
  std::size_t coeff_index = 0;
  std::size_t action = 0;
};

// One strategy's full round in isolation: the step is applied and clamped to
// the grid before the action is chosen on the updated observation.
StepResult step(Strategy& strategy, Observation obs);

// Index of the equilibrium own-action at (lambda, gamma) for `player`. When
// the equilibria disagree on that player's action, `defect_action` is played.
struct LookupResult {
  std::size_t action = 0;
  bool fallback = false;  // no pure equilibrium; best own payoff profile used
};

LookupResult ne_lookup(const NeRegions& regions, const DoubleGame& dg, const Rational& lambda,
                       const Rational& gamma, std::size_t player, std::size_t defect_action);
LookupResult ne_lookup(const DoubleGame& dg, const Rational& lambda, const Rational& gamma,
                       std::size_t player = 0);

enum class Move { kCooperate, kDefect };

// Coefficient step after (own, opp) in the previous round:
// (C,C) 0, (C,D) +1, (D,C) -1, (D,D) +1.
int seg_update(Move own, Move opp);

struct RoundRecord {
  std::size_t round = 0;
  std::size_t action_a = 0;
  std::size_t action_b = 0;
  std::size_t coeff_index_a = 0;
  std::size_t coeff_index_b = 0;
  Rational coeff_a;
  Rational coeff_b;
  Rational payoff_a;
  Rational payoff_b;
};

struct MatchRecord {
  std::string a;
  std::string b;
  std::vector<RoundRecord> rounds;
  Rational total_a;
  Rational total_b;
  // A side that broke its contract forfeits: the match stops and it scores 0.
  bool forfeit_a = false;
  bool forfeit_b = false;
  std::string forfeit_reason;
};

struct MatchConfig {
  std::size_t rounds = 200;
  InfoMode mode = InfoMode::kComplete;
  std::uint64_t seed = 0;
};

// Strategy a plays as player 1 (lambda grid), b as player 2 (gamma grid).
MatchRecord play_match(Strategy& a, Strategy& b, const DoubleGame& dg, const TypeGrid& grid,
                       std::size_t rounds, InfoMode mode);

MatchRecord play_match(const StrategySpec& a, const StrategySpec& b, const StrategyRegistry& registry,
                       const DoubleGame& dg, const TypeGrid& grid, const MatchConfig& config,
                       std::size_t pair_index = 0);

struct StrategyScore {
  std::size_t rank = 0;
  std::string strategy;
  Rational total;
  Rational average;
  std::size_t matches = 0;
  Rational initial_coeff;
  std::string round1_action;
};

struct TournamentResult {
  std::vector<StrategyScore> standings;
  std::vector<MatchRecord> matches;
};

struct TournamentConfig {
  std::size_t rounds = 200;
  InfoMode mode = InfoMode::kComplete;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Round robin: every unordered pair plays once, each strategy also plays a
// fresh copy of itself (credited once). Ranked by total, ties by name.
TournamentResult run_tournament(const std::vector<StrategySpec>& strategies, const StrategyRegistry& registry,
                                const DoubleGame& dg, const TypeGrid& grid, const TournamentConfig& config);

// Stream seed for (tournament seed, pair index, side).
std::mt19937_64 match_rng(std::uint64_t seed, std::size_t pair_index, std::size_t side);

}  // namespace mgame
