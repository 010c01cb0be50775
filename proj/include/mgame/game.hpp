#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "mgame/rational.hpp"

namespace mgame {

// One action index per player.
struct PureProfile {
  std::vector<std::size_t> actions;

  std::size_t operator[](std::size_t player) const { return actions[player]; }
  auto operator<=>(const PureProfile&) const = default;
};

// Per-player probability vectors. A player's vector may be left empty when the
// profile is used as "what everyone else plays" for best_responses.
struct MixedProfile {
  std::vector<std::vector<Rational>> probabilities;

  bool operator==(const MixedProfile&) const = default;
};

MixedProfile degenerate_mixture(const class NormalFormGame& game, const PureProfile& profile);

// Finite N-player game in normal form with exact payoffs. Immutable once built.
class NormalFormGame {
 public:
  // payoffs[k] is the per-player payoff vector of the k-th profile, where
  // profiles are enumerated row-major with player 0 varying slowest.
  NormalFormGame(std::vector<std::vector<std::string>> action_labels,
                 std::vector<std::vector<Rational>> payoffs);

  std::size_t num_players() const { return labels_.size(); }
  std::size_t num_actions(std::size_t player) const;
  std::size_t num_profiles() const { return payoffs_.size(); }

  const std::vector<std::string>& action_labels(std::size_t player) const;
  const std::string& action_label(std::size_t player, std::size_t action) const;
  // Throws invalid-input when the label is unknown.
  std::size_t action_index(std::size_t player, const std::string& label) const;

  std::size_t profile_index(const PureProfile& profile) const;
  PureProfile profile_at(std::size_t index) const;

  const Rational& payoff(const PureProfile& profile, std::size_t player) const;
  const std::vector<Rational>& payoff_vector(const PureProfile& profile) const;
  const std::vector<Rational>& payoff_vector_at(std::size_t index) const { return payoffs_[index]; }

  // "C,D" style key used by the JSON format.
  std::string profile_key(const PureProfile& profile) const;

  void validate(const PureProfile& profile) const;
  void validate(const MixedProfile& profile, bool allow_missing_player = false,
                std::size_t missing_player = 0) const;

  bool operator==(const NormalFormGame&) const = default;

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<Rational>> payoffs_;
  std::vector<std::size_t> strides_;
};

const Rational& payoff(const NormalFormGame& game, const PureProfile& profile, std::size_t player);

Rational expected_payoff(const NormalFormGame& game, const MixedProfile& profile, std::size_t player);

// All actions of `player` maximizing expected payoff against the other
// players' mixtures; ties are all returned, sorted by index.
std::vector<std::size_t> best_responses(const NormalFormGame& game, std::size_t player,
                                        const MixedProfile& others);

bool is_pure_nash(const NormalFormGame& game, const PureProfile& profile);

// Pure equilibria in lexicographic order of action indices.
std::vector<PureProfile> pure_nash(const NormalFormGame& game);

// No player gains by a unilateral switch to any pure action.
bool is_mixed_nash(const NormalFormGame& game, const MixedProfile& profile);

// Convenience builder for 2-player games given as a bimatrix.
NormalFormGame bimatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                        const std::vector<std::vector<Rational>>& row_payoffs,
                        const std::vector<std::vector<Rational>>& col_payoffs);

// Prisoner's dilemma over actions {C, D}.
NormalFormGame prisoners_dilemma(const Rational& t, const Rational& r, const Rational& p,
                                 const Rational& s);

// Social game over {C, D}: each player earns its cooperation reward for C and
// its defection value for D regardless of the other's move.
NormalFormGame social_game(const Rational& m1, const Rational& m2, const Rational& m1p,
                           const Rational& m2p);

std::string format_profile(const NormalFormGame& game, const PureProfile& profile);

}  // namespace mgame
