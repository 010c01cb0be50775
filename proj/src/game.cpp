#include "mgame/game.hpp"

#include <set>

#include "mgame/error.hpp"

namespace mgame {

NormalFormGame::NormalFormGame(std::vector<std::vector<std::string>> action_labels,
                               std::vector<std::vector<Rational>> payoffs)
    : labels_(std::move(action_labels)), payoffs_(std::move(payoffs)) {
  if (labels_.empty()) fail(ErrorKind::kInvalidInput, "a game needs at least one player");
  std::size_t count = 1;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (labels_[j].empty()) {
      fail(ErrorKind::kInvalidInput, "player " + std::to_string(j + 1) + " has no actions");
    }
    std::set<std::string> seen;
    for (const auto& label : labels_[j]) {
      if (label.empty() || label.find(',') != std::string::npos) {
        fail(ErrorKind::kInvalidInput, "action labels must be non-empty and comma-free");
      }
      if (!seen.insert(label).second) {
        fail(ErrorKind::kInvalidInput, "duplicate action label \"" + label + "\" for player " +
                                           std::to_string(j + 1));
      }
    }
    count *= labels_[j].size();
  }
  if (payoffs_.size() != count) {
    fail(ErrorKind::kInvalidInput, "expected " + std::to_string(count) + " payoff entries, got " +
                                       std::to_string(payoffs_.size()));
  }
  for (const auto& entry : payoffs_) {
    if (entry.size() != labels_.size()) {
      fail(ErrorKind::kInvalidInput, "every payoff vector must have one entry per player");
    }
  }
  strides_.assign(labels_.size(), 1);
  for (std::size_t j = labels_.size() - 1; j > 0; --j) {
    strides_[j - 1] = strides_[j] * labels_[j].size();
  }
}

std::size_t NormalFormGame::num_actions(std::size_t player) const {
  if (player >= labels_.size()) {
    fail(ErrorKind::kInvalidInput, "player index " + std::to_string(player) + " out of range");
  }
  return labels_[player].size();
}

const std::vector<std::string>& NormalFormGame::action_labels(std::size_t player) const {
  num_actions(player);
  return labels_[player];
}

const std::string& NormalFormGame::action_label(std::size_t player, std::size_t action) const {
  if (action >= num_actions(player)) {
    fail(ErrorKind::kInvalidInput, "action index " + std::to_string(action) + " out of range");
  }
  return labels_[player][action];
}

std::size_t NormalFormGame::action_index(std::size_t player, const std::string& label) const {
  const auto& labels = action_labels(player);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  fail(ErrorKind::kInvalidInput, "unknown action \"" + label + "\" for player " + std::to_string(player + 1));
}

void NormalFormGame::validate(const PureProfile& profile) const {
  if (profile.actions.size() != labels_.size()) {
    fail(ErrorKind::kInvalidInput, "profile has " + std::to_string(profile.actions.size()) +
                                       " actions for a " + std::to_string(labels_.size()) + "-player game");
  }
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (profile.actions[j] >= labels_[j].size()) {
      fail(ErrorKind::kInvalidInput, "action index " + std::to_string(profile.actions[j]) +
                                         " out of range for player " + std::to_string(j + 1));
    }
  }
}

void NormalFormGame::validate(const MixedProfile& profile, bool allow_missing_player,
                              std::size_t missing_player) const {
  if (profile.probabilities.size() != labels_.size()) {
    fail(ErrorKind::kInvalidInput, "mixed profile has wrong number of players");
  }
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    const auto& probs = profile.probabilities[j];
    if (allow_missing_player && j == missing_player) continue;
    if (probs.size() != labels_[j].size()) {
      fail(ErrorKind::kInvalidInput, "mixture for player " + std::to_string(j + 1) +
                                         " has wrong dimension");
    }
    Rational total = 0;
    for (const auto& p : probs) {
      if (p < 0) fail(ErrorKind::kInvalidInput, "negative probability");
      total += p;
    }
    if (total != 1) {
      fail(ErrorKind::kInvalidInput, "mixture for player " + std::to_string(j + 1) + " sums to " +
                                         to_string(total) + ", not 1");
    }
  }
}

std::size_t NormalFormGame::profile_index(const PureProfile& profile) const {
  validate(profile);
  std::size_t index = 0;
  for (std::size_t j = 0; j < labels_.size(); ++j) index += profile.actions[j] * strides_[j];
  return index;
}

PureProfile NormalFormGame::profile_at(std::size_t index) const {
  if (index >= payoffs_.size()) fail(ErrorKind::kInvalidInput, "profile index out of range");
  PureProfile profile;
  profile.actions.resize(labels_.size());
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    profile.actions[j] = index / strides_[j];
    index %= strides_[j];
  }
  return profile;
}

const Rational& NormalFormGame::payoff(const PureProfile& profile, std::size_t player) const {
  num_actions(player);
  return payoffs_[profile_index(profile)][player];
}

const std::vector<Rational>& NormalFormGame::payoff_vector(const PureProfile& profile) const {
  return payoffs_[profile_index(profile)];
}

std::string NormalFormGame::profile_key(const PureProfile& profile) const {
  validate(profile);
  std::string key;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (j) key += ',';
    key += labels_[j][profile.actions[j]];
  }
  return key;
}

std::string format_profile(const NormalFormGame& game, const PureProfile& profile) {
  return "(" + game.profile_key(profile) + ")";
}

MixedProfile degenerate_mixture(const NormalFormGame& game, const PureProfile& profile) {
  game.validate(profile);
  MixedProfile mixed;
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    std::vector<Rational> probs(game.num_actions(j), Rational(0));
    probs[profile.actions[j]] = 1;
    mixed.probabilities.push_back(std::move(probs));
  }
  return mixed;
}

const Rational& payoff(const NormalFormGame& game, const PureProfile& profile, std::size_t player) {
  return game.payoff(profile, player);
}

namespace {

// Sum over all profiles consistent with `fixed_player` playing `fixed_action`
// (or over all profiles when fixed_player == npos) of probability * payoff.
Rational expectation(const NormalFormGame& game, const MixedProfile& profile, std::size_t player,
                     std::size_t fixed_player, std::size_t fixed_action) {
  Rational total = 0;
  Rational weight;
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    PureProfile pure = game.profile_at(k);
    weight = 1;
    bool skip = false;
    for (std::size_t j = 0; j < game.num_players() && !skip; ++j) {
      if (j == fixed_player) {
        skip = pure.actions[j] != fixed_action;
      } else {
        const Rational& p = profile.probabilities[j][pure.actions[j]];
        if (p == 0) skip = true;
        else weight *= p;
      }
    }
    if (skip) continue;
    total += weight * game.payoff_vector_at(k)[player];
  }
  return total;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

Rational expected_payoff(const NormalFormGame& game, const MixedProfile& profile, std::size_t player) {
  game.num_actions(player);
  game.validate(profile);
  return expectation(game, profile, player, kNone, 0);
}

std::vector<std::size_t> best_responses(const NormalFormGame& game, std::size_t player,
                                        const MixedProfile& others) {
  const std::size_t n = game.num_actions(player);
  game.validate(others, /*allow_missing_player=*/true, player);
  std::vector<Rational> values(n);
  for (std::size_t a = 0; a < n; ++a) values[a] = expectation(game, others, player, player, a);
  Rational best = values[0];
  for (const auto& v : values) if (v > best) best = v;
  std::vector<std::size_t> result;
  for (std::size_t a = 0; a < n; ++a) {
    if (values[a] == best) result.push_back(a);
  }
  return result;
}

bool is_pure_nash(const NormalFormGame& game, const PureProfile& profile) {
  game.validate(profile);
  const auto& current = game.payoff_vector(profile);
  PureProfile deviation = profile;
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    for (std::size_t a = 0; a < game.num_actions(j); ++a) {
      if (a == profile.actions[j]) continue;
      deviation.actions[j] = a;
      if (game.payoff(deviation, j) > current[j]) return false;
    }
    deviation.actions[j] = profile.actions[j];
  }
  return true;
}

std::vector<PureProfile> pure_nash(const NormalFormGame& game) {
  std::vector<PureProfile> result;
  for (std::size_t k = 0; k < game.num_profiles(); ++k) {
    PureProfile profile = game.profile_at(k);
    if (is_pure_nash(game, profile)) result.push_back(std::move(profile));
  }
  return result;
}

bool is_mixed_nash(const NormalFormGame& game, const MixedProfile& profile) {
  game.validate(profile);
  for (std::size_t j = 0; j < game.num_players(); ++j) {
    Rational current = expectation(game, profile, j, kNone, 0);
    for (std::size_t a = 0; a < game.num_actions(j); ++a) {
      if (expectation(game, profile, j, j, a) > current) return false;
    }
  }
  return true;
}

NormalFormGame bimatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                        const std::vector<std::vector<Rational>>& row_payoffs,
                        const std::vector<std::vector<Rational>>& col_payoffs) {
  const std::size_t rows = row_labels.size();
  const std::size_t cols = col_labels.size();
  if (row_payoffs.size() != rows || col_payoffs.size() != rows) {
    fail(ErrorKind::kInvalidInput, "bimatrix row count mismatch");
  }
  std::vector<std::vector<Rational>> payoffs;
  payoffs.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_payoffs[i].size() != cols || col_payoffs[i].size() != cols) {
      fail(ErrorKind::kInvalidInput, "bimatrix column count mismatch");
    }
    for (std::size_t k = 0; k < cols; ++k) payoffs.push_back({row_payoffs[i][k], col_payoffs[i][k]});
  }
  return NormalFormGame({std::move(row_labels), std::move(col_labels)}, std::move(payoffs));
}

NormalFormGame prisoners_dilemma(const Rational& t, const Rational& r, const Rational& p,
                                 const Rational& s) {
  return bimatrix({"C", "D"}, {"C", "D"}, {{r, s}, {t, p}}, {{r, t}, {s, p}});
}

NormalFormGame social_game(const Rational& m1, const Rational& m2, const Rational& m1p,
                           const Rational& m2p) {
  return bimatrix({"C", "D"}, {"C", "D"}, {{m1, m1}, {m1p, m1p}}, {{m2, m2p}, {m2, m2p}});
}

}  // namespace mgame
