#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgame/multigame.hpp"

namespace mgame {

// ((s,u),(s,v)): `player` at grid type `type_index` plays `own_action` and
// both profiles are equilibria against the opponent's extreme types 0 and 1.
// For player 0 the profiles are (own, opp); for player 1 they are (opp, own).
struct CoherentPair {
  std::size_t player = 0;
  std::size_t type_index = 0;
  Rational own_type;
  std::size_t own_action = 0;
  std::size_t opp_at_zero = 0;
  std::size_t opp_at_one = 0;
};

std::vector<CoherentPair> coherent_pairs(const DoubleGame& dg, const TypeGrid& grid, std::size_t player,
                                         std::size_t type_index);

// Number p (1-based, 1 <= p <= number of opponent types) such that the
// zero-side profile is an equilibrium for the first p opponent types and the
// one-side profile for the rest. When both hold at some types the largest
// such prefix is returned. Throws kContract when no p exists.
std::size_t threshold(const DoubleGame& dg, const TypeGrid& grid, const CoherentPair& pair);

// (s,u), (s,v), (t,u), (t,v) are equilibria at the corners
// (0,0), (0,1), (1,0), (1,1) of the weight square.
struct RegularityQuadruple {
  std::size_t s = 0, t = 0, u = 0, v = 0;
  auto operator<=>(const RegularityQuadruple&) const = default;
};

std::vector<RegularityQuadruple> is_pure_regular(const DoubleGame& dg);

// Player 1 plays p1_actions[m] at type lambda_m, player 2 plays p2_actions[n]
// at type gamma_n.
struct BayesianPureProfile {
  std::vector<std::size_t> p1_actions;
  std::vector<std::size_t> p2_actions;
  auto operator<=>(const BayesianPureProfile&) const = default;
};

std::string format_bayesian(const DoubleGame& dg, const BayesianPureProfile& profile);

struct EvalCounter {
  std::size_t ne_condition_evaluations = 0;
};

struct RegularityResult {
  std::vector<RegularityQuadruple> quadruples;
  // Lexicographically first certificate (player 1 vector, then player 2).
  std::optional<BayesianPureProfile> certificate;
};

// Decides whether one action per type makes every type pair a local
// equilibrium. The work is linear in the number of types: best-response
// intervals are computed once, each type is tested against them once, and the
// remaining search runs over action subsets only.
RegularityResult completely_pure_regular(const DoubleGame& dg, const TypeGrid& grid,
                                         EvalCounter* counter = nullptr);

// Calls visit on every certificate exactly once until it returns false.
// Returns the number visited.
std::size_t for_each_certificate(const DoubleGame& dg, const TypeGrid& grid,
                                 const std::function<bool(const BayesianPureProfile&)>& visit);

// Exhaustive O(k*l) soundness check against the instantiated games.
bool certificate_is_sound(const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile);

// Joint probability table over (lambda_m, gamma_n), normalized on construction.
class TypePrior {
 public:
  explicit TypePrior(std::vector<std::vector<Rational>> table);

  static TypePrior independent(const std::vector<Rational>& lambda_probs,
                               const std::vector<Rational>& gamma_probs);
  static TypePrior uniform(std::size_t k, std::size_t l);
  static TypePrior point_mass(std::size_t k, std::size_t l, std::size_t m, std::size_t n);

  std::size_t rows() const { return table_.size(); }
  std::size_t cols() const { return table_.front().size(); }
  const Rational& at(std::size_t m, std::size_t n) const { return table_[m][n]; }
  Rational lambda_marginal(std::size_t m) const;
  Rational gamma_marginal(std::size_t n) const;
  const std::vector<std::vector<Rational>>& table() const { return table_; }

 private:
  std::vector<std::vector<Rational>> table_;
};

struct TypeReport {
  std::size_t player = 0;
  std::size_t type_index = 0;
  Rational marginal;
  std::size_t assigned = 0;
  // Conditional expected payoff of every action; empty when marginal is 0.
  std::vector<Rational> expected;
  bool best_response = true;
};

struct BayesCheck {
  bool equilibrium = true;
  std::vector<TypeReport> reports;
};

BayesCheck verify_bayes_ne(const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile,
                           const TypePrior& prior);

// A type pair (m, n) whose point-mass prior breaks `profile`, if any.
std::optional<std::pair<std::size_t, std::size_t>> point_mass_counter_prior(
    const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile);

// table[n][m]: local equilibria at (lambda_m, gamma_n).
std::vector<std::vector<std::vector<PureProfile>>> ne_table(const DoubleGame& dg, const TypeGrid& grid);

// Rows gamma descending, columns lambda ascending.
std::string ne_table_csv(const DoubleGame& dg, const TypeGrid& grid);

}  // namespace mgame
