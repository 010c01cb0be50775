#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgame/game.hpp"

namespace mgame {

// M basic games played at once by the same N players.
class MultiGame {
 public:
  // A uniform multi-game plays one action across all basic games, which
  // requires every player's action list to be identical in every game.
  // Non-uniform multi-games pick an action per basic game.
  explicit MultiGame(std::vector<NormalFormGame> basic_games, bool uniform = true);

  std::size_t num_games() const { return games_.size(); }
  std::size_t num_players() const { return games_.front().num_players(); }
  bool uniform() const { return uniform_; }
  const NormalFormGame& game(std::size_t i) const { return games_.at(i); }
  const std::vector<NormalFormGame>& games() const { return games_; }

 private:
  std::vector<NormalFormGame> games_;
  bool uniform_;
};

// weights[j][i]: share of player j's investment in basic game i.
struct WeightVector {
  std::vector<std::vector<Rational>> weights;
};

// Payoff of player j is sum_i weights[j][i] * payoff of j in game i.
// Non-uniform action labels are the per-game labels joined by '+'.
NormalFormGame compose(const MultiGame& mg, const WeightVector& w);

// Two-player uniform multi-game with two basic games. Player 1 invests
// (1 - lambda, lambda) and player 2 (1 - gamma, gamma) in (g1, g2).
class DoubleGame {
 public:
  DoubleGame(NormalFormGame g1, NormalFormGame g2);

  const NormalFormGame& g1() const { return g1_; }
  const NormalFormGame& g2() const { return g2_; }
  std::size_t num_actions(std::size_t player) const { return g1_.num_actions(player); }
  const std::string& action_label(std::size_t player, std::size_t action) const {
    return g1_.action_label(player, action);
  }

  // Payoff of `player` at `profile` when that player's weight on g2 is w.
  Rational weighted_payoff(const PureProfile& profile, std::size_t player, const Rational& w) const;

  bool operator==(const DoubleGame&) const = default;

 private:
  NormalFormGame g1_;
  NormalFormGame g2_;
};

NormalFormGame instantiate(const DoubleGame& dg, const Rational& lambda, const Rational& gamma);

// Strictly increasing weights for each player, starting at 0 and ending at 1.
struct TypeGrid {
  std::vector<Rational> lambda;
  std::vector<Rational> gamma;

  const std::vector<Rational>& values(std::size_t player) const { return player == 0 ? lambda : gamma; }
  void validate() const;
};

// Closed interval inside [0, 1], possibly empty.
struct Interval {
  Rational lo = 0;
  Rational hi = 1;
  bool empty = false;

  static Interval unit() { return {}; }
  static Interval none() { return {Rational(1), Rational(0), true}; }

  bool contains(const Rational& x) const { return !empty && x >= lo && x <= hi; }
  Interval intersect(const Interval& other) const;
  bool operator==(const Interval& other) const;
  std::string to_string() const;
};

// Profile of a two-player game from the point of view of `player`.
PureProfile oriented_profile(std::size_t player, std::size_t own, std::size_t opp);

// Weights of `player` at which `own` is a weak best response to `opp`.
Interval br_interval(const DoubleGame& dg, std::size_t player, std::size_t own, std::size_t opp);

using Rectangle = std::pair<Interval, Interval>;

// (lambda, gamma) with profile an equilibrium of the instantiated game.
Rectangle ne_region(const DoubleGame& dg, const PureProfile& profile);

// Equilibrium rectangles of every profile, computed once.
class NeRegions {
 public:
  explicit NeRegions(const DoubleGame& dg);

  const Rectangle& region(const PureProfile& profile) const;
  std::vector<PureProfile> equilibria_at(const Rational& lambda, const Rational& gamma) const;
  const std::vector<std::pair<PureProfile, Rectangle>>& all() const { return regions_; }

 private:
  std::size_t cols_;
  std::vector<std::pair<PureProfile, Rectangle>> regions_;
};

// Pure equilibria of instantiate(dg, lambda, gamma), read off the rectangles.
std::vector<PureProfile> local_ne(const DoubleGame& dg, const Rational& lambda, const Rational& gamma);

// One cell of a partition of [0, 1]: a breakpoint or the open stretch
// between two breakpoints (closed at 0 and 1 unless those are breakpoints).
struct AxisCell {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const;
  Rational sample() const;
  // e.g. "0<=lambda<2/7", "lambda=2/7"
  std::string describe(const std::string& var) const;
};

std::vector<AxisCell> partition_unit(const std::vector<Rational>& breakpoints,
                                     bool zero_is_break, bool one_is_break);

struct RegionCell {
  std::size_t gamma_cell;
  std::size_t lambda_cell;
  std::vector<PureProfile> equilibria;
};

struct RegionDiagram {
  std::vector<Rational> lambda_breaks;
  std::vector<Rational> gamma_breaks;
  std::vector<AxisCell> lambda_cells;
  std::vector<AxisCell> gamma_cells;
  // Row-major: gamma cells from low to high, lambda cells within a row.
  std::vector<RegionCell> cells;

  const RegionCell& at(std::size_t gamma_cell, std::size_t lambda_cell) const {
    return cells[gamma_cell * lambda_cells.size() + lambda_cell];
  }
};

RegionDiagram region_diagram(const DoubleGame& dg);

// Player 2's payoffs at (C,C), (C,D), (D,C), (D,D) of a 2x2 game.
struct ColumnPayoffs {
  Rational cc, cd, dc, dd;
};

ColumnPayoffs column_payoffs(const NormalFormGame& game);

// Player 2's interpolated first-action weight between a coherent pair of
// mixed equilibria (sigma, sigma_0) and (sigma, sigma_1); p is player 1's
// first-action weight. Throws kDegenerate when the weighting denominator
// vanishes at an interior gamma.
Rational mixed_interpolate(const Rational& p, const Rational& p0, const Rational& p1,
                           const Rational& gamma, const ColumnPayoffs& at_zero,
                           const ColumnPayoffs& at_one);

Rational mixed_interpolate(const DoubleGame& dg, const Rational& lambda, const Rational& p,
                           const Rational& p0, const Rational& p1, const Rational& gamma);

}  // namespace mgame
