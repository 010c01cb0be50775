#include "mgame/multigame.hpp"

#include <algorithm>
#include <set>

#include "mgame/error.hpp"

namespace mgame {

MultiGame::MultiGame(std::vector<NormalFormGame> basic_games, bool uniform)
    : games_(std::move(basic_games)), uniform_(uniform) {
  if (games_.empty()) fail(ErrorKind::kInvalidInput, "a multi-game needs at least one basic game");
  const std::size_t n = games_.front().num_players();
  for (const auto& g : games_) {
    if (g.num_players() != n) {
      fail(ErrorKind::kInvalidInput, "all basic games must have the same number of players");
    }
    if (uniform_) {
      for (std::size_t j = 0; j < n; ++j) {
        if (g.action_labels(j) != games_.front().action_labels(j)) {
          fail(ErrorKind::kInvalidInput, "uniform multi-game: player " + std::to_string(j + 1) +
                                             " has different actions across basic games");
        }
      }
    }
  }
}

namespace {

void check_weights(const WeightVector& w, std::size_t players, std::size_t games) {
  if (w.weights.size() != players) {
    fail(ErrorKind::kInvalidInput, "weight vector needs one row per player");
  }
  for (std::size_t j = 0; j < players; ++j) {
    const auto& row = w.weights[j];
    if (row.size() != games) fail(ErrorKind::kInvalidInput, "weight row needs one entry per basic game");
    Rational total = 0;
    for (const auto& x : row) {
      if (!in_unit_interval(x)) fail(ErrorKind::kInvalidInput, "weights must lie in [0,1]");
      total += x;
    }
    if (total != 1) {
      fail(ErrorKind::kInvalidInput, "weights of player " + std::to_string(j + 1) + " sum to " +
                                         to_string(total) + ", not 1");
    }
  }
}

}  // namespace

NormalFormGame compose(const MultiGame& mg, const WeightVector& w) {
  const std::size_t n = mg.num_players();
  const std::size_t m = mg.num_games();
  check_weights(w, n, m);

  if (mg.uniform()) {
    const NormalFormGame& base = mg.game(0);
    std::vector<std::vector<Rational>> payoffs(base.num_profiles(), std::vector<Rational>(n));
    for (std::size_t k = 0; k < base.num_profiles(); ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        const auto& entry = mg.game(i).payoff_vector_at(k);
        for (std::size_t j = 0; j < n; ++j) payoffs[k][j] += w.weights[j][i] * entry[j];
      }
    }
    std::vector<std::vector<std::string>> labels;
    for (std::size_t j = 0; j < n; ++j) labels.push_back(base.action_labels(j));
    return NormalFormGame(std::move(labels), std::move(payoffs));
  }

  // Player j's composite action enumerates (s_1j, ..., s_Mj), game 0 slowest.
  std::vector<std::vector<std::string>> labels(n);
  std::vector<std::vector<std::vector<std::size_t>>> parts(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::size_t>> combos{{}};
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& prefix : combos) {
        for (std::size_t a = 0; a < mg.game(i).num_actions(j); ++a) {
          auto extended = prefix;
          extended.push_back(a);
          next.push_back(std::move(extended));
        }
      }
      combos = std::move(next);
    }
    for (const auto& combo : combos) {
      std::string label;
      for (std::size_t i = 0; i < m; ++i) {
        if (i) label += '+';
        label += mg.game(i).action_label(j, combo[i]);
      }
      labels[j].push_back(std::move(label));
    }
    parts[j] = std::move(combos);
  }

  std::size_t count = 1;
  for (const auto& l : labels) count *= l.size();
  std::vector<std::vector<Rational>> payoffs(count, std::vector<Rational>(n));
  std::vector<std::size_t> index(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      PureProfile local;
      for (std::size_t j = 0; j < n; ++j) local.actions.push_back(parts[j][index[j]][i]);
      const auto& entry = mg.game(i).payoff_vector(local);
      for (std::size_t j = 0; j < n; ++j) payoffs[k][j] += w.weights[j][i] * entry[j];
    }
    for (std::size_t j = n; j-- > 0;) {
      if (++index[j] < labels[j].size()) break;
      index[j] = 0;
    }
  }
  return NormalFormGame(std::move(labels), std::move(payoffs));
}

DoubleGame::DoubleGame(NormalFormGame g1, NormalFormGame g2) : g1_(std::move(g1)), g2_(std::move(g2)) {
  if (g1_.num_players() != 2 || g2_.num_players() != 2) {
    fail(ErrorKind::kInvalidInput, "double game basic games must have two players");
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (g1_.action_labels(j) != g2_.action_labels(j)) {
      fail(ErrorKind::kInvalidInput, "double game is not uniform: player " + std::to_string(j + 1) +
                                         " actions differ between the basic games");
    }
  }
}

Rational DoubleGame::weighted_payoff(const PureProfile& profile, std::size_t player,
                                     const Rational& w) const {
  return (1 - w) * g1_.payoff(profile, player) + w * g2_.payoff(profile, player);
}

NormalFormGame instantiate(const DoubleGame& dg, const Rational& lambda, const Rational& gamma) {
  if (!in_unit_interval(lambda) || !in_unit_interval(gamma)) {
    fail(ErrorKind::kInvalidInput, "weights lambda and gamma must lie in [0,1]");
  }
  std::vector<std::vector<Rational>> payoffs;
  payoffs.reserve(dg.g1().num_profiles());
  for (std::size_t k = 0; k < dg.g1().num_profiles(); ++k) {
    const auto& x = dg.g1().payoff_vector_at(k);
    const auto& y = dg.g2().payoff_vector_at(k);
    payoffs.push_back({(1 - lambda) * x[0] + lambda * y[0], (1 - gamma) * x[1] + gamma * y[1]});
  }
  return NormalFormGame({dg.g1().action_labels(0), dg.g1().action_labels(1)}, std::move(payoffs));
}

void TypeGrid::validate() const {
  for (const auto* values : {&lambda, &gamma}) {
    const char* name = values == &lambda ? "lambda" : "gamma";
    if (values->size() < 2) {
      fail(ErrorKind::kInvalidInput, std::string(name) + " grid needs at least the types 0 and 1");
    }
    if (values->front() != 0 || values->back() != 1) {
      fail(ErrorKind::kInvalidInput, std::string(name) + " grid must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < values->size(); ++i) {
      if (!((*values)[i - 1] < (*values)[i])) {
        fail(ErrorKind::kInvalidInput, std::string(name) + " grid must be strictly increasing");
      }
    }
  }
}

Interval Interval::intersect(const Interval& other) const {
  if (empty || other.empty) return none();
  Interval r{std::max(lo, other.lo), std::min(hi, other.hi), false};
  if (r.lo > r.hi) return none();
  return r;
}

bool Interval::operator==(const Interval& other) const {
  if (empty || other.empty) return empty == other.empty;
  return lo == other.lo && hi == other.hi;
}

std::string Interval::to_string() const {
  if (empty) return "{}";
  return "[" + mgame::to_string(lo) + "," + mgame::to_string(hi) + "]";
}

PureProfile oriented_profile(std::size_t player, std::size_t own, std::size_t opp) {
  return player == 0 ? PureProfile{{own, opp}} : PureProfile{{opp, own}};
}

Interval br_interval(const DoubleGame& dg, std::size_t player, std::size_t own, std::size_t opp) {
  if (player > 1) fail(ErrorKind::kInvalidInput, "double games have players 0 and 1");
  const PureProfile here = oriented_profile(player, own, opp);
  const Rational& x = dg.g1().payoff(here, player);
  const Rational& y = dg.g2().payoff(here, player);
  Interval result = Interval::unit();
  for (std::size_t alt = 0; alt < dg.num_actions(player); ++alt) {
    if (alt == own) continue;
    const PureProfile there = oriented_profile(player, alt, opp);
    // (x - x') + w * ((y - y') - (x - x')) >= 0
    Rational c = x - dg.g1().payoff(there, player);
    Rational s = (y - dg.g2().payoff(there, player)) - c;
    if (s == 0) {
      if (c < 0) return Interval::none();
      continue;
    }
    Rational root = -c / s;
    Interval half = s > 0 ? Interval{root, Rational(1), false} : Interval{Rational(0), root, false};
    if (half.lo > half.hi) return Interval::none();
    result = result.intersect(half);
    if (result.empty) return result;
  }
  return result;
}

Rectangle ne_region(const DoubleGame& dg, const PureProfile& profile) {
  dg.g1().validate(profile);
  return {br_interval(dg, 0, profile[0], profile[1]), br_interval(dg, 1, profile[1], profile[0])};
}

NeRegions::NeRegions(const DoubleGame& dg) : cols_(dg.num_actions(1)) {
  for (std::size_t k = 0; k < dg.g1().num_profiles(); ++k) {
    PureProfile profile = dg.g1().profile_at(k);
    Rectangle rect = ne_region(dg, profile);
    regions_.emplace_back(std::move(profile), std::move(rect));
  }
}

const Rectangle& NeRegions::region(const PureProfile& profile) const {
  return regions_.at(profile[0] * cols_ + profile[1]).second;
}

std::vector<PureProfile> NeRegions::equilibria_at(const Rational& lambda, const Rational& gamma) const {
  if (!in_unit_interval(lambda) || !in_unit_interval(gamma)) {
    fail(ErrorKind::kInvalidInput, "weights lambda and gamma must lie in [0,1]");
  }
  std::vector<PureProfile> result;
  for (const auto& [profile, rect] : regions_) {
    if (rect.first.contains(lambda) && rect.second.contains(gamma)) result.push_back(profile);
  }
  return result;
}

std::vector<PureProfile> local_ne(const DoubleGame& dg, const Rational& lambda, const Rational& gamma) {
  return NeRegions(dg).equilibria_at(lambda, gamma);
}

bool AxisCell::contains(const Rational& x) const {
  bool above = lo_closed ? x >= lo : x > lo;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

Rational AxisCell::sample() const {
  if (is_point()) return lo;
  return (lo + hi) / 2;
}

std::string AxisCell::describe(const std::string& var) const {
  if (is_point()) return var + "=" + to_string(lo);
  return to_string(lo) + (lo_closed ? "<=" : "<") + var + (hi_closed ? "<=" : "<") + to_string(hi);
}

std::vector<AxisCell> partition_unit(const std::vector<Rational>& breakpoints, bool zero_is_break,
                                     bool one_is_break) {
  std::vector<AxisCell> cells;
  Rational lo = 0;
  bool lo_closed = true;
  if (zero_is_break) {
    cells.push_back({Rational(0), Rational(0), true, true});
    lo_closed = false;
  }
  for (const auto& x : breakpoints) {
    cells.push_back({lo, x, lo_closed, false});
    cells.push_back({x, x, true, true});
    lo = x;
    lo_closed = false;
  }
  if (one_is_break) {
    cells.push_back({lo, Rational(1), lo_closed, false});
    cells.push_back({Rational(1), Rational(1), true, true});
  } else {
    cells.push_back({lo, Rational(1), lo_closed, true});
  }
  return cells;
}

RegionDiagram region_diagram(const DoubleGame& dg) {
  NeRegions regions(dg);
  RegionDiagram diagram;
  for (std::size_t player = 0; player < 2; ++player) {
    std::set<Rational> breaks;
    bool zero = false;
    bool one = false;
    for (std::size_t own = 0; own < dg.num_actions(player); ++own) {
      for (std::size_t opp = 0; opp < dg.num_actions(1 - player); ++opp) {
        Interval iv = br_interval(dg, player, own, opp);
        if (iv.empty) continue;
        for (const auto& x : {iv.lo, iv.hi}) {
          if (x > 0 && x < 1) breaks.insert(x);
        }
        if (iv.hi == 0) zero = true;
        if (iv.lo == 1) one = true;
      }
    }
    auto& out_breaks = player == 0 ? diagram.lambda_breaks : diagram.gamma_breaks;
    auto& out_cells = player == 0 ? diagram.lambda_cells : diagram.gamma_cells;
    out_breaks.assign(breaks.begin(), breaks.end());
    out_cells = partition_unit(out_breaks, zero, one);
  }
  for (std::size_t g = 0; g < diagram.gamma_cells.size(); ++g) {
    for (std::size_t l = 0; l < diagram.lambda_cells.size(); ++l) {
      diagram.cells.push_back(
          {g, l, regions.equilibria_at(diagram.lambda_cells[l].sample(), diagram.gamma_cells[g].sample())});
    }
  }
  return diagram;
}

ColumnPayoffs column_payoffs(const NormalFormGame& game) {
  if (game.num_players() != 2 || game.num_actions(0) != 2 || game.num_actions(1) != 2) {
    fail(ErrorKind::kInvalidInput, "mixed interpolation needs a 2x2 game");
  }
  auto at = [&](std::size_t i, std::size_t k) { return game.payoff(PureProfile{{i, k}}, 1); };
  return {at(0, 0), at(0, 1), at(1, 0), at(1, 1)};
}

Rational mixed_interpolate(const Rational& p, const Rational& p0, const Rational& p1,
                           const Rational& gamma, const ColumnPayoffs& at_zero,
                           const ColumnPayoffs& at_one) {
  for (const auto* x : {&p, &p0, &p1, &gamma}) {
    if (!in_unit_interval(*x)) fail(ErrorKind::kInvalidInput, "probabilities and gamma must lie in [0,1]");
  }
  if (gamma == 0) return p0;
  if (gamma == 1) return p1;
  // Player 2's advantage of C over D against sigma in each extreme game.
  Rational a = p * (at_zero.cc - at_zero.cd) + (1 - p) * (at_zero.dc - at_zero.dd);
  Rational b = p * (at_one.cc - at_one.cd) + (1 - p) * (at_one.dc - at_one.dd);
  Rational den = (1 - gamma) * a + gamma * b;
  if (den == 0) {
    fail(ErrorKind::kDegenerate, "interpolation denominator vanishes at gamma=" + to_string(gamma));
  }
  return ((1 - gamma) * p0 * a + gamma * p1 * b) / den;
}

Rational mixed_interpolate(const DoubleGame& dg, const Rational& lambda, const Rational& p,
                           const Rational& p0, const Rational& p1, const Rational& gamma) {
  return mixed_interpolate(p, p0, p1, gamma, column_payoffs(instantiate(dg, lambda, 0)),
                           column_payoffs(instantiate(dg, lambda, 1)));
}

}  // namespace mgame
