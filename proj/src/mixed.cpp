#include "mgame/mixed.hpp"

#include <algorithm>
#include <set>

#include "mgame/error.hpp"

namespace mgame {

MixedProfile mixture_2x2(const Rational& p, const Rational& q) {
  return MixedProfile{{{p, Rational(1 - p)}, {q, Rational(1 - q)}}};
}

namespace {

struct Affine {
  Rational constant;
  Rational slope;

  Rational at(const Rational& x) const { return constant + slope * x; }
  bool identically_zero() const { return constant == 0 && slope == 0; }
};

// Player 1's payoff advantage of its first action as a function of q, and
// player 2's advantage of its first action as a function of p.
std::pair<Affine, Affine> advantages(const NormalFormGame& g) {
  auto u = [&](std::size_t i, std::size_t k, std::size_t player) -> const Rational& {
    return g.payoff(PureProfile{{i, k}}, player);
  };
  // row player: q*(u(0,0)-u(1,0)) + (1-q)*(u(0,1)-u(1,1))
  Rational d0 = u(0, 1, 0) - u(1, 1, 0);
  Rational d1 = u(0, 0, 0) - u(1, 0, 0);
  Affine row{d0, d1 - d0};
  Rational e0 = u(1, 0, 1) - u(1, 1, 1);
  Rational e1 = u(0, 0, 1) - u(0, 1, 1);
  Affine col{e0, e1 - e0};
  return {row, col};
}

bool best_reply(const Affine& advantage, const Rational& other, const Rational& own) {
  Rational d = advantage.at(other);
  if (d > 0) return own == 1;
  if (d < 0) return own == 0;
  return true;
}

std::vector<Rational> critical_values(const Affine& advantage) {
  std::set<Rational> values{Rational(0), Rational(1)};
  if (advantage.slope != 0) {
    Rational root = -advantage.constant / advantage.slope;
    if (in_unit_interval(root)) values.insert(root);
  }
  return {values.begin(), values.end()};
}

}  // namespace

bool MixedNashSet::contains(const MixedProfile& profile) const {
  if (std::find(points.begin(), points.end(), profile) != points.end()) return true;
  const Rational& p = profile.probabilities[0][0];
  const Rational& q = profile.probabilities[1][0];
  for (const auto& [a, b] : segments) {
    const Rational& pa = a.probabilities[0][0];
    const Rational& qa = a.probabilities[1][0];
    const Rational& pb = b.probabilities[0][0];
    const Rational& qb = b.probabilities[1][0];
    if (pa == pb && p == pa && q >= std::min(qa, qb) && q <= std::max(qa, qb)) return true;
    if (qa == qb && q == qa && p >= std::min(pa, pb) && p <= std::max(pa, pb)) return true;
  }
  return false;
}

MixedNashSet mixed_nash_2x2(const NormalFormGame& game) {
  if (game.num_players() != 2 || game.num_actions(0) != 2 || game.num_actions(1) != 2) {
    fail(ErrorKind::kInvalidInput, "mixed_nash_2x2 requires a 2-player game with 2 actions each");
  }
  const auto [row, col] = advantages(game);
  auto is_ne = [&](const Rational& p, const Rational& q) {
    return best_reply(row, q, p) && best_reply(col, p, q);
  };

  // Vertices of the equilibrium set lie on the grid of critical values: the
  // players' pure strategies and the opponent's indifference point.
  const auto ps = critical_values(col);
  const auto qs = critical_values(row);

  std::vector<std::pair<Rational, Rational>> vertices;
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      if (is_ne(p, q)) vertices.emplace_back(p, q);
    }
  }

  MixedNashSet result;
  auto add_segment = [&](const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
    Rational mp = (a.first + b.first) / 2;
    Rational mq = (a.second + b.second) / 2;
    if (is_ne(mp, mq)) {
      result.segments.emplace_back(mixture_2x2(a.first, a.second), mixture_2x2(b.first, b.second));
    }
  };
  // Consecutive vertices on a shared horizontal or vertical line.
  for (const auto& p : ps) {
    std::vector<std::pair<Rational, Rational>> line;
    for (const auto& v : vertices) if (v.first == p) line.push_back(v);
    for (std::size_t i = 1; i < line.size(); ++i) add_segment(line[i - 1], line[i]);
  }
  for (const auto& q : qs) {
    std::vector<std::pair<Rational, Rational>> line;
    for (const auto& v : vertices) if (v.second == q) line.push_back(v);
    std::sort(line.begin(), line.end());
    for (std::size_t i = 1; i < line.size(); ++i) add_segment(line[i - 1], line[i]);
  }
  result.degenerate = !result.segments.empty();

  // Descending weight on the first action, so pure points come out in the
  // same order as pure_nash.
  std::sort(vertices.begin(), vertices.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second > y.second;
  });
  for (const auto& [p, q] : vertices) result.points.push_back(mixture_2x2(p, q));
  return result;
}

}  // namespace mgame
