#pragma once

#include <utility>
#include <vector>

#include "mgame/game.hpp"

namespace mgame {

// Equilibria of a 2x2 game found by support enumeration.
//
// `points` lists every equilibrium that is a vertex of the equilibrium set
// (all isolated equilibria are vertices). When the game is degenerate the set
// also contains line segments; each is reported by its two endpoints, which
// are themselves in `points`.
struct MixedNashSet {
  std::vector<MixedProfile> points;
  std::vector<std::pair<MixedProfile, MixedProfile>> segments;
  bool degenerate = false;

  // Membership in the full equilibrium set, segments included.
  bool contains(const MixedProfile& profile) const;
};

MixedNashSet mixed_nash_2x2(const NormalFormGame& game);

// (p, q): probabilities of the first action for player 1 and player 2.
MixedProfile mixture_2x2(const Rational& p, const Rational& q);

}  // namespace mgame
