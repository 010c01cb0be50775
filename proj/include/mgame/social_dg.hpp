#pragma once

#include <string>

#include "mgame/multigame.hpp"

namespace mgame {

// Prisoner's dilemma payoffs (T, R, P, S) plus the social game's cooperation
// rewards M1, M2 and defection values M1p, M2p.
struct SocialParams {
  Rational T, R, P, S;
  Rational M1, M2;
  Rational M1p, M2p;

  // T=5, R=3, P=1, S=0, M1=M2=5/2, M1p=M2p=0.
  static SocialParams tournament();
};

// Throws kValidation naming the first violated inequality, e.g. "R > M_1".
// The defection values must equal S unless allow_general_mprime is set.
void validate(const SocialParams& params, bool allow_general_mprime = false);

// g1 = prisoner's dilemma, g2 = social game.
DoubleGame build_dg(const SocialParams& params, bool allow_general_mprime = false);

// Weights at which player i's payoff lines cross:
// a_i: (D,D) = (C,D), b_i: (D,C) = (C,C), c_i: (D,C) = (C,D)
// (mirrored profiles for player 2).
struct CrossingPoints {
  Rational a1, b1, c1;
  Rational a2, b2, c2;
};

CrossingPoints crossing_points(const SocialParams& params);

enum class CaseTag { kALessB, kBLessA, kAEqualB };

const char* to_string(CaseTag tag);

CaseTag classify_case(const SocialParams& params);

enum class GridVariant { kI, kII };

// I: (0, a_i, b_i, 1). II: (0, a_i, (a_i + b_i)/2, b_i, 1), only when a_i < b_i.
TypeGrid example_grid(const SocialParams& params, GridVariant variant);

bool is_symmetric(const SocialParams& params);

}  // namespace mgame
