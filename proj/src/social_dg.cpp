#include "mgame/social_dg.hpp"

#include "mgame/error.hpp"

namespace mgame {

SocialParams SocialParams::tournament() {
  return {5, 3, 1, 0, Rational(5, 2), Rational(5, 2), 0, 0};
}

void validate(const SocialParams& x, bool allow_general_mprime) {
  auto require = [](bool ok, const char* inequality) {
    if (!ok) fail(ErrorKind::kValidation, std::string("parameters violate ") + inequality);
  };
  require(x.T > x.R, "T > R");
  require(x.R > x.P, "R > P");
  require(x.P > x.S, "P > S");
  require(2 * x.R > x.T + x.S, "R > (T+S)/2");
  require(x.M1 > x.M1p, "M_1 > M'_1");
  require(x.M2 > x.M2p, "M_2 > M'_2");
  require(x.R > x.M1, "R > M_1");
  require(x.R > x.M2, "R > M_2");
  require(x.M1 > x.P, "M_1 > P");
  require(x.M2 > x.P, "M_2 > P");
  require(2 * x.M1 > x.R + x.P, "M_1 > (R+P)/2");
  require(2 * x.M2 > x.R + x.P, "M_2 > (R+P)/2");
  if (!allow_general_mprime) {
    require(x.M1p == x.S, "M'_1 = S");
    require(x.M2p == x.S, "M'_2 = S");
  }
}

DoubleGame build_dg(const SocialParams& params, bool allow_general_mprime) {
  validate(params, allow_general_mprime);
  return DoubleGame(prisoners_dilemma(params.T, params.R, params.P, params.S),
                    social_game(params.M1, params.M2, params.M1p, params.M2p));
}

CrossingPoints crossing_points(const SocialParams& x) {
  // With M' = S these are (P-S)/(M+P-2S), (T-R)/(T-S+M-R), (T-S)/(M+T-2S).
  auto a = [&](const Rational& m, const Rational& mp) -> Rational { return (x.P - x.S) / (m - mp + x.P - x.S); };
  auto b = [&](const Rational& m, const Rational& mp) -> Rational { return (x.T - x.R) / (x.T - x.R + m - mp); };
  auto c = [&](const Rational& m, const Rational& mp) -> Rational { return (x.T - x.S) / (x.T - x.S + m - mp); };
  return {a(x.M1, x.M1p), b(x.M1, x.M1p), c(x.M1, x.M1p), a(x.M2, x.M2p), b(x.M2, x.M2p), c(x.M2, x.M2p)};
}

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kALessB: return "A_LT_B";
    case CaseTag::kBLessA: return "B_LT_A";
    case CaseTag::kAEqualB: return "A_EQ_B";
  }
  return "?";
}

CaseTag classify_case(const SocialParams& x) {
  const Rational lhs = x.P - x.S;
  const Rational rhs = x.T - x.R;
  if (lhs < rhs) return CaseTag::kALessB;
  if (lhs > rhs) return CaseTag::kBLessA;
  return CaseTag::kAEqualB;
}

TypeGrid example_grid(const SocialParams& params, GridVariant variant) {
  const CrossingPoints cp = crossing_points(params);
  if (variant == GridVariant::kI) {
    if (cp.a1 == cp.b1 || cp.a2 == cp.b2) fail(ErrorKind::kUnsupported, "grid I needs a_i != b_i");
    // Listed in increasing order, so b_i comes first when b_i < a_i.
    auto grid_for = [](const Rational& a, const Rational& b) {
      return a < b ? std::vector<Rational>{0, a, b, 1} : std::vector<Rational>{0, b, a, 1};
    };
    return {grid_for(cp.a1, cp.b1), grid_for(cp.a2, cp.b2)};
  }
  if (!(cp.a1 < cp.b1) || !(cp.a2 < cp.b2)) {
    fail(ErrorKind::kUnsupported, "grid II is only defined when a_i < b_i (P-S < T-R)");
  }
  return {{0, cp.a1, (cp.a1 + cp.b1) / 2, cp.b1, 1}, {0, cp.a2, (cp.a2 + cp.b2) / 2, cp.b2, 1}};
}

bool is_symmetric(const SocialParams& params) {
  return params.M1 == params.M2 && params.M1p == params.M2p;
}

}  // namespace mgame
