#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "mgame/error.hpp"
#include "mgame/game.hpp"
#include "mgame/multigame.hpp"
#include "mgame/social_dg.hpp"

namespace testing {

using mgame::Rational;

inline Rational q(const char* text) { return mgame::parse_rational(text); }

inline mgame::PureProfile pp(std::size_t a, std::size_t b) { return mgame::PureProfile{{a, b}}; }

constexpr std::size_t C = 0;
constexpr std::size_t D = 1;

inline mgame::DoubleGame tournament_dg() { return mgame::build_dg(mgame::SocialParams::tournament()); }

// T=5, R=4, P=2, S=0, M=7/2: P-S > T-R.
inline mgame::SocialParams b_less_a_params() {
  return {Rational(5), Rational(4), Rational(2), Rational(0), q("7/2"), q("7/2"), Rational(0), Rational(0)};
}

inline Rational random_rational(std::mt19937_64& rng, int lo = -9, int hi = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(lo * max_den, hi * max_den);
  std::uniform_int_distribution<int> den(1, max_den);
  return mgame::make_rational(num(rng), den(rng));
}

inline mgame::NormalFormGame random_game(std::mt19937_64& rng, const std::vector<std::size_t>& actions) {
  std::vector<std::vector<std::string>> labels;
  std::size_t profiles = 1;
  for (std::size_t j = 0; j < actions.size(); ++j) {
    std::vector<std::string> l;
    for (std::size_t a = 0; a < actions[j]; ++a) l.push_back(std::string(1, static_cast<char>('A' + a)));
    labels.push_back(l);
    profiles *= actions[j];
  }
  // Small integer payoffs so ties, and with them multiple equilibria, are common.
  std::uniform_int_distribution<int> small(0, 3);
  std::vector<std::vector<Rational>> payoffs(profiles);
  for (auto& v : payoffs) {
    for (std::size_t j = 0; j < actions.size(); ++j) v.push_back(Rational(small(rng)));
  }
  return mgame::NormalFormGame(labels, payoffs);
}

inline mgame::DoubleGame random_dg(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> shape{n, n};
  auto g1 = random_game(rng, shape);
  std::vector<std::vector<Rational>> payoffs;
  for (std::size_t k = 0; k < g1.num_profiles(); ++k) {
    payoffs.push_back({random_rational(rng, 0, 6, 3), random_rational(rng, 0, 6, 3)});
  }
  std::vector<std::vector<std::string>> labels{g1.action_labels(0), g1.action_labels(1)};
  return mgame::DoubleGame(g1, mgame::NormalFormGame(labels, payoffs));
}

// Random strictly increasing grid with the extreme types and `size` values.
inline std::vector<Rational> random_types(std::mt19937_64& rng, std::size_t size,
                                          const std::vector<Rational>& prefer = {}) {
  std::vector<Rational> values{Rational(0), Rational(1)};
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> num(1, 11);
  std::size_t guard = 0;
  while (values.size() < size && guard++ < 1000) {
    Rational x;
    if (!prefer.empty() && pick(rng) == 0) {
      x = prefer[std::uniform_int_distribution<std::size_t>(0, prefer.size() - 1)(rng)];
    } else {
      x = mgame::make_rational(num(rng), 12);
    }
    if (x > 0 && x < 1 && std::find(values.begin(), values.end(), x) == values.end()) values.push_back(x);
  }
  std::sort(values.begin(), values.end());
  return values;
}

template <class F>
mgame::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const mgame::Error& e) {
    return e.kind();
  }
  FAIL("expected an mgame::Error");
  return mgame::ErrorKind::kInvalidInput;
}

}  // namespace testing
