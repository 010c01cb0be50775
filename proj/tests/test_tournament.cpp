#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "mgame/io.hpp"
#include "mgame/social_dg.hpp"
#include "mgame/tournament.hpp"

using namespace mgame;
using testing::C;
using testing::D;

namespace {

struct Fixture {
  DoubleGame dg = testing::tournament_dg();
  TypeGrid grid = example_grid(SocialParams::tournament(), GridVariant::kII);
  StrategyRegistry registry = StrategyRegistry::with_builtins();

  MatchRecord match(const std::string& a, const std::string& b, InfoMode mode = InfoMode::kComplete,
                    std::size_t rounds = 200) const {
    return play_match(StrategySpec::parse(a), StrategySpec::parse(b), registry, dg, grid,
                      MatchConfig{rounds, mode, 0});
  }

  std::string moves(const MatchRecord& m, bool first, std::size_t count) const {
    std::string out;
    for (std::size_t i = 0; i < count && i < m.rounds.size(); ++i) {
      out += dg.action_label(first ? 0 : 1, first ? m.rounds[i].action_a : m.rounds[i].action_b);
    }
    return out;
  }
};

// Steps its coefficient by two: a contract breach.
class Jumper : public Strategy {
 public:
  std::string name() const override { return "JUMP"; }
  std::size_t initial_coeff_index(const std::vector<Rational>&) const override { return 0; }
  int coeff_delta(const Observation&) override { return 2; }
  std::size_t action(const Observation&) override { return C; }
};

Observation observation(const Fixture& f, std::size_t round, std::optional<std::size_t> opp_last) {
  Observation obs;
  obs.round = round;
  obs.player = 0;
  obs.opp_last = opp_last;
  obs.own_last = opp_last ? std::optional<std::size_t>(C) : std::nullopt;
  obs.own_coeff_index = 0;
  obs.own_coeff = 0;
  obs.opp_coeff = Rational(0);
  obs.dg = &f.dg;
  obs.own_grid = &f.grid.lambda;
  return obs;
}

}  // namespace

TEST_CASE("coefficient update rule") {
  CHECK(seg_update(Move::kCooperate, Move::kCooperate) == 0);
  CHECK(seg_update(Move::kCooperate, Move::kDefect) == 1);
  CHECK(seg_update(Move::kDefect, Move::kCooperate) == -1);
  CHECK(seg_update(Move::kDefect, Move::kDefect) == 1);
}

TEST_CASE("equilibrium lookup with the defect tiebreak") {
  const Fixture f;
  const Rational mid(23, 63);
  CHECK(ne_lookup(f.dg, 0, 0).action == D);
  CHECK(ne_lookup(f.dg, 1, 1).action == C);
  CHECK(ne_lookup(f.dg, mid, mid).action == D);
  CHECK(ne_lookup(f.dg, 1, 0).action == C);
  CHECK_FALSE(ne_lookup(f.dg, 0, 0).fallback);

  // No pure equilibrium: fall back to the best own payoff.
  const auto mp = bimatrix({"H", "T"}, {"H", "T"}, {{1, -1}, {-1, 2}}, {{-1, 1}, {1, -1}});
  const auto r = ne_lookup(DoubleGame(mp, mp), 0, 0);
  CHECK(r.fallback);
  CHECK(r.action == 1);
}

TEST_CASE("built-in strategies step") {
  const Fixture f;
  auto allc = f.registry.make(StrategySpec::parse("ALLC"), match_rng(0, 0, 0));
  auto alld = f.registry.make(StrategySpec::parse("ALLD"), match_rng(0, 0, 0));
  auto tft = f.registry.make(StrategySpec::parse("TFT"), match_rng(0, 0, 0));
  const auto r1 = observation(f, 1, std::nullopt);
  const auto r2 = observation(f, 2, D);
  CHECK(step(*alld, r2).coeff_delta == 0);
  CHECK(step(*alld, r2).action == D);
  CHECK(step(*allc, r2).coeff_delta == 0);
  CHECK(step(*allc, r2).action == C);
  CHECK(step(*tft, r1).action == C);
  CHECK(step(*tft, r2).action == D);
  CHECK(step(*tft, observation(f, 3, C)).action == C);
  Jumper jumper;
  CHECK(testing::error_kind_of([&] { step(jumper, r2); }) == ErrorKind::kContract);
  CHECK(step(jumper, r1).coeff_delta == 0);
}

TEST_CASE("strategy specs") {
  const auto spec = StrategySpec::parse("ALLC@1/2");
  CHECK(spec.name == "ALLC");
  CHECK(spec.initial_coeff == Rational(1, 2));
  CHECK(spec.label() == "ALLC@1/2");
  CHECK(StrategySpec::parse("SEG").label() == "SEG");
  const Fixture f;
  CHECK(f.registry.names() == std::vector<std::string>{"ALLC", "ALLD", "SEG", "TFT"});
  CHECK(testing::error_kind_of([&] { f.registry.make(StrategySpec::parse("ANE"), match_rng(0, 0, 0)); }) ==
        ErrorKind::kInvalidInput);
  CHECK(testing::error_kind_of([&] { f.match("ALLC@1/2", "ALLD"); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("benchmark scores") {
  const Fixture f;
  auto totals = [](const MatchRecord& m) { return std::make_pair(m.total_a, m.total_b); };
  CHECK(totals(f.match("ALLD", "ALLD")) == std::make_pair(Rational(200), Rational(200)));
  CHECK(totals(f.match("ALLC@0", "ALLC@0")) == std::make_pair(Rational(600), Rational(600)));
  CHECK(totals(f.match("SEG", "ALLC")) == std::make_pair(Rational(1000), Rational(500)));
  CHECK(totals(f.match("ALLC@1", "ALLC@1")) == std::make_pair(Rational(500), Rational(500)));
  for (const char* other : {"SEG", "ALLC", "ALLD", "TFT", "ALLC@0", "ALLD@1"}) {
    CHECK(f.match("ALLD@1", other).total_a == 0);
    CHECK(f.match(other, "ALLD@1").total_b == 0);
  }
}

TEST_CASE("SEG trajectories") {
  const Fixture f;
  const auto vs_alld = f.match("SEG", "ALLD");
  CHECK(f.moves(vs_alld, true, 8) == "DDCCCCCC");
  for (std::size_t r = 6; r < 200; ++r) CHECK(vs_alld.rounds[r].action_a == C);
  CHECK(vs_alld.total_a == Rational(20737, 42));
  CHECK(vs_alld.total_b == 992);

  const auto vs_allc = f.match("SEG", "ALLC");
  for (const auto& r : vs_allc.rounds) CHECK(r.action_a == D);

  const auto vs_tft = f.match("SEG", "TFT");
  CHECK(f.moves(vs_tft, true, 8) == "DDDCCCCC");
  CHECK(f.moves(vs_tft, false, 8) == "CDDDCCCC");
  for (std::size_t r = 5; r < 200; ++r) {
    CHECK(vs_tft.rounds[r].action_a == C);
    CHECK(vs_tft.rounds[r].action_b == C);
  }
  CHECK(vs_tft.total_a == Rational(7729, 14));
  CHECK(vs_tft.total_b == 595);

  // Player 2 seat: the same play mirrored.
  const auto mirrored = f.match("ALLD", "SEG");
  CHECK(f.moves(mirrored, false, 8) == "DDCCCCCC");
  CHECK(mirrored.total_b == vs_alld.total_a);

  for (const auto* m : {&vs_alld, &vs_allc, &vs_tft}) {
    CHECK(m->rounds.front().action_a == D);
    CHECK(m->rounds.front().coeff_index_a == 0);
    for (std::size_t r = 1; r < m->rounds.size(); ++r) {
      const auto da = static_cast<long>(m->rounds[r].coeff_index_a) - static_cast<long>(m->rounds[r - 1].coeff_index_a);
      const auto db = static_cast<long>(m->rounds[r].coeff_index_b) - static_cast<long>(m->rounds[r - 1].coeff_index_b);
      CHECK(std::abs(da) <= 1);
      CHECK(std::abs(db) <= 1);
    }
  }
}

TEST_CASE("SEG in incomplete-information mode") {
  const Fixture f;
  const auto vs_alld = f.match("SEG", "ALLD", InfoMode::kIncomplete);
  CHECK(vs_alld.rounds.front().action_a == D);
  for (std::size_t r = 6; r < 200; ++r) CHECK(vs_alld.rounds[r].action_a == C);
  const auto vs_allc = f.match("SEG", "ALLC", InfoMode::kIncomplete);
  CHECK(vs_allc.total_a <= 1000);
}

TEST_CASE("match totals and bounds") {
  const Fixture f;
  for (const char* a : {"SEG", "ALLC", "ALLD", "TFT"}) {
    for (const char* b : {"SEG", "ALLC", "ALLD", "TFT"}) {
      const auto m = f.match(a, b);
      REQUIRE(m.rounds.size() == 200);
      Rational sa = 0, sb = 0;
      for (const auto& r : m.rounds) {
        sa += r.payoff_a;
        sb += r.payoff_b;
        CHECK(r.coeff_a == f.grid.lambda[r.coeff_index_a]);
        CHECK(r.payoff_a == f.dg.weighted_payoff(PureProfile{{r.action_a, r.action_b}}, 0, r.coeff_a));
      }
      CHECK(sa == m.total_a);
      CHECK(sb == m.total_b);
      CHECK(m.total_a >= 0);
      CHECK(m.total_a <= 1000);
    }
  }
}

TEST_CASE("contract breach forfeits the match") {
  const Fixture f;
  Jumper jumper;
  auto alld = f.registry.make(StrategySpec::parse("ALLD"), match_rng(0, 0, 0));
  const auto m = play_match(jumper, *alld, f.dg, f.grid, 200, InfoMode::kComplete);
  CHECK(m.forfeit_a);
  CHECK_FALSE(m.forfeit_b);
  CHECK(m.total_a == 0);
  CHECK(m.rounds.size() == 1);
  CHECK(m.total_b == 5);
  CHECK(m.forfeit_reason.find("JUMP") != std::string::npos);
}

TEST_CASE("round robin") {
  const Fixture f;
  const TournamentConfig config{200, InfoMode::kComplete, 0, 1};
  const auto solo = run_tournament({StrategySpec::parse("ALLD")}, f.registry, f.dg, f.grid, config);
  REQUIRE(solo.standings.size() == 1);
  CHECK(solo.standings[0].total == 200);
  CHECK(solo.standings[0].average == 200);
  CHECK(solo.matches.size() == 1);

  const auto saint = run_tournament({StrategySpec::parse("ALLC@1")}, f.registry, f.dg, f.grid, config);
  CHECK(saint.standings[0].total == 500);

  std::vector<StrategySpec> four;
  for (const char* s : {"SEG", "ALLC", "ALLD", "TFT"}) four.push_back(StrategySpec::parse(s));
  const auto result = run_tournament(four, f.registry, f.dg, f.grid, config);
  CHECK(result.matches.size() == 10);
  REQUIRE(result.standings.size() == 4);
  CHECK(result.standings[0].strategy == "SEG");
  CHECK(result.standings[0].total == Rational(17771, 7));
  CHECK(result.standings[0].average == Rational(17771, 28));
  CHECK(result.standings[0].round1_action == "D");
  CHECK(result.standings[1].strategy == "ALLD");
  CHECK(result.standings[1].average == 599);
  CHECK(result.standings[2].strategy == "ALLC");
  CHECK(result.standings[2].average == 500);
  CHECK(result.standings[2].initial_coeff == 1);
  CHECK(result.standings[3].strategy == "TFT");
  CHECK(result.standings[3].average == Rational(997, 2));
  for (std::size_t i = 1; i < 4; ++i) CHECK(result.standings[0].average > result.standings[i].average);
  for (const auto& s : result.standings) CHECK(s.matches == 4);

  // Threads do not change anything.
  const auto parallel = run_tournament(four, f.registry, f.dg, f.grid, TournamentConfig{200, InfoMode::kComplete, 0, 4});
  CHECK(io::dump(io::tournament_to_json(f.dg, parallel, true)) == io::dump(io::tournament_to_json(f.dg, result, true)));
  CHECK(testing::error_kind_of([&] {
          run_tournament({StrategySpec::parse("SEG"), StrategySpec::parse("SEG")}, f.registry, f.dg, f.grid, config);
        }) == ErrorKind::kInvalidInput);
}

TEST_CASE("custom strategies plug into the registry") {
  Fixture f;
  f.registry.add("JUMP", [](const StrategySpec&, std::mt19937_64) { return std::make_unique<Jumper>(); });
  const TournamentConfig config{10, InfoMode::kComplete, 7, 1};
  const auto result =
      run_tournament({StrategySpec::parse("JUMP"), StrategySpec::parse("ALLC")}, f.registry, f.dg, f.grid, config);
  CHECK(result.standings.front().strategy == "ALLC");
  CHECK(result.standings.back().total == 0);
}
