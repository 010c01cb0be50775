#include "mgame/regularity.hpp"

#include <bit>
#include <cstdint>
#include <set>
#include <sstream>

#include "mgame/error.hpp"

namespace mgame {

namespace {

std::vector<PureProfile> corner_ne(const DoubleGame& dg, const Rational& lambda, const Rational& gamma) {
  return pure_nash(instantiate(dg, lambda, gamma));
}

bool has(const std::vector<PureProfile>& set, std::size_t a, std::size_t b) {
  for (const auto& p : set) {
    if (p[0] == a && p[1] == b) return true;
  }
  return false;
}

}  // namespace

std::vector<CoherentPair> coherent_pairs(const DoubleGame& dg, const TypeGrid& grid, std::size_t player,
                                         std::size_t type_index) {
  grid.validate();
  if (player > 1) fail(ErrorKind::kInvalidInput, "double games have players 0 and 1");
  const auto& own_types = grid.values(player);
  if (type_index >= own_types.size()) fail(ErrorKind::kInvalidInput, "type index out of range");
  const Rational& w = own_types[type_index];

  const auto at_zero = player == 0 ? corner_ne(dg, w, 0) : corner_ne(dg, 0, w);
  const auto at_one = player == 0 ? corner_ne(dg, w, 1) : corner_ne(dg, 1, w);
  auto holds = [&](const std::vector<PureProfile>& set, std::size_t own, std::size_t opp) {
    PureProfile p = oriented_profile(player, own, opp);
    return has(set, p[0], p[1]);
  };

  std::vector<CoherentPair> pairs;
  const std::size_t own_count = dg.num_actions(player);
  const std::size_t opp_count = dg.num_actions(1 - player);
  for (std::size_t s = 0; s < own_count; ++s) {
    for (std::size_t u = 0; u < opp_count; ++u) {
      if (!holds(at_zero, s, u)) continue;
      for (std::size_t v = 0; v < opp_count; ++v) {
        if (holds(at_one, s, v)) pairs.push_back({player, type_index, w, s, u, v});
      }
    }
  }
  return pairs;
}

std::size_t threshold(const DoubleGame& dg, const TypeGrid& grid, const CoherentPair& pair) {
  grid.validate();
  const std::size_t player = pair.player;
  if (player > 1) fail(ErrorKind::kInvalidInput, "double games have players 0 and 1");
  const std::size_t opp = 1 - player;
  const auto& own_types = grid.values(player);
  if (pair.type_index >= own_types.size() || own_types[pair.type_index] != pair.own_type) {
    fail(ErrorKind::kContract, "coherent pair type does not match the grid");
  }
  const Interval own_u = br_interval(dg, player, pair.own_action, pair.opp_at_zero);
  const Interval own_v = br_interval(dg, player, pair.own_action, pair.opp_at_one);
  const Interval opp_u = br_interval(dg, opp, pair.opp_at_zero, pair.own_action);
  const Interval opp_v = br_interval(dg, opp, pair.opp_at_one, pair.own_action);
  if (!own_u.contains(pair.own_type) || !opp_u.contains(0) || !own_v.contains(pair.own_type) ||
      !opp_v.contains(1)) {
    fail(ErrorKind::kContract, "not a coherent pair of pure equilibria");
  }

  const auto& opp_types = grid.values(opp);
  std::size_t p = 0;
  while (p < opp_types.size() && opp_u.contains(opp_types[p])) ++p;
  for (std::size_t n = p; n < opp_types.size(); ++n) {
    if (!opp_v.contains(opp_types[n])) {
      fail(ErrorKind::kContract, "coherent pair has no threshold: neither profile is an equilibrium at "
                                 "opponent type " + to_string(opp_types[n]));
    }
  }
  return p;
}

std::vector<RegularityQuadruple> is_pure_regular(const DoubleGame& dg) {
  const auto ne00 = corner_ne(dg, 0, 0);
  const auto ne01 = corner_ne(dg, 0, 1);
  const auto ne10 = corner_ne(dg, 1, 0);
  const auto ne11 = corner_ne(dg, 1, 1);
  std::vector<RegularityQuadruple> result;
  const std::size_t a1 = dg.num_actions(0);
  const std::size_t a2 = dg.num_actions(1);
  for (std::size_t s = 0; s < a1; ++s) {
    for (std::size_t t = 0; t < a1; ++t) {
      for (std::size_t u = 0; u < a2; ++u) {
        if (!has(ne00, s, u) || !has(ne10, t, u)) continue;
        for (std::size_t v = 0; v < a2; ++v) {
          if (has(ne01, s, v) && has(ne11, t, v)) result.push_back({s, t, u, v});
        }
      }
    }
  }
  return result;
}

std::string format_bayesian(const DoubleGame& dg, const BayesianPureProfile& profile) {
  auto join = [&](std::size_t player, const std::vector<std::size_t>& actions) {
    bool compact = true;
    for (const auto& label : dg.g1().action_labels(player)) compact = compact && label.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (!compact && i) out += ' ';
      out += dg.action_label(player, actions[i]);
    }
    return out;
  };
  return "(" + join(0, profile.p1_actions) + "," + join(1, profile.p2_actions) + ")";
}

namespace {

using Mask = std::uint32_t;
constexpr std::size_t kMaxActions = 16;

// masks1[m][b]: actions of player 1 that are weak best responses to b at
// lambda_m; masks2[n][a] likewise for player 2 at gamma_n.
struct TypeMasks {
  std::vector<std::vector<Mask>> p1;
  std::vector<std::vector<Mask>> p2;
  Mask full1 = 0;
  Mask full2 = 0;
};

TypeMasks build_masks(const DoubleGame& dg, const TypeGrid& grid, EvalCounter* counter) {
  const std::size_t a1 = dg.num_actions(0);
  const std::size_t a2 = dg.num_actions(1);
  if (a1 > kMaxActions || a2 > kMaxActions) {
    fail(ErrorKind::kUnsupported, "regularity search supports at most 16 actions per player");
  }
  std::vector<std::vector<Interval>> i1(a1, std::vector<Interval>(a2));
  std::vector<std::vector<Interval>> i2(a2, std::vector<Interval>(a1));
  for (std::size_t a = 0; a < a1; ++a) {
    for (std::size_t b = 0; b < a2; ++b) {
      i1[a][b] = br_interval(dg, 0, a, b);
      i2[b][a] = br_interval(dg, 1, b, a);
    }
  }
  TypeMasks masks;
  masks.full1 = static_cast<Mask>((1u << a1) - 1);
  masks.full2 = static_cast<Mask>((1u << a2) - 1);
  std::size_t evaluations = 0;
  for (const auto& lambda : grid.lambda) {
    std::vector<Mask> row(a2, 0);
    for (std::size_t b = 0; b < a2; ++b) {
      for (std::size_t a = 0; a < a1; ++a) {
        ++evaluations;
        if (i1[a][b].contains(lambda)) row[b] |= Mask{1} << a;
      }
    }
    masks.p1.push_back(std::move(row));
  }
  for (const auto& gamma : grid.gamma) {
    std::vector<Mask> row(a1, 0);
    for (std::size_t a = 0; a < a1; ++a) {
      for (std::size_t b = 0; b < a2; ++b) {
        ++evaluations;
        if (i2[b][a].contains(gamma)) row[a] |= Mask{1} << b;
      }
    }
    masks.p2.push_back(std::move(row));
  }
  if (counter) counter->ne_condition_evaluations += evaluations;
  return masks;
}

// Per type, the actions inside `own` that answer every opponent action in
// `opp`. Empty result when some type has no such action.
std::optional<std::vector<Mask>> allowed_actions(const std::vector<std::vector<Mask>>& masks, Mask own,
                                                 Mask opp) {
  std::vector<Mask> allowed;
  allowed.reserve(masks.size());
  for (const auto& row : masks) {
    Mask m = own;
    for (Mask rest = opp; rest; rest &= rest - 1) m &= row[static_cast<std::size_t>(std::countr_zero(rest))];
    if (!m) return std::nullopt;
    allowed.push_back(m);
  }
  return allowed;
}

std::vector<std::size_t> lowest(const std::vector<Mask>& allowed) {
  std::vector<std::size_t> out;
  out.reserve(allowed.size());
  for (Mask m : allowed) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

}  // namespace

RegularityResult completely_pure_regular(const DoubleGame& dg, const TypeGrid& grid, EvalCounter* counter) {
  grid.validate();
  RegularityResult result;
  result.quadruples = is_pure_regular(dg);
  if (counter) counter->ne_condition_evaluations += 4 * dg.num_actions(0) * dg.num_actions(1);
  if (result.quadruples.empty()) return result;

  const TypeMasks masks = build_masks(dg, grid, counter);
  // Every certificate's extreme-type actions form a quadruple, so it is found
  // among the action sets containing some quadruple's actions.
  std::set<std::pair<Mask, Mask>> tried;
  for (const auto& q : result.quadruples) {
    const Mask base1 = (Mask{1} << q.s) | (Mask{1} << q.t);
    const Mask base2 = (Mask{1} << q.u) | (Mask{1} << q.v);
    const Mask extra1 = masks.full1 & ~base1;
    const Mask extra2 = masks.full2 & ~base2;
    for (Mask x1 = extra1;; x1 = (x1 - 1) & extra1) {
      for (Mask x2 = extra2;; x2 = (x2 - 1) & extra2) {
        const Mask set1 = base1 | x1;
        const Mask set2 = base2 | x2;
        if (tried.emplace(set1, set2).second) {
          auto allowed1 = allowed_actions(masks.p1, set1, set2);
          auto allowed2 = allowed1 ? allowed_actions(masks.p2, set2, set1) : std::nullopt;
          if (allowed1 && allowed2) {
            BayesianPureProfile candidate{lowest(*allowed1), lowest(*allowed2)};
            if (!result.certificate || candidate < *result.certificate) result.certificate = candidate;
          }
        }
        if (x2 == 0) break;
      }
      if (x1 == 0) break;
    }
  }
  return result;
}

std::size_t for_each_certificate(const DoubleGame& dg, const TypeGrid& grid,
                                 const std::function<bool(const BayesianPureProfile&)>& visit) {
  grid.validate();
  const TypeMasks masks = build_masks(dg, grid, nullptr);
  std::size_t visited = 0;
  // Enumerate by exact action images so no certificate repeats.
  for (Mask set1 = 1; set1 <= masks.full1; ++set1) {
    for (Mask set2 = 1; set2 <= masks.full2; ++set2) {
      auto allowed1 = allowed_actions(masks.p1, set1, set2);
      if (!allowed1) continue;
      auto allowed2 = allowed_actions(masks.p2, set2, set1);
      if (!allowed2) continue;

      std::vector<Mask> choices = *allowed1;
      choices.insert(choices.end(), allowed2->begin(), allowed2->end());
      const std::size_t k = allowed1->size();
      std::vector<Mask> current(choices.size());
      for (std::size_t i = 0; i < choices.size(); ++i) current[i] = choices[i] & (~choices[i] + 1);
      while (true) {
        Mask image1 = 0;
        Mask image2 = 0;
        for (std::size_t i = 0; i < k; ++i) image1 |= current[i];
        for (std::size_t i = k; i < current.size(); ++i) image2 |= current[i];
        if (image1 == set1 && image2 == set2) {
          BayesianPureProfile profile;
          for (std::size_t i = 0; i < current.size(); ++i) {
            auto action = static_cast<std::size_t>(std::countr_zero(current[i]));
            (i < k ? profile.p1_actions : profile.p2_actions).push_back(action);
          }
          ++visited;
          if (!visit(profile)) return visited;
        }
        // Odometer over the single-bit choices, last type fastest.
        bool advanced = false;
        for (std::size_t i = current.size(); i-- > 0;) {
          const Mask higher = choices[i] & ~((current[i] << 1) - 1);
          if (higher) {
            current[i] = higher & (~higher + 1);
            advanced = true;
            break;
          }
          current[i] = choices[i] & (~choices[i] + 1);
        }
        if (!advanced) break;
      }
    }
  }
  return visited;
}

bool certificate_is_sound(const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile) {
  if (profile.p1_actions.size() != grid.lambda.size() || profile.p2_actions.size() != grid.gamma.size()) {
    return false;
  }
  for (std::size_t m = 0; m < grid.lambda.size(); ++m) {
    for (std::size_t n = 0; n < grid.gamma.size(); ++n) {
      auto game = instantiate(dg, grid.lambda[m], grid.gamma[n]);
      if (!is_pure_nash(game, PureProfile{{profile.p1_actions[m], profile.p2_actions[n]}})) return false;
    }
  }
  return true;
}

TypePrior::TypePrior(std::vector<std::vector<Rational>> table) : table_(std::move(table)) {
  if (table_.empty() || table_.front().empty()) fail(ErrorKind::kInvalidInput, "prior table is empty");
  Rational total = 0;
  for (const auto& row : table_) {
    if (row.size() != table_.front().size()) fail(ErrorKind::kInvalidInput, "prior table is ragged");
    for (const auto& x : row) {
      if (x < 0) fail(ErrorKind::kInvalidInput, "prior has a negative entry");
      total += x;
    }
  }
  if (total == 0) fail(ErrorKind::kInvalidInput, "prior has zero total mass");
  for (auto& row : table_) {
    for (auto& x : row) x /= total;
  }
}

TypePrior TypePrior::independent(const std::vector<Rational>& lambda_probs,
                                 const std::vector<Rational>& gamma_probs) {
  std::vector<std::vector<Rational>> table(lambda_probs.size(), std::vector<Rational>(gamma_probs.size()));
  for (std::size_t m = 0; m < lambda_probs.size(); ++m) {
    for (std::size_t n = 0; n < gamma_probs.size(); ++n) table[m][n] = lambda_probs[m] * gamma_probs[n];
  }
  return TypePrior(std::move(table));
}

TypePrior TypePrior::uniform(std::size_t k, std::size_t l) {
  return TypePrior(std::vector<std::vector<Rational>>(k, std::vector<Rational>(l, Rational(1))));
}

TypePrior TypePrior::point_mass(std::size_t k, std::size_t l, std::size_t m, std::size_t n) {
  std::vector<std::vector<Rational>> table(k, std::vector<Rational>(l, Rational(0)));
  table.at(m).at(n) = 1;
  return TypePrior(std::move(table));
}

Rational TypePrior::lambda_marginal(std::size_t m) const {
  Rational total = 0;
  for (const auto& x : table_.at(m)) total += x;
  return total;
}

Rational TypePrior::gamma_marginal(std::size_t n) const {
  Rational total = 0;
  for (const auto& row : table_) total += row.at(n);
  return total;
}

BayesCheck verify_bayes_ne(const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile,
                           const TypePrior& prior) {
  grid.validate();
  const std::size_t k = grid.lambda.size();
  const std::size_t l = grid.gamma.size();
  if (profile.p1_actions.size() != k || profile.p2_actions.size() != l) {
    fail(ErrorKind::kInvalidInput, "Bayesian profile does not match the type grid");
  }
  if (prior.rows() != k || prior.cols() != l) {
    fail(ErrorKind::kInvalidInput, "prior table does not match the type grid");
  }
  for (auto a : profile.p1_actions) dg.action_label(0, a);
  for (auto b : profile.p2_actions) dg.action_label(1, b);

  BayesCheck check;
  for (std::size_t player = 0; player < 2; ++player) {
    const std::size_t own_types = player == 0 ? k : l;
    const std::size_t opp_types = player == 0 ? l : k;
    const auto& own_actions = player == 0 ? profile.p1_actions : profile.p2_actions;
    const auto& opp_actions = player == 0 ? profile.p2_actions : profile.p1_actions;
    for (std::size_t i = 0; i < own_types; ++i) {
      TypeReport report;
      report.player = player;
      report.type_index = i;
      report.assigned = own_actions[i];
      report.marginal = player == 0 ? prior.lambda_marginal(i) : prior.gamma_marginal(i);
      if (report.marginal > 0) {
        const Rational& w = grid.values(player)[i];
        for (std::size_t a = 0; a < dg.num_actions(player); ++a) {
          Rational value = 0;
          for (std::size_t j = 0; j < opp_types; ++j) {
            const Rational& joint = player == 0 ? prior.at(i, j) : prior.at(j, i);
            if (joint == 0) continue;
            value += joint * dg.weighted_payoff(oriented_profile(player, a, opp_actions[j]), player, w);
          }
          report.expected.push_back(value / report.marginal);
        }
        for (const auto& v : report.expected) {
          if (v > report.expected[report.assigned]) report.best_response = false;
        }
      }
      check.equilibrium = check.equilibrium && report.best_response;
      check.reports.push_back(std::move(report));
    }
  }
  return check;
}

std::optional<std::pair<std::size_t, std::size_t>> point_mass_counter_prior(
    const DoubleGame& dg, const TypeGrid& grid, const BayesianPureProfile& profile) {
  const std::size_t k = grid.lambda.size();
  const std::size_t l = grid.gamma.size();
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t n = 0; n < l; ++n) {
      if (!verify_bayes_ne(dg, grid, profile, TypePrior::point_mass(k, l, m, n)).equilibrium) {
        return std::make_pair(m, n);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::vector<PureProfile>>> ne_table(const DoubleGame& dg, const TypeGrid& grid) {
  grid.validate();
  NeRegions regions(dg);
  std::vector<std::vector<std::vector<PureProfile>>> table;
  for (const auto& gamma : grid.gamma) {
    std::vector<std::vector<PureProfile>> row;
    for (const auto& lambda : grid.lambda) row.push_back(regions.equilibria_at(lambda, gamma));
    table.push_back(std::move(row));
  }
  return table;
}

std::string ne_table_csv(const DoubleGame& dg, const TypeGrid& grid) {
  const auto table = ne_table(dg, grid);
  std::ostringstream out;
  out << "gamma\\lambda";
  for (const auto& lambda : grid.lambda) out << ',' << to_string(lambda);
  out << '\n';
  for (std::size_t n = grid.gamma.size(); n-- > 0;) {
    out << to_string(grid.gamma[n]);
    for (const auto& cell : table[n]) {
      out << ",\"";
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (i) out << ',';
        out << format_profile(dg.g1(), cell[i]);
      }
      out << '"';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mgame
