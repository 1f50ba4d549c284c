#include <doctest.h>

#include <cmath>
#include <random>

#include "omegarl/analysis.hpp"
#include "omegarl/corpus.hpp"
#include "omegarl/error.hpp"
#include "support.hpp"

using namespace omegarl;

namespace {

testing::EcSignature signature(const Mec& m) {
  testing::EcSignature sig;
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    auto acts = m.actions[i];
    std::sort(acts.begin(), acts.end());
    sig.insert({m.states[i], acts});
  }
  return sig;
}

std::vector<testing::EcSignature> signatures(const MecDecomposition& d) {
  std::vector<testing::EcSignature> out;
  for (const Mec& m : d.mecs) out.push_back(signature(m));
  std::sort(out.begin(), out.end());
  return out;
}

/// MECs by repeated pruning against a dense reachability matrix.
std::vector<testing::EcSignature> pruning_mecs(const Mdp& m) {
  const std::size_t n = m.num_states();
  std::vector<std::vector<bool>> keep(n);
  for (std::size_t s = 0; s < n; ++s) keep[s].assign(m.choices[s].size(), true);
  std::vector<std::vector<bool>> reach;
  for (bool changed = true; changed;) {
    reach.assign(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
      reach[s][s] = true;
      for (std::size_t c = 0; c < keep[s].size(); ++c)
        if (keep[s][c])
          for (const auto& tr : m.choices[s][c].succ) reach[s][tr.target] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k][j]) reach[i][j] = true;
    auto alive = [&](std::size_t s) { return std::find(keep[s].begin(), keep[s].end(), true) != keep[s].end(); };
    changed = false;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t c = 0; c < keep[s].size(); ++c) {
        if (!keep[s][c]) continue;
        for (const auto& tr : m.choices[s][c].succ)
          if (!alive(tr.target) || !reach[tr.target][s]) {
            keep[s][c] = false;
            changed = true;
            break;
          }
      }
  }
  std::vector<testing::EcSignature> out;
  std::vector<bool> done(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s] || std::find(keep[s].begin(), keep[s].end(), true) == keep[s].end()) continue;
    testing::EcSignature sig;
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t] && reach[t][s] && std::find(keep[t].begin(), keep[t].end(), true) != keep[t].end()) {
        done[t] = true;
        std::vector<std::size_t> acts;
        for (std::size_t c = 0; c < keep[t].size(); ++c)
          if (keep[t][c]) acts.push_back(c);
        sig.insert({static_cast<StateId>(t), acts});
      }
    out.push_back(sig);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StateId by_name(const Mdp& m, const std::string& name) {
  for (StateId s = 0; s < m.num_states(); ++s)
    if (m.state_names[s] == name) return s;
  FAIL("no state named " << name);
  return kNoState;
}

std::size_t choice_named(const Mdp& m, StateId s, const std::string& action) {
  for (std::size_t c = 0; c < m.choices[s].size(); ++c)
    if (m.action_name(s, c) == action) return c;
  FAIL("no action " << action);
  return 0;
}

Product corpus_product(const std::string& name, bool rabin = false, std::optional<double> p = std::nullopt) {
  const CorpusEntry& e = corpus_entry(name);
  return build_product(corpus_model(e, p), rabin ? corpus_rabin(e) : corpus_automaton(e));
}

}  // namespace

TEST_CASE("MEC of a single self-loop") {
  const Mdp m = parse_explicit("states 1\ntrans 0 a 1 0\n");
  const auto d = mec_decomposition(m);
  REQUIRE(d.mecs.size() == 1);
  CHECK(d.mec_of[0] == 0);
}

TEST_CASE("riskReward MECs") {
  const Product p = corpus_product("riskReward");
  const auto d = mec_decomposition(p.mdp);
  const StateId s0 = by_name(p.mdp, "((0),safe)"), s2 = by_name(p.mdp, "((2),safe)"), s3 = by_name(p.mdp, "((3),safe)");
  const std::vector<testing::EcSignature> expected_raw{
      {{s0, {choice_named(p.mdp, s0, "a")}}, {s3, {0}}},
      {{s2, {choice_named(p.mdp, s2, "e")}}},
      {{p.trap, {0}}}};
  auto expected = expected_raw;
  std::sort(expected.begin(), expected.end());
  CHECK(signatures(d) == expected);
  CHECK(signatures(d) == testing::brute_force_mecs(p.mdp));
  CHECK(d.mec_of[by_name(p.mdp, "((1),safe)")] == -1);
  const auto acc = accepting_mecs(p, d);
  CHECK(acc.size() == 2);
  for (std::size_t i : acc) CHECK(d.mec_of[p.trap] != static_cast<int>(i));
}

TEST_CASE("deferred: only the b20 loop is accepting") {
  const Product p = corpus_product("deferred");
  const auto d = mec_decomposition(p.mdp);
  CHECK(d.mecs.size() == 2);
  const auto acc = accepting_mecs(p, d);
  REQUIRE(acc.size() == 1);
  const Mec& m = d.mecs[acc[0]];
  REQUIRE(m.states.size() == 1);
  CHECK(p.mdp.state_names[m.states[0]] == "((2,20),0)");
}

TEST_CASE("no accepting edges, no accepting MECs") {
  const Mdp m = parse_explicit("states 2\ntrans 0 a 1 1\ntrans 1 a 1 0\n");
  const auto d = mec_decomposition(m);
  CHECK(d.mecs.size() == 1);
  CHECK(accepting_mecs(m, Acceptance::buchi(0), d).empty());
}

TEST_CASE("twoPairs Rabin MECs") {
  const Product p = corpus_product("twoPairs", true);
  const auto d = mec_decomposition(p.mdp);
  std::set<std::string> accepting;
  for (std::size_t i : rabin_accepting_mecs(p, d))
    for (StateId s : d.mecs[i].states) accepting.insert(p.mdp.state_names[s]);
  CHECK(accepting == std::set<std::string>{"((0,1),safe)", "((1,0),safe)"});
  const auto ecs = accepting_end_components(p);
  CHECK(ecs.size() == 2);
  for (const Mec& ec : ecs) {
    REQUIRE(ec.states.size() == 1);
    CHECK(p.mdp.action_name(ec.states[0], ec.actions[0].at(0)) == "rest");
  }
}

TEST_CASE("Rabin pairs with an all-B or an empty B set") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 60; ++i) {
    Mdp m = testing::random_mdp(rng, 2 + i % 7, 3);
    std::bernoulli_distribution g(0.3);
    for (auto& cs : m.choices)
      for (auto& c : cs)
        for (auto& tr : c.succ) tr.marks = (g(rng) ? 1U : 0U) | 2U;
    const auto d = mec_decomposition(m);
    CHECK(rabin_accepting_mecs(m, Acceptance::rabin({{1, 0}}), d).empty());
    CHECK(rabin_accepting_mecs(m, Acceptance::rabin({{-1, 0}}), d) == accepting_mecs(m, Acceptance::buchi(0), d));
  }
}

TEST_CASE("MEC decomposition agrees with brute force") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 150; ++i) {
    const Mdp m = testing::random_mdp(rng, 1 + i % 6, 3, 0, 2);
    CHECK(signatures(mec_decomposition(m)) == testing::brute_force_mecs(m));
  }
  for (int i = 0; i < 20; ++i) {
    const Mdp m = testing::random_mdp(rng, 50, 3, 0, 2);
    const auto d = mec_decomposition(m);
    CHECK(signatures(d) == pruning_mecs(m));
    for (StateId s = 0; s < m.num_states(); ++s)
      if (d.mec_of[s] >= 0) {
        const auto& states = d.mecs[static_cast<std::size_t>(d.mec_of[s])].states;
        CHECK(std::find(states.begin(), states.end(), s) != states.end());
      }
  }
}

TEST_CASE("MECs respect an allowed-choice mask") {
  const Mdp m = parse_explicit("states 2\ntrans 0 stay 1 0\ntrans 0 go 1 1\ntrans 1 back 1 0\n");
  CHECK(mec_decomposition(m).mecs.size() == 1);
  const ChoiceMask mask{{1, 0}, {1}};
  const auto d = mec_decomposition(m, &mask);
  REQUIRE(d.mecs.size() == 1);
  CHECK(d.mecs[0].states == std::vector<StateId>{0});
  CHECK(d.mec_of[1] == -1);
}

TEST_CASE("max_reach_prob examples") {
  const Mdp retry = parse_explicit("states 2\ntrans 0 alpha 1 0\ntrans 0 beta 0.3 1\ntrans 0 beta 0.7 0\ntrans 1 stay 1 1\n");
  const ReachResult r = max_reach_prob(retry, {false, true});
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(retry.action_name(0, r.strategy[0]) == "beta");
  CHECK(r.prob1[0]);

  const ReachResult self = max_reach_prob(retry, {true, false});
  CHECK(self.values[0] == 1.0);

  const Mdp none = parse_explicit("states 2\ntrans 0 a 1 0\ntrans 1 a 1 1\n");
  const ReachResult z = max_reach_prob(none, {false, true});
  CHECK(z.values[0] == 0.0);
  CHECK(z.prob0[0]);
}

TEST_CASE("max_reach_prob agrees with strategy enumeration") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 150; ++i) {
    const Mdp m = testing::random_mdp(rng, 2 + i % 5, 2);
    std::vector<bool> target(m.num_states(), false);
    target[rng() % m.num_states()] = true;
    const ReachResult r = max_reach_prob(m, target);
    const Eigen::VectorXd best = testing::enumerate_max_reach(m, target);
    CHECK((r.values - best).cwiseAbs().maxCoeff() < 1e-7);
    const Eigen::VectorXd achieved = testing::chain_reach(testing::induced_chain(m, r.strategy, 0).P, target);
    CHECK((achieved - best).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("max_reach_prob raises NonConvergence") {
  const Mdp m = parse_explicit("states 3\ntrans 0 a 0.5 0\ntrans 0 a 0.25 1\ntrans 0 a 0.25 2\ntrans 1 a 1 1\ntrans 2 a 1 2\n");
  ReachOptions o;
  o.max_iter = 1;
  o.tol = 1e-15;
  CHECK_THROWS_AS(max_reach_prob(m, {false, true, false}, o), NonConvergence);
}

TEST_CASE("deferred augmented at 0.99 reaches t with probability 1") {
  const Product p = corpus_product("deferred");
  const AugmentedMdp a = augment(p, 0.99);
  std::vector<bool> target(a.mdp.num_states(), false);
  target[a.sink] = true;
  const ReachResult r = max_reach_prob(a.mdp, target);
  CHECK(r.values[a.mdp.initial] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.mdp.action_name(a.mdp.initial, r.strategy[a.mdp.initial]) == "b");
  const Eigen::VectorXd exact = testing::chain_reach(testing::induced_chain(a.mdp, r.strategy, 0).P, target);
  CHECK(exact[a.mdp.initial] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("maximal satisfaction probability of the corpus") {
  CHECK(max_satisfaction_prob(corpus_product("twoPairs")).values[0] == doctest::Approx(1.0));
  CHECK(max_satisfaction_prob(corpus_product("twoPairs", true)).values[0] == doctest::Approx(1.0));
  const Product rr = corpus_product("riskReward");
  const ReachResult r = max_satisfaction_prob(rr);
  CHECK(r.values[rr.mdp.initial] == doctest::Approx(1.0));
  CHECK(rr.mdp.action_name(rr.mdp.initial, r.strategy[rr.mdp.initial]) == "a");
  CHECK(max_satisfaction_prob(corpus_product("deferred")).values[0] == doctest::Approx(1.0));
}

TEST_CASE("riskReward risky strategy satisfies with probability p") {
  for (double pr : {0.25, 0.75}) {
    const Product p = corpus_product("riskReward", false, pr);
    std::vector<std::size_t> choice(p.num_states(), 0);
    choice[by_name(p.mdp, "((0),safe)")] = choice_named(p.mdp, by_name(p.mdp, "((0),safe)"), "b");
    choice[by_name(p.mdp, "((2),safe)")] = choice_named(p.mdp, by_name(p.mdp, "((2),safe)"), "e");
    const EvalReport r = evaluate_strategy(p, MixedStrategy::pure(p.mdp, choice));
    CHECK(r.a[p.mdp.initial] == doctest::Approx(pr).epsilon(1e-12));
    CHECK(std::isnan(r.p[p.mdp.initial]));
    CHECK(r.f[p.mdp.initial] == 0.0);
    const EvalReport z = evaluate_strategy(p, MixedStrategy::pure(p.mdp, choice), 0.9);
    CHECK(z.p[p.mdp.initial] == doctest::Approx(pr).epsilon(1e-9));
  }
}

TEST_CASE("satisfaction strategy attains the optimum") {
  for (const char* name : {"twoPairs", "riskReward", "deferred", "frozenSmall"}) {
    const Product p = corpus_product(name);
    const EvalReport r = evaluate_strategy(p, satisfaction_strategy(p));
    CHECK(std::abs(r.a[p.mdp.initial] - max_satisfaction_prob(p).values[p.mdp.initial]) < 1e-7);
  }
}

TEST_CASE("evaluate_strategy rejects partial strategies") {
  const Product p = corpus_product("riskReward");
  MixedStrategy s = MixedStrategy::uniform(p.mdp);
  s.probs[p.mdp.initial].clear();
  CHECK_THROWS_AS(evaluate_strategy(p, s), ModelError);
  s = MixedStrategy::uniform(p.mdp);
  s.probs[p.mdp.initial][0] = 0.9;
  CHECK_THROWS_AS(evaluate_strategy(p, s), ModelError);
}

TEST_CASE("expected average reward") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    const Mdp m = testing::random_mdp(rng, 2 + i % 5, 2, 1);
    const Product p = build_product(m, testing::random_dbw(rng, 1 + i % 2, 1, 0.5));
    const AugmentedMdp a = augment(p, 0.5 + 0.1 * (i % 5));
    std::vector<std::size_t> choice(p.num_states());
    for (StateId s = 0; s < p.num_states(); ++s) choice[s] = rng() % p.mdp.choices[s].size();
    const EvalReport r = evaluate_strategy(p, MixedStrategy::pure(p.mdp, choice), a.zeta);
    choice.push_back(0);
    const MixedStrategy sigma = MixedStrategy::pure(a.mdp, choice);
    const StateId t = a.sink;
    const Eigen::VectorXd g = expected_average_reward(a.mdp, [t](StateId s, std::size_t, std::size_t) { return s == t ? 1.0 : 0.0; }, sigma);
    CHECK(g[a.mdp.initial] == doctest::Approx(r.p[p.mdp.initial]).epsilon(1e-9));
    const Eigen::VectorXd zero = expected_average_reward(a.mdp, [](StateId, std::size_t, std::size_t) { return 0.0; }, sigma);
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);
  }
  Mdp loop = parse_explicit("states 1\ntrans 0 a 1 0\n");
  loop.choices[0][0].succ[0].marks = 2;
  const auto rho = rabin_reward(loop, {-1, 1}, 3.0, 1.0);
  CHECK(expected_average_reward(loop, rho, MixedStrategy::uniform(loop))[0] == doctest::Approx(3.0));
  loop.choices[0][0].succ[0].marks = 3;
  CHECK(expected_average_reward(loop, rabin_reward(loop, {0, 1}, 3.0, 2.0), MixedStrategy::uniform(loop))[0] ==
        doctest::Approx(-2.0));
}
