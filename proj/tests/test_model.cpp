#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "omegarl/corpus.hpp"
#include "omegarl/error.hpp"
#include "omegarl/mdp.hpp"
#include "support.hpp"

using namespace omegarl;

namespace {

std::multiset<std::tuple<std::string, std::string, double, std::string, AccSet>> transition_multiset(const Mdp& m) {
  std::multiset<std::tuple<std::string, std::string, double, std::string, AccSet>> out;
  for (StateId s = 0; s < m.num_states(); ++s)
    for (std::size_t c = 0; c < m.choices[s].size(); ++c)
      for (const auto& tr : m.choices[s][c].succ)
        out.insert({m.state_names[s], m.action_name(s, c), tr.prob, m.state_names[tr.target], tr.marks});
  return out;
}

bool has_kind(const std::vector<Diagnostic>& d, Diagnostic::Kind k) {
  return std::any_of(d.begin(), d.end(), [k](const Diagnostic& x) { return x.kind == k; });
}

}  // namespace

TEST_CASE("explicit format: smallest legal model") {
  const Mdp m = parse_explicit("states 1\ntrans 0 stay 1 0\n");
  CHECK(m.num_states() == 1);
  CHECK(m.choices[0].size() == 1);
  CHECK(m.choices[0][0].succ.size() == 1);
  CHECK(validate(m).empty());
}

TEST_CASE("explicit format: labels, names, fractions and comments") {
  const Mdp m = parse_explicit(R"(# two cells
states 2
ap goal,hole
initial 1
state 0 label goal name left
state 1 name right
trans 1 go 1/3 0   # comment after a line
trans 1 go 2/3 1
trans 0 stay 1 0
)");
  CHECK(m.initial == 1);
  CHECK(m.state_names[0] == "left");
  CHECK(m.has_label(0, "goal"));
  CHECK_FALSE(m.has_label(0, "hole"));
  CHECK_FALSE(m.has_label(1, "goal"));
  REQUIRE(m.choices[1].size() == 1);
  CHECK(m.choices[1][0].succ[0].prob == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("explicit format errors") {
  CHECK_THROWS_AS(parse_explicit("trans 0 a 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_explicit("states 2\ntrans 0 a 1 5\n"), ParseError);
  CHECK_THROWS_AS(parse_explicit("states 1\nfrobnicate\n"), ParseError);
  // mass 0.9
  CHECK_THROWS_AS(parse_model("states 1\ntrans 0 a 0.9 0\n", ModelFormat::Explicit), ModelError);
  // deadlock
  CHECK_THROWS_AS(parse_model("states 2\ntrans 0 a 1 1\n", ModelFormat::Explicit), ModelError);
  try {
    parse_explicit("states 1\ntrans 0 a 1 0\nbogus line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("validate reports each violation") {
  Mdp m;
  m.add_state("s0");
  m.add_state("s1");
  m.choices[0].push_back({m.intern_action("a"), {{1, 0.9, 0}}});
  m.choices[1].push_back({m.intern_action("a"), {{1, 1.0, 0}}});
  auto d = validate(m);
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == Diagnostic::Kind::MassNotOne);
  CHECK(d[0].state == 0);

  m.choices[0][0].succ[0].prob = 1.0;
  CHECK(validate(m).empty());
  m.choices[1].clear();
  d = validate(m);
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == Diagnostic::Kind::Deadlock);

  m.choices[1].push_back({m.intern_action("a"), {{7, 1.0, 0}}});
  CHECK(has_kind(validate(m), Diagnostic::Kind::BadTarget));
  m.choices[1][0].succ[0] = {1, 1.0, 0};
  m.initial = 5;
  CHECK(has_kind(validate(m), Diagnostic::Kind::BadInitial));
  m.initial = 0;
  m.labels[1] = 2;
  CHECK(has_kind(validate(m), Diagnostic::Kind::BadLabel));
}

TEST_CASE("corpus models have the published state counts") {
  CHECK(corpus_model(corpus_entry("twoPairs")).num_states() == 4);
  CHECK(corpus_model(corpus_entry("riskReward")).num_states() == 4);
  CHECK(corpus_model(corpus_entry("deferred")).num_states() == 41);
  for (const CorpusEntry& e : corpus()) CHECK(validate(corpus_model(e)).empty());
}

TEST_CASE("twoPairs: go moves along the column with probability p") {
  const Mdp m = corpus_model(corpus_entry("twoPairs"), 0.3);
  const StateId s0 = m.initial;
  CHECK(m.state_names[s0] == "(0,0)");
  const int go = m.find_choice(s0, static_cast<ActionId>(std::find(m.action_names.begin(), m.action_names.end(), "go") -
                                                         m.action_names.begin()));
  REQUIRE(go >= 0);
  std::map<std::string, double> dist;
  for (const auto& tr : m.choices[s0][static_cast<std::size_t>(go)].succ) dist[m.state_names[tr.target]] += tr.prob;
  CHECK(dist["(1,0)"] == doctest::Approx(0.3));
  CHECK(dist["(0,1)"] == doctest::Approx(0.7));
  CHECK(m.has_label(m.choices[s0][static_cast<std::size_t>(go)].succ[0].target, "g0") !=
        m.has_label(m.choices[s0][static_cast<std::size_t>(go)].succ[1].target, "g0"));
}

TEST_CASE("riskReward: b splits p / 1-p between cells 2 and 1") {
  const Mdp m = corpus_model(corpus_entry("riskReward"), 0.6);
  const StateId s0 = m.initial;
  for (std::size_t c = 0; c < m.choices[s0].size(); ++c) {
    if (m.action_name(s0, c) != "b") continue;
    std::map<std::string, double> dist;
    for (const auto& tr : m.choices[s0][c].succ) dist[m.state_names[tr.target]] = tr.prob;
    CHECK(dist["(2)"] == doctest::Approx(0.6));
    CHECK(dist["(1)"] == doctest::Approx(0.4));
  }
  CHECK_THROWS_AS(corpus_model(corpus_entry("riskReward"), 1.5), ModelError);
  CHECK_THROWS_AS(corpus_model(corpus_entry("deferred"), 0.5), ModelError);
}

TEST_CASE("PRISM subset: reachable states match a direct interpreter") {
  // deferred: c in 0..2, i in 0..20, interpreted by hand
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::vector<std::pair<int, int>> frontier{{0, 0}};
  while (!frontier.empty()) {
    auto [c, i] = frontier.back();
    frontier.pop_back();
    std::vector<std::pair<int, int>> next;
    if (c == 0) next = {{1, 1}, {2, 1}};
    if (c > 0 && i < 20) next.push_back({c, i + 1});
    if (c > 0 && i == 20) next.push_back({c, i});
    for (auto v : next)
      if (seen.insert(v).second) frontier.push_back(v);
  }
  const Mdp m = corpus_model(corpus_entry("deferred"));
  CHECK(m.num_states() == seen.size());
  std::size_t g = 0;
  for (StateId s = 0; s < m.num_states(); ++s) g += m.has_label(s, "g");
  CHECK(g == 20);  // a1..a19 and b20
}

TEST_CASE("PRISM subset: constants, expressions and overrides") {
  const char* src = R"(mdp
const int N = 3;
const double q = 0.25;
module counter
  x : [0..N] init 0;
  [inc] x < N -> q : (x'=x+1) + 1-q : (x'=x);
  [rst] x = N -> (x'=0);
endmodule
label "full" = x = N;
)";
  const Mdp m = parse_model(src, ModelFormat::PrismSubset);
  CHECK(m.num_states() == 4);
  std::size_t full = 0;
  for (StateId s = 0; s < m.num_states(); ++s) full += m.has_label(s, "full");
  CHECK(full == 1);
  const Mdp m2 = parse_model(src, ModelFormat::PrismSubset, {{"q", 0.5}});
  CHECK(m2.choices[m2.initial][0].succ[0].prob == doctest::Approx(0.5));
}

TEST_CASE("PRISM subset errors") {
  // out-of-bounds update
  CHECK_THROWS_AS(parse_prism("mdp\nmodule m\n x : [0..1] init 0;\n [a] true -> (x'=x+1);\nendmodule\n"), ModelError);
  // mass != 1
  CHECK_THROWS_AS(parse_model("mdp\nmodule m\n x : [0..1] init 0;\n [a] true -> 0.5 : (x'=0) + 0.4 : (x'=1);\nendmodule\n",
                              ModelFormat::PrismSubset),
                  ModelError);
  // unknown identifier
  CHECK_THROWS_AS(parse_prism("mdp\nmodule m\n x : [0..1] init 0;\n [a] true -> (x'=y);\nendmodule\n"), ParseError);
  // syntax error carries a position
  try {
    parse_prism("mdp\nmodule m\n x : [0..1] init 0;\n [a] true -> (x'=0)\nendmodule\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 4);
    CHECK(e.column() > 0);
  }
  // deadlock
  CHECK_THROWS_AS(parse_model("mdp\nmodule m\n x : [0..1] init 0;\n [a] x=0 -> (x'=1);\nendmodule\n", ModelFormat::PrismSubset),
                  ModelError);
}

TEST_CASE("explicit round trip preserves structure") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Mdp m = testing::random_mdp(rng, 1 + i % 7, 3, 2);
    for (auto& cs : m.choices)
      for (auto& c : cs)
        for (auto& tr : c.succ) tr.marks = static_cast<AccSet>(rng() % 4);
    const Mdp r = parse_explicit(write_explicit(m));
    CHECK(r.num_states() == m.num_states());
    CHECK(r.num_choices() == m.num_choices());
    CHECK(r.num_transitions() == m.num_transitions());
    CHECK(r.labels == m.labels);
    CHECK(transition_multiset(r) == transition_multiset(m));
  }
  for (const CorpusEntry& e : corpus()) {
    const Mdp m = corpus_model(e);
    CHECK(transition_multiset(parse_explicit(write_explicit(m))) == transition_multiset(m));
  }
}

TEST_CASE("reachable_states") {
  const Mdp m = parse_explicit("states 3\ntrans 0 a 1 0\ntrans 1 a 1 0\ntrans 2 a 1 2\n");
  CHECK(reachable_states(m) == std::vector<bool>{true, false, false});
}
