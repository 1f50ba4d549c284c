#include "omegarl/corpus.hpp"

#include <map>

#include "omegarl/error.hpp"

namespace omegarl {

namespace {

const char* kTwoPairsModel = R"(mdp

const double p = 0.5;

// Cells (i,j). "go" moves to the cell in the same column j with probability p,
// otherwise to the cell in the same row i.
module twoPairs
  i : [0..1] init 0;
  j : [0..1] init 0;

  [rest] true -> (i'=i);
  [go]   true -> p : (i'=1-i) + 1-p : (j'=1-j);
endmodule

label "b"  = i=1 & j=1;
label "g0" = i=1 & j=0;
label "g1" = i=0 & j=1;
)";

// (FG g0 | FG g1) & G !b. State 0 waits and guesses which pair to commit to.
const char* kTwoPairsLdbw = R"(HOA: v1
name: "twoPairs"
States: 4
Start: 0
AP: 3 "b" "g0" "g1"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 "wait"
[!0] 0
[!0] 1
[!0] 2
[0] 3
State: 1 "fg_g0"
[1 & !0] 1 {0}
[!1 | 0] 3
State: 2 "fg_g1"
[2 & !0] 2 {0}
[!2 | 0] 3
State: 3 "trap"
[t] 3
--END--
)";

const char* kTwoPairsRabin = R"(HOA: v1
name: "twoPairs DRW"
States: 2
Start: 0
AP: 3 "b" "g0" "g1"
acc-name: Rabin 2
Acceptance: 4 (Fin(0) & Inf(1)) | (Fin(2) & Inf(3))
--BODY--
State: 0 "safe"
[!0 & !1 & !2] 0 {0 2}
[!0 & !1 & 2] 0 {0 3}
[!0 & 1 & !2] 0 {1 2}
[!0 & 1 & 2] 0 {1 3}
[0] 1
State: 1 "trap"
[t] 1
--END--
)";

const char* kRiskRewardModel = R"(mdp

const double p = 0.75;

module riskReward
  s : [0..3] init 0;

  [a] s=0 -> (s'=3);
  [b] s=0 -> p : (s'=2) + 1-p : (s'=1);
  [d] s=1 -> (s'=0);
  [e] s=2 -> (s'=2);
  [f] s=2 -> (s'=0);
  [c] s=3 -> (s'=0);
endmodule

label "b" = s=1;
label "g" = s=2 | s=3;
)";

const char* kRiskRewardDbw = R"(HOA: v1
name: "riskReward"
States: 2
Start: 0
AP: 2 "g" "b"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 "safe"
[0 & !1] 0 {0}
[!0 & !1] 0
[1] 1
State: 1 "trap"
[t] 1
--END--
)";

const char* kRiskRewardRabin = R"(HOA: v1
name: "riskReward DRW"
States: 2
Start: 0
AP: 2 "g" "b"
acc-name: Rabin 1
Acceptance: 2 Fin(0) & Inf(1)
--BODY--
State: 0 "safe"
[0 & !1] 0 {1}
[!0 & !1] 0
[1] 1
State: 1 "trap"
[t] 1
--END--
)";

const char* kDeferredModel = R"(mdp

// ab0 = (0,0); action a enters the chain c=1, action b the chain c=2.
module deferred
  c : [0..2] init 0;
  i : [0..20] init 0;

  [a]    c=0 -> (c'=1) & (i'=1);
  [b]    c=0 -> (c'=2) & (i'=1);
  [next] c>0 & i<20 -> (i'=i+1);
  [loop] c>0 & i=20 -> true;
endmodule

label "g" = (c=1 & i<20) | (c=2 & i=20);
)";

const char* kDeferredDbw = R"(HOA: v1
name: "deferred"
States: 1
Start: 0
AP: 1 "g"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0
[0] 0 {0}
[!0] 0
--END--
)";

const char* kFrozenSmallDbw = R"(HOA: v1
name: "frozenSmall"
States: 3
Start: 0
AP: 2 "goal" "hole"
acc-name: Buchi
Acceptance: 1 Inf(0)
--BODY--
State: 0 "search"
[!0 & !1] 0
[0] 1
[!0 & 1] 2
State: 1 "done"
[t] 1 {0}
State: 2 "trap"
[t] 2
--END--
)";

/// 4x4 slippery frozen lake: the intended move and both perpendicular moves
/// each happen with probability 1/3; holes and the goal are absorbing.
std::string frozen_small_model() {
  const std::string map = "SFFFFHFHFFFHHFFG";
  const char* dirs[] = {"left", "down", "right", "up"};
  auto move = [](int s, int d) {
    int r = s / 4, c = s % 4;
    if (d == 0) c = c > 0 ? c - 1 : c;
    if (d == 1) r = r < 3 ? r + 1 : r;
    if (d == 2) c = c < 3 ? c + 1 : c;
    if (d == 3) r = r > 0 ? r - 1 : r;
    return r * 4 + c;
  };
  std::string out = "# reconstruction of a 4x4 slippery frozen lake\nstates 16\nap goal,hole\ninitial 0\n";
  for (int s = 0; s < 16; ++s) {
    out += "state " + std::to_string(s);
    if (map[s] == 'G') out += " label goal";
    if (map[s] == 'H') out += " label hole";
    out += " name (" + std::to_string(s / 4) + "," + std::to_string(s % 4) + ")\n";
  }
  for (int s = 0; s < 16; ++s) {
    if (map[s] == 'G' || map[s] == 'H') {
      out += "trans " + std::to_string(s) + " stay 1 " + std::to_string(s) + "\n";
      continue;
    }
    for (int d = 0; d < 4; ++d) {
      std::map<int, int> hits;
      for (int k : {3, 0, 1}) ++hits[move(s, (d + k) % 4)];
      for (const auto& [t, n] : hits)
        out += "trans " + std::to_string(s) + " " + dirs[d] + " " + std::to_string(n) + "/3 " + std::to_string(t) + "\n";
    }
  }
  return out;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"twoPairs", "Rabin pairs whose rewards disagree with satisfaction", true, ModelFormat::PrismSubset,
               kTwoPairsModel, kTwoPairsLdbw, kTwoPairsRabin, "(F G g0 | F G g1) & G !b", 0.5});
  c.push_back({"riskReward", "average reward prefers the risky action", true, ModelFormat::PrismSubset,
               kRiskRewardModel, kRiskRewardDbw, kRiskRewardRabin, "G !b & G F g", 0.75});
  c.push_back({"deferred", "transient accepting chain against a deferred accepting loop", true,
               ModelFormat::PrismSubset, kDeferredModel, kDeferredDbw, "", "G F g", std::nullopt});
  c.push_back({"frozenSmall", "reconstruction of a 4x4 slippery frozen lake", false,
               ModelFormat::Explicit, frozen_small_model(), kFrozenSmallDbw, "", "!hole U goal", std::nullopt});
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw ModelError("unknown corpus entry '" + std::string(name) + "'");
}

Mdp corpus_model(const CorpusEntry& e, std::optional<double> p) {
  ConstantOverrides overrides;
  if (p) {
    if (!e.default_p) throw ModelError("corpus entry '" + e.name + "' has no parameter p");
    if (!(*p > 0.0 && *p < 1.0)) throw ModelError("p must lie strictly between 0 and 1");
    overrides["p"] = *p;
  }
  return parse_model(e.model_text, e.format, overrides);
}

Automaton corpus_automaton(const CorpusEntry& e) { return parse_hoa(e.automaton_hoa); }

Automaton corpus_rabin(const CorpusEntry& e) {
  if (e.rabin_hoa.empty()) throw ModelError("corpus entry '" + e.name + "' has no Rabin objective");
  return parse_hoa(e.rabin_hoa);
}

}  // namespace omegarl
