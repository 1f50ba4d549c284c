#include "omegarl/mdp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "omegarl/error.hpp"
#include "text_util.hpp"

namespace omegarl {

std::size_t Mdp::num_choices() const {
  std::size_t n = 0;
  for (const auto& cs : choices) n += cs.size();
  return n;
}

std::size_t Mdp::num_transitions() const {
  std::size_t n = 0;
  for (const auto& cs : choices)
    for (const auto& c : cs) n += c.succ.size();
  return n;
}

StateId Mdp::add_state(std::string name, Letter label) {
  state_names.push_back(std::move(name));
  labels.push_back(label);
  choices.emplace_back();
  return static_cast<StateId>(choices.size() - 1);
}

ActionId Mdp::intern_action(std::string_view name) {
  auto it = std::find(action_names.begin(), action_names.end(), name);
  if (it != action_names.end()) return static_cast<ActionId>(it - action_names.begin());
  action_names.emplace_back(name);
  return static_cast<ActionId>(action_names.size() - 1);
}

int Mdp::ap_index(std::string_view name) const {
  auto it = std::find(ap.begin(), ap.end(), name);
  return it == ap.end() ? -1 : static_cast<int>(it - ap.begin());
}

int Mdp::find_choice(StateId s, ActionId a) const {
  const auto& cs = choices[s];
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].action == a) return static_cast<int>(i);
  return -1;
}

bool Mdp::has_label(StateId s, std::string_view ap_name) const {
  int i = ap_index(ap_name);
  return i >= 0 && ((labels[s] >> i) & 1U);
}

std::vector<Diagnostic> validate(const Mdp& m) {
  std::vector<Diagnostic> out;
  const std::size_t n = m.num_states();
  auto report = [&](Diagnostic::Kind kind, StateId s, std::size_t c, std::string msg) {
    out.push_back({kind, s, c, std::move(msg)});
  };
  if (m.initial >= n) report(Diagnostic::Kind::BadInitial, m.initial, 0, "initial state out of range");
  const Letter ap_mask = m.ap.size() >= 64 ? ~Letter{0} : ((Letter{1} << m.ap.size()) - 1);
  for (StateId s = 0; s < n; ++s) {
    const std::string where = "state " + std::to_string(s);
    if (s < m.labels.size() && (m.labels[s] & ~ap_mask))
      report(Diagnostic::Kind::BadLabel, s, 0, where + ": label outside AP set");
    if (m.choices[s].empty()) report(Diagnostic::Kind::Deadlock, s, 0, where + ": deadlock (no enabled action)");
    for (std::size_t c = 0; c < m.choices[s].size(); ++c) {
      const Choice& ch = m.choices[s][c];
      const std::string at = where + ", action " +
                             (ch.action < m.action_names.size() ? m.action_names[ch.action] : std::to_string(ch.action));
      for (std::size_t d = 0; d < c; ++d)
        if (m.choices[s][d].action == ch.action)
          report(Diagnostic::Kind::DuplicateAction, s, c, at + ": action enabled twice");
      double mass = 0.0;
      for (const Transition& t : ch.succ) {
        if (t.target >= n) report(Diagnostic::Kind::BadTarget, s, c, at + ": successor out of range");
        if (!(t.prob > 0.0 && t.prob <= 1.0))
          report(Diagnostic::Kind::BadProbability, s, c, at + ": probability " + format_double(t.prob) + " not in ]0,1]");
        mass += t.prob;
      }
      if (std::abs(mass - 1.0) > kMassTolerance)
        report(Diagnostic::Kind::MassNotOne, s, c, at + ": mass " + format_double(mass) + " != 1");
    }
  }
  return out;
}

std::vector<bool> reachable_states(const Mdp& m) {
  std::vector<bool> seen(m.num_states(), false);
  if (m.initial >= m.num_states()) return seen;
  std::vector<StateId> stack{m.initial};
  seen[m.initial] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Choice& c : m.choices[s])
      for (const Transition& t : c.succ)
        if (!seen[t.target]) {
          seen[t.target] = true;
          stack.push_back(t.target);
        }
  }
  return seen;
}

namespace {

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line, 1);
  return v;
}

}  // namespace

Mdp parse_explicit(std::string_view text) {
  Mdp m;
  bool have_states = false;
  std::vector<std::vector<std::string>> pending_labels;
  struct PendingAcc {
    std::size_t src;
    std::string act;
    std::size_t dst;
    AccSet marks;
    std::size_t line;
  };
  std::vector<PendingAcc> pending_acc;

  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw, '#'));
    if (line.empty()) continue;
    auto tok = split_ws(line);
    const std::string_view kw = tok[0];
    auto need_states = [&] {
      if (!have_states) throw ParseError("'states N' header must come first", line_no, 1);
    };
    auto state_arg = [&](std::string_view t) {
      std::size_t s = parse_index(t, line_no);
      if (s >= m.num_states()) throw ParseError("unknown state " + std::string(t), line_no, 1);
      return s;
    };
    if (kw == "states") {
      if (have_states || tok.size() != 2) throw ParseError("malformed 'states' header", line_no, 1);
      std::size_t n = parse_index(tok[1], line_no);
      for (std::size_t i = 0; i < n; ++i) m.add_state(std::to_string(i));
      pending_labels.resize(n);
      have_states = true;
    } else if (kw == "ap") {
      for (std::size_t i = 1; i < tok.size(); ++i)
        for (auto& a : split_list(tok[i]))
          if (m.ap_index(a) < 0) m.ap.push_back(a);
    } else if (kw == "initial") {
      need_states();
      if (tok.size() != 2) throw ParseError("malformed 'initial' line", line_no, 1);
      m.initial = static_cast<StateId>(state_arg(tok[1]));
    } else if (kw == "state") {
      need_states();
      if (tok.size() < 2) throw ParseError("malformed 'state' line", line_no, 1);
      std::size_t s = state_arg(tok[1]);
      std::size_t i = 2;
      if (i < tok.size() && tok[i] == "label") {
        for (++i; i < tok.size() && tok[i] != "name"; ++i)
          for (auto& a : split_list(tok[i])) pending_labels[s].push_back(a);
      }
      if (i < tok.size() && tok[i] == "name") {
        if (i + 2 != tok.size()) throw ParseError("'name' takes one token", line_no, 1);
        m.state_names[s] = std::string(tok[i + 1]);
      } else if (i != tok.size()) {
        throw ParseError("unexpected token '" + std::string(tok[i]) + "'", line_no, 1);
      }
    } else if (kw == "trans") {
      need_states();
      if (tok.size() != 5) throw ParseError("expected 'trans i act p j'", line_no, 1);
      StateId s = static_cast<StateId>(state_arg(tok[1]));
      ActionId a = m.intern_action(tok[2]);
      double p = parse_probability(tok[3], line_no);
      StateId d = static_cast<StateId>(state_arg(tok[4]));
      int c = m.find_choice(s, a);
      if (c < 0) {
        m.choices[s].push_back({a, {}});
        c = static_cast<int>(m.choices[s].size() - 1);
      }
      auto& succ = m.choices[s][c].succ;
      auto it = std::find_if(succ.begin(), succ.end(), [&](const Transition& t) { return t.target == d; });
      if (it != succ.end())
        it->prob += p;
      else
        succ.push_back({d, p, 0});
    } else if (kw == "accepting") {
      need_states();
      if (tok.size() != 4 && tok.size() != 5) throw ParseError("expected 'accepting i act j [sets]'", line_no, 1);
      AccSet marks = 1;
      if (tok.size() == 5) {
        marks = 0;
        for (auto& k : split_list(tok[4])) {
          std::size_t bit = parse_index(k, line_no);
          if (bit >= 32) throw ParseError("acceptance set index too large", line_no, 1);
          marks |= AccSet{1} << bit;
        }
      }
      pending_acc.push_back({state_arg(tok[1]), std::string(tok[2]), state_arg(tok[3]), marks, line_no});
    } else {
      throw ParseError("unknown directive '" + std::string(kw) + "'", line_no, 1);
    }
  }
  if (!have_states) throw ParseError("missing 'states N' header");

  for (std::size_t s = 0; s < pending_labels.size(); ++s) {
    for (const auto& a : pending_labels[s]) {
      int i = m.ap_index(a);
      if (i < 0) {
        m.ap.push_back(a);
        i = static_cast<int>(m.ap.size() - 1);
      }
      if (i >= 64) throw ModelError("more than 64 atomic propositions");
      m.labels[s] |= Letter{1} << i;
    }
  }
  for (const PendingAcc& pa : pending_acc) {
    int a = -1;
    auto it = std::find(m.action_names.begin(), m.action_names.end(), pa.act);
    if (it != m.action_names.end()) a = m.find_choice(static_cast<StateId>(pa.src), static_cast<ActionId>(it - m.action_names.begin()));
    if (a < 0) throw ParseError("accepting line names a missing transition", pa.line, 1);
    bool found = false;
    for (Transition& t : m.choices[pa.src][a].succ)
      if (t.target == pa.dst) {
        t.marks |= pa.marks;
        found = true;
      }
    if (!found) throw ParseError("accepting line names a missing transition", pa.line, 1);
  }
  return m;
}

std::string write_explicit(const Mdp& m) {
  std::ostringstream out;
  out << "states " << m.num_states() << '\n';
  if (!m.ap.empty()) out << "ap " << join(m.ap, ",") << '\n';
  out << "initial " << m.initial << '\n';
  for (StateId s = 0; s < m.num_states(); ++s) {
    out << "state " << s;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m.ap.size(); ++i)
      if ((m.labels[s] >> i) & 1U) names.push_back(m.ap[i]);
    if (!names.empty()) out << " label " << join(names, ",");
    const std::string& nm = m.state_names[s];
    if (nm != std::to_string(s) && !nm.empty() && nm.find_first_of(" \t#") == std::string::npos) out << " name " << nm;
    out << '\n';
  }
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const Choice& c : m.choices[s])
      for (const Transition& t : c.succ)
        out << "trans " << s << ' ' << m.action_names[c.action] << ' ' << format_double(t.prob) << ' ' << t.target << '\n';
  for (StateId s = 0; s < m.num_states(); ++s)
    for (const Choice& c : m.choices[s])
      for (const Transition& t : c.succ) {
        if (!t.marks) continue;
        std::vector<std::string> sets;
        for (unsigned k = 0; k < 32; ++k)
          if ((t.marks >> k) & 1U) sets.push_back(std::to_string(k));
        out << "accepting " << s << ' ' << m.action_names[c.action] << ' ' << t.target << ' ' << join(sets, ",") << '\n';
      }
  return out.str();
}

Mdp parse_model(std::string_view text, ModelFormat format, const ConstantOverrides& constants) {
  Mdp m = format == ModelFormat::Explicit ? parse_explicit(text) : parse_prism(text, constants);
  auto diags = validate(m);
  if (!diags.empty()) {
    std::string msg = "invalid model:";
    for (const auto& d : diags) msg += "\n  " + d.message;
    throw ModelError(msg);
  }
  return m;
}

}  // namespace omegarl
