#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegarl/automaton.hpp"
#include "omegarl/mdp.hpp"

namespace omegarl {

/// An embedded model together with its objective.
struct CorpusEntry {
  std::string name;
  std::string description;
  /// False for reconstructions of models whose sources are not published.
  bool published = true;
  ModelFormat format = ModelFormat::PrismSubset;
  std::string model_text;
  /// Buchi objective (deterministic or limit-deterministic), HOA.
  std::string automaton_hoa;
  /// Deterministic Rabin objective for the same formula, HOA; may be empty.
  std::string rabin_hoa;
  /// The objective as LTL, for cross-checking the automata.
  std::string formula;
  /// Default of the model parameter `p`, if the model has one.
  std::optional<double> default_p;
};

const std::vector<CorpusEntry>& corpus();
/// Throws ModelError for unknown names.
const CorpusEntry& corpus_entry(std::string_view name);

/// Parses the entry's model, overriding `p` when given.
Mdp corpus_model(const CorpusEntry& e, std::optional<double> p = std::nullopt);
Automaton corpus_automaton(const CorpusEntry& e);
/// Throws ModelError when the entry has no Rabin objective.
Automaton corpus_rabin(const CorpusEntry& e);

}  // namespace omegarl
