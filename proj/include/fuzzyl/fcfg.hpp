#pragma once

// Fuzzy context-free grammars with max-min derivation grades: the grade of a
// terminal word is the maximum over its derivations of the smallest rule
// grade used.

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzyl/core.hpp"
#include "fuzzyl/grade.hpp"

namespace fuzzyl {

struct FuzzyCFG {
  std::string name = "unnamed";
  /// Nonterminals and terminals together; every symbol is in exactly one of
  /// the two lists below.
  Alphabet alphabet;
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  Symbol start{};
  std::vector<Production> productions;

  bool is_nonterminal(Symbol s) const;
  double max_grade() const;

  bool operator==(const FuzzyCFG& other) const;
};

std::vector<Violation> validate(const FuzzyCFG& grammar);
void require_valid(const FuzzyCFG& grammar);

enum class ExpansionOrder {
  kLeftmost,      // rewrite only the leftmost nonterminal
  kAllPositions,  // rewrite any nonterminal; used to cross-check kLeftmost
};

/// Terminal words derivable from the start symbol in at most `max_depth`
/// sequential steps with every sentential form at most `max_len` long.
FuzzyLanguageSample cfg_enumerate(const FuzzyCFG& grammar, std::size_t max_depth,
                                  std::size_t max_len,
                                  ExpansionOrder order = ExpansionOrder::kLeftmost,
                                  const SearchLimits& limits = {});

}  // namespace fuzzyl
