#pragma once

// Line-oriented text formats.
//
//   system NAME                 (or "osystem" for systems without grades)
//   alphabet SYMBOL+
//   axiom SYMBOL*
//   [targets SYMBOL+]
//   table NAME                  (one block per table)
//   [LABEL:] SYMBOL -> SYMBOL* @ DECIMAL
//   end
//
// Grammar files start with "grammar NAME", then "nonterminals", "terminals"
// and "start" lines, then rules in the same syntax with no table block.
// '#' starts a comment. An empty right-hand side is the empty word.
// Missing labels become t<table>_r<k> (r<k> in grammars), both 1-based.

#include <string>
#include <string_view>
#include <variant>

#include "fuzzyl/core.hpp"
#include "fuzzyl/fcfg.hpp"
#include "fuzzyl/grade.hpp"

namespace fuzzyl {

struct ParseOptions {
  /// Accept symbols carrying the fresh-symbol marker, as produced by the
  /// transforms.
  bool allow_fresh_marker = false;
  /// Run validate() on the result and throw DomainError on violations.
  bool validate = true;
};

using Document = std::variant<FuzzySystem, OrdinarySystem, FuzzyCFG>;

/// Parses any of the three file kinds. Throws ParseError with a line and
/// column for syntax problems and DomainError for invalid systems.
Document parse_document(std::string_view text, const ParseOptions& options = {});

/// Accepts "system" and "osystem" files.
std::variant<FuzzySystem, OrdinarySystem> parse_system(
    std::string_view text, const ParseOptions& options = {});

FuzzyCFG parse_grammar(std::string_view text, const ParseOptions& options = {});

/// Canonical text: tables in order, rules sorted by (lhs, label), grades
/// with the fewest digits that read back to the same value.
std::string serialize_system(const FuzzySystem& system);
std::string serialize_system(const OrdinarySystem& system);
std::string serialize_grammar(const FuzzyCFG& grammar);

/// Shortest fixed-notation decimal for a grade ("0.3", "1", "0").
std::string format_grade(double grade);

/// "WORD<TAB>GRADE" per entry, shortlex order, six fractional digits, then
/// "# depth=N" and "# converged=true|false".
std::string serialize_sample(const FuzzyLanguageSample& sample,
                             const Alphabet& alphabet);

/// Reads serialize_sample output back. max_len is not stored and reads as 0.
FuzzyLanguageSample parse_sample(std::string_view text, const Alphabet& alphabet);

}  // namespace fuzzyl
