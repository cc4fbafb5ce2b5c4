#pragma once

// Domain types for fuzzy Lindenmayer systems: symbols, words, graded
// productions, tables, and the system container shared by the D0L, 0L, E0L,
// T0L and ET0L variants.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fuzzyl {

/// Index of a symbol in its alphabet's declaration order.
enum class Symbol : std::uint32_t {};

constexpr std::size_t index_of(Symbol s) noexcept {
  return static_cast<std::size_t>(s);
}

constexpr Symbol symbol_at(std::size_t i) noexcept {
  return static_cast<Symbol>(i);
}

/// A word is a sequence of symbols. The empty word is the empty vector.
using Word = std::vector<Symbol>;

/// Orders words by length, then lexicographically by alphabet declaration
/// order.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Symbol s : w) {
      h ^= index_of(s) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// The fresh-symbol marker. Generated symbols and labels carry it; the text
/// parser refuses it in user input unless told otherwise.
inline constexpr char kFreshMarker = '\'';

/// Checks the lexical rules for symbol names and labels: non-empty, no
/// whitespace, none of '#', '@', ':', '(', ')', and no "->". Returns an
/// explanation when the token is not acceptable.
std::optional<std::string> token_problem(std::string_view token);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Appends a symbol. Duplicates are stored and reported by validate().
  Symbol add(std::string name);

  std::optional<Symbol> find(std::string_view name) const;
  /// Throws DomainError for unknown names.
  Symbol at(std::string_view name) const;

  const std::string& name(Symbol s) const { return names_.at(index_of(s)); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool contains(Symbol s) const noexcept { return index_of(s) < names_.size(); }
  std::vector<Symbol> symbols() const;

  /// True when every symbol name is exactly one character long.
  bool single_character() const noexcept;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> lookup_;
};

/// Parses a word. Symbols may be separated by whitespace; when the alphabet
/// is single-character, a contiguous string is also accepted. "()" and the
/// empty string denote the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Renders a word with the given separator; the empty word renders as "()".
std::string render_word(const Alphabet& alphabet, const Word& word,
                        std::string_view separator = " ");

/// Renders contiguously when the alphabet is single-character, space-joined
/// otherwise.
std::string render_word_compact(const Alphabet& alphabet, const Word& word);

/// Occurrence count N_b(w).
std::size_t count_of(const Word& word, Symbol b);

/// A labelled rewriting rule lhs -> rhs applied with grade f(label).
struct Production {
  std::string label;
  Symbol lhs{};
  Word rhs;
  double grade = 1.0;

  bool operator==(const Production&) const = default;
};

/// One substitution: a named set of productions.
struct Table {
  std::string name;
  std::vector<Production> productions;

  /// Positions in `productions` with the given left-hand side, in file order
  /// (the set R_a).
  std::vector<std::size_t> rules_for(Symbol a) const;
  /// d(a): number of productions with left-hand side a.
  std::size_t degree(Symbol a) const;
  /// Productions ordered by (lhs, label).
  std::vector<Production> canonical() const;
  /// The common grade of all productions, if there is one.
  std::optional<double> constant_grade() const;

  /// Structural equality: same name and the same production set.
  bool operator==(const Table& other) const;
};

enum class SystemClass { FD0L, F0L, FE0L, FT0L, FET0L };

/// "FD0L", "F0L", ...; without the leading F when `fuzzy` is false.
std::string to_string(SystemClass c, bool fuzzy = true);
/// Accepts both the fuzzy and the ordinary spelling.
std::optional<SystemClass> parse_system_class(std::string_view text);

/// The container for all five fuzzy L system variants. One table gives the
/// 0L family, several give the T family; `targets` makes it an E variant.
struct FuzzySystem {
  std::string name = "unnamed";
  Alphabet alphabet;
  Word axiom;
  std::vector<Table> tables;
  std::optional<std::vector<Symbol>> targets;

  /// max over all productions of f(r); 0 when there are none.
  double max_grade() const;
  /// Every distinct grade in the system, ascending.
  std::vector<double> grade_set() const;
  /// True when the word is over the target alphabet, or when there is none.
  bool over_targets(const Word& word) const;
  std::optional<std::size_t> find_table(std::string_view name) const;
  /// Locates a production by label across all tables.
  const Production* find_label(std::string_view label) const;

  /// Structural equality; production order within a table is irrelevant.
  bool operator==(const FuzzySystem& other) const;
};

/// An L system without grades. Stored with every grade fixed at 1, which
/// makes its max-min grading collapse to plain reachability.
struct OrdinarySystem {
  FuzzySystem system;

  bool operator==(const OrdinarySystem&) const = default;
};

OrdinarySystem erase_grades(FuzzySystem system);

struct Violation {
  std::string location;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Returns every well-formedness violation. Empty iff the system is valid.
std::vector<Violation> validate(const FuzzySystem& system);

/// Throws DomainError listing the violations when the system is invalid.
void require_valid(const FuzzySystem& system);

/// Most specific class of a valid system. Throws DomainError otherwise.
SystemClass classify(const FuzzySystem& system);

/// d(a) for the given table of the system. Throws DomainError when the symbol
/// is not in the alphabet or the table index is out of range.
std::size_t degree(const FuzzySystem& system, std::size_t table, Symbol a);

}  // namespace fuzzyl
