#pragma once

// Parallel rewriting. One step rewrites every position of a word at once,
// each with a production chosen from the same table.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyl/core.hpp"

namespace fuzzyl {

/// One label per position of the source word: an element of A_w.
using LabelVector = std::vector<std::string>;

/// A fuzzy derivation: the trace x_0..x_m, the production chosen at every
/// occurrence of x_0..x_{m-1}, and the table used at each step. `tables` may
/// be left empty for single-table systems.
struct DerivationTrace {
  std::vector<Word> trace;
  std::vector<LabelVector> choices;
  std::vector<std::string> tables;
};

/// Distinct one-step results, each with its max-min grade.
using SuccessorSet = std::map<Word, double, ShortLex>;

struct RewriteLimits {
  /// Largest number of choice vectors a single enumeration may visit.
  std::size_t max_choices = 1'000'000;
};

/// Applies one production per position and concatenates the right-hand
/// sides. Throws DomainError on a length mismatch, an unknown label, or a
/// label whose left-hand side differs from the symbol at its position.
Word step(const Word& word, const Table& table, const LabelVector& choice);

/// All choice vectors for `word`, ordered lexicographically by the table's
/// rule order at each position. Throws ResourceError when the product of
/// degrees exceeds the cap.
std::vector<LabelVector> choice_vectors(const Word& word, const Table& table,
                                        const RewriteLimits& limits = {});

/// Every distinct successor of `word` with the maximum, over choice vectors
/// producing it, of the minimum production grade. The empty word has the
/// single successor () with grade 1.
SuccessorSet successors(const Word& word, const Table& table,
                        const RewriteLimits& limits = {});

/// Outcome of check_trace: a grade when the trace is a valid derivation,
/// otherwise the first violated condition.
struct TraceCheck {
  std::optional<double> grade;
  std::string violation;

  bool ok() const noexcept { return grade.has_value(); }
};

TraceCheck check_trace(const FuzzySystem& system, const DerivationTrace& trace);

/// Productions of one table grouped by left-hand side, for repeated
/// expansion.
class RuleIndex {
 public:
  RuleIndex(const Table& table, std::size_t alphabet_size);

  const std::vector<const Production*>& rules(Symbol a) const {
    return by_lhs_.at(index_of(a));
  }

 private:
  std::vector<std::vector<const Production*>> by_lhs_;
};

/// Successors of `word` that are no longer than `max_len`, with each grade
/// capped by `base` (the grade already accumulated to reach `word`).
/// Prefixes are merged position by position, so the work is bounded by the
/// number of distinct partial words rather than by the product of degrees.
/// Throws ResourceError when more than `max_partial` partial words are live.
/// When `keep` is given, a partial word built from the first `consumed`
/// symbols is dropped as soon as keep(partial, consumed) is false.
using PrefixFilter = std::function<bool(const Word& partial, std::size_t consumed)>;

SuccessorSet bounded_successors(const Word& word, const RuleIndex& index,
                                double base, std::size_t max_len,
                                std::size_t max_partial, const PrefixFilter& keep = {});

/// bounded_successors in no particular order.
std::vector<std::pair<Word, double>> bounded_successor_list(
    const Word& word, const RuleIndex& index, double base, std::size_t max_len,
    std::size_t max_partial, const PrefixFilter& keep = {});

}  // namespace fuzzyl
