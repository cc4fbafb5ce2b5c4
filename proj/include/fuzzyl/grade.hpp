#pragma once

// Max-min grades of words and bounded fuzzy-language enumeration.
//
// The grade of x is the maximum, over all derivations of x from the axiom,
// of the minimum grade among the productions applied anywhere in the
// derivation. The axiom itself is graded max f(r). Everything here is
// bounded: derivations have at most `max_depth` steps and every word along
// the way has at most `max_len` symbols.

#include <cstddef>
#include <functional>
#include <map>
#include <set>

#include "fuzzyl/core.hpp"

namespace fuzzyl {

struct GradeQuery {
  Word word;
  std::size_t max_depth = 1;
  std::size_t max_len = 0;
};

/// A bounded approximation of the fuzzy language: word -> grade, grades in
/// (0,1]. `converged` is set when one more level would change nothing.
struct FuzzyLanguageSample {
  std::map<Word, double, ShortLex> entries;
  std::size_t depth = 0;
  std::size_t max_len = 0;
  bool converged = false;

  bool operator==(const FuzzyLanguageSample&) const = default;
};

using WordSet = std::set<Word, ShortLex>;

struct SearchLimits {
  /// Partial words live during one successor expansion.
  std::size_t max_partial = 1'000'000;
  /// Words tracked by the level-wise search.
  std::size_t max_states = 5'000'000;
  /// Derivation-tree nodes the exhaustive oracle may visit.
  std::size_t max_oracle_nodes = 5'000'000;
};

/// Bounded grade of a word via the level-wise maximin search. Returns 0 when
/// the word has no derivation within bounds. Grades are those of the
/// underlying system; target alphabets play no part.
double grade_of(const FuzzySystem& system, const GradeQuery& query,
                const SearchLimits& limits = {});

/// Same contract as grade_of, by walking the full derivation tree without
/// merging equal words. Exponential; for cross-checking only.
double grade_oracle(const FuzzySystem& system, const GradeQuery& query,
                    const SearchLimits& limits = {});

/// Oracle grades of every word reached within bounds (one tree walk), the
/// axiom included. Words of grade 0 are kept.
std::map<Word, double, ShortLex> oracle_grades(const FuzzySystem& system,
                                               std::size_t max_depth,
                                               std::size_t max_len,
                                               const SearchLimits& limits = {});

/// All words reachable within bounds with their grades. T variants apply one
/// whole table per step. E variants are filtered to words over the targets
/// after grading.
FuzzyLanguageSample enumerate(const FuzzySystem& system, std::size_t max_depth,
                              std::size_t max_len,
                              const SearchLimits& limits = {});

/// Words of the bounded sample whose grade is strictly above lambda.
/// Throws DomainError unless 0 <= lambda < 1.
WordSet threshold_language(const FuzzySystem& system, double lambda,
                           std::size_t max_depth, std::size_t max_len,
                           const SearchLimits& limits = {});

/// Search pruning. `partial` is the image of the first `consumed` symbols of
/// `source` in the step being taken, and `steps_left` counts the steps that
/// may follow it. Returning false drops every completion of `partial`.
/// Finished successors are checked again as (word, {}, 0, steps_left). Must
/// be monotone: whatever is rejected with k steps left is rejected with fewer.
using Viability = std::function<bool(const Word& partial, const Word& source,
                                     std::size_t consumed, std::size_t steps_left)>;

/// Words reachable within bounds, grades and targets ignored, skipping every
/// word the predicate rejects. The axiom is always included.
WordSet reachable_words(const FuzzySystem& system, std::size_t max_depth,
                        std::size_t max_len, const Viability& viable,
                        const SearchLimits& limits = {});

/// Bounded language of an ordinary system (targets applied).
WordSet ordinary_language(const OrdinarySystem& system, std::size_t max_depth,
                          std::size_t max_len, const SearchLimits& limits = {});

}  // namespace fuzzyl
