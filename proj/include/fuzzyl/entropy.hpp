#pragma once

// Fuzzy entropy of strings for single-table systems.
//
// Grades of the rules for a symbol a are normalised into a distribution
// mu over R_a. Rewriting a word w picks one rule per position independently,
// so A_w carries the product distribution and its base-2 entropy is the sum
// of the per-position entropies: E_f(w) = sum_a N_a(w) * H_a.

#include <cstddef>
#include <map>
#include <string>

#include "fuzzyl/core.hpp"
#include "fuzzyl/grade.hpp"

namespace fuzzyl {

struct RuleDistribution {
  Symbol symbol{};
  std::map<std::string, double> weights;  // label -> mu(r)
};

struct EntropyReport {
  Word word;
  double entropy = 0.0;  // bits
  std::map<Symbol, double> per_symbol;  // N_a(w) * H_a for symbols in w
};

/// mu over R_a. Throws DomainError when every rule for `a` has grade 0 or
/// when `a` has no rules.
RuleDistribution rule_distribution(const Table& table, Symbol a);

/// H_a in bits, with 0 log 0 = 0.
double symbol_entropy(const Table& table, Symbol a);

/// Closed-form E_f(w). Throws DomainError for multi-table systems.
EntropyReport fuzzy_entropy(const FuzzySystem& system, const Word& word);

/// E_f(w) by materialising A_w and summing -mu(alpha) log2 mu(alpha).
/// Throws ResourceError when |A_w| exceeds `max_assignments`.
double fuzzy_entropy_oracle(const FuzzySystem& system, const Word& word,
                            std::size_t max_assignments = 1'000'000);

/// True iff mu(r) = 1/d(a) for every symbol and rule; equivalently all
/// grades within each R_a are equal and positive.
bool is_uniform(const FuzzySystem& system);

/// Words of the bounded underlying 0L language with E_f(w) <= c. Target
/// alphabets are not applied. Throws DomainError when c < 0.
WordSet bounded_entropy_language(const FuzzySystem& system, double c,
                                 std::size_t max_depth, std::size_t max_len,
                                 const SearchLimits& limits = {});

}  // namespace fuzzyl
