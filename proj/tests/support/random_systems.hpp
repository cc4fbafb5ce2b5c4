#pragma once

// Random small systems and grammars for property tests.

#include <array>
#include <random>
#include <string>

#include "fuzzyl/core.hpp"
#include "fuzzyl/fcfg.hpp"

namespace fuzzyl::testing {

/// Grades drawn from {0.1, ..., 0.9}, exactly as a parser would read them.
inline constexpr std::array<double, 9> kGrades{0.1, 0.2, 0.3, 0.4, 0.5,
                                               0.6, 0.7, 0.8, 0.9};

struct SystemShape {
  std::size_t max_symbols = 3;
  std::size_t max_degree = 3;
  std::size_t max_rhs = 2;
  std::size_t min_axiom = 1;
  std::size_t max_axiom = 2;
  std::size_t min_tables = 1;
  std::size_t max_tables = 1;
  bool targets = false;
  /// Every table gets one grade shared by all its rules.
  bool constant_tables = false;
  /// Every table gives each symbol exactly one rule.
  bool deterministic = false;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double grade() { return kGrades[pick(0, kGrades.size() - 1)]; }
  bool coin() { return pick(0, 1) == 1; }

  Word word(std::size_t alphabet_size, std::size_t lo, std::size_t hi) {
    Word w(pick(lo, hi));
    for (auto& s : w) s = symbol_at(pick(0, alphabet_size - 1));
    return w;
  }

  FuzzySystem system(const SystemShape& shape) {
    static constexpr std::array<const char*, 6> names{"a", "b", "c", "d", "e", "f"};
    FuzzySystem s;
    s.name = "random";
    const std::size_t n = pick(1, shape.max_symbols);
    for (std::size_t i = 0; i < n; ++i) s.alphabet.add(names[i]);
    s.axiom = word(n, shape.min_axiom, shape.max_axiom);
    const std::size_t tables = pick(shape.min_tables, shape.max_tables);
    for (std::size_t t = 0; t < tables; ++t) {
      Table table{"t" + std::to_string(t + 1), {}};
      const double shared = grade();
      for (std::size_t a = 0; a < n; ++a) {
        const std::size_t d = shape.deterministic ? 1 : pick(1, shape.max_degree);
        for (std::size_t k = 0; k < d; ++k) {
          table.productions.push_back(
              {"t" + std::to_string(t + 1) + "_" + names[a] + std::to_string(k + 1),
               symbol_at(a), word(n, 0, shape.max_rhs),
               shape.constant_tables ? shared : grade()});
        }
      }
      s.tables.push_back(std::move(table));
    }
    if (shape.targets) {
      std::vector<Symbol> targets;
      for (std::size_t a = 0; a < n; ++a) {
        if (coin()) targets.push_back(symbol_at(a));
      }
      if (targets.empty()) targets.push_back(symbol_at(pick(0, n - 1)));
      s.targets = targets;
    }
    return s;
  }

  /// Epsilon-free grammar: up to 3 nonterminals, up to 2 terminals, right-hand
  /// sides of length 1 to 3.
  FuzzyCFG grammar() {
    static constexpr std::array<const char*, 3> nts{"S", "A", "B"};
    static constexpr std::array<const char*, 2> ts{"a", "b"};
    FuzzyCFG g;
    g.name = "random";
    const std::size_t nn = pick(1, 3);
    const std::size_t nt = pick(1, 2);
    for (std::size_t i = 0; i < nn; ++i) g.nonterminals.push_back(g.alphabet.add(nts[i]));
    for (std::size_t i = 0; i < nt; ++i) g.terminals.push_back(g.alphabet.add(ts[i]));
    g.start = g.nonterminals.front();
    std::size_t label = 0;
    for (Symbol lhs : g.nonterminals) {
      const std::size_t rules = pick(1, 3);
      for (std::size_t k = 0; k < rules; ++k) {
        Word rhs = word(nn + nt, 1, 3);
        // Bias towards terminating rules so short words exist.
        if (coin()) {
          for (auto& s : rhs) {
            if (coin()) s = g.terminals[pick(0, nt - 1)];
          }
        }
        g.productions.push_back({"p" + std::to_string(++label), lhs, rhs, grade()});
      }
    }
    return g;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fuzzyl::testing
