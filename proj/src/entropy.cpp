#include "fuzzyl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

namespace {

constexpr double kUniformTolerance = 1e-12;
constexpr double kBoundSlack = 1e-12;

const Table& single_table(const FuzzySystem& system) {
  if (system.tables.size() != 1) {
    throw DomainError("fuzzy entropy is defined for single-table systems only");
  }
  return system.tables.front();
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

RuleDistribution rule_distribution(const Table& table, Symbol a) {
  const auto rules = table.rules_for(a);
  if (rules.empty()) {
    throw DomainError("no rules for symbol #" + std::to_string(index_of(a)) +
                      " in table " + table.name);
  }
  double total = 0.0;
  for (auto i : rules) total += table.productions[i].grade;
  if (!(total > 0.0)) {
    throw DomainError("cannot normalise grades of symbol #" +
                      std::to_string(index_of(a)) + ": all rule grades are 0");
  }
  RuleDistribution d{a, {}};
  for (auto i : rules) {
    const auto& p = table.productions[i];
    d.weights[p.label] = p.grade / total;
  }
  return d;
}

double symbol_entropy(const Table& table, Symbol a) {
  double h = 0.0;
  for (const auto& [label, mu] : rule_distribution(table, a).weights) h += plogp(mu);
  return h;
}

EntropyReport fuzzy_entropy(const FuzzySystem& system, const Word& word) {
  const Table& table = single_table(system);
  EntropyReport report{word, 0.0, {}};
  std::map<Symbol, std::size_t> counts;
  for (Symbol s : word) ++counts[s];
  for (const auto& [s, n] : counts) {
    const double part = static_cast<double>(n) * symbol_entropy(table, s);
    report.per_symbol[s] = part;
    report.entropy += part;
  }
  return report;
}

double fuzzy_entropy_oracle(const FuzzySystem& system, const Word& word,
                            std::size_t max_assignments) {
  const Table& table = single_table(system);
  if (word.empty()) return 0.0;

  std::vector<std::vector<double>> mus;
  std::size_t count = 1;
  for (Symbol s : word) {
    std::vector<double> column;
    for (const auto& [label, mu] : rule_distribution(table, s).weights) {
      column.push_back(mu);
    }
    if (count > max_assignments / column.size()) {
      throw ResourceError("A_w has more than " + std::to_string(max_assignments) +
                          " elements");
    }
    count *= column.size();
    mus.push_back(std::move(column));
  }

  // Walk A_w; mu(alpha) is the product of the per-position weights.
  double entropy = 0.0;
  std::vector<std::size_t> odometer(mus.size(), 0);
  while (true) {
    double mu = 1.0;
    for (std::size_t i = 0; i < mus.size(); ++i) mu *= mus[i][odometer[i]];
    entropy += plogp(mu);
    std::size_t pos = mus.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < mus[pos].size()) break;
      odometer[pos] = 0;
      if (pos == 0) return entropy;
    }
  }
}

bool is_uniform(const FuzzySystem& system) {
  const Table& table = single_table(system);
  for (Symbol a : system.alphabet.symbols()) {
    const std::size_t d = table.degree(a);
    if (d == 0) return false;
    double total = 0.0;
    for (auto i : table.rules_for(a)) total += table.productions[i].grade;
    if (!(total > 0.0)) return false;
    for (const auto& [label, mu] : rule_distribution(table, a).weights) {
      if (std::abs(mu - 1.0 / static_cast<double>(d)) > kUniformTolerance) return false;
    }
  }
  return true;
}

WordSet bounded_entropy_language(const FuzzySystem& system, double c,
                                 std::size_t max_depth, std::size_t max_len,
                                 const SearchLimits& limits) {
  if (!(c >= 0.0)) throw DomainError("entropy bound must be non-negative");
  const Table& table = single_table(system);
  require_valid(system);

  // least[j][a]: smallest entropy of a word derived from a in exactly j
  // steps, length bounds ignored. Entropy is additive with non-negative
  // terms, so a word whose sum exceeds c for every reachable j is dead.
  const std::size_t n = system.alphabet.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> least(max_depth + 1, std::vector<double>(n, kInf));
  for (std::size_t a = 0; a < n; ++a) {
    try {
      least[0][a] = symbol_entropy(table, symbol_at(a));
    } catch (const DomainError&) {
      // Words holding this symbol have no entropy; fuzzy_entropy reports it.
      least[0][a] = 0.0;
    }
  }
  for (std::size_t j = 1; j <= max_depth; ++j) {
    for (const auto& p : table.productions) {
      double sum = 0.0;
      for (Symbol b : p.rhs) sum += least[j - 1][index_of(b)];
      double& slot = least[j][index_of(p.lhs)];
      slot = std::min(slot, sum);
    }
  }
  const double bound = c + kBoundSlack;

  // A partial successor p of source x_1..x_n, with x_1..x_k consumed, ends
  // up as p followed by a successor of x_{k+1}..x_n; the latter is bounded
  // below by least[j + 1] of those symbols.
  Word cached_source;
  std::vector<std::vector<double>> tail;  // tail[k][j]
  auto viable = [&](const Word& partial, const Word& source, std::size_t consumed,
                    std::size_t steps_left) {
    if (!source.empty() && (tail.empty() || source != cached_source)) {
      cached_source = source;
      tail.assign(source.size() + 1, std::vector<double>(max_depth + 1, 0.0));
      for (std::size_t k = source.size(); k-- > 0;) {
        for (std::size_t j = 0; j < max_depth; ++j) {
          tail[k][j] = tail[k + 1][j] + least[j + 1][index_of(source[k])];
        }
        tail[k][max_depth] = kInf;
      }
    }
    for (std::size_t j = 0; j <= steps_left; ++j) {
      double sum = source.empty() ? 0.0 : tail[consumed][j];
      for (Symbol s : partial) {
        if (sum > bound) break;
        sum += least[j][index_of(s)];
      }
      if (sum <= bound) return true;
    }
    return false;
  };

  const auto language = reachable_words(system, max_depth, max_len, viable, limits);
  WordSet out;
  for (const auto& w : language) {
    if (fuzzy_entropy(system, w).entropy <= c + kBoundSlack) out.insert(w);
  }
  return out;
}

}  // namespace fuzzyl
