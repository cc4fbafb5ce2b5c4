#include "fuzzyl/rewrite.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

namespace {

const Production* find_in_table(const Table& table, const std::string& label) {
  for (const auto& p : table.productions) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

// Per-position candidate lists, in table order.
std::vector<std::vector<const Production*>> candidates(const Word& word,
                                                       const Table& table) {
  std::vector<std::vector<const Production*>> out;
  out.reserve(word.size());
  for (Symbol s : word) {
    std::vector<const Production*> rules;
    for (const auto& p : table.productions) {
      if (p.lhs == s) rules.push_back(&p);
    }
    out.push_back(std::move(rules));
  }
  return out;
}

void check_cap(const std::vector<std::vector<const Production*>>& options,
               std::size_t cap) {
  std::size_t product = 1;
  for (const auto& o : options) {
    if (o.empty()) return;
    if (product > std::numeric_limits<std::size_t>::max() / o.size()) {
      throw ResourceError("product of degrees overflows; cap is " +
                          std::to_string(cap));
    }
    product *= o.size();
  }
  if (product > cap) {
    throw ResourceError("product of degrees " + std::to_string(product) +
                        " exceeds the choice cap " + std::to_string(cap));
  }
}

// Visits every choice vector in lexicographic order. `visit` receives the
// per-position production pointers.
template <typename Visit>
void for_each_choice(const std::vector<std::vector<const Production*>>& options,
                     Visit&& visit) {
  for (const auto& o : options) {
    if (o.empty()) return;
  }
  std::vector<std::size_t> odometer(options.size(), 0);
  std::vector<const Production*> current(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) {
      current[i] = options[i][odometer[i]];
    }
    visit(current);
    std::size_t pos = options.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < options[pos].size()) break;
      odometer[pos] = 0;
      if (pos == 0) return;
    }
    if (options.empty()) return;
  }
}

}  // namespace

Word step(const Word& word, const Table& table, const LabelVector& choice) {
  if (choice.size() != word.size()) {
    throw DomainError("choice has " + std::to_string(choice.size()) +
                      " labels for a word of length " +
                      std::to_string(word.size()));
  }
  Word out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Production* p = find_in_table(table, choice[i]);
    if (!p) {
      throw DomainError("label '" + choice[i] + "' is not in table " + table.name);
    }
    if (p->lhs != word[i]) {
      throw DomainError("label '" + choice[i] + "' does not rewrite the symbol at position " +
                        std::to_string(i + 1));
    }
    out.insert(out.end(), p->rhs.begin(), p->rhs.end());
  }
  return out;
}

std::vector<LabelVector> choice_vectors(const Word& word, const Table& table,
                                        const RewriteLimits& limits) {
  const auto options = candidates(word, table);
  check_cap(options, limits.max_choices);
  std::vector<LabelVector> out;
  for_each_choice(options, [&](const std::vector<const Production*>& chosen) {
    LabelVector v;
    v.reserve(chosen.size());
    for (const Production* p : chosen) v.push_back(p->label);
    out.push_back(std::move(v));
  });
  return out;
}

SuccessorSet successors(const Word& word, const Table& table,
                        const RewriteLimits& limits) {
  const auto options = candidates(word, table);
  check_cap(options, limits.max_choices);
  SuccessorSet out;
  for_each_choice(options, [&](const std::vector<const Production*>& chosen) {
    Word w;
    double grade = 1.0;
    for (const Production* p : chosen) {
      w.insert(w.end(), p->rhs.begin(), p->rhs.end());
      grade = std::min(grade, p->grade);
    }
    auto [it, inserted] = out.try_emplace(std::move(w), grade);
    if (!inserted) it->second = std::max(it->second, grade);
  });
  return out;
}

TraceCheck check_trace(const FuzzySystem& system, const DerivationTrace& d) {
  auto fail = [](std::string why) { return TraceCheck{std::nullopt, std::move(why)}; };

  if (d.trace.size() < 2) return fail("trace needs at least two words (m >= 1)");
  const std::size_t steps = d.trace.size() - 1;
  if (d.choices.size() != steps) {
    return fail("trace has " + std::to_string(steps) + " steps but " +
                std::to_string(d.choices.size()) + " choice rows");
  }

  std::vector<const Table*> tables;
  if (d.tables.empty()) {
    if (system.tables.size() != 1) {
      return fail("table sequence required for a system with several tables");
    }
    tables.assign(steps, &system.tables.front());
  } else {
    if (d.tables.size() != steps) {
      return fail("table sequence has " + std::to_string(d.tables.size()) +
                  " entries for " + std::to_string(steps) + " steps");
    }
    for (const auto& name : d.tables) {
      auto idx = system.find_table(name);
      if (!idx) return fail("unknown table '" + name + "'");
      tables.push_back(&system.tables[*idx]);
    }
  }

  for (std::size_t i = 0; i < d.trace.size(); ++i) {
    for (Symbol s : d.trace[i]) {
      if (!system.alphabet.contains(s)) {
        return fail("word " + std::to_string(i) + " has a symbol outside the alphabet");
      }
    }
  }

  double grade = 1.0;
  for (std::size_t i = 0; i < steps; ++i) {
    const Word& from = d.trace[i];
    const LabelVector& row = d.choices[i];
    const std::string at = "step " + std::to_string(i);
    if (row.size() != from.size()) {
      return fail(at + ": occurrence shape mismatch, " + std::to_string(row.size()) +
                  " labels for " + std::to_string(from.size()) + " symbols");
    }
    Word out;
    for (std::size_t j = 0; j < from.size(); ++j) {
      const Production* p = find_in_table(*tables[i], row[j]);
      if (!p) {
        return fail(at + ", occurrence " + std::to_string(j + 1) + ": label '" +
                    row[j] + "' is not in table " + tables[i]->name);
      }
      if (p->lhs != from[j]) {
        return fail(at + ", occurrence " + std::to_string(j + 1) + ": label '" +
                    row[j] + "' rewrites " + system.alphabet.name(p->lhs) +
                    ", not " + system.alphabet.name(from[j]));
      }
      out.insert(out.end(), p->rhs.begin(), p->rhs.end());
      grade = std::min(grade, p->grade);
    }
    if (out != d.trace[i + 1]) {
      return fail(at + ": rewriting gives " + render_word(system.alphabet, out) +
                  ", trace has " + render_word(system.alphabet, d.trace[i + 1]));
    }
  }
  return TraceCheck{grade, {}};
}

RuleIndex::RuleIndex(const Table& table, std::size_t alphabet_size)
    : by_lhs_(alphabet_size) {
  for (const auto& p : table.productions) {
    if (index_of(p.lhs) < alphabet_size) by_lhs_[index_of(p.lhs)].push_back(&p);
  }
}

SuccessorSet bounded_successors(const Word& word, const RuleIndex& index,
                                double base, std::size_t max_len,
                                std::size_t max_partial, const PrefixFilter& keep) {
  auto list = bounded_successor_list(word, index, base, max_len, max_partial, keep);
  return SuccessorSet(std::make_move_iterator(list.begin()),
                      std::make_move_iterator(list.end()));
}

std::vector<std::pair<Word, double>> bounded_successor_list(
    const Word& word, const RuleIndex& index, double base, std::size_t max_len,
    std::size_t max_partial, const PrefixFilter& keep) {
  std::unordered_map<Word, double, WordHash> partial{{Word{}, base}};
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& rules = index.rules(word[i]);
    std::unordered_map<Word, double, WordHash> next;
    next.reserve(partial.size() * rules.size());
    for (const auto& [prefix, grade] : partial) {
      for (const Production* p : rules) {
        if (prefix.size() + p->rhs.size() > max_len) continue;
        Word w = prefix;
        w.insert(w.end(), p->rhs.begin(), p->rhs.end());
        if (keep && !next.count(w) && !keep(w, i + 1)) continue;
        const double g = std::min(grade, p->grade);
        auto [it, inserted] = next.try_emplace(std::move(w), g);
        if (!inserted) it->second = std::max(it->second, g);
      }
    }
    if (next.size() > max_partial) {
      throw ResourceError("successor expansion exceeded " +
                          std::to_string(max_partial) + " partial words");
    }
    partial = std::move(next);
    if (partial.empty()) break;
  }
  return {std::make_move_iterator(partial.begin()), std::make_move_iterator(partial.end())};
}

}  // namespace fuzzyl
