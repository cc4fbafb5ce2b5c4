#include "fuzzyl/fcfg.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

bool FuzzyCFG::is_nonterminal(Symbol s) const {
  return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end();
}

double FuzzyCFG::max_grade() const {
  double best = 0.0;
  for (const auto& p : productions) best = std::max(best, p.grade);
  return best;
}

bool FuzzyCFG::operator==(const FuzzyCFG& other) const {
  auto canonical = [](std::vector<Production> ps) {
    std::sort(ps.begin(), ps.end(), [](const Production& a, const Production& b) {
      if (a.lhs != b.lhs) return a.lhs < b.lhs;
      return a.label < b.label;
    });
    return ps;
  };
  auto sorted = [](std::vector<Symbol> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return name == other.name && alphabet == other.alphabet &&
         sorted(nonterminals) == sorted(other.nonterminals) &&
         sorted(terminals) == sorted(other.terminals) && start == other.start &&
         canonical(productions) == canonical(other.productions);
}

std::vector<Violation> validate(const FuzzyCFG& g) {
  std::vector<Violation> out;
  std::unordered_set<std::string> names;
  for (const auto& n : g.alphabet.names()) {
    if (auto why = token_problem(n)) out.push_back({"symbols", "'" + n + "': " + *why});
    if (!names.insert(n).second) out.push_back({"symbols", "duplicate symbol '" + n + "'"});
  }
  std::vector<int> role(g.alphabet.size(), 0);
  for (Symbol s : g.nonterminals) {
    if (!g.alphabet.contains(s)) {
      out.push_back({"nonterminals", "symbol outside the alphabet"});
      continue;
    }
    role[index_of(s)] |= 1;
  }
  for (Symbol s : g.terminals) {
    if (!g.alphabet.contains(s)) {
      out.push_back({"terminals", "symbol outside the alphabet"});
      continue;
    }
    if (role[index_of(s)] & 1) {
      out.push_back({"terminals", "'" + g.alphabet.name(s) + "' is also a nonterminal"});
    }
    role[index_of(s)] |= 2;
  }
  for (std::size_t i = 0; i < role.size(); ++i) {
    if (role[i] == 0) {
      out.push_back({"symbols", "'" + g.alphabet.name(symbol_at(i)) +
                                    "' is neither terminal nor nonterminal"});
    }
  }
  if (!g.alphabet.contains(g.start) || !g.is_nonterminal(g.start)) {
    out.push_back({"start", "start symbol is not a nonterminal"});
  }
  std::unordered_set<std::string> labels;
  for (const auto& p : g.productions) {
    const std::string at = "rule " + p.label;
    if (auto why = token_problem(p.label)) out.push_back({at, "label: " + *why});
    if (!labels.insert(p.label).second) out.push_back({at, "duplicate label"});
    if (!g.alphabet.contains(p.lhs) || !g.is_nonterminal(p.lhs)) {
      out.push_back({at, "left-hand side is not a nonterminal"});
    }
    for (Symbol s : p.rhs) {
      if (!g.alphabet.contains(s)) {
        out.push_back({at, "right-hand side has a symbol outside the alphabet"});
        break;
      }
    }
    if (!(p.grade >= 0.0 && p.grade <= 1.0)) out.push_back({at, "grade outside [0,1]"});
  }
  return out;
}

void require_valid(const FuzzyCFG& grammar) {
  auto violations = validate(grammar);
  if (violations.empty()) return;
  std::string msg = "invalid grammar '" + grammar.name + "':";
  for (const auto& v : violations) msg += " [" + v.location + ": " + v.message + "]";
  throw DomainError(msg);
}

FuzzyLanguageSample cfg_enumerate(const FuzzyCFG& grammar, std::size_t max_depth,
                                  std::size_t max_len, ExpansionOrder order,
                                  const SearchLimits& limits) {
  require_valid(grammar);
  if (max_depth < 1) throw DomainError("max depth must be at least 1");

  std::vector<std::vector<const Production*>> rules(grammar.alphabet.size());
  for (const auto& p : grammar.productions) rules[index_of(p.lhs)].push_back(&p);
  std::vector<bool> nonterminal(grammar.alphabet.size(), false);
  for (Symbol s : grammar.nonterminals) nonterminal[index_of(s)] = true;

  // Same level-wise maximin scheme as the L system search, over sentential
  // forms with sequential single-position rewriting.
  using GradeMap = std::unordered_map<Word, double, WordHash>;
  GradeMap best;
  FuzzyLanguageSample sample;
  sample.depth = max_depth;
  sample.max_len = max_len;

  const Word axiom{grammar.start};
  if (axiom.size() <= max_len) best.emplace(axiom, 1.0);
  std::vector<Word> changed;
  if (!best.empty()) changed.push_back(axiom);

  bool converged = changed.empty();
  for (std::size_t level = 1; level <= max_depth + 1 && !converged; ++level) {
    GradeMap updates;
    for (const Word& form : changed) {
      const double g = best.at(form);
      for (std::size_t pos = 0; pos < form.size(); ++pos) {
        if (!nonterminal[index_of(form[pos])]) continue;
        for (const Production* p : rules[index_of(form[pos])]) {
          if (form.size() - 1 + p->rhs.size() > max_len) continue;
          Word next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
          next.insert(next.end(), p->rhs.begin(), p->rhs.end());
          next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                      form.end());
          const double gn = std::min(g, p->grade);
          auto [it, inserted] = updates.try_emplace(std::move(next), gn);
          if (!inserted) it->second = std::max(it->second, gn);
        }
        if (order == ExpansionOrder::kLeftmost) break;
      }
    }

    std::vector<Word> next;
    bool probe_changed = false;
    for (auto& [form, g] : updates) {
      auto it = best.find(form);
      if (it != best.end() && it->second >= g) continue;
      if (level == max_depth + 1) {
        probe_changed = true;
        break;
      }
      best[form] = g;
      next.push_back(form);
    }
    if (level == max_depth + 1) {
      converged = !probe_changed;
      break;
    }
    if (best.size() > limits.max_states) {
      throw ResourceError("grammar search exceeded " +
                          std::to_string(limits.max_states) + " sentential forms");
    }
    if (next.empty()) converged = true;
    changed = std::move(next);
  }
  sample.converged = converged;

  for (const auto& [form, g] : best) {
    const bool terminal = std::none_of(form.begin(), form.end(), [&](Symbol s) {
      return nonterminal[index_of(s)];
    });
    if (terminal && g > 0.0) sample.entries.emplace(form, g);
  }
  return sample;
}

}  // namespace fuzzyl
