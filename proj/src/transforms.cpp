#include "fuzzyl/transforms.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

namespace {

class FreshNames {
 public:
  void take(std::string name) { taken_.insert(std::move(name)); }

  std::string make(const std::string& base) {
    std::string name = base + kFreshMarker;
    while (taken_.count(name)) name += kFreshMarker;
    taken_.insert(name);
    return name;
  }

 private:
  std::unordered_set<std::string> taken_;
};

bool is_e(SystemClass c) {
  return c == SystemClass::FE0L || c == SystemClass::FET0L;
}

bool is_t(SystemClass c) {
  return c == SystemClass::FT0L || c == SystemClass::FET0L;
}

std::string grade_text(double g) {
  std::ostringstream out;
  out << g;
  return out.str();
}

}  // namespace

bool upcast_allowed(SystemClass from, SystemClass to) {
  if (from == to) return true;
  switch (from) {
    case SystemClass::FD0L: return true;
    case SystemClass::F0L: return to != SystemClass::FD0L;
    case SystemClass::FE0L:
    case SystemClass::FT0L: return to == SystemClass::FET0L;
    case SystemClass::FET0L: return false;
  }
  return false;
}

FuzzySystem upcast(const FuzzySystem& system, SystemClass target) {
  const SystemClass from = classify(system);
  if (!upcast_allowed(from, target)) {
    throw DomainError("cannot cast a " + to_string(from) + " system to " +
                      to_string(target));
  }
  FuzzySystem out = system;
  if (is_e(target) && !out.targets) out.targets = out.alphabet.symbols();
  if (is_t(target) && out.tables.size() == 1) {
    FreshNames fresh;
    fresh.take(out.tables.front().name);
    for (const auto& p : out.tables.front().productions) fresh.take(p.label);
    Table copy = out.tables.front();
    copy.name = fresh.make(copy.name);
    for (auto& p : copy.productions) p.label = fresh.make(p.label);
    out.tables.push_back(std::move(copy));
  }
  return out;
}

FuzzySystem cfg_to_e0l(const FuzzyCFG& grammar) {
  require_valid(grammar);
  FuzzySystem out;
  out.name = grammar.name;
  out.alphabet = grammar.alphabet;
  out.axiom = Word{grammar.start};
  out.targets = grammar.terminals;

  Table table{"main", grammar.productions};
  FreshNames fresh;
  for (const auto& p : grammar.productions) fresh.take(p.label);
  const double identity_grade = grammar.max_grade();
  for (Symbol a : grammar.alphabet.symbols()) {
    table.productions.push_back(
        {fresh.make("id" + std::string(1, kFreshMarker) + grammar.alphabet.name(a)),
         a, Word{a}, identity_grade});
  }
  out.tables.push_back(std::move(table));
  return out;
}

OrdinarySystem threshold_filter(const FuzzySystem& system, double lambda) {
  require_valid(system);
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("threshold must satisfy 0 <= lambda < 1");
  }
  FuzzySystem out = system;
  out.tables.clear();
  for (const auto& t : system.tables) {
    const auto c = t.constant_grade();
    if (!c) {
      throw DomainError("table " + t.name + " does not have a constant grade");
    }
    if (*c > lambda) out.tables.push_back(t);
  }
  if (out.tables.empty()) {
    throw DomainError("no table has a grade above " + grade_text(lambda) +
                      "; the threshold language would be empty");
  }
  return erase_grades(std::move(out));
}

FuzzySystem e0l_to_entropy_filtered(const OrdinarySystem& ordinary) {
  const FuzzySystem& g = ordinary.system;
  require_valid(g);
  if (g.tables.size() != 1 || !g.targets) {
    throw DomainError("expected an E0L system (one table and a target alphabet)");
  }
  const Table& source = g.tables.front();

  FreshNames fresh;
  for (const auto& n : g.alphabet.names()) fresh.take(n);

  FuzzySystem out;
  out.name = g.name;
  std::vector<Symbol> barred;
  for (Symbol a : g.alphabet.symbols()) {
    barred.push_back(out.alphabet.add(fresh.make(g.alphabet.name(a))));
  }
  std::vector<std::pair<Symbol, Symbol>> plain;  // (source target, plain copy)
  for (Symbol a : g.alphabet.symbols()) {
    if (std::find(g.targets->begin(), g.targets->end(), a) != g.targets->end()) {
      plain.emplace_back(a, out.alphabet.add(g.alphabet.name(a)));
    }
  }
  const Symbol trap = out.alphabet.add(fresh.make("F"));

  auto bar = [&](const Word& w) {
    Word r;
    r.reserve(w.size());
    for (Symbol s : w) r.push_back(barred[index_of(s)]);
    return r;
  };

  Table table{"main", {}};
  std::size_t next_label = 0;
  auto add = [&](Symbol lhs, Word rhs) {
    table.productions.push_back(
        {"r" + std::string(1, kFreshMarker) + std::to_string(++next_label), lhs,
         std::move(rhs), 1.0});
  };
  for (Symbol a : g.alphabet.symbols()) {
    for (auto i : source.rules_for(a)) add(barred[index_of(a)], bar(source.productions[i].rhs));
    for (const auto& [src, copy] : plain) {
      if (src == a) add(barred[index_of(a)], Word{copy});
    }
  }
  for (const auto& [src, copy] : plain) add(copy, Word{trap});
  add(trap, Word{trap});
  add(trap, Word{trap, trap});
  for (Symbol b : barred) {
    if (table.degree(b) < 2) add(b, Word{trap});
  }

  out.axiom = bar(g.axiom);
  out.tables.push_back(std::move(table));
  return out;
}

}  // namespace fuzzyl
