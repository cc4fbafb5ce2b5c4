#include "fuzzyl/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

std::optional<std::string> token_problem(std::string_view token) {
  if (token.empty()) return "empty name";
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      return "name contains whitespace";
    }
    switch (c) {
      case '#':
      case '@':
      case ':':
      case '(':
      case ')':
        return std::string("name contains '") + c + "'";
      default:
        break;
    }
  }
  if (token.find("->") != std::string_view::npos) return "name contains \"->\"";
  return std::nullopt;
}

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) add(std::move(n));
}

Symbol Alphabet::add(std::string name) {
  const Symbol s = symbol_at(names_.size());
  lookup_.try_emplace(name, s);
  names_.push_back(std::move(name));
  return s;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw DomainError("unknown symbol '" + std::string(name) + "'");
}

std::vector<Symbol> Alphabet::symbols() const {
  std::vector<Symbol> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(symbol_at(i));
  return out;
}

bool Alphabet::single_character() const noexcept {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string t; in >> t;) tokens.push_back(t);

  Word w;
  if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "()")) return w;
  if (tokens.size() == 1 && !alphabet.find(tokens[0]) &&
      alphabet.single_character()) {
    for (char c : tokens[0]) w.push_back(alphabet.at(std::string(1, c)));
    return w;
  }
  for (const auto& t : tokens) w.push_back(alphabet.at(t));
  return w;
}

std::string render_word(const Alphabet& alphabet, const Word& word,
                        std::string_view separator) {
  if (word.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += separator;
    out += alphabet.name(word[i]);
  }
  return out;
}

std::string render_word_compact(const Alphabet& alphabet, const Word& word) {
  return render_word(alphabet, word, alphabet.single_character() ? "" : " ");
}

std::size_t count_of(const Word& word, Symbol b) {
  return static_cast<std::size_t>(std::count(word.begin(), word.end(), b));
}

std::vector<std::size_t> Table::rules_for(Symbol a) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < productions.size(); ++i) {
    if (productions[i].lhs == a) out.push_back(i);
  }
  return out;
}

std::size_t Table::degree(Symbol a) const {
  return static_cast<std::size_t>(
      std::count_if(productions.begin(), productions.end(),
                    [a](const Production& p) { return p.lhs == a; }));
}

std::vector<Production> Table::canonical() const {
  auto out = productions;
  std::stable_sort(out.begin(), out.end(),
                   [](const Production& x, const Production& y) {
                     if (x.lhs != y.lhs) return x.lhs < y.lhs;
                     return x.label < y.label;
                   });
  return out;
}

std::optional<double> Table::constant_grade() const {
  if (productions.empty()) return std::nullopt;
  const double g = productions.front().grade;
  for (const auto& p : productions) {
    if (p.grade != g) return std::nullopt;
  }
  return g;
}

bool Table::operator==(const Table& other) const {
  return name == other.name && canonical() == other.canonical();
}

std::string to_string(SystemClass c, bool fuzzy) {
  std::string s;
  switch (c) {
    case SystemClass::FD0L: s = "D0L"; break;
    case SystemClass::F0L: s = "0L"; break;
    case SystemClass::FE0L: s = "E0L"; break;
    case SystemClass::FT0L: s = "T0L"; break;
    case SystemClass::FET0L: s = "ET0L"; break;
  }
  return fuzzy ? "F" + s : s;
}

std::optional<SystemClass> parse_system_class(std::string_view text) {
  for (auto c : {SystemClass::FD0L, SystemClass::F0L, SystemClass::FE0L,
                 SystemClass::FT0L, SystemClass::FET0L}) {
    if (text == to_string(c, true) || text == to_string(c, false)) return c;
  }
  return std::nullopt;
}

double FuzzySystem::max_grade() const {
  double best = 0.0;
  for (const auto& t : tables) {
    for (const auto& p : t.productions) best = std::max(best, p.grade);
  }
  return best;
}

std::vector<double> FuzzySystem::grade_set() const {
  std::set<double> grades;
  for (const auto& t : tables) {
    for (const auto& p : t.productions) grades.insert(p.grade);
  }
  return {grades.begin(), grades.end()};
}

bool FuzzySystem::over_targets(const Word& word) const {
  if (!targets) return true;
  return std::all_of(word.begin(), word.end(), [this](Symbol s) {
    return std::find(targets->begin(), targets->end(), s) != targets->end();
  });
}

std::optional<std::size_t> FuzzySystem::find_table(std::string_view n) const {
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].name == n) return i;
  }
  return std::nullopt;
}

const Production* FuzzySystem::find_label(std::string_view label) const {
  for (const auto& t : tables) {
    for (const auto& p : t.productions) {
      if (p.label == label) return &p;
    }
  }
  return nullptr;
}

bool FuzzySystem::operator==(const FuzzySystem& other) const {
  auto sorted_targets = [](const std::optional<std::vector<Symbol>>& t) {
    std::optional<std::vector<Symbol>> out = t;
    if (out) std::sort(out->begin(), out->end());
    return out;
  };
  return name == other.name && alphabet == other.alphabet &&
         axiom == other.axiom && tables == other.tables &&
         sorted_targets(targets) == sorted_targets(other.targets);
}

OrdinarySystem erase_grades(FuzzySystem system) {
  for (auto& t : system.tables) {
    for (auto& p : t.productions) p.grade = 1.0;
  }
  return OrdinarySystem{std::move(system)};
}

namespace {

std::string word_location(const Alphabet& alphabet, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.contains(w[i]) ? alphabet.name(w[i])
                                   : "#" + std::to_string(index_of(w[i]));
  }
  return out.empty() ? "()" : out;
}

}  // namespace

std::vector<Violation> validate(const FuzzySystem& system) {
  std::vector<Violation> out;
  const Alphabet& alphabet = system.alphabet;

  if (alphabet.size() == 0) out.push_back({"alphabet", "alphabet is empty"});
  std::unordered_set<std::string> seen_names;
  for (const auto& n : alphabet.names()) {
    if (auto why = token_problem(n)) {
      out.push_back({"alphabet", "symbol '" + n + "': " + *why});
    }
    if (!seen_names.insert(n).second) {
      out.push_back({"alphabet", "duplicate symbol '" + n + "'"});
    }
  }

  for (std::size_t i = 0; i < system.axiom.size(); ++i) {
    if (!alphabet.contains(system.axiom[i])) {
      out.push_back({"axiom position " + std::to_string(i + 1),
                     "symbol not in alphabet"});
    }
  }

  if (system.targets) {
    std::unordered_set<std::size_t> seen;
    for (Symbol s : *system.targets) {
      if (!alphabet.contains(s)) {
        out.push_back({"targets", "symbol #" + std::to_string(index_of(s)) +
                                      " not in alphabet"});
      } else if (!seen.insert(index_of(s)).second) {
        out.push_back({"targets", "duplicate target '" + alphabet.name(s) + "'"});
      }
    }
  }

  if (system.tables.empty()) out.push_back({"tables", "no tables"});

  std::unordered_set<std::string> labels;
  std::unordered_set<std::string> table_names;
  for (const auto& table : system.tables) {
    const std::string where = "table " + table.name;
    if (auto why = token_problem(table.name)) {
      out.push_back({where, "table name: " + *why});
    }
    if (!table_names.insert(table.name).second) {
      out.push_back({where, "duplicate table name"});
    }
    for (const auto& p : table.productions) {
      const std::string at = where + ", rule " + p.label;
      if (auto why = token_problem(p.label)) {
        out.push_back({at, "label: " + *why});
      }
      if (!labels.insert(p.label).second) {
        out.push_back({at, "duplicate label '" + p.label + "'"});
      }
      if (!alphabet.contains(p.lhs)) {
        out.push_back({at, "left-hand side not in alphabet"});
      }
      for (Symbol s : p.rhs) {
        if (!alphabet.contains(s)) {
          out.push_back({at, "right-hand side " + word_location(alphabet, p.rhs) +
                                 " has a symbol not in the alphabet"});
          break;
        }
      }
      if (!(p.grade >= 0.0 && p.grade <= 1.0)) {
        std::ostringstream msg;
        msg << "grade " << p.grade << " outside [0,1]";
        out.push_back({at, msg.str()});
      }
    }
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (table.degree(symbol_at(i)) == 0) {
        out.push_back({where, "no rule for symbol '" + alphabet.name(symbol_at(i)) +
                                  "' (table is not total)"});
      }
    }
  }
  return out;
}

void require_valid(const FuzzySystem& system) {
  auto violations = validate(system);
  if (violations.empty()) return;
  std::string msg = "invalid system '" + system.name + "':";
  for (const auto& v : violations) msg += " [" + v.location + ": " + v.message + "]";
  throw DomainError(msg);
}

SystemClass classify(const FuzzySystem& system) {
  require_valid(system);
  const bool targets = system.targets.has_value();
  if (system.tables.size() > 1) {
    return targets ? SystemClass::FET0L : SystemClass::FT0L;
  }
  if (targets) return SystemClass::FE0L;
  const Table& t = system.tables.front();
  return t.productions.size() == system.alphabet.size() ? SystemClass::FD0L
                                                        : SystemClass::F0L;
}

std::size_t degree(const FuzzySystem& system, std::size_t table, Symbol a) {
  if (table >= system.tables.size()) {
    throw DomainError("table index " + std::to_string(table) + " out of range");
  }
  if (!system.alphabet.contains(a)) {
    throw DomainError("symbol #" + std::to_string(index_of(a)) +
                      " is not in the alphabet");
  }
  return system.tables[table].degree(a);
}

}  // namespace fuzzyl
