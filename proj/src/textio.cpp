#include "fuzzyl/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "fuzzyl/error.hpp"

namespace fuzzyl {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

bool is_punct_start(std::string_view rest) {
  return rest.front() == '@' || rest.front() == ':' || rest.substr(0, 2) == "->";
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      const std::string_view rest = raw.substr(i);
      if (is_punct_start(rest)) {
        const std::size_t len = rest.front() == '-' ? 2 : 1;
        line.tokens.push_back({std::string(rest.substr(0, len)), i + 1});
        i += len;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) &&
             !is_punct_start(raw.substr(j))) {
        ++j;
      }
      line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : lines_(tokenize(text)), options_(options) {}

  Document parse() {
    if (lines_.empty()) throw ParseError(1, 1, "empty input");
    const Line& first = lines_.front();
    const std::string& kind = first.tokens.front().text;
    if (kind == "system") return parse_system_body(true);
    if (kind == "osystem") return OrdinarySystem{parse_system_body(false)};
    if (kind == "grammar") return parse_grammar_body();
    throw error(first, first.tokens.front(),
                "expected 'system', 'osystem' or 'grammar', got '" + kind + "'");
  }

 private:
  static ParseError error(const Line& line, const Token& token, const std::string& msg) {
    return ParseError(line.number, token.column, msg);
  }

  static ParseError error_at_end(const Line& line, const std::string& msg) {
    const Token& last = line.tokens.back();
    return ParseError(line.number, last.column + last.text.size(), msg);
  }

  const Line& expect_line(const std::string& keyword) {
    if (pos_ >= lines_.size()) {
      const std::size_t n = lines_.empty() ? 1 : lines_.back().number + 1;
      throw ParseError(n, 1, "expected '" + keyword + "' line, got end of input");
    }
    const Line& line = lines_[pos_];
    if (line.tokens.front().text != keyword) {
      throw error(line, line.tokens.front(),
                  "expected '" + keyword + "', got '" + line.tokens.front().text + "'");
    }
    ++pos_;
    return line;
  }

  bool peek_keyword(const std::string& keyword) const {
    return pos_ < lines_.size() && lines_[pos_].tokens.front().text == keyword;
  }

  std::string name_token(const Line& line, const Token& token, const char* what) {
    if (auto why = token_problem(token.text)) {
      throw error(line, token, std::string(what) + " '" + token.text + "': " + *why);
    }
    return token.text;
  }

  std::string single_name(const Line& line, const char* what) {
    if (line.tokens.size() != 2) {
      throw error(line, line.tokens.front(),
                  std::string("expected exactly one ") + what + " name");
    }
    return name_token(line, line.tokens[1], what);
  }

  void declare_symbols(const Line& line, Alphabet& alphabet) {
    if (line.tokens.size() < 2) throw error_at_end(line, "expected at least one symbol");
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      const Token& t = line.tokens[i];
      std::string name = name_token(line, t, "symbol");
      if (!options_.allow_fresh_marker && name.find(kFreshMarker) != std::string::npos) {
        throw error(line, t, "symbol '" + name + "' contains the reserved marker '" +
                                 std::string(1, kFreshMarker) + "'");
      }
      if (alphabet.find(name)) throw error(line, t, "duplicate symbol '" + name + "'");
      alphabet.add(std::move(name));
    }
  }

  Symbol symbol(const Line& line, const Token& t, const Alphabet& alphabet) {
    if (auto s = alphabet.find(t.text)) return *s;
    throw error(line, t, "symbol '" + t.text + "' is not in the alphabet");
  }

  std::vector<Symbol> symbol_list(const Line& line, const Alphabet& alphabet) {
    std::vector<Symbol> out;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
      out.push_back(symbol(line, line.tokens[i], alphabet));
    }
    return out;
  }

  double grade(const Line& line, const Token& t) {
    const std::string& s = t.text;
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    bool ok = i > 0;
    if (ok && i < s.size()) {
      ok = s[i] == '.';
      const std::size_t frac_start = ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      const std::size_t frac = i - frac_start;
      ok = ok && i == s.size() && frac >= 1 && frac <= 9;
    }
    if (!ok) {
      throw error(line, t, "grade '" + s + "' is not a decimal with at most 9 fractional digits");
    }
    double value = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    if (value > 1.0) throw error(line, t, "grade " + s + " is outside [0,1]");
    return value;
  }

  // [LABEL ':'] SYMBOL '->' SYMBOL* ['@' DECIMAL]
  Production rule(const Line& line, const Alphabet& alphabet, bool graded,
                  const std::string& default_label) {
    const auto& tk = line.tokens;
    std::size_t i = 0;
    Production p;
    if (tk.size() >= 2 && tk[1].text == ":") {
      p.label = name_token(line, tk[0], "label");
      i = 2;
    } else {
      p.label = default_label;
    }
    if (i >= tk.size()) throw error_at_end(line, "expected a left-hand side symbol");
    p.lhs = symbol(line, tk[i], alphabet);
    ++i;
    if (i >= tk.size() || tk[i].text != "->") {
      if (i >= tk.size()) throw error_at_end(line, "expected '->'");
      throw error(line, tk[i], "expected '->'");
    }
    ++i;
    while (i < tk.size() && tk[i].text != "@") {
      if (tk[i].text == "->" || tk[i].text == ":") throw error(line, tk[i], "unexpected '" + tk[i].text + "'");
      p.rhs.push_back(symbol(line, tk[i], alphabet));
      ++i;
    }
    if (graded) {
      if (i >= tk.size()) throw error_at_end(line, "expected '@' and a grade");
      ++i;
      if (i >= tk.size()) throw error_at_end(line, "expected a grade after '@'");
      p.grade = grade(line, tk[i]);
      ++i;
      if (i < tk.size()) throw error(line, tk[i], "unexpected text after the grade");
    } else if (i < tk.size()) {
      throw error(line, tk[i], "grades are not allowed in an osystem file");
    }
    if (auto [it, inserted] = labels_.emplace(p.label, line.number); !inserted) {
      throw error(line, tk.front(), "duplicate label '" + p.label + "' (first used on line " +
                                        std::to_string(it->second) + ")");
    }
    return p;
  }

  FuzzySystem parse_system_body(bool graded) {
    FuzzySystem sys;
    sys.name = single_name(expect_line(graded ? "system" : "osystem"), "system");
    declare_symbols(expect_line("alphabet"), sys.alphabet);
    sys.axiom = symbol_list(expect_line("axiom"), sys.alphabet);
    if (peek_keyword("targets")) {
      const Line& line = expect_line("targets");
      if (line.tokens.size() < 2) throw error_at_end(line, "expected at least one target");
      sys.targets = symbol_list(line, sys.alphabet);
    }
    while (pos_ < lines_.size()) {
      const Line& header = expect_line("table");
      Table table{single_name(header, "table"), {}};
      if (sys.find_table(table.name)) {
        throw error(header, header.tokens[1], "duplicate table '" + table.name + "'");
      }
      const std::size_t table_number = sys.tables.size() + 1;
      bool closed = false;
      while (pos_ < lines_.size()) {
        const Line& line = lines_[pos_++];
        if (line.tokens.front().text == "end" && line.tokens.size() == 1) {
          closed = true;
          break;
        }
        table.productions.push_back(
            rule(line, sys.alphabet, graded,
                 "t" + std::to_string(table_number) + "_r" +
                     std::to_string(table.productions.size() + 1)));
      }
      if (!closed) {
        throw ParseError(lines_.back().number + 1, 1, "table " + table.name + " is missing 'end'");
      }
      if (table.productions.empty()) {
        throw error(header, header.tokens.front(), "table " + table.name + " has no rules");
      }
      sys.tables.push_back(std::move(table));
    }
    if (sys.tables.empty()) {
      throw ParseError(lines_.back().number + 1, 1, "expected at least one table");
    }
    if (options_.validate) require_valid(sys);
    return sys;
  }

  FuzzyCFG parse_grammar_body() {
    FuzzyCFG g;
    g.name = single_name(expect_line("grammar"), "grammar");
    const Line& nt = expect_line("nonterminals");
    declare_symbols(nt, g.alphabet);
    g.nonterminals = g.alphabet.symbols();
    const Line& t = expect_line("terminals");
    declare_symbols(t, g.alphabet);
    for (std::size_t i = g.nonterminals.size(); i < g.alphabet.size(); ++i) {
      g.terminals.push_back(symbol_at(i));
    }
    const Line& start = expect_line("start");
    if (start.tokens.size() != 2) throw error(start, start.tokens.front(), "expected one start symbol");
    g.start = symbol(start, start.tokens[1], g.alphabet);
    if (!g.is_nonterminal(g.start)) {
      throw error(start, start.tokens[1], "start symbol must be a nonterminal");
    }
    while (pos_ < lines_.size()) {
      const Line& line = lines_[pos_++];
      Production p = rule(line, g.alphabet, true, "r" + std::to_string(g.productions.size() + 1));
      if (!g.is_nonterminal(p.lhs)) {
        throw error(line, line.tokens.front(), "left-hand side must be a nonterminal");
      }
      g.productions.push_back(std::move(p));
    }
    if (options_.validate) require_valid(g);
    return g;
  }

  std::vector<Line> lines_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> labels_;
};

std::string join_symbols(const Alphabet& alphabet, const std::vector<Symbol>& symbols) {
  std::string out;
  for (Symbol s : symbols) {
    out += ' ';
    out += alphabet.name(s);
  }
  return out;
}

void write_rule(std::ostringstream& out, const Alphabet& alphabet, const Production& p,
                bool graded) {
  out << p.label << ": " << alphabet.name(p.lhs) << " ->" << join_symbols(alphabet, p.rhs);
  if (graded) out << " @ " << format_grade(p.grade);
  out << '\n';
}

std::string serialize(const FuzzySystem& s, bool graded) {
  std::ostringstream out;
  out << (graded ? "system " : "osystem ") << s.name << '\n';
  out << "alphabet" << join_symbols(s.alphabet, s.alphabet.symbols()) << '\n';
  out << "axiom" << join_symbols(s.alphabet, s.axiom) << '\n';
  if (s.targets) {
    auto targets = *s.targets;
    std::sort(targets.begin(), targets.end());
    out << "targets" << join_symbols(s.alphabet, targets) << '\n';
  }
  for (const auto& t : s.tables) {
    out << "table " << t.name << '\n';
    for (const auto& p : t.canonical()) write_rule(out, s.alphabet, p, graded);
    out << "end\n";
  }
  return out.str();
}

}  // namespace

Document parse_document(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

std::variant<FuzzySystem, OrdinarySystem> parse_system(std::string_view text,
                                                       const ParseOptions& options) {
  Document doc = parse_document(text, options);
  if (auto* f = std::get_if<FuzzySystem>(&doc)) return std::move(*f);
  if (auto* o = std::get_if<OrdinarySystem>(&doc)) return std::move(*o);
  throw ParseError(1, 1, "expected a system file, got a grammar");
}

FuzzyCFG parse_grammar(std::string_view text, const ParseOptions& options) {
  Document doc = parse_document(text, options);
  if (auto* g = std::get_if<FuzzyCFG>(&doc)) return std::move(*g);
  throw ParseError(1, 1, "expected a grammar file");
}

std::string format_grade(double grade) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, grade, std::chars_format::fixed);
  return std::string(buf, end);
}

std::string serialize_system(const FuzzySystem& system) { return serialize(system, true); }

std::string serialize_system(const OrdinarySystem& system) {
  return serialize(system.system, false);
}

std::string serialize_grammar(const FuzzyCFG& g) {
  std::ostringstream out;
  out << "grammar " << g.name << '\n';
  auto sorted = [](std::vector<Symbol> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  out << "nonterminals" << join_symbols(g.alphabet, sorted(g.nonterminals)) << '\n';
  out << "terminals" << join_symbols(g.alphabet, sorted(g.terminals)) << '\n';
  out << "start " << g.alphabet.name(g.start) << '\n';
  Table rules{"rules", g.productions};
  for (const auto& p : rules.canonical()) write_rule(out, g.alphabet, p, true);
  return out.str();
}

std::string serialize_sample(const FuzzyLanguageSample& sample, const Alphabet& alphabet) {
  std::string out;
  char buf[32];
  for (const auto& [w, g] : sample.entries) {
    std::snprintf(buf, sizeof buf, "%.6f", g);
    out += render_word(alphabet, w);
    out += '\t';
    out += buf;
    out += '\n';
  }
  out += "# depth=" + std::to_string(sample.depth) + "\n";
  out += std::string("# converged=") + (sample.converged ? "true" : "false") + "\n";
  return out;
}

FuzzyLanguageSample parse_sample(std::string_view text, const Alphabet& alphabet) {
  FuzzyLanguageSample sample;
  std::istringstream in{std::string(text)};
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (line.empty()) continue;
    if (line.rfind("# depth=", 0) == 0) {
      sample.depth = std::stoul(line.substr(8));
      continue;
    }
    if (line.rfind("# converged=", 0) == 0) {
      sample.converged = line.substr(12) == "true";
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(number, 1, "expected WORD<TAB>GRADE");
    double g = 0.0;
    const std::string grade_text = line.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(grade_text.data(), grade_text.data() + grade_text.size(), g);
    if (ec != std::errc{} || ptr != grade_text.data() + grade_text.size()) {
      throw ParseError(number, tab + 2, "bad grade '" + grade_text + "'");
    }
    Word w;
    try {
      w = parse_word(alphabet, line.substr(0, tab));
    } catch (const DomainError& e) {
      throw ParseError(number, 1, e.what());
    }
    sample.entries[w] = g;
  }
  return sample;
}

}  // namespace fuzzyl
