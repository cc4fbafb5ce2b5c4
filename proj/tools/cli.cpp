#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "fuzzyl/core.hpp"
#include "fuzzyl/entropy.hpp"
#include "fuzzyl/error.hpp"
#include "fuzzyl/fcfg.hpp"
#include "fuzzyl/grade.hpp"
#include "fuzzyl/rewrite.hpp"
#include "fuzzyl/textio.hpp"
#include "fuzzyl/transforms.hpp"

namespace fuzzyl::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

struct Options {
  std::string file;
  bool allow_fresh = false;
  std::size_t steps = 0;
  std::string tables;
  std::string choices;
  std::string word;
  std::size_t max_depth = 0;
  std::size_t max_len = 0;
  double lambda = 0.0;
  std::string to;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  Document load(bool validate = true) const {
    std::ifstream in(o_.file);
    if (!in) throw DomainError("cannot read '" + o_.file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    ParseOptions options;
    options.allow_fresh_marker = o_.allow_fresh;
    options.validate = validate;
    return parse_document(buf.str(), options);
  }

  // Fuzzy systems as they are, ordinary systems with unit grades.
  FuzzySystem load_system() const {
    Document doc = load();
    if (auto* f = std::get_if<FuzzySystem>(&doc)) return std::move(*f);
    if (auto* o = std::get_if<OrdinarySystem>(&doc)) return std::move(o->system);
    throw DomainError("'" + o_.file + "' is a grammar, not a system");
  }

  FuzzySystem load_fuzzy() const {
    Document doc = load();
    if (auto* f = std::get_if<FuzzySystem>(&doc)) return std::move(*f);
    throw DomainError("'" + o_.file + "' is not a fuzzy system file");
  }

  int check() const {
    Document doc = load(false);
    if (auto* g = std::get_if<FuzzyCFG>(&doc)) {
      return report(validate(*g), "FCFG");
    }
    const bool fuzzy = std::holds_alternative<FuzzySystem>(doc);
    const FuzzySystem& s = fuzzy ? std::get<FuzzySystem>(doc)
                                 : std::get<OrdinarySystem>(doc).system;
    auto violations = validate(s);
    return report(violations, violations.empty() ? to_string(classify(s), fuzzy) : "");
  }

  int derive() const {
    const FuzzySystem s = load_system();
    std::vector<std::string> tables;
    if (!o_.tables.empty()) {
      for (auto& t : split(o_.tables, ',')) tables.push_back(trim(t));
      if (tables.size() == 1) tables.assign(o_.steps, tables.front());
      if (tables.size() != o_.steps) {
        throw UsageError("--tables needs one table per step (or a single table)");
      }
    } else if (s.tables.size() == 1) {
      tables.assign(o_.steps, s.tables.front().name);
    } else {
      throw UsageError("--tables is required for a system with several tables");
    }

    std::vector<LabelVector> rows;
    if (!o_.choices.empty()) {
      for (auto& row : split(o_.choices, ';')) {
        LabelVector v;
        const std::string r = trim(row);
        if (!r.empty()) {
          for (auto& l : split(r, ',')) v.push_back(trim(l));
        }
        rows.push_back(std::move(v));
      }
      if (rows.size() != o_.steps) {
        throw UsageError("--choices needs one label row per step");
      }
    }

    DerivationTrace d;
    d.tables = tables;
    d.trace.push_back(s.axiom);
    for (std::size_t i = 0; i < o_.steps; ++i) {
      const auto index = s.find_table(tables[i]);
      if (!index) throw DomainError("unknown table '" + tables[i] + "'");
      const Table& table = s.tables[*index];
      const Word& from = d.trace.back();
      LabelVector choice;
      if (!rows.empty()) {
        choice = rows[i];
      } else {
        for (std::size_t j = 0; j < from.size(); ++j) {
          const auto rules = table.rules_for(from[j]);
          if (rules.size() != 1) {
            throw DomainError("step " + std::to_string(i) + ": symbol '" +
                              s.alphabet.name(from[j]) +
                              "' has several rules; pass --choices");
          }
          choice.push_back(table.productions[rules.front()].label);
        }
      }
      d.trace.push_back(step(from, table, choice));
      d.choices.push_back(std::move(choice));
    }
    if (o_.steps > 0) {
      const TraceCheck checked = check_trace(s, d);
      if (!checked.ok()) throw DomainError(checked.violation);
    }
    for (const auto& w : d.trace) out_ << render_word_compact(s.alphabet, w) << '\n';
    return kOk;
  }

  int grade() const {
    const FuzzySystem s = load_system();
    GradeQuery q{parse_word(s.alphabet, o_.word), o_.max_depth, o_.max_len};
    out_ << fixed6(grade_of(s, q)) << '\n';
    return kOk;
  }

  int enumerate_language() const {
    const FuzzySystem s = load_system();
    out_ << serialize_sample(enumerate(s, o_.max_depth, o_.max_len), s.alphabet);
    return kOk;
  }

  int threshold() const {
    const FuzzySystem s = load_system();
    for (const auto& w : threshold_language(s, o_.lambda, o_.max_depth, o_.max_len)) {
      out_ << render_word_compact(s.alphabet, w) << '\n';
    }
    return kOk;
  }

  int entropy() const {
    const FuzzySystem s = load_system();
    const Word w = parse_word(s.alphabet, o_.word);
    const EntropyReport r = fuzzy_entropy(s, w);
    out_ << fixed6(r.entropy) << '\n';
    for (const auto& [sym, part] : r.per_symbol) {
      out_ << s.alphabet.name(sym) << '\t' << count_of(w, sym) << '\t' << fixed6(part) << '\n';
    }
    return kOk;
  }

  int convert() const {
    const auto colon = o_.to.find(':');
    const std::string kind = o_.to.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : o_.to.substr(colon + 1);

    if (kind == "upcast") {
      auto target = parse_system_class(arg);
      if (!target) throw UsageError("unknown class '" + arg + "'");
      out_ << serialize_system(upcast(load_fuzzy(), *target));
      return kOk;
    }
    if (kind == "threshold-filter") {
      double lambda = 0.0;
      try {
        std::size_t used = 0;
        lambda = std::stod(arg, &used);
        if (used != arg.size()) throw std::invalid_argument(arg);
      } catch (const std::exception&) {
        throw UsageError("threshold-filter needs a number, got '" + arg + "'");
      }
      out_ << serialize_system(threshold_filter(load_fuzzy(), lambda));
      return kOk;
    }
    if (!arg.empty()) throw UsageError("'" + kind + "' takes no argument");
    if (kind == "e0l-from-cfg") {
      Document doc = load();
      auto* g = std::get_if<FuzzyCFG>(&doc);
      if (!g) throw DomainError("e0l-from-cfg needs a grammar file");
      out_ << serialize_system(cfg_to_e0l(*g));
      return kOk;
    }
    if (kind == "entropy0l") {
      Document doc = load();
      auto* o = std::get_if<OrdinarySystem>(&doc);
      if (!o) throw DomainError("entropy0l needs an osystem file");
      out_ << serialize_system(e0l_to_entropy_filtered(*o));
      return kOk;
    }
    throw UsageError("unknown conversion '" + o_.to + "'");
  }

 private:
  int report(const std::vector<Violation>& violations, const std::string& ok) const {
    if (violations.empty()) {
      out_ << ok << '\n';
      return kOk;
    }
    for (const auto& v : violations) out_ << v.location << ": " << v.message << '\n';
    return kDomainError;
  }

  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy Lindenmayer systems: grading, enumeration, entropy and transforms",
               "fuzzyl"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--allow-fresh", o.allow_fresh,
               "accept generated symbols carrying the ' marker");

  auto file_arg = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "system or grammar file")->required();
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--max-depth", o.max_depth, "maximum derivation length")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-len", o.max_len, "maximum word length along a derivation")
        ->required();
  };

  auto* check = app.add_subcommand("check", "validate a file and print its class");
  file_arg(check);

  auto* derive = app.add_subcommand("derive", "print a derivation trace");
  file_arg(derive);
  derive->add_option("--steps", o.steps, "number of steps")->required();
  derive->add_option("--tables", o.tables, "comma-separated table per step");
  derive->add_option("--choices", o.choices,
                     "label rows, ';' between steps, ',' between positions");

  auto* grade = app.add_subcommand("grade", "bounded grade of a word");
  file_arg(grade);
  grade->add_option("--word", o.word, "word; symbols separated by spaces, '()' for empty")
      ->required();
  bounds(grade);

  auto* enumerate = app.add_subcommand("enumerate", "bounded fuzzy language sample");
  file_arg(enumerate);
  bounds(enumerate);

  auto* threshold = app.add_subcommand("threshold", "words with grade above lambda");
  file_arg(threshold);
  threshold->add_option("--lambda", o.lambda, "threshold in [0,1)")->required();
  bounds(threshold);

  auto* entropy = app.add_subcommand("entropy", "fuzzy entropy of a word");
  file_arg(entropy);
  entropy->add_option("--word", o.word, "word")->required();

  auto* convert = app.add_subcommand("convert", "apply a construction");
  file_arg(convert);
  convert
      ->add_option("--to", o.to,
                   "upcast:CLASS | e0l-from-cfg | threshold-filter:X | entropy0l")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fuzzyl: " << e.what() << '\n';
    return kUsageError;
  }

  Runner runner(o, out);
  try {
    if (check->parsed()) return runner.check();
    if (derive->parsed()) return runner.derive();
    if (grade->parsed()) return runner.grade();
    if (enumerate->parsed()) return runner.enumerate_language();
    if (threshold->parsed()) return runner.threshold();
    if (entropy->parsed()) return runner.entropy();
    if (convert->parsed()) return runner.convert();
  } catch (const UsageError& e) {
    err << "fuzzyl: " << e.what() << '\n';
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "fuzzyl: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::exception& e) {
    err << "fuzzyl: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace fuzzyl::cli
