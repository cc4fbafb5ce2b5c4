#include <doctest.h>

#include <functional>

#include "fuzzyl/error.hpp"
#include "fuzzyl/fcfg.hpp"
#include "support/examples.hpp"
#include "support/random_systems.hpp"

using namespace fuzzyl;
using fuzzyl::testing::grammar;

namespace {

using Sample = std::map<Word, double, ShortLex>;

// Every sequential derivation (any position) up to `depth` steps.
Sample brute_cfg(const FuzzyCFG& g, std::size_t depth, std::size_t max_len) {
  Sample out;
  std::function<void(const Word&, std::size_t, double)> walk = [&](const Word& form,
                                                                   std::size_t k,
                                                                   double grade) {
    bool terminal = true;
    for (Symbol s : form) terminal = terminal && !g.is_nonterminal(s);
    if (terminal) {
      if (grade > 0) {
        auto [it, fresh] = out.try_emplace(form, grade);
        if (!fresh) it->second = std::max(it->second, grade);
      }
      return;
    }
    if (k == depth) return;
    for (std::size_t i = 0; i < form.size(); ++i) {
      for (const auto& p : g.productions) {
        if (p.lhs != form[i]) continue;
        Word next(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), p.rhs.begin(), p.rhs.end());
        next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(i) + 1, form.end());
        if (next.size() <= max_len) walk(next, k + 1, std::min(grade, p.grade));
      }
    }
  };
  walk({g.start}, 0, 1.0);
  return out;
}

Word w(const FuzzyCFG& g, const std::string& text) { return parse_word(g.alphabet, text); }

}  // namespace

TEST_CASE("single derivation") {
  const auto g = grammar("S", "ab", {{"Sab", 0.6}});
  const auto sample = cfg_enumerate(g, 2, 4);
  CHECK(sample.entries == Sample{{w(g, "ab"), 0.6}});
  CHECK(sample.converged);
}

TEST_CASE("a^n b^n with a cheap closing rule") {
  const auto g = grammar("S", "ab", {{"SaSb", 0.9}, {"Sab", 0.4}});
  const auto sample = cfg_enumerate(g, 3, 6);
  // Three steps reach aaabbb (S, aSb, aaSbb, aaabbb) within length 6.
  const Sample expected{{w(g, "ab"), 0.4}, {w(g, "aabb"), 0.4}, {w(g, "aaabbb"), 0.4}};
  CHECK(sample.entries == expected);
  CHECK(brute_cfg(g, 3, 6) == expected);
  CHECK(cfg_enumerate(g, 2, 6).entries == Sample{{w(g, "ab"), 0.4}, {w(g, "aabb"), 0.4}});
}

TEST_CASE("grades take the best derivation") {
  // S -> A @0.9 | a @0.2 ; A -> a @0.7
  const auto g = grammar("SA", "a", {{"SA", 0.9}, {"Sa", 0.2}, {"Aa", 0.7}});
  CHECK(cfg_enumerate(g, 2, 3).entries == Sample{{w(g, "a"), 0.7}});
  CHECK(cfg_enumerate(g, 1, 3).entries == Sample{{w(g, "a"), 0.2}});
}

TEST_CASE("grammar validation") {
  auto g = grammar("S", "a", {{"Sa", 0.5}});
  CHECK(validate(g).empty());
  g.productions[0].grade = 2.0;
  CHECK_FALSE(validate(g).empty());
  g = grammar("S", "a", {{"Sa", 0.5}});
  g.productions.push_back({"q", g.alphabet.at("a"), {}, 0.5});  // terminal lhs
  CHECK_FALSE(validate(g).empty());
  CHECK_THROWS_AS(cfg_enumerate(g, 2, 2), DomainError);
  g = grammar("S", "a", {{"Sa", 0.5}});
  g.terminals.push_back(g.alphabet.at("S"));
  CHECK_FALSE(validate(g).empty());
}

TEST_CASE("leftmost expansion loses nothing on random grammars") {
  fuzzyl::testing::Generator gen(51);
  for (int round = 0; round < 80; ++round) {
    const auto g = gen.grammar();
    const auto left = cfg_enumerate(g, 5, 5, ExpansionOrder::kLeftmost);
    const auto any = cfg_enumerate(g, 5, 5, ExpansionOrder::kAllPositions);
    // Without empty rules every form stays within the final length, so the
    // two orders agree whenever both reached a fixed point.
    if (left.converged && any.converged) CHECK(left.entries == any.entries);
    const auto brute = brute_cfg(g, 5, 5);
    CHECK(any.entries == brute);
    for (const auto& [word, grade] : left.entries) {
      bool member = false;
      for (const auto& p : g.productions) member = member || p.grade == grade;
      CHECK(member);
      CHECK(brute.at(word) >= grade);
    }
  }
}
