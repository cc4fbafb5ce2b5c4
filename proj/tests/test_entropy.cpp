#include <doctest.h>

#include <cmath>

#include "fuzzyl/entropy.hpp"
#include "fuzzyl/error.hpp"
#include "support/brute_force.hpp"
#include "support/examples.hpp"
#include "support/random_systems.hpp"

using namespace fuzzyl;
using fuzzyl::testing::aba_system;
using fuzzyl::testing::zeros_system;
using fuzzyl::testing::shannon_bits;

namespace {

Word zeros(std::size_t n) { return Word(n, symbol_at(0)); }

FuzzySystem uniform_pair() {
  FuzzySystem s;
  const Symbol A = s.alphabet.add("A");
  const Symbol a = s.alphabet.add("a");
  s.axiom = {A};
  s.tables.push_back({"main", {{"p1", A, {a}, 0.5}, {"p2", A, {a, a}, 0.5}, {"p3", a, {a}, 0.5}}});
  return s;
}

}  // namespace

TEST_CASE("rule distributions normalise grades") {
  const auto s = zeros_system();
  const auto d = rule_distribution(s.tables[0], symbol_at(0));
  CHECK(d.weights.at("r1") == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
  CHECK(d.weights.at("r2") == doctest::Approx(8.0 / 11.0).epsilon(1e-15));

  const auto aba_sys = aba_system();
  CHECK(rule_distribution(aba_sys.tables[0], symbol_at(0)).weights.at("r1") == 1.0);

  Table three{"t", {{"x", symbol_at(0), {}, 0.4}, {"y", symbol_at(0), {}, 0.4},
                    {"z", symbol_at(0), {}, 0.4}}};
  for (const auto& [label, mu] : rule_distribution(three, symbol_at(0)).weights) {
    CHECK(mu == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }

  Table zero{"t", {{"x", symbol_at(0), {}, 0.0}, {"y", symbol_at(0), {}, 0.0}}};
  CHECK_THROWS_AS(rule_distribution(zero, symbol_at(0)), DomainError);
}

TEST_CASE("entropy of the zeros system words") {
  const auto s = zeros_system();
  // Four labellings of "00" with weights 9/121, 24/121, 24/121, 64/121.
  const double expected00 = shannon_bits({9.0 / 121, 24.0 / 121, 24.0 / 121, 64.0 / 121});
  CHECK(expected00 == doctest::Approx(1.690702).epsilon(1e-6));
  const auto r = fuzzy_entropy(s, zeros(2));
  CHECK(std::abs(r.entropy - expected00) < 1e-12);
  CHECK(std::abs(fuzzy_entropy_oracle(s, zeros(2)) - expected00) < 1e-12);

  const double expected0 = shannon_bits({3.0 / 11, 8.0 / 11});
  CHECK(expected0 == doctest::Approx(0.845351).epsilon(1e-6));
  CHECK(std::abs(fuzzy_entropy_oracle(s, zeros(1)) - expected0) < 1e-12);

  CHECK(fuzzy_entropy(s, {}).entropy == 0.0);
  CHECK(fuzzy_entropy_oracle(s, {}) == 0.0);
  CHECK(r.per_symbol.at(symbol_at(0)) == r.entropy);
}

TEST_CASE("deterministic systems have zero entropy") {
  const auto s = aba_system();
  const Word aba = parse_word(s.alphabet, "aba");
  CHECK(fuzzy_entropy_oracle(s, aba) == 0.0);
  CHECK(fuzzy_entropy(s, aba).entropy == 0.0);
  CHECK(is_uniform(s));
}

TEST_CASE("uniform systems follow sum N_a log2 d(a)") {
  const auto s = uniform_pair();
  CHECK(is_uniform(s));
  CHECK(fuzzy_entropy(s, {symbol_at(0), symbol_at(0)}).entropy == doctest::Approx(2.0));
  CHECK_FALSE(is_uniform(zeros_system()));

  auto zero = uniform_pair();
  for (auto& p : zero.tables[0].productions) p.grade = 0.0;
  CHECK_FALSE(is_uniform(zero));
}

TEST_CASE("multi-table systems are rejected") {
  auto s = zeros_system();
  s.tables.push_back({"other", {{"q", symbol_at(0), {}, 0.5}}});
  CHECK_THROWS_AS(fuzzy_entropy(s, zeros(1)), DomainError);
  CHECK_THROWS_AS(fuzzy_entropy_oracle(s, zeros(1)), DomainError);
  CHECK_THROWS_AS(is_uniform(s), DomainError);
  CHECK_THROWS_AS(bounded_entropy_language(s, 1.0, 2, 4), DomainError);
}

TEST_CASE("oracle cap") {
  const auto s = zeros_system();
  CHECK_THROWS_AS(fuzzy_entropy_oracle(s, zeros(11), 1024), ResourceError);
  CHECK_NOTHROW(fuzzy_entropy_oracle(s, zeros(10), 1024));
}

TEST_CASE("closed form, additivity and non-negativity on random systems") {
  fuzzyl::testing::Generator gen(41);
  for (int round = 0; round < 100; ++round) {
    const auto s = gen.system({});
    for (int k = 0; k < 5; ++k) {
      const Word u = gen.word(s.alphabet.size(), 0, 4);
      const Word v = gen.word(s.alphabet.size(), 0, 4);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      const double eu = fuzzy_entropy(s, u).entropy;
      CHECK(eu >= 0.0);
      CHECK(std::abs(eu - fuzzy_entropy_oracle(s, u)) <= 1e-9);
      CHECK(std::abs(fuzzy_entropy(s, uv).entropy - eu - fuzzy_entropy(s, v).entropy) <= 1e-9);
      const auto report = fuzzy_entropy(s, uv);
      double sum = 0.0;
      for (const auto& [sym, part] : report.per_symbol) sum += part;
      CHECK(std::abs(sum - report.entropy) <= 1e-9);
    }
  }
}

TEST_CASE("zero entropy iff every occurring symbol is degenerate") {
  fuzzyl::testing::Generator gen(42);
  for (int round = 0; round < 100; ++round) {
    const auto s = gen.system({});
    const Word w = gen.word(s.alphabet.size(), 0, 5);
    bool degenerate = true;
    for (Symbol a : w) degenerate = degenerate && s.tables[0].degree(a) == 1;
    CHECK((fuzzy_entropy(s, w).entropy == 0.0) == degenerate);
  }
}

TEST_CASE("bounded entropy language") {
  const auto s = zeros_system();
  WordSet all;
  for (const auto& e : enumerate(s, 2, 4).entries) all.insert(e.first);
  CHECK(bounded_entropy_language(s, 100.0, 2, 4) == all);
  CHECK(bounded_entropy_language(s, 0.0, 2, 4) == WordSet{Word{}});
  CHECK_THROWS_AS(bounded_entropy_language(s, -1.0, 2, 4), DomainError);
}

TEST_CASE("pruned entropy language matches filtered reachability") {
  fuzzyl::testing::Generator gen(43);
  for (int round = 0; round < 80; ++round) {
    fuzzyl::testing::SystemShape shape;
    shape.max_symbols = 4;
    const auto s = gen.system(shape);
    const auto every = reachable_words(s, 4, 6, [](const Word&, const Word&, std::size_t, std::size_t) {
      return true;
    });
    for (double c : {0.0, 0.5, 1.0, 2.5}) {
      WordSet expected;
      for (const auto& w : every) {
        if (fuzzy_entropy(s, w).entropy <= c + 1e-12) expected.insert(w);
      }
      CHECK(bounded_entropy_language(s, c, 4, 6) == expected);
    }
  }
}
