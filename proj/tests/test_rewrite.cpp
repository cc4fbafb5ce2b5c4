#include <doctest.h>

#include <algorithm>
#include <random>

#include "fuzzyl/error.hpp"
#include "fuzzyl/rewrite.hpp"
#include "support/brute_force.hpp"
#include "support/examples.hpp"
#include "support/random_systems.hpp"

using namespace fuzzyl;
using fuzzyl::testing::aba_system;
using fuzzyl::testing::zeros_system;

namespace {

Word w32(std::size_t n) { return Word(n, symbol_at(0)); }

}  // namespace

TEST_CASE("step applies one rule per position") {
  const auto e31 = aba_system();
  const Word aba = parse_word(e31.alphabet, "aba");
  CHECK(step(aba, e31.tables[0], {"r1", "r2", "r1"}) == parse_word(e31.alphabet, "abaaba"));
  CHECK(step({}, e31.tables[0], {}).empty());

  const auto e32 = zeros_system();
  CHECK(step(w32(2), e32.tables[0], {"r2", "r1"}) == w32(2));
}

TEST_CASE("step rejects malformed choices") {
  const auto e31 = aba_system();
  const Word aba = parse_word(e31.alphabet, "aba");
  CHECK_THROWS_AS(step(aba, e31.tables[0], {"r1", "r2"}), DomainError);
  CHECK_THROWS_AS(step(aba, e31.tables[0], {"r1", "r1", "r1"}), DomainError);
  CHECK_THROWS_AS(step(aba, e31.tables[0], {"r1", "zz", "r1"}), DomainError);
}

TEST_CASE("choice vectors enumerate A_w in table order") {
  const auto e32 = zeros_system();
  const auto v = choice_vectors(w32(2), e32.tables[0]);
  CHECK(v == std::vector<LabelVector>{{"r1", "r1"}, {"r1", "r2"}, {"r2", "r1"}, {"r2", "r2"}});
  CHECK(choice_vectors({}, e32.tables[0]) == std::vector<LabelVector>{{}});

  const auto e31 = aba_system();
  CHECK(choice_vectors(parse_word(e31.alphabet, "aba"), e31.tables[0]) ==
        std::vector<LabelVector>{{"r1", "r2", "r1"}});
}

TEST_CASE("choice cap is an error, not a truncation") {
  const auto e32 = zeros_system();
  RewriteLimits limits{1000};
  CHECK_NOTHROW(choice_vectors(w32(9), e32.tables[0], limits));  // 512
  CHECK_THROWS_AS(choice_vectors(w32(10), e32.tables[0], limits), ResourceError);
  CHECK_THROWS_AS(successors(w32(10), e32.tables[0], limits), ResourceError);
  try {
    choice_vectors(w32(10), e32.tables[0], limits);
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("1024") != std::string::npos);
  }
}

TEST_CASE("successors merge with max of min") {
  const auto e32 = zeros_system();
  const auto s2 = successors(w32(2), e32.tables[0]);
  CHECK(s2 == SuccessorSet{{w32(0), 0.3}, {w32(2), 0.3}, {w32(4), 0.8}});
  CHECK(successors(w32(1), e32.tables[0]) == SuccessorSet{{w32(0), 0.3}, {w32(2), 0.8}});
  CHECK(successors({}, e32.tables[0]) == SuccessorSet{{Word{}, 1.0}});
}

TEST_CASE("successor properties on random systems") {
  fuzzyl::testing::Generator gen(21);
  for (int round = 0; round < 200; ++round) {
    const auto s = gen.system({});
    const Table& t = s.tables[0];
    const Word w = gen.word(s.alphabet.size(), 0, 4);

    const auto vectors = choice_vectors(w, t);
    std::size_t product = 1;
    for (Symbol a : w) product *= t.degree(a);
    CHECK(vectors.size() == product);

    // Keys are exactly the images of the choice vectors, and grades are the
    // max over those vectors of the min rule grade.
    SuccessorSet expected;
    for (const auto& v : vectors) {
      double g = 1.0;
      for (const auto& label : v) g = std::min(g, s.find_label(label)->grade);
      auto [it, fresh] = expected.try_emplace(step(w, t, v), g);
      if (!fresh) it->second = std::max(it->second, g);
    }
    CHECK(successors(w, t) == expected);

    // Independent of enumeration order.
    auto shuffled = fuzzyl::testing::all_steps(w, t);
    std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
    SuccessorSet merged;
    for (auto& [y, g] : shuffled) {
      auto [it, fresh] = merged.try_emplace(y, g);
      if (!fresh) it->second = std::max(it->second, g);
    }
    CHECK(merged == expected);

    // The bounded positional merge agrees once the length bound is loose.
    RuleIndex index(t, s.alphabet.size());
    CHECK(bounded_successors(w, index, 1.0, 64, 1'000'000) == expected);
    // With a tight bound it returns exactly the short successors.
    SuccessorSet short_only;
    for (auto& [y, g] : expected) {
      if (y.size() <= 2) short_only.emplace(y, std::min(g, 0.5));
    }
    CHECK(bounded_successors(w, index, 0.5, 2, 1'000'000) == short_only);
  }
}

TEST_CASE("check_trace grades valid derivations") {
  const auto e31 = aba_system();
  DerivationTrace d;
  d.trace = {parse_word(e31.alphabet, "aba"), parse_word(e31.alphabet, "abaaba")};
  d.choices = {{"r1", "r2", "r1"}};
  auto r = check_trace(e31, d);
  REQUIRE(r.ok());
  CHECK(*r.grade == 0.5);

  const auto e32 = zeros_system();
  DerivationTrace d2;
  d2.trace = {w32(1), w32(2), w32(4)};
  d2.choices = {{"r2"}, {"r2", "r2"}};
  d2.tables = {"main", "main"};
  r = check_trace(e32, d2);
  REQUIRE(r.ok());
  CHECK(*r.grade == 0.8);
}

TEST_CASE("check_trace reports violations") {
  const auto e32 = zeros_system();
  DerivationTrace d;
  d.trace = {w32(1), w32(2)};
  d.choices = {{"r2", "r2"}};
  auto r = check_trace(e32, d);
  CHECK_FALSE(r.ok());
  CHECK(r.violation.find("occurrence shape") != std::string::npos);

  d.trace = {w32(1)};
  d.choices = {};
  CHECK(check_trace(e32, d).violation.find("m >= 1") != std::string::npos);

  d.trace = {w32(1), w32(3)};
  d.choices = {{"r2"}};
  CHECK(check_trace(e32, d).violation.find("rewriting gives") != std::string::npos);

  d.trace = {w32(1), w32(2)};
  d.tables = {"nope"};
  CHECK(check_trace(e32, d).violation.find("unknown table") != std::string::npos);
}

TEST_CASE("traces may revisit words") {
  const auto e32 = zeros_system();
  DerivationTrace d;
  d.trace = {w32(1), w32(2), w32(2), w32(2)};
  d.choices = {{"r2"}, {"r1", "r2"}, {"r2", "r1"}};
  auto r = check_trace(e32, d);
  REQUIRE(r.ok());
  CHECK(*r.grade == 0.3);
}
