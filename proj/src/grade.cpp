#include "fuzzyl/grade.hpp"

#include <algorithm>
#include <unordered_map>

#include "fuzzyl/error.hpp"
#include "fuzzyl/rewrite.hpp"

namespace fuzzyl {

namespace {

using GradeMap = std::unordered_map<Word, double, WordHash>;

struct LevelResult {
  GradeMap best;
  bool converged = false;
};

// Level-wise maximin search. best[x] holds the best grade of any derivation
// of x with at most `level` steps; only words whose value rose in the last
// level are expanded again, since min(g, c) is monotone in g. The axiom
// starts at 1, the neutral element of min.
// Words rejected by `viable` are dropped when first produced. With a `goal`,
// words graded no higher than the goal's current grade are not expanded:
// successors never grade above their source. `converged` is then meaningless.
LevelResult search(const FuzzySystem& system, std::size_t max_depth,
                   std::size_t max_len, const SearchLimits& limits,
                   const Viability& viable = {}, const Word* goal = nullptr) {
  std::vector<RuleIndex> indexes;
  indexes.reserve(system.tables.size());
  for (const auto& t : system.tables) indexes.emplace_back(t, system.alphabet.size());

  LevelResult result;
  if (system.axiom.size() > max_len) {
    result.converged = true;
    return result;
  }
  result.best.emplace(system.axiom, 1.0);
  std::vector<Word> changed{system.axiom};

  // A goal search needs no probe level.
  const std::size_t last = goal ? max_depth : max_depth + 1;
  for (std::size_t level = 1; level <= last; ++level) {
    GradeMap updates;
    const std::size_t steps_left = level <= max_depth ? max_depth - level : 0;
    double floor = -1.0;
    if (goal) {
      auto it = result.best.find(*goal);
      if (it != result.best.end()) floor = it->second;
    }
    for (const Word& w : changed) {
      const double g = result.best.at(w);
      if (g <= floor) continue;
      PrefixFilter keep;
      if (goal && level == max_depth) {
        // Only the goal itself matters in the last step.
        keep = [&](const Word& partial, std::size_t consumed) {
          return partial.size() <= goal->size() &&
                 std::equal(partial.begin(), partial.end(), goal->begin()) &&
                 (!viable || viable(partial, w, consumed, steps_left));
        };
      } else if (viable) {
        keep = [&](const Word& partial, std::size_t consumed) {
          return viable(partial, w, consumed, steps_left);
        };
      }
      for (const auto& index : indexes) {
        for (auto& [y, gy] :
             bounded_successor_list(w, index, g, max_len, limits.max_partial, keep)) {
          auto [it, inserted] = updates.try_emplace(std::move(y), gy);
          if (!inserted) it->second = std::max(it->second, gy);
        }
      }
    }

    std::vector<Word> next;
    for (auto& [y, gy] : updates) {
      auto it = result.best.find(y);
      if (it != result.best.end() && it->second >= gy) continue;
      if (viable && !viable(y, {}, 0, steps_left)) continue;
      if (level == max_depth + 1) {
        // Probe level: something would still change.
        return result;
      }
      if (it == result.best.end()) {
        result.best.emplace(y, gy);
      } else {
        it->second = gy;
      }
      next.push_back(y);
    }
    if (result.best.size() > limits.max_states) {
      throw ResourceError("search exceeded " + std::to_string(limits.max_states) +
                          " tracked words");
    }
    if (next.empty()) {
      result.converged = true;
      return result;
    }
    changed = std::move(next);
  }
  return result;
}

void check_bounds(std::size_t max_depth) {
  if (max_depth < 1) throw DomainError("max depth must be at least 1");
}

// Depth-first walk over every derivation, one branch per choice vector.
class TreeWalk {
 public:
  TreeWalk(const FuzzySystem& system, std::size_t max_depth, std::size_t max_len,
           std::size_t max_nodes)
      : system_(system), max_depth_(max_depth), max_len_(max_len),
        max_nodes_(max_nodes) {}

  std::map<Word, double, ShortLex> run() {
    if (system_.axiom.size() <= max_len_) visit(system_.axiom, 0, 1.0);
    std::map<Word, double, ShortLex> out(found_.begin(), found_.end());
    out[system_.axiom] = system_.max_grade();
    return out;
  }

 private:
  void visit(const Word& x, std::size_t depth, double grade) {
    if (++nodes_ > max_nodes_) {
      throw ResourceError("oracle exceeded " + std::to_string(max_nodes_) +
                          " derivation-tree nodes");
    }
    if (depth > 0) {
      auto [it, inserted] = found_.try_emplace(x, grade);
      if (!inserted) it->second = std::max(it->second, grade);
    }
    if (depth == max_depth_) return;
    for (const auto& table : system_.tables) {
      Word built;
      expand(x, table, 0, built, grade, depth);
    }
  }

  // Chooses a production for position `pos` and recurses along the word.
  // `built` is extended in place and restored before returning.
  void expand(const Word& x, const Table& table, std::size_t pos, Word& built,
              double grade, std::size_t depth) {
    if (pos == x.size()) {
      visit(built, depth + 1, grade);
      return;
    }
    const std::size_t mark = built.size();
    for (const auto& p : table.productions) {
      if (p.lhs != x[pos] || mark + p.rhs.size() > max_len_) continue;
      built.insert(built.end(), p.rhs.begin(), p.rhs.end());
      expand(x, table, pos + 1, built, std::min(grade, p.grade), depth);
      built.resize(mark);
    }
  }

  const FuzzySystem& system_;
  std::size_t max_depth_;
  std::size_t max_len_;
  std::size_t max_nodes_;
  std::size_t nodes_ = 0;
  GradeMap found_;
};

}  // namespace

double grade_of(const FuzzySystem& system, const GradeQuery& query,
                const SearchLimits& limits) {
  require_valid(system);
  check_bounds(query.max_depth);
  if (query.max_len < query.word.size()) {
    throw DomainError("max length is shorter than the queried word");
  }
  if (query.word == system.axiom) return system.max_grade();
  const auto result = search(system, query.max_depth, query.max_len, limits, {}, &query.word);
  auto it = result.best.find(query.word);
  return it == result.best.end() ? 0.0 : it->second;
}

std::map<Word, double, ShortLex> oracle_grades(const FuzzySystem& system,
                                               std::size_t max_depth,
                                               std::size_t max_len,
                                               const SearchLimits& limits) {
  require_valid(system);
  check_bounds(max_depth);
  return TreeWalk(system, max_depth, max_len, limits.max_oracle_nodes).run();
}

double grade_oracle(const FuzzySystem& system, const GradeQuery& query,
                    const SearchLimits& limits) {
  if (query.max_len < query.word.size()) {
    throw DomainError("max length is shorter than the queried word");
  }
  const auto all = oracle_grades(system, query.max_depth, query.max_len, limits);
  auto it = all.find(query.word);
  return it == all.end() ? 0.0 : it->second;
}

FuzzyLanguageSample enumerate(const FuzzySystem& system, std::size_t max_depth,
                              std::size_t max_len, const SearchLimits& limits) {
  require_valid(system);
  check_bounds(max_depth);
  auto result = search(system, max_depth, max_len, limits);
  result.best[system.axiom] = system.max_grade();

  FuzzyLanguageSample sample;
  sample.depth = max_depth;
  sample.max_len = max_len;
  sample.converged = result.converged;
  for (auto& [w, g] : result.best) {
    if (g > 0.0 && system.over_targets(w)) sample.entries.emplace(w, g);
  }
  return sample;
}

WordSet threshold_language(const FuzzySystem& system, double lambda,
                           std::size_t max_depth, std::size_t max_len,
                           const SearchLimits& limits) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw DomainError("threshold must satisfy 0 <= lambda < 1");
  }
  WordSet out;
  for (const auto& [w, g] : enumerate(system, max_depth, max_len, limits).entries) {
    if (g > lambda) out.insert(w);
  }
  return out;
}

WordSet reachable_words(const FuzzySystem& system, std::size_t max_depth,
                        std::size_t max_len, const Viability& viable,
                        const SearchLimits& limits) {
  require_valid(system);
  check_bounds(max_depth);
  FuzzySystem plain = erase_grades(system).system;
  plain.targets.reset();
  WordSet out{system.axiom};
  for (auto& entry : search(plain, max_depth, max_len, limits, viable).best) {
    out.insert(entry.first);
  }
  return out;
}

WordSet ordinary_language(const OrdinarySystem& system, std::size_t max_depth,
                          std::size_t max_len, const SearchLimits& limits) {
  WordSet out;
  for (const auto& entry : enumerate(system.system, max_depth, max_len, limits).entries) {
    out.insert(entry.first);
  }
  return out;
}

}  // namespace fuzzyl
