#pragma once

// Constructions between system families:
//  - upcast: embed a system into a larger family without changing its
//    fuzzy language;
//  - cfg_to_e0l: a fuzzy context-free grammar as a fuzzy E0L system;
//  - threshold_filter: the ordinary system whose language is the lambda-cut
//    of a system with constant-grade tables;
//  - e0l_to_entropy_filtered: an ordinary E0L language as the zero-entropy
//    words of a uniformly fuzzy 0L system.

#include "fuzzyl/core.hpp"
#include "fuzzyl/fcfg.hpp"

namespace fuzzyl {

/// True when `to` contains `from` in the inclusion order
/// D0L < 0L < {E0L, T0L} < ET0L (reflexive).
bool upcast_allowed(SystemClass from, SystemClass to);

/// Throws DomainError for downcasts and for E0L <-> T0L. Adds targets equal
/// to the alphabet for E targets; for T targets adds a copy of the table
/// under fresh labels, so the result has two tables that rewrite alike.
FuzzySystem upcast(const FuzzySystem& system, SystemClass target);

/// Alphabet V_N + V_T, axiom S, one table holding P plus an identity rule
/// a -> a for every symbol graded max f(r), targets V_T.
FuzzySystem cfg_to_e0l(const FuzzyCFG& grammar);

/// Keeps the tables whose constant grade exceeds lambda and drops the
/// grades. Throws DomainError when a table is not constant-grade, when
/// lambda is outside [0,1), or when no table survives.
OrdinarySystem threshold_filter(const FuzzySystem& system, double lambda);

/// Builds a uniformly fuzzy 0L system (all grades 1) whose zero-entropy
/// words are exactly the words of the given ordinary E0L system:
///  - every symbol a gets a barred copy a', and each rule a -> w becomes
///    a' -> w' (w with every symbol barred); the axiom is barred;
///  - every target a gets the rule a' -> a, and the plain a is added with
///    the single rule a -> F, where F is a fresh trap with F -> F | F F;
///  - a barred symbol left with one rule also gets a' -> F.
/// Plain targets then have degree 1 and every other symbol degree 2 or
/// more, so E_f(w) = 0 exactly when w is over the plain targets.
FuzzySystem e0l_to_entropy_filtered(const OrdinarySystem& system);

}  // namespace fuzzyl
