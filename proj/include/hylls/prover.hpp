#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hylls/kernel.hpp"

namespace hylls {

struct SearchBudget {
  // Unbounded-context copies allowed along one branch. Linear and goal
  // foci are well-founded and not charged.
  unsigned depth = 8;
  // Constants 0..K tried when a world witness is not determined by
  // unification.
  unsigned world_bound = 16;
  std::optional<double> timeout_seconds;
  bool memo = true;
  // Iterative deepening from 0; otherwise a single pass at `depth`.
  bool deepen = true;
  Polarity atoms = Polarity::Negative;
};

enum class SearchMode { Focused, Naive };

enum class Outcome { Proved, Exhausted, Refuted };
std::string_view outcome_name(Outcome o);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  unsigned iterations = 0;
  unsigned depth_used = 0;  // iteration that decided the outcome
  bool timed_out = false;
};

// `refuted` means: no proof exists with at most `depth` copies per branch,
// world witnesses among the unifiers and 0..K, and term witnesses among the
// ground subterms and free variables of the sequent (a default constant
// when there are none). It is only reported by an iteration that hit no
// depth cut-off.
struct SearchResult {
  Outcome outcome = Outcome::Exhausted;
  std::optional<ProofNode> proof;
  SearchStats stats;
};

// Modal sugar must be expanded first (see expand_sequent). Proofs are
// for the sequent as given.
SearchResult prove(const KernelConfig& cfg, const Sequent& s, const SearchBudget& b,
                   SearchMode mode = SearchMode::Focused);

Sequent expand_sequent(const ConstraintDomain& d, const Sequent& s);

// A sequent is stable when the goal is positive or an atom and the linear
// context holds only negative formulas and atoms.
bool is_stable(const KernelConfig& cfg, const Sequent& s, Polarity atoms);

// Legal foci of a stable sequent in heuristic order: linear hypotheses
// (index order), then unbounded ones, then the goal. Throws
// std::logic_error on an unstable sequent.
std::vector<Principal> decide_candidates(const KernelConfig& cfg, const Sequent& s, Polarity atoms);

// Phase of each rule in a focused proof: Decide (copy), Focus (the
// non-invertible rules and init), Invert (the invertible ones). Hybrid
// rules are transparent and report Hybrid.
enum class Phase { Decide, Focus, Invert, Hybrid };
Phase rule_phase(RuleId r);

}  // namespace hylls
