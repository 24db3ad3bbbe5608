#pragma once

// Rule-based biological models compiled to HyLL and SELL theories.
//
// Model files are line oriented:
//   species a b c        names usable as pres(a), pres(b), ...
//   species C/4          a predicate with four arguments
//   const d = 2          a named delay
//   var n f              rule-local variables
//   rule NAME: L => R delay D
//   rule NAME: L -| T delay D     (L inhibits T)
//   init F, ...
//   frames off
// L, R, T are comma-separated facts; `1` stands for none.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hylls/formula.hpp"
#include "hylls/kernel.hpp"
#include "hylls/prover.hpp"
#include "hylls/sell.hpp"

namespace hylls {

struct Fact {
  std::string pred;
  std::vector<Term> args;

  Formula formula() const { return Formula::atom(pred, args); }
  friend bool operator==(const Fact&, const Fact&) = default;
  friend std::strong_ordering operator<=>(const Fact& a, const Fact& b);
};
std::string print_fact(const Fact& f);

struct BioRule {
  enum class Kind { Activation, Inhibition, Custom };
  std::string name;
  Kind kind = Kind::Custom;
  std::vector<Fact> left;
  std::vector<Fact> right;      // empty for inhibition
  std::vector<Fact> inhibited;  // inhibition targets
  unsigned delay = 1;
  std::vector<std::string> vars;  // variables occurring in the rule
};

struct BioModel {
  std::set<std::string> species;
  std::map<std::string, unsigned> predicates;  // declared arity; pres/1 is built in
  std::map<std::string, unsigned> constants;
  std::set<std::string> vars;
  std::vector<BioRule> rules;
  std::vector<Fact> initial;
  bool frames = true;
};

// Throws ParseError with offsets into `text`.
BioModel parse_model(const std::string& text);
// Comma-separated ground facts over the model's species and predicates.
std::vector<Fact> parse_facts(const BioModel& m, const std::string& text);

// Ground facts that some sequence of rule firings can produce, ignoring
// time and multiplicity.
std::vector<Fact> fact_universe(const BioModel& m);
// Ground instances of a rule whose premises lie in the universe.
std::vector<BioRule> ground_rules(const BioModel& m);

struct HyllTheory {
  std::vector<Judgment> gamma;  // stamped rule instances
  std::vector<Judgment> delta;  // initial facts at 0
};

// One unbounded judgment per rule, schematic in its stamp: the rule's
// formula at the world variable t. This is the theory as written; search
// runs on the stamped instances below.
HyllTheory compile_model(const BioModel& m);
Formula rule_formula(const BioRule& r);

// Rule r at stamp t becomes (L -o delta_d R) @ t for every t with
// t + d <= horizon; inhibition becomes (L * T -o delta_d L) @ t. With
// frames each fact p gets (p -o delta_1 p) @ t for t < horizon.
HyllTheory compile_model(const BioModel& m, unsigned horizon);

struct Query {
  enum class Kind { ReachAt, ReachWithin, InvariantUpTo, StableState };
  Kind kind = Kind::ReachAt;
  std::vector<Fact> facts;  // unused for StableState
  unsigned time = 0;        // t for ReachAt, h otherwise

  unsigned horizon() const { return time; }
};

// Throws std::invalid_argument when the query is past `horizon`.
Judgment compile_query(const BioModel& m, const Query& q, unsigned horizon);
Sequent query_sequent(const BioModel& m, const Query& q);

enum class BioVerdict { Holds, Unknown, Fails };
std::string_view verdict_name(BioVerdict v);

struct BioAnswer {
  BioVerdict verdict = BioVerdict::Unknown;
  std::optional<ProofNode> proof;  // for `sequent` when the query holds
  Sequent sequent;                 // the compiled sequent, modal sugar expanded
  SearchStats stats;
};

// Searches with positive atoms (forward chaining over the facts), in a
// single pass at the budget's depth. Proofs need not be the shortest.
BioAnswer answer(const BioModel& m, const Query& q, const SearchBudget& b);

// ---- SELL ----------------------------------------------------------------

enum class SellStyle {
  PerFact,  // !t a -o !t+d a * !t+d b, one marker per fact
  Paper,    // !t a -o !t+d (a * b); inhibition !t a -o !t+d (a * ~b)
};

struct SellTheory {
  SubexpSignature sig;
  std::vector<SellFormula> rules;  // stored under copy
  std::vector<SellFormula> facts;  // encoded initial judgments
};

// Labels 0..horizon, inf and copy; every stamp and copy below inf;
// inf and copy unbounded.
SubexpSignature stamp_signature(unsigned horizon);
SellTheory compile_model_sell(const BioModel& m, unsigned horizon,
                              SellStyle style = SellStyle::PerFact);
// The theory as a one-sided sequent whose workspace holds the encoded
// rules, facts and the goal.
SellSequent sell_query_sequent(const BioModel& m, const Query& q, const SellTheory& t, unsigned horizon);

struct SellBioAnswer {
  BioVerdict verdict = BioVerdict::Unknown;
  std::optional<SellProof> proof;
  SellSequent sequent;
  SubexpSignature sig;
  SearchStats stats;
};
SellBioAnswer answer_sell(const BioModel& m, const Query& q, const SearchBudget& b,
                          SellStyle style = SellStyle::PerFact);

}  // namespace hylls
