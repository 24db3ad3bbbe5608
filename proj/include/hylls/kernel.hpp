#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hylls/formula.hpp"

namespace hylls {

// Gamma; Delta |- goal. Gamma is kept sorted and duplicate-free (set
// semantics), Delta sorted (multiset semantics). Construct through
// make_sequent so the invariants hold.
struct Sequent {
  std::vector<Judgment> gamma;
  std::vector<Judgment> delta;
  Judgment goal;
};

Sequent make_sequent(std::vector<Judgment> gamma, std::vector<Judgment> delta, Judgment goal);
bool sequent_equal(const Sequent& a, const Sequent& b);
std::size_t sequent_hash(const Sequent& s);

// Cut-free dyadic intuitionistic rules plus the hybrid rules.
enum class RuleId : unsigned char {
  Init,
  OneR,
  OneL,
  TensorR,
  TensorL,
  LimpR,
  LimpL,
  WithR,
  WithL1,
  WithL2,
  TopR,
  PlusR1,
  PlusR2,
  PlusL,
  ZeroL,
  BangR,
  BangL,
  Copy,
  ForallR,
  ForallL,
  ExistsR,
  ExistsL,
  AtR,
  AtL,
  DownR,
  DownL,
  ForallWorldR,
  ForallWorldL,
  ExistsWorldR,
  ExistsWorldL,
};

inline constexpr std::size_t kRuleCount = static_cast<std::size_t>(RuleId::ExistsWorldL) + 1;

std::string_view rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);
bool is_axiom(RuleId r);
bool is_hybrid_rule(RuleId r);

struct Principal {
  enum class Zone : unsigned char { None, Goal, Delta, Gamma };
  Zone zone = Zone::None;
  std::size_t index = 0;

  static Principal goal() { return {Zone::Goal, 0}; }
  static Principal delta(std::size_t i) { return {Zone::Delta, i}; }
  static Principal gamma(std::size_t i) { return {Zone::Gamma, i}; }
  friend bool operator==(const Principal&, const Principal&) = default;
};

// Rule instantiation data. Which fields are required depends on the rule:
//   split  - TensorR (Delta part of the left premise), LimpL (Delta part of
//            the premise proving the antecedent)
//   term   - ForallL, ExistsR
//   world  - ForallWorldL, ExistsWorldR
//   eigen  - ForallR, ExistsL (term name), ForallWorldR, ExistsWorldL
//            (world name)
struct Witness {
  std::optional<std::vector<Judgment>> split;
  std::optional<Term> term;
  std::optional<WorldExpr> world;
  std::optional<std::string> eigen;
};

struct ProofNode {
  RuleId rule = RuleId::Init;
  Principal principal;
  Witness witness;
  std::vector<ProofNode> premises;

  std::size_t size() const;
};

struct KernelConfig {
  const ConstraintDomain* domain = &temporal_domain();
  // Disabled: hybrid formulas have no rules (plain ILL).
  bool hybrid = true;
};

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The premises of one rule instance. Throws KernelError on a shape
// mismatch, a malformed or missing witness, non-empty Delta for BangR or
// OneR, or a non-fresh eigenvariable.
std::vector<Sequent> rule_premises(const KernelConfig& cfg, RuleId rule, const Sequent& s, const Principal& principal,
                                   const Witness& witness);

struct Verdict {
  bool valid = true;
  std::vector<std::size_t> path;  // child indices from the root to the failing node
  std::string reason;
};

Verdict check_proof(const KernelConfig& cfg, const ProofNode& proof, const Sequent& s);

std::string print_sequent(const ConstraintDomain& d, const Sequent& s);

}  // namespace hylls
