#pragma once

#include <string>

#include <json.hpp>

#include "hylls/kernel.hpp"
#include "hylls/parser.hpp"

namespace hylls {

// Sequent files, one declaration or judgment per line:
//
//   domain temporal
//   worlds u v
//   vars x
//   gamma: pres(a) -o delay[1] pres(b) @ 0
//   delta: pres(a) @ 0
//   goal:  pres(b) * top @ 1
//
// Lines may repeat (gamma/delta); `#` starts a comment. A missing goal is
// an error, a missing domain means temporal.
struct SequentFile {
  const ConstraintDomain* domain = &temporal_domain();
  SymbolTable table;
  Sequent sequent;
};

SequentFile parse_sequent_file(const std::string& text);
std::string print_sequent_file(const SequentFile& f);

// Structured proof format (JSON, keys sorted):
//   { "rule": "tensor_r",
//     "principal": {"zone": "goal"} | {"zone": "delta"|"gamma", "index": N},
//     "witness": {"split": ["A @ w", ...], "term": "t", "world": "w", "eigen": "_a0"},
//     "premises": [ ... ] }
// "principal" is omitted for zone none, "witness" when empty.
nlohmann::json proof_to_json(const ConstraintDomain& d, const ProofNode& p);
// Throws ParseError / std::invalid_argument on malformed input.
ProofNode proof_from_json(const nlohmann::json& j, const ConstraintDomain& d, SymbolTable& table);

enum class ProofFormat { Text, Structured };

// Text: one line per node, "rule: goal" indented by depth. Nodes whose
// premises cannot be recomputed print "rule: ?".
std::string emit_proof(const KernelConfig& cfg, const ProofNode& p, const Sequent& s, ProofFormat format);

}  // namespace hylls
