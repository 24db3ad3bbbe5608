#pragma once

// Classical one-sided linear logic with subexponentials. Contexts are
// dyadic: Theta[a] holds what was stored under ?a, the workspace holds the
// active formulas.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hylls/formula.hpp"
#include "hylls/kernel.hpp"
#include "hylls/parser.hpp"
#include "hylls/prover.hpp"

namespace hylls {

// ---- signatures --------------------------------------------------------

struct RawSignature {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;  // (a, b): a <= b
  std::vector<std::string> unbounded;
  std::vector<std::pair<std::string, std::string>> types;  // (label, type)
};

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SubexpSignature {
 public:
  SubexpSignature() = default;

  const std::vector<std::string>& labels() const { return labels_; }
  bool has(const std::string& a) const { return index_.count(a) != 0; }
  bool leq(const std::string& a, const std::string& b) const;
  bool unbounded(const std::string& a) const;
  // Declared type, or the label itself.
  const std::string& type_of(const std::string& a) const;

  // A fresh label typed `type`: it sits below everything `type` is below
  // and is unbounded iff `type` is.
  SubexpSignature with_local(const std::string& label, const std::string& type) const;

 private:
  friend SubexpSignature validate_signature(const RawSignature& raw);
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> leq_;
  std::vector<bool> unbounded_;
  std::vector<std::string> type_;
};

// Computes the reflexive-transitive closure. Throws SignatureError for an
// unknown label or when U is not upward closed; the message names the pair.
SubexpSignature validate_signature(const RawSignature& raw);

// Line-oriented: `labels`, `edge a b`, `unbounded`, `type l a`; '#' comments.
RawSignature parse_signature(const std::string& text);

// ---- formulas ----------------------------------------------------------

enum class SellKind : unsigned char {
  Atom,
  NegAtom,
  Tensor,
  One,
  Plus,
  Zero,
  Par,
  Bot,
  With,
  Top,
  Exists,
  Forall,
  Bang,
  Quest,
  Some,  // union quantifier over labels
  All,   // intersection quantifier over labels
  Box,   // modal sugar, removed by expand_sell_modal
  Dia,
};

class SellFormula {
 public:
  SellFormula() : SellFormula(one()) {}

  static SellFormula atom(std::string pred, std::vector<Term> args = {});
  static SellFormula neg_atom(std::string pred, std::vector<Term> args = {});
  static SellFormula tensor(SellFormula a, SellFormula b);
  static SellFormula one();
  static SellFormula plus(SellFormula a, SellFormula b);
  static SellFormula zero();
  static SellFormula par(SellFormula a, SellFormula b);
  static SellFormula bot();
  static SellFormula with(SellFormula a, SellFormula b);
  static SellFormula top();
  // Term binders use de Bruijn indices, as in HyLL formulas.
  static SellFormula exists(std::string hint, SellFormula body);
  static SellFormula forall(std::string hint, SellFormula body);
  static SellFormula bang(std::string label, SellFormula a);
  static SellFormula quest(std::string label, SellFormula a);
  // Label binders are named; `var` may occur as a label inside the body.
  static SellFormula some(std::string var, std::string type, SellFormula body);
  static SellFormula all(std::string var, std::string type, SellFormula body);
  // Empty type: the unrestricted form over the top label.
  static SellFormula box(std::string type, SellFormula a);
  static SellFormula dia(std::string type, SellFormula a);

  SellKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // predicate or binder
  const std::vector<Term>& args() const { return node_->args; }
  const std::string& label() const { return node_->label; }
  const std::string& type() const { return node_->type; }
  const SellFormula& left() const { return node_->kids[0]; }
  const SellFormula& right() const { return node_->kids[1]; }
  const SellFormula& body() const { return node_->kids[0]; }
  std::size_t hash() const { return node_->hash; }

  bool is_literal() const { return kind() == SellKind::Atom || kind() == SellKind::NegAtom; }
  // Positive: the synchronous connectives and positive literals.
  bool is_positive() const;

  SellFormula instantiate_term(const Term& t) const;
  SellFormula subst_label(const std::string& var, const std::string& label) const;
  bool mentions_label(const std::string& l) const;
  bool mentions_free_term(const std::string& name) const;
  void collect_ground_terms(std::vector<Term>& out) const;
  void collect_labels(std::set<std::string>& out) const;

  friend bool operator==(const SellFormula& a, const SellFormula& b);
  friend std::strong_ordering operator<=>(const SellFormula& a, const SellFormula& b);

 private:
  struct Node {
    SellKind kind;
    std::string name;
    std::vector<Term> args;
    std::string label;
    std::string type;
    std::vector<SellFormula> kids;
    std::size_t hash = 0;
  };
  explicit SellFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SellFormula make(SellKind k, std::string name, std::vector<Term> args, std::string label, std::string type,
                          std::vector<SellFormula> kids);
  SellFormula map_terms(unsigned depth, const Term& t) const;

  std::shared_ptr<const Node> node_;
};

// The top label used by unrestricted box/dia.
inline const std::string kInfinity = "inf";

// Linear negation in negation-normal form. Modal sugar is expanded first.
SellFormula dual(const SellFormula& f);
// box[u] A = all l:u. !l A, dia[u] A = some l:u. !l A; plain box/dia use inf.
SellFormula expand_sell_modal(const SellFormula& f);

// Syntax: ~ (negation, pushed to atoms), * | & +, -o (A -o B = ~A | B),
// 1 0 top bot, !a F, ?a F, exists x. F, forall x. F, some l:a. F,
// all l:a. F, box[a] F, dia[a] F, box F, dia F. Labels are identifiers or
// numbers.
SellFormula parse_sell_formula(const std::string& text);
SellFormula parse_sell_formula(TokenStream& ts, SymbolTable& table);
std::string print_sell_formula(const SellFormula& f);

// ---- sequents ----------------------------------------------------------

struct SellSequent {
  std::map<std::string, std::vector<SellFormula>> theta;  // sorted; sets when unbounded
  std::vector<SellFormula> work;                          // sorted multiset
  std::vector<std::pair<std::string, std::string>> locals;  // fresh labels with their types
};

SellSequent make_sell_sequent(const SubexpSignature& sig, std::map<std::string, std::vector<SellFormula>> theta,
                              std::vector<SellFormula> work,
                              std::vector<std::pair<std::string, std::string>> locals = {});
bool operator==(const SellSequent& a, const SellSequent& b);
// The signature extended by the sequent's local labels.
SubexpSignature effective_signature(const SubexpSignature& sig, const SellSequent& s);
std::string print_sell_sequent(const SellSequent& s);

// Sequent files: `theta LABEL: F` lines, then one `|- F, ...` line or a
// two-sided `A, ... |- B, ...` line whose left side is negated.
SellSequent parse_sell_sequent(const SubexpSignature& sig, const std::string& text);

// ---- kernel ------------------------------------------------------------

enum class SellRule : unsigned char {
  Init,
  One,
  Top,
  Bot,
  Par,
  Tensor,
  Plus1,
  Plus2,
  With,
  Exists,
  Forall,
  Store,     // ?a G moves G into Theta[a]
  Activate,  // a Theta entry back into the workspace; copied when unbounded
  Weaken,
  Promote,
  Some,
  All,
};

std::string_view sell_rule_name(SellRule r);
std::optional<SellRule> sell_rule_from_name(std::string_view name);

struct SellPrincipal {
  enum class Zone : unsigned char { None, Work, Theta };
  Zone zone = Zone::None;
  std::string label;  // Theta only
  std::size_t index = 0;

  static SellPrincipal work(std::size_t i) { return {Zone::Work, "", i}; }
  static SellPrincipal theta(std::string label, std::size_t i) { return {Zone::Theta, std::move(label), i}; }
};

// Tensor: work_split and theta_split give the left premise's share of the
// workspace (principal excluded) and of the linear Theta entries.
struct SellWitness {
  std::vector<SellFormula> work_split;
  std::vector<std::pair<std::string, SellFormula>> theta_split;
  std::optional<Term> term;  // Exists
  std::string label;         // Some
  std::string eigen;         // Forall (term name), All (label name)
};

struct SellProof {
  SellRule rule = SellRule::Init;
  SellPrincipal principal;
  SellWitness witness;
  std::vector<SellProof> premises;

  std::size_t size() const;
};

class SellError : public std::runtime_error {
 public:
  enum class Kind { Shape, SideCondition, Linearity, Ideal, UnknownLabel, Freshness };
  SellError(Kind k, std::string label, const std::string& what)
      : std::runtime_error(what), kind_(k), label_(std::move(label)) {}
  Kind kind() const { return kind_; }
  // The offending label for SideCondition, Linearity, Ideal, UnknownLabel.
  const std::string& label() const { return label_; }

 private:
  Kind kind_;
  std::string label_;
};

std::vector<SellSequent> sell_premises(const SubexpSignature& sig, SellRule rule, const SellSequent& s,
                                       const SellPrincipal& p, const SellWitness& w);

// Single-rule helpers over the workspace or Theta.
SellSequent promote(const SubexpSignature& sig, const SellSequent& s);
SellSequent dereliction_store(const SubexpSignature& sig, const SellSequent& s, std::size_t work_index);
SellSequent weaken(const SubexpSignature& sig, const SellSequent& s, const std::string& label, std::size_t index);
// Witness label for `some`; none for `all` (a fresh label is chosen).
SellSequent instantiate_quant(const SubexpSignature& sig, const SellSequent& s, std::size_t work_index,
                              const std::optional<std::string>& witness);

struct SellVerdict {
  bool valid = true;
  std::vector<std::size_t> path;
  std::string reason;
};
SellVerdict check_sell_proof(const SubexpSignature& sig, const SellProof& p, const SellSequent& s);

// ---- search ------------------------------------------------------------

struct SellSearchResult {
  Outcome outcome = Outcome::Exhausted;
  std::optional<SellProof> proof;
  SearchStats stats;
};

SellSequent expand_sell_sequent(const SubexpSignature& sig, const SellSequent& s);

// Focused search. The depth bounds copies out of unbounded contexts along a
// branch; `refuted` has the same meaning as for HyLL search. Modal sugar is
// expanded first and the proof is for expand_sell_sequent(s).
SellSearchResult prove_sell(const SubexpSignature& sig, const SellSequent& s, const SearchBudget& b);

// ---- HyLL encoding -----------------------------------------------------

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Label name of a ground world.
std::string world_label(const ConstraintDomain& d, const WorldExpr& w);

// The meaning of F at w as a SELL formula over world labels, for the
// fragment atoms, 1, top, 0, *, &, +, -o, delays, at and down. Atoms become
// !w p. Throws EncodeError outside the fragment or for a non-ground world.
SellFormula lower_hyll(const ConstraintDomain& d, const Formula& f, const WorldExpr& w);

// A left-context judgment F@w as ?w |F@w|, and as ?copy ?w |F@w| when
// classical. Throws EncodeError when a label is missing from `sig`.
SellFormula encode_hyll_judgment(const SubexpSignature& sig, const ConstraintDomain& d, const Judgment& j,
                                 bool classical);

inline const std::string kCopyLabel = "copy";

}  // namespace hylls
