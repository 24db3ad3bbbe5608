#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "hylls/term.hpp"
#include "hylls/world.hpp"

namespace hylls {

enum class Connective : unsigned char {
  Atom,
  Tensor,
  One,
  Limp,
  With,
  Top,
  Plus,
  Zero,
  Bang,
  ForallTerm,
  ExistsTerm,
  At,
  Down,
  ForallWorld,
  ExistsWorld,
  // Surface modal sugar, removed by expand_modal.
  Box,
  Dia,
  Delay,
};

// HyLL proposition. Immutable, shared, compared up to alpha-equivalence:
// binder names are printing hints and take no part in equality.
class Formula {
 public:
  // The unit 1.
  Formula() : Formula(one()) {}
  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula tensor(Formula a, Formula b);
  static Formula one();
  static Formula limp(Formula a, Formula b);
  static Formula with(Formula a, Formula b);
  static Formula top();
  static Formula plus(Formula a, Formula b);
  static Formula zero();
  static Formula bang(Formula a);
  // Binder bodies use bound index 0 for the bound variable.
  static Formula forall_term(std::string hint, Formula body);
  static Formula exists_term(std::string hint, Formula body);
  static Formula at(Formula a, WorldExpr w);
  static Formula down(std::string hint, Formula body);
  static Formula forall_world(std::string hint, Formula body);
  static Formula exists_world(std::string hint, Formula body);
  static Formula box(Formula a);
  static Formula dia(Formula a);
  static Formula delay(WorldExpr w, Formula a);

  Connective kind() const { return node_->kind; }
  const std::string& pred() const { return node_->name; }
  const std::string& hint() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }
  const Formula& body() const { return node_->kids[0]; }
  const WorldExpr& world() const { return node_->world; }

  bool is_atom() const { return kind() == Connective::Atom; }
  bool binds_term() const { return kind() == Connective::ForallTerm || kind() == Connective::ExistsTerm; }
  bool binds_world() const {
    return kind() == Connective::Down || kind() == Connective::ForallWorld || kind() == Connective::ExistsWorld;
  }
  bool is_hybrid() const;
  bool has_sugar() const { return node_->sugar; }
  // Number of connectives and atoms.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  // Instantiate the outermost binder (term or world) with a closed value.
  Formula instantiate_term(const Term& t) const;
  Formula instantiate_world(const ConstraintDomain& d, const WorldExpr& w) const;

  void collect_free_terms(std::vector<std::string>& out) const;
  void collect_free_worlds(std::vector<std::string>& out) const;
  void collect_ground_terms(std::vector<Term>& out) const;
  // Every closed world expression occurring in an `at` or `delay`.
  void collect_worlds(std::vector<WorldExpr>& out) const;
  bool mentions_free(const std::string& name) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Connective kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> kids;
    WorldExpr world;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool sugar = false;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Connective k, std::string name, std::vector<Term> args, std::vector<Formula> kids,
                      WorldExpr world);
  friend Formula rebuild_node(const Formula& f, std::vector<Formula> kids, WorldExpr world, std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

// A judgment A @ w.
struct Judgment {
  Formula formula;
  WorldExpr world;

  friend bool operator==(const Judgment& a, const Judgment& b) {
    return a.world == b.world && a.formula == b.formula;
  }
  friend std::strong_ordering operator<=>(const Judgment& a, const Judgment& b) {
    if (auto c = a.formula <=> b.formula; c != 0) return c;
    return a.world <=> b.world;
  }
  std::size_t hash() const { return hash_combine(formula.hash(), world.hash()); }
};

enum class Polarity : unsigned char { Positive, Negative };

Polarity polarity_of(const Formula& f, Polarity atom_default = Polarity::Negative);

// Capture-avoiding substitution of free variables.
Formula subst_world(const ConstraintDomain& d, const Formula& f, const std::string& var, const WorldExpr& w);
Formula subst_term(const Formula& f, const std::string& var, const Term& t);

// Rewrites box / dia / delay into hybrid primitives:
//   box A      = down u. forall world w. (A at u.w)
//   dia A      = down u. exists world w. (A at u.w)
//   delay[v] A = down u. (A at u.v)
Formula expand_modal(const ConstraintDomain& d, const Formula& f);

std::string print_formula(const ConstraintDomain& d, const Formula& f);
std::string print_judgment(const ConstraintDomain& d, const Judgment& j);

}  // namespace hylls
