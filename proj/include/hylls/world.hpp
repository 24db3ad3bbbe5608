#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hylls {

// A domain constant. Both shipped domains live in the non-negative
// rationals: temporal constants have den == 1.
struct WorldConst {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static WorldConst natural(std::uint64_t n) { return {n, 1}; }
  static WorldConst ratio(std::uint64_t num, std::uint64_t den);

  friend bool operator==(const WorldConst&, const WorldConst&) = default;
  friend std::strong_ordering operator<=>(const WorldConst& a, const WorldConst& b);
};

// One variable occurrence inside a world expression: either a free world
// variable (declared name or eigenvariable) or a de Bruijn index over the
// enclosing world binders.
struct WorldAtom {
  bool bound = false;
  unsigned index = 0;
  std::string name;

  static WorldAtom free(std::string n) { return {false, 0, std::move(n)}; }
  static WorldAtom bound_at(unsigned i) { return {true, i, {}}; }

  friend bool operator==(const WorldAtom&, const WorldAtom&) = default;
  friend std::strong_ordering operator<=>(const WorldAtom& a, const WorldAtom& b);
};

class ConstraintDomain;

// Canonical world expression: a constant part and a sorted multiset of
// variable atoms. An absent constant means the identity world, so the
// representation of iota does not depend on the domain.
class WorldExpr {
 public:
  WorldExpr() = default;
  static WorldExpr iota() { return {}; }
  static WorldExpr constant(const ConstraintDomain& d, WorldConst c);
  static WorldExpr var(std::string name);
  static WorldExpr bound(unsigned index);

  const std::optional<WorldConst>& const_part() const { return constant_; }
  const std::vector<WorldAtom>& atoms() const { return atoms_; }

  bool is_ground() const { return atoms_.empty(); }
  bool is_iota() const { return !constant_ && atoms_.empty(); }
  bool has_bound() const;
  bool mentions_free(const std::string& name) const;
  std::size_t hash() const;

  // Bound-index manipulation, mirroring Term.
  WorldExpr open(const ConstraintDomain& d, unsigned depth, const WorldExpr& value) const;
  WorldExpr shift(int amount, unsigned cutoff) const;
  WorldExpr subst_free(const ConstraintDomain& d, const std::string& name, const WorldExpr& value) const;
  WorldExpr abstract(const std::string& name, unsigned depth) const;

  friend bool operator==(const WorldExpr&, const WorldExpr&) = default;
  friend std::strong_ordering operator<=>(const WorldExpr& a, const WorldExpr& b);

 private:
  friend WorldExpr compose(const ConstraintDomain&, const WorldExpr&, const WorldExpr&);
  friend class ConstraintDomain;
  std::optional<WorldConst> constant_;
  std::vector<WorldAtom> atoms_;  // sorted
};

// The pluggable monoid <W, ., iota>. Implementations supply the constant
// algebra; variable multisets are handled generically, which assumes the
// monoid is commutative.
class ConstraintDomain {
 public:
  virtual ~ConstraintDomain() = default;

  virtual std::string name() const = 0;
  virtual WorldConst identity() const = 0;
  virtual WorldConst compose_const(WorldConst a, WorldConst b) const = 0;
  // v with a . v == b, if any.
  virtual std::optional<WorldConst> divide_const(WorldConst a, WorldConst b) const = 0;
  virtual std::optional<WorldConst> parse_const(const std::string& text) const = 0;
  virtual std::string print_const(WorldConst c) const = 0;
  // Constants tried by bounded enumeration, for bound K.
  virtual std::vector<WorldConst> enumerate(unsigned bound) const = 0;
  // Whether x . a == x . b implies a == b (allows cancelling common atoms).
  virtual bool cancellative() const { return true; }

  std::optional<WorldConst> normalize(WorldConst c) const;
};

class TemporalDomain final : public ConstraintDomain {
 public:
  std::string name() const override { return "temporal"; }
  WorldConst identity() const override { return WorldConst::natural(0); }
  WorldConst compose_const(WorldConst a, WorldConst b) const override;
  std::optional<WorldConst> divide_const(WorldConst a, WorldConst b) const override;
  std::optional<WorldConst> parse_const(const std::string& text) const override;
  std::string print_const(WorldConst c) const override;
  std::vector<WorldConst> enumerate(unsigned bound) const override;
};

// <[0,1], *, 1>. Exposed behind the same interface; only the monoid laws
// are claimed.
class ProbabilisticDomain final : public ConstraintDomain {
 public:
  std::string name() const override { return "prob"; }
  WorldConst identity() const override { return WorldConst::natural(1); }
  WorldConst compose_const(WorldConst a, WorldConst b) const override;
  std::optional<WorldConst> divide_const(WorldConst a, WorldConst b) const override;
  std::optional<WorldConst> parse_const(const std::string& text) const override;
  std::string print_const(WorldConst c) const override;
  std::vector<WorldConst> enumerate(unsigned bound) const override;
  bool cancellative() const override { return false; }
};

const ConstraintDomain& temporal_domain();
const ConstraintDomain& probabilistic_domain();
// Throws std::invalid_argument for an unknown name.
const ConstraintDomain& domain_by_name(const std::string& name);

WorldExpr compose(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w);
// v with u . v == w for ground u, w.
std::optional<WorldExpr> divide(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w);
// Generalisation of divide to expressions with variables: the atoms of u
// must be a sub-multiset of those of w.
std::optional<WorldExpr> divide_expr(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w);
// Throws std::invalid_argument on non-ground input.
bool reachable(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w);

using WorldSubst = std::map<std::string, WorldExpr>;

WorldExpr apply_subst(const ConstraintDomain& d, const WorldExpr& e, const WorldSubst& s);

// Extends `s` so that both sides become equal. Free variables that are not
// in `rigid` and not already bound by `s` are unknowns. Problems with one
// unresolved unknown are solved exactly by division; more unknowns fall
// back to enumerating the domain constants up to `bound`.
std::optional<WorldSubst> unify_worlds(const ConstraintDomain& d, const WorldExpr& e1, const WorldExpr& e2,
                                       const WorldSubst& s, const std::set<std::string>& rigid = {},
                                       unsigned bound = 16);

std::string print_world(const ConstraintDomain& d, const WorldExpr& w,
                        const std::vector<std::string>& bound_names = {});

}  // namespace hylls
