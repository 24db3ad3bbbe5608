#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace hylls {

// First-order terms of the untyped term language.
//
// Bound variables are de Bruijn indices counted over the enclosing *term*
// binders only (world binders live in a separate index space), so
// alpha-equivalent terms are structurally equal.
class Term {
 public:
  enum class Kind : unsigned char { Constant, Free, Bound, App };

  static Term constant(std::string name);
  static Term free(std::string name);
  static Term bound(unsigned index);
  // Throws std::invalid_argument for an empty argument list.
  static Term app(std::string function, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  unsigned index() const { return node_->index; }
  const std::vector<Term>& args() const { return node_->args; }

  bool is_ground() const;
  bool has_bound() const;
  std::size_t hash() const { return node_->hash; }

  // Replace bound index `depth` by `value`; indices above `depth` are
  // decremented (the binder disappears).
  Term open(unsigned depth, const Term& value) const;
  // Shift bound indices >= cutoff by `amount`.
  Term shift(int amount, unsigned cutoff) const;
  // Replace the free variable `name` by `value` (which must be closed).
  Term subst_free(const std::string& name, const Term& value) const;
  // Abstract a free variable into bound index `depth`.
  Term abstract(const std::string& name, unsigned depth) const;

  void collect_free(std::vector<std::string>& out) const;
  // Appends every closed subterm, outermost first.
  void collect_ground(std::vector<Term>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    unsigned index = 0;
    std::vector<Term> args;
    std::size_t hash = 0;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(Kind kind, std::string name, unsigned index, std::vector<Term> args);

  std::shared_ptr<const Node> node_;
};

// Printing with a stack of names for bound variables (innermost last).
std::string print_term(const Term& t, const std::vector<std::string>& bound_names = {});

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace hylls
