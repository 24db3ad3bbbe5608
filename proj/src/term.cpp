#include "hylls/term.hpp"

#include <stdexcept>

namespace hylls {

Term Term::make(Kind kind, std::string name, unsigned index, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->index = index;
  n->args = std::move(args);
  std::size_t h = static_cast<std::size_t>(kind) * 31 + std::hash<std::string>{}(n->name);
  h = hash_combine(h, index);
  for (const auto& a : n->args) h = hash_combine(h, a.hash());
  n->hash = h;
  return Term(std::move(n));
}

Term Term::constant(std::string name) { return make(Kind::Constant, std::move(name), 0, {}); }
Term Term::free(std::string name) { return make(Kind::Free, std::move(name), 0, {}); }
Term Term::bound(unsigned index) { return make(Kind::Bound, "", index, {}); }

Term Term::app(std::string function, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("application of '" + function + "' needs arguments");
  return make(Kind::App, std::move(function), 0, std::move(args));
}

bool Term::is_ground() const {
  switch (kind()) {
    case Kind::Constant: return true;
    case Kind::Free:
    case Kind::Bound: return false;
    case Kind::App:
      for (const auto& a : args())
        if (!a.is_ground()) return false;
      return true;
  }
  return false;
}

bool Term::has_bound() const {
  if (kind() == Kind::Bound) return true;
  for (const auto& a : args())
    if (a.has_bound()) return true;
  return false;
}

Term Term::open(unsigned depth, const Term& value) const {
  switch (kind()) {
    case Kind::Bound:
      if (index() == depth) return value.shift(static_cast<int>(depth), 0);
      if (index() > depth) return bound(index() - 1);
      return *this;
    case Kind::App: {
      std::vector<Term> as;
      as.reserve(args().size());
      for (const auto& a : args()) as.push_back(a.open(depth, value));
      return app(name(), std::move(as));
    }
    default: return *this;
  }
}

Term Term::shift(int amount, unsigned cutoff) const {
  if (amount == 0) return *this;
  switch (kind()) {
    case Kind::Bound:
      if (index() >= cutoff) return bound(static_cast<unsigned>(static_cast<int>(index()) + amount));
      return *this;
    case Kind::App: {
      std::vector<Term> as;
      for (const auto& a : args()) as.push_back(a.shift(amount, cutoff));
      return app(name(), std::move(as));
    }
    default: return *this;
  }
}

Term Term::subst_free(const std::string& var, const Term& value) const {
  switch (kind()) {
    case Kind::Free: return name() == var ? value : *this;
    case Kind::App: {
      std::vector<Term> as;
      for (const auto& a : args()) as.push_back(a.subst_free(var, value));
      return app(name(), std::move(as));
    }
    default: return *this;
  }
}

Term Term::abstract(const std::string& var, unsigned depth) const {
  switch (kind()) {
    case Kind::Free: return name() == var ? bound(depth) : *this;
    case Kind::App: {
      std::vector<Term> as;
      for (const auto& a : args()) as.push_back(a.abstract(var, depth));
      return app(name(), std::move(as));
    }
    default: return *this;
  }
}

void Term::collect_free(std::vector<std::string>& out) const {
  if (kind() == Kind::Free) out.push_back(name());
  for (const auto& a : args()) a.collect_free(out);
}

void Term::collect_ground(std::vector<Term>& out) const {
  if (!has_bound()) out.push_back(*this);
  for (const auto& a : args()) a.collect_ground(out);
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.index() <=> b.index(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

bool is_list(const Term& t) {
  if (t.kind() == Term::Kind::Constant) return t.name() == "nil";
  return t.kind() == Term::Kind::App && t.name() == "cons" && t.args().size() == 2 && is_list(t.args()[1]);
}

}  // namespace

std::string print_term(const Term& t, const std::vector<std::string>& bound_names) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return t.name() == "nil" ? "[]" : t.name();
    case Term::Kind::Free: return t.name();
    case Term::Kind::Bound:
      if (t.index() < bound_names.size()) return bound_names[bound_names.size() - 1 - t.index()];
      return "#" + std::to_string(t.index());
    case Term::Kind::App: {
      std::string s;
      if (is_list(t)) {
        s = "[";
        const Term* cur = &t;
        bool first = true;
        while (cur->kind() == Term::Kind::App) {
          if (!first) s += ",";
          first = false;
          s += print_term(cur->args()[0], bound_names);
          cur = &cur->args()[1];
        }
        return s + "]";
      }
      s = t.name() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) s += ",";
        s += print_term(t.args()[i], bound_names);
      }
      return s + ")";
    }
  }
  return {};
}

}  // namespace hylls
