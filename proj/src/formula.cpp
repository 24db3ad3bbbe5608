#include "hylls/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hylls {

namespace {

bool is_binder(Connective k) {
  switch (k) {
    case Connective::ForallTerm:
    case Connective::ExistsTerm:
    case Connective::Down:
    case Connective::ForallWorld:
    case Connective::ExistsWorld: return true;
    default: return false;
  }
}

bool binds_world_kind(Connective k) {
  return k == Connective::Down || k == Connective::ForallWorld || k == Connective::ExistsWorld;
}

bool binds_term_kind(Connective k) { return k == Connective::ForallTerm || k == Connective::ExistsTerm; }

}  // namespace

Formula Formula::make(Connective k, std::string name, std::vector<Term> args, std::vector<Formula> kids,
                      WorldExpr world) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  n->kids = std::move(kids);
  n->world = std::move(world);
  std::size_t h = static_cast<std::size_t>(k) * 0x100000001b3ULL;
  if (!is_binder(k)) h = hash_combine(h, std::hash<std::string>{}(n->name));
  for (const auto& a : n->args) h = hash_combine(h, a.hash());
  for (const auto& c : n->kids) {
    h = hash_combine(h, c.hash());
    n->size += c.size();
    n->sugar = n->sugar || c.has_sugar();
  }
  h = hash_combine(h, n->world.hash());
  n->hash = h;
  n->sugar = n->sugar || k == Connective::Box || k == Connective::Dia || k == Connective::Delay;
  return Formula(std::move(n));
}

Formula rebuild_node(const Formula& f, std::vector<Formula> kids, WorldExpr world, std::vector<Term> args) {
  return Formula::make(f.kind(), f.node_->name, std::move(args), std::move(kids), std::move(world));
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return make(Connective::Atom, std::move(pred), std::move(args), {}, {});
}
Formula Formula::tensor(Formula a, Formula b) { return make(Connective::Tensor, "", {}, {std::move(a), std::move(b)}, {}); }
Formula Formula::one() { return make(Connective::One, "", {}, {}, {}); }
Formula Formula::limp(Formula a, Formula b) { return make(Connective::Limp, "", {}, {std::move(a), std::move(b)}, {}); }
Formula Formula::with(Formula a, Formula b) { return make(Connective::With, "", {}, {std::move(a), std::move(b)}, {}); }
Formula Formula::top() { return make(Connective::Top, "", {}, {}, {}); }
Formula Formula::plus(Formula a, Formula b) { return make(Connective::Plus, "", {}, {std::move(a), std::move(b)}, {}); }
Formula Formula::zero() { return make(Connective::Zero, "", {}, {}, {}); }
Formula Formula::bang(Formula a) { return make(Connective::Bang, "", {}, {std::move(a)}, {}); }
Formula Formula::forall_term(std::string hint, Formula body) {
  return make(Connective::ForallTerm, std::move(hint), {}, {std::move(body)}, {});
}
Formula Formula::exists_term(std::string hint, Formula body) {
  return make(Connective::ExistsTerm, std::move(hint), {}, {std::move(body)}, {});
}
Formula Formula::at(Formula a, WorldExpr w) { return make(Connective::At, "", {}, {std::move(a)}, std::move(w)); }
Formula Formula::down(std::string hint, Formula body) {
  return make(Connective::Down, std::move(hint), {}, {std::move(body)}, {});
}
Formula Formula::forall_world(std::string hint, Formula body) {
  return make(Connective::ForallWorld, std::move(hint), {}, {std::move(body)}, {});
}
Formula Formula::exists_world(std::string hint, Formula body) {
  return make(Connective::ExistsWorld, std::move(hint), {}, {std::move(body)}, {});
}
Formula Formula::box(Formula a) { return make(Connective::Box, "", {}, {std::move(a)}, {}); }
Formula Formula::dia(Formula a) { return make(Connective::Dia, "", {}, {std::move(a)}, {}); }
Formula Formula::delay(WorldExpr w, Formula a) { return make(Connective::Delay, "", {}, {std::move(a)}, std::move(w)); }

bool Formula::is_hybrid() const {
  switch (kind()) {
    case Connective::At:
    case Connective::Down:
    case Connective::ForallWorld:
    case Connective::ExistsWorld:
    case Connective::Box:
    case Connective::Dia:
    case Connective::Delay: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (!is_binder(a.kind()))
    if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.args().begin(), a.args().end(), b.args().begin(),
                                                      b.args().end());
      c != 0)
    return c;
  if (auto c = a.world() <=> b.world(); c != 0) return c;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

// Structural map over terms and worlds, tracking binder depths in both
// index spaces.
template <class TermFn, class WorldFn>
Formula transform(const Formula& f, unsigned tdepth, unsigned wdepth, const TermFn& tf, const WorldFn& wf) {
  std::vector<Term> args;
  if (f.is_atom()) {
    args.reserve(f.args().size());
    for (const auto& t : f.args()) args.push_back(tf(t, tdepth));
    return rebuild_node(f, {}, {}, std::move(args));
  }
  unsigned td = tdepth + (binds_term_kind(f.kind()) ? 1 : 0);
  unsigned wd = wdepth + (binds_world_kind(f.kind()) ? 1 : 0);
  std::vector<Formula> kids;
  switch (f.kind()) {
    case Connective::Tensor:
    case Connective::Limp:
    case Connective::With:
    case Connective::Plus:
      kids.push_back(transform(f.left(), td, wd, tf, wf));
      kids.push_back(transform(f.right(), td, wd, tf, wf));
      break;
    case Connective::One:
    case Connective::Top:
    case Connective::Zero: return f;
    default: kids.push_back(transform(f.body(), td, wd, tf, wf)); break;
  }
  WorldExpr w;
  if (f.kind() == Connective::At || f.kind() == Connective::Delay) w = wf(f.world(), wdepth);
  return rebuild_node(f, std::move(kids), std::move(w), {});
}

const auto keep_term = [](const Term& t, unsigned) { return t; };
const auto keep_world = [](const WorldExpr& w, unsigned) { return w; };

template <class Visit>
void visit_all(const Formula& f, const Visit& v) {
  v(f);
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::One:
    case Connective::Top:
    case Connective::Zero: return;
    case Connective::Tensor:
    case Connective::Limp:
    case Connective::With:
    case Connective::Plus:
      visit_all(f.left(), v);
      visit_all(f.right(), v);
      return;
    default: visit_all(f.body(), v);
  }
}

}  // namespace

Formula Formula::instantiate_term(const Term& t) const {
  if (!binds_term()) throw std::logic_error("instantiate_term on a non term binder");
  return transform(
      body(), 0, 0, [&](const Term& x, unsigned depth) { return x.open(depth, t); }, keep_world);
}

Formula Formula::instantiate_world(const ConstraintDomain& d, const WorldExpr& w) const {
  if (!binds_world()) throw std::logic_error("instantiate_world on a non world binder");
  return transform(body(), 0, 0, keep_term, [&](const WorldExpr& e, unsigned depth) { return e.open(d, depth, w); });
}

void Formula::collect_free_terms(std::vector<std::string>& out) const {
  visit_all(*this, [&](const Formula& g) {
    for (const auto& t : g.args()) t.collect_free(out);
  });
}

void Formula::collect_free_worlds(std::vector<std::string>& out) const {
  visit_all(*this, [&](const Formula& g) {
    if (g.kind() == Connective::At || g.kind() == Connective::Delay)
      for (const auto& a : g.world().atoms())
        if (!a.bound) out.push_back(a.name);
  });
}

void Formula::collect_ground_terms(std::vector<Term>& out) const {
  visit_all(*this, [&](const Formula& g) {
    for (const auto& t : g.args()) t.collect_ground(out);
  });
}

void Formula::collect_worlds(std::vector<WorldExpr>& out) const {
  visit_all(*this, [&](const Formula& g) {
    if ((g.kind() == Connective::At || g.kind() == Connective::Delay) && !g.world().has_bound())
      out.push_back(g.world());
  });
}

bool Formula::mentions_free(const std::string& name) const {
  bool found = false;
  visit_all(*this, [&](const Formula& g) {
    if (found) return;
    if ((g.kind() == Connective::At || g.kind() == Connective::Delay) && g.world().mentions_free(name)) found = true;
    for (const auto& t : g.args()) {
      std::vector<std::string> names;
      t.collect_free(names);
      if (std::find(names.begin(), names.end(), name) != names.end()) found = true;
    }
  });
  return found;
}

Polarity polarity_of(const Formula& f, Polarity atom_default) {
  switch (f.kind()) {
    case Connective::Atom: return atom_default;
    case Connective::Tensor:
    case Connective::One:
    case Connective::Plus:
    case Connective::Zero:
    case Connective::Bang:
    case Connective::ExistsTerm:
    case Connective::ExistsWorld:
    case Connective::Dia: return Polarity::Positive;
    case Connective::Limp:
    case Connective::With:
    case Connective::Top:
    case Connective::ForallTerm:
    case Connective::ForallWorld:
    case Connective::Box: return Polarity::Negative;
    case Connective::At:
    case Connective::Down:
    case Connective::Delay: return polarity_of(f.body(), atom_default);
  }
  return atom_default;
}

Formula subst_world(const ConstraintDomain& d, const Formula& f, const std::string& var, const WorldExpr& w) {
  return transform(f, 0, 0, keep_term,
                   [&](const WorldExpr& e, unsigned depth) { return e.subst_free(d, var, w.shift(depth, 0)); });
}

Formula subst_term(const Formula& f, const std::string& var, const Term& t) {
  return transform(
      f, 0, 0, [&](const Term& x, unsigned depth) { return x.subst_free(var, t.shift(depth, 0)); }, keep_world);
}

namespace {

Formula shift_worlds(const Formula& f, int amount) {
  return transform(f, 0, 0, keep_term,
                   [&](const WorldExpr& e, unsigned depth) { return e.shift(amount, depth); });
}

}  // namespace

Formula expand_modal(const ConstraintDomain& d, const Formula& f) {
  if (!f.has_sugar()) return f;
  switch (f.kind()) {
    case Connective::Box:
    case Connective::Dia: {
      // Inside: u is index 1, w is index 0.
      Formula a = shift_worlds(expand_modal(d, f.body()), 2);
      WorldExpr uw = compose(d, WorldExpr::bound(1), WorldExpr::bound(0));
      Formula inner = Formula::at(a, uw);
      Formula q = f.kind() == Connective::Box ? Formula::forall_world("w", inner) : Formula::exists_world("w", inner);
      return Formula::down("u", q);
    }
    case Connective::Delay: {
      Formula a = shift_worlds(expand_modal(d, f.body()), 1);
      WorldExpr uv = compose(d, WorldExpr::bound(0), f.world().shift(1, 0));
      return Formula::down("u", Formula::at(a, uv));
    }
    case Connective::Tensor:
    case Connective::Limp:
    case Connective::With:
    case Connective::Plus:
      return rebuild_node(f, {expand_modal(d, f.left()), expand_modal(d, f.right())}, {}, {});
    case Connective::At: return rebuild_node(f, {expand_modal(d, f.body())}, f.world(), {});
    default: return rebuild_node(f, {expand_modal(d, f.body())}, {}, {});
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

const std::set<std::string>& reserved() {
  static const std::set<std::string> r{"at", "down", "forall", "exists", "world", "top", "box", "dia", "delay", "iota"};
  return r;
}

struct Printer {
  const ConstraintDomain& d;
  std::set<std::string> avoid;  // free names of the whole formula
  std::vector<std::string> tnames;
  std::vector<std::string> wnames;

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() || reserved().count(hint) ? "v" : hint;
    auto used = [&](const std::string& n) {
      return avoid.count(n) || std::find(tnames.begin(), tnames.end(), n) != tnames.end() ||
             std::find(wnames.begin(), wnames.end(), n) != wnames.end();
    };
    if (!used(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!used(n)) return n;
    }
  }

  static int level(const Formula& f) {
    switch (f.kind()) {
      case Connective::Limp: return 0;
      case Connective::Plus: return 1;
      case Connective::With: return 2;
      case Connective::Tensor: return 3;
      case Connective::At: return 4;
      case Connective::Bang:
      case Connective::Box:
      case Connective::Dia:
      case Connective::Delay: return 5;
      case Connective::ForallTerm:
      case Connective::ExistsTerm:
      case Connective::Down:
      case Connective::ForallWorld:
      case Connective::ExistsWorld: return -1;
      default: return 6;
    }
  }

  std::string at_level(const Formula& f, int min_level) {
    std::string s = print(f);
    int l = level(f);
    if (l < min_level) return "(" + s + ")";
    return s;
  }

  std::string binder(const std::string& keyword, const Formula& f, bool world) {
    std::string n = fresh(f.hint());
    (world ? wnames : tnames).push_back(n);
    std::string b = level(f.body()) == 6 ? print(f.body()) : "(" + print(f.body()) + ")";
    (world ? wnames : tnames).pop_back();
    return keyword + n + ". " + b;
  }

  std::string print(const Formula& f) {
    switch (f.kind()) {
      case Connective::Atom: {
        std::string s = f.pred();
        if (!f.args().empty()) {
          s += "(";
          for (std::size_t i = 0; i < f.args().size(); ++i) {
            if (i) s += ",";
            s += print_term(f.args()[i], tnames);
          }
          s += ")";
        }
        return s;
      }
      case Connective::One: return "1";
      case Connective::Zero: return "0";
      case Connective::Top: return "top";
      case Connective::Tensor: return at_level(f.left(), 3) + " * " + at_level(f.right(), 4);
      case Connective::With: return at_level(f.left(), 2) + " & " + at_level(f.right(), 3);
      case Connective::Plus: return at_level(f.left(), 1) + " + " + at_level(f.right(), 2);
      case Connective::Limp: return at_level(f.left(), 1) + " -o " + at_level(f.right(), 0);
      case Connective::Bang: return "!" + at_level(f.body(), 5);
      case Connective::Box: return "box " + at_level(f.body(), 5);
      case Connective::Dia: return "dia " + at_level(f.body(), 5);
      case Connective::Delay: return "delay[" + print_world(d, f.world(), wnames) + "] " + at_level(f.body(), 5);
      case Connective::At: return at_level(f.body(), 4) + " at " + print_world(d, f.world(), wnames);
      case Connective::ForallTerm: return binder("forall ", f, false);
      case Connective::ExistsTerm: return binder("exists ", f, false);
      case Connective::Down: return binder("down ", f, true);
      case Connective::ForallWorld: return binder("forall world ", f, true);
      case Connective::ExistsWorld: return binder("exists world ", f, true);
    }
    return {};
  }
};

}  // namespace

std::string print_formula(const ConstraintDomain& d, const Formula& f) {
  Printer p{d, {}, {}, {}};
  std::vector<std::string> fr;
  f.collect_free_terms(fr);
  f.collect_free_worlds(fr);
  p.avoid.insert(fr.begin(), fr.end());
  std::vector<Term> closed;
  f.collect_ground_terms(closed);
  for (const auto& t : closed)
    if (t.kind() == Term::Kind::Constant || t.kind() == Term::Kind::App) p.avoid.insert(t.name());
  return p.print(f);
}

std::string print_judgment(const ConstraintDomain& d, const Judgment& j) {
  return print_formula(d, j.formula) + " @ " + print_world(d, j.world);
}

}  // namespace hylls
