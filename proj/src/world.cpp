#include "hylls/world.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace hylls {

WorldConst WorldConst::ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  std::uint64_t g = std::gcd(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

std::strong_ordering operator<=>(const WorldConst& a, const WorldConst& b) {
  // a.num/a.den vs b.num/b.den without overflow for desk-scale values.
  unsigned __int128 l = static_cast<unsigned __int128>(a.num) * b.den;
  unsigned __int128 r = static_cast<unsigned __int128>(b.num) * a.den;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const WorldAtom& a, const WorldAtom& b) {
  if (a.bound != b.bound) return a.bound ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.bound) return a.index <=> b.index;
  return a.name <=> b.name;
}

std::strong_ordering operator<=>(const WorldExpr& a, const WorldExpr& b) {
  if (a.constant_.has_value() != b.constant_.has_value())
    return a.constant_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.constant_) {
    if (auto c = a.constant_->num <=> b.constant_->num; c != 0) return c;
    if (auto c = a.constant_->den <=> b.constant_->den; c != 0) return c;
  }
  return std::lexicographical_compare_three_way(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
}

std::optional<WorldConst> ConstraintDomain::normalize(WorldConst c) const {
  if (c == identity()) return std::nullopt;
  return c;
}

WorldExpr WorldExpr::constant(const ConstraintDomain& d, WorldConst c) {
  WorldExpr e;
  e.constant_ = d.normalize(c);
  return e;
}

WorldExpr WorldExpr::var(std::string name) {
  WorldExpr e;
  e.atoms_.push_back(WorldAtom::free(std::move(name)));
  return e;
}

WorldExpr WorldExpr::bound(unsigned index) {
  WorldExpr e;
  e.atoms_.push_back(WorldAtom::bound_at(index));
  return e;
}

bool WorldExpr::has_bound() const {
  return std::any_of(atoms_.begin(), atoms_.end(), [](const WorldAtom& a) { return a.bound; });
}

bool WorldExpr::mentions_free(const std::string& n) const {
  return std::any_of(atoms_.begin(), atoms_.end(), [&](const WorldAtom& a) { return !a.bound && a.name == n; });
}

std::size_t WorldExpr::hash() const {
  std::size_t h = constant_ ? (constant_->num * 1000003u) ^ constant_->den : 7;
  for (const auto& a : atoms_)
    h = h * 31 + (a.bound ? a.index + 1 : std::hash<std::string>{}(a.name));
  return h;
}

WorldExpr compose(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w) {
  WorldExpr r;
  if (u.constant_ && w.constant_)
    r.constant_ = d.normalize(d.compose_const(*u.constant_, *w.constant_));
  else
    r.constant_ = u.constant_ ? u.constant_ : w.constant_;
  r.atoms_.reserve(u.atoms_.size() + w.atoms_.size());
  std::merge(u.atoms_.begin(), u.atoms_.end(), w.atoms_.begin(), w.atoms_.end(), std::back_inserter(r.atoms_));
  return r;
}

WorldExpr WorldExpr::open(const ConstraintDomain& d, unsigned depth, const WorldExpr& value) const {
  if (!has_bound()) return *this;
  WorldExpr rest;
  rest.constant_ = constant_;
  std::size_t hits = 0;
  for (const auto& a : atoms_) {
    if (a.bound && a.index == depth)
      ++hits;
    else if (a.bound && a.index > depth)
      rest.atoms_.push_back(WorldAtom::bound_at(a.index - 1));
    else
      rest.atoms_.push_back(a);
  }
  std::sort(rest.atoms_.begin(), rest.atoms_.end());
  WorldExpr v = value.shift(static_cast<int>(depth), 0);
  for (std::size_t i = 0; i < hits; ++i) rest = compose(d, rest, v);
  return rest;
}

WorldExpr WorldExpr::shift(int amount, unsigned cutoff) const {
  if (amount == 0 || !has_bound()) return *this;
  WorldExpr r = *this;
  for (auto& a : r.atoms_)
    if (a.bound && a.index >= cutoff) a.index = static_cast<unsigned>(static_cast<int>(a.index) + amount);
  std::sort(r.atoms_.begin(), r.atoms_.end());
  return r;
}

WorldExpr WorldExpr::subst_free(const ConstraintDomain& d, const std::string& n, const WorldExpr& value) const {
  if (!mentions_free(n)) return *this;
  WorldExpr rest;
  rest.constant_ = constant_;
  std::size_t hits = 0;
  for (const auto& a : atoms_) {
    if (!a.bound && a.name == n)
      ++hits;
    else
      rest.atoms_.push_back(a);
  }
  for (std::size_t i = 0; i < hits; ++i) rest = compose(d, rest, value);
  return rest;
}

WorldExpr WorldExpr::abstract(const std::string& n, unsigned depth) const {
  if (!mentions_free(n)) return *this;
  WorldExpr r = *this;
  for (auto& a : r.atoms_)
    if (!a.bound && a.name == n) a = WorldAtom::bound_at(depth);
  std::sort(r.atoms_.begin(), r.atoms_.end());
  return r;
}

std::optional<WorldExpr> divide_expr(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w) {
  std::vector<WorldAtom> rest;
  if (!std::includes(w.atoms().begin(), w.atoms().end(), u.atoms().begin(), u.atoms().end())) return std::nullopt;
  std::set_difference(w.atoms().begin(), w.atoms().end(), u.atoms().begin(), u.atoms().end(),
                      std::back_inserter(rest));
  WorldConst cu = u.const_part().value_or(d.identity());
  WorldConst cw = w.const_part().value_or(d.identity());
  auto v = d.divide_const(cu, cw);
  if (!v) return std::nullopt;
  WorldExpr r = WorldExpr::constant(d, *v);
  for (auto& a : rest)
    r = compose(d, r, a.bound ? WorldExpr::bound(a.index) : WorldExpr::var(a.name));
  return r;
}

std::optional<WorldExpr> divide(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w) {
  if (!u.is_ground() || !w.is_ground()) return std::nullopt;
  return divide_expr(d, u, w);
}

bool reachable(const ConstraintDomain& d, const WorldExpr& u, const WorldExpr& w) {
  if (!u.is_ground() || !w.is_ground()) throw std::invalid_argument("reachable: non-ground world");
  return divide(d, u, w).has_value();
}

WorldExpr apply_subst(const ConstraintDomain& d, const WorldExpr& e, const WorldSubst& s) {
  WorldExpr r = e;
  // Bindings may mention other bound unknowns; iterate to a fixed point
  // (substitutions built by unify_worlds are acyclic).
  for (std::size_t round = 0; round <= s.size(); ++round) {
    bool changed = false;
    for (const auto& [n, v] : s)
      if (r.mentions_free(n)) {
        r = r.subst_free(d, n, v);
        changed = true;
      }
    if (!changed) break;
  }
  return r;
}

namespace {

struct Side {
  WorldConst c;
  std::vector<WorldAtom> atoms;
};

bool is_unknown(const WorldAtom& a, const WorldSubst& s, const std::set<std::string>& rigid) {
  return !a.bound && !rigid.count(a.name) && !s.count(a.name);
}

WorldExpr rebuild(const ConstraintDomain& d, WorldConst c, const std::vector<WorldAtom>& atoms) {
  WorldExpr r = WorldExpr::constant(d, c);
  for (const auto& a : atoms) r = compose(d, r, a.bound ? WorldExpr::bound(a.index) : WorldExpr::var(a.name));
  return r;
}

// lhs consists of exactly one unknown (multiplicity 1) and a constant.
std::optional<WorldSubst> solve_single(const ConstraintDomain& d, const Side& lhs, const Side& rhs, const WorldSubst& s) {
  const std::string& x = lhs.atoms.front().name;
  for (const auto& a : rhs.atoms)
    if (!a.bound && a.name == x) return std::nullopt;  // occurs check
  auto v = d.divide_const(lhs.c, rhs.c);
  if (!v) return std::nullopt;
  WorldSubst out = s;
  out[x] = rebuild(d, *v, rhs.atoms);
  return out;
}

}  // namespace

std::optional<WorldSubst> unify_worlds(const ConstraintDomain& d, const WorldExpr& e1, const WorldExpr& e2,
                                       const WorldSubst& s, const std::set<std::string>& rigid, unsigned bound) {
  WorldExpr a = apply_subst(d, e1, s);
  WorldExpr b = apply_subst(d, e2, s);
  if (a == b) return s;

  Side l{a.const_part().value_or(d.identity()), {}};
  Side r{b.const_part().value_or(d.identity()), {}};
  if (d.cancellative()) {
    std::set_difference(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
                        std::back_inserter(l.atoms));
    std::set_difference(b.atoms().begin(), b.atoms().end(), a.atoms().begin(), a.atoms().end(),
                        std::back_inserter(r.atoms));
  } else {
    l.atoms = a.atoms();
    r.atoms = b.atoms();
  }

  auto single = [&](const Side& side) {
    return side.atoms.size() == 1 && is_unknown(side.atoms.front(), s, rigid);
  };
  // Prefer binding a bare unknown on the right to the whole left side and
  // vice versa: this is the most general solution.
  if (single(r) && r.c == d.identity()) {
    WorldSubst out = s;
    const std::string& x = r.atoms.front().name;
    for (const auto& at : l.atoms)
      if (!at.bound && at.name == x) return std::nullopt;
    out[x] = rebuild(d, l.c, l.atoms);
    return out;
  }
  if (single(l)) {
    if (auto res = solve_single(d, l, r, s)) return res;
    if (!single(r)) return std::nullopt;
  }
  if (single(r)) return solve_single(d, r, l, s);

  std::vector<std::string> unknowns;
  for (const auto* side : {&l, &r})
    for (const auto& at : side->atoms)
      if (is_unknown(at, s, rigid) && std::find(unknowns.begin(), unknowns.end(), at.name) == unknowns.end())
        unknowns.push_back(at.name);
  if (unknowns.empty()) return std::nullopt;

  // Several unknowns: enumerate constants for the first and recurse.
  for (WorldConst c : d.enumerate(bound)) {
    WorldSubst trial = s;
    trial[unknowns.front()] = WorldExpr::constant(d, c);
    if (auto res = unify_worlds(d, e1, e2, trial, rigid, bound)) return res;
  }
  return std::nullopt;
}

std::string print_world(const ConstraintDomain& d, const WorldExpr& w, const std::vector<std::string>& bound_names) {
  if (w.is_iota()) return d.print_const(d.identity());
  std::string s;
  for (const auto& a : w.atoms()) {
    if (!s.empty()) s += ".";
    if (a.bound)
      s += a.index < bound_names.size() ? bound_names[bound_names.size() - 1 - a.index] : "#" + std::to_string(a.index);
    else
      s += a.name;
  }
  if (w.const_part()) {
    if (!s.empty()) s += ".";
    s += d.print_const(*w.const_part());
  }
  return s;
}

// ---------------------------------------------------------------------------

WorldConst TemporalDomain::compose_const(WorldConst a, WorldConst b) const { return WorldConst::natural(a.num + b.num); }

std::optional<WorldConst> TemporalDomain::divide_const(WorldConst a, WorldConst b) const {
  if (a.num > b.num) return std::nullopt;
  return WorldConst::natural(b.num - a.num);
}

std::optional<WorldConst> TemporalDomain::parse_const(const std::string& text) const {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) return std::nullopt;
  return WorldConst::natural(v);
}

std::string TemporalDomain::print_const(WorldConst c) const { return std::to_string(c.num); }

std::vector<WorldConst> TemporalDomain::enumerate(unsigned bound) const {
  std::vector<WorldConst> out;
  for (unsigned i = 0; i <= bound; ++i) out.push_back(WorldConst::natural(i));
  return out;
}

WorldConst ProbabilisticDomain::compose_const(WorldConst a, WorldConst b) const {
  return WorldConst::ratio(a.num * b.num, a.den * b.den);
}

std::optional<WorldConst> ProbabilisticDomain::divide_const(WorldConst a, WorldConst b) const {
  // a * v == b with v in [0,1]
  if (a.num == 0) return b.num == 0 ? std::optional<WorldConst>(WorldConst::natural(1)) : std::nullopt;
  WorldConst v = WorldConst::ratio(b.num * a.den, b.den * a.num);
  if (v.num > v.den) return std::nullopt;
  return v;
}

std::optional<WorldConst> ProbabilisticDomain::parse_const(const std::string& text) const {
  auto slash = text.find('/');
  std::uint64_t n = 0, m = 1;
  auto num_end = slash == std::string::npos ? text.size() : slash;
  auto [p, ec] = std::from_chars(text.data(), text.data() + num_end, n);
  if (ec != std::errc{} || p != text.data() + num_end) return std::nullopt;
  if (slash != std::string::npos) {
    auto [q, ec2] = std::from_chars(text.data() + slash + 1, text.data() + text.size(), m);
    if (ec2 != std::errc{} || q != text.data() + text.size() || m == 0) return std::nullopt;
  }
  WorldConst c = WorldConst::ratio(n, m);
  if (c.num > c.den) return std::nullopt;
  return c;
}

std::string ProbabilisticDomain::print_const(WorldConst c) const {
  if (c.den == 1) return std::to_string(c.num);
  return std::to_string(c.num) + "/" + std::to_string(c.den);
}

std::vector<WorldConst> ProbabilisticDomain::enumerate(unsigned bound) const {
  std::vector<WorldConst> out;
  unsigned k = bound == 0 ? 1 : bound;
  for (unsigned i = k + 1; i-- > 0;) out.push_back(WorldConst::ratio(i, k));
  return out;
}

const ConstraintDomain& temporal_domain() {
  static const TemporalDomain d;
  return d;
}

const ConstraintDomain& probabilistic_domain() {
  static const ProbabilisticDomain d;
  return d;
}

const ConstraintDomain& domain_by_name(const std::string& name) {
  if (name == "temporal") return temporal_domain();
  if (name == "prob") return probabilistic_domain();
  throw std::invalid_argument("unknown constraint domain '" + name + "'");
}

}  // namespace hylls
