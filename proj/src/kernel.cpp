#include "hylls/kernel.hpp"

#include <algorithm>
#include <array>

namespace hylls {

Sequent make_sequent(std::vector<Judgment> gamma, std::vector<Judgment> delta, Judgment goal) {
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  std::sort(delta.begin(), delta.end());
  return {std::move(gamma), std::move(delta), std::move(goal)};
}

bool sequent_equal(const Sequent& a, const Sequent& b) {
  return a.goal == b.goal && a.gamma == b.gamma && a.delta == b.delta;
}

std::size_t sequent_hash(const Sequent& s) {
  std::size_t h = s.goal.hash();
  for (const auto& j : s.gamma) h = hash_combine(h, j.hash());
  h = hash_combine(h, 0x51ed);
  for (const auto& j : s.delta) h = hash_combine(h, j.hash());
  return h;
}

namespace {

constexpr std::array<std::string_view, kRuleCount> kNames{
    "init",     "one_r",    "one_l",   "tensor_r", "tensor_l", "limp_r",   "limp_l",   "with_r",
    "with_l1",  "with_l2",  "top_r",   "plus_r1",  "plus_r2",  "plus_l",   "zero_l",   "bang_r",
    "bang_l",   "copy",     "forall_r", "forall_l", "exists_r", "exists_l", "at_r",    "at_l",
    "down_r",   "down_l",   "forall_world_r", "forall_world_l", "exists_world_r", "exists_world_l"};

}  // namespace

std::string_view rule_name(RuleId r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<RuleId>(i);
  return std::nullopt;
}

bool is_axiom(RuleId r) { return r == RuleId::Init || r == RuleId::OneR || r == RuleId::TopR || r == RuleId::ZeroL; }

bool is_hybrid_rule(RuleId r) { return r >= RuleId::AtR; }

std::size_t ProofNode::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw KernelError(msg); }

const Judgment& delta_at(const Sequent& s, const Principal& p) {
  if (p.zone != Principal::Zone::Delta) fail("principal must be a linear hypothesis");
  if (p.index >= s.delta.size()) fail("principal index out of range");
  return s.delta[p.index];
}

const Judgment& goal_of(const Sequent& s, const Principal& p) {
  if (p.zone != Principal::Zone::Goal) fail("principal must be the goal");
  return s.goal;
}

void expect_kind(const Formula& f, Connective k, RuleId r) {
  if (f.kind() != k) fail("rule " + std::string(rule_name(r)) + " does not apply to this connective");
}

std::vector<Judgment> without(const std::vector<Judgment>& delta, std::size_t i) {
  std::vector<Judgment> out;
  out.reserve(delta.size());
  for (std::size_t k = 0; k < delta.size(); ++k)
    if (k != i) out.push_back(delta[k]);
  return out;
}

// Splits `pool` into (part, rest); part must be a sub-multiset.
std::vector<Judgment> subtract(const std::vector<Judgment>& pool, std::vector<Judgment> part) {
  std::sort(part.begin(), part.end());
  std::vector<Judgment> rest;
  std::size_t i = 0;
  for (const auto& j : pool) {
    if (i < part.size() && part[i] == j)
      ++i;
    else
      rest.push_back(j);
  }
  if (i != part.size()) fail("split witness is not a sub-multiset of the linear context");
  return rest;
}

bool occurs_free(const Sequent& s, const std::string& name) {
  auto in = [&](const Judgment& j) { return j.formula.mentions_free(name) || j.world.mentions_free(name); };
  return in(s.goal) || std::any_of(s.gamma.begin(), s.gamma.end(), in) || std::any_of(s.delta.begin(), s.delta.end(), in);
}

const std::string& fresh_eigen(const Sequent& s, const Witness& w) {
  if (!w.eigen || w.eigen->empty()) fail("missing eigenvariable");
  if (occurs_free(s, *w.eigen)) fail("eigenvariable '" + *w.eigen + "' is not fresh");
  return *w.eigen;
}

const Term& closed_term(const Witness& w) {
  if (!w.term) fail("missing term witness");
  if (w.term->has_bound()) fail("term witness has dangling bound variables");
  return *w.term;
}

const WorldExpr& closed_world(const Witness& w) {
  if (!w.world) fail("missing world witness");
  if (w.world->has_bound()) fail("world witness has dangling bound variables");
  return *w.world;
}

Sequent with_goal(const Sequent& s, std::vector<Judgment> delta, Judgment goal) {
  return make_sequent(s.gamma, std::move(delta), std::move(goal));
}

}  // namespace

std::vector<Sequent> rule_premises(const KernelConfig& cfg, RuleId rule, const Sequent& s, const Principal& p,
                                   const Witness& w) {
  const ConstraintDomain& d = *cfg.domain;
  if (!cfg.hybrid && is_hybrid_rule(rule)) fail("hybrid rule " + std::string(rule_name(rule)) + " is disabled");

  // Replace Delta[i] by the given judgments.
  auto replace = [&](std::size_t i, std::vector<Judgment> add) {
    auto rest = without(s.delta, i);
    rest.insert(rest.end(), add.begin(), add.end());
    return rest;
  };

  switch (rule) {
    case RuleId::Init: {
      const Judgment& h = delta_at(s, p);
      if (s.delta.size() != 1) fail("init requires the linear context to be exactly the principal");
      if (!(h == s.goal)) fail("hypothesis and goal differ");
      return {};
    }
    case RuleId::OneR: {
      expect_kind(goal_of(s, p).formula, Connective::One, rule);
      if (!s.delta.empty()) fail("one_r requires an empty linear context");
      return {};
    }
    case RuleId::OneL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::One, rule);
      return {with_goal(s, without(s.delta, p.index), s.goal)};
    }
    case RuleId::TensorR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::Tensor, rule);
      if (!w.split) fail("tensor_r needs a split witness");
      auto rest = subtract(s.delta, *w.split);
      return {with_goal(s, *w.split, {g.formula.left(), g.world}), with_goal(s, rest, {g.formula.right(), g.world})};
    }
    case RuleId::TensorL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::Tensor, rule);
      return {with_goal(s, replace(p.index, {{h.formula.left(), h.world}, {h.formula.right(), h.world}}), s.goal)};
    }
    case RuleId::LimpR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::Limp, rule);
      auto delta = s.delta;
      delta.push_back({g.formula.left(), g.world});
      return {with_goal(s, std::move(delta), {g.formula.right(), g.world})};
    }
    case RuleId::LimpL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::Limp, rule);
      if (!w.split) fail("limp_l needs a split witness");
      auto rest = subtract(without(s.delta, p.index), *w.split);
      rest.push_back({h.formula.right(), h.world});
      return {with_goal(s, *w.split, {h.formula.left(), h.world}), with_goal(s, std::move(rest), s.goal)};
    }
    case RuleId::WithR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::With, rule);
      return {with_goal(s, s.delta, {g.formula.left(), g.world}), with_goal(s, s.delta, {g.formula.right(), g.world})};
    }
    case RuleId::WithL1:
    case RuleId::WithL2: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::With, rule);
      const Formula& part = rule == RuleId::WithL1 ? h.formula.left() : h.formula.right();
      return {with_goal(s, replace(p.index, {{part, h.world}}), s.goal)};
    }
    case RuleId::TopR: {
      expect_kind(goal_of(s, p).formula, Connective::Top, rule);
      return {};
    }
    case RuleId::PlusR1:
    case RuleId::PlusR2: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::Plus, rule);
      const Formula& part = rule == RuleId::PlusR1 ? g.formula.left() : g.formula.right();
      return {with_goal(s, s.delta, {part, g.world})};
    }
    case RuleId::PlusL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::Plus, rule);
      return {with_goal(s, replace(p.index, {{h.formula.left(), h.world}}), s.goal),
              with_goal(s, replace(p.index, {{h.formula.right(), h.world}}), s.goal)};
    }
    case RuleId::ZeroL: {
      expect_kind(delta_at(s, p).formula, Connective::Zero, rule);
      return {};
    }
    case RuleId::BangR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::Bang, rule);
      if (!s.delta.empty()) fail("bang_r requires an empty linear context");
      return {with_goal(s, {}, {g.formula.body(), g.world})};
    }
    case RuleId::BangL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::Bang, rule);
      auto gamma = s.gamma;
      gamma.push_back({h.formula.body(), h.world});
      return {make_sequent(std::move(gamma), without(s.delta, p.index), s.goal)};
    }
    case RuleId::Copy: {
      if (p.zone != Principal::Zone::Gamma || p.index >= s.gamma.size()) fail("copy needs an unbounded hypothesis");
      auto delta = s.delta;
      delta.push_back(s.gamma[p.index]);
      return {with_goal(s, std::move(delta), s.goal)};
    }
    case RuleId::ForallR:
    case RuleId::ExistsR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, rule == RuleId::ForallR ? Connective::ForallTerm : Connective::ExistsTerm, rule);
      Term t = rule == RuleId::ForallR ? Term::free(fresh_eigen(s, w)) : closed_term(w);
      return {with_goal(s, s.delta, {g.formula.instantiate_term(t), g.world})};
    }
    case RuleId::ForallL:
    case RuleId::ExistsL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, rule == RuleId::ForallL ? Connective::ForallTerm : Connective::ExistsTerm, rule);
      Term t = rule == RuleId::ExistsL ? Term::free(fresh_eigen(s, w)) : closed_term(w);
      return {with_goal(s, replace(p.index, {{h.formula.instantiate_term(t), h.world}}), s.goal)};
    }
    case RuleId::AtR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::At, rule);
      return {with_goal(s, s.delta, {g.formula.body(), g.formula.world()})};
    }
    case RuleId::AtL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::At, rule);
      return {with_goal(s, replace(p.index, {{h.formula.body(), h.formula.world()}}), s.goal)};
    }
    case RuleId::DownR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, Connective::Down, rule);
      return {with_goal(s, s.delta, {g.formula.instantiate_world(d, g.world), g.world})};
    }
    case RuleId::DownL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, Connective::Down, rule);
      return {with_goal(s, replace(p.index, {{h.formula.instantiate_world(d, h.world), h.world}}), s.goal)};
    }
    case RuleId::ForallWorldR:
    case RuleId::ExistsWorldR: {
      const Judgment& g = goal_of(s, p);
      expect_kind(g.formula, rule == RuleId::ForallWorldR ? Connective::ForallWorld : Connective::ExistsWorld, rule);
      WorldExpr v = rule == RuleId::ForallWorldR ? WorldExpr::var(fresh_eigen(s, w)) : closed_world(w);
      return {with_goal(s, s.delta, {g.formula.instantiate_world(d, v), g.world})};
    }
    case RuleId::ForallWorldL:
    case RuleId::ExistsWorldL: {
      const Judgment& h = delta_at(s, p);
      expect_kind(h.formula, rule == RuleId::ForallWorldL ? Connective::ForallWorld : Connective::ExistsWorld, rule);
      WorldExpr v = rule == RuleId::ExistsWorldL ? WorldExpr::var(fresh_eigen(s, w)) : closed_world(w);
      return {with_goal(s, replace(p.index, {{h.formula.instantiate_world(d, v), h.world}}), s.goal)};
    }
  }
  fail("unknown rule");
}

namespace {

void check_rec(const KernelConfig& cfg, const ProofNode& node, const Sequent& s, std::vector<std::size_t>& path,
               Verdict& out) {
  std::vector<Sequent> premises;
  try {
    premises = rule_premises(cfg, node.rule, s, node.principal, node.witness);
  } catch (const KernelError& e) {
    out = {false, path, std::string(rule_name(node.rule)) + ": " + e.what()};
    return;
  }
  if (premises.size() != node.premises.size()) {
    std::string why = node.premises.empty() ? "non-axiom leaf" : "wrong premise count";
    out = {false, path,
           std::string(rule_name(node.rule)) + ": " + why + " (expected " + std::to_string(premises.size()) +
               ", got " + std::to_string(node.premises.size()) + ")"};
    return;
  }
  for (std::size_t i = 0; i < premises.size() && out.valid; ++i) {
    path.push_back(i);
    check_rec(cfg, node.premises[i], premises[i], path, out);
    path.pop_back();
  }
}

}  // namespace

Verdict check_proof(const KernelConfig& cfg, const ProofNode& proof, const Sequent& s) {
  Verdict v;
  std::vector<std::size_t> path;
  check_rec(cfg, proof, s, path, v);
  return v;
}

std::string print_sequent(const ConstraintDomain& d, const Sequent& s) {
  std::string out;
  auto list = [&](const std::vector<Judgment>& js) {
    if (js.empty()) return std::string(".");
    std::string r;
    for (std::size_t i = 0; i < js.size(); ++i) {
      if (i) r += ", ";
      r += print_judgment(d, js[i]);
    }
    return r;
  };
  return list(s.gamma) + " ; " + list(s.delta) + " |- " + print_judgment(d, s.goal);
}

}  // namespace hylls
