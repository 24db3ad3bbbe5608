#include "search_common.hpp"

#include <algorithm>

namespace hylls {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return "proved";
    case Outcome::Exhausted:
      return "exhausted";
    case Outcome::Refuted:
      return "refuted";
  }
  return "?";
}

Sequent expand_sequent(const ConstraintDomain& d, const Sequent& s) {
  auto ex = [&](const Judgment& j) { return Judgment{expand_modal(d, j.formula), j.world}; };
  std::vector<Judgment> g, l;
  for (const auto& j : s.gamma) g.push_back(ex(j));
  for (const auto& j : s.delta) l.push_back(ex(j));
  return make_sequent(std::move(g), std::move(l), ex(s.goal));
}

Phase rule_phase(RuleId r) {
  switch (r) {
    case RuleId::Copy:
      return Phase::Decide;
    case RuleId::Init:
    case RuleId::OneR:
    case RuleId::TensorR:
    case RuleId::LimpL:
    case RuleId::WithL1:
    case RuleId::WithL2:
    case RuleId::PlusR1:
    case RuleId::PlusR2:
    case RuleId::BangR:
    case RuleId::ForallL:
    case RuleId::ExistsR:
    case RuleId::ForallWorldL:
    case RuleId::ExistsWorldR:
      return Phase::Focus;
    case RuleId::AtR:
    case RuleId::AtL:
    case RuleId::DownR:
    case RuleId::DownL:
      return Phase::Hybrid;
    default:
      return Phase::Invert;
  }
}

namespace detail {

std::string fresh_name(const std::string& prefix, const JudgmentRefs& ctx) {
  for (unsigned n = 0;; ++n) {
    std::string name = prefix + std::to_string(n);
    bool used = std::any_of(ctx.begin(), ctx.end(), [&](const Judgment* j) {
      return j->formula.mentions_free(name) || j->world.mentions_free(name);
    });
    if (!used) return name;
  }
}

std::vector<Term> term_candidates(const JudgmentRefs& ctx) {
  std::vector<Term> ground;
  std::vector<std::string> vars;
  for (const Judgment* j : ctx) {
    j->formula.collect_ground_terms(ground);
    j->formula.collect_free_terms(vars);
  }
  std::vector<Term> out;
  auto add = [&](const Term& t) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  for (const auto& t : ground) add(t);
  for (const auto& v : vars) add(Term::free(v));
  if (out.empty()) out.push_back(Term::constant("c"));
  return out;
}

void atom_worlds(const ConstraintDomain& d, const Formula& f, const WorldExpr& here, std::vector<WorldExpr>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      out.push_back(here);
      return;
    case Connective::One:
    case Connective::Top:
    case Connective::Zero:
    case Connective::Box:
    case Connective::Dia:
      return;
    case Connective::ForallWorld:
    case Connective::ExistsWorld: {
      // Worlds mentioning the placeholder are dropped by the callers'
      // unification; the others survive vacuous binders.
      std::vector<WorldExpr> inner;
      atom_worlds(d, f.instantiate_world(d, WorldExpr::var("?inner")), here, inner);
      for (auto& w : inner)
        if (!w.mentions_free("?inner")) out.push_back(std::move(w));
      return;
    }
    case Connective::At:
      if (!f.world().has_bound()) atom_worlds(d, f.body(), f.world(), out);
      return;
    case Connective::Down:
      atom_worlds(d, f.instantiate_world(d, here), here, out);
      return;
    case Connective::Delay:
      if (!f.world().has_bound()) atom_worlds(d, f.body(), compose(d, here, f.world()), out);
      return;
    case Connective::ForallTerm:
    case Connective::ExistsTerm:
      atom_worlds(d, f.instantiate_term(Term::constant("?")), here, out);
      return;
    case Connective::Bang:
      atom_worlds(d, f.body(), here, out);
      return;
    default:
      atom_worlds(d, f.left(), here, out);
      atom_worlds(d, f.right(), here, out);
  }
}

std::vector<WorldExpr> world_candidates(const ConstraintDomain& d, const Formula& quantified, const WorldExpr& here,
                                        const JudgmentRefs& ctx, unsigned bound) {
  const std::string probe = "?w";
  Formula body = quantified.instantiate_world(d, WorldExpr::var(probe));
  // Every witness gives the same premise.
  if (!body.mentions_free(probe)) return {WorldExpr::iota()};

  std::vector<WorldExpr> context_worlds;
  std::vector<std::string> names;
  auto add_world = [&](const WorldExpr& w) {
    if (std::find(context_worlds.begin(), context_worlds.end(), w) == context_worlds.end())
      context_worlds.push_back(w);
  };
  for (const Judgment* j : ctx) {
    add_world(j->world);
    std::vector<WorldExpr> ws;
    j->formula.collect_worlds(ws);
    atom_worlds(d, j->formula, j->world, ws);
    for (const auto& w : ws) add_world(w);
    j->formula.collect_free_worlds(names);
    for (const auto& a : j->world.atoms())
      if (!a.bound) names.push_back(a.name);
  }
  std::set<std::string> rigid(names.begin(), names.end());

  std::vector<WorldExpr> out;
  auto add = [&](const WorldExpr& w) {
    if (w.mentions_free(probe) || w.has_bound()) return;
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  };

  std::vector<WorldExpr> annotations;
  body.collect_worlds(annotations);
  atom_worlds(d, body, here, annotations);
  for (const auto& e : annotations) {
    if (!e.mentions_free(probe)) continue;
    for (const auto& t : context_worlds) {
      auto s = unify_worlds(d, e, t, {}, rigid, bound);
      if (s && s->count(probe)) add(apply_subst(d, s->at(probe), *s));
    }
  }
  for (const auto& n : rigid) add(WorldExpr::var(n));
  for (const auto& w : context_worlds) add(w);
  for (const auto& c : d.enumerate(bound)) add(WorldExpr::constant(d, c));
  return out;
}

}  // namespace detail
}  // namespace hylls
