#include <algorithm>
#include <array>

#include "hylls/sell.hpp"

namespace hylls {

namespace {

constexpr std::array<std::string_view, 17> kNames = {
    "init",   "one",      "top",    "bot",     "par",  "tensor", "plus1", "plus2", "with",
    "exists", "forall",   "store",  "activate", "weaken", "promote", "some", "all",
};

using Kind = SellError::Kind;

[[noreturn]] void shape(const std::string& msg) { throw SellError(Kind::Shape, "", msg); }

const SellFormula& work_at(const SellSequent& s, const SellPrincipal& p, SellKind expected) {
  if (p.zone != SellPrincipal::Zone::Work || p.index >= s.work.size()) shape("principal must index the workspace");
  const SellFormula& f = s.work[p.index];
  if (f.kind() != expected) shape("principal '" + print_sell_formula(f) + "' has the wrong connective");
  return f;
}

std::vector<SellFormula> without(const std::vector<SellFormula>& xs, std::size_t i) {
  std::vector<SellFormula> out = xs;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

// xs minus part, where part must be a sub-multiset of xs.
std::vector<SellFormula> subtract(std::vector<SellFormula> xs, const std::vector<SellFormula>& part) {
  for (const auto& f : part) {
    auto it = std::find(xs.begin(), xs.end(), f);
    if (it == xs.end()) shape("split mentions '" + print_sell_formula(f) + "', which is not available");
    xs.erase(it);
  }
  return xs;
}

bool has_linear(const SubexpSignature& eff, const SellSequent& s) {
  return std::any_of(s.theta.begin(), s.theta.end(), [&](const auto& e) { return !eff.unbounded(e.first); });
}

bool sequent_mentions_label(const SellSequent& s, const std::string& l) {
  for (const auto& [label, items] : s.theta) {
    if (label == l) return true;
    for (const auto& f : items)
      if (f.mentions_label(l)) return true;
  }
  for (const auto& f : s.work)
    if (f.mentions_label(l)) return true;
  return std::any_of(s.locals.begin(), s.locals.end(), [&](const auto& e) { return e.first == l; });
}

bool sequent_mentions_term(const SellSequent& s, const std::string& n) {
  for (const auto& [label, items] : s.theta)
    for (const auto& f : items)
      if (f.mentions_free_term(n)) return true;
  return std::any_of(s.work.begin(), s.work.end(), [&](const SellFormula& f) { return f.mentions_free_term(n); });
}

SellSequent rebuild(const SubexpSignature& sig, const SellSequent& s, std::vector<SellFormula> work) {
  return make_sell_sequent(sig, s.theta, std::move(work), s.locals);
}

}  // namespace

std::string_view sell_rule_name(SellRule r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<SellRule> sell_rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<SellRule>(i);
  return std::nullopt;
}

std::size_t SellProof::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::vector<SellSequent> sell_premises(const SubexpSignature& sig, SellRule rule, const SellSequent& s,
                                       const SellPrincipal& p, const SellWitness& w) {
  const SubexpSignature eff = effective_signature(sig, s);
  switch (rule) {
    case SellRule::Init: {
      if (s.work.size() != 2) shape("init needs exactly a literal and its dual in the workspace");
      if (!s.work[0].is_literal() || dual(s.work[0]) != s.work[1]) shape("init needs a literal and its dual");
      if (has_linear(eff, s)) shape("init with a non-empty linear context");
      return {};
    }
    case SellRule::One:
      if (s.work.size() != 1 || s.work[0].kind() != SellKind::One) shape("one needs the workspace to be exactly 1");
      if (has_linear(eff, s)) shape("one with a non-empty linear context");
      return {};
    case SellRule::Top:
      work_at(s, p, SellKind::Top);
      return {};
    case SellRule::Bot:
      work_at(s, p, SellKind::Bot);
      return {rebuild(sig, s, without(s.work, p.index))};
    case SellRule::Par: {
      const SellFormula& f = work_at(s, p, SellKind::Par);
      auto work = without(s.work, p.index);
      work.push_back(f.left());
      work.push_back(f.right());
      return {rebuild(sig, s, std::move(work))};
    }
    case SellRule::With: {
      const SellFormula& f = work_at(s, p, SellKind::With);
      auto w1 = without(s.work, p.index), w2 = w1;
      w1.push_back(f.left());
      w2.push_back(f.right());
      return {rebuild(sig, s, std::move(w1)), rebuild(sig, s, std::move(w2))};
    }
    case SellRule::Plus1:
    case SellRule::Plus2: {
      const SellFormula& f = work_at(s, p, SellKind::Plus);
      auto work = without(s.work, p.index);
      work.push_back(rule == SellRule::Plus1 ? f.left() : f.right());
      return {rebuild(sig, s, std::move(work))};
    }
    case SellRule::Tensor: {
      const SellFormula& f = work_at(s, p, SellKind::Tensor);
      auto rest = without(s.work, p.index);
      auto w2 = subtract(rest, w.work_split);
      auto w1 = w.work_split;
      w1.push_back(f.left());
      w2.push_back(f.right());
      std::map<std::string, std::vector<SellFormula>> t1, t2;
      std::map<std::string, std::vector<SellFormula>> share;
      for (const auto& [label, g] : w.theta_split) {
        if (eff.unbounded(label)) shape("split of unbounded context '" + label + "'");
        share[label].push_back(g);
      }
      for (const auto& [label, items] : s.theta) {
        if (eff.unbounded(label)) {
          t1[label] = items;
          t2[label] = items;
          continue;
        }
        auto it = share.find(label);
        std::vector<SellFormula> mine = it == share.end() ? std::vector<SellFormula>{} : it->second;
        t2[label] = subtract(items, mine);
        t1[label] = std::move(mine);
        if (it != share.end()) share.erase(it);
      }
      if (!share.empty()) shape("split mentions empty context '" + share.begin()->first + "'");
      return {make_sell_sequent(sig, std::move(t1), std::move(w1), s.locals),
              make_sell_sequent(sig, std::move(t2), std::move(w2), s.locals)};
    }
    case SellRule::Exists: {
      const SellFormula& f = work_at(s, p, SellKind::Exists);
      if (!w.term) shape("exists needs a term witness");
      if (w.term->has_bound()) shape("exists witness is not closed");
      auto work = without(s.work, p.index);
      work.push_back(f.instantiate_term(*w.term));
      return {rebuild(sig, s, std::move(work))};
    }
    case SellRule::Forall: {
      const SellFormula& f = work_at(s, p, SellKind::Forall);
      if (w.eigen.empty()) shape("forall needs an eigenvariable");
      if (sequent_mentions_term(s, w.eigen))
        throw SellError(Kind::Freshness, "", "eigenvariable '" + w.eigen + "' is not fresh");
      auto work = without(s.work, p.index);
      work.push_back(f.instantiate_term(Term::free(w.eigen)));
      return {rebuild(sig, s, std::move(work))};
    }
    case SellRule::Store: {
      const SellFormula& f = work_at(s, p, SellKind::Quest);
      if (!eff.has(f.label()))
        throw SellError(Kind::UnknownLabel, f.label(), "unknown label '" + f.label() + "'");
      auto theta = s.theta;
      theta[f.label()].push_back(f.body());
      return {make_sell_sequent(sig, std::move(theta), without(s.work, p.index), s.locals)};
    }
    case SellRule::Activate:
    case SellRule::Weaken: {
      if (p.zone != SellPrincipal::Zone::Theta) shape("principal must index a stored context");
      auto it = s.theta.find(p.label);
      if (it == s.theta.end() || p.index >= it->second.size()) shape("no stored formula at " + p.label);
      bool unb = eff.unbounded(p.label);
      if (rule == SellRule::Weaken && !unb)
        throw SellError(Kind::Linearity, p.label, "linearity violation: context '" + p.label + "' admits no weakening");
      auto theta = s.theta;
      SellFormula g = it->second[p.index];
      if (rule == SellRule::Weaken || !unb) theta[p.label] = without(it->second, p.index);
      auto work = s.work;
      if (rule == SellRule::Activate) work.push_back(g);
      return {make_sell_sequent(sig, std::move(theta), std::move(work), s.locals)};
    }
    case SellRule::Promote: {
      const SellFormula& f = work_at(s, p, SellKind::Bang);
      if (s.work.size() != 1) shape("promotion needs the workspace to be exactly " + print_sell_formula(f));
      if (!eff.has(f.label()))
        throw SellError(Kind::UnknownLabel, f.label(), "unknown label '" + f.label() + "'");
      for (const auto& [label, items] : s.theta)
        if (!eff.leq(f.label(), label))
          throw SellError(Kind::SideCondition, label,
                          "side condition violated: " + f.label() + " is not below context label " + label);
      return {rebuild(sig, s, {f.body()})};
    }
    case SellRule::Some: {
      const SellFormula& f = work_at(s, p, SellKind::Some);
      if (w.label.empty()) shape("some needs a witness label");
      if (!eff.has(w.label)) throw SellError(Kind::UnknownLabel, w.label, "unknown label '" + w.label + "'");
      if (!eff.leq(eff.type_of(w.label), f.type()))
        throw SellError(Kind::Ideal, w.label, "witness " + w.label + " is outside the ideal of " + f.type());
      auto work = without(s.work, p.index);
      work.push_back(f.body().subst_label(f.name(), w.label));
      return {rebuild(sig, s, std::move(work))};
    }
    case SellRule::All: {
      const SellFormula& f = work_at(s, p, SellKind::All);
      if (!eff.has(f.type())) throw SellError(Kind::UnknownLabel, f.type(), "unknown label '" + f.type() + "'");
      if (w.eigen.empty()) shape("all needs a fresh label");
      if (eff.has(w.eigen) || sequent_mentions_label(s, w.eigen))
        throw SellError(Kind::Freshness, w.eigen, "label '" + w.eigen + "' is not fresh");
      auto work = without(s.work, p.index);
      work.push_back(f.body().subst_label(f.name(), w.eigen));
      auto locals = s.locals;
      locals.emplace_back(w.eigen, f.type());
      return {make_sell_sequent(sig, s.theta, std::move(work), std::move(locals))};
    }
  }
  shape("unknown rule");
}

SellSequent promote(const SubexpSignature& sig, const SellSequent& s) {
  if (s.work.size() != 1) shape("promotion needs a single formula in the workspace");
  return sell_premises(sig, SellRule::Promote, s, SellPrincipal::work(0), {})[0];
}

SellSequent dereliction_store(const SubexpSignature& sig, const SellSequent& s, std::size_t i) {
  return sell_premises(sig, SellRule::Store, s, SellPrincipal::work(i), {})[0];
}

SellSequent weaken(const SubexpSignature& sig, const SellSequent& s, const std::string& label, std::size_t i) {
  return sell_premises(sig, SellRule::Weaken, s, SellPrincipal::theta(label, i), {})[0];
}

SellSequent instantiate_quant(const SubexpSignature& sig, const SellSequent& s, std::size_t i,
                              const std::optional<std::string>& witness) {
  if (i >= s.work.size()) shape("principal must index the workspace");
  SellWitness w;
  if (s.work[i].kind() == SellKind::Some) {
    if (!witness) shape("some needs a witness label");
    w.label = *witness;
    return sell_premises(sig, SellRule::Some, s, SellPrincipal::work(i), w)[0];
  }
  SubexpSignature eff = effective_signature(sig, s);
  for (unsigned n = 0;; ++n) {
    w.eigen = "_l" + std::to_string(n);
    if (!eff.has(w.eigen) && !sequent_mentions_label(s, w.eigen)) break;
  }
  return sell_premises(sig, SellRule::All, s, SellPrincipal::work(i), w)[0];
}

namespace {

void check(const SubexpSignature& sig, const SellProof& p, const SellSequent& s, SellVerdict& v,
           std::vector<std::size_t>& path) {
  std::vector<SellSequent> prem;
  try {
    prem = sell_premises(sig, p.rule, s, p.principal, p.witness);
  } catch (const SellError& e) {
    v.valid = false;
    v.path = path;
    v.reason = std::string(sell_rule_name(p.rule)) + ": " + e.what();
    return;
  }
  if (prem.size() != p.premises.size()) {
    v.valid = false;
    v.path = path;
    v.reason = std::string(sell_rule_name(p.rule)) + ": wrong premise count (expected " +
               std::to_string(prem.size()) + ", got " + std::to_string(p.premises.size()) + ")";
    return;
  }
  for (std::size_t i = 0; i < prem.size() && v.valid; ++i) {
    path.push_back(i);
    check(sig, p.premises[i], prem[i], v, path);
    path.pop_back();
  }
}

}  // namespace

SellVerdict check_sell_proof(const SubexpSignature& sig, const SellProof& p, const SellSequent& s) {
  SellVerdict v;
  std::vector<std::size_t> path;
  check(sig, p, s, v, path);
  return v;
}

}  // namespace hylls
