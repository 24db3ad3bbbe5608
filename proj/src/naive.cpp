// Unfocused reference search: every applicable rule instance at every
// sequent, explicit linear splits, unbounded hypotheses used directly by
// a left rule (copy fused in) and charged against the depth.

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "hylls/prover.hpp"
#include "search_common.hpp"

namespace hylls::detail {

namespace {

struct SeqHash {
  std::size_t operator()(const Sequent& s) const { return sequent_hash(s); }
};
struct SeqEq {
  bool operator()(const Sequent& a, const Sequent& b) const { return sequent_equal(a, b); }
};

struct Entry {
  unsigned budget = 0;
  bool cutoff = true;
};

// All distinct sub-multisets of a sorted multiset.
std::vector<std::vector<Judgment>> sub_multisets(const std::vector<Judgment>& xs) {
  std::vector<std::pair<Judgment, unsigned>> groups;
  for (const auto& j : xs) {
    if (!groups.empty() && groups.back().first == j)
      ++groups.back().second;
    else
      groups.push_back({j, 1});
  }
  std::vector<std::vector<Judgment>> out;
  std::vector<unsigned> take(groups.size(), 0);
  while (true) {
    std::vector<Judgment> part;
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (unsigned c = 0; c < take[g]; ++c) part.push_back(groups[g].first);
    out.push_back(std::move(part));
    std::size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
    if (g == groups.size()) break;
    ++take[g];
  }
  return out;
}

struct Instance {
  RuleId rule;
  Principal principal;
  Witness witness;
};

class Naive {
 public:
  Naive(const KernelConfig& cfg, const SearchBudget& b, Clock& clock, SearchStats& stats)
      : cfg_(cfg), d_(*cfg.domain), budget_(b), clock_(clock), stats_(stats) {}

  bool run(const Sequent& s, unsigned depth, ProofNode& out, bool& cutoff) {
    cutoff_ = false;
    min_loop_ = kNone;
    auto p = solve(s, depth);
    cutoff = cutoff_;
    if (!p) return false;
    out = std::move(*p);
    return true;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  JudgmentRefs refs(const Sequent& s) const {
    JudgmentRefs r{&s.goal};
    for (const auto& j : s.delta) r.push_back(&j);
    for (const auto& j : s.gamma) r.push_back(&j);
    return r;
  }

  bool hybrid_ok(Connective c) const {
    switch (c) {
      case Connective::At:
      case Connective::Down:
      case Connective::ForallWorld:
      case Connective::ExistsWorld:
        return cfg_.hybrid;
      default:
        return true;
    }
  }

  void right_instances(const Sequent& s, std::vector<Instance>& out) const {
    const Formula& f = s.goal.formula;
    if (!hybrid_ok(f.kind())) return;
    auto add = [&](RuleId r, Witness w = {}) { out.push_back({r, Principal::goal(), std::move(w)}); };
    switch (f.kind()) {
      case Connective::One:
        if (s.delta.empty()) add(RuleId::OneR);
        break;
      case Connective::Top:
        add(RuleId::TopR);
        break;
      case Connective::Tensor:
        for (auto& part : sub_multisets(s.delta)) {
          Witness w;
          w.split = std::move(part);
          add(RuleId::TensorR, std::move(w));
        }
        break;
      case Connective::Limp:
        add(RuleId::LimpR);
        break;
      case Connective::With:
        add(RuleId::WithR);
        break;
      case Connective::Plus:
        add(RuleId::PlusR1);
        add(RuleId::PlusR2);
        break;
      case Connective::Bang:
        if (s.delta.empty()) add(RuleId::BangR);
        break;
      case Connective::ForallTerm: {
        Witness w;
        w.eigen = fresh_name("_a", refs(s));
        add(RuleId::ForallR, std::move(w));
        break;
      }
      case Connective::ExistsTerm:
        for (const auto& t : term_candidates(refs(s))) {
          Witness w;
          w.term = t;
          add(RuleId::ExistsR, std::move(w));
        }
        break;
      case Connective::At:
        add(RuleId::AtR);
        break;
      case Connective::Down:
        add(RuleId::DownR);
        break;
      case Connective::ForallWorld: {
        Witness w;
        w.eigen = fresh_name("_u", refs(s));
        add(RuleId::ForallWorldR, std::move(w));
        break;
      }
      case Connective::ExistsWorld:
        for (const auto& v : world_candidates(d_, f, s.goal.world, refs(s), budget_.world_bound)) {
          Witness w;
          w.world = v;
          add(RuleId::ExistsWorldR, std::move(w));
        }
        break;
      default:
        break;
    }
  }

  // Left rule instances with Delta[i] principal.
  void left_instances(const Sequent& s, std::size_t i, std::vector<Instance>& out) const {
    const Formula& f = s.delta[i].formula;
    if (!hybrid_ok(f.kind())) return;
    auto add = [&](RuleId r, Witness w = {}) { out.push_back({r, Principal::delta(i), std::move(w)}); };
    switch (f.kind()) {
      case Connective::Atom:
        if (s.delta.size() == 1 && s.delta[0] == s.goal) add(RuleId::Init);
        break;
      case Connective::Zero:
        add(RuleId::ZeroL);
        break;
      case Connective::One:
        add(RuleId::OneL);
        break;
      case Connective::Tensor:
        add(RuleId::TensorL);
        break;
      case Connective::Limp: {
        std::vector<Judgment> rest;
        for (std::size_t k = 0; k < s.delta.size(); ++k)
          if (k != i) rest.push_back(s.delta[k]);
        for (auto& part : sub_multisets(rest)) {
          Witness w;
          w.split = std::move(part);
          add(RuleId::LimpL, std::move(w));
        }
        break;
      }
      case Connective::With:
        add(RuleId::WithL1);
        add(RuleId::WithL2);
        break;
      case Connective::Plus:
        add(RuleId::PlusL);
        break;
      case Connective::Bang:
        add(RuleId::BangL);
        break;
      case Connective::ForallTerm: {
        auto r = refs(s);
        for (const auto& t : term_candidates(r)) {
          Witness w;
          w.term = t;
          add(RuleId::ForallL, std::move(w));
        }
        break;
      }
      case Connective::ExistsTerm: {
        Witness w;
        w.eigen = fresh_name("_a", refs(s));
        add(RuleId::ExistsL, std::move(w));
        break;
      }
      case Connective::At:
        add(RuleId::AtL);
        break;
      case Connective::Down:
        add(RuleId::DownL);
        break;
      case Connective::ForallWorld:
        for (const auto& v : world_candidates(d_, f, s.delta[i].world, refs(s), budget_.world_bound)) {
          Witness w;
          w.world = v;
          add(RuleId::ForallWorldL, std::move(w));
        }
        break;
      case Connective::ExistsWorld: {
        Witness w;
        w.eigen = fresh_name("_u", refs(s));
        add(RuleId::ExistsWorldL, std::move(w));
        break;
      }
      default:
        break;
    }
  }

  // Solves every premise of an instance; budget b for each.
  std::optional<ProofNode> apply(const Sequent& s, const Instance& in, unsigned b) {
    std::vector<Sequent> premises;
    try {
      premises = rule_premises(cfg_, in.rule, s, in.principal, in.witness);
    } catch (const KernelError&) {
      return std::nullopt;
    }
    ProofNode node{in.rule, in.principal, in.witness, {}};
    for (const auto& p : premises) {
      auto sub = solve(p, b);
      if (!sub) return std::nullopt;
      node.premises.push_back(std::move(*sub));
    }
    return node;
  }

  bool gamma_usable(const Judgment& j, const Sequent& s) const {
    const Formula& f = j.formula;
    if (f.is_atom()) return s.delta.empty() && j == s.goal;
    if (f.kind() == Connective::One || f.kind() == Connective::Top) return false;
    return hybrid_ok(f.kind());
  }

  std::optional<ProofNode> solve(const Sequent& s, unsigned b) {
    clock_.tick();
    ++stats_.nodes;
    for (std::size_t i = 0; i < path_.size(); ++i)
      if (sequent_equal(path_[i], s)) {
        min_loop_ = std::min(min_loop_, i);
        return std::nullopt;
      }
    if (budget_.memo) {
      auto it = memo_.find(s);
      if (it != memo_.end()) {
        if (!it->second.cutoff) {
          ++stats_.memo_hits;
          return std::nullopt;
        }
        if (b <= it->second.budget) {
          ++stats_.memo_hits;
          cutoff_ = true;
          return std::nullopt;
        }
      }
    }
    const std::size_t here = path_.size();
    path_.push_back(s);
    bool saved_cut = cutoff_;
    std::size_t saved_loop = min_loop_;
    cutoff_ = false;
    min_loop_ = kNone;

    std::optional<ProofNode> found;
    std::vector<Instance> inst;
    right_instances(s, inst);
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
      if (i > 0 && s.delta[i] == s.delta[i - 1]) continue;
      left_instances(s, i, inst);
    }
    for (const auto& in : inst)
      if ((found = apply(s, in, b))) break;

    if (!found) {
      bool gated = false;
      for (std::size_t g = 0; g < s.gamma.size() && !found; ++g) {
        const Judgment& j = s.gamma[g];
        if (!gamma_usable(j, s)) continue;
        bool axiom = j.formula.is_atom();
        if (!axiom && b == 0) {
          gated = true;
          continue;
        }
        auto delta = s.delta;
        delta.push_back(j);
        Sequent copied = make_sequent(s.gamma, std::move(delta), s.goal);
        std::size_t at = static_cast<std::size_t>(
            std::lower_bound(copied.delta.begin(), copied.delta.end(), j) - copied.delta.begin());
        std::vector<Instance> li;
        left_instances(copied, at, li);
        for (const auto& in : li) {
          auto sub = apply(copied, in, axiom ? b : b - 1);
          if (sub) {
            found = ProofNode{RuleId::Copy, Principal::gamma(g), {}, {std::move(*sub)}};
            break;
          }
        }
      }
      if (!found && gated) cutoff_ = true;
    }

    path_.pop_back();
    bool my_cut = cutoff_;
    std::size_t my_loop = min_loop_;
    cutoff_ = saved_cut || my_cut;
    min_loop_ = std::min(saved_loop, my_loop >= here ? kNone : my_loop);
    if (!found && budget_.memo && my_loop >= here) {
      auto& e = memo_[s];
      if (!my_cut) {
        e.cutoff = false;
        e.budget = std::numeric_limits<unsigned>::max();
      } else if (e.cutoff) {
        e.budget = std::max(e.budget, b);
      }
    }
    return found;
  }

  const KernelConfig& cfg_;
  const ConstraintDomain& d_;
  const SearchBudget& budget_;
  Clock& clock_;
  SearchStats& stats_;
  std::unordered_map<Sequent, Entry, SeqHash, SeqEq> memo_;
  std::vector<Sequent> path_;
  bool cutoff_ = false;
  std::size_t min_loop_ = kNone;
};

}  // namespace

SearchResult prove_naive(const KernelConfig& cfg, const Sequent& s, const SearchBudget& b) {
  SearchResult res;
  Clock clock(b.timeout_seconds);
  Naive search(cfg, b, clock, res.stats);
  try {
    for (unsigned depth = b.deepen ? 0 : b.depth; depth <= b.depth; ++depth) {
      ++res.stats.iterations;
      res.stats.depth_used = depth;
      ProofNode proof;
      bool cutoff = false;
      if (search.run(s, depth, proof, cutoff)) {
        res.outcome = Outcome::Proved;
        res.proof = std::move(proof);
        return res;
      }
      if (!cutoff) {
        res.outcome = Outcome::Refuted;
        return res;
      }
    }
  } catch (const Timeout&) {
    res.stats.timed_out = true;
  }
  res.outcome = Outcome::Exhausted;
  return res;
}

}  // namespace hylls::detail
