// Focused search for one-sided SELL over exact sequents. Within a focus
// the linear resources form a fixed pool; each subformula consumes part of
// it, and a branch that ends the focus must take everything left over.

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>

#include "hylls/sell.hpp"
#include "search_common.hpp"

namespace hylls {

namespace {

struct SeqHash {
  std::size_t operator()(const SellSequent& s) const {
    std::size_t h = 0x5e11;
    for (const auto& [label, items] : s.theta) {
      h = hash_combine(h, std::hash<std::string>{}(label));
      for (const auto& f : items) h = hash_combine(h, f.hash());
    }
    h = hash_combine(h, 0x77);
    for (const auto& f : s.work) h = hash_combine(h, f.hash());
    for (const auto& [l, t] : s.locals) h = hash_combine(h, std::hash<std::string>{}(l + ":" + t));
    return h;
  }
};

struct Entry {
  unsigned budget = 0;
  bool cutoff = true;
};

struct PoolItem {
  bool work = false;
  std::string label;
  SellFormula f;
};

using Mask = std::vector<char>;

struct Plan;
using PlanP = std::shared_ptr<const Plan>;

struct Plan {
  enum class Kind { Tensor, Plus1, Plus2, Exists, Some, One, Init, Promote, Blur } kind;
  Mask consumed;
  PlanP a, b;           // Tensor: left and right kid; unary rules use a
  int item = -1;        // Init: pool index, or -1 for an unbounded entry
  std::string label;    // Init from an unbounded context, Some witness, Promote label
  std::optional<Term> term;
  std::optional<SellProof> sub;  // Promote premise, Blur sequent
};

using K = detail::FnRef<bool(const Mask&, const PlanP&)>;

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Search {
 public:
  Search(const SubexpSignature& sig, const SearchBudget& b, detail::Clock& clock, SearchStats& stats)
      : sig_(sig), budget_(b), clock_(clock), stats_(stats) {}

  std::optional<SellProof> run(const SellSequent& s, unsigned depth, bool& cutoff) {
    cutoff_ = false;
    min_loop_ = kNone;
    auto p = solve(s, depth);
    cutoff = cutoff_;
    return p;
  }

 private:
  // ---- exact sequents ------------------------------------------------

  std::optional<SellProof> solve(const SellSequent& s, unsigned b) {
    clock_.tick();
    ++stats_.nodes;
    for (std::size_t i = 0; i < s.work.size(); ++i)
      if (s.work[i].kind() == SellKind::Top) return node(SellRule::Top, SellPrincipal::work(i), {}, {});
    for (std::size_t i = 0; i < s.work.size(); ++i) {
      const SellFormula& f = s.work[i];
      if (f.is_positive() || f.kind() == SellKind::NegAtom) continue;
      return invert(s, i, b);
    }
    return stable(s, b);
  }

  std::optional<SellProof> node(SellRule r, SellPrincipal p, SellWitness w, std::vector<SellProof> kids) {
    if (probing_) return SellProof{};
    return SellProof{r, std::move(p), std::move(w), std::move(kids)};
  }

  std::optional<SellProof> invert(const SellSequent& s, std::size_t i, unsigned b) {
    const SellFormula& f = s.work[i];
    SellWitness w;
    SellRule r;
    switch (f.kind()) {
      case SellKind::Par:
        r = SellRule::Par;
        break;
      case SellKind::Bot:
        r = SellRule::Bot;
        break;
      case SellKind::With:
        r = SellRule::With;
        break;
      case SellKind::Quest:
        r = SellRule::Store;
        break;
      case SellKind::Forall:
        r = SellRule::Forall;
        w.eigen = fresh_term(s);
        break;
      case SellKind::All:
        r = SellRule::All;
        w.eigen = fresh_label(s);
        break;
      default:
        return std::nullopt;
    }
    std::vector<SellSequent> prem;
    try {
      prem = sell_premises(sig_, r, s, SellPrincipal::work(i), w);
    } catch (const SellError&) {
      return std::nullopt;
    }
    std::vector<SellProof> kids;
    for (const auto& p : prem) {
      auto sub = solve(p, b);
      if (!sub) return std::nullopt;
      kids.push_back(std::move(*sub));
    }
    return node(r, SellPrincipal::work(i), w, std::move(kids));
  }

  std::string fresh_term(const SellSequent& s) const {
    for (unsigned n = 0;; ++n) {
      std::string name = "_a" + std::to_string(n);
      bool used = false;
      for (const auto& f : s.work) used = used || f.mentions_free_term(name);
      for (const auto& [l, items] : s.theta)
        for (const auto& f : items) used = used || f.mentions_free_term(name);
      if (!used) return name;
    }
  }

  std::string fresh_label(const SellSequent& s) const {
    SubexpSignature eff = effective_signature(sig_, s);
    for (unsigned n = 0;; ++n) {
      std::string name = "_l" + std::to_string(n);
      if (eff.has(name)) continue;
      bool used = false;
      for (const auto& f : s.work) used = used || f.mentions_label(name);
      for (const auto& [l, items] : s.theta)
        for (const auto& f : items) used = used || f.mentions_label(name);
      if (!used) return name;
    }
  }

  bool has_unbounded_candidate(const SubexpSignature& eff, const SellSequent& s) const {
    for (const auto& [label, items] : s.theta)
      if (eff.unbounded(label))
        for (const auto& f : items)
          if (f.kind() != SellKind::NegAtom) return true;
    return false;
  }

  std::optional<SellProof> stable(const SellSequent& s, unsigned b) {
    const SubexpSignature eff = effective_signature(sig_, s);
    if (probing_) {
      if (has_unbounded_candidate(eff, s)) return SellProof{};
      return decide(s, eff, b);
    }
    for (std::size_t i = 0; i < path_.size(); ++i)
      if (path_[i] == s) {
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

    auto found = decide(s, eff, b);

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

  std::optional<SellProof> decide(const SellSequent& s, const SubexpSignature& eff, unsigned b) {
    for (std::size_t i = 0; i < s.work.size(); ++i) {
      if (i > 0 && s.work[i] == s.work[i - 1]) continue;
      if (!s.work[i].is_positive()) continue;
      if (auto p = focus_root(s, eff, i, b)) return p;
    }
    for (int pass = 0; pass < 2; ++pass) {
      bool gated = false;
      for (const auto& [label, items] : s.theta) {
        bool unb = eff.unbounded(label);
        if (unb != (pass == 1)) continue;
        for (std::size_t i = 0; i < items.size(); ++i) {
          if (i > 0 && items[i] == items[i - 1]) continue;
          if (items[i].kind() == SellKind::NegAtom) continue;
          if (unb && b == 0) {
            gated = true;
            continue;
          }
          if (auto p = activate(s, eff, label, i, unb ? b - 1 : b)) return p;
        }
      }
      if (gated && probe(s, eff)) cutoff_ = true;
    }
    return std::nullopt;
  }

  std::optional<SellProof> activate(const SellSequent& s, const SubexpSignature& eff, const std::string& label,
                                    std::size_t i, unsigned b) {
    SellFormula f = s.theta.at(label)[i];
    SellSequent next = sell_premises(sig_, SellRule::Activate, s, SellPrincipal::theta(label, i), {})[0];
    std::optional<SellProof> sub;
    if (f.is_positive()) {
      auto at = std::lower_bound(next.work.begin(), next.work.end(), f) - next.work.begin();
      sub = focus_root(next, eff, static_cast<std::size_t>(at), b);
    } else {
      sub = solve(next, b);
    }
    if (!sub) return std::nullopt;
    return node(SellRule::Activate, SellPrincipal::theta(label, i), {}, {std::move(*sub)});
  }

  // Could an unbounded entry start a focus here? Stable sequents that could
  // copy again count as provable, so `false` is a real failure.
  bool probe(const SellSequent& s, const SubexpSignature& eff) {
    bool saved = probing_;
    probing_ = true;
    bool any = false;
    try {
      for (const auto& [label, items] : s.theta) {
        if (!eff.unbounded(label) || any) continue;
        for (std::size_t i = 0; i < items.size() && !any; ++i)
          if (items[i].kind() != SellKind::NegAtom) any = activate(s, eff, label, i, 0).has_value();
      }
    } catch (...) {
      probing_ = saved;
      throw;
    }
    probing_ = saved;
    return any;
  }

  // ---- focus ---------------------------------------------------------

  struct FocusCtx {
    const SellSequent* root;
    const SubexpSignature* eff;
    std::vector<PoolItem> pool;
    unsigned b;
  };

  std::optional<SellProof> focus_root(const SellSequent& s, const SubexpSignature& eff, std::size_t i, unsigned b) {
    FocusCtx c{&s, &eff, {}, b};
    for (std::size_t j = 0; j < s.work.size(); ++j)
      if (j != i) c.pool.push_back({true, "", s.work[j]});
    for (const auto& [label, items] : s.theta)
      if (!eff.unbounded(label))
        for (const auto& f : items) c.pool.push_back({false, label, f});
    Mask all(c.pool.size(), 1);
    const SellFormula& p = s.work[i];
    std::optional<SellProof> out;
    focus(c, p, all, true, [&](const Mask& left, const PlanP& plan) {
      if (std::find(left.begin(), left.end(), 1) != left.end()) return false;
      if (probing_) {
        out = SellProof{};
        return true;
      }
      out = build(c, *plan, s, p);
      return true;
    });
    return out;
  }

  static Mask minus(const Mask& a, const Mask& b) {
    Mask m = a;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (b[i]) m[i] = 0;
    return m;
  }

  PlanP make(Plan::Kind k, const Mask& before, const Mask& after) {
    if (probing_) return nullptr;
    auto p = std::make_shared<Plan>();
    p->kind = k;
    p->consumed = minus(before, after);
    return p;
  }

  // Distinct sub-multisets of the masked pool items accepted by `ok`.
  std::vector<Mask> subsets(const FocusCtx& c, const Mask& avail, const std::function<bool(const PoolItem&)>& ok) {
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < c.pool.size(); ++i) {
      if (!avail[i] || !ok(c.pool[i])) continue;
      bool placed = false;
      for (auto& g : groups) {
        const PoolItem& r = c.pool[g[0]];
        if (r.work == c.pool[i].work && r.label == c.pool[i].label && r.f == c.pool[i].f) {
          g.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({i});
    }
    std::vector<Mask> out;
    std::vector<std::size_t> take(groups.size(), 0);
    while (true) {
      Mask m(c.pool.size(), 0);
      for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t t = 0; t < take[g]; ++t) m[groups[g][t]] = 1;
      out.push_back(std::move(m));
      std::size_t g = 0;
      while (g < groups.size() && take[g] == groups[g].size()) take[g++] = 0;
      if (g == groups.size()) break;
      ++take[g];
    }
    std::stable_sort(out.begin(), out.end(), [](const Mask& a, const Mask& b) {
      return std::count(a.begin(), a.end(), 1) < std::count(b.begin(), b.end(), 1);
    });
    return out;
  }

  SellSequent branch_sequent(const FocusCtx& c, const Mask& take, const SellFormula& active,
                             const std::function<bool(const std::string&)>& keep_unbounded) {
    std::map<std::string, std::vector<SellFormula>> theta;
    std::vector<SellFormula> work{active};
    for (const auto& [label, items] : c.root->theta)
      if (c.eff->unbounded(label) && keep_unbounded(label)) theta[label] = items;
    for (std::size_t i = 0; i < c.pool.size(); ++i) {
      if (!take[i]) continue;
      if (c.pool[i].work)
        work.push_back(c.pool[i].f);
      else
        theta[c.pool[i].label].push_back(c.pool[i].f);
    }
    return make_sell_sequent(sig_, std::move(theta), std::move(work), c.root->locals);
  }

  bool focus(FocusCtx& c, const SellFormula& f, const Mask& avail, bool last, K k) {
    clock_.tick();
    ++stats_.nodes;
    switch (f.kind()) {
      case SellKind::Atom: {
        SellFormula d = dual(f);
        for (std::size_t i = 0; i < c.pool.size(); ++i) {
          if (!avail[i] || c.pool[i].f != d) continue;
          bool dup = false;
          for (std::size_t j = 0; j < i && !dup; ++j)
            dup = avail[j] && c.pool[j].f == d && c.pool[j].work == c.pool[i].work && c.pool[j].label == c.pool[i].label;
          if (dup) continue;
          Mask after = avail;
          after[i] = 0;
          PlanP p = make(Plan::Kind::Init, avail, after);
          if (p) const_cast<Plan&>(*p).item = static_cast<int>(i);
          if (k(after, p)) return true;
        }
        for (const auto& [label, items] : c.root->theta) {
          if (!c.eff->unbounded(label) || !std::binary_search(items.begin(), items.end(), d)) continue;
          PlanP p = make(Plan::Kind::Init, avail, avail);
          if (p) const_cast<Plan&>(*p).label = label;
          if (k(avail, p)) return true;
        }
        return false;
      }
      case SellKind::One:
        return k(avail, make(Plan::Kind::One, avail, avail));
      case SellKind::Zero:
        return false;
      case SellKind::Tensor: {
        // A negative kid goes last so it can take the remainder.
        bool swap = !f.left().is_positive() && f.right().is_positive();
        const SellFormula& first = swap ? f.right() : f.left();
        const SellFormula& second = swap ? f.left() : f.right();
        return focus(c, first, avail, false, [&](const Mask& m1, const PlanP& p1) {
          return focus(c, second, m1, last, [&](const Mask& m2, const PlanP& p2) {
            PlanP p = make(Plan::Kind::Tensor, avail, m2);
            if (p) {
              auto& n = const_cast<Plan&>(*p);
              n.a = swap ? p2 : p1;
              n.b = swap ? p1 : p2;
            }
            return k(m2, p);
          });
        });
      }
      case SellKind::Plus:
        for (int side = 0; side < 2; ++side) {
          bool ok = focus(c, side == 0 ? f.left() : f.right(), avail, last, [&](const Mask& m, const PlanP& kid) {
            PlanP p = make(side == 0 ? Plan::Kind::Plus1 : Plan::Kind::Plus2, avail, m);
            if (p) const_cast<Plan&>(*p).a = kid;
            return k(m, p);
          });
          if (ok) return true;
        }
        return false;
      case SellKind::Exists:
        for (const auto& t : term_candidates(*c.root)) {
          bool ok = focus(c, f.instantiate_term(t), avail, last, [&](const Mask& m, const PlanP& kid) {
            PlanP p = make(Plan::Kind::Exists, avail, m);
            if (p) {
              const_cast<Plan&>(*p).a = kid;
              const_cast<Plan&>(*p).term = t;
            }
            return k(m, p);
          });
          if (ok) return true;
        }
        return false;
      case SellKind::Some:
        for (const auto& l : c.eff->labels()) {
          if (!c.eff->leq(c.eff->type_of(l), f.type())) continue;
          bool ok = focus(c, f.body().subst_label(f.name(), l), avail, last, [&](const Mask& m, const PlanP& kid) {
            PlanP p = make(Plan::Kind::Some, avail, m);
            if (p) {
              const_cast<Plan&>(*p).a = kid;
              const_cast<Plan&>(*p).label = l;
            }
            return k(m, p);
          });
          if (ok) return true;
        }
        return false;
      case SellKind::Bang: {
        const std::string& a = f.label();
        if (!c.eff->has(a)) return false;
        auto eligible = [&](const PoolItem& it) { return !it.work && c.eff->leq(a, it.label); };
        std::vector<Mask> options;
        if (last) {
          for (std::size_t i = 0; i < c.pool.size(); ++i)
            if (avail[i] && !eligible(c.pool[i])) return false;
          options.push_back(avail);
        } else if (literal_promotion(c, f, avail, eligible)) {
          // Only an axiom can close the premise, so it takes one matching
          // negated atom or none.
          const SellFormula d = dual(f.body());
          std::set<std::string> seen;
          for (std::size_t i = 0; i < c.pool.size(); ++i)
            if (avail[i] && eligible(c.pool[i]) && c.pool[i].f == d && seen.insert(c.pool[i].label).second) {
              Mask m(c.pool.size(), 0);
              m[i] = 1;
              options.push_back(std::move(m));
            }
          options.push_back(Mask(c.pool.size(), 0));
        } else {
          options = subsets(c, avail, eligible);
        }
        for (const auto& take : options) {
          SellSequent prem = branch_sequent(c, take, f.body(),
                                            [&](const std::string& u) { return c.eff->leq(a, u); });
          auto sub = solve(prem, c.b);
          if (!sub) continue;
          Mask after = minus(avail, take);
          PlanP p = make(Plan::Kind::Promote, avail, after);
          if (p) {
            const_cast<Plan&>(*p).sub = std::move(sub);
            const_cast<Plan&>(*p).label = a;
          }
          if (k(after, p)) return true;
        }
        return false;
      }
      default: {
        std::vector<Mask> options;
        if (last)
          options.push_back(avail);
        else
          options = subsets(c, avail, [](const PoolItem&) { return true; });
        for (const auto& take : options) {
          SellSequent prem = branch_sequent(c, take, f, [](const std::string&) { return true; });
          auto sub = solve(prem, c.b);
          if (!sub) continue;
          Mask after = minus(avail, take);
          PlanP p = make(Plan::Kind::Blur, avail, after);
          if (p) const_cast<Plan&>(*p).sub = std::move(sub);
          if (k(after, p)) return true;
        }
        return false;
      }
    }
  }

  // !a p where every linear candidate and every unbounded context kept by
  // the promotion holds negated atoms only.
  bool literal_promotion(const FocusCtx& c, const SellFormula& f, const Mask& avail,
                         const std::function<bool(const PoolItem&)>& eligible) const {
    if (f.body().kind() != SellKind::Atom) return false;
    for (std::size_t i = 0; i < c.pool.size(); ++i)
      if (avail[i] && eligible(c.pool[i]) && c.pool[i].f.kind() != SellKind::NegAtom) return false;
    for (const auto& [label, items] : c.root->theta) {
      if (!c.eff->unbounded(label) || !c.eff->leq(f.label(), label)) continue;
      for (const auto& g : items)
        if (g.kind() != SellKind::NegAtom) return false;
    }
    return true;
  }

  std::vector<Term> term_candidates(const SellSequent& s) const {
    std::vector<Term> ground;
    for (const auto& f : s.work) f.collect_ground_terms(ground);
    for (const auto& [l, items] : s.theta)
      for (const auto& f : items) f.collect_ground_terms(ground);
    std::vector<Term> out;
    for (const auto& t : ground)
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    if (out.empty()) out.push_back(Term::constant("c"));
    return out;
  }

  // ---- proof construction --------------------------------------------

  static std::size_t index_of(const SellSequent& s, const SellFormula& f) {
    auto it = std::lower_bound(s.work.begin(), s.work.end(), f);
    return static_cast<std::size_t>(it - s.work.begin());
  }

  SellProof build(const FocusCtx& c, const Plan& p, const SellSequent& s, const SellFormula& f) {
    SellPrincipal here = SellPrincipal::work(index_of(s, f));
    auto unary = [&](SellRule r, const SellWitness& w, const SellFormula& next) {
      auto prem = sell_premises(sig_, r, s, here, w);
      return SellProof{r, here, w, {build(c, *p.a, prem[0], next)}};
    };
    switch (p.kind) {
      case Plan::Kind::Tensor: {
        SellWitness w;
        for (std::size_t i = 0; i < c.pool.size(); ++i) {
          if (!p.a->consumed[i]) continue;
          if (c.pool[i].work)
            w.work_split.push_back(c.pool[i].f);
          else
            w.theta_split.emplace_back(c.pool[i].label, c.pool[i].f);
        }
        auto prem = sell_premises(sig_, SellRule::Tensor, s, here, w);
        return SellProof{SellRule::Tensor,
                         here,
                         w,
                         {build(c, *p.a, prem[0], f.left()), build(c, *p.b, prem[1], f.right())}};
      }
      case Plan::Kind::Plus1:
        return unary(SellRule::Plus1, {}, f.left());
      case Plan::Kind::Plus2:
        return unary(SellRule::Plus2, {}, f.right());
      case Plan::Kind::Exists: {
        SellWitness w;
        w.term = p.term;
        return unary(SellRule::Exists, w, f.instantiate_term(*p.term));
      }
      case Plan::Kind::Some: {
        SellWitness w;
        w.label = p.label;
        return unary(SellRule::Some, w, f.body().subst_label(f.name(), p.label));
      }
      case Plan::Kind::One:
        return SellProof{SellRule::One, here, {}, {}};
      case Plan::Kind::Init: {
        SellFormula d = dual(f);
        std::string label = p.item >= 0 ? c.pool[static_cast<std::size_t>(p.item)].label : p.label;
        if (p.item >= 0 && c.pool[static_cast<std::size_t>(p.item)].work) return SellProof{SellRule::Init, {}, {}, {}};
        const auto& items = s.theta.at(label);
        auto idx = static_cast<std::size_t>(std::lower_bound(items.begin(), items.end(), d) - items.begin());
        return SellProof{SellRule::Activate, SellPrincipal::theta(label, idx), {}, {SellProof{SellRule::Init, {}, {}, {}}}};
      }
      case Plan::Kind::Promote: {
        // Unbounded contexts not above the label are weakened first.
        SellSequent cur = s;
        std::vector<SellPrincipal> weakens;
        const SubexpSignature eff = effective_signature(sig_, s);
        while (true) {
          auto it = std::find_if(cur.theta.begin(), cur.theta.end(),
                                 [&](const auto& e) { return !eff.leq(p.label, e.first) && eff.unbounded(e.first); });
          if (it == cur.theta.end()) break;
          weakens.push_back(SellPrincipal::theta(it->first, 0));
          cur = weaken(sig_, cur, it->first, 0);
        }
        SellProof proof{SellRule::Promote, SellPrincipal::work(0), {}, {*p.sub}};
        for (auto w = weakens.rbegin(); w != weakens.rend(); ++w) proof = SellProof{SellRule::Weaken, *w, {}, {proof}};
        return proof;
      }
      case Plan::Kind::Blur:
        return *p.sub;
    }
    return {};
  }

  const SubexpSignature& sig_;
  const SearchBudget& budget_;
  detail::Clock& clock_;
  SearchStats& stats_;
  std::unordered_map<SellSequent, Entry, SeqHash> memo_;
  std::vector<SellSequent> path_;
  bool cutoff_ = false;
  bool probing_ = false;
  std::size_t min_loop_ = kNone;
};

}  // namespace

SellSequent expand_sell_sequent(const SubexpSignature& sig, const SellSequent& s) {
  std::map<std::string, std::vector<SellFormula>> theta;
  for (const auto& [l, items] : s.theta)
    for (const auto& f : items) theta[l].push_back(expand_sell_modal(f));
  std::vector<SellFormula> work;
  for (const auto& f : s.work) work.push_back(expand_sell_modal(f));
  return make_sell_sequent(sig, std::move(theta), std::move(work), s.locals);
}

SellSearchResult prove_sell(const SubexpSignature& sig, const SellSequent& input, const SearchBudget& b) {
  SellSearchResult res;
  SellSequent s = expand_sell_sequent(sig, input);
  detail::Clock clock(b.timeout_seconds);
  Search search(sig, b, clock, res.stats);
  try {
    for (unsigned depth = b.deepen ? 0 : b.depth; depth <= b.depth; ++depth) {
      ++res.stats.iterations;
      res.stats.depth_used = depth;
      bool cutoff = false;
      if (auto p = search.run(s, depth, cutoff)) {
        res.outcome = Outcome::Proved;
        res.proof = std::move(*p);
        return res;
      }
      if (!cutoff) {
        res.outcome = Outcome::Refuted;
        return res;
      }
    }
  } catch (const detail::Timeout&) {
    res.stats.timed_out = true;
  }
  res.outcome = Outcome::Exhausted;
  return res;
}

}  // namespace hylls
