#include "hylls/prover.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "hylls/resources.hpp"
#include "search_common.hpp"

namespace hylls {

namespace detail {
SearchResult prove_naive(const KernelConfig& cfg, const Sequent& s, const SearchBudget& b);
}

namespace {

using detail::FnRef;
using Ids = ResourceIds;

bool right_invertible(const KernelConfig& cfg, const Formula& f) {
  switch (f.kind()) {
    case Connective::Limp:
    case Connective::With:
    case Connective::Top:
    case Connective::ForallTerm:
      return true;
    case Connective::ForallWorld:
    case Connective::At:
    case Connective::Down:
      return cfg.hybrid;
    default:
      return false;
  }
}

bool left_invertible(const KernelConfig& cfg, const Formula& f) {
  switch (f.kind()) {
    case Connective::Tensor:
    case Connective::One:
    case Connective::Plus:
    case Connective::Zero:
    case Connective::Bang:
    case Connective::ExistsTerm:
      return true;
    case Connective::ExistsWorld:
    case Connective::At:
    case Connective::Down:
      return cfg.hybrid;
    default:
      return false;
  }
}

bool has_left_focus(const KernelConfig& cfg, const Formula& f) {
  switch (f.kind()) {
    case Connective::Limp:
    case Connective::With:
    case Connective::ForallTerm:
      return true;
    case Connective::ForallWorld:
      return cfg.hybrid;
    default:
      return false;
  }
}

// Symbolic proof over resource ids; converted to a kernel proof once the
// final consumption of every node is known.
struct SNode;
using SP = std::shared_ptr<const SNode>;

struct SNode {
  RuleId rule = RuleId::Init;
  Principal::Zone zone = Principal::Zone::None;
  std::uint32_t res = 0;
  std::optional<Judgment> gamma_item;
  Witness witness;
  std::vector<SP> kids;
  std::vector<Ids> extra;  // per premise: additionally consumed ids
  std::vector<bool> kid_slack;
  Ids base;  // ids consumed from outside the node, before absorption
};

struct Out {
  Ids left;
  bool slack = false;
  SP proof;
};

using K = FnRef<bool(const Out&)>;

struct Gamma {
  std::vector<Judgment> items;  // sorted, unique
  std::vector<unsigned> stamp;  // last use, 0 = never
  unsigned clock = 0;
};
using GP = std::shared_ptr<const Gamma>;

struct Key {
  std::vector<Judgment> gamma;
  std::vector<Judgment> avail;
  Judgment goal;
  std::size_t hash = 0;
  friend bool operator==(const Key& a, const Key& b) {
    return a.hash == b.hash && a.goal == b.goal && a.avail == b.avail && a.gamma == b.gamma;
  }
};
struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.hash; }
};
struct MemoEntry {
  unsigned budget = 0;
  bool cutoff = true;
};

constexpr std::size_t kNoLoop = std::numeric_limits<std::size_t>::max();

class Focused {
 public:
  Focused(const KernelConfig& cfg, const SearchBudget& b, detail::Clock& clock, SearchStats& stats)
      : cfg_(cfg), d_(*cfg.domain), budget_(b), clock_(clock), stats_(stats) {}

  // One iteration at the given depth.
  bool run(const Sequent& s, unsigned depth, ProofNode& proof, bool& cutoff) {
    table_.clear();
    cutoff_ = false;
    min_loop_ = kNoLoop;
    Ids avail;
    for (const auto& j : s.delta) avail.push_back(alloc(j));
    auto g = std::make_shared<Gamma>();
    g->items = s.gamma;
    g->stamp.assign(g->items.size(), 0);
    std::optional<Out> result;
    bool ok = invert(g, avail, avail, s.goal, depth, [&](const Out& o) {
      if (!o.left.empty() && !o.slack) return false;
      result = o;
      return true;
    });
    cutoff = cutoff_;
    if (!ok) return false;
    proof = convert(result->proof, s.gamma, s.goal, result->left);
    return true;
  }

 private:
  std::uint32_t alloc(Judgment j) {
    table_.push_back(std::move(j));
    return static_cast<std::uint32_t>(table_.size() - 1);
  }

  template <class F>
  bool scoped(F&& f) {
    auto mark = table_.size();
    bool ok = f();
    if (!ok) table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(mark), table_.end());
    return ok;
  }

  detail::JudgmentRefs context(const GP& g, const Ids& avail, const Judgment& goal, const Judgment* extra = nullptr) {
    detail::JudgmentRefs ctx;
    ctx.push_back(&goal);
    if (extra) ctx.push_back(extra);
    for (auto id : avail) ctx.push_back(&table_[id]);
    for (const auto& j : g->items) ctx.push_back(&j);
    return ctx;
  }

  static const Ids& base_of(const SP& p) {
    static const Ids empty;
    return p ? p->base : empty;
  }

  SP leaf(RuleId rule, Principal::Zone zone, std::uint32_t res, Ids base) {
    if (probing_) return nullptr;
    auto n = std::make_shared<SNode>();
    n->rule = rule;
    n->zone = zone;
    n->res = res;
    n->base = std::move(base);
    return n;
  }

  // Single-premise node. `created` are the ids the rule introduced.
  SP unary(RuleId rule, Principal::Zone zone, std::uint32_t res, const Ids& created, const Out& kid, Ids extra,
           Witness w = {}) {
    if (probing_) return nullptr;
    auto n = std::make_shared<SNode>();
    n->rule = rule;
    n->zone = zone;
    n->res = res;
    n->witness = std::move(w);
    Ids consumed = ids_minus(ids_union(base_of(kid.proof), extra), created);
    if (zone == Principal::Zone::Delta) consumed = ids_insert(consumed, res);
    n->base = std::move(consumed);
    n->kids = {kid.proof};
    n->extra = {std::move(extra)};
    n->kid_slack = {kid.slack};
    return n;
  }

  // Wraps a continuation so that the ids in `created` are closed off and a
  // unary node is stacked on the premise's proof.
  template <class Make>
  auto closing(const Ids& created, const K& k, Make make) {
    return [&, created, make](const Out& o) {
      Threaded t{o.left, o.slack};
      Ids absorbed;
      if (!detail_close(created, t, absorbed)) return false;
      Out up{t.leftover, t.slack, make(o, absorbed)};
      return k(up);
    };
  }

  static bool detail_close(const Ids& created, Threaded& t, Ids& absorbed) { return close_scope(created, t, absorbed); }

  // ---- inversion ---------------------------------------------------------

  bool invert(const GP& g, const Ids& avail, const Ids& pending, const Judgment& goal, unsigned b, K k) {
    clock_.tick();
    ++stats_.nodes;
    const Formula& f = goal.formula;
    const WorldExpr& w = goal.world;
    if (right_invertible(cfg_, f)) {
      switch (f.kind()) {
        case Connective::Limp:
          return scoped([&] {
            auto a = alloc({f.left(), w});
            Ids created{a};
            auto k2 = closing(created, k, [&](const Out& o, const Ids& abs) {
              return unary(RuleId::LimpR, Principal::Zone::Goal, 0, created, o, abs);
            });
            Ids p2 = pending;
            p2.push_back(a);
            return invert(g, ids_insert(avail, a), p2, {f.right(), w}, b, k2);
          });
        case Connective::With:
          return invert(g, avail, pending, {f.left(), w}, b, [&](const Out& o1) {
            return invert(g, avail, pending, {f.right(), w}, b, [&](const Out& o2) {
              return additive(RuleId::WithR, Principal::Zone::Goal, 0, {}, o1, {}, o2, avail, k);
            });
          });
        case Connective::Top:
          return k(Out{avail, true, leaf(RuleId::TopR, Principal::Zone::Goal, 0, {})});
        case Connective::ForallTerm: {
          std::string e = detail::fresh_name("_a", context(g, avail, goal));
          Witness wit;
          wit.eigen = e;
          return invert(g, avail, pending, {f.instantiate_term(Term::free(e)), w}, b, [&](const Out& o) {
            return k(Out{o.left, o.slack, unary(RuleId::ForallR, Principal::Zone::Goal, 0, {}, o, {}, wit)});
          });
        }
        case Connective::ForallWorld: {
          std::string e = detail::fresh_name("_u", context(g, avail, goal));
          Witness wit;
          wit.eigen = e;
          return invert(g, avail, pending, {f.instantiate_world(d_, WorldExpr::var(e)), w}, b, [&](const Out& o) {
            return k(Out{o.left, o.slack, unary(RuleId::ForallWorldR, Principal::Zone::Goal, 0, {}, o, {}, wit)});
          });
        }
        case Connective::At:
          return invert(g, avail, pending, {f.body(), f.world()}, b, [&](const Out& o) {
            return k(Out{o.left, o.slack, unary(RuleId::AtR, Principal::Zone::Goal, 0, {}, o, {})});
          });
        case Connective::Down:
          return invert(g, avail, pending, {f.instantiate_world(d_, w), w}, b, [&](const Out& o) {
            return k(Out{o.left, o.slack, unary(RuleId::DownR, Principal::Zone::Goal, 0, {}, o, {})});
          });
        default:
          break;
      }
    }
    if (!pending.empty()) return invert_left(g, avail, pending, goal, b, k);
    return decide(g, avail, goal, b, k);
  }

  // Two-premise additive node over the same input.
  bool additive(RuleId rule, Principal::Zone zone, std::uint32_t res, const Ids& created1, const Out& o1,
                const Ids& created2, const Out& o2, const Ids& /*input*/, const K& k) {
    Threaded t1{o1.left, o1.slack}, t2{o2.left, o2.slack};
    Ids loc1, loc2;
    if (!close_scope(created1, t1, loc1) || !close_scope(created2, t2, loc2)) return false;
    Ids abs1, abs2;
    auto t = thread_additive(t1, t2, abs1, abs2);
    if (!t) return false;
    SP node;
    if (!probing_) {
      auto n = std::make_shared<SNode>();
      n->rule = rule;
      n->zone = zone;
      n->res = res;
      n->kids = {o1.proof, o2.proof};
      n->extra = {ids_union(loc1, abs1), ids_union(loc2, abs2)};
      n->kid_slack = {o1.slack, o2.slack};
      Ids side = ids_minus(ids_union(base_of(o1.proof), n->extra[0]), created1);
      if (zone == Principal::Zone::Delta) side = ids_insert(side, res);
      n->base = std::move(side);
      node = n;
    }
    return k(Out{t->leftover, t->slack, node});
  }

  bool invert_left(const GP& g, const Ids& avail, const Ids& pending, const Judgment& goal, unsigned b, K k) {
    std::uint32_t r = pending.front();
    Ids rest(pending.begin() + 1, pending.end());
    Judgment j = table_[r];
    const Formula& f = j.formula;
    const WorldExpr& w = j.world;
    if (!left_invertible(cfg_, f)) return invert(g, avail, rest, goal, b, k);
    Ids without = ids_erase(avail, r);
    const auto D = Principal::Zone::Delta;

    auto replace = [&](RuleId rule, std::vector<Judgment> parts, Witness wit, const GP& g2) {
      return scoped([&] {
        Ids created;
        Ids av = without;
        Ids pend;
        for (auto& p : parts) {
          auto id = alloc(std::move(p));
          created.push_back(id);
          av = ids_insert(av, id);
          pend.push_back(id);
        }
        pend.insert(pend.end(), rest.begin(), rest.end());
        auto k2 = closing(created, k, [&](const Out& o, const Ids& abs) {
          return unary(rule, D, r, created, o, abs, wit);
        });
        return invert(g2, av, pend, goal, b, k2);
      });
    };

    switch (f.kind()) {
      case Connective::Tensor:
        return replace(RuleId::TensorL, {{f.left(), w}, {f.right(), w}}, {}, g);
      case Connective::One:
        return replace(RuleId::OneL, {}, {}, g);
      case Connective::Zero:
        return k(Out{without, true, leaf(RuleId::ZeroL, D, r, {r})});
      case Connective::Bang: {
        Judgment body{f.body(), w};
        GP g2 = g;
        if (!std::binary_search(g->items.begin(), g->items.end(), body)) {
          auto ng = std::make_shared<Gamma>();
          auto pos = std::lower_bound(g->items.begin(), g->items.end(), body) - g->items.begin();
          ng->items = g->items;
          ng->stamp = g->stamp;
          ng->clock = g->clock;
          ng->items.insert(ng->items.begin() + pos, body);
          ng->stamp.insert(ng->stamp.begin() + pos, 0);
          g2 = ng;
        }
        return replace(RuleId::BangL, {}, {}, g2);
      }
      case Connective::ExistsTerm: {
        std::string e = detail::fresh_name("_a", context(g, avail, goal));
        Witness wit;
        wit.eigen = e;
        return replace(RuleId::ExistsL, {{f.instantiate_term(Term::free(e)), w}}, wit, g);
      }
      case Connective::ExistsWorld: {
        std::string e = detail::fresh_name("_u", context(g, avail, goal));
        Witness wit;
        wit.eigen = e;
        return replace(RuleId::ExistsWorldL, {{f.instantiate_world(d_, WorldExpr::var(e)), w}}, wit, g);
      }
      case Connective::At:
        return replace(RuleId::AtL, {{f.body(), f.world()}}, {}, g);
      case Connective::Down:
        return replace(RuleId::DownL, {{f.instantiate_world(d_, w), w}}, {}, g);
      case Connective::Plus:
        return scoped([&] {
          auto r1 = alloc({f.left(), w});
          Ids p1{r1};
          p1.insert(p1.end(), rest.begin(), rest.end());
          return invert(g, ids_insert(without, r1), p1, goal, b, [&](const Out& o1) {
            return scoped([&] {
              auto r2 = alloc({f.right(), w});
              Ids p2{r2};
              p2.insert(p2.end(), rest.begin(), rest.end());
              return invert(g, ids_insert(without, r2), p2, goal, b, [&](const Out& o2) {
                return additive(RuleId::PlusL, D, r, {r1}, o1, {r2}, o2, without, k);
              });
            });
          });
        });
      default:
        return invert(g, avail, rest, goal, b, k);
    }
  }

  // ---- decide ------------------------------------------------------------

  Key make_key(const GP& g, const Ids& avail, const Judgment& goal) {
    Key key{g->items, {}, goal, 0};
    key.avail.reserve(avail.size());
    for (auto id : avail) key.avail.push_back(table_[id]);
    std::sort(key.avail.begin(), key.avail.end());
    std::size_t h = goal.hash();
    for (const auto& j : key.gamma) h = hash_combine(h, j.hash());
    h = hash_combine(h, 0x9e37);
    for (const auto& j : key.avail) h = hash_combine(h, j.hash());
    key.hash = h;
    return key;
  }

  bool positive(const Formula& f) const { return polarity_of(f, budget_.atoms) == Polarity::Positive; }

  // Ids with pairwise distinct judgments. Of equal ones the newest is kept:
  // it lives in the innermost scope, and the older copies can stand in for
  // it anywhere it could be used.
  Ids distinct(const Ids& avail) const {
    Ids out;
    for (auto it = avail.rbegin(); it != avail.rend(); ++it) {
      bool seen = std::any_of(out.begin(), out.end(), [&](std::uint32_t o) { return table_[o] == table_[*it]; });
      if (!seen) out.push_back(*it);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  bool gamma_candidate(const Judgment& j, const Judgment& goal) const {
    const Formula& f = j.formula;
    if (f.is_atom()) return !positive(f) && j == goal;
    if (f.kind() == Connective::One || f.kind() == Connective::Top) return false;
    if (!cfg_.hybrid && f.is_hybrid()) return false;
    return true;
  }

  GP touch(const GP& g, std::size_t i) const {
    auto ng = std::make_shared<Gamma>(*g);
    ng->stamp[i] = ++ng->clock;
    return ng;
  }

  bool use_gamma(const GP& g, std::size_t i, const Ids& avail, const Judgment& goal, unsigned b, const K& k) {
    const Judgment& j = g->items[i];
    GP g2 = probing_ ? g : touch(g, i);
    return scoped([&] {
      auto c = alloc(j);
      Ids created{c};
      auto k2 = closing(created, k, [&](const Out& o, const Ids& abs) {
        SP n = unary(RuleId::Copy, Principal::Zone::Gamma, 0, created, o, abs);
        if (n) const_cast<SNode&>(*n).gamma_item = j;
        return n;
      });
      if (positive(j.formula)) {
        if (probing_) return k(Out{avail, true, nullptr});
        return invert(g2, ids_insert(avail, c), Ids{c}, goal, b, k2);
      }
      return focus_left(g2, avail, c, goal, b, k2);
    });
  }

  std::vector<std::size_t> gamma_order(const GP& g) const {
    std::vector<std::size_t> idx(g->items.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t c) { return g->stamp[a] < g->stamp[c]; });
    return idx;
  }

  bool decide(const GP& g, const Ids& avail, const Judgment& goal, unsigned b, K k) {
    if (probing_) return k(Out{avail, true, nullptr});
    clock_.tick();
    Key key = make_key(g, avail, goal);
    if (avail.empty()) {
      for (std::size_t i = 0; i < path_.size(); ++i)
        if (path_[i] == key) {
          min_loop_ = std::min(min_loop_, i);
          return false;
        }
    }
    if (budget_.memo) {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        if (!it->second.cutoff) {
          ++stats_.memo_hits;
          return false;
        }
        if (b <= it->second.budget) {
          ++stats_.memo_hits;
          cutoff_ = true;
          return false;
        }
      }
    }
    const std::size_t here = path_.size();
    path_.push_back(key);
    bool saved_cut = cutoff_;
    std::size_t saved_loop = min_loop_;
    cutoff_ = false;
    min_loop_ = kNoLoop;
    bool invoked = false;
    // The continuation belongs to the enclosing goal, not to this point.
    auto k2 = [&](const Out& o) {
      invoked = true;
      std::vector<Key> above(path_.begin() + static_cast<std::ptrdiff_t>(here), path_.end());
      path_.resize(here);
      bool r = k(o);
      path_.insert(path_.end(), above.begin(), above.end());
      return r;
    };
    bool ok = false;

    for (auto r : distinct(avail)) {
      const Judgment& j = table_[r];
      bool focus = has_left_focus(cfg_, j.formula) || (j.formula.is_atom() && !positive(j.formula) && j == goal);
      if (!focus) continue;
      if ((ok = focus_left(g, ids_erase(avail, r), r, goal, b, k2))) break;
    }
    if (!ok) {
      bool gated = false;
      for (auto i : gamma_order(g)) {
        if (!gamma_candidate(g->items[i], goal)) continue;
        if (b == 0) {
          gated = true;
          continue;
        }
        if ((ok = use_gamma(g, i, avail, goal, b - 1, k2))) break;
      }
      if (!ok && gated && probe(g, avail, goal)) cutoff_ = true;
    }
    if (!ok && positive(goal.formula)) ok = focus_right(g, avail, goal, b, k2);

    path_.pop_back();
    bool my_cut = cutoff_;
    std::size_t my_loop = min_loop_;
    cutoff_ = saved_cut || my_cut;
    min_loop_ = std::min(saved_loop, my_loop >= here ? kNoLoop : my_loop);
    if (!ok && !invoked && budget_.memo && my_loop >= here) {
      auto& e = memo_[key];
      if (!my_cut) {
        e.cutoff = false;
        e.budget = std::numeric_limits<unsigned>::max();
      } else if (e.cutoff) {
        e.budget = std::max(e.budget, b);
      }
    }
    return ok;
  }

  // Could any unbounded hypothesis start a focus here? Every later stable
  // point is assumed provable, so `false` is a real failure.
  bool probe(const GP& g, const Ids& avail, const Judgment& goal) {
    probing_ = true;
    bool any = false;
    try {
      for (std::size_t i = 0; i < g->items.size() && !any; ++i) {
        if (!gamma_candidate(g->items[i], goal)) continue;
        any = use_gamma(g, i, avail, goal, 0, [](const Out&) { return true; });
      }
    } catch (...) {
      probing_ = false;
      throw;
    }
    probing_ = false;
    return any;
  }

  // ---- focus -------------------------------------------------------------

  bool focus_right(const GP& g, const Ids& avail, const Judgment& goal, unsigned b, K k) {
    clock_.tick();
    ++stats_.nodes;
    const Formula& f = goal.formula;
    const WorldExpr& w = goal.world;
    const auto G = Principal::Zone::Goal;
    switch (f.kind()) {
      case Connective::At:
        if (!cfg_.hybrid) return false;
        return focus_right(g, avail, {f.body(), f.world()}, b, [&](const Out& o) {
          return k(Out{o.left, o.slack, unary(RuleId::AtR, G, 0, {}, o, {})});
        });
      case Connective::Down:
        if (!cfg_.hybrid) return false;
        return focus_right(g, avail, {f.instantiate_world(d_, w), w}, b, [&](const Out& o) {
          return k(Out{o.left, o.slack, unary(RuleId::DownR, G, 0, {}, o, {})});
        });
      case Connective::Tensor:
        return focus_right(g, avail, {f.left(), w}, b, [&](const Out& o1) {
          return focus_right(g, o1.left, {f.right(), w}, b, [&](const Out& o2) {
            SP node;
            if (!probing_) {
              auto n = std::make_shared<SNode>();
              n->rule = RuleId::TensorR;
              n->zone = G;
              n->kids = {o1.proof, o2.proof};
              n->extra = {{}, {}};
              n->kid_slack = {o1.slack, o2.slack};
              n->base = ids_union(base_of(o1.proof), base_of(o2.proof));
              node = n;
            }
            return k(Out{o2.left, o1.slack || o2.slack, node});
          });
        });
      case Connective::One:
        return k(Out{avail, false, leaf(RuleId::OneR, G, 0, {})});
      case Connective::Plus:
        if (focus_right(g, avail, {f.left(), w}, b, [&](const Out& o) {
              return k(Out{o.left, o.slack, unary(RuleId::PlusR1, G, 0, {}, o, {})});
            }))
          return true;
        return focus_right(g, avail, {f.right(), w}, b, [&](const Out& o) {
          return k(Out{o.left, o.slack, unary(RuleId::PlusR2, G, 0, {}, o, {})});
        });
      case Connective::Zero:
        return false;
      case Connective::Bang:
        return invert(g, {}, {}, {f.body(), w}, b, [&](const Out& o) {
          return k(Out{avail, false, unary(RuleId::BangR, G, 0, {}, o, {})});
        });
      case Connective::ExistsTerm:
        for (const auto& t : detail::term_candidates(context(g, avail, goal))) {
          Witness wit;
          wit.term = t;
          if (focus_right(g, avail, {f.instantiate_term(t), w}, b, [&](const Out& o) {
                return k(Out{o.left, o.slack, unary(RuleId::ExistsR, G, 0, {}, o, {}, wit)});
              }))
            return true;
        }
        return false;
      case Connective::ExistsWorld:
        if (!cfg_.hybrid) return false;
        for (const auto& v : detail::world_candidates(d_, f, w, context(g, avail, goal), budget_.world_bound)) {
          Witness wit;
          wit.world = v;
          if (focus_right(g, avail, {f.instantiate_world(d_, v), w}, b, [&](const Out& o) {
                return k(Out{o.left, o.slack, unary(RuleId::ExistsWorldR, G, 0, {}, o, {}, wit)});
              }))
            return true;
        }
        return false;
      case Connective::Atom:
        if (positive(f)) {
          for (auto r : distinct(avail)) {
            if (!(table_[r] == goal)) continue;
            if (k(Out{ids_erase(avail, r), false, leaf(RuleId::Init, Principal::Zone::Delta, r, {r})})) return true;
          }
          if (std::binary_search(g->items.begin(), g->items.end(), goal)) {
            return scoped([&] {
              auto c = alloc(goal);
              SP init = leaf(RuleId::Init, Principal::Zone::Delta, c, {c});
              Out inner{avail, false, init};
              SP n = unary(RuleId::Copy, Principal::Zone::Gamma, 0, {c}, inner, {});
              if (n) const_cast<SNode&>(*n).gamma_item = goal;
              return k(Out{avail, false, n});
            });
          }
          return false;
        }
        [[fallthrough]];
      default:
        return invert(g, avail, {}, goal, b, k);
    }
  }

  bool focus_left(const GP& g, const Ids& avail, std::uint32_t r, const Judgment& goal, unsigned b, K k) {
    clock_.tick();
    ++stats_.nodes;
    Judgment j = table_[r];
    const Formula& f = j.formula;
    const WorldExpr& w = j.world;
    const auto D = Principal::Zone::Delta;

    // Continue the focus on a subformula that replaces r.
    auto step = [&](RuleId rule, Judgment sub, Witness wit) {
      return scoped([&] {
        auto a = alloc(std::move(sub));
        Ids created{a};
        auto k2 = closing(created, k, [&](const Out& o, const Ids& abs) {
          return unary(rule, D, r, created, o, abs, wit);
        });
        return focus_left(g, avail, a, goal, b, k2);
      });
    };

    switch (f.kind()) {
      case Connective::Limp:
        return focus_right(g, avail, {f.left(), w}, b, [&](const Out& o1) {
          return scoped([&] {
            auto bb = alloc({f.right(), w});
            Ids created{bb};
            return focus_left(g, o1.left, bb, goal, b, [&](const Out& o2) {
              Threaded t{o2.left, o2.slack};
              Ids abs;
              if (!close_scope(created, t, abs)) return false;
              SP node;
              if (!probing_) {
                auto n = std::make_shared<SNode>();
                n->rule = RuleId::LimpL;
                n->zone = D;
                n->res = r;
                n->kids = {o1.proof, o2.proof};
                n->extra = {{}, abs};
                n->kid_slack = {o1.slack, o2.slack};
                Ids side = ids_minus(ids_union(base_of(o2.proof), abs), created);
                n->base = ids_insert(ids_union(base_of(o1.proof), side), r);
                node = n;
              }
              return k(Out{t.leftover, o1.slack || t.slack, node});
            });
          });
        });
      case Connective::With:
        if (step(RuleId::WithL1, {f.left(), w}, {})) return true;
        return step(RuleId::WithL2, {f.right(), w}, {});
      case Connective::ForallTerm:
        for (const auto& t : detail::term_candidates(context(g, avail, goal, &j))) {
          Witness wit;
          wit.term = t;
          if (step(RuleId::ForallL, {f.instantiate_term(t), w}, wit)) return true;
        }
        return false;
      case Connective::ForallWorld:
        if (!cfg_.hybrid) return false;
        for (const auto& v : detail::world_candidates(d_, f, w, context(g, avail, goal, &j), budget_.world_bound)) {
          Witness wit;
          wit.world = v;
          if (step(RuleId::ForallWorldL, {f.instantiate_world(d_, v), w}, wit)) return true;
        }
        return false;
      case Connective::At:
        if (!cfg_.hybrid) return false;
        return step(RuleId::AtL, {f.body(), f.world()}, {});
      case Connective::Down:
        if (!cfg_.hybrid) return false;
        return step(RuleId::DownL, {f.instantiate_world(d_, w), w}, {});
      case Connective::Top:
        return false;
      case Connective::Atom:
        if (!positive(f)) {
          if (!(j == goal)) return false;
          return k(Out{avail, false, leaf(RuleId::Init, D, r, {r})});
        }
        [[fallthrough]];
      default:
        // Positive: the focus is lost and r goes back to the context.
        return invert(g, ids_insert(avail, r), Ids{r}, goal, b, k);
    }
  }

  // ---- conversion --------------------------------------------------------

  std::vector<Judgment> judgments(const Ids& ids) const {
    std::vector<Judgment> out;
    out.reserve(ids.size());
    for (auto id : ids) out.push_back(table_[id]);
    return out;
  }

  ProofNode convert(const SP& n, const std::vector<Judgment>& gamma, const Judgment& goal, const Ids& x) {
    Ids delta = ids_union(n->base, x);
    Sequent s = make_sequent(gamma, judgments(delta), goal);
    ProofNode p;
    p.rule = n->rule;
    p.witness = n->witness;
    switch (n->zone) {
      case Principal::Zone::Goal:
        p.principal = Principal::goal();
        break;
      case Principal::Zone::Delta: {
        auto it = std::lower_bound(s.delta.begin(), s.delta.end(), table_[n->res]);
        p.principal = Principal::delta(static_cast<std::size_t>(it - s.delta.begin()));
        break;
      }
      case Principal::Zone::Gamma: {
        auto it = std::lower_bound(s.gamma.begin(), s.gamma.end(), *n->gamma_item);
        p.principal = Principal::gamma(static_cast<std::size_t>(it - s.gamma.begin()));
        break;
      }
      case Principal::Zone::None:
        break;
    }
    std::vector<Ids> kid_x(n->kids.size());
    switch (n->rule) {
      case RuleId::TensorR:
        kid_x[n->kid_slack[0] ? 0 : 1] = x;
        p.witness.split = judgments(ids_union(base_of(n->kids[0]), kid_x[0]));
        break;
      case RuleId::LimpL:
        kid_x[n->kid_slack[1] ? 1 : 0] = x;
        p.witness.split = judgments(ids_union(base_of(n->kids[0]), kid_x[0]));
        break;
      case RuleId::BangR:
        break;
      default:
        for (auto& kx : kid_x) kx = x;
    }
    for (std::size_t i = 0; i < kid_x.size(); ++i) kid_x[i] = ids_union(kid_x[i], n->extra[i]);
    if (n->kids.empty()) return p;
    auto premises = rule_premises(cfg_, p.rule, s, p.principal, p.witness);
    for (std::size_t i = 0; i < n->kids.size(); ++i)
      p.premises.push_back(convert(n->kids[i], premises[i].gamma, premises[i].goal, kid_x[i]));
    return p;
  }

  const KernelConfig& cfg_;
  const ConstraintDomain& d_;
  const SearchBudget& budget_;
  detail::Clock& clock_;
  SearchStats& stats_;
  std::vector<Judgment> table_;
  std::unordered_map<Key, MemoEntry, KeyHash> memo_;
  std::vector<Key> path_;
  bool cutoff_ = false;
  std::size_t min_loop_ = kNoLoop;
  bool probing_ = false;
};

}  // namespace

SearchResult prove(const KernelConfig& cfg, const Sequent& s, const SearchBudget& b, SearchMode mode) {
  if (mode == SearchMode::Naive) return detail::prove_naive(cfg, s, b);
  SearchResult res;
  detail::Clock clock(b.timeout_seconds);
  Focused search(cfg, b, clock, res.stats);
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
  } catch (const detail::Timeout&) {
    res.stats.timed_out = true;
  }
  res.outcome = Outcome::Exhausted;
  return res;
}

bool is_stable(const KernelConfig& cfg, const Sequent& s, Polarity atoms) {
  const Formula& g = s.goal.formula;
  if (right_invertible(cfg, g)) return false;
  (void)atoms;
  return std::none_of(s.delta.begin(), s.delta.end(), [&](const Judgment& j) { return left_invertible(cfg, j.formula); });
}

std::vector<Principal> decide_candidates(const KernelConfig& cfg, const Sequent& s, Polarity atoms) {
  if (!is_stable(cfg, s, atoms)) throw std::logic_error("decide_candidates: sequent is not stable");
  auto neg_atom = [&](const Formula& f) { return f.is_atom() && polarity_of(f, atoms) == Polarity::Negative; };
  std::vector<Principal> out;
  for (std::size_t i = 0; i < s.delta.size(); ++i) {
    if (i > 0 && s.delta[i] == s.delta[i - 1]) continue;
    const Judgment& j = s.delta[i];
    if (has_left_focus(cfg, j.formula) || (neg_atom(j.formula) && j == s.goal)) out.push_back(Principal::delta(i));
  }
  for (std::size_t i = 0; i < s.gamma.size(); ++i) {
    const Formula& f = s.gamma[i].formula;
    if (f.is_atom() ? neg_atom(f) && s.gamma[i] == s.goal
                    : f.kind() != Connective::One && f.kind() != Connective::Top && (cfg.hybrid || !f.is_hybrid()))
      out.push_back(Principal::gamma(i));
  }
  if (polarity_of(s.goal.formula, atoms) == Polarity::Positive) out.push_back(Principal::goal());
  return out;
}

}  // namespace hylls
