#include "hylls/bio.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hylls/parser.hpp"

namespace hylls {

std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
  if (auto c = a.pred <=> b.pred; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

std::string print_fact(const Fact& f) {
  std::string out = f.pred;
  if (f.args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) out += (i ? "," : "") + print_term(f.args[i]);
  return out + ")";
}

namespace {

const ConstraintDomain& dom() { return temporal_domain(); }
WorldExpr stamp(unsigned t) { return WorldExpr::constant(dom(), WorldConst::natural(t)); }

ParseError error_at(ParseError::Kind k, std::size_t off, const std::string& msg) { return ParseError(k, off, msg); }

class ModelParser {
 public:
  explicit ModelParser(const std::string& text, BioModel m = {}) : text_(text), m_(std::move(m)) {}

  std::vector<Fact> ground_facts() {
    TokenStream ts(tokenize(text_));
    auto out = facts(ts, false);
    if (!ts.at_end()) ts.fail("unexpected token '" + ts.peek().text + "'");
    return out;
  }

  BioModel run() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string::npos) end = text_.size();
      std::string line = text_.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      auto toks = tokenize(line, start);
      if (toks.size() > 1) statement(TokenStream(std::move(toks)));
      start = end + 1;
    }
    return std::move(m_);
  }

 private:
  void statement(TokenStream ts) {
    Token head = ts.peek();
    std::string kw = ts.expect_ident();
    if (kw == "species") {
      do {
        Token name = ts.peek();
        std::string s = ts.expect_ident();
        if (ts.accept("/")) {
          Token n = ts.next();
          if (n.kind != Token::Kind::Number) ts.fail("expected an arity");
          declare_pred(s, static_cast<unsigned>(std::stoul(n.text)), name.offset);
        } else {
          m_.species.insert(s);
        }
        ts.accept(",");
      } while (!ts.at_end());
    } else if (kw == "const") {
      std::string name = ts.expect_ident();
      ts.expect("=");
      Token n = ts.next();
      if (n.kind != Token::Kind::Number) ts.fail("expected a number");
      m_.constants[name] = static_cast<unsigned>(std::stoul(n.text));
    } else if (kw == "var") {
      do {
        m_.vars.insert(ts.expect_ident());
        ts.accept(",");
      } while (!ts.at_end());
    } else if (kw == "rule") {
      rule(ts);
    } else if (kw == "init") {
      for (auto& f : facts(ts, false)) m_.initial.push_back(std::move(f));
    } else if (kw == "frames") {
      std::string v = ts.expect_ident();
      if (v != "on" && v != "off") ts.fail("expected on or off");
      m_.frames = v == "on";
    } else {
      throw error_at(ParseError::Kind::Syntax, head.offset, "unknown statement '" + kw + "'");
    }
    if (!ts.at_end()) ts.fail("unexpected token '" + ts.peek().text + "'");
  }

  void declare_pred(const std::string& p, unsigned arity, std::size_t off) {
    if (p == "pres" && arity != 1) throw error_at(ParseError::Kind::ArityMismatch, off, "pres takes one argument");
    m_.predicates[p] = arity;
  }

  void rule(TokenStream& ts) {
    BioRule r;
    r.name = ts.expect_ident();
    ts.expect(":");
    std::size_t left_at = ts.peek().offset;
    r.left = facts(ts, true);
    if (r.left.empty()) throw error_at(ParseError::Kind::Syntax, left_at, "a rule needs a premise");
    bool inhibit = false;
    if (ts.accept("-|")) {
      inhibit = true;
    } else {
      ts.expect("=>");
    }
    std::size_t right_at = ts.peek().offset;
    auto right = facts(ts, true);
    if (ts.accept("delay")) {
      Token d = ts.next();
      if (d.kind == Token::Kind::Number) {
        r.delay = static_cast<unsigned>(std::stoul(d.text));
      } else if (d.kind == Token::Kind::Ident && m_.constants.count(d.text)) {
        r.delay = m_.constants.at(d.text);
      } else {
        throw error_at(ParseError::Kind::Undeclared, d.offset, "unknown delay '" + d.text + "'");
      }
      if (r.delay == 0) throw error_at(ParseError::Kind::Syntax, d.offset, "delays must be positive");
    }
    if (inhibit) {
      if (right.empty()) throw error_at(ParseError::Kind::Syntax, right_at, "an inhibition needs a target");
      r.kind = BioRule::Kind::Inhibition;
      r.inhibited = std::move(right);
    } else {
      r.right = std::move(right);
      r.kind = classify(r);
    }
    std::vector<std::string> bound;
    auto collect = [&](const std::vector<Fact>& fs, std::vector<std::string>& out) {
      for (const auto& f : fs)
        for (const auto& a : f.args) a.collect_free(out);
    };
    collect(r.left, bound);
    collect(r.inhibited, bound);
    std::vector<std::string> rhs;
    collect(r.right, rhs);
    for (const auto& v : rhs)
      if (std::find(bound.begin(), bound.end(), v) == bound.end())
        throw error_at(ParseError::Kind::Syntax, right_at,
                       "variable '" + v + "' of rule " + r.name + " does not occur on the left");
    std::sort(bound.begin(), bound.end());
    bound.erase(std::unique(bound.begin(), bound.end()), bound.end());
    r.vars = std::move(bound);
    m_.rules.push_back(std::move(r));
  }

  static BioRule::Kind classify(const BioRule& r) {
    auto pres = [](const Fact& f) { return f.pred == "pres" && f.args.size() == 1; };
    if (r.left.size() == 1 && r.right.size() == 2 && pres(r.left[0]) && pres(r.right[0]) && pres(r.right[1]) &&
        (r.right[0] == r.left[0] || r.right[1] == r.left[0]))
      return BioRule::Kind::Activation;
    return BioRule::Kind::Custom;
  }

  std::vector<Fact> facts(TokenStream& ts, bool allow_vars) {
    std::vector<Fact> out;
    if (ts.peek().kind == Token::Kind::Number && ts.peek().text == "1") {
      ts.next();
      return out;
    }
    do out.push_back(fact(ts, allow_vars));
    while (ts.accept(","));
    return out;
  }

  Fact fact(TokenStream& ts, bool allow_vars) {
    Token at = ts.peek();
    SymbolTable table;
    table.term_vars = m_.vars;
    Term t = parse_term(ts, table, {});
    Fact f;
    if (t.kind() == Term::Kind::Constant && m_.species.count(t.name())) {
      f.pred = "pres";
      f.args = {t};
    } else if (t.kind() == Term::Kind::App || t.kind() == Term::Kind::Constant) {
      f.pred = t.name();
      f.args = t.kind() == Term::Kind::App ? t.args() : std::vector<Term>{};
    } else {
      throw error_at(ParseError::Kind::Syntax, at.offset, "expected a fact");
    }
    if (f.pred == "pres") {
      if (f.args.size() != 1) throw error_at(ParseError::Kind::ArityMismatch, at.offset, "pres takes one argument");
      const Term& s = f.args[0];
      if (s.kind() == Term::Kind::Constant && !m_.species.count(s.name()))
        throw error_at(ParseError::Kind::Undeclared, at.offset, "undeclared species '" + s.name() + "'");
    } else {
      auto it = m_.predicates.find(f.pred);
      if (it == m_.predicates.end())
        throw error_at(ParseError::Kind::Undeclared, at.offset, "undeclared predicate '" + f.pred + "'");
      if (it->second != f.args.size())
        throw error_at(ParseError::Kind::ArityMismatch, at.offset,
                       f.pred + " takes " + std::to_string(it->second) + " arguments");
    }
    if (!allow_vars)
      for (const auto& a : f.args)
        if (!a.is_ground()) throw error_at(ParseError::Kind::Syntax, at.offset, "initial facts must be ground");
    return f;
  }

  const std::string& text_;
  BioModel m_;
};

using Subst = std::map<std::string, Term>;

bool match(const Term& pat, const Term& g, Subst& s) {
  switch (pat.kind()) {
    case Term::Kind::Free: {
      auto [it, fresh] = s.emplace(pat.name(), g);
      return fresh || it->second == g;
    }
    case Term::Kind::App:
      if (g.kind() != Term::Kind::App || g.name() != pat.name() || g.args().size() != pat.args().size()) return false;
      for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!match(pat.args()[i], g.args()[i], s)) return false;
      return true;
    default:
      return pat == g;
  }
}

Fact subst_fact(const Fact& f, const Subst& s) {
  Fact out{f.pred, {}};
  for (Term a : f.args) {
    for (const auto& [v, t] : s) a = a.subst_free(v, t);
    out.args.push_back(a);
  }
  return out;
}

BioRule instantiate(const BioRule& r, const Subst& s) {
  BioRule g = r;
  g.vars.clear();
  for (auto* side : {&g.left, &g.right, &g.inhibited})
    for (auto& f : *side) f = subst_fact(f, s);
  return g;
}

// Every substitution matching the rule's premises against `known`.
void instances(const BioRule& r, const std::set<Fact>& known, const std::function<void(const BioRule&)>& out) {
  std::vector<const Fact*> pats;
  for (const auto& f : r.left) pats.push_back(&f);
  for (const auto& f : r.inhibited) pats.push_back(&f);
  std::function<void(std::size_t, Subst&)> go = [&](std::size_t i, Subst& s) {
    if (i == pats.size()) {
      out(instantiate(r, s));
      return;
    }
    for (const auto& k : known) {
      if (k.pred != pats[i]->pred || k.args.size() != pats[i]->args.size()) continue;
      Subst next = s;
      bool ok = true;
      for (std::size_t j = 0; ok && j < k.args.size(); ++j) ok = match(pats[i]->args[j], k.args[j], next);
      if (ok) go(i + 1, next);
    }
  };
  Subst s;
  go(0, s);
}

constexpr std::size_t kUniverseLimit = 20000;

struct Grounding {
  std::vector<BioRule> rules;
  std::map<Fact, unsigned> earliest;  // first stamp at which a fact can be present
};

Grounding ground(const BioModel& m) {
  std::set<Fact> known(m.initial.begin(), m.initial.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& r : m.rules)
      instances(r, known, [&](const BioRule& g) {
        for (const auto& f : g.right) grew |= known.insert(f).second;
      });
    if (known.size() > kUniverseLimit) throw std::runtime_error("the fact universe of the model is too large");
  }
  Grounding out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : m.rules)
    instances(r, known, [&](const BioRule& g) {
      std::string key;
      for (const auto* side : {&g.left, &g.right, &g.inhibited}) {
        for (const auto& f : *side) key += print_fact(f) + ",";
        key += ";";
      }
      if (seen.insert({g.name, key}).second) out.rules.push_back(g);
    });
  for (const auto& f : m.initial) out.earliest[f] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : out.rules) {
      unsigned start = 0;
      bool ready = true;
      for (const auto* side : {&r.left, &r.inhibited})
        for (const auto& f : *side) {
          auto it = out.earliest.find(f);
          if (it == out.earliest.end()) {
            ready = false;
          } else {
            start = std::max(start, it->second);
          }
        }
      if (!ready) continue;
      for (const auto& f : r.right) {
        auto [it, fresh] = out.earliest.emplace(f, start + r.delay);
        if (fresh || it->second > start + r.delay) {
          it->second = start + r.delay;
          changed = true;
        }
      }
    }
  }
  return out;
}

unsigned rule_start(const BioRule& r, const Grounding& g) {
  unsigned start = 0;
  for (const auto* side : {&r.left, &r.inhibited})
    for (const auto& f : *side) start = std::max(start, g.earliest.at(f));
  return start;
}

Formula tensor_all(const std::vector<Fact>& fs) {
  if (fs.empty()) return Formula::one();
  Formula out = fs.back().formula();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = Formula::tensor(fs[i].formula(), out);
  return out;
}

std::vector<Fact> query_facts(const BioModel& m, const Query& q) {
  return q.kind == Query::Kind::StableState ? m.initial : q.facts;
}

// Instances (stamp, formula) of the theory; each formula is meant at its stamp.
template <typename Emit>
void theory_instances(const BioModel& m, unsigned horizon, const Emit& emit) {
  Grounding g = ground(m);
  for (const auto& r : g.rules) {
    for (unsigned t = rule_start(r, g); t + r.delay <= horizon; ++t) emit(r, t);
  }
  if (!m.frames) return;
  for (const auto& [f, e] : g.earliest) {
    BioRule frame{"frame", BioRule::Kind::Custom, {f}, {f}, {}, 1, {}};
    for (unsigned t = e; t < horizon; ++t) emit(frame, t);
  }
}

}  // namespace

Formula rule_formula(const BioRule& r) {
  if (r.kind == BioRule::Kind::Inhibition) {
    std::vector<Fact> both = r.left;
    both.insert(both.end(), r.inhibited.begin(), r.inhibited.end());
    return Formula::limp(tensor_all(both), Formula::delay(stamp(r.delay), tensor_all(r.left)));
  }
  return Formula::limp(tensor_all(r.left), Formula::delay(stamp(r.delay), tensor_all(r.right)));
}

BioModel parse_model(const std::string& text) { return ModelParser(text).run(); }

std::vector<Fact> parse_facts(const BioModel& m, const std::string& text) {
  return ModelParser(text, m).ground_facts();
}

std::vector<Fact> fact_universe(const BioModel& m) {
  std::vector<Fact> out;
  for (const auto& [f, e] : ground(m).earliest) out.push_back(f);
  return out;
}

std::vector<BioRule> ground_rules(const BioModel& m) { return ground(m).rules; }

HyllTheory compile_model(const BioModel& m) {
  HyllTheory th;
  for (const auto& r : m.rules) th.gamma.push_back({rule_formula(r), WorldExpr::var("t")});
  for (const auto& f : m.initial) th.delta.push_back({f.formula(), stamp(0)});
  return th;
}

HyllTheory compile_model(const BioModel& m, unsigned horizon) {
  HyllTheory th;
  theory_instances(m, horizon, [&](const BioRule& r, unsigned t) { th.gamma.push_back({rule_formula(r), stamp(t)}); });
  for (const auto& f : m.initial) th.delta.push_back({f.formula(), stamp(0)});
  return th;
}

Judgment compile_query(const BioModel& m, const Query& q, unsigned horizon) {
  if (q.time > horizon)
    throw std::invalid_argument("query time " + std::to_string(q.time) + " exceeds the horizon " +
                                std::to_string(horizon));
  Formula body = Formula::tensor(tensor_all(query_facts(m, q)), Formula::top());
  if (q.kind == Query::Kind::ReachAt) return {body, stamp(q.time)};
  if (q.time == 0) return {body, stamp(0)};
  bool within = q.kind == Query::Kind::ReachWithin;
  Formula out = Formula::at(body, stamp(q.time));
  for (unsigned t = q.time; t-- > 0;) {
    Formula here = Formula::at(body, stamp(t));
    out = within ? Formula::plus(here, out) : Formula::with(here, out);
  }
  return {out, stamp(0)};
}

Sequent query_sequent(const BioModel& m, const Query& q) {
  HyllTheory th = compile_model(m, q.horizon());
  Sequent s = make_sequent(th.gamma, th.delta, compile_query(m, q, q.horizon()));
  return expand_sequent(dom(), s);
}

std::string_view verdict_name(BioVerdict v) {
  switch (v) {
    case BioVerdict::Holds:
      return "holds";
    case BioVerdict::Fails:
      return "fails";
    default:
      return "unknown";
  }
}

namespace {
BioVerdict verdict_of(Outcome o) {
  if (o == Outcome::Proved) return BioVerdict::Holds;
  if (o == Outcome::Refuted) return BioVerdict::Fails;
  return BioVerdict::Unknown;
}
}  // namespace

BioAnswer answer(const BioModel& m, const Query& q, const SearchBudget& b) {
  BioAnswer out;
  out.sequent = query_sequent(m, q);
  SearchBudget bb = b;
  bb.atoms = Polarity::Positive;
  bb.deepen = false;
  KernelConfig cfg;
  auto r = prove(cfg, out.sequent, bb);
  out.verdict = verdict_of(r.outcome);
  out.proof = std::move(r.proof);
  out.stats = r.stats;
  return out;
}

// ---- SELL ----------------------------------------------------------------

SubexpSignature stamp_signature(unsigned horizon) {
  RawSignature raw;
  for (unsigned t = 0; t <= horizon; ++t) {
    raw.labels.push_back(std::to_string(t));
    raw.edges.push_back({std::to_string(t), kInfinity});
  }
  raw.labels.push_back(kInfinity);
  raw.labels.push_back(kCopyLabel);
  raw.edges.push_back({kCopyLabel, kInfinity});
  raw.unbounded = {kInfinity, kCopyLabel};
  return validate_signature(raw);
}

namespace {

SellFormula sell_fact(const Fact& f) { return SellFormula::atom(f.pred, f.args); }

SellFormula sell_tensor(std::vector<SellFormula> fs) {
  if (fs.empty()) return SellFormula::one();
  SellFormula out = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) out = SellFormula::tensor(fs[i], out);
  return out;
}

// The rule instance at stamp t, two-sided: (premise, conclusion).
std::pair<SellFormula, SellFormula> sell_rule(const BioRule& r, unsigned t, SellStyle style) {
  SellFormula prem = lower_hyll(dom(), tensor_all(r.left), stamp(t));
  std::string later = std::to_string(t + r.delay);
  std::vector<SellFormula> parts;
  if (style == SellStyle::Paper && r.kind != BioRule::Kind::Inhibition) {
    for (const auto& f : r.right) parts.push_back(sell_fact(f));
    return {prem, SellFormula::bang(later, sell_tensor(parts))};
  }
  if (r.kind != BioRule::Kind::Inhibition)
    return {prem, lower_hyll(dom(), Formula::delay(stamp(r.delay), tensor_all(r.right)), stamp(t))};
  if (style == SellStyle::Paper) {
    for (const auto& f : r.left) parts.push_back(sell_fact(f));
    for (const auto& f : r.inhibited) parts.push_back(dual(sell_fact(f)));
    return {prem, SellFormula::bang(later, sell_tensor(parts))};
  }
  for (const auto& f : r.left) parts.push_back(SellFormula::bang(later, sell_fact(f)));
  for (const auto& f : r.inhibited) parts.push_back(SellFormula::bang(later, dual(sell_fact(f))));
  return {prem, sell_tensor(parts)};
}

}  // namespace

SellTheory compile_model_sell(const BioModel& m, unsigned horizon, SellStyle style) {
  SellTheory th;
  th.sig = stamp_signature(horizon);
  theory_instances(m, horizon, [&](const BioRule& r, unsigned t) {
    auto [prem, concl] = sell_rule(r, t, style);
    // Stored as the negation of prem -o concl.
    th.rules.push_back(SellFormula::tensor(prem, dual(concl)));
  });
  for (const auto& f : m.initial)
    th.facts.push_back(encode_hyll_judgment(th.sig, dom(), {f.formula(), stamp(0)}, false));
  return th;
}

SellSequent sell_query_sequent(const BioModel& m, const Query& q, const SellTheory& t, unsigned horizon) {
  Judgment goal = compile_query(m, q, horizon);
  std::vector<SellFormula> work = t.facts;
  for (const auto& r : t.rules) work.push_back(SellFormula::quest(kCopyLabel, r));
  work.push_back(lower_hyll(dom(), goal.formula, goal.world));
  return make_sell_sequent(t.sig, {}, std::move(work));
}

SellBioAnswer answer_sell(const BioModel& m, const Query& q, const SearchBudget& b, SellStyle style) {
  SellTheory th = compile_model_sell(m, q.horizon(), style);
  SellBioAnswer out;
  out.sig = th.sig;
  out.sequent = sell_query_sequent(m, q, th, q.horizon());
  SearchBudget bb = b;
  bb.deepen = false;
  auto r = prove_sell(th.sig, out.sequent, bb);
  out.verdict = verdict_of(r.outcome);
  out.proof = std::move(r.proof);
  out.stats = r.stats;
  return out;
}

}  // namespace hylls
