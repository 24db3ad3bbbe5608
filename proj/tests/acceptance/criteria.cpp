#include "criteria.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "bio_suite.hpp"
#include "generators.hpp"
#include "hylls/bio.hpp"
#include "hylls/parser.hpp"
#include "hylls/prover.hpp"
#include "hylls/sell.hpp"
#include "rewrite_oracle.hpp"

namespace hylls::acceptance {

namespace {

const ConstraintDomain& T = temporal_domain();

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

WorldExpr stamp(unsigned t) { return WorldExpr::constant(T, WorldConst::natural(t)); }

Sequent entails(std::vector<Judgment> delta, Judgment goal) {
  return expand_sequent(T, make_sequent({}, std::move(delta), std::move(goal)));
}

bool proved(const SearchResult& r) { return r.outcome == Outcome::Proved; }

// Sequents of the exhaustive family: |- F for every member, and A |- B
// whenever A and B have at most three connectives together.
std::vector<Sequent> family_sequents(bool hybrid) {
  std::vector<Sequent> out;
  for (const auto& f : gen::exhaustive_family(3, hybrid)) out.push_back(entails({}, {f, WorldExpr::iota()}));
  std::vector<std::vector<Formula>> by_ops;
  for (unsigned n = 0; n <= 3; ++n) by_ops.push_back(gen::exhaustive_exact(n, hybrid));
  for (unsigned i = 0; i <= 3; ++i)
    for (unsigned j = 0; i + j <= 3; ++j)
      for (const auto& a : by_ops[i])
        for (const auto& b : by_ops[j]) out.push_back(entails({{a, WorldExpr::iota()}}, {b, WorldExpr::iota()}));
  return out;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

CriterionResult identity() {
  CriterionResult r{1, "identity admissibility"};
  gen::RandomFormulas g(2024);
  KernelConfig k;
  SearchBudget b;
  b.timeout_seconds = 30;
  int ok = 0, invalid = 0;
  double worst = 0;
  std::string first_bad;
  for (int i = 0; i < 200; ++i) {
    Formula a = expand_modal(T, g.formula(4));
    Judgment j{a, g.world()};
    Sequent s = make_sequent({}, {j}, j);
    auto t0 = Clock::now();
    auto res = prove(k, s, b);
    worst = std::max(worst, since(t0));
    if (!proved(res)) {
      if (first_bad.empty()) first_bad = print_judgment(T, j);
      continue;
    }
    if (check_proof(k, *res.proof, s).valid)
      ++ok;
    else
      ++invalid;
  }
  r.pass = ok == 200;
  r.detail = fmt("%d/200 kernel-valid, %d invalid, slowest %.3f s", ok, invalid, worst);
  if (!first_bad.empty()) r.detail += "; first failure " + first_bad;
  return r;
}

CriterionResult consistency() {
  CriterionResult r{2, "consistency"};
  SearchBudget b;
  b.depth = 6;
  auto t0 = Clock::now();
  auto res = prove(KernelConfig{}, entails({}, {Formula::zero(), WorldExpr::var("w")}), b);
  double dt = since(t0);
  r.pass = res.outcome == Outcome::Refuted && !res.stats.timed_out && dt < 5;
  r.detail = fmt(". ; . |- 0 @ w at depth 6: %s, %llu nodes", std::string(outcome_name(res.outcome)).c_str(),
                 static_cast<unsigned long long>(res.stats.nodes));
  return r;
}

CriterionResult soundness() {
  CriterionResult r{3, "soundness fuzz"};
  gen::RandomFormulas g(77);
  KernelConfig k;
  SearchBudget b;
  b.depth = 3;
  b.timeout_seconds = 2;
  int proofs = 0, invalid = 0, sequents = 0;
  for (int i = 0; i < 600; ++i) {
    std::vector<Judgment> gamma, delta;
    if (g.rng()() % 3 == 0) gamma.push_back({g.small(2), g.world()});
    for (unsigned n = g.rng()() % 3; n > 0; --n) delta.push_back({g.small(2), g.world()});
    Judgment goal{g.formula(3), g.world()};
    Sequent s = expand_sequent(T, make_sequent(std::move(gamma), std::move(delta), std::move(goal)));
    ++sequents;
    for (SearchMode m : {SearchMode::Focused, SearchMode::Naive}) {
      auto res = prove(k, s, b, m);
      if (!proved(res)) continue;
      ++proofs;
      if (!check_proof(k, *res.proof, s).valid) ++invalid;
    }
  }
  r.pass = invalid == 0 && sequents >= 500 && proofs > 0;
  r.detail = fmt("%d sequents, %d proofs from both searches, %d rejected by the kernel", sequents, proofs, invalid);
  return r;
}

CriterionResult conservativity() {
  CriterionResult r{4, "conservativity"};
  KernelConfig hyll, ill;
  ill.hybrid = false;
  SearchBudget b;
  b.depth = 6;
  b.timeout_seconds = 5;
  int total = 0, same_outcome = 0, same_proved = 0;
  for (const auto& s : family_sequents(false)) {
    ++total;
    auto x = prove(hyll, s, b), y = prove(ill, s, b);
    same_outcome += x.outcome == y.outcome;
    same_proved += proved(x) == proved(y);
  }
  r.pass = same_outcome == total;
  r.detail = fmt("%d hybrid-free sequents, %d identical verdicts, %d agree on provability", total, same_outcome,
                 same_proved);
  return r;
}

CriterionResult focusing() {
  CriterionResult r{5, "focusing completeness"};
  KernelConfig k;
  SearchBudget b;
  b.depth = 6;
  b.timeout_seconds = 5;
  int total = 0, agree = 0, invalid = 0;
  std::map<std::pair<Outcome, Outcome>, int> table;
  for (const auto& s : family_sequents(true)) {
    ++total;
    auto f = prove(k, s, b, SearchMode::Focused), n = prove(k, s, b, SearchMode::Naive);
    ++table[{f.outcome, n.outcome}];
    agree += proved(f) == proved(n);
    for (auto* res : {&f, &n})
      if (res->proof && !check_proof(k, *res->proof, s).valid) ++invalid;
  }
  r.pass = agree == total && invalid == 0;
  r.detail = fmt("%d sequents, %d agree on provability, %d invalid proofs", total, agree, invalid);
  for (const auto& [key, count] : table)
    if (key.first != key.second)
      r.detail += fmt("; focused %s / naive %s: %d", std::string(outcome_name(key.first)).c_str(),
                      std::string(outcome_name(key.second)).c_str(), count);
  return r;
}

CriterionResult cut() {
  CriterionResult r{6, "cut admissibility sample"};
  gen::RandomFormulas g(606);
  KernelConfig k;
  const unsigned B = 4;
  SearchBudget small, large;
  small.depth = B;
  large.depth = 2 * B;
  small.timeout_seconds = large.timeout_seconds = 5;
  int pairs = 0, ok = 0, tries = 0;
  std::string first_bad;
  while (pairs < 50 && tries < 20000) {
    ++tries;
    WorldExpr w = g.world();
    Formula a = g.small(2), rnd = g.small(2);
    // Left premise Delta |- A.
    std::vector<Judgment> delta;
    switch (g.rng()() % 4) {
      case 0:
        delta = {{Formula::with(a, rnd), w}};
        break;
      case 1:
        delta = {{rnd, w}, {Formula::limp(rnd, a), w}};
        break;
      case 2:
        delta = {{g.small(2), w}};
        break;
      default:
        delta = {{Formula::tensor(a, Formula::one()), w}};
        break;
    }
    // Right premise Delta', A |- C.
    std::vector<Judgment> delta2;
    Formula c = g.small(2);
    switch (g.rng()() % 4) {
      case 0:
        delta2 = {{Formula::limp(a, c), w}};
        break;
      case 1:
        c = Formula::plus(rnd, a);
        break;
      case 2:
        delta2 = {{c, w}};
        c = Formula::tensor(c, a);
        break;
      default:
        delta2 = {{g.small(2), w}};
        break;
    }
    Sequent left = entails(delta, {a, w});
    auto with_a = delta2;
    with_a.push_back({a, w});
    Sequent right = entails(with_a, {c, w});
    if (!proved(prove(k, left, small)) || !proved(prove(k, right, small))) continue;
    ++pairs;
    auto both = delta;
    both.insert(both.end(), delta2.begin(), delta2.end());
    Sequent concl = entails(both, {c, w});
    auto res = prove(k, concl, large);
    if (proved(res) && check_proof(k, *res.proof, concl).valid)
      ++ok;
    else if (first_bad.empty())
      first_bad = print_sequent(T, concl);
  }
  r.pass = pairs == 50 && ok == 50;
  r.detail = fmt("%d premise pairs provable at depth %u (from %d samples), %d conclusions proved at depth %u", pairs, B,
                 tries, ok, 2 * B);
  if (!first_bad.empty()) r.detail += "; first failure " + first_bad;
  return r;
}

CriterionResult modal_laws() {
  CriterionResult r{7, "modal laws"};
  gen::RandomFormulas g(707);
  KernelConfig k;
  SearchBudget b;
  b.depth = 4;
  b.timeout_seconds = 10;
  auto equiv = [&](const Formula& x, const Formula& y) {
    return proved(prove(k, entails({{x, WorldExpr::iota()}}, {y, WorldExpr::iota()}), b)) &&
           proved(prove(k, entails({{y, WorldExpr::iota()}}, {x, WorldExpr::iota()}), b));
  };
  int delays = 0;
  for (int i = 0; i < 20; ++i) {
    Formula a = g.small(2);
    delays += equiv(Formula::delay(stamp(2), Formula::delay(stamp(3), a)), Formula::delay(stamp(5), a));
  }
  int mobility = 0, checked = 0;
  for (int i = 0; i < 5; ++i) {
    Formula a = g.small(1), c = g.small(1);
    WorldExpr w = g.world();
    using Make = Formula (*)(Formula, Formula);
    for (Make mk : {static_cast<Make>(&Formula::tensor), static_cast<Make>(&Formula::limp),
                    static_cast<Make>(&Formula::with)}) {
      ++checked;
      mobility += equiv(Formula::at(mk(a, c), w), mk(Formula::at(a, w), Formula::at(c, w)));
    }
  }
  r.pass = delays == 20 && mobility == checked;
  r.detail = fmt("delay[2] delay[3] A vs delay[5] A: %d/20; at over *, -o, &: %d/%d", delays, mobility, checked);
  return r;
}

SearchBudget bio_budget() {
  SearchBudget b;
  b.depth = 40;
  b.timeout_seconds = 30;
  return b;
}

CriterionResult bio_oracle() {
  CriterionResult r{8, "biology oracle agreement"};
  int total = 0, agree = 0, unknown = 0, invalid = 0;
  std::string first_bad;
  auto t0 = Clock::now();
  for (const auto& sm : suite::bio_models()) {
    BioModel m = parse_model(sm.text);
    for (const auto& q : suite::standard_queries(m, sm.horizon)) {
      ++total;
      BioAnswer a = answer(m, q, bio_budget());
      bool expected = oracle::holds(m, q);
      unknown += a.verdict == BioVerdict::Unknown;
      if (a.verdict == (expected ? BioVerdict::Holds : BioVerdict::Fails))
        ++agree;
      else if (first_bad.empty())
        first_bad = sm.name + ": " + suite::describe(q);
      if (a.proof && !check_proof(KernelConfig{}, *a.proof, a.sequent).valid) ++invalid;
    }
  }
  double dt = since(t0);

  // The two named cases.
  BioModel chain = parse_model(suite::bio_models()[0].text);
  Fact c{"pres", {Term::constant("c")}};
  bool chain_ok = answer(chain, {Query::Kind::ReachAt, {c}, 2}, bio_budget()).verdict == BioVerdict::Holds &&
                  answer(chain, {Query::Kind::ReachAt, {c}, 1}, bio_budget()).verdict == BioVerdict::Fails;
  BioModel ctc = parse_model(suite::bio_models()[1].text);
  unsigned d = ctc.constants.at("d");
  auto blood = parse_facts(ctc, "C(c1, blood, 1, [EPCAM])");
  bool ctc_ok = answer(ctc, {Query::Kind::ReachAt, blood, d}, bio_budget()).verdict == BioVerdict::Holds &&
                answer(ctc, {Query::Kind::ReachAt, blood, d - 1}, bio_budget()).verdict == BioVerdict::Fails;

  r.pass = agree == total && invalid == 0 && chain_ok && ctc_ok && dt < 120 && suite::bio_models().size() >= 10;
  r.detail = fmt("%zu models, %d/%d queries match the oracle (%d unknown, %d invalid proofs) in %.2f s; chain %s; "
                 "CTC at d=%u %s",
                 suite::bio_models().size(), agree, total, unknown, invalid, dt, chain_ok ? "ok" : "WRONG", d,
                 ctc_ok ? "ok" : "WRONG");
  if (!first_bad.empty()) r.detail += "; first mismatch " + first_bad;
  return r;
}

const SubexpSignature& confinement_signature() {
  static const SubexpSignature s =
      validate_signature(parse_signature("labels w v inf\nedge w inf\nedge v inf\nunbounded inf\n"));
  return s;
}

CriterionResult confinement() {
  CriterionResult r{9, "SELL confinement"};
  r.pass = true;
  for (const char* text : {"!w ?w 0 |- 0", "!w ?w 0 |- !v ?v 0"}) {
    SellSequent s = parse_sell_sequent(confinement_signature(), text);
    auto t0 = Clock::now();
    auto res = prove_sell(confinement_signature(), s, SearchBudget{});
    double dt = since(t0);
    bool ok = res.outcome == Outcome::Refuted && dt < 10;
    r.pass = r.pass && ok;
    r.detail += fmt("%s%s: %s in %.3f s", r.detail.empty() ? "" : "; ", text,
                    std::string(outcome_name(res.outcome)).c_str(), dt);
  }
  return r;
}

CriterionResult promotion() {
  CriterionResult r{10, "promotion side condition"};
  SubexpSignature sig = validate_signature(parse_signature("labels a b c\nedge a b\n"));
  std::string named;
  bool rejected = false;
  try {
    promote(sig, parse_sell_sequent(sig, "theta c: p\n|- !a q"));
  } catch (const SellError& e) {
    rejected = e.kind() == SellError::Kind::SideCondition;
    named = e.label();
  }
  // The same promotion inside a proof object.
  SellSequent s = parse_sell_sequent(sig, "theta c: ~p\n|- !a p");
  SellProof bad{SellRule::Promote, SellPrincipal::work(0), {}, {}};
  SellVerdict v = check_sell_proof(sig, bad, s);
  bool kernel_names = !v.valid && v.reason.find("context label c") != std::string::npos;

  bool dual_ok = false;
  try {
    SellSequent p = promote(sig, parse_sell_sequent(sig, "theta b: p\n|- !a q"));
    dual_ok = p.work.size() == 1;
  } catch (const SellError&) {
  }
  auto good = prove_sell(sig, parse_sell_sequent(sig, "!b p |- !a ?b p"), SearchBudget{});
  auto blocked = prove_sell(sig, parse_sell_sequent(sig, "!c p |- !a ?c p"), SearchBudget{});
  r.pass = rejected && named == "c" && kernel_names && dual_ok && good.outcome == Outcome::Proved &&
           blocked.outcome == Outcome::Refuted;
  r.detail = fmt("a not below c rejected naming '%s' (kernel: %s); a <= b promotes; search: !b p |- !a ?b p %s, "
                 "!c p |- !a ?c p %s",
                 named.c_str(), kernel_names ? "named" : "NOT named", std::string(outcome_name(good.outcome)).c_str(),
                 std::string(outcome_name(blocked.outcome)).c_str());
  return r;
}

CriterionResult encoding() {
  CriterionResult r{11, "encoding preservation"};
  int total = 0, agree = 0, invalid = 0;
  std::string first_bad;
  for (const auto& sm : suite::bio_models()) {
    BioModel m = parse_model(sm.text);
    for (const auto& q : suite::standard_queries(m, sm.horizon)) {
      ++total;
      BioAnswer h = answer(m, q, bio_budget());
      SellBioAnswer s = answer_sell(m, q, bio_budget());
      if (h.verdict == s.verdict && h.verdict != BioVerdict::Unknown)
        ++agree;
      else if (first_bad.empty())
        first_bad = sm.name + ": " + suite::describe(q) + " (HyLL " + std::string(verdict_name(h.verdict)) +
                    ", SELL " + std::string(verdict_name(s.verdict)) + ")";
      if (s.proof && !check_sell_proof(s.sig, *s.proof, s.sequent).valid) ++invalid;
    }
  }
  r.pass = agree == total && invalid == 0;
  r.detail = fmt("%d/%d queries with equal HyLL and SELL verdicts, %d invalid SELL proofs", agree, total, invalid);
  if (!first_bad.empty()) r.detail += "; first mismatch " + first_bad;
  return r;
}

const std::map<int, std::function<CriterionResult()>>& table() {
  static const std::map<int, std::function<CriterionResult()>> t = {
      {1, identity},    {2, consistency},  {3, soundness},  {4, conservativity}, {5, focusing},  {6, cut},
      {7, modal_laws},  {8, bio_oracle},   {9, confinement}, {10, promotion},    {11, encoding},
  };
  return t;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> out;
  for (const auto& [id, f] : table()) out.push_back(id);
  return out;
}

CriterionResult run_criterion(int id) {
  auto it = table().find(id);
  if (it == table().end()) throw std::invalid_argument("no criterion " + std::to_string(id));
  auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = it->second();
  } catch (const std::exception& e) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = since(t0);
  return r;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail;
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  out << buf;
  return out.str();
}

}  // namespace hylls::acceptance
