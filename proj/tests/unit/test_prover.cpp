#include <doctest.h>

#include "generators.hpp"
#include "hylls/parser.hpp"
#include "hylls/proof_io.hpp"
#include "hylls/prover.hpp"
#include "hylls/resources.hpp"

using namespace hylls;

namespace {

const ConstraintDomain& T = temporal_domain();
const KernelConfig K{};

Judgment J(const std::string& text) {
  SymbolTable table;
  table.world_vars = {"w"};
  return parse_judgment(text, T, table);
}

Sequent S(std::vector<std::string> gamma, std::vector<std::string> delta, const std::string& goal) {
  std::vector<Judgment> g, d;
  for (auto& t : gamma) g.push_back(J(t));
  for (auto& t : delta) d.push_back(J(t));
  return expand_sequent(T, make_sequent(std::move(g), std::move(d), J(goal)));
}

const char* kActivation = "pres(a) -o delay[1] (pres(a) * pres(b)) @ 0";

}  // namespace

TEST_SUITE("focused-prover") {
  TEST_CASE("one needs a single node") {
    auto r = prove(K, S({}, {}, "1 @ iota"), SearchBudget{});
    REQUIRE(r.outcome == Outcome::Proved);
    CHECK(r.proof->size() == 1);
    CHECK(r.proof->rule == RuleId::OneR);
  }

  TEST_CASE("activation rule") {
    Sequent s = S({kActivation}, {"pres(a) @ 0"}, "pres(a) * pres(b) @ 1");
    for (SearchMode m : {SearchMode::Focused, SearchMode::Naive}) {
      auto r = prove(K, s, SearchBudget{}, m);
      REQUIRE(r.outcome == Outcome::Proved);
      CHECK(check_proof(K, *r.proof, s).valid);
    }
    // Wrong time.
    SearchBudget b;
    b.depth = 4;
    CHECK(prove(K, S({kActivation}, {"pres(a) @ 0"}, "pres(a) * pres(b) @ 2"), b).outcome != Outcome::Proved);
  }

  TEST_CASE("zero is refuted at depth 6") {
    SearchBudget b;
    b.depth = 6;
    auto r = prove(K, S({}, {}, "0 @ w"), b);
    CHECK(r.outcome == Outcome::Refuted);
  }

  TEST_CASE("exhausted is reported under a tight budget") {
    // Needs two copies of the rule.
    Sequent s = S({"p -o p * q @ 0"}, {"p @ 0"}, "p * q * q @ 0");
    SearchBudget b;
    b.depth = 1;
    CHECK(prove(K, s, b).outcome == Outcome::Exhausted);
    b.depth = 2;
    CHECK(prove(K, s, b).outcome == Outcome::Proved);
  }

  TEST_CASE("decide candidates") {
    Sequent s = S({kActivation}, {"q @ 0"}, "pres(b) * 1 @ 1");
    auto c = decide_candidates(K, s, Polarity::Negative);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Principal::gamma(0));
    CHECK(c[1] == Principal::goal());

    CHECK_THROWS_AS(decide_candidates(K, S({}, {"p * q @ 0"}, "r @ 0"), Polarity::Negative), std::logic_error);
    CHECK(decide_candidates(K, S({}, {}, "r @ 0"), Polarity::Negative).empty());
  }

  TEST_CASE("rule phases") {
    CHECK(rule_phase(RuleId::Copy) == Phase::Decide);
    CHECK(rule_phase(RuleId::TensorR) == Phase::Focus);
    CHECK(rule_phase(RuleId::LimpL) == Phase::Focus);
    CHECK(rule_phase(RuleId::LimpR) == Phase::Invert);
    CHECK(rule_phase(RuleId::TensorL) == Phase::Invert);
    CHECK(rule_phase(RuleId::AtL) == Phase::Hybrid);
  }

  TEST_CASE("resource splits") {
    Sequent s = S({}, {"p @ w", "q @ w"}, "p * q @ w");
    auto r = prove(K, s, SearchBudget{});
    REQUIRE(r.outcome == Outcome::Proved);
    REQUIRE(r.proof->rule == RuleId::TensorR);
    REQUIRE(r.proof->witness.split);
    CHECK(*r.proof->witness.split == std::vector<Judgment>{J("p @ w")});

    CHECK(prove(K, S({}, {"p @ w", "q @ w"}, "top @ w"), SearchBudget{}).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ w", "q @ w"}, "p @ w"), SearchBudget{}).outcome == Outcome::Refuted);
    auto t = prove(K, S({}, {"p @ w", "q @ w", "r @ w"}, "q * top @ w"), SearchBudget{});
    REQUIRE(t.outcome == Outcome::Proved);
  }

  TEST_CASE("threading primitives") {
    Threaded a{{1, 2}, false}, b{{1, 2}, false};
    ResourceIds xa, xb;
    CHECK(thread_additive(a, b, xa, xb));
    Threaded c{{1}, false};
    CHECK_FALSE(thread_additive(a, c, xa, xb));
    Threaded slack{{1, 2}, true};
    auto m = thread_additive(slack, c, xa, xb);
    REQUIRE(m);
    CHECK(m->leftover == ResourceIds{1});
    CHECK(xa == ResourceIds{2});
    Threaded local{{3, 4}, false};
    ResourceIds absorbed;
    CHECK_FALSE(close_scope({3}, local, absorbed));
    Threaded local_slack{{3, 4}, true};
    CHECK(close_scope({3}, local_slack, absorbed));
    CHECK(local_slack.leftover == ResourceIds{4});
  }

  TEST_CASE("determinism") {
    gen::RandomFormulas g(31);
    for (int i = 0; i < 100; ++i) {
      Formula f = expand_modal(T, g.small(3));
      Sequent s = make_sequent({}, {Judgment{f, WorldExpr::iota()}}, Judgment{f, WorldExpr::iota()});
      auto a = prove(K, s, SearchBudget{});
      auto b = prove(K, s, SearchBudget{});
      REQUIRE(a.outcome == b.outcome);
      if (a.proof) CHECK(proof_to_json(T, *a.proof) == proof_to_json(T, *b.proof));
    }
  }

  TEST_CASE("memo does not change outcomes") {
    auto family = gen::exhaustive_family(2, true);
    SearchBudget on, off;
    on.depth = off.depth = 3;
    off.memo = false;
    std::size_t i = 0;
    for (const auto& lhs : family) {
      const Formula& rhs = family[(i++ * 7) % family.size()];
      Sequent s = expand_sequent(T, make_sequent({}, {Judgment{lhs, WorldExpr::iota()}}, Judgment{rhs, WorldExpr::iota()}));
      auto a = prove(K, s, on);
      auto b = prove(K, s, off);
      CHECK_MESSAGE(a.outcome == b.outcome, print_sequent(T, s));
    }
  }

  TEST_CASE("proved results pass the kernel") {
    gen::RandomFormulas g(41);
    int proved = 0;
    for (int i = 0; i < 300; ++i) {
      Formula a = expand_modal(T, g.small(3)), c = expand_modal(T, g.small(3));
      Sequent s = make_sequent({}, {Judgment{a, g.world()}}, Judgment{c, g.world()});
      SearchBudget b;
      b.depth = 3;
      for (SearchMode m : {SearchMode::Focused, SearchMode::Naive}) {
        auto r = prove(K, s, b, m);
        if (r.outcome != Outcome::Proved) continue;
        ++proved;
        CHECK(check_proof(K, *r.proof, s).valid);
      }
    }
    CHECK(proved > 20);
  }

  TEST_CASE("focusing on the activation rule is one bipole") {
    Sequent s = S({kActivation}, {"pres(a) @ 0"}, "pres(a) * pres(b) @ 1");
    auto r = prove(K, s, SearchBudget{});
    REQUIRE(r.outcome == Outcome::Proved);
    // Follow the rule's focus from the decide step; premises that close
    // by an axiom are side branches.
    std::vector<Phase> phases;
    std::vector<RuleId> rules;
    const ProofNode* n = &*r.proof;
    while (true) {
      Phase p = rule_phase(n->rule);
      if (p != Phase::Hybrid && (phases.empty() || phases.back() != p)) phases.push_back(p);
      rules.push_back(n->rule);
      const ProofNode* next = nullptr;
      for (const auto& k : n->premises)
        if (!is_axiom(k.rule)) next = &k;
      if (!next) break;
      n = next;
    }
    REQUIRE(phases.size() >= 3);
    CHECK(phases[0] == Phase::Decide);
    CHECK(phases[1] == Phase::Focus);
    CHECK(phases[2] == Phase::Invert);
    CHECK(rules[0] == RuleId::Copy);
    CHECK(rules[1] == RuleId::LimpL);
    // Positive focus on the goal follows; no second decide.
    for (std::size_t i = 3; i < phases.size(); ++i) CHECK(phases[i] != Phase::Decide);
  }

  TEST_CASE("hybrid connectives") {
    SearchBudget b;
    CHECK(prove(K, S({}, {"p @ 3"}, "p at 3 @ 0"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ 3"}, "exists world u. p at u @ 0"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"forall world u. p at u @ 0"}, "p @ 7"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ 2"}, "delay[1] p @ 1"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ 2"}, "delay[1] p @ 2"), b).outcome == Outcome::Refuted);
    CHECK(prove(K, S({}, {"box p @ 0"}, "p @ 4"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ 4"}, "dia p @ 1"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p @ 1"}, "dia p @ 4"), b).outcome != Outcome::Proved);
  }

  TEST_CASE("quantifiers over terms") {
    SearchBudget b;
    CHECK(prove(K, S({}, {"forall x. p(x) @ 0"}, "p(c) @ 0"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"p(c) @ 0"}, "exists x. p(x) @ 0"), b).outcome == Outcome::Proved);
    CHECK(prove(K, S({}, {"exists x. p(x) @ 0"}, "p(c) @ 0"), b).outcome != Outcome::Proved);
  }

  TEST_CASE("timeouts are reported") {
    SearchBudget b;
    b.depth = 40;
    b.timeout_seconds = 0.05;
    Sequent s = S({"p -o p * p @ 0", "p * p -o p @ 0"}, {"p @ 0"}, "q @ 0");
    auto r = prove(K, s, b);
    CHECK(r.outcome != Outcome::Proved);
  }
}
