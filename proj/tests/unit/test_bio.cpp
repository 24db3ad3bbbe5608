#include <doctest.h>

#include "bio_suite.hpp"
#include "hylls/bio.hpp"
#include "rewrite_oracle.hpp"

using namespace hylls;

namespace {

const ConstraintDomain& T = temporal_domain();

const char* kChain =
    "species a b c\n"
    "rule act_ab: pres(a) => pres(a), pres(b) delay 1\n"
    "rule act_bc: pres(b) => pres(b), pres(c) delay 1\n"
    "init pres(a)\n";

Fact pres(const char* s) { return Fact{"pres", {Term::constant(s)}}; }

ParseError::Kind parse_error_kind(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ParseError::Kind::Syntax;
}

SearchBudget bio_budget() {
  SearchBudget b;
  b.depth = 40;
  return b;
}

}  // namespace

TEST_SUITE("bio-frontend") {
  TEST_CASE("activation rule") {
    BioModel m = parse_model("species a b\nrule act_ab: pres(a) => pres(a), pres(b) delay 1\n");
    REQUIRE(m.rules.size() == 1);
    const BioRule& r = m.rules[0];
    CHECK(r.kind == BioRule::Kind::Activation);
    CHECK(r.name == "act_ab");
    CHECK(r.delay == 1);
    CHECK(r.left == std::vector<Fact>{pres("a")});
    CHECK(r.right == std::vector<Fact>{pres("a"), pres("b")});
  }

  TEST_CASE("tumour cell rule") {
    BioModel m = parse_model(
        "species C/4\nconst d = 2\nvar n f\n"
        "rule intrav: C(n,breast,f,[EPCAM]) => C(n,blood,1,[EPCAM]) delay d\n"
        "init C(c1, breast, 0, [EPCAM])\n");
    REQUIRE(m.rules.size() == 1);
    CHECK(m.rules[0].kind == BioRule::Kind::Custom);
    CHECK(m.rules[0].delay == 2);
    CHECK(m.rules[0].vars == std::vector<std::string>{"f", "n"});
    REQUIRE(m.initial.size() == 1);
    CHECK(print_fact(m.initial[0]) == "C(c1,breast,0,[EPCAM])");
  }

  TEST_CASE("model errors") {
    CHECK(parse_error_kind("species a\nrule r: pres(z) => pres(a)\n") == ParseError::Kind::Undeclared);
    CHECK(parse_error_kind("species a\ninit pres(q)\n") == ParseError::Kind::Undeclared);
    CHECK(parse_error_kind("species C/2\ninit C(a)\n") == ParseError::Kind::ArityMismatch);
    CHECK(parse_error_kind("species a\nrule r: pres(a) => pres(a) delay 0\n") == ParseError::Kind::Syntax);
    CHECK(parse_error_kind("species a\nrule r: 1 => pres(a)\n") == ParseError::Kind::Syntax);
    CHECK(parse_error_kind("species a\nrule r: pres(a) => pres(a) delay k\n") == ParseError::Kind::Undeclared);
    CHECK(parse_error_kind("species P/1\nvar x y\nrule r: P(x) => P(y)\n") == ParseError::Kind::Syntax);
    CHECK(parse_error_kind("species P/1\nvar x\ninit P(x)\n") == ParseError::Kind::Syntax);
    CHECK(parse_error_kind("species a\nfoo a\n") == ParseError::Kind::Syntax);
  }

  TEST_CASE("query facts") {
    BioModel m = parse_model(kChain);
    CHECK(parse_facts(m, "pres(a), c") == std::vector<Fact>{pres("a"), pres("c")});
    CHECK_THROWS_AS(parse_facts(m, "pres(z)"), ParseError);
  }

  TEST_CASE("compilation") {
    BioModel m = parse_model(kChain);
    HyllTheory th = compile_model(m);
    CHECK(th.gamma.size() == 2);
    REQUIRE(th.delta.size() == 1);
    CHECK(print_judgment(T, th.delta[0]) == "pres(a) @ 0");
    CHECK(print_formula(T, th.gamma[0].formula) == "pres(a) -o delay[1] (pres(a) * pres(b))");
    CHECK(print_formula(T, rule_formula(m.rules[1])) == "pres(b) -o delay[1] (pres(b) * pres(c))");
  }

  TEST_CASE("stamped instances") {
    BioModel m = parse_model(kChain);
    CHECK(compile_model(m, 0).gamma.empty());
    HyllTheory one = compile_model(m, 1);
    // act_ab at 0 and the frame for pres(a) at 0; b is not there before 1.
    CHECK(one.gamma.size() == 2);
    for (const auto& j : one.gamma) CHECK(j.world == WorldExpr::iota());
    BioModel inh = parse_model("species a b\nrule inh: pres(a) -| pres(b) delay 1\ninit pres(a), pres(b)\nframes off\n");
    HyllTheory ih = compile_model(inh, 1);
    REQUIRE(ih.gamma.size() == 1);
    CHECK(print_formula(T, ih.gamma[0].formula) == "pres(a) * pres(b) -o delay[1] pres(a)");
  }

  TEST_CASE("SELL rules in the displayed forms") {
    BioModel act = parse_model("species a b\nrule act_ab: pres(a) => pres(a), pres(b) delay 1\ninit pres(a)\nframes off\n");
    SellTheory paper = compile_model_sell(act, 1, SellStyle::Paper);
    REQUIRE(paper.rules.size() == 1);
    CHECK(dual(paper.rules[0]) == parse_sell_formula("!0 pres(a) -o !1 (pres(a) * pres(b))"));
    SellTheory per_fact = compile_model_sell(act, 1);
    CHECK(dual(per_fact.rules[0]) == parse_sell_formula("!0 pres(a) -o !1 pres(a) * !1 pres(b)"));
    REQUIRE(per_fact.facts.size() == 1);
    CHECK(per_fact.facts[0] == parse_sell_formula("?0 ~pres(a)"));

    BioModel inh = parse_model("species a b\nrule inh: pres(a) -| pres(b) delay 1\ninit pres(a), pres(b)\nframes off\n");
    SellTheory ip = compile_model_sell(inh, 1, SellStyle::Paper);
    REQUIRE(ip.rules.size() == 1);
    CHECK(dual(ip.rules[0]) == parse_sell_formula("!0 pres(a) -o !1 (pres(a) * ~pres(b))"));

    CHECK(compile_model_sell(act, 0).rules.empty());
    SubexpSignature sig = stamp_signature(2);
    CHECK(sig.leq("1", kInfinity));
    CHECK(sig.leq(kCopyLabel, kInfinity));
    CHECK_FALSE(sig.leq("1", "2"));
    CHECK(sig.unbounded(kCopyLabel));
    CHECK_FALSE(sig.unbounded("0"));
  }

  TEST_CASE("queries") {
    BioModel m = parse_model(kChain);
    CHECK(print_judgment(T, compile_query(m, {Query::Kind::ReachAt, {pres("c")}, 2}, 2)) == "pres(c) * top @ 2");
    CHECK(print_judgment(T, compile_query(m, {Query::Kind::ReachWithin, {pres("b")}, 0}, 0)) == "pres(b) * top @ 0");
    Judgment inv = compile_query(m, {Query::Kind::InvariantUpTo, {pres("a")}, 1}, 1);
    CHECK(inv.formula == parse_formula("((pres(a) * top) at 0) & ((pres(a) * top) at 1)"));
    Judgment within = compile_query(m, {Query::Kind::ReachWithin, {pres("b")}, 2}, 2);
    CHECK(within.formula.kind() == Connective::Plus);
    CHECK_THROWS_AS(compile_query(m, {Query::Kind::ReachAt, {pres("c")}, 3}, 2), std::invalid_argument);
  }

  TEST_CASE("chain verdicts") {
    BioModel m = parse_model(kChain);
    BioAnswer yes = answer(m, {Query::Kind::ReachAt, {pres("c")}, 2}, bio_budget());
    CHECK(yes.verdict == BioVerdict::Holds);
    REQUIRE(yes.proof);
    CHECK(check_proof(KernelConfig{}, *yes.proof, yes.sequent).valid);
    CHECK(answer(m, {Query::Kind::ReachAt, {pres("c")}, 1}, bio_budget()).verdict == BioVerdict::Fails);
    CHECK(answer_sell(m, {Query::Kind::ReachAt, {pres("c")}, 2}, bio_budget()).verdict == BioVerdict::Holds);
    CHECK(answer_sell(m, {Query::Kind::ReachAt, {pres("c")}, 1}, bio_budget()).verdict == BioVerdict::Fails);
  }

  TEST_CASE("no rules: the initial state holds at 0") {
    BioModel m = parse_model("species a b\ninit pres(a), pres(b)\n");
    Query q{Query::Kind::ReachAt, m.initial, 0};
    CHECK(answer(m, q, bio_budget()).verdict == BioVerdict::Holds);
    CHECK(answer(m, {Query::Kind::StableState, {}, 2}, bio_budget()).verdict == BioVerdict::Holds);
  }

  TEST_CASE("tiny budgets give unknown") {
    BioModel m = parse_model(kChain);
    SearchBudget b;
    b.depth = 1;
    CHECK(answer(m, {Query::Kind::ReachAt, {pres("c")}, 2}, b).verdict == BioVerdict::Unknown);
  }

  TEST_CASE("reach_within is monotone in the horizon") {
    for (const auto& sm : suite::bio_models()) {
      BioModel m = parse_model(sm.text);
      for (const auto& f : fact_universe(m)) {
        bool before = false;
        for (unsigned h = 0; h <= std::min(sm.horizon, 3u); ++h) {
          bool now = answer(m, {Query::Kind::ReachWithin, {f}, h}, bio_budget()).verdict == BioVerdict::Holds;
          if (before) CHECK_MESSAGE(now, sm.name << " " << print_fact(f) << " within " << h);
          before = now;
        }
      }
    }
  }

  TEST_CASE("oracle states") {
    BioModel m = parse_model(kChain);
    CHECK(oracle::reachable_states(m, 0).size() == 1);
    CHECK(oracle::reachable_states(m, 1).size() == 3);
    CHECK(oracle::reachable_states(m, 2).size() == 12);
    CHECK(oracle::holds(m, {Query::Kind::ReachAt, {pres("c")}, 2}));
    CHECK_FALSE(oracle::holds(m, {Query::Kind::ReachAt, {pres("c")}, 1}));
  }

  TEST_CASE("prover and oracle agree on the suite, with checked proofs") {
    for (const auto& sm : suite::bio_models()) {
      BioModel m = parse_model(sm.text);
      for (const auto& q : suite::standard_queries(m, std::min(sm.horizon, 3u))) {
        BioAnswer a = answer(m, q, bio_budget());
        bool expected = oracle::holds(m, q);
        CHECK_MESSAGE(a.verdict == (expected ? BioVerdict::Holds : BioVerdict::Fails), sm.name << ": " << suite::describe(q));
        if (a.proof) CHECK(check_proof(KernelConfig{}, *a.proof, a.sequent).valid);
      }
    }
  }

  TEST_CASE("SELL answers carry checked proofs") {
    BioModel m = parse_model(kChain);
    SellBioAnswer a = answer_sell(m, {Query::Kind::ReachWithin, {pres("c")}, 3}, bio_budget());
    REQUIRE(a.verdict == BioVerdict::Holds);
    REQUIRE(a.proof);
    CHECK(check_sell_proof(a.sig, *a.proof, a.sequent).valid);
  }
}
