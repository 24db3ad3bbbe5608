#include <doctest.h>

#include "hylls/parser.hpp"
#include "hylls/sell.hpp"

using namespace hylls;

namespace {

SubexpSignature sig_of(const std::string& text) { return validate_signature(parse_signature(text)); }

const SubexpSignature& conf() {
  static const SubexpSignature s = sig_of("labels w v inf\nedge w inf\nedge v inf\nunbounded inf\n");
  return s;
}

const SubexpSignature& abc() {
  static const SubexpSignature s = sig_of("labels a b c u v\nedge a b\nedge v u\nunbounded b\n");
  return s;
}

SellFormula F(const std::string& text) { return parse_sell_formula(text); }

Outcome run(const SubexpSignature& sig, const std::string& text, std::optional<SellProof>* proof = nullptr) {
  SellSequent s = parse_sell_sequent(sig, text);
  auto r = prove_sell(sig, s, SearchBudget{});
  if (r.proof) {
    auto v = check_sell_proof(sig, *r.proof, expand_sell_sequent(sig, s));
    CHECK_MESSAGE(v.valid, v.reason);
  }
  if (proof) *proof = r.proof;
  return r.outcome;
}

// Every promotion node in `p`, checked against the sequent it sits on.
void audit_promotions(const SubexpSignature& sig, const SellProof& p, const SellSequent& s, int& seen) {
  SubexpSignature eff = effective_signature(sig, s);
  if (p.rule == SellRule::Promote) {
    ++seen;
    const SellFormula& f = s.work.at(p.principal.index);
    for (const auto& [label, items] : s.theta)
      if (!items.empty()) CHECK_MESSAGE(eff.leq(f.label(), label), label);
  }
  auto ps = sell_premises(sig, p.rule, s, p.principal, p.witness);
  REQUIRE(ps.size() == p.premises.size());
  for (std::size_t i = 0; i < ps.size(); ++i) audit_promotions(sig, p.premises[i], ps[i], seen);
}

}  // namespace

TEST_SUITE("sell-engine") {
  TEST_CASE("signature validation") {
    CHECK_NOTHROW(sig_of("labels a b\nedge a b\nunbounded b\n"));
    try {
      sig_of("labels a b\nedge a b\nunbounded a\n");
      FAIL("expected rejection");
    } catch (const SignatureError& e) {
      std::string m = e.what();
      CHECK(m.find("a <= b") != std::string::npos);
    }
    CHECK_NOTHROW(conf());
    CHECK_THROWS_AS(sig_of("labels a\nedge a z\n"), SignatureError);
  }

  TEST_CASE("signature closure") {
    auto s = sig_of("labels a b c d\nedge a b\nedge b c\nunbounded c d\n");
    for (const auto& x : s.labels()) CHECK(s.leq(x, x));
    CHECK(s.leq("a", "c"));
    CHECK_FALSE(s.leq("c", "a"));
    CHECK_FALSE(s.leq("a", "d"));
    for (const auto& x : s.labels())
      for (const auto& y : s.labels()) {
        if (s.unbounded(x) && s.leq(x, y)) CHECK(s.unbounded(y));
        for (const auto& z : s.labels())
          if (s.leq(x, y) && s.leq(y, z)) CHECK(s.leq(x, z));
      }
  }

  TEST_CASE("promotion") {
    const auto& sig = abc();
    SellSequent ok = promote(sig, parse_sell_sequent(sig, "theta b: p\n|- !a q"));
    CHECK(ok.work == std::vector<SellFormula>{F("q")});
    CHECK(ok.theta.at("b") == std::vector<SellFormula>{F("p")});
    try {
      promote(sig, parse_sell_sequent(sig, "theta c: p\n|- !a q"));
      FAIL("expected a side-condition error");
    } catch (const SellError& e) {
      CHECK(e.kind() == SellError::Kind::SideCondition);
      CHECK(e.label() == "c");
    }
    CHECK(promote(sig, parse_sell_sequent(sig, "|- !a q")).work == std::vector<SellFormula>{F("q")});
    CHECK_THROWS_AS(promote(sig, parse_sell_sequent(sig, "|- !a q, p")), SellError);
  }

  TEST_CASE("store and weaken") {
    const auto& sig = abc();
    SellSequent s = dereliction_store(sig, parse_sell_sequent(sig, "|- ?a p"), 0);
    CHECK(s.work.empty());
    CHECK(s.theta.at("a") == std::vector<SellFormula>{F("p")});
    SellSequent u = parse_sell_sequent(sig, "theta b: p\n|- 1");
    CHECK(weaken(sig, u, "b", 0).theta.count("b") == 0);
    try {
      weaken(sig, s, "a", 0);
      FAIL("expected a linearity error");
    } catch (const SellError& e) {
      CHECK(e.kind() == SellError::Kind::Linearity);
      CHECK(e.label() == "a");
    }
  }

  TEST_CASE("label quantifiers") {
    const auto& sig = abc();
    SellSequent all = instantiate_quant(sig, parse_sell_sequent(sig, "|- all l:u. !l p"), 0, std::nullopt);
    REQUIRE(all.work.size() == 1);
    CHECK(all.work[0].kind() == SellKind::Bang);
    CHECK_FALSE(sig.has(all.work[0].label()));
    REQUIRE(all.locals.size() == 1);
    CHECK(all.locals[0].second == "u");

    SellSequent some = instantiate_quant(sig, parse_sell_sequent(sig, "|- some l:u. !l p"), 0, std::string("v"));
    CHECK(some.work == std::vector<SellFormula>{F("!v p")});
    try {
      instantiate_quant(sig, parse_sell_sequent(sig, "|- some l:u. !l p"), 0, std::string("c"));
      FAIL("expected an ideal error");
    } catch (const SellError& e) {
      CHECK(e.kind() == SellError::Kind::Ideal);
      CHECK(e.label() == "c");
    }
  }

  TEST_CASE("search") {
    CHECK(run(conf(), "|- ~p | p") == Outcome::Proved);
    CHECK(run(conf(), "|- ?w !w top, 0") == Outcome::Refuted);
    CHECK(run(conf(), "!w ?w 0 |- 0") == Outcome::Refuted);
    CHECK(run(conf(), "!w ?w 0 |- !v ?v 0") == Outcome::Refuted);
    CHECK(run(conf(), "!w ?w 0 |- !w ?w 0") == Outcome::Proved);
    CHECK(run(conf(), "!inf p |- !w p * !v p") == Outcome::Proved);
    CHECK(run(conf(), "!w p |- !w p * !w p") == Outcome::Refuted);
    CHECK(run(conf(), "!w p |- !inf p") == Outcome::Refuted);
    CHECK(run(conf(), "!w p, !v q |- !w (p * q)") == Outcome::Refuted);
    CHECK(run(conf(), "!w p, !v q |- !w p * !v q") == Outcome::Proved);
    CHECK(run(conf(), "box p |- dia p") == Outcome::Proved);
    CHECK(run(conf(), "forall x. p(x) |- p(a)") == Outcome::Proved);
    CHECK(run(conf(), "p + q |- q + p") == Outcome::Proved);
    CHECK(run(conf(), "p, q |- p & top") == Outcome::Refuted);
  }

  TEST_CASE("modal expansion") {
    CHECK(expand_sell_modal(F("box[u] p")) == F("all l:u. !l p"));
    CHECK(expand_sell_modal(F("dia p")) == F("some t:inf. !t p"));
    SellFormula e = expand_sell_modal(F("box[u] p * dia (q & box r)"));
    CHECK(expand_sell_modal(e) == e);
  }

  TEST_CASE("duality") {
    for (const char* t : {"p * (q + 1)", "!w ?v (p & top)", "exists x. p(x) -o q", "some l:inf. all m:inf. !l ?m p"}) {
      SellFormula f = expand_sell_modal(F(t));
      CHECK(dual(dual(f)) == f);
      CHECK(parse_sell_formula(print_sell_formula(f)) == f);
    }
  }

  TEST_CASE("encoding judgments") {
    auto sig = sig_of("labels 0 1 2 3 inf copy\nedge 0 inf\nedge 1 inf\nedge 2 inf\nedge 3 inf\nedge copy inf\n"
                      "unbounded inf copy\n");
    const ConstraintDomain& d = temporal_domain();
    SymbolTable table;
    SellFormula fact = encode_hyll_judgment(sig, d, parse_judgment("pres(a) @ 3", d, table), false);
    CHECK(fact == F("?3 ~pres(a)"));
    Judgment g = parse_judgment("pres(a) -o delay[1] (pres(a) * pres(b)) @ 0", d, table);
    SellFormula classical = encode_hyll_judgment(sig, d, g, true);
    REQUIRE(classical.kind() == SellKind::Quest);
    CHECK(classical.label() == "copy");
    CHECK(classical.body().kind() == SellKind::Quest);
    CHECK(classical.body().label() == "0");
    // The delay moves the stamp from 0 to 1.
    CHECK(lower_hyll(d, expand_modal(d, g.formula), g.world) == F("!0 pres(a) -o !1 pres(a) * !1 pres(b)"));
    CHECK_THROWS_AS(encode_hyll_judgment(sig, d, parse_judgment("p @ 9", d, table), false), EncodeError);
    CHECK_THROWS_AS(lower_hyll(d, parse_formula("forall x. p(x)"), WorldExpr::iota()), EncodeError);
  }

  TEST_CASE("no promotion in a found proof violates its side condition") {
    int seen = 0;
    for (const char* t : {"!w ?w 0 |- !w ?w 0", "!inf p |- !w p * !v p", "!w p, !v q |- !w p * !v q",
                          "!w p |- !w p", "box p |- dia p", "!w p |- ?w p"}) {
      const auto& sig = conf();
      SellSequent s = expand_sell_sequent(sig, parse_sell_sequent(sig, t));
      auto r = prove_sell(sig, s, SearchBudget{});
      REQUIRE_MESSAGE(r.outcome == Outcome::Proved, t);
      audit_promotions(sig, *r.proof, s, seen);
    }
    CHECK(seen >= 6);
  }

  TEST_CASE("the kernel rejects an illegal promotion") {
    const auto& sig = conf();
    SellSequent s = parse_sell_sequent(sig, "!w p |- !inf p");
    // Store ~p in w, then promote !inf with Theta[w] nonempty.
    std::size_t q = s.work[0].kind() == SellKind::Quest ? 0 : 1;
    SellProof bad{SellRule::Store, SellPrincipal::work(q), {}, {}};
    SellSequent after = dereliction_store(sig, s, q);
    REQUIRE(after.work.size() == 1);
    bad.premises.push_back(SellProof{SellRule::Promote, SellPrincipal::work(0), {}, {}});
    SellVerdict v = check_sell_proof(sig, bad, s);
    CHECK_FALSE(v.valid);
    CHECK(v.reason.find("w") != std::string::npos);
  }
}
