#include <doctest.h>

#include "generators.hpp"
#include "hylls/parser.hpp"
#include "hylls/prover.hpp"

using namespace hylls;

namespace {

const ConstraintDomain& T = temporal_domain();

Formula parse_with(const std::string& text, std::set<std::string> worlds, std::set<std::string> terms = {}) {
  SymbolTable table;
  table.world_vars = std::move(worlds);
  table.term_vars = std::move(terms);
  return parse_formula(text, T, table);
}

bool provable(const Formula& lhs, const Formula& rhs) {
  Sequent s = make_sequent({}, {Judgment{lhs, WorldExpr::iota()}}, Judgment{rhs, WorldExpr::iota()});
  SearchBudget b;
  b.depth = 4;
  return prove(KernelConfig{}, expand_sequent(T, s), b).outcome == Outcome::Proved;
}

}  // namespace

TEST_SUITE("logic-core") {
  TEST_CASE("parse builds the expected tree") {
    Formula f = parse_formula("pres(a) -o (pres(a) * pres(b))");
    REQUIRE(f.kind() == Connective::Limp);
    CHECK(f.left() == Formula::atom("pres", {Term::constant("a")}));
    CHECK(f.right().kind() == Connective::Tensor);

    Formula g = parse_formula("down u. (P at u.1)");
    REQUIRE(g.kind() == Connective::Down);
    CHECK(g.body().kind() == Connective::At);
  }

  TEST_CASE("unbound world variable is reported") {
    try {
      parse_formula("P at u");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseError::Kind::UnboundWorldVariable);
      CHECK(e.offset() == 5);
    }
  }

  TEST_CASE("arity mismatch and syntax errors") {
    CHECK_THROWS_AS(parse_formula("p(f(a)) * p(f(a, b))"), ParseError);
    CHECK_THROWS_AS(parse_formula("p * "), ParseError);
    CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  }

  TEST_CASE("printing") {
    CHECK(print_formula(T, Formula::tensor(Formula::atom("p"), Formula::one())) == "p * 1");
    CHECK(print_formula(T, parse_formula("down u. (p at u)")) == "down u. (p at u)");
    // Nested binders with the same hint come out with distinct names.
    Formula nested = Formula::down("u", Formula::down("u", Formula::tensor(Formula::at(Formula::atom("p"), WorldExpr::bound(1)),
                                                                           Formula::at(Formula::atom("q"), WorldExpr::bound(0)))));
    std::string text = print_formula(T, nested);
    CHECK(parse_formula(text) == nested);
  }

  TEST_CASE("parse and print round-trip on generated formulas") {
    gen::RandomFormulas g(7);
    for (int i = 0; i < 2000; ++i) {
      Formula f = g.formula(5);
      std::string once = print_formula(T, f);
      Formula back = parse_formula(once);
      REQUIRE_MESSAGE(back == f, once);
      CHECK(print_formula(T, back) == once);
    }
  }

  TEST_CASE("polarity") {
    Formula p = Formula::atom("p"), q = Formula::atom("q");
    CHECK(polarity_of(Formula::tensor(p, q)) == Polarity::Positive);
    CHECK(polarity_of(Formula::with(p, q)) == Polarity::Negative);
    CHECK(polarity_of(Formula::at(Formula::tensor(p, q), WorldExpr::var("w"))) == Polarity::Positive);
    CHECK(polarity_of(Formula::one()) == Polarity::Positive);
    CHECK(polarity_of(Formula::zero()) == Polarity::Positive);
    CHECK(polarity_of(Formula::bang(p)) == Polarity::Positive);
    CHECK(polarity_of(Formula::limp(p, q)) == Polarity::Negative);
    CHECK(polarity_of(Formula::top()) == Polarity::Negative);
    CHECK(polarity_of(p, Polarity::Negative) == Polarity::Negative);
    CHECK(polarity_of(p, Polarity::Positive) == Polarity::Positive);
    CHECK(polarity_of(Formula::down("u", Formula::with(p, q))) == Polarity::Negative);
  }

  TEST_CASE("subst_world") {
    WorldExpr three = WorldExpr::constant(T, WorldConst::natural(3));
    WorldExpr two = WorldExpr::constant(T, WorldConst::natural(2));
    CHECK(subst_world(T, parse_with("p at u", {"u"}), "u", three) == parse_formula("p at 3"));
    Formula bound = parse_formula("down u. (p at u)");
    CHECK(subst_world(T, bound, "u", three) == bound);
    CHECK(subst_world(T, parse_with("p at u.v", {"u", "v"}), "u", two) == parse_with("p at v.2", {"v"}));
  }

  TEST_CASE("subst_term") {
    Term c = Term::constant("c");
    CHECK(subst_term(parse_with("p(x)", {}, {"x"}), "x", c) == parse_formula("p(c)"));
    Formula closed = parse_formula("forall x. p(x)");
    CHECK(subst_term(closed, "x", c) == closed);
    Term fc = Term::app("f", {c});
    CHECK(subst_term(parse_with("p(x) at w", {"w"}, {"x"}), "x", fc) == parse_with("p(f(c)) at w", {"w"}));
  }

  TEST_CASE("substitution does not capture") {
    // Substituting a free world into a body under a binder of another name.
    Formula f = parse_with("down v. (p at u.v)", {"u"});
    Formula g = subst_world(T, f, "u", WorldExpr::var("v"));
    CHECK(g == parse_with("down w. (p at v.w)", {"v"}));
    CHECK(g != parse_formula("down w. (p at w.w)"));
  }

  TEST_CASE("modal sugar expands to the hybrid forms") {
    CHECK(expand_modal(T, parse_formula("box A")) == parse_formula("down u. forall world w. (A at u.w)"));
    CHECK(expand_modal(T, parse_formula("dia A")) == parse_formula("down u. exists world w. (A at u.w)"));
    CHECK(expand_modal(T, parse_formula("delay[2] A")) == parse_formula("down u. (A at u.2)"));
  }

  TEST_CASE("expand_modal is idempotent and size-linear") {
    gen::RandomFormulas g(11);
    for (int i = 0; i < 1000; ++i) {
      Formula f = g.formula(5);
      Formula e = expand_modal(T, f);
      CHECK(expand_modal(T, e) == e);
      CHECK(e.size() <= 4 * f.size());
    }
  }

  TEST_CASE("delays compose") {
    for (const char* a : {"p", "p * q", "p -o q", "p & q", "!p"}) {
      Formula twice = parse_formula("delay[2] delay[3] (" + std::string(a) + ")");
      Formula once = parse_formula("delay[5] (" + std::string(a) + ")");
      CHECK(provable(twice, once));
      CHECK(provable(once, twice));
    }
  }
}
