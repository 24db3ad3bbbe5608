#include <doctest.h>

#include <random>

#include "hylls/parser.hpp"
#include "hylls/world.hpp"

using namespace hylls;

namespace {

const ConstraintDomain& T = temporal_domain();

WorldExpr n(std::uint64_t k) { return WorldExpr::constant(T, WorldConst::natural(k)); }
WorldExpr w(const std::string& text) {
  SymbolTable table;
  table.world_vars = {"x", "y", "z"};
  return parse_world(text, T, table);
}

WorldExpr random_expr(const ConstraintDomain& d, std::mt19937_64& rng, bool ground) {
  WorldExpr e = WorldExpr::iota();
  auto consts = d.enumerate(6);
  std::uniform_int_distribution<std::size_t> pick(0, consts.size() - 1);
  e = compose(d, e, WorldExpr::constant(d, consts[pick(rng)]));
  if (!ground) {
    const char* names[] = {"x", "y", "z"};
    std::uniform_int_distribution<int> count(0, 3);
    for (int i = count(rng); i > 0; --i) e = compose(d, e, WorldExpr::var(names[rng() % 3]));
  }
  return e;
}

}  // namespace

TEST_SUITE("constraint-domains") {
  TEST_CASE("compose") {
    CHECK(compose(T, n(2), n(3)) == n(5));
    CHECK(compose(T, WorldExpr::iota(), w("x.4")) == w("x.4"));
    WorldExpr xx = compose(T, w("x.1"), w("x.2"));
    CHECK(xx == w("x.x.3"));
    REQUIRE(xx.const_part());
    CHECK(xx.const_part()->num == 3);
    CHECK(xx.atoms().size() == 2);
    CHECK(xx.atoms()[0] == xx.atoms()[1]);
  }

  TEST_CASE("reachable") {
    CHECK(reachable(T, n(3), n(5)));
    CHECK_FALSE(reachable(T, n(5), n(3)));
    for (std::uint64_t k = 0; k < 10; ++k) CHECK(reachable(T, WorldExpr::iota(), n(k)));
    CHECK_THROWS_AS(reachable(T, w("x"), n(3)), std::invalid_argument);
  }

  TEST_CASE("divide") {
    CHECK(divide(T, n(2), n(5)) == n(3));
    CHECK_FALSE(divide(T, n(5), n(2)));
    CHECK(divide(T, n(4), n(4)) == WorldExpr::iota());
  }

  TEST_CASE("unify_worlds") {
    auto s = unify_worlds(T, w("x.1"), n(3), {});
    REQUIRE(s);
    CHECK(s->at("x") == n(2));
    CHECK_FALSE(unify_worlds(T, w("x.4"), n(3), {}));
    auto v = unify_worlds(T, w("x"), w("y.1"), {}, {"y"});
    REQUIRE(v);
    CHECK(v->at("x") == w("y.1"));
  }

  TEST_CASE("iota prints as 0 in the temporal domain") {
    CHECK(print_world(T, WorldExpr::iota()) == "0");
    CHECK(parse_world("iota", T) == WorldExpr::iota());
  }

  TEST_CASE("monoid laws hold for every registered domain") {
    std::mt19937_64 rng(3);
    for (const ConstraintDomain* d : {&temporal_domain(), &probabilistic_domain()}) {
      for (int i = 0; i < 500; ++i) {
        WorldExpr a = random_expr(*d, rng, false), b = random_expr(*d, rng, false), c = random_expr(*d, rng, false);
        CHECK(compose(*d, compose(*d, a, b), c) == compose(*d, a, compose(*d, b, c)));
        CHECK(compose(*d, WorldExpr::iota(), a) == a);
        CHECK(compose(*d, a, WorldExpr::iota()) == a);
        CHECK(compose(*d, WorldExpr::constant(*d, d->identity()), a) == a);
      }
    }
  }

  TEST_CASE("temporal reachability is the order on naturals") {
    for (std::uint64_t a = 0; a < 8; ++a)
      for (std::uint64_t b = 0; b < 8; ++b) {
        CHECK(reachable(T, n(a), n(b)) == (a <= b));
        for (std::uint64_t c = 0; c < 8; ++c)
          if (reachable(T, n(a), n(b)) && reachable(T, n(b), n(c))) CHECK(reachable(T, n(a), n(c)));
      }
  }

  TEST_CASE("divide is the section of compose") {
    std::mt19937_64 rng(5);
    for (const ConstraintDomain* d : {&temporal_domain(), &probabilistic_domain()}) {
      for (int i = 0; i < 300; ++i) {
        WorldExpr u = random_expr(*d, rng, true), v = random_expr(*d, rng, true);
        WorldExpr uv = compose(*d, u, v);
        auto q = divide(*d, u, uv);
        REQUIRE(q);
        CHECK(compose(*d, u, *q) == uv);
        WorldExpr other = random_expr(*d, rng, true);
        if (auto r = divide(*d, u, other)) CHECK(compose(*d, u, *r) == other);
      }
    }
  }

  TEST_CASE("unifiers validate by substitution") {
    std::mt19937_64 rng(9);
    int solved = 0;
    for (int i = 0; i < 400; ++i) {
      WorldExpr a = random_expr(T, rng, false), b = random_expr(T, rng, i % 2 == 0);
      auto s = unify_worlds(T, a, b, {}, {}, 8);
      if (!s) continue;
      ++solved;
      WorldExpr lhs = apply_subst(T, a, *s), rhs = apply_subst(T, b, *s);
      CHECK(lhs == rhs);
      CHECK(apply_subst(T, lhs, *s) == lhs);
    }
    CHECK(solved > 50);
  }

  TEST_CASE("canonical form does not depend on the order of composition") {
    CHECK(compose(T, w("x.y"), n(1)) == compose(T, n(1), w("y.x")));
    CHECK(w("y.x.2") == w("x.1.y.1"));
  }

  TEST_CASE("probabilistic domain") {
    const ConstraintDomain& P = probabilistic_domain();
    auto half = P.parse_const("1/2");
    REQUIRE(half);
    WorldExpr h = WorldExpr::constant(P, *half);
    WorldExpr q = compose(P, h, h);
    CHECK(P.print_const(*q.const_part()) == "1/4");
    CHECK_FALSE(P.parse_const("3/2"));
    CHECK(reachable(P, WorldExpr::iota(), h));
    CHECK_THROWS_AS(domain_by_name("nope"), std::invalid_argument);
    CHECK(&domain_by_name("temporal") == &T);
  }
}
