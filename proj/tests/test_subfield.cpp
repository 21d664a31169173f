#include "doctest.h"

#include "pcl/errors.hpp"
#include "pcl/subfield.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <random>

using namespace pcl;
using pcl::testing::brute_member;
using pcl::testing::random_ratfunc;
using pcl::testing::session;

namespace {

Subfield sub(const pcl::testing::Session &F, const std::string &gens) { return Subfield(F.k, F.tuple(gens)); }

} // namespace

TEST_CASE("member examples") {
  auto F = session(2, {"t"});
  auto w = member(F("t^4"), sub(F, "t^2"));
  REQUIRE(w);
  CHECK(w->to_string() == "y1^2");
  CHECK(w->value == F("t^4"));
  CHECK_FALSE(member(F("t"), sub(F, "t^2")));
  auto g = member(F("t^3 + 1/t"), sub(F, "t^3 + 1/t, t^2"));
  REQUIRE(g);
  CHECK(g->to_string() == "y1");
}

TEST_CASE("member handles rational generators") {
  auto F = session(3, {"s", "t"});
  const auto D = sub(F, "s/t, t^2");
  auto w = member(F("s^2/t^2 + t^4"), D);
  REQUIRE(w);
  CHECK(w->value == F("s^2/t^2 + t^4"));
  CHECK_FALSE(member(F("t"), D));
  CHECK(member(F("1/(s/t + 1)"), D));
  CHECK(member(F("2"), D));
}

TEST_CASE("field comparison") {
  auto F = session(2, {"t"});
  CHECK(field_leq(sub(F, "t^4"), sub(F, "t^2")));
  CHECK_FALSE(field_leq(sub(F, "t^2"), sub(F, "t^4")));
  CHECK(field_leq(sub(F, "t^2"), sub(F, "t^2")));
  CHECK(field_equal(sub(F, "t^2, t^4"), sub(F, "t^2")));
  CHECK(field_equal(sub(F, "t + 1"), sub(F, "1/t")));
}

TEST_CASE("relation ideal and transcendence degree") {
  auto F = session(2, {"t"});
  const auto D = sub(F, "t, t^2");
  const auto &rel = D.relations();
  REQUIRE(rel.basis.size() == 1);
  CHECK(rel.basis[0].to_string() == "y1^2 + y2");
  CHECK(trdeg(D) == 1);

  const auto P = sub(F, "t^2");
  CHECK(P.relations().basis.empty());
  CHECK(trdeg(P) == 1);

  const Subfield E(F.k, {});
  CHECK(E.relations().basis.empty());
  CHECK(trdeg(E) == 0);

  auto G = session(3, {"s", "t"});
  CHECK(trdeg(sub(G, "s^3, t^3, s*t")) == 2);
  CHECK(trdeg(sub(G, "s^3*t^6, s*t^2")) == 1);
}

TEST_CASE("minimal polynomial examples") {
  auto F = session(2, {"t"});
  auto a = minimal_polynomial(F("t"), sub(F, "t^2"));
  REQUIRE(a);
  CHECK(a->degree == 2);
  CHECK(a->to_string() == "X^2 + t^2");
  CHECK_FALSE(a->separable());

  auto b = minimal_polynomial(F("t"), sub(F, "t^2 + t"));
  REQUIRE(b);
  CHECK(b->to_string() == "X^2 + X + (t^2 + t)");
  CHECK(b->separable());

  auto G = session(2, {"s", "t"});
  CHECK_FALSE(minimal_polynomial(G("t"), sub(G, "s")));
}

TEST_CASE("member agrees with the degree-bounded search") {
  std::mt19937_64 rng(29);
  int yes = 0, no = 0;
  for (int iter = 0; iter < 50; ++iter) {
    auto F = iter % 2 ? session(2, {"t"}) : session(2, {"s", "t"});
    const std::size_t k = 1 + iter % 2;
    std::vector<RatFunc> g;
    for (std::size_t i = 0; i < k; ++i) {
      auto r = random_ratfunc(F.k, rng, 2, 2);
      if (r.is_constant())
        r = r + RatFunc::variable(F.k, i % F.k->nvars());
      g.push_back(r);
    }
    RatFunc x(F.k);
    if (iter % 3 == 0) {
      x = random_ratfunc(F.k, rng, 2, 2);
    } else {
      // Small expression in g.
      x = g[0] * g[0] + RatFunc(F.k, 1);
      if (k > 1)
        x = x / (g[1] + RatFunc(F.k, 1));
      if (x.is_zero())
        x = g[0];
    }
    const Subfield D(F.k, g);
    const auto gb = member(x, D);
    const bool bf = brute_member(x, g, 3);
    CAPTURE(x.to_string());
    for (const auto &e : g)
      CAPTURE(e.to_string());
    if (bf)
      CHECK(gb.has_value());
    if (gb) {
      CHECK(gb->value == x);
      if (gb->num.total_degree() <= 3 && gb->den.total_degree() <= 3)
        CHECK(bf);
      ++yes;
    } else {
      CHECK_FALSE(bf);
      ++no;
    }
  }
  CHECK(yes > 10);
  CHECK(no > 3);
}

TEST_CASE("trdeg grows by at most one and matches transcendence") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    auto F = session(iter % 2 ? 3 : 2, {"s", "t"});
    std::vector<RatFunc> g;
    for (int i = 0; i < 1 + iter % 2; ++i)
      g.push_back(random_ratfunc(F.k, rng, 2, 1 + i));
    const Subfield D(F.k, g);
    const auto x = random_ratfunc(F.k, rng, 2, 2);
    const auto d0 = trdeg(D), d1 = trdeg(D.adjoin({x}));
    CHECK(d1 >= d0);
    CHECK(d1 - d0 <= 1);
    CHECK((d1 - d0 == 1) == !minimal_polynomial(x, D).has_value());
  }
}

TEST_CASE("minimal polynomial degree matches the field degree in one variable") {
  // [F_q(t) : F_q(g)] = max(deg num g, deg den g).
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 25; ++iter) {
    auto F = session(iter % 2 ? 3 : 2, {"t"});
    RatFunc g = random_ratfunc(F.k, rng, 3, 3);
    if (g.is_constant())
      g = g + F("t^2");
    const auto mp = minimal_polynomial(F("t"), Subfield(F.k, {g}));
    REQUIRE(mp);
    CHECK(mp->degree == std::max(g.num().total_degree(), g.den().total_degree()));
  }
}
