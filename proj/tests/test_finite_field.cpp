#include "doctest.h"

#include "pcl/errors.hpp"
#include "pcl/finite_field.hpp"

using namespace pcl;

namespace {
const std::vector<std::pair<unsigned, unsigned>> kFields = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                                                            {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}};
}

TEST_CASE("fq_arith examples") {
  auto f2 = FiniteField::get(2);
  auto one = FqElem(f2, 1);
  CHECK(fq_arith(FqOp::Add, one, one).is_zero());

  auto f3 = FiniteField::get(3);
  CHECK(fq_arith(FqOp::Inv, FqElem(f3, 2)).value() == 2);

  auto f4 = FiniteField::get(2, 2);
  const FqElem alpha(f4, f4->generator());
  const auto sq = fq_arith(FqOp::Mul, alpha, alpha);
  CHECK(sq.to_string() == "alpha + 1");
  CHECK(sq == alpha + FqElem(f4, 1));
}

TEST_CASE("fq_arith errors") {
  auto f3 = FiniteField::get(3);
  CHECK_THROWS_AS(fq_arith(FqOp::Inv, FqElem(f3, 0)), DivisionByZero);
  auto f5 = FiniteField::get(5);
  CHECK_THROWS_AS(fq_arith(FqOp::Add, FqElem(f3, 1), FqElem(f5, 1)), SpecMismatch);
  CHECK_THROWS_AS(FiniteField::get(4), DomainError);
  CHECK_THROWS_AS(FiniteField::get(2, 5), DomainError);
  CHECK_THROWS_AS(FiniteField::get(11, 2), DomainError);
}

TEST_CASE("frobenius_inv examples") {
  auto f2 = FiniteField::get(2);
  CHECK(frobenius_inv(FqElem(f2, 1)).value() == 1);
  auto f3 = FiniteField::get(3);
  CHECK(frobenius_inv(FqElem(f3, 2)).value() == 2);
  auto f4 = FiniteField::get(2, 2);
  const FqElem alpha(f4, f4->generator());
  CHECK(frobenius_inv(alpha + FqElem(f4, 1)) == alpha);
}

TEST_CASE("frobenius_inv inverts the p-th power for q <= 81") {
  for (auto [p, m] : kFields) {
    auto f = FiniteField::get(p, m);
    if (f->order() > 81)
      continue;
    for (FiniteField::Elem x = 0; x < f->order(); ++x) {
      CHECK(f->pow(f->frobenius_inv(x), p) == x);
      CHECK(f->pow(x, f->order()) == x);
    }
  }
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (auto [p, m] : kFields) {
    auto f = FiniteField::get(p, m);
    const auto q = static_cast<FiniteField::Elem>(f->order());
    if (q > 16)
      continue;
    CAPTURE(f->name());
    for (FiniteField::Elem a = 0; a < q; ++a) {
      CHECK(f->add(a, f->neg(a)) == 0);
      if (a)
        CHECK(f->mul(a, f->inv(a)) == 1);
      for (FiniteField::Elem b = 0; b < q; ++b) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        for (FiniteField::Elem c = 0; c < q; ++c) {
          CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
          CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("every table modulus gives a field") {
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned m = 2; m <= 4; ++m) {
      auto f = FiniteField::get(p, m);
      // Nonzero elements form a group: every element has an inverse.
      for (FiniteField::Elem a = 1; a < f->order(); ++a)
        REQUIRE(f->mul(a, f->inv(a)) == 1);
    }
}

TEST_CASE("large prime fields use the direct path") {
  auto f = FiniteField::get(2147483647ULL);
  const auto a = f->from_int(123456789);
  CHECK(f->mul(a, f->inv(a)) == 1);
  CHECK(f->from_int(-1) == 2147483646U);
}

TEST_CASE("field literals") {
  CHECK(parse_field_spec("GF(2)") == FiniteField::get(2));
  CHECK(parse_field_spec("GF(2^2)") == FiniteField::get(2, 2));
  CHECK(parse_field_spec("GF(9)") == FiniteField::get(3, 2));
  CHECK_THROWS_AS(parse_field_spec("GF(6)"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("F(2)"), ParseError);
}
