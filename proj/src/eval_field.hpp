#pragma once

#include "pcl/finite_field.hpp"

#include <cstdint>
#include <vector>

namespace pcl {
class MPoly;
}

namespace pcl::detail {

// A field containing F_q with at least a few hundred elements, used to take
// random univariate images of polynomials. Small F_q are embedded into a
// table-driven F_{p^k}; larger fields are used directly.
class EvalField {
public:
  using Elem = std::uint32_t;

  static const EvalField &for_field(const FiniteField &base);

  std::uint64_t order() const noexcept { return q_; }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem embed(FiniteField::Elem x) const { return direct_ ? x : embed_[x]; }

  explicit EvalField(const FiniteField &base);

private:
  Elem mul_by_x(Elem a) const;

  const FiniteField *base_;
  bool direct_ = false;
  std::uint32_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> low_; // modulus x^k + sum low_[i] x^i
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> embed_;
};

// Degree in var of gcd(a(pt), b(pt)) for a random point pt in the other
// variables, or -1 when the point lowers either degree in var.
int image_gcd_degree(const MPoly &a, const MPoly &b, std::size_t var, std::uint64_t seed);

} // namespace pcl::detail
