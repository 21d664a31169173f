#pragma once

#include "pcl/finite_field.hpp"
#include "pcl/multi_index.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pcl {

using Exponent = std::uint32_t;
using Exponents = std::vector<Exponent>;

// F_q[x_1, ..., x_n] with named variables. Rings compare structurally.
class PolyRing {
public:
  PolyRing(FieldPtr field, std::vector<std::string> names);

  const FieldPtr &field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  const std::string &name(std::size_t i) const { return names_[i]; }
  // -1 when absent.
  int index_of(const std::string &name) const;

  friend bool operator==(const PolyRing &a, const PolyRing &b) {
    return a.field_ == b.field_ && a.names_ == b.names_;
  }

private:
  FieldPtr field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(FieldPtr field, std::vector<std::string> names);
bool same_ring(const RingPtr &a, const RingPtr &b);

// Product of graded reverse lexicographic orders on consecutive variable
// blocks. One block is grevlex, blocks of size one give lex, and a block
// split gives an elimination order for the leading block.
class MonomialOrder {
public:
  static MonomialOrder grevlex(std::size_t nvars) { return MonomialOrder({nvars}, "grevlex"); }
  static MonomialOrder lex(std::size_t nvars) {
    return MonomialOrder(std::vector<std::size_t>(nvars, 1), "lex");
  }
  // Eliminates the first `split` variables.
  static MonomialOrder block(std::size_t nvars, std::size_t split);
  static MonomialOrder blocks(std::vector<std::size_t> sizes) {
    return MonomialOrder(std::move(sizes), "blocks");
  }

  // >0 when a > b.
  int compare(std::span<const Exponent> a, std::span<const Exponent> b) const;
  std::size_t nvars() const noexcept;
  const std::vector<std::size_t> &block_sizes() const noexcept { return blocks_; }
  const std::string &kind() const noexcept { return kind_; }

private:
  MonomialOrder(std::vector<std::size_t> blocks, std::string kind)
      : blocks_(std::move(blocks)), kind_(std::move(kind)) {}
  std::vector<std::size_t> blocks_;
  std::string kind_;
};

int grevlex_compare(std::span<const Exponent> a, std::span<const Exponent> b);

// Sparse polynomial. Terms are stored flat and sorted descending in grevlex,
// with no zero coefficients.
class MPoly {
public:
  using Elem = FiniteField::Elem;

  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}
  MPoly(RingPtr ring, Elem constant);

  static MPoly variable(RingPtr ring, std::size_t index, Exponent power = 1);
  static MPoly monomial(RingPtr ring, std::span<const Exponent> exps, Elem coeff);
  // Combines like terms and drops zeros.
  static MPoly from_terms(RingPtr ring, std::vector<std::pair<Exponents, Elem>> terms);

  const RingPtr &ring() const noexcept { return ring_; }
  const FiniteField &field() const noexcept { return *ring_->field(); }
  std::size_t nvars() const noexcept { return ring_->nvars(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_one() const { return is_constant() && !is_zero() && coeffs_[0] == 1; }
  Elem constant_term() const;

  std::span<const Exponent> exps(std::size_t i) const {
    return {exps_.data() + i * nvars(), nvars()};
  }
  Elem coeff(std::size_t i) const { return coeffs_[i]; }

  // Leading data under grevlex.
  std::span<const Exponent> lead_exps() const { return exps(0); }
  Elem lead_coeff() const { return coeffs_.empty() ? 0 : coeffs_[0]; }

  Exponent degree(std::size_t var) const;
  Exponent total_degree() const;
  // Bitmask-free support test.
  bool uses_variable(std::size_t var) const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly &a, const MPoly &b);
  friend MPoly operator-(const MPoly &a, const MPoly &b);
  friend MPoly operator*(const MPoly &a, const MPoly &b);
  MPoly &operator+=(const MPoly &b) { return *this = *this + b; }
  MPoly &operator-=(const MPoly &b) { return *this = *this - b; }
  MPoly &operator*=(const MPoly &b) { return *this = *this * b; }

  MPoly scale(Elem c) const;
  MPoly mul_term(std::span<const Exponent> exps, Elem c) const;
  MPoly pow(std::uint64_t e) const;
  MPoly monic() const;
  MPoly derivative(std::size_t var) const;
  // Raises every coefficient to the p-th power and multiplies exponents by
  // p: the Frobenius image u^p.
  MPoly frobenius() const;

  // Coefficients with respect to one variable (the variable's exponent is
  // zeroed in each coefficient).
  std::map<Exponent, MPoly> coefficients_in(std::size_t var) const;

  // Moves into another ring. mapping[i] is the target index of variable i.
  MPoly remap(RingPtr target, std::span<const std::size_t> mapping) const;

  // Terms sorted descending in grevlex; coefficients rendered in the field.
  std::string to_string() const;

  friend bool operator==(const MPoly &a, const MPoly &b);

  // Used by the flat constructors in other modules.
  void push_back_unchecked(std::span<const Exponent> e, Elem c) {
    exps_.insert(exps_.end(), e.begin(), e.end());
    coeffs_.push_back(c);
  }

private:
  RingPtr ring_;
  std::vector<Exponent> exps_;
  std::vector<Elem> coeffs_;
};

// Canonical ordering of polynomials by their term sequence (grevlex), used
// to sort bases deterministically.
int poly_compare(const MPoly &a, const MPoly &b);

// Exact quotient a / b. Throws DomainError("NotDivisible") when b does not
// divide a and DivisionByZero when b == 0.
MPoly divide_exact(const MPoly &a, const MPoly &b);
// Division with remainder by a single polynomial under grevlex.
std::pair<MPoly, MPoly> divide(const MPoly &a, const MPoly &b);

// Monic gcd (zero only when both inputs are zero).
MPoly gcd(const MPoly &a, const MPoly &b);

// Groups monomials by exponent residues mod p: u = sum_I x^I * u_I^p.
// Only nonzero components are returned.
std::map<MultiIndex, MPoly> p_power_decompose(const MPoly &u);

} // namespace pcl
