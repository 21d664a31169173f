#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pcl {

// F_q with q = p^m. Elements are encoded as integers in [0, q): the base-p
// digits are the coefficients of 1, alpha, alpha^2, ... modulo the fixed
// defining polynomial. Instances are interned, so two fields are equal iff
// they are the same object.
class FiniteField {
public:
  using Elem = std::uint32_t;

  static constexpr unsigned kMaxDegree = 4;
  static constexpr std::uint64_t kMaxPrime = 2147483647ULL;

  // Throws DomainError for non-prime p, m == 0, or m > kMaxDegree.
  static std::shared_ptr<const FiniteField> get(std::uint64_t p, unsigned m = 1);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  std::uint64_t order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return m_ == 1; }

  // Monic defining polynomial, coefficients from x^0 up to x^m.
  const std::vector<std::uint32_t> &modulus() const noexcept { return modulus_; }

  Elem from_int(std::int64_t v) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;
  std::vector<std::uint32_t> digits(Elem x) const;

  // The class of x modulo the defining polynomial; equals 1 in prime fields
  // (there is no adjoined root to name).
  Elem generator() const noexcept { return m_ == 1 ? 1 : p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const; // throws DivisionByZero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  // y with y^p == a; equals a^(p^(m-1)).
  Elem frobenius_inv(Elem a) const;

  // "GF(p)" or "GF(p^m)".
  std::string name() const;
  // Prime fields: decimal representative. Extensions: polynomial in alpha.
  std::string render(Elem a) const;
  // True when render(a) needs parentheses as a product factor.
  bool render_is_compound(Elem a) const;

  static constexpr const char *kGeneratorName = "alpha";

private:
  FiniteField(std::uint32_t p, unsigned m);
  Elem mul_poly(Elem a, Elem b) const;

  std::uint32_t p_;
  unsigned m_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_; // p^i, i <= m
  std::vector<Elem> exp_;            // exp_[k] = g^k (small fields only)
  std::vector<std::uint32_t> log_;   // log_[x] for x != 0
  std::vector<Elem> inv_;            // prime fields with small p
  std::vector<Elem> add_;            // q*q table for q <= 256, m > 1
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Field element carrying its field, for the value-level API.
class FqElem {
public:
  FqElem(FieldPtr field, FiniteField::Elem v) : field_(std::move(field)), v_(v) {}

  const FieldPtr &field() const noexcept { return field_; }
  FiniteField::Elem value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  friend FqElem operator+(const FqElem &a, const FqElem &b);
  friend FqElem operator-(const FqElem &a, const FqElem &b);
  friend FqElem operator*(const FqElem &a, const FqElem &b);
  friend FqElem operator/(const FqElem &a, const FqElem &b);
  FqElem operator-() const { return {field_, field_->neg(v_)}; }
  FqElem inverse() const { return {field_, field_->inv(v_)}; }
  FqElem pow(std::uint64_t e) const { return {field_, field_->pow(v_, e)}; }

  friend bool operator==(const FqElem &a, const FqElem &b) {
    return a.field_ == b.field_ && a.v_ == b.v_;
  }

  std::string to_string() const { return field_->render(v_); }

private:
  FieldPtr field_;
  FiniteField::Elem v_;
};

enum class FqOp { Add, Sub, Mul, Inv };

// Exact arithmetic; y is required for binary ops. Throws SpecMismatch when
// operands come from different fields and DivisionByZero on inv(0).
FqElem fq_arith(FqOp op, const FqElem &x, const std::optional<FqElem> &y = std::nullopt);

FqElem frobenius_inv(const FqElem &x);

// Parses "GF(p)" or "GF(p^m)" (also "GF(q)" for prime powers q).
FieldPtr parse_field_spec(const std::string &text);

} // namespace pcl
