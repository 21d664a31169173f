#pragma once

#include "pcl/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pcl {

// K = F_q(t_1, ..., t_n) with canonical p-basis (t_1, ..., t_n).
class AmbientField {
public:
  AmbientField(FieldPtr field, std::vector<std::string> vars);

  const FieldPtr &field() const noexcept { return field_; }
  const RingPtr &ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_->nvars(); }
  std::uint32_t characteristic() const noexcept { return field_->characteristic(); }
  const std::vector<std::string> &var_names() const noexcept { return ring_->names(); }

private:
  FieldPtr field_;
  RingPtr ring_;
};

using AmbientPtr = std::shared_ptr<const AmbientField>;

AmbientPtr make_ambient(FieldPtr field, std::vector<std::string> vars);

// Normalized element num/den of K: gcd(num, den) = 1 and den monic in
// grevlex; zero is 0/1. Equality is representation equality.
class RatFunc {
public:
  explicit RatFunc(AmbientPtr ambient);
  RatFunc(AmbientPtr ambient, FiniteField::Elem c);
  RatFunc(AmbientPtr ambient, MPoly num);
  RatFunc(AmbientPtr ambient, MPoly num, MPoly den); // normalizes; throws DivisionByZero

  static RatFunc variable(AmbientPtr ambient, std::size_t index);

  const AmbientPtr &ambient() const noexcept { return ambient_; }
  const MPoly &num() const noexcept { return num_; }
  const MPoly &den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
  RatFunc &operator+=(const RatFunc &b) { return *this = *this + b; }
  RatFunc &operator-=(const RatFunc &b) { return *this = *this - b; }
  RatFunc &operator*=(const RatFunc &b) { return *this = *this * b; }

  RatFunc inverse() const;
  RatFunc pow(std::int64_t e) const;
  // x^p without gcd work.
  RatFunc frobenius() const;

  // "num" or "num/den"; multi-term parts are parenthesized.
  std::string to_string() const;

  friend bool operator==(const RatFunc &a, const RatFunc &b);

private:
  AmbientPtr ambient_;
  MPoly num_;
  MPoly den_;
};

enum class RatOp { Add, Sub, Mul, Div, Inv };
RatFunc rat_arith(RatOp op, const RatFunc &x, const std::optional<RatFunc> &y = std::nullopt);

// Coordinates over K^(p): x = sum_I t^I * coords[I]^p, indexed densely by
// MultiIndex::linear over (t_1..t_n).
struct PCoordinates {
  std::uint32_t p = 0;
  std::size_t n = 0;
  std::vector<RatFunc> coords;

  const RatFunc &at(const MultiIndex &idx) const { return coords.at(idx.linear(p)); }
};

PCoordinates p_coordinates(const RatFunc &x);

// y with y^p == x when x is a p-th power in K.
std::optional<RatFunc> pth_root(const RatFunc &x);

// Exact linear systems over K.
struct NoSolution {};
struct Underdetermined {
  std::vector<std::vector<RatFunc>> nullspace; // basis of the homogeneous solutions
};
using SolveResult = std::variant<std::vector<RatFunc>, NoSolution, Underdetermined>;

// Fraction-free elimination on the denominator-cleared system with row
// content stripping, then back substitution. Dimensions must agree.
SolveResult linear_solve(const std::vector<std::vector<RatFunc>> &M, const std::vector<RatFunc> &v);

// Rank of a matrix over K (same elimination).
std::size_t matrix_rank(const std::vector<std::vector<RatFunc>> &M);

} // namespace pcl
