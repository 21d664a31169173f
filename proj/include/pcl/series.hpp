#pragma once

#include "pcl/function_field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcl {

// Power series over F_q known modulo t^N. Values of valuation >= N are
// zero at this precision.
class TruncSeries {
public:
  using Elem = FiniteField::Elem;

  TruncSeries(FieldPtr field, std::size_t precision);
  TruncSeries(FieldPtr field, std::size_t precision, std::vector<Elem> coeffs);
  static TruncSeries constant(FieldPtr field, std::size_t precision, Elem c);
  // t^k
  static TruncSeries monomial(FieldPtr field, std::size_t precision, std::size_t k, Elem c = 1);

  const FieldPtr &field() const noexcept { return field_; }
  std::size_t precision() const noexcept { return coeffs_.size(); }
  const std::vector<Elem> &coeffs() const noexcept { return coeffs_; }
  Elem operator[](std::size_t i) const { return coeffs_[i]; }
  // In [0, precision]; precision means zero mod t^N.
  std::size_t valuation() const;
  bool is_zero() const { return valuation() == precision(); }
  bool is_unit() const { return precision() > 0 && coeffs_[0] != 0; }

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries &a, const TruncSeries &b);
  friend TruncSeries operator-(const TruncSeries &a, const TruncSeries &b);
  friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b);
  TruncSeries scale(Elem c) const;
  TruncSeries pow(std::uint64_t e) const;
  // Throws DomainError("NotAUnit") unless the constant term is nonzero.
  TruncSeries inverse() const;
  // Drops coefficients at and above n (n <= precision).
  TruncSeries truncate(std::size_t n) const;

  // Ascending powers of t, zero terms omitted; "0" when zero.
  std::string to_string(const std::string &var = "t") const;

  friend bool operator==(const TruncSeries &a, const TruncSeries &b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

private:
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

// Value of a polynomial with all variables replaced by series.
TruncSeries evaluate(const MPoly &f, const std::vector<TruncSeries> &at, std::size_t precision);

// K -> F_q[[t]] mod t^N: t_1 -> c_1 + t and t_i -> c_i + sum_{j>=1} t^(j^i)
// for i >= 2 (lacunary, so the images stay algebraically independent).
class SeriesEmbedding {
public:
  SeriesEmbedding(AmbientPtr ambient, std::vector<FiniteField::Elem> center, std::size_t precision);

  const std::vector<FiniteField::Elem> &center() const noexcept { return center_; }
  std::size_t precision() const noexcept { return precision_; }
  const std::vector<TruncSeries> &images() const noexcept { return images_; }

  // Throws DenominatorVanishes when den(x) maps to a non-unit.
  TruncSeries operator()(const RatFunc &x) const;
  bool defined_at(const RatFunc &x) const;

private:
  AmbientPtr ambient_;
  std::vector<FiniteField::Elem> center_;
  std::size_t precision_;
  std::vector<TruncSeries> images_;
};

// f_1..f_r in variables (x-block, y-block) with r = |y-block|.
class NewtonSystem {
public:
  NewtonSystem(std::vector<MPoly> polys, std::size_t x_count);

  const std::vector<MPoly> &polys() const noexcept { return polys_; }
  std::size_t x_count() const noexcept { return x_count_; }
  std::size_t y_count() const noexcept { return polys_.size(); }
  // d f_i / d y_j
  const MPoly &jacobian(std::size_t i, std::size_t j) const { return jac_[i][j]; }

  std::vector<TruncSeries> residual(const std::vector<TruncSeries> &x, const std::vector<TruncSeries> &y) const;
  std::vector<std::vector<TruncSeries>> jacobian_at(const std::vector<TruncSeries> &x,
                                                    const std::vector<TruncSeries> &y) const;

private:
  std::vector<MPoly> polys_;
  std::size_t x_count_;
  std::vector<std::vector<MPoly>> jac_;
};

// Determinant of a square series matrix.
TruncSeries determinant(std::vector<std::vector<TruncSeries>> m);

struct HenselResult {
  std::vector<TruncSeries> y;
  std::size_t steps = 0;
  // Residual valuation before the first step and after each step.
  std::vector<std::size_t> residual_valuations;
  std::size_t jacobian_valuation = 0;
};

// Newton iteration to a zero modulo t^N. Throws NonUnitJacobian unless the
// Jacobian determinant at (x0, y0) has valuation 0, DomainError when the
// starting residual is not in tM, NoConvergence when precision stops growing.
HenselResult hensel_newton(const NewtonSystem &sys, const std::vector<TruncSeries> &x0,
                           const std::vector<TruncSeries> &y0, std::size_t precision);

} // namespace pcl
