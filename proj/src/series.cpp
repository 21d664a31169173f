#include "pcl/series.hpp"

#include "pcl/errors.hpp"

#include <algorithm>
#include <functional>

namespace pcl {

namespace {

void check_same(const TruncSeries &a, const TruncSeries &b) {
  if (a.field() != b.field())
    throw SpecMismatch("series over different fields");
}

} // namespace

TruncSeries::TruncSeries(FieldPtr field, std::size_t precision)
    : field_(std::move(field)), coeffs_(precision, 0) {}

TruncSeries::TruncSeries(FieldPtr field, std::size_t precision, std::vector<Elem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  coeffs_.resize(precision, 0);
}

TruncSeries TruncSeries::constant(FieldPtr field, std::size_t precision, Elem c) {
  TruncSeries s(std::move(field), precision);
  if (precision > 0)
    s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(FieldPtr field, std::size_t precision, std::size_t k, Elem c) {
  TruncSeries s(std::move(field), precision);
  if (k < precision)
    s.coeffs_[k] = c;
  return s;
}

std::size_t TruncSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      return i;
  return coeffs_.size();
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(field_, precision());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = field_->neg(coeffs_[i]);
  return r;
}

TruncSeries operator+(const TruncSeries &a, const TruncSeries &b) {
  check_same(a, b);
  const std::size_t n = std::min(a.precision(), b.precision());
  TruncSeries r(a.field_, n);
  for (std::size_t i = 0; i < n; ++i)
    r.coeffs_[i] = a.field_->add(a.coeffs_[i], b.coeffs_[i]);
  return r;
}

TruncSeries operator-(const TruncSeries &a, const TruncSeries &b) { return a + (-b); }

TruncSeries operator*(const TruncSeries &a, const TruncSeries &b) {
  check_same(a, b);
  // Both inputs have nonnegative valuation, so the product is known to the
  // smaller precision.
  const std::size_t n = std::min(a.precision(), b.precision());
  const auto &f = *a.field_;
  TruncSeries r(a.field_, n);
  const std::size_t va = a.valuation(), vb = b.valuation();
  for (std::size_t i = va; i < n; ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = vb; i + j < n; ++j)
      if (b.coeffs_[j] != 0)
        r.coeffs_[i + j] = f.add(r.coeffs_[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
  }
  return r;
}

TruncSeries TruncSeries::scale(Elem c) const {
  TruncSeries r(field_, precision());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = field_->mul(coeffs_[i], c);
  return r;
}

TruncSeries TruncSeries::pow(std::uint64_t e) const {
  TruncSeries result = constant(field_, precision(), 1);
  TruncSeries base = *this;
  while (e > 0) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return result;
}

TruncSeries TruncSeries::inverse() const {
  if (!is_unit())
    throw DomainError("NotAUnit", "series with zero constant term has no inverse");
  const auto &f = *field_;
  const std::size_t n = precision();
  TruncSeries r(field_, n);
  const Elem c0 = f.inv(coeffs_[0]);
  r.coeffs_[0] = c0;
  for (std::size_t k = 1; k < n; ++k) {
    Elem acc = 0;
    for (std::size_t i = 1; i <= k; ++i)
      if (coeffs_[i] != 0)
        acc = f.add(acc, f.mul(coeffs_[i], r.coeffs_[k - i]));
    r.coeffs_[k] = f.neg(f.mul(acc, c0));
  }
  return r;
}

TruncSeries TruncSeries::truncate(std::size_t n) const {
  return TruncSeries(field_, std::min(n, precision()),
                     std::vector<Elem>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(std::min(n, precision()))));
}

std::string TruncSeries::to_string(const std::string &var) const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Elem c = coeffs_[i];
    if (c == 0)
      continue;
    std::string term;
    const std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0)
      term = field_->render(c);
    else if (c == 1)
      term = mono;
    else
      term = (field_->render_is_compound(c) ? "(" + field_->render(c) + ")" : field_->render(c)) + "*" + mono;
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

TruncSeries evaluate(const MPoly &f, const std::vector<TruncSeries> &at, std::size_t precision) {
  const auto field = f.ring()->field();
  if (at.size() != f.nvars())
    throw SpecMismatch("evaluation point has the wrong number of coordinates");
  // powers[v][e] = at[v]^e, filled on demand
  std::vector<std::vector<TruncSeries>> powers(f.nvars());
  auto power = [&](std::size_t v, Exponent e) -> const TruncSeries & {
    auto &pw = powers[v];
    if (pw.empty())
      pw.push_back(TruncSeries::constant(field, precision, 1));
    while (pw.size() <= e)
      pw.push_back(pw.back() * at[v]);
    return pw[e];
  };
  TruncSeries sum(field, precision);
  for (std::size_t i = 0; i < f.size(); ++i) {
    TruncSeries term = TruncSeries::constant(field, precision, f.coeff(i));
    const auto e = f.exps(i);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0)
        term = term * power(v, e[v]);
    sum = sum + term;
  }
  return sum;
}

SeriesEmbedding::SeriesEmbedding(AmbientPtr ambient, std::vector<FiniteField::Elem> center, std::size_t precision)
    : ambient_(std::move(ambient)), center_(std::move(center)), precision_(precision) {
  const auto &field = ambient_->field();
  if (center_.size() != ambient_->nvars())
    throw SpecMismatch("center needs one coordinate per variable");
  for (std::size_t i = 0; i < center_.size(); ++i) {
    TruncSeries s = TruncSeries::constant(field, precision, center_[i]);
    if (i == 0) {
      s = s + TruncSeries::monomial(field, precision, 1);
    } else {
      for (std::size_t j = 1;; ++j) {
        std::size_t e = 1;
        for (std::size_t k = 0; k <= i; ++k)
          e *= j;
        if (e >= precision)
          break;
        s = s + TruncSeries::monomial(field, precision, e);
      }
    }
    images_.push_back(std::move(s));
  }
}

bool SeriesEmbedding::defined_at(const RatFunc &x) const {
  return evaluate(x.den(), images_, precision_).is_unit();
}

TruncSeries SeriesEmbedding::operator()(const RatFunc &x) const {
  const TruncSeries den = evaluate(x.den(), images_, precision_);
  if (!den.is_unit())
    throw DenominatorVanishes("denominator " + x.den().to_string() + " vanishes at the embedding center");
  return evaluate(x.num(), images_, precision_) * den.inverse();
}

NewtonSystem::NewtonSystem(std::vector<MPoly> polys, std::size_t x_count)
    : polys_(std::move(polys)), x_count_(x_count) {
  for (const auto &f : polys_) {
    if (f.nvars() != x_count_ + polys_.size())
      throw SpecMismatch("system needs as many equations as y variables");
    std::vector<MPoly> row;
    for (std::size_t j = 0; j < polys_.size(); ++j)
      row.push_back(f.derivative(x_count_ + j));
    jac_.push_back(std::move(row));
  }
}

namespace {

std::vector<TruncSeries> concat(const std::vector<TruncSeries> &x, const std::vector<TruncSeries> &y) {
  std::vector<TruncSeries> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::size_t min_precision(const std::vector<TruncSeries> &v, std::size_t cap) {
  for (const auto &s : v)
    cap = std::min(cap, s.precision());
  return cap;
}

// Solves m * z = rhs when det(m) is a unit; pivots on units.
std::vector<TruncSeries> solve_unit(std::vector<std::vector<TruncSeries>> m, std::vector<TruncSeries> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !m[piv][col].is_unit())
      ++piv;
    if (piv == n)
      throw NonUnitJacobian("Jacobian is not invertible over the series ring");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    const TruncSeries inv = m[col][col].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero())
        continue;
      const TruncSeries factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c)
        m[r][c] = m[r][c] - factor * m[col][c];
      rhs[r] = rhs[r] - factor * rhs[col];
    }
  }
  std::vector<TruncSeries> z;
  for (std::size_t i = 0; i < n; ++i)
    z.push_back(rhs[i] * m[i][i].inverse());
  return z;
}

} // namespace

std::vector<TruncSeries> NewtonSystem::residual(const std::vector<TruncSeries> &x,
                                                const std::vector<TruncSeries> &y) const {
  const auto at = concat(x, y);
  const std::size_t n = min_precision(at, SIZE_MAX);
  std::vector<TruncSeries> out;
  for (const auto &f : polys_)
    out.push_back(evaluate(f, at, n));
  return out;
}

std::vector<std::vector<TruncSeries>> NewtonSystem::jacobian_at(const std::vector<TruncSeries> &x,
                                                                const std::vector<TruncSeries> &y) const {
  const auto at = concat(x, y);
  const std::size_t n = min_precision(at, SIZE_MAX);
  std::vector<std::vector<TruncSeries>> out;
  for (const auto &row : jac_) {
    std::vector<TruncSeries> r;
    for (const auto &d : row)
      r.push_back(evaluate(d, at, n));
    out.push_back(std::move(r));
  }
  return out;
}

TruncSeries determinant(std::vector<std::vector<TruncSeries>> m) {
  const std::size_t n = m.size();
  if (n == 0)
    throw DomainError("EmptyMatrix", "determinant of an empty matrix needs a field");
  const auto field = m[0][0].field();
  const std::size_t prec = m[0][0].precision();
  TruncSeries det = TruncSeries::constant(field, prec, 1);
  // Unit pivots when available; otherwise expand fraction-free along the
  // column (Bareiss would need exact division, so fall back to cofactors).
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !m[piv][col].is_unit())
      ++piv;
    if (piv == n) {
      // No unit pivot: the determinant is in tM; compute by cofactor
      // expansion of the remaining block.
      std::vector<std::vector<TruncSeries>> rest;
      for (std::size_t r = col; r < n; ++r)
        rest.emplace_back(m[r].begin() + static_cast<std::ptrdiff_t>(col), m[r].end());
      std::function<TruncSeries(const std::vector<std::vector<TruncSeries>> &)> cof =
          [&](const std::vector<std::vector<TruncSeries>> &a) -> TruncSeries {
        if (a.size() == 1)
          return a[0][0];
        TruncSeries s(field, prec);
        for (std::size_t j = 0; j < a.size(); ++j) {
          std::vector<std::vector<TruncSeries>> minor;
          for (std::size_t r = 1; r < a.size(); ++r) {
            std::vector<TruncSeries> row;
            for (std::size_t c = 0; c < a.size(); ++c)
              if (c != j)
                row.push_back(a[r][c]);
            minor.push_back(std::move(row));
          }
          const TruncSeries t = a[0][j] * cof(minor);
          s = (j % 2 == 0) ? s + t : s - t;
        }
        return s;
      };
      return det * cof(rest);
    }
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    const TruncSeries inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      const TruncSeries factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c)
        m[r][c] = m[r][c] - factor * m[col][c];
    }
  }
  return det;
}

HenselResult hensel_newton(const NewtonSystem &sys, const std::vector<TruncSeries> &x0,
                           const std::vector<TruncSeries> &y0, std::size_t precision) {
  if (x0.size() != sys.x_count() || y0.size() != sys.y_count())
    throw SpecMismatch("starting point does not match the system");
  auto lift = [&](const std::vector<TruncSeries> &v) {
    std::vector<TruncSeries> out;
    for (const auto &s : v) {
      if (s.precision() < precision)
        throw DomainError("InsufficientPrecision", "starting series are known to fewer than N terms");
      out.push_back(s.truncate(precision));
    }
    return out;
  };
  const auto x = lift(x0);
  HenselResult res;
  res.y = lift(y0);
  if (sys.y_count() == 0)
    return res;

  auto residual_valuation = [&](const std::vector<TruncSeries> &f) {
    std::size_t v = precision;
    for (const auto &s : f)
      v = std::min(v, s.valuation());
    return v;
  };

  auto f = sys.residual(x, res.y);
  std::size_t v = residual_valuation(f);
  if (v < 1)
    throw DomainError("NotApproximateZero", "starting point is not a zero modulo t");
  res.jacobian_valuation = determinant(sys.jacobian_at(x, res.y)).valuation();
  if (res.jacobian_valuation != 0)
    throw NonUnitJacobian("Jacobian determinant has valuation " + std::to_string(res.jacobian_valuation));
  res.residual_valuations.push_back(v);
  while (v < precision) {
    const auto delta = solve_unit(sys.jacobian_at(x, res.y), f);
    for (std::size_t i = 0; i < res.y.size(); ++i)
      res.y[i] = res.y[i] - delta[i];
    ++res.steps;
    f = sys.residual(x, res.y);
    const std::size_t nv = residual_valuation(f);
    if (nv <= v)
      throw NoConvergence("residual valuation stuck at " + std::to_string(v));
    v = nv;
    res.residual_valuations.push_back(v);
  }
  return res;
}

} // namespace pcl
