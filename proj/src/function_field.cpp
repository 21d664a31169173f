#include "pcl/function_field.hpp"

#include "pcl/errors.hpp"

#include <algorithm>

namespace pcl {

AmbientField::AmbientField(FieldPtr field, std::vector<std::string> vars)
    : field_(field), ring_(make_ring(std::move(field), std::move(vars))) {}

AmbientPtr make_ambient(FieldPtr field, std::vector<std::string> vars) {
  return std::make_shared<const AmbientField>(std::move(field), std::move(vars));
}

namespace {
void check_ambient(const RatFunc &a, const RatFunc &b) {
  if (a.ambient() != b.ambient() && !(*a.ambient()->ring() == *b.ambient()->ring()))
    throw SpecMismatch("rational functions from different ambient fields");
}
} // namespace

RatFunc::RatFunc(AmbientPtr ambient)
    : ambient_(ambient), num_(ambient->ring()), den_(ambient->ring(), 1) {}

RatFunc::RatFunc(AmbientPtr ambient, FiniteField::Elem c)
    : ambient_(ambient), num_(ambient->ring(), c), den_(ambient->ring(), 1) {}

RatFunc::RatFunc(AmbientPtr ambient, MPoly num)
    : ambient_(ambient), num_(std::move(num)), den_(ambient->ring(), 1) {
  if (!same_ring(num_.ring(), ambient_->ring()))
    throw SpecMismatch("numerator outside the ambient polynomial ring");
}

RatFunc::RatFunc(AmbientPtr ambient, MPoly num, MPoly den)
    : ambient_(ambient), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw DivisionByZero("rational function with zero denominator");
  if (!same_ring(num_.ring(), ambient_->ring()) || !same_ring(den_.ring(), ambient_->ring()))
    throw SpecMismatch("numerator or denominator outside the ambient polynomial ring");
  if (num_.is_zero()) {
    den_ = MPoly(ambient_->ring(), 1);
    return;
  }
  if (!den_.is_constant()) {
    const MPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  const auto lc = den_.lead_coeff();
  if (lc != 1) {
    const auto inv = num_.field().inv(lc);
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

RatFunc RatFunc::variable(AmbientPtr ambient, std::size_t index) {
  auto ring = ambient->ring();
  return RatFunc(std::move(ambient), MPoly::variable(ring, index));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b) {
  check_ambient(a, b);
  if (a.is_zero())
    return b;
  if (b.is_zero())
    return a;
  if (a.den_ == b.den_)
    return RatFunc(a.ambient_, a.num_ + b.num_, a.den_);
  if (a.den_.is_one() || b.den_.is_one()) {
    // Coprime denominators: the sum is already reduced.
    RatFunc r(a.ambient_);
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    if (r.num_.is_zero())
      r.den_ = MPoly(a.ambient_->ring(), 1);
    return r;
  }
  // Only the common part of the denominators can cancel.
  const MPoly g = gcd(a.den_, b.den_);
  const MPoly da = divide_exact(a.den_, g), db = divide_exact(b.den_, g);
  MPoly n = a.num_ * db + b.num_ * da;
  RatFunc r(a.ambient_);
  if (n.is_zero())
    return r;
  MPoly d = da * b.den_;
  if (!g.is_one()) {
    const MPoly h = gcd(n, g);
    if (!h.is_one()) {
      n = divide_exact(n, h);
      d = divide_exact(d, h);
    }
  }
  const auto lc = d.lead_coeff();
  if (lc != 1) {
    const auto inv = d.field().inv(lc);
    n = n.scale(inv);
    d = d.scale(inv);
  }
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b) {
  check_ambient(a, b);
  if (a.is_zero() || b.is_zero())
    return RatFunc(a.ambient_);
  if (a.is_polynomial() && b.is_polynomial()) {
    RatFunc r(a.ambient_);
    r.num_ = a.num_ * b.num_;
    return r;
  }
  // Cross-cancel so the product is already reduced up to scaling.
  const MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  MPoly n = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
  MPoly d = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
  RatFunc r(a.ambient_);
  const auto lc = d.lead_coeff();
  if (lc != 1) {
    const auto inv = d.field().inv(lc);
    n = n.scale(inv);
    d = d.scale(inv);
  }
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero())
    throw DivisionByZero("inverse of zero rational function");
  return RatFunc(ambient_, den_, num_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b) { return a * b.inverse(); }

RatFunc RatFunc::pow(std::int64_t e) const {
  if (e < 0)
    return inverse().pow(-e);
  RatFunc r(ambient_);
  r.num_ = num_.pow(static_cast<std::uint64_t>(e));
  r.den_ = den_.pow(static_cast<std::uint64_t>(e));
  if (e == 0) {
    r.num_ = MPoly(ambient_->ring(), 1);
    r.den_ = MPoly(ambient_->ring(), 1);
  }
  return r;
}

RatFunc RatFunc::frobenius() const {
  RatFunc r(ambient_);
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();
  return r;
}

std::string RatFunc::to_string() const {
  // Anything beyond a bare atom like t^3 or alpha is grouped, so a constant
  // numerator "alpha + 1" or a monomial denominator s*t stays unambiguous.
  auto wrap = [](const MPoly &p) {
    std::string s = p.to_string();
    const bool atom = s.find_first_of(" +*()") == std::string::npos;
    return atom ? s : "(" + s + ")";
  };
  if (den_.is_one())
    return num_.to_string();
  return wrap(num_) + "/" + wrap(den_);
}

bool operator==(const RatFunc &a, const RatFunc &b) {
  return (a.ambient_ == b.ambient_ || *a.ambient_->ring() == *b.ambient_->ring()) && a.num_ == b.num_ &&
         a.den_ == b.den_;
}

RatFunc rat_arith(RatOp op, const RatFunc &x, const std::optional<RatFunc> &y) {
  if (op == RatOp::Inv)
    return x.inverse();
  if (!y)
    throw DomainError("MissingOperand", "binary operation needs two operands");
  switch (op) {
  case RatOp::Add:
    return x + *y;
  case RatOp::Sub:
    return x - *y;
  case RatOp::Mul:
    return x * *y;
  case RatOp::Div:
    return x / *y;
  default:
    return x;
  }
}

PCoordinates p_coordinates(const RatFunc &x) {
  const auto &amb = x.ambient();
  const std::uint32_t p = amb->characteristic();
  PCoordinates out;
  out.p = p;
  out.n = amb->nvars();
  const std::size_t count = multi_index_count(p, out.n);
  out.coords.assign(count, RatFunc(amb));
  // x = f/g = f*g^(p-1) / g^p, so each component is u_I / g.
  const MPoly lifted = x.num() * x.den().pow(p - 1);
  for (auto &[idx, part] : p_power_decompose(lifted))
    out.coords[idx.linear(p)] = RatFunc(amb, part, x.den());
  return out;
}

std::optional<RatFunc> pth_root(const RatFunc &x) {
  auto pc = p_coordinates(x);
  for (std::size_t i = 1; i < pc.coords.size(); ++i)
    if (!pc.coords[i].is_zero())
      return std::nullopt;
  return pc.coords[0];
}

namespace {

using PolyRow = std::vector<MPoly>;

struct Echelon {
  std::vector<PolyRow> rows;        // augmented rows (last column = rhs when present)
  std::vector<std::size_t> pivots;  // pivot column of rows[0..rank)
};

// Sort key for pivot choice: fewer terms, then lower degree.
bool simpler(const MPoly &a, const MPoly &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a.total_degree() < b.total_degree();
}

void strip_content(PolyRow &row) {
  MPoly g(row.front().ring());
  for (const auto &e : row) {
    if (e.is_zero())
      continue;
    g = gcd(g, e);
    if (g.is_one())
      return;
  }
  if (g.is_zero() || g.is_one())
    return;
  for (auto &e : row)
    if (!e.is_zero())
      e = divide_exact(e, g);
}

Echelon eliminate(std::vector<PolyRow> rows, std::size_t ncols) {
  Echelon ech;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][col].is_zero())
        continue;
      if (!piv || simpler(rows[r][col], rows[*piv][col]))
        piv = r;
    }
    if (!piv)
      continue;
    std::swap(rows[rank], rows[*piv]);
    const MPoly pv = rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero())
        continue;
      const MPoly factor = rows[r][col];
      const MPoly g = gcd(pv, factor);
      const MPoly a = divide_exact(pv, g), b = divide_exact(factor, g);
      for (std::size_t c = col; c < rows[r].size(); ++c)
        rows[r][c] = a * rows[r][c] - b * rows[rank][c];
      strip_content(rows[r]);
    }
    ech.pivots.push_back(col);
    ++rank;
  }
  ech.rows = std::move(rows);
  return ech;
}

std::vector<PolyRow> clear_denominators(const std::vector<std::vector<RatFunc>> &M,
                                        const std::vector<RatFunc> *v, const RingPtr &ring) {
  std::vector<PolyRow> rows;
  for (std::size_t i = 0; i < M.size(); ++i) {
    MPoly l(ring, 1);
    auto absorb = [&](const RatFunc &x) {
      if (x.den().is_one())
        return;
      l = divide_exact(l * x.den(), gcd(l, x.den()));
    };
    for (const auto &x : M[i])
      absorb(x);
    if (v)
      absorb((*v)[i]);
    PolyRow row;
    for (const auto &x : M[i])
      row.push_back(divide_exact(l, x.den()) * x.num());
    if (v)
      row.push_back(divide_exact(l, (*v)[i].den()) * (*v)[i].num());
    strip_content(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Solves the echelon system with given values for free columns.
std::vector<RatFunc> back_substitute(const Echelon &ech, std::size_t ncols, const AmbientPtr &amb,
                                     const std::vector<RatFunc> &free_values, bool homogeneous) {
  std::vector<RatFunc> x(ncols, RatFunc(amb));
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : ech.pivots)
    is_pivot[c] = true;
  for (std::size_t c = 0, k = 0; c < ncols; ++c)
    if (!is_pivot[c])
      x[c] = free_values[k++];
  for (std::size_t r = ech.pivots.size(); r-- > 0;) {
    const std::size_t pc = ech.pivots[r];
    const auto &row = ech.rows[r];
    RatFunc acc = homogeneous ? RatFunc(amb) : RatFunc(amb, row[ncols]);
    for (std::size_t c = pc + 1; c < ncols; ++c)
      if (!row[c].is_zero() && !x[c].is_zero())
        acc -= RatFunc(amb, row[c]) * x[c];
    x[pc] = acc / RatFunc(amb, row[pc]);
  }
  return x;
}

} // namespace

SolveResult linear_solve(const std::vector<std::vector<RatFunc>> &M, const std::vector<RatFunc> &v) {
  if (M.size() != v.size())
    throw DomainError("DimensionMismatch", "matrix has " + std::to_string(M.size()) + " rows but vector has " +
                                               std::to_string(v.size()));
  if (M.empty())
    return std::vector<RatFunc>{};
  const std::size_t ncols = M.front().size();
  for (const auto &row : M)
    if (row.size() != ncols)
      throw DomainError("DimensionMismatch", "ragged matrix");
  const auto amb = v.front().ambient();
  auto ech = eliminate(clear_denominators(M, &v, amb->ring()), ncols);
  const std::size_t rank = ech.pivots.size();
  for (std::size_t r = rank; r < ech.rows.size(); ++r)
    if (!ech.rows[r][ncols].is_zero())
      return NoSolution{};
  if (rank < ncols) {
    Underdetermined u;
    const std::size_t nfree = ncols - rank;
    for (std::size_t k = 0; k < nfree; ++k) {
      std::vector<RatFunc> fv(nfree, RatFunc(amb));
      fv[k] = RatFunc(amb, 1);
      u.nullspace.push_back(back_substitute(ech, ncols, amb, fv, true));
    }
    return u;
  }
  return back_substitute(ech, ncols, amb, {}, false);
}

std::size_t matrix_rank(const std::vector<std::vector<RatFunc>> &M) {
  if (M.empty())
    return 0;
  const std::size_t ncols = M.front().size();
  const auto ring = M.front().empty() ? nullptr : M.front().front().ambient()->ring();
  if (!ring)
    return 0;
  return eliminate(clear_denominators(M, nullptr, ring), ncols).pivots.size();
}

} // namespace pcl
