#include "pcl/polynomial.hpp"

#include "eval_field.hpp"
#include "pcl/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace pcl {

namespace {
constexpr Exponent kMaxExponent = std::numeric_limits<std::int32_t>::max();

Exponent checked_add(Exponent a, Exponent b) {
  if (b > kMaxExponent || a > kMaxExponent - b)
    throw ExponentOverflow();
  return a + b;
}

bool divides(std::span<const Exponent> a, std::span<const Exponent> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}
} // namespace

PolyRing::PolyRing(FieldPtr field, std::vector<std::string> names)
    : field_(std::move(field)), names_(std::move(names)) {}

int PolyRing::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> names) {
  return std::make_shared<const PolyRing>(std::move(field), std::move(names));
}

bool same_ring(const RingPtr &a, const RingPtr &b) { return a == b || *a == *b; }

MonomialOrder MonomialOrder::block(std::size_t nvars, std::size_t split) {
  if (split == 0 || split >= nvars)
    return MonomialOrder({nvars}, "grevlex");
  return MonomialOrder({split, nvars - split}, "block");
}

std::size_t MonomialOrder::nvars() const noexcept {
  return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

int grevlex_compare(std::span<const Exponent> a, std::span<const Exponent> b) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db)
    return da > db ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i])
      return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(std::span<const Exponent> a, std::span<const Exponent> b) const {
  std::size_t off = 0;
  for (auto len : blocks_) {
    const int c = grevlex_compare(a.subspan(off, len), b.subspan(off, len));
    if (c != 0)
      return c;
    off += len;
  }
  return 0;
}

MPoly::MPoly(RingPtr ring, Elem constant) : ring_(std::move(ring)) {
  if (constant != 0) {
    exps_.assign(nvars(), 0);
    coeffs_.push_back(constant);
  }
}

MPoly MPoly::variable(RingPtr ring, std::size_t index, Exponent power) {
  Exponents e(ring->nvars(), 0);
  e.at(index) = power;
  return monomial(std::move(ring), e, 1);
}

MPoly MPoly::monomial(RingPtr ring, std::span<const Exponent> exps, Elem coeff) {
  MPoly r(std::move(ring));
  if (coeff != 0)
    r.push_back_unchecked(exps, coeff);
  return r;
}

MPoly MPoly::from_terms(RingPtr ring, std::vector<std::pair<Exponents, Elem>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto &x, const auto &y) { return grevlex_compare(x.first, y.first) > 0; });
  MPoly r(ring);
  const auto &f = *ring->field();
  for (std::size_t i = 0; i < terms.size();) {
    Elem c = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j)
      c = f.add(c, terms[j].second);
    if (c != 0)
      r.push_back_unchecked(terms[i].first, c);
    i = j;
  }
  return r;
}

bool MPoly::is_constant() const {
  if (coeffs_.empty())
    return true;
  if (coeffs_.size() > 1)
    return false;
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

MPoly::Elem MPoly::constant_term() const {
  if (coeffs_.empty())
    return 0;
  // Constant term is the last one in grevlex.
  const auto e = exps(size() - 1);
  return std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; }) ? coeffs_.back() : 0;
}

Exponent MPoly::degree(std::size_t var) const {
  Exponent d = 0;
  for (std::size_t i = 0; i < size(); ++i)
    d = std::max(d, exps(i)[var]);
  return d;
}

Exponent MPoly::total_degree() const {
  // Leading term has maximal degree in grevlex.
  if (is_zero())
    return 0;
  Exponent d = 0;
  for (auto e : lead_exps())
    d += e;
  return d;
}

bool MPoly::uses_variable(std::size_t var) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (exps(i)[var] != 0)
      return true;
  return false;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto &c : r.coeffs_)
    c = field().neg(c);
  return r;
}

namespace {
// Merge a + s*b for polynomials sorted descending in grevlex.
MPoly merge_add(const MPoly &a, const MPoly &b, bool subtract) {
  if (!same_ring(a.ring(), b.ring()))
    throw SpecMismatch("polynomials from different rings");
  const auto &f = a.field();
  MPoly r(a.ring());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size())
      c = -1;
    else if (j == b.size())
      c = 1;
    else
      c = grevlex_compare(a.exps(i), b.exps(j));
    if (c > 0) {
      r.push_back_unchecked(a.exps(i), a.coeff(i));
      ++i;
    } else if (c < 0) {
      r.push_back_unchecked(b.exps(j), subtract ? f.neg(b.coeff(j)) : b.coeff(j));
      ++j;
    } else {
      const auto s = subtract ? f.sub(a.coeff(i), b.coeff(j)) : f.add(a.coeff(i), b.coeff(j));
      if (s != 0)
        r.push_back_unchecked(a.exps(i), s);
      ++i;
      ++j;
    }
  }
  return r;
}
} // namespace

MPoly operator+(const MPoly &a, const MPoly &b) { return merge_add(a, b, false); }
MPoly operator-(const MPoly &a, const MPoly &b) { return merge_add(a, b, true); }

MPoly operator*(const MPoly &a, const MPoly &b) {
  if (!same_ring(a.ring(), b.ring()))
    throw SpecMismatch("polynomials from different rings");
  if (a.is_zero() || b.is_zero())
    return MPoly(a.ring());
  if (b.size() == 1)
    return a.mul_term(b.exps(0), b.coeff(0));
  if (a.size() == 1)
    return b.mul_term(a.exps(0), a.coeff(0));
  const std::size_t n = a.nvars();
  const auto &f = a.field();
  const std::size_t count = a.size() * b.size();
  std::vector<Exponent> buf(count * n);
  std::vector<MPoly::Elem> cs(count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j, ++k) {
      const auto ea = a.exps(i), eb = b.exps(j);
      for (std::size_t v = 0; v < n; ++v)
        buf[k * n + v] = checked_add(ea[v], eb[v]);
      cs[k] = f.mul(a.coeff(i), b.coeff(j));
    }
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  auto span_of = [&](std::size_t t) { return std::span<const Exponent>(buf.data() + t * n, n); };
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return grevlex_compare(span_of(x), span_of(y)) > 0; });
  MPoly r(a.ring());
  for (std::size_t i = 0; i < count;) {
    MPoly::Elem c = 0;
    std::size_t j = i;
    for (; j < count && grevlex_compare(span_of(idx[i]), span_of(idx[j])) == 0; ++j)
      c = f.add(c, cs[idx[j]]);
    if (c != 0)
      r.push_back_unchecked(span_of(idx[i]), c);
    i = j;
  }
  return r;
}

MPoly MPoly::scale(Elem c) const {
  if (c == 0)
    return MPoly(ring_);
  MPoly r = *this;
  for (auto &x : r.coeffs_)
    x = field().mul(x, c);
  return r;
}

MPoly MPoly::mul_term(std::span<const Exponent> e, Elem c) const {
  MPoly r(ring_);
  if (c == 0)
    return r;
  r.exps_.resize(exps_.size());
  r.coeffs_.resize(coeffs_.size());
  const std::size_t n = nvars();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t v = 0; v < n; ++v)
      r.exps_[i * n + v] = checked_add(exps_[i * n + v], e[v]);
    r.coeffs_[i] = field().mul(coeffs_[i], c);
  }
  return r;
}

MPoly MPoly::pow(std::uint64_t e) const {
  MPoly result(ring_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

MPoly MPoly::monic() const {
  if (is_zero() || lead_coeff() == 1)
    return *this;
  return scale(field().inv(lead_coeff()));
}

MPoly MPoly::derivative(std::size_t var) const {
  std::vector<std::pair<Exponents, Elem>> terms;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto e = exps(i);
    if (e[var] == 0)
      continue;
    const Elem c = field().mul(coeffs_[i], field().from_int(e[var] % field().characteristic()));
    if (c == 0)
      continue;
    Exponents ne(e.begin(), e.end());
    ne[var] -= 1;
    terms.emplace_back(std::move(ne), c);
  }
  return from_terms(ring_, std::move(terms));
}

MPoly MPoly::frobenius() const {
  MPoly r(ring_);
  const Exponent p = field().characteristic();
  for (std::size_t i = 0; i < size(); ++i) {
    Exponents e(exps(i).begin(), exps(i).end());
    for (auto &x : e) {
      if (x != 0 && x > kMaxExponent / p)
        throw ExponentOverflow();
      x *= p;
    }
    // Scaling all exponents by p preserves grevlex order.
    r.push_back_unchecked(e, field().frobenius(coeffs_[i]));
  }
  return r;
}

std::map<Exponent, MPoly> MPoly::coefficients_in(std::size_t var) const {
  std::map<Exponent, std::vector<std::pair<Exponents, Elem>>> groups;
  for (std::size_t i = 0; i < size(); ++i) {
    Exponents e(exps(i).begin(), exps(i).end());
    const Exponent d = e[var];
    e[var] = 0;
    groups[d].emplace_back(std::move(e), coeffs_[i]);
  }
  std::map<Exponent, MPoly> out;
  for (auto &[d, ts] : groups)
    out.emplace(d, from_terms(ring_, std::move(ts)));
  return out;
}

MPoly MPoly::remap(RingPtr target, std::span<const std::size_t> mapping) const {
  if (target->field() != ring_->field())
    throw SpecMismatch("remap across coefficient fields");
  std::vector<std::pair<Exponents, Elem>> terms;
  terms.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    Exponents e(target->nvars(), 0);
    const auto src = exps(i);
    for (std::size_t v = 0; v < src.size(); ++v) {
      if (src[v] == 0)
        continue;
      if (mapping[v] >= target->nvars())
        throw SpecMismatch("variable " + ring_->name(v) + " has no image in target ring");
      e[mapping[v]] = checked_add(e[mapping[v]], src[v]);
    }
    terms.emplace_back(std::move(e), coeffs_[i]);
  }
  return from_terms(std::move(target), std::move(terms));
}

std::string MPoly::to_string() const {
  if (is_zero())
    return "0";
  std::string out;
  const auto &f = field();
  for (std::size_t i = 0; i < size(); ++i) {
    if (i)
      out += " + ";
    std::string mono;
    const auto e = exps(i);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += ring_->name(v);
      if (e[v] > 1)
        mono += "^" + std::to_string(e[v]);
    }
    const Elem c = coeffs_[i];
    if (mono.empty()) {
      out += f.render(c);
    } else if (c == 1) {
      out += mono;
    } else if (f.render_is_compound(c)) {
      out += "(" + f.render(c) + ")*" + mono;
    } else {
      out += f.render(c) + "*" + mono;
    }
  }
  return out;
}

bool operator==(const MPoly &a, const MPoly &b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_ && a.exps_ == b.exps_;
}

int poly_compare(const MPoly &a, const MPoly &b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = grevlex_compare(a.exps(i), b.exps(i));
    if (c != 0)
      return c;
    if (a.coeff(i) != b.coeff(i))
      return a.coeff(i) > b.coeff(i) ? 1 : -1;
  }
  if (a.size() != b.size())
    return a.size() > b.size() ? 1 : -1;
  return 0;
}

namespace {

struct GrevlexGreater {
  bool operator()(const Exponents &a, const Exponents &b) const { return grevlex_compare(a, b) > 0; }
};

// Remainder kept in an ordered map so each subtraction costs |b| log |p|
// instead of a full merge. Returns the quotient; non-divisible leading
// terms go to `rest` when given, otherwise they raise NotDivisible.
MPoly divide_impl(const MPoly &a, const MPoly &b, MPoly *rest) {
  if (b.is_zero())
    throw DivisionByZero("polynomial division by zero");
  const auto &f = a.field();
  const std::size_t n = a.nvars();
  const auto lead_inv = f.inv(b.lead_coeff());
  const auto lb = b.lead_exps();
  std::map<Exponents, MPoly::Elem, GrevlexGreater> p;
  for (std::size_t i = 0; i < a.size(); ++i)
    p.emplace_hint(p.end(), Exponents(a.exps(i).begin(), a.exps(i).end()), a.coeff(i));
  MPoly q(a.ring()), r(a.ring());
  Exponents shift(n), e(n);
  while (!p.empty()) {
    auto it = p.begin();
    const Exponents lp = it->first;
    const auto lc = it->second;
    p.erase(it);
    if (!divides(lb, lp)) {
      if (!rest)
        throw DomainError("NotDivisible", b.to_string() + " does not divide " + a.to_string());
      r.push_back_unchecked(lp, lc);
      continue;
    }
    for (std::size_t v = 0; v < n; ++v)
      shift[v] = lp[v] - lb[v];
    const auto c = f.mul(lc, lead_inv);
    q.push_back_unchecked(shift, c);
    for (std::size_t i = 1; i < b.size(); ++i) {
      const auto eb = b.exps(i);
      for (std::size_t v = 0; v < n; ++v)
        e[v] = eb[v] + shift[v];
      const auto term = f.neg(f.mul(c, b.coeff(i)));
      auto [pos, inserted] = p.try_emplace(e, term);
      if (!inserted) {
        pos->second = f.add(pos->second, term);
        if (pos->second == 0)
          p.erase(pos);
      }
    }
  }
  if (rest)
    *rest = std::move(r);
  return q;
}

} // namespace

std::pair<MPoly, MPoly> divide(const MPoly &a, const MPoly &b) {
  MPoly r(a.ring());
  MPoly q = divide_impl(a, b, &r);
  return {std::move(q), std::move(r)};
}

MPoly divide_exact(const MPoly &a, const MPoly &b) {
  if (b.is_zero())
    throw DivisionByZero("polynomial division by zero");
  if (b.is_constant())
    return a.scale(a.field().inv(b.lead_coeff()));
  return divide_impl(a, b, nullptr);
}

namespace {

std::set<std::size_t> support(const MPoly &a) {
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto e = a.exps(i);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v])
        s.insert(v);
  }
  return s;
}

MPoly content_in(const MPoly &a, std::size_t var) {
  MPoly g(a.ring());
  for (auto &[d, c] : a.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_one())
      break;
  }
  return g;
}

MPoly primitive_part(const MPoly &a, std::size_t var) {
  if (a.is_zero())
    return a;
  return divide_exact(a, content_in(a, var));
}

MPoly lead_coeff_in(const MPoly &a, std::size_t var, Exponent &deg) {
  auto coeffs = a.coefficients_in(var);
  deg = coeffs.rbegin()->first;
  return coeffs.rbegin()->second;
}

// Sparse pseudo-remainder of a by b with respect to var.
MPoly pseudo_remainder(MPoly a, const MPoly &b, std::size_t var) {
  Exponent db = 0;
  const MPoly lcb = lead_coeff_in(b, var, db);
  Exponents shift(a.nvars(), 0);
  while (!a.is_zero()) {
    Exponent da = 0;
    const MPoly lca = lead_coeff_in(a, var, da);
    if (da < db)
      break;
    shift.assign(a.nvars(), 0);
    shift[var] = da - db;
    a = lcb * a - (lca * b).mul_term(shift, 1);
  }
  return a;
}

} // namespace

MPoly gcd(const MPoly &a, const MPoly &b) {
  if (!same_ring(a.ring(), b.ring()))
    throw SpecMismatch("gcd of polynomials from different rings");
  if (a.is_zero())
    return b.monic();
  if (b.is_zero())
    return a.monic();
  if (a.is_constant() || b.is_constant())
    return MPoly(a.ring(), 1);

  const auto sa = support(a), sb = support(b);
  std::set<std::size_t> all = sa;
  all.insert(sb.begin(), sb.end());
  if (all.size() == 1) {
    MPoly x = a, y = b;
    while (!y.is_zero()) {
      auto r = divide(x, y).second;
      x = std::move(y);
      y = std::move(r);
    }
    return x.monic();
  }

  // Main variable: the largest index present in both, else reduce to content.
  std::size_t var = *all.rbegin();
  std::vector<std::size_t> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  if (common.empty()) {
    // No shared variable: gcd divides the content of each with respect to
    // any variable used by only one side.
    const std::size_t v = *sa.begin();
    return gcd(content_in(a, v), b);
  }
  var = common.back();
  if (!sa.count(var))
    return gcd(a, content_in(b, var));
  if (!sb.count(var))
    return gcd(content_in(a, var), b);

  const MPoly ca = content_in(a, var), cb = content_in(b, var);
  const MPoly g = gcd(ca, cb);
  MPoly x = divide_exact(a, ca), y = divide_exact(b, cb);
  if (x.degree(var) < y.degree(var))
    std::swap(x, y);
  // A univariate image bounds the degree of the gcd in var. Zero settles
  // coprimality; a full-degree image usually means y divides x.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const int d = detail::image_gcd_degree(x, y, var, seed * 0x9E3779B97F4A7C15ULL + x.size());
    if (d < 0)
      continue;
    if (d == 0)
      return g.monic();
    if (static_cast<Exponent>(d) == y.degree(var) && divide(x, y).second.is_zero())
      return (g * y).monic();
    break;
  }
  while (!y.is_zero() && y.degree(var) > 0) {
    MPoly r = pseudo_remainder(x, y, var);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part(r, var);
  }
  if (!y.is_zero()) {
    // Nonzero remainder free of var: primitive parts are coprime.
    return g.monic();
  }
  return (g * primitive_part(x, var)).monic();
}

std::map<MultiIndex, MPoly> p_power_decompose(const MPoly &u) {
  const auto &f = u.field();
  const Exponent p = f.characteristic();
  std::map<MultiIndex, std::vector<std::pair<Exponents, MPoly::Elem>>> groups;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto e = u.exps(i);
    MultiIndex idx;
    idx.entries.resize(e.size());
    Exponents q(e.size());
    for (std::size_t v = 0; v < e.size(); ++v) {
      idx.entries[v] = e[v] % p;
      q[v] = e[v] / p;
    }
    groups[idx].emplace_back(std::move(q), f.frobenius_inv(u.coeff(i)));
  }
  std::map<MultiIndex, MPoly> out;
  for (auto &[idx, ts] : groups)
    out.emplace(idx, MPoly::from_terms(u.ring(), std::move(ts)));
  return out;
}

} // namespace pcl
