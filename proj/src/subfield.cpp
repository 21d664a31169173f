#include "pcl/subfield.hpp"

#include "pcl/errors.hpp"
#include "pcl/groebner.hpp"

#include <map>
#include <mutex>

namespace pcl {

namespace {

RingPtr tag_ring_for(const FieldPtr &field, std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i)
    names.push_back("y" + std::to_string(i + 1));
  return make_ring(field, std::move(names));
}

std::string wrap(const MPoly &p) {
  const std::string s = p.to_string();
  if (p.size() > 1)
    return "(" + s + ")";
  if (p.size() == 1 && !p.is_constant()) {
    int vars = 0;
    for (auto e : p.lead_exps())
      vars += e != 0;
    if (vars > 1 || p.lead_coeff() != 1)
      return "(" + s + ")";
  }
  return s;
}

// Ring [t_1..t_n, _z, _y1.._yk] and the tag generators den_i*y_i - num_i.
struct TagSystem {
  RingPtr ring;
  std::size_t n = 0, k = 0;
  std::vector<MPoly> gens;
  MPoly sat;

  TagSystem(const Subfield &D, bool with_z) : sat(D.ambient()->ring(), 1) {
    const auto &amb = *D.ambient();
    n = amb.nvars();
    k = D.size();
    std::vector<std::string> names = amb.var_names();
    if (with_z)
      names.push_back("_z");
    for (std::size_t i = 0; i < k; ++i)
      names.push_back("_y" + std::to_string(i + 1));
    ring = make_ring(amb.field(), names);
    std::vector<std::size_t> embed(n);
    for (std::size_t v = 0; v < n; ++v)
      embed[v] = v;
    sat = MPoly(ring, 1);
    const std::size_t y0 = n + (with_z ? 1 : 0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto &g = D.gens()[i];
      const MPoly num = g.num().remap(ring, embed), den = g.den().remap(ring, embed);
      gens.push_back(den * MPoly::variable(ring, y0 + i) - num);
      if (!den.is_constant())
        sat *= den;
    }
  }

  // Variables kept after eliminating t, with their order blocks.
  std::vector<std::size_t> keep() const {
    std::vector<std::size_t> out;
    for (std::size_t v = n; v < ring->nvars(); ++v)
      out.push_back(v);
    return out;
  }
};

// Sends the tag variables of a kept polynomial into the y1..yk ring.
MPoly to_tags(const MPoly &f, const RingPtr &tags, std::size_t y0) {
  std::vector<std::size_t> map(f.nvars(), 0);
  for (std::size_t v = y0; v < f.nvars(); ++v)
    map[v] = v - y0;
  return f.remap(tags, map);
}

MembershipWitness make_witness(MPoly num, MPoly den, const Subfield &D) {
  if (!den.is_constant()) {
    const MPoly g = gcd(num, den);
    if (!g.is_one()) {
      num = divide_exact(num, g);
      den = divide_exact(den, g);
    }
  }
  const auto inv = den.field().inv(den.lead_coeff());
  num = num.scale(inv);
  den = den.scale(inv);
  const RatFunc d = evaluate(den, D.gens(), D.ambient());
  if (d.is_zero())
    throw DomainError("InternalError", "witness denominator vanishes on the generators");
  RatFunc value = evaluate(num, D.gens(), D.ambient()) / d;
  return {std::move(num), std::move(den), std::move(value)};
}

// Elimination ideal of z -> x, y -> g in F_q[z, y], z-block first.
std::vector<MPoly> tagged_elimination(const RatFunc &x, const Subfield &D, std::size_t &z_index) {
  if (x.ambient() != D.ambient() && !(*x.ambient()->ring() == *D.ambient()->ring()))
    throw SpecMismatch("element and subfield live in different ambient fields");
  TagSystem sys(D, true);
  const std::size_t n = sys.n;
  std::vector<std::size_t> embed(n);
  for (std::size_t v = 0; v < n; ++v)
    embed[v] = v;
  const MPoly num = x.num().remap(sys.ring, embed), den = x.den().remap(sys.ring, embed);
  auto gens = sys.gens;
  gens.push_back(den * MPoly::variable(sys.ring, n) - num);
  MPoly sat = sys.sat;
  if (!den.is_constant())
    sat *= den;
  z_index = n;
  return saturate_and_eliminate(gens, sat, sys.keep(), {1, sys.k});
}

} // namespace

RatFunc evaluate(const MPoly &poly, const std::vector<RatFunc> &at, const AmbientPtr &ambient) {
  if (poly.nvars() != at.size())
    throw SpecMismatch("evaluation point has the wrong length");
  std::map<std::pair<std::size_t, Exponent>, RatFunc> powers;
  auto power = [&](std::size_t v, Exponent e) -> const RatFunc & {
    auto it = powers.find({v, e});
    if (it == powers.end())
      it = powers.emplace(std::make_pair(v, e), at[v].pow(e)).first;
    return it->second;
  };
  RatFunc acc(ambient);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    RatFunc term(ambient, poly.coeff(i));
    const auto e = poly.exps(i);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v])
        term *= power(v, e[v]);
    acc += term;
  }
  return acc;
}

std::string MembershipWitness::to_string() const {
  if (den.is_one())
    return num.to_string();
  return wrap(num) + "/" + wrap(den);
}

struct Subfield::Cache {
  std::once_flag once;
  RelationIdeal relations;
};

Subfield::Subfield(AmbientPtr ambient, std::vector<RatFunc> gens, std::string label)
    : ambient_(std::move(ambient)), gens_(std::move(gens)), label_(std::move(label)),
      tags_(tag_ring_for(ambient_->field(), gens_.size())), cache_(std::make_shared<Cache>()) {
  for (const auto &g : gens_)
    if (!(*g.ambient()->ring() == *ambient_->ring()))
      throw SpecMismatch("generator outside the ambient field");
}

const RelationIdeal &Subfield::relations() const {
  std::call_once(cache_->once, [this] {
    RelationIdeal r;
    r.ring = tags_;
    if (!gens_.empty()) {
      TagSystem sys(*this, false);
      for (const auto &f : saturate_and_eliminate(sys.gens, sys.sat, sys.keep()))
        r.basis.push_back(to_tags(f, tags_, sys.n));
      std::sort(r.basis.begin(), r.basis.end(),
                [](const MPoly &a, const MPoly &b) { return poly_compare(a, b) > 0; });
    }
    r.dimension = krull_dimension(r.basis, MonomialOrder::grevlex(tags_->nvars()));
    cache_->relations = std::move(r);
  });
  return cache_->relations;
}

Subfield Subfield::adjoin(const std::vector<RatFunc> &more) const {
  auto g = gens_;
  g.insert(g.end(), more.begin(), more.end());
  return Subfield(ambient_, std::move(g));
}

std::optional<MembershipWitness> member(const RatFunc &x, const Subfield &D) {
  const auto &tags = D.tag_ring();
  if (x.is_constant())
    return make_witness(MPoly(tags, x.num().lead_coeff()), MPoly(tags, x.den().lead_coeff()), D);
  for (std::size_t i = 0; i < D.size(); ++i)
    if (D.gens()[i] == x)
      return make_witness(MPoly::variable(tags, i), MPoly(tags, 1), D);

  std::size_t z = 0;
  const auto basis = tagged_elimination(x, D, z);
  // The z-linear element of least z-degree carries the answer; its leading
  // coefficient lies outside the relation ideal.
  std::optional<MembershipWitness> best;
  for (const auto &f : basis) {
    if (f.degree(z) != 1)
      continue;
    auto parts = f.coefficients_in(z);
    const MPoly lead = to_tags(parts.at(1), tags, z + 1);
    const MPoly rest = parts.count(0) ? to_tags(parts.at(0), tags, z + 1) : MPoly(tags);
    if (evaluate(lead, D.gens(), D.ambient()).is_zero())
      continue;
    auto w = make_witness(-rest, lead, D);
    if (!(w.value == x))
      throw DomainError("InternalError", "membership witness does not reproduce the element");
    return w;
  }
  return std::nullopt;
}

bool field_leq(const Subfield &a, const Subfield &b) {
  for (const auto &g : a.gens())
    if (!member(g, b))
      return false;
  return true;
}

bool field_equal(const Subfield &a, const Subfield &b) { return field_leq(a, b) && field_leq(b, a); }

std::size_t trdeg(const Subfield &D) { return static_cast<std::size_t>(D.relations().dimension); }

bool MinimalPolynomial::separable() const {
  if (degree % p != 0)
    return true;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (j % p != 0 && !coeffs[j].value.is_zero())
      return true;
  return false;
}

std::string MinimalPolynomial::to_string(const std::string &var) const {
  auto mono = [&](std::size_t j) -> std::string {
    if (j == 0)
      return "";
    return j == 1 ? var : var + "^" + std::to_string(j);
  };
  std::string out = mono(degree);
  for (std::size_t j = degree; j-- > 0;) {
    const RatFunc &c = coeffs[j].value;
    if (c.is_zero())
      continue;
    std::string cs = c.to_string();
    const bool compound = cs.find_first_of("+/") != std::string::npos || cs.find(" ") != std::string::npos;
    std::string term;
    if (j == 0)
      term = compound ? "(" + cs + ")" : cs;
    else if (c.is_one())
      term = mono(j);
    else
      term = (compound ? "(" + cs + ")" : cs) + "*" + mono(j);
    out += " + " + term;
  }
  return out;
}

std::optional<MinimalPolynomial> minimal_polynomial(const RatFunc &x, const Subfield &D) {
  std::size_t z = 0;
  const auto basis = tagged_elimination(x, D, z);
  const auto &tags = D.tag_ring();
  const MPoly *best = nullptr;
  for (const auto &f : basis) {
    const auto d = f.degree(z);
    if (d > 0 && (!best || d < best->degree(z)))
      best = &f;
  }
  if (!best)
    return std::nullopt;
  MinimalPolynomial mp;
  mp.p = D.ambient()->characteristic();
  mp.degree = best->degree(z);
  auto parts = best->coefficients_in(z);
  const MPoly lead = to_tags(parts.at(static_cast<Exponent>(mp.degree)), tags, z + 1);
  if (evaluate(lead, D.gens(), D.ambient()).is_zero())
    throw DomainError("InternalError", "minimal polynomial has a vanishing leading coefficient");
  for (std::size_t j = 0; j < mp.degree; ++j) {
    auto it = parts.find(static_cast<Exponent>(j));
    const MPoly c = it == parts.end() ? MPoly(tags) : to_tags(it->second, tags, z + 1);
    mp.coeffs.push_back(make_witness(c, lead, D));
  }
  // Sanity: x is a root.
  RatFunc acc = x.pow(static_cast<std::int64_t>(mp.degree));
  for (std::size_t j = mp.degree; j-- > 0;)
    acc += mp.coeffs[j].value * x.pow(static_cast<std::int64_t>(j));
  if (!acc.is_zero())
    throw DomainError("InternalError", "element is not a root of its minimal polynomial");
  return mp;
}

} // namespace pcl
