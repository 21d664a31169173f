#include "pcl/geometry.hpp"

#include "pcl/errors.hpp"
#include "pcl/groebner.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace pcl {

std::string AffineIdeal::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < basis.size(); ++i)
    out += (i ? ", " : "") + basis[i].to_string();
  return out + ">";
}

AffineIdeal locus(const KTuple &a, const Subfield &C) {
  const auto &amb = *C.ambient();
  const std::size_t n = amb.nvars(), m = a.size(), k = C.size();
  std::vector<std::string> names = amb.var_names(), out_names;
  for (std::size_t i = 0; i < m; ++i)
    out_names.push_back("x" + std::to_string(i + 1));
  for (std::size_t j = 0; j < k; ++j)
    out_names.push_back("c" + std::to_string(j + 1));
  names.insert(names.end(), out_names.begin(), out_names.end());
  const RingPtr big = make_ring(amb.field(), names);
  const RingPtr target = make_ring(amb.field(), out_names);

  std::vector<std::size_t> embed(n);
  for (std::size_t v = 0; v < n; ++v)
    embed[v] = v;
  std::vector<MPoly> gens;
  MPoly sat(big, 1);
  auto add = [&](const RatFunc &x, std::size_t var) {
    const MPoly num = x.num().remap(big, embed), den = x.den().remap(big, embed);
    gens.push_back(den * MPoly::variable(big, var) - num);
    if (!den.is_constant())
      sat *= den;
  };
  for (std::size_t i = 0; i < m; ++i)
    add(a[i], n + i);
  for (std::size_t j = 0; j < k; ++j)
    add(C.gens()[j], n + m + j);

  std::vector<std::size_t> keep;
  for (std::size_t v = n; v < n + m + k; ++v)
    keep.push_back(v);
  std::vector<std::size_t> blocks{m};
  if (k > 0)
    blocks.push_back(k);

  AffineIdeal out;
  out.ring = target;
  out.point_vars = m;
  if (m + k > 0) {
    std::vector<std::size_t> to_target(n + m + k, 0);
    for (std::size_t v = n; v < n + m + k; ++v)
      to_target[v] = v - n;
    for (const auto &f : saturate_and_eliminate(gens, sat, keep, blocks))
      out.basis.push_back(f.remap(target, to_target));
  }
  const int total = krull_dimension(out.basis, MonomialOrder::grevlex(m + k));
  out.dimension = total - static_cast<int>(trdeg(C));
  return out;
}

AffineIdeal locus(const KTuple &a, const AmbientPtr &ambient) { return locus(a, Subfield(ambient, {})); }

namespace {

KTuple pick(const KTuple &b, const std::vector<std::size_t> &idx) {
  KTuple out;
  for (auto i : idx)
    out.push_back(b[i]);
  return out;
}

// b1 algebraically independent over D (in order) and b2 separable over D(b1)?
bool valid_split(const KTuple &b, const Subfield &D, const std::vector<std::size_t> &b1,
                 const std::vector<std::size_t> &b2) {
  Subfield cur = D;
  for (auto i : b1) {
    if (minimal_polynomial(b[i], cur))
      return false;
    cur = cur.adjoin({b[i]});
  }
  for (auto i : b2) {
    const auto mp = minimal_polynomial(b[i], cur);
    if (!mp || !mp->separable())
      return false;
  }
  return true;
}

} // namespace

SepTransSplit sep_trans_split(const KTuple &b, const Subfield &D) {
  SepTransSplit s;
  {
    Subfield cur = D;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!minimal_polynomial(b[i], cur)) {
        s.b1.push_back(i);
        cur = cur.adjoin({b[i]});
      } else {
        s.b2.push_back(i);
      }
    }
    bool ok = true;
    for (auto i : s.b2) {
      const auto mp = minimal_polynomial(b[i], cur);
      if (!mp || !mp->separable()) {
        ok = false;
        break;
      }
    }
    if (ok)
      return s;
  }
  if (b.size() <= 4) {
    const std::size_t r = s.b1.size();
    // subsets of size r in lexicographic order of their bitmask positions
    for (unsigned mask = 0; mask < (1u << b.size()); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != r)
        continue;
      SepTransSplit t;
      for (std::size_t i = 0; i < b.size(); ++i)
        ((mask >> i) & 1 ? t.b1 : t.b2).push_back(i);
      if (valid_split(b, D, t.b1, t.b2))
        return t;
    }
  }
  throw NotSeparable("no separating transcendence basis inside the tuple");
}

ToolPresentation tool_presentation(const KTuple &a, const Subfield &D) {
  const auto &amb = D.ambient();
  const std::size_t k = D.size(), m = a.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i)
    names.push_back("D" + std::to_string(i + 1));
  for (std::size_t j = 0; j < m; ++j)
    names.push_back("X" + std::to_string(j + 1));
  ToolPresentation out;
  out.ring = make_ring(amb->field(), names);
  out.base_vars = k;

  Subfield cur = D;
  for (std::size_t j = 0; j < m; ++j) {
    ToolEntry e{MPoly(out.ring), MPoly(out.ring, 1)};
    if (auto mp = minimal_polynomial(a[j], cur)) {
      std::vector<std::size_t> to_out(k + j);
      for (std::size_t i = 0; i < k + j; ++i)
        to_out[i] = i;
      MPoly h(out.ring, 1);
      for (const auto &c : mp->coeffs) {
        const MPoly den = c.den.remap(out.ring, to_out);
        h = divide_exact(h * den, gcd(h, den));
      }
      const std::size_t X = k + j;
      MPoly g = h * MPoly::variable(out.ring, X, static_cast<Exponent>(mp->degree));
      for (std::size_t i = 0; i < mp->coeffs.size(); ++i) {
        const auto &c = mp->coeffs[i];
        if (c.num.is_zero())
          continue;
        const MPoly num = c.num.remap(out.ring, to_out), den = c.den.remap(out.ring, to_out);
        g += divide_exact(h, den) * num * MPoly::variable(out.ring, X, static_cast<Exponent>(i));
      }
      e = {std::move(g), std::move(h), mp->degree, mp->separable()};
    }
    out.entries.push_back(std::move(e));
    cur = cur.adjoin({a[j]});
  }
  return out;
}

namespace {

// One algebraic coordinate of the sampling chain.
struct ChainStep {
  std::size_t pos;  // coordinate index in the work tuple
  std::size_t degree;
  NewtonSystem sys; // y is the last variable
  MPoly h;          // in the same ring
};


std::vector<std::vector<FiniteField::Elem>> default_centers(const AmbientPtr &amb) {
  std::vector<std::vector<FiniteField::Elem>> out;
  const std::size_t n = amb->nvars();
  const std::uint64_t q = amb->field()->order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n && total < 64; ++i)
    total *= q;
  total = std::min<std::uint64_t>(total, 64);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<FiniteField::Elem> c(n);
    std::uint64_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = static_cast<FiniteField::Elem>(r % q);
      r /= q;
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Values of the base generators followed by tuple[0..upto).
std::vector<TruncSeries> prefix_values(const std::vector<TruncSeries> &base, const std::vector<TruncSeries> &vals,
                                       std::size_t upto) {
  std::vector<TruncSeries> at = base;
  at.insert(at.end(), vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(upto));
  return at;
}

} // namespace

SurjectivityReport local_surjectivity_check(const KTuple &a, const KTuple &b, const Subfield &C,
                                            const SurjectivityOptions &opts) {
  const auto &amb = C.ambient();
  const auto field = amb->field();
  const std::size_t N = opts.precision;
  SurjectivityReport rep;
  rep.precision = N;
  rep.samples = opts.samples;

  const bool separable = is_separable(C.adjoin(a), C.adjoin(a).adjoin(b));
  KTuple A = a;
  if (opts.mode == SurjectivityMode::Direct && !separable)
    throw NotSeparable("C(a,b) is not separable over C(a)");
  if (separable && opts.mode != SurjectivityMode::Lambda) {
    rep.mode = "direct";
    for (std::size_t i = 0; i < a.size(); ++i)
      rep.sigma.push_back(i);
  } else {
    rep.mode = "lambda";
    const ClosureBase base(C, p_basis(C));
    auto fbc = lambda_fbc(a, b, base);
    A = fbc.tuple;
    rep.stage = fbc.n;
    rep.sigma = fbc.sigma;
    rep.lambda_tuple = fbc.tuple;
  }

  // Work tuple: A1 A2 (points of locus(A/C)) then B1 B2 (the lift).
  const auto sa = sep_trans_split(A, C);
  const auto sb = sep_trans_split(b, C.adjoin(A));
  std::vector<std::size_t> a_order = sa.b1, b_order = sb.b1;
  a_order.insert(a_order.end(), sa.b2.begin(), sa.b2.end());
  b_order.insert(b_order.end(), sb.b2.begin(), sb.b2.end());
  KTuple T = pick(A, a_order);
  for (auto i : b_order)
    T.push_back(b[i]);
  const std::size_t k = C.size(), la = A.size();
  const auto tool = tool_presentation(T, C);

  std::vector<std::size_t> free, fixed;
  std::vector<std::optional<ChainStep>> steps(T.size());
  for (std::size_t j = 0; j < T.size(); ++j) {
    const auto &e = tool.entries[j];
    if (e.degree == 0) {
      (j < la ? free : fixed).push_back(j);
      continue;
    }
    if (!e.separable)
      throw NotSeparable("coordinate " + T[j].to_string() + " is inseparable over the earlier ones");
    std::vector<std::string> names(tool.ring->names().begin(),
                                   tool.ring->names().begin() + static_cast<std::ptrdiff_t>(k + j + 1));
    const RingPtr r = make_ring(field, names);
    std::vector<std::size_t> id(tool.ring->nvars());
    for (std::size_t i = 0; i < id.size(); ++i)
      id[i] = i;
    steps[j] = ChainStep{j, e.degree, NewtonSystem({e.g.remap(r, id)}, k + j), e.h.remap(r, id)};
    if (j >= la && e.degree >= 2)
      ++rep.equations;
  }

  // Center: every value defined, every h and diagonal entry a unit.
  auto centers = opts.centers.empty() ? default_centers(amb) : opts.centers;
  std::optional<SeriesEmbedding> phi;
  std::vector<TruncSeries> base_vals, center_vals;
  bool any_defined = false;
  for (const auto &c : centers) {
    SeriesEmbedding emb(amb, c, N);
    bool ok = true;
    for (const auto &x : C.gens())
      ok = ok && emb.defined_at(x);
    for (const auto &x : T)
      ok = ok && emb.defined_at(x);
    if (!ok)
      continue;
    any_defined = true;
    std::vector<TruncSeries> bv, tv;
    for (const auto &x : C.gens())
      bv.push_back(emb(x));
    for (const auto &x : T)
      tv.push_back(emb(x));
    std::size_t jv = 0;
    for (std::size_t j = 0; j < T.size() && ok; ++j) {
      if (!steps[j])
        continue;
      const auto at = prefix_values(bv, tv, j + 1);
      ok = evaluate(steps[j]->h, at, N).is_unit();
      const auto d = evaluate(steps[j]->sys.jacobian(0, 0), at, N);
      if (j >= la)
        jv += d.valuation();
      ok = ok && d.is_unit();
    }
    if (ok) {
      phi.emplace(std::move(emb));
      base_vals = std::move(bv);
      center_vals = std::move(tv);
      rep.center = c;
      rep.jacobian_valuation = jv;
      break;
    }
  }
  if (!phi) {
    if (!any_defined)
      throw DenominatorVanishes("no candidate center keeps the denominators nonzero");
    throw NonUnitJacobian("no candidate center gives a unit Jacobian");
  }

  // Locus checks in the original coordinate order.
  const auto ideal_ab = locus([&] {
    KTuple ab = A;
    ab.insert(ab.end(), b.begin(), b.end());
    return ab;
  }(), C);
  const auto ideal_a = locus(a, C);
  std::vector<std::size_t> t_of_a(la), t_of_b(b.size());
  for (std::size_t j = 0; j < la; ++j)
    t_of_a[a_order[j]] = j;
  for (std::size_t j = 0; j < b.size(); ++j)
    t_of_b[b_order[j]] = la + j;

  std::mt19937_64 rng(opts.seed);
  const std::uint64_t q = field->order();
  for (std::size_t s = 0; s < opts.samples; ++s) {
    std::vector<TruncSeries> vals = center_vals;
    for (auto j : free) {
      TruncSeries eps(field, N);
      std::vector<FiniteField::Elem> c(N, 0);
      for (std::size_t i = opts.delta; i < N; ++i)
        c[i] = static_cast<FiniteField::Elem>(rng() % q);
      vals[j] = vals[j] + TruncSeries(field, N, std::move(c));
    }
    bool ok = true;
    for (std::size_t j = 0; j < T.size() && ok; ++j) {
      if (!steps[j])
        continue;
      const auto xs = prefix_values(base_vals, vals, j);
      try {
        if (steps[j]->degree == 1) {
          // g = h*X + r, so X = -r/h
          auto at = xs;
          at.push_back(TruncSeries(field, N));
          const TruncSeries r = evaluate(steps[j]->sys.polys()[0], at, N);
          vals[j] = -(r * evaluate(steps[j]->h, at, N).inverse());
        } else {
          vals[j] = hensel_newton(steps[j]->sys, xs, {center_vals[j]}, N).y[0];
        }
      } catch (const DomainError &e) {
        rep.failures.push_back("sample " + std::to_string(s) + ": " + e.what());
        ok = false;
      }
    }
    if (!ok)
      continue;
    ++rep.lifted;

    std::vector<TruncSeries> at_ab, at_a;
    for (auto j : t_of_a)
      at_ab.push_back(vals[j]);
    for (auto j : t_of_b)
      at_ab.push_back(vals[j]);
    for (auto i : rep.sigma)
      at_a.push_back(vals[t_of_a[i]]);
    at_ab.insert(at_ab.end(), base_vals.begin(), base_vals.end());
    at_a.insert(at_a.end(), base_vals.begin(), base_vals.end());
    bool on = true;
    for (const auto &f : ideal_ab.basis)
      on = on && evaluate(f, at_ab, N).is_zero();
    for (const auto &f : ideal_a.basis)
      on = on && evaluate(f, at_a, N).is_zero();
    if (on)
      ++rep.on_locus;
  }
  return rep;
}

InteriorReport interior_scan(std::uint32_t p, std::size_t precision, std::size_t ybound) {
  const auto field = FiniteField::get(p);
  InteriorReport rep;
  rep.p = p;
  rep.precision = precision;
  rep.ybound = ybound;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < ybound; ++i) {
    count *= p;
    if (count > (1u << 24))
      throw ResourceLimit("interior scan would enumerate more than 2^24 polynomials");
  }
  const TruncSeries t = TruncSeries::monomial(field, precision, 1);
  std::vector<std::vector<std::uint32_t>> images;
  images.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<FiniteField::Elem> c(ybound);
    std::uint64_t r = idx;
    for (auto &d : c) {
      d = static_cast<FiniteField::Elem>(r % p);
      r /= p;
    }
    const TruncSeries y(field, precision, std::move(c));
    const TruncSeries yp = y.pow(p);
    images.push_back((yp + t * yp * yp).coeffs());
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  rep.residues = images;

  const long double size = static_cast<long double>(images.size());
  for (std::size_t m = 0; m < precision; ++m) {
    InteriorLevel lvl;
    lvl.m = m;
    long double coset = 1;
    for (std::size_t i = m; i < precision && coset <= size; ++i)
      coset *= p;
    lvl.feasible = coset <= size;
    if (lvl.feasible) {
      // residues sorted, so a prefix class is a contiguous run
      const auto need = static_cast<std::size_t>(coset);
      for (std::size_t i = 0; i < images.size();) {
        std::size_t j = i;
        while (j < images.size() && std::equal(images[i].begin(), images[i].begin() + static_cast<std::ptrdiff_t>(m),
                                               images[j].begin()))
          ++j;
        if (j - i == need)
          ++lvl.full_cosets;
        i = j;
      }
    }
    rep.levels.push_back(lvl);
  }
  return rep;
}

} // namespace pcl
