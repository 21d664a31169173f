#include "pcl/groebner.hpp"

#include "pcl/errors.hpp"

#include <algorithm>
#include <numeric>

namespace pcl {

Limits &current_limits() {
  thread_local Limits limits;
  return limits;
}

namespace {

using Elem = FiniteField::Elem;

// Polynomial with terms sorted descending under a fixed order.
struct OPoly {
  std::size_t n = 0;
  std::vector<Exponent> e;
  std::vector<Elem> c;

  std::size_t size() const { return c.size(); }
  bool empty() const { return c.empty(); }
  std::span<const Exponent> exps(std::size_t i) const { return {e.data() + i * n, n}; }
  std::span<const Exponent> lm() const { return exps(0); }
  void push(std::span<const Exponent> x, Elem v) {
    e.insert(e.end(), x.begin(), x.end());
    c.push_back(v);
  }
};

OPoly to_opoly(const MPoly &f, const MonomialOrder &ord) {
  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return ord.compare(f.exps(a), f.exps(b)) > 0; });
  OPoly r;
  r.n = f.nvars();
  for (auto i : idx)
    r.push(f.exps(i), f.coeff(i));
  return r;
}

MPoly to_mpoly(const OPoly &f, const RingPtr &ring) {
  std::vector<std::pair<Exponents, Elem>> terms;
  terms.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    terms.emplace_back(Exponents(f.exps(i).begin(), f.exps(i).end()), f.c[i]);
  return MPoly::from_terms(ring, std::move(terms));
}

bool divides(std::span<const Exponent> a, std::span<const Exponent> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

Exponents lcm_of(std::span<const Exponent> a, std::span<const Exponent> b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(std::span<const Exponent> a, std::span<const Exponent> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i])
      return false;
  return true;
}

// p[start..] - coef * x^shift * g, merged under ord.
OPoly sub_mul(const OPoly &p, std::size_t start, Elem coef, std::span<const Exponent> shift,
              const OPoly &g, const MonomialOrder &ord, const FiniteField &f) {
  OPoly r;
  r.n = p.n;
  r.e.reserve((p.size() - start + g.size()) * p.n);
  r.c.reserve(p.size() - start + g.size());
  const Elem neg = f.neg(coef);
  Exponents tmp(p.n);
  std::size_t i = start, j = 0;
  auto g_term = [&](std::size_t k) {
    const auto ge = g.exps(k);
    for (std::size_t v = 0; v < p.n; ++v)
      tmp[v] = ge[v] + shift[v];
  };
  if (j < g.size())
    g_term(j);
  while (i < p.size() || j < g.size()) {
    int cmp;
    if (i == p.size())
      cmp = -1;
    else if (j == g.size())
      cmp = 1;
    else
      cmp = ord.compare(p.exps(i), tmp);
    if (cmp > 0) {
      r.push(p.exps(i), p.c[i]);
      ++i;
    } else if (cmp < 0) {
      r.push(tmp, f.mul(neg, g.c[j]));
      if (++j < g.size())
        g_term(j);
    } else {
      const Elem s = f.add(p.c[i], f.mul(neg, g.c[j]));
      if (s != 0)
        r.push(tmp, s);
      ++i;
      if (++j < g.size())
        g_term(j);
    }
  }
  return r;
}

void check_deadline() {
  const auto &lim = current_limits();
  if (lim.deadline && std::chrono::steady_clock::now() > *lim.deadline)
    throw ResourceLimit("time cap exceeded during Groebner basis computation");
}

// Reduces until the leading term is irreducible (or p vanishes).
OPoly top_reduce(OPoly p, const std::vector<const OPoly *> &divs, const MonomialOrder &ord,
                 const FiniteField &f) {
  Exponents shift(p.n);
  std::size_t steps = 0;
  while (!p.empty()) {
    const auto lead = p.lm();
    const OPoly *hit = nullptr;
    for (const auto *g : divs)
      if (divides(g->lm(), lead)) {
        hit = g;
        break;
      }
    if (!hit)
      break;
    for (std::size_t v = 0; v < p.n; ++v)
      shift[v] = lead[v] - hit->lm()[v];
    p = sub_mul(p, 0, f.div(p.c[0], hit->c[0]), shift, *hit, ord, f);
    if ((++steps & 1023) == 0)
      check_deadline();
  }
  return p;
}

// Full normal form of f against the divisors, first divisor wins.
OPoly normal_form(OPoly p, const std::vector<const OPoly *> &divs, const MonomialOrder &ord,
                  const FiniteField &f) {
  OPoly out;
  out.n = p.n;
  std::size_t start = 0;
  Exponents shift(p.n);
  std::size_t steps = 0;
  while (start < p.size()) {
    const auto lead = p.exps(start);
    const OPoly *hit = nullptr;
    for (const auto *g : divs)
      if (divides(g->lm(), lead)) {
        hit = g;
        break;
      }
    if (!hit) {
      out.push(lead, p.c[start]);
      ++start;
      continue;
    }
    for (std::size_t v = 0; v < p.n; ++v)
      shift[v] = lead[v] - hit->lm()[v];
    const Elem coef = f.div(p.c[start], hit->c[0]);
    p = sub_mul(p, start, coef, shift, *hit, ord, f);
    start = 0;
    if ((++steps & 1023) == 0)
      check_deadline();
  }
  return out;
}

void make_monic(OPoly &p, const FiniteField &f) {
  if (p.empty() || p.c[0] == 1)
    return;
  const Elem inv = f.inv(p.c[0]);
  for (auto &x : p.c)
    x = f.mul(x, inv);
}

OPoly spoly(const OPoly &a, const OPoly &b, const MonomialOrder &ord, const FiniteField &f) {
  const auto l = lcm_of(a.lm(), b.lm());
  Exponents sa(a.n), sb(a.n);
  for (std::size_t v = 0; v < a.n; ++v) {
    sa[v] = l[v] - a.lm()[v];
    sb[v] = l[v] - b.lm()[v];
  }
  // Both inputs are monic: x^sa*a - x^sb*b.
  OPoly left;
  left.n = a.n;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Exponents t(a.n);
    for (std::size_t v = 0; v < a.n; ++v)
      t[v] = a.exps(i)[v] + sa[v];
    left.push(t, a.c[i]);
  }
  return sub_mul(left, 0, f.div(a.c[0], b.c[0]), sb, b, ord, f);
}

struct Pair {
  std::size_t i, j;
  Exponents lcm;
  std::uint64_t sugar = 0;
};

std::uint64_t degree_of(std::span<const Exponent> e) {
  std::uint64_t d = 0;
  for (auto x : e)
    d += x;
  return d;
}

std::uint64_t poly_degree(const OPoly &p) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d = std::max(d, degree_of(p.exps(i)));
  return d;
}

std::vector<OPoly> buchberger(std::vector<OPoly> input, const MonomialOrder &ord, const FiniteField &f) {
  std::vector<OPoly> polys;
  std::vector<std::uint64_t> sugar;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  const auto &lim = current_limits();
  std::size_t processed = 0;

  auto active_list = [&] {
    std::vector<const OPoly *> out;
    for (std::size_t k = 0; k < polys.size(); ++k)
      if (active[k])
        out.push_back(&polys[k]);
    return out;
  };

  // Gebauer-Moeller update with a new element h.
  auto update = [&](OPoly h, std::uint64_t hs) {
    const std::size_t hi = polys.size();
    polys.push_back(std::move(h));
    sugar.push_back(hs);
    active.push_back(true);
    const auto hlm = polys[hi].lm();
    const std::uint64_t hdeg = degree_of(hlm);

    std::vector<Pair> cands;
    for (std::size_t k = 0; k < hi; ++k)
      if (active[k]) {
        Pair pa{k, hi, lcm_of(polys[k].lm(), hlm)};
        const auto ld = degree_of(pa.lcm);
        pa.sugar = std::max(sugar[k] + ld - degree_of(polys[k].lm()), hs + ld - hdeg);
        cands.push_back(std::move(pa));
      }

    // Chain criterion among the new pairs; keep coprime ones to drop later.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      const auto &pa = cands[a];
      bool keep = coprime(polys[pa.i].lm(), hlm);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
          if (divides(cands[b].lcm, pa.lcm))
            keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (divides(kept[b].lcm, pa.lcm))
            keep = false;
      }
      if (keep)
        kept.push_back(pa);
    }
    std::vector<Pair> fresh;
    for (auto &pa : kept)
      if (!coprime(polys[pa.i].lm(), hlm))
        fresh.push_back(std::move(pa));

    std::vector<Pair> old;
    for (auto &pa : pairs) {
      if (divides(hlm, pa.lcm) && lcm_of(polys[pa.i].lm(), hlm) != pa.lcm &&
          lcm_of(polys[pa.j].lm(), hlm) != pa.lcm)
        continue;
      old.push_back(std::move(pa));
    }
    pairs = std::move(old);
    for (auto &pa : fresh)
      pairs.push_back(std::move(pa));

    for (std::size_t k = 0; k < hi; ++k)
      if (active[k] && divides(hlm, polys[k].lm()))
        active[k] = false;
  };

  for (auto &g : input) {
    const auto deg = poly_degree(g);
    auto r = top_reduce(std::move(g), active_list(), ord, f);
    if (r.empty())
      continue;
    make_monic(r, f);
    update(std::move(r), deg);
  }

  while (!pairs.empty()) {
    // Sugar selection: smallest sugar, then smallest lcm, then index.
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      if (pairs[k].sugar != pairs[best].sugar) {
        if (pairs[k].sugar < pairs[best].sugar)
          best = k;
        continue;
      }
      const int c = ord.compare(pairs[k].lcm, pairs[best].lcm);
      if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i)))
        best = k;
    }
    const Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (++processed > lim.max_spairs)
      throw ResourceLimit("S-pair cap of " + std::to_string(lim.max_spairs) + " exceeded");
    check_deadline();
    auto h = top_reduce(spoly(polys[pr.i], polys[pr.j], ord, f), active_list(), ord, f);
    if (h.empty())
      continue;
    make_monic(h, f);
    const auto hs = std::max(pr.sugar, poly_degree(h));
    update(std::move(h), hs);
  }

  std::vector<OPoly> basis;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k])
      basis.push_back(polys[k]);
  return basis;
}

std::vector<OPoly> reduce_basis(std::vector<OPoly> g, const MonomialOrder &ord, const FiniteField &f) {
  // Minimal basis: drop elements whose leading monomial is divisible by
  // another's (keep the earliest among equal leading monomials).
  std::vector<OPoly> minimal;
  for (std::size_t a = 0; a < g.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < g.size() && !drop; ++b) {
      if (a == b)
        continue;
      if (divides(g[b].lm(), g[a].lm())) {
        const bool equal = ord.compare(g[a].lm(), g[b].lm()) == 0;
        drop = !equal || b < a;
      }
    }
    if (!drop)
      minimal.push_back(g[a]);
  }
  std::vector<OPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<const OPoly *> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a)
        others.push_back(&minimal[b]);
    auto r = normal_form(minimal[a], others, ord, f);
    make_monic(r, f);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const OPoly &x, const OPoly &y) { return ord.compare(x.lm(), y.lm()) > 0; });
  return reduced;
}

void check_order(const RingPtr &ring, const MonomialOrder &ord) {
  if (ord.nvars() != ring->nvars())
    throw SpecMismatch("monomial order over " + std::to_string(ord.nvars()) + " variables used in a ring with " +
                       std::to_string(ring->nvars()));
}

} // namespace

Exponents leading_exponents(const MPoly &f, const MonomialOrder &order) {
  if (f.is_zero())
    return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (order.compare(f.exps(i), f.exps(best)) > 0)
      best = i;
  return Exponents(f.exps(best).begin(), f.exps(best).end());
}

MPoly poly_reduce(const MPoly &f, const std::vector<MPoly> &divisors, const MonomialOrder &order) {
  check_order(f.ring(), order);
  std::vector<OPoly> ds;
  for (const auto &d : divisors) {
    if (!same_ring(d.ring(), f.ring()))
      throw SpecMismatch("reduction against a polynomial from another ring");
    if (!d.is_zero())
      ds.push_back(to_opoly(d, order));
  }
  std::vector<const OPoly *> ptrs;
  for (const auto &d : ds)
    ptrs.push_back(&d);
  return to_mpoly(normal_form(to_opoly(f, order), ptrs, order, f.field()), f.ring());
}

std::vector<MPoly> groebner_basis(const std::vector<MPoly> &gens, const MonomialOrder &order) {
  if (gens.empty())
    return {};
  const auto ring = gens.front().ring();
  check_order(ring, order);
  const auto &f = *ring->field();
  std::vector<OPoly> input;
  for (const auto &g : gens) {
    if (!same_ring(g.ring(), ring))
      throw SpecMismatch("generators from different rings");
    if (g.is_zero())
      continue;
    if (g.is_constant())
      return {MPoly(ring, 1)};
    input.push_back(to_opoly(g, order));
  }
  if (input.empty())
    return {};
  // Deterministic input order independent of how generators were listed.
  std::sort(input.begin(), input.end(), [&](const OPoly &x, const OPoly &y) {
    const int c = order.compare(x.lm(), y.lm());
    if (c != 0)
      return c < 0;
    return std::tie(x.e, x.c) < std::tie(y.e, y.c);
  });
  auto basis = reduce_basis(buchberger(std::move(input), order, f), order, f);
  std::vector<MPoly> out;
  out.reserve(basis.size());
  for (const auto &b : basis)
    out.push_back(to_mpoly(b, ring));
  return out;
}

Ideal::Ideal(RingPtr ring, std::vector<MPoly> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
  for (const auto &g : gens_)
    if (!same_ring(g.ring(), ring_))
      throw SpecMismatch("ideal generator from another ring");
}

const std::vector<MPoly> &Ideal::basis(const MonomialOrder &order) const {
  if (!cache_ || cache_->first != order.block_sizes())
    cache_.emplace(order.block_sizes(), groebner_basis(gens_, order));
  return cache_->second;
}

bool Ideal::contains(const MPoly &f) const {
  const auto ord = MonomialOrder::grevlex(ring_->nvars());
  return poly_reduce(f, basis(ord), ord).is_zero();
}

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const MPoly &g) { return g.is_zero(); });
}

std::vector<MPoly> saturate_and_eliminate(const std::vector<MPoly> &gens, const MPoly &f,
                                          const std::vector<std::size_t> &keep) {
  return saturate_and_eliminate(gens, f, keep, {keep.size()});
}

std::vector<MPoly> saturate_and_eliminate(const std::vector<MPoly> &gens, const MPoly &f,
                                          const std::vector<std::size_t> &keep,
                                          const std::vector<std::size_t> &keep_blocks) {
  const auto &ring = f.ring();
  const std::size_t n = ring->nvars();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n || kept[k])
      throw DomainError("InvalidArgument", "keep set must list distinct ring variables");
    kept[k] = true;
  }
  if (std::accumulate(keep_blocks.begin(), keep_blocks.end(), std::size_t{0}) != keep.size())
    throw DomainError("InvalidArgument", "keep blocks do not cover the keep set");
  if (f.is_zero())
    throw DivisionByZero("saturation by the zero polynomial");

  const bool saturate = !f.is_constant();
  std::vector<std::string> names;
  std::vector<std::size_t> mapping(n);
  if (saturate)
    names.push_back("_w");
  for (std::size_t v = 0; v < n; ++v)
    if (!kept[v]) {
      mapping[v] = names.size();
      names.push_back(ring->name(v));
    }
  const std::size_t elim = names.size();
  for (auto k : keep) {
    mapping[k] = names.size();
    names.push_back(ring->name(k));
  }
  auto big = make_ring(ring->field(), names);

  std::vector<MPoly> work;
  for (const auto &g : gens)
    work.push_back(g.remap(big, mapping));
  if (saturate)
    work.push_back(MPoly::variable(big, 0) * f.remap(big, mapping) - MPoly(big, 1));

  std::vector<std::size_t> blocks;
  if (elim)
    blocks.push_back(elim);
  for (auto b : keep_blocks)
    if (b)
      blocks.push_back(b);
  if (blocks.empty())
    blocks.push_back(0);
  const auto order = MonomialOrder::blocks(blocks);
  const auto gb = groebner_basis(work, order);

  std::vector<std::size_t> back(big->nvars(), n);
  for (std::size_t v = 0; v < n; ++v)
    back[mapping[v]] = v;
  std::vector<MPoly> out;
  for (const auto &g : gb) {
    bool free = true;
    for (std::size_t v = 0; v < elim && free; ++v)
      free = !g.uses_variable(v);
    if (free)
      out.push_back(g.remap(ring, back));
  }
  return out;
}

int krull_dimension(const std::vector<MPoly> &basis, const MonomialOrder &order,
                    std::optional<std::vector<std::size_t>> vars) {
  std::vector<std::size_t> pool;
  std::size_t n = order.nvars();
  if (vars)
    pool = *vars;
  else {
    pool.resize(n);
    std::iota(pool.begin(), pool.end(), 0);
  }
  std::vector<Exponents> lms;
  for (const auto &g : basis) {
    if (g.is_zero())
      continue;
    if (g.is_constant())
      return -1;
    lms.push_back(leading_exponents(g, order));
  }
  std::vector<bool> in(n, false);
  int best = 0;
  // A set S is independent when no leading monomial has support inside S.
  auto independent = [&] {
    for (const auto &m : lms) {
      bool inside = true;
      for (std::size_t v = 0; v < n && inside; ++v)
        if (m[v] && !in[v])
          inside = false;
      if (inside)
        return false;
    }
    return true;
  };
  auto dfs = [&](auto &&self, std::size_t pos, int size) -> void {
    if (size > best)
      best = size;
    if (size + static_cast<int>(pool.size() - pos) <= best)
      return;
    for (std::size_t k = pos; k < pool.size(); ++k) {
      in[pool[k]] = true;
      if (independent())
        self(self, k + 1, size + 1);
      in[pool[k]] = false;
    }
  };
  dfs(dfs, 0, 0);
  return best;
}

} // namespace pcl
