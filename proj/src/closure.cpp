#include "pcl/closure.hpp"

#include "pcl/errors.hpp"

#include <algorithm>
#include <numeric>

namespace pcl {

namespace {

std::vector<LambdaTerm> named_terms(const std::string &prefix, std::size_t n) {
  std::vector<LambdaTerm> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(LambdaNode::var(prefix + std::to_string(i + 1)));
  return out;
}

bool contains_equal(const KTuple &xs, const RatFunc &x) {
  return std::any_of(xs.begin(), xs.end(), [&](const RatFunc &y) { return y == x; });
}

KTuple distinct_nonconstant(const KTuple &xs) {
  KTuple out;
  for (const auto &x : xs)
    if (!x.is_constant() && !contains_equal(out, x))
      out.push_back(x);
  return out;
}

// Members of F_q(gens), trying cheap answers before a Groebner basis.
bool in_field(const RatFunc &x, const KTuple &gens, const AmbientPtr &amb) {
  if (x.is_constant() || contains_equal(gens, x))
    return true;
  return member(x, Subfield(amb, gens)).has_value();
}

} // namespace

ClosureBase::ClosureBase(Subfield C, KTuple c) : C_(std::move(C)), c_(std::move(c)) {
  c_terms_ = named_terms("c", c_.size());
  const auto &amb = C_.ambient();
  for (const auto &x : c_)
    if (!in_field(x, distinct_nonconstant(C_.gens()), amb))
      throw NotSeparableBase("p-basis element " + x.to_string() + " is not in the base field");
  // c must p-span C: every generator lies in C^(p)(c).
  KTuple spanning;
  for (const auto &g : C_.gens())
    spanning.push_back(g.frobenius());
  spanning.insert(spanning.end(), c_.begin(), c_.end());
  spanning = distinct_nonconstant(spanning);
  for (const auto &g : C_.gens())
    if (!in_field(g, spanning, amb))
      throw NotSeparableBase("tuple does not p-span the base field at " + g.to_string());
  // A p-basis of C that stays p-independent in K witnesses K/C separable.
  if (!p_independent(c_))
    throw NotSeparableBase("the ambient field is not separable over the base (p-basis becomes dependent)");
}

ClosureBase ClosureBase::prime(AmbientPtr ambient) { return ClosureBase(Subfield(std::move(ambient), {}), {}); }

Subfield stage_field(const ClosureBase &base, const SplitPair &pair) {
  KTuple gens = base.field().gens();
  gens.insert(gens.end(), pair.b.begin(), pair.b.end());
  return Subfield(base.ambient(), distinct_nonconstant(gens));
}

SplitPair initial_pair(const KTuple &a) {
  SplitPair s;
  s.b = a;
  s.b_terms = named_terms("a", a.size());
  return s;
}

SplitPair splitting_step(const ClosureBase &base, const SplitPair &pair, bool prune) {
  const auto &amb = base.ambient();
  const std::uint32_t p = amb->characteristic();
  SplitPair next = pair;

  // K^(p) C(a) = K^(p)(c, a) because c is a p-basis of C and K/C separable.
  PSpan span(amb);
  for (const auto &x : base.basis())
    span.try_extend(x);
  for (const auto &x : pair.a)
    if (!span.try_extend(x))
      throw NotPIndependent("I-part is not p-independent over the base");
  for (std::size_t i = 0; i < pair.b.size(); ++i)
    if (span.try_extend(pair.b[i])) {
      next.a.push_back(pair.b[i]);
      next.a_terms.push_back(pair.b_terms[i]);
    }

  std::vector<LambdaTerm> ca_terms = base.basis_terms();
  ca_terms.insert(ca_terms.end(), next.a_terms.begin(), next.a_terms.end());
  const std::size_t len = ca_terms.size();
  const auto indices = all_multi_indices(p, len);

  KTuple current = prune ? distinct_nonconstant(stage_field(base, pair).gens()) : KTuple{};
  for (std::size_t i = 0; i < pair.b.size(); ++i) {
    auto mu = span.solve(pair.b[i]);
    if (!mu)
      throw DomainError("InternalError", "stage element escaped the p-span of the I-part");
    for (std::size_t j = 0; j < indices.size(); ++j) {
      const RatFunc &v = (*mu)[j];
      if (prune) {
        if (v.is_constant() || in_field(v, current, amb))
          continue;
        current.push_back(v);
      }
      next.b.push_back(v);
      next.b_terms.push_back(LambdaNode::apply(p, indices[j], pair.b_terms[i], ca_terms));
    }
  }
  return next;
}

namespace {

// Does the block appended after `prev` leave C(stage) unchanged?
bool same_field(const ClosureBase &base, const SplitPair &prev, const SplitPair &next) {
  const KTuple gens = stage_field(base, prev).gens();
  for (std::size_t i = prev.b.size(); i < next.b.size(); ++i)
    if (!in_field(next.b[i], gens, base.ambient()))
      return false;
  return true;
}

} // namespace

ClosureTrace local_lambda_closure(const KTuple &a, const ClosureBase &base, bool prune) {
  ClosureTrace trace{{initial_pair(a)}, 0, 0, stage_field(base, initial_pair(a))};
  for (;;) {
    SplitPair next = splitting_step(base, trace.stages.back(), prune);
    const bool fixed = same_field(base, trace.stages.back(), next);
    trace.stages.push_back(std::move(next));
    if (fixed)
      break;
    ++trace.nontrivial_steps;
  }
  trace.fixpoint_stage = trace.stages.size() - 1;
  trace.closure = stage_field(base, trace.final_stage());
  return trace;
}

namespace {

std::size_t truncation_stage(const KTuple &a, const KTuple &b, const ClosureBase &base, bool prune,
                             std::vector<SplitPair> *stages) {
  SplitPair pair = initial_pair(a);
  for (std::size_t n = 0;; ++n) {
    const Subfield D = stage_field(base, pair);
    if (stages)
      stages->push_back(pair);
    if (is_separable(D, D.adjoin(b)))
      return n;
    SplitPair next = splitting_step(base, pair, prune);
    if (same_field(base, pair, next))
      throw DomainError("InternalError", "closure reached a fixpoint before b became separable");
    pair = std::move(next);
  }
}

} // namespace

FiniteTruncation lambda_fbc(const KTuple &a, const KTuple &b, const ClosureBase &base, bool all_orderings,
                            bool prune) {
  FiniteTruncation out;
  out.n = truncation_stage(a, b, base, prune, &out.stages);
  out.tuple = out.stages.back().b;
  out.sigma.resize(a.size());
  std::iota(out.sigma.begin(), out.sigma.end(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(out.tuple[out.sigma[i]] == a[i]))
      throw DomainError("InternalError", "coordinate projection does not recover a");
  if (all_orderings) {
    if (a.size() > 4)
      throw DomainError("TooManyOrderings", "all orderings are only tried for at most 4 elements");
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
      KTuple permuted;
      for (auto i : perm)
        permuted.push_back(a[i]);
      best = std::max(best, truncation_stage(permuted, b, base, prune, nullptr));
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.max_over_orderings = best;
  }
  return out;
}

SubfieldClosure lambda_closure_of_subfield(const KTuple &gens, const AmbientPtr &ambient, bool prune) {
  const ClosureBase base = ClosureBase::prime(ambient);
  ClosureTrace trace = local_lambda_closure(gens, base, prune);
  const auto &last = trace.final_stage();
  KTuple kept = distinct_nonconstant(last.a);
  for (const auto &x : distinct_nonconstant(last.b))
    if (!in_field(x, kept, ambient))
      kept.push_back(x);
  return {Subfield(ambient, kept), std::move(trace)};
}

Subfield ambient_subfield(const AmbientPtr &ambient) {
  KTuple vars;
  for (std::size_t i = 0; i < ambient->nvars(); ++i)
    vars.push_back(RatFunc::variable(ambient, i));
  return Subfield(ambient, vars);
}

namespace {

bool is_ambient(const Subfield &E) {
  const auto &amb = E.ambient();
  for (std::size_t i = 0; i < amb->nvars(); ++i)
    if (!contains_equal(E.gens(), RatFunc::variable(amb, i)))
      return false;
  return true;
}

void require_subfield(const Subfield &D, const Subfield &E) {
  if (!field_leq(D, E))
    throw DomainError("NotASubfield", "first field is not contained in the second");
}

} // namespace

bool is_separable_in_ambient(const Subfield &D) { return p_independent(p_basis(D)); }

bool is_separable(const Subfield &D, const Subfield &E) {
  require_subfield(D, E);
  const KTuple d = p_basis(D);
  if (is_ambient(E))
    return p_independent(d);
  KTuple powers;
  for (const auto &g : E.gens())
    powers.push_back(g.frobenius());
  powers = distinct_nonconstant(powers);
  for (std::size_t i = 0; i < d.size(); ++i) {
    KTuple gens = powers;
    for (std::size_t j = 0; j < d.size(); ++j)
      if (j != i)
        gens.push_back(d[j]);
    if (in_field(d[i], distinct_nonconstant(gens), E.ambient()))
      return false;
  }
  return true;
}

bool is_separated(const Subfield &D, const Subfield &E) {
  if (!is_separable(D, E))
    return false;
  KTuple gens;
  for (const auto &g : E.gens())
    gens.push_back(g.frobenius());
  gens.insert(gens.end(), D.gens().begin(), D.gens().end());
  gens = distinct_nonconstant(gens);
  for (const auto &g : E.gens())
    if (!in_field(g, gens, E.ambient()))
      return false;
  return true;
}

} // namespace pcl
