#pragma once

#include "pcl/subfield.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcl {

using KTuple = std::vector<RatFunc>;

// K^(p)(s) for an absolutely p-independent tuple s, kept as the coordinate
// vectors of the p-monomials s^I (MultiIndex order). Coordinates turn
// K^(p)-linear algebra into K-linear algebra: coord(mu^p * e) = mu * coord(e).
class PSpan {
public:
  explicit PSpan(AmbientPtr ambient);

  const KTuple &tuple() const noexcept { return kept_; }
  std::size_t size() const noexcept { return kept_.size(); }

  // Appends e when e is not in K^(p)(tuple); returns whether it did.
  bool try_extend(const RatFunc &e);
  bool contains(const RatFunc &x) const { return solve(x).has_value(); }
  // mu with x = sum_I s^I * mu_I^p, indexed by MultiIndex::linear.
  std::optional<std::vector<RatFunc>> solve(const RatFunc &x) const;

private:
  AmbientPtr ambient_;
  std::uint32_t p_;
  KTuple kept_;
  std::vector<RatFunc> monomials_;
  std::vector<std::vector<RatFunc>> columns_; // coordinate vector per monomial
};

struct SpanWitness {
  KTuple basis;                // independent sub-tuple of gens(C) ++ b
  std::vector<RatFunc> coeffs; // x = sum_I basis^I * coeffs[I]^p
};

// x in K^(p) C(b)?
std::optional<SpanWitness> in_p_span(const RatFunc &x, const KTuple &b, const Subfield &C);
bool p_independent(const KTuple &b, const Subfield &C);
// Left-greedy p-independent sub-tuple of b over C.
KTuple p_ind_prefix(const KTuple &b, const Subfield &C);

// Absolute p-independence in K.
bool p_independent(const KTuple &b);

// The family lambda^b_I(a), complete over all I in p^[|b|].
std::map<MultiIndex, RatFunc> lambda_eval(const RatFunc &a, const KTuple &b);

// Greedy p-basis of D from its generators, and its length.
KTuple p_basis(const Subfield &D);
std::size_t impdeg(const Subfield &D);
// p-basis of E over D, drawn from gens(E).
KTuple p_basis_rel(const Subfield &E, const Subfield &D);
std::size_t impdeg_rel(const Subfield &E, const Subfield &D);

// Terms of the lambda language. Nodes are immutable and may be shared.
struct LambdaNode;
using LambdaTerm = std::shared_ptr<const LambdaNode>;

struct LambdaNode {
  enum class Kind { Var, Const, Add, Sub, Mul, Inv, Apply };
  Kind kind;
  std::string name;           // Var
  FieldPtr field;             // Const
  FiniteField::Elem value = 0; // Const
  std::uint32_t p = 0;        // Apply
  MultiIndex index;           // Apply
  std::vector<LambdaTerm> args; // Apply: x, y_1..y_k

  static LambdaTerm var(std::string name);
  static LambdaTerm constant(FieldPtr field, FiniteField::Elem value);
  static LambdaTerm add(LambdaTerm a, LambdaTerm b);
  static LambdaTerm sub(LambdaTerm a, LambdaTerm b);
  static LambdaTerm mul(LambdaTerm a, LambdaTerm b);
  static LambdaTerm inv(LambdaTerm a);
  static LambdaTerm apply(std::uint32_t p, MultiIndex index, LambdaTerm x, std::vector<LambdaTerm> ys);
};

using Environment = std::map<std::string, RatFunc>;

// Zero extension: l_{p,I}(x, y) is 0 unless p is the characteristic, |I| =
// |y|, y is p-independent and x lies in K^(p)(y).
RatFunc lambda_term_eval(const LambdaTerm &term, const Environment &env, const AmbientPtr &ambient);

std::string to_sexpr(const LambdaTerm &term);
// Inverse of to_sexpr; constants are read in `field`.
LambdaTerm parse_sexpr(const std::string &src, const FieldPtr &field);

} // namespace pcl
