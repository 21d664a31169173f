#pragma once

#include "pcl/closure.hpp"
#include "pcl/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcl {

// Ideal of polynomials over C vanishing at a. Coefficients from C are
// carried by tag variables c1..ck standing for gens(C); the ring is
// F_q[x1..xm, c1..ck] and the basis is the reduced basis of all relations
// among (a, gens(C)), eliminating x before c.
struct AffineIdeal {
  RingPtr ring;
  std::size_t point_vars = 0; // m
  std::vector<MPoly> basis;
  // trdeg C(a)/C
  int dimension = 0;

  std::string to_string() const; // "<f1, f2>"
};

AffineIdeal locus(const KTuple &a, const Subfield &C);
AffineIdeal locus(const KTuple &a, const AmbientPtr &ambient); // over F_q

// b = b1 ++ b2 up to order: b1 a transcendence basis of D(b)/D and every
// element of b2 separably algebraic over D(b1).
struct SepTransSplit {
  std::vector<std::size_t> b1, b2; // positions in b
};

// Greedy scan first, then every subset of the right size when |b| <= 4.
// Throws NotSeparable when no split exists.
SepTransSplit sep_trans_split(const KTuple &b, const Subfield &D);

// Minimal polynomial of a_j over D(a_0..a_{j-1}) written as g_j / h_j with
// g_j, h_j in F_q[D1..Dk, X1..Xm]; h_j free of X_j and g_j = 0, h_j = 1
// for transcendental a_j.
struct ToolEntry {
  MPoly g, h;
  std::size_t degree = 0; // 0 when transcendental
  bool separable = true;
};

struct ToolPresentation {
  RingPtr ring;             // D1..Dk, X1..Xm
  std::size_t base_vars = 0; // k
  std::vector<ToolEntry> entries;
};

ToolPresentation tool_presentation(const KTuple &a, const Subfield &D);

enum class SurjectivityMode { Auto, Direct, Lambda };

struct SurjectivityOptions {
  std::size_t samples = 100;
  std::size_t precision = 32;
  // perturbations have valuation >= delta
  std::size_t delta = 1;
  std::uint64_t seed = 0;
  SurjectivityMode mode = SurjectivityMode::Auto;
  // Candidate centers; empty means scan F_q^n in order.
  std::vector<std::vector<FiniteField::Elem>> centers;
};

struct SurjectivityReport {
  std::string mode; // "direct" or "lambda"
  std::size_t samples = 0;
  std::size_t lifted = 0;
  std::vector<std::string> failures;
  std::size_t precision = 0;
  std::vector<FiniteField::Elem> center;
  std::size_t jacobian_valuation = 0;
  std::size_t equations = 0;
  // Lifted points satisfying every locus generator mod t^N.
  std::size_t on_locus = 0;
  // Lambda mode: the truncation stage and coordinate projection.
  std::size_t stage = 0;
  std::vector<std::size_t> sigma;
  KTuple lambda_tuple;
};

// Samples points of locus(a/C) near the embedded a and lifts each to a point
// of locus((a,b)/C) near (a,b) by Newton iteration on a TOOL system.
SurjectivityReport local_surjectivity_check(const KTuple &a, const KTuple &b, const Subfield &C,
                                            const SurjectivityOptions &opts);

struct InteriorLevel {
  std::size_t m = 0;
  bool feasible = false; // p^(N-m) <= |S|
  std::size_t full_cosets = 0;
};

struct InteriorReport {
  std::uint32_t p = 0;
  std::size_t precision = 0;
  std::size_t ybound = 0;
  std::vector<std::vector<std::uint32_t>> residues; // sorted
  std::vector<InteriorLevel> levels;                // m = 0..N-1
};

// Image S of y -> y^p + t*y^(2p) mod t^N over y in F_p[t] of degree < ybound,
// and for each m the cosets c + t^m F_p[[t]] contained in S.
InteriorReport interior_scan(std::uint32_t p, std::size_t precision, std::size_t ybound);

} // namespace pcl
