#pragma once

#include "pcl/lambda.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcl {

// Base data for the splitting-pairs recursion: C with a p-basis c, K/C
// separable. Witness terms name the inputs a1.., c1...
class ClosureBase {
public:
  // Checks c is a p-basis of C and K/C is separable; NotSeparableBase if not.
  ClosureBase(Subfield C, KTuple c);

  const Subfield &field() const noexcept { return C_; }
  const KTuple &basis() const noexcept { return c_; }
  const std::vector<LambdaTerm> &basis_terms() const noexcept { return c_terms_; }
  const AmbientPtr &ambient() const noexcept { return C_.ambient(); }

  // F_q with the empty p-basis.
  static ClosureBase prime(AmbientPtr ambient);

private:
  Subfield C_;
  KTuple c_;
  std::vector<LambdaTerm> c_terms_;
};

struct SplitPair {
  KTuple a, b;
  std::vector<LambdaTerm> a_terms, b_terms;
};

// C(b) as a presentation: gens(C) followed by the distinct non-constant
// entries of b (a is contained in b for every stage built from (0, a)).
Subfield stage_field(const ClosureBase &base, const SplitPair &pair);

// One application of the splitting-pairs map. In prune mode the appended
// block drops zeros, constants, repeats and members of the current field.
SplitPair splitting_step(const ClosureBase &base, const SplitPair &pair, bool prune = false);

// (empty, a) with variables a1.. as witness terms.
SplitPair initial_pair(const KTuple &a);

struct ClosureTrace {
  std::vector<SplitPair> stages;
  // First stage whose field equals the previous one.
  std::size_t fixpoint_stage = 0;
  // Steps that enlarged the field.
  std::size_t nontrivial_steps = 0;
  Subfield closure; // generated by the final stage

  const SplitPair &final_stage() const { return stages.back(); }
};

ClosureTrace local_lambda_closure(const KTuple &a, const ClosureBase &base, bool prune = false);

struct FiniteTruncation {
  std::vector<SplitPair> stages;
  std::size_t n = 0;         // minimal stage with b separable over C(stage)
  KTuple tuple;              // flattened stage: its b-part
  std::vector<std::size_t> sigma; // positions of the original a
  std::optional<std::size_t> max_over_orderings;
};

// Stops at the first stage n where C(stage)(b) / C(stage) is separable.
FiniteTruncation lambda_fbc(const KTuple &a, const KTuple &b, const ClosureBase &base, bool all_orderings = false,
                            bool prune = false);

// Lambda closure of F_q(gens) in K, presented by the I-part of the final
// stage followed by the other non-redundant stage elements.
struct SubfieldClosure {
  Subfield field;
  ClosureTrace trace;
};
SubfieldClosure lambda_closure_of_subfield(const KTuple &gens, const AmbientPtr &ambient, bool prune = false);

// E/D separable (D <= E required). Uses membership in E^(p)(d).
bool is_separable(const Subfield &D, const Subfield &E);
// Same question with E = K, decided by linear algebra over K^(p).
bool is_separable_in_ambient(const Subfield &D);
bool is_separated(const Subfield &D, const Subfield &E);

// The whole ambient field as a presentation.
Subfield ambient_subfield(const AmbientPtr &ambient);

} // namespace pcl
