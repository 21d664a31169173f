#pragma once

#include "pcl/function_field.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcl {

// Value of a polynomial in tag variables y_1..y_k at the given elements.
RatFunc evaluate(const MPoly &poly, const std::vector<RatFunc> &at, const AmbientPtr &ambient);

// x = num(g) / den(g), with num, den over the tag ring y1..yk.
struct MembershipWitness {
  MPoly num;
  MPoly den;
  RatFunc value;

  std::string to_string() const;
};

struct RelationIdeal {
  RingPtr ring;             // y1..yk
  std::vector<MPoly> basis; // reduced, grevlex
  int dimension = 0;
};

// D = F_q(g_1, ..., g_k) inside K.
class Subfield {
public:
  Subfield(AmbientPtr ambient, std::vector<RatFunc> gens, std::string label = {});

  const AmbientPtr &ambient() const noexcept { return ambient_; }
  const std::vector<RatFunc> &gens() const noexcept { return gens_; }
  const std::string &label() const noexcept { return label_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const RingPtr &tag_ring() const noexcept { return tags_; }

  // Computed once per presentation.
  const RelationIdeal &relations() const;

  Subfield adjoin(const std::vector<RatFunc> &more) const;

private:
  struct Cache;
  AmbientPtr ambient_;
  std::vector<RatFunc> gens_;
  std::string label_;
  RingPtr tags_;
  std::shared_ptr<Cache> cache_;
};

std::optional<MembershipWitness> member(const RatFunc &x, const Subfield &D);
bool field_leq(const Subfield &a, const Subfield &b);
bool field_equal(const Subfield &a, const Subfield &b);
std::size_t trdeg(const Subfield &D);

// Monic X^d + sum_{j<d} c_j X^j over D.
struct MinimalPolynomial {
  std::uint32_t p = 0;
  std::size_t degree = 0;
  std::vector<MembershipWitness> coeffs; // c_0 .. c_{d-1}

  // False exactly when every exponent with nonzero coefficient is
  // divisible by p.
  bool separable() const;
  std::string to_string(const std::string &var = "X") const;
};

// std::nullopt when x is transcendental over D.
std::optional<MinimalPolynomial> minimal_polynomial(const RatFunc &x, const Subfield &D);

} // namespace pcl
