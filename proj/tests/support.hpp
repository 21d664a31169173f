#pragma once

#include "pcl/function_field.hpp"
#include "pcl/parser.hpp"

#include <random>
#include <string>
#include <vector>

namespace pcl::testing {

inline AmbientPtr ambient(unsigned p, std::vector<std::string> vars, unsigned m = 1) {
  return make_ambient(FiniteField::get(p, m), std::move(vars));
}

struct Session {
  AmbientPtr k;
  RatFunc operator()(const std::string &s) const { return parse_element(s, k); }
  std::vector<RatFunc> tuple(const std::string &s) const { return parse_tuple(s, k); }
};

inline Session session(unsigned p, std::vector<std::string> vars, unsigned m = 1) {
  return {ambient(p, std::move(vars), m)};
}

// Random sparse polynomial with bounded degree per variable.
inline MPoly random_poly(const RingPtr &ring, std::mt19937_64 &rng, unsigned max_terms, unsigned max_deg) {
  const auto &f = *ring->field();
  std::uniform_int_distribution<unsigned> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::uint64_t> coef(1, f.order() - 1);
  std::vector<std::pair<Exponents, FiniteField::Elem>> terms;
  const unsigned k = nterms(rng);
  for (unsigned i = 0; i < k; ++i) {
    Exponents e(ring->nvars());
    for (auto &x : e)
      x = deg(rng);
    terms.emplace_back(std::move(e), static_cast<FiniteField::Elem>(coef(rng)));
  }
  return MPoly::from_terms(ring, std::move(terms));
}

inline RatFunc random_ratfunc(const AmbientPtr &k, std::mt19937_64 &rng, unsigned max_terms = 3,
                              unsigned max_deg = 3) {
  MPoly den = random_poly(k->ring(), rng, max_terms, max_deg);
  if (den.is_zero())
    den = MPoly(k->ring(), 1);
  return RatFunc(k, random_poly(k->ring(), rng, max_terms, max_deg), den);
}

} // namespace pcl::testing
