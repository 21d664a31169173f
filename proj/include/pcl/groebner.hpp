#pragma once

#include "pcl/polynomial.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace pcl {

// Per-thread resource limits. Exceeding them throws ResourceLimit.
struct Limits {
  std::size_t max_spairs = 1'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

Limits &current_limits();

// Installs limits for the current thread for the lifetime of the scope.
class LimitScope {
public:
  explicit LimitScope(Limits limits) : saved_(current_limits()) { current_limits() = limits; }
  ~LimitScope() { current_limits() = saved_; }
  LimitScope(const LimitScope &) = delete;
  LimitScope &operator=(const LimitScope &) = delete;

private:
  Limits saved_;
};

// Deterministic normal form: repeatedly cancels the largest reducible term
// using the first divisor in list order.
MPoly poly_reduce(const MPoly &f, const std::vector<MPoly> &divisors, const MonomialOrder &order);

// The reduced Groebner basis: monic, inter-reduced, sorted by leading
// monomial descending. The unit ideal yields {1}; the zero ideal yields {}.
std::vector<MPoly> groebner_basis(const std::vector<MPoly> &gens, const MonomialOrder &order);

// Leading monomial of f under the order.
Exponents leading_exponents(const MPoly &f, const MonomialOrder &order);

class Ideal {
public:
  explicit Ideal(RingPtr ring, std::vector<MPoly> gens = {});

  const RingPtr &ring() const noexcept { return ring_; }
  const std::vector<MPoly> &generators() const noexcept { return gens_; }
  // Cached per order.
  const std::vector<MPoly> &basis(const MonomialOrder &order) const;
  bool contains(const MPoly &f) const;
  bool is_zero() const;

private:
  RingPtr ring_;
  std::vector<MPoly> gens_;
  mutable std::optional<std::pair<std::vector<std::size_t>, std::vector<MPoly>>> cache_;
};

// (I : f^inf) intersected with F_q[keep], via a tag variable w with w*f - 1
// and an order eliminating the non-kept variables together with w. The
// result is the reduced basis for grevlex on the kept variables (in ring
// order), expressed in the original ring. f may be constant (no saturation).
std::vector<MPoly> saturate_and_eliminate(const std::vector<MPoly> &gens, const MPoly &f,
                                          const std::vector<std::size_t> &keep);

// Same, but the kept variables are ordered by the given block sizes
// (consecutive runs of `keep` in the given order).
std::vector<MPoly> saturate_and_eliminate(const std::vector<MPoly> &gens, const MPoly &f,
                                          const std::vector<std::size_t> &keep,
                                          const std::vector<std::size_t> &keep_blocks);

// Krull dimension of F_q[vars]/I from the leading monomials of a Groebner
// basis (largest variable subset free of leading monomials). -1 for the unit
// ideal. `vars` restricts the ambient variable set (default: all).
int krull_dimension(const std::vector<MPoly> &basis, const MonomialOrder &order,
                    std::optional<std::vector<std::size_t>> vars = std::nullopt);

} // namespace pcl
