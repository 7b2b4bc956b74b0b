#pragma once

#include <cstdint>
#include <vector>

#include "teleskope/combinat.hpp"
#include "teleskope/core.hpp"

namespace teleskope {

// Integral homology ranks. dim is n-2 for a telescopic instance and n-3 for
// a fixed-length one; the groups are free abelian, so ranks tell all.
struct BettiProfile {
  std::vector<std::int64_t> ranks;  // k = 0..dim
  bool torsion_free = true;
  std::int64_t euler = 0;  // alternating sum, cached

  int dim() const { return static_cast<int>(ranks.size()) - 1; }
  std::int64_t rank(int k) const {
    return (k < 0 || k >= static_cast<int>(ranks.size())) ? 0 : ranks[static_cast<std::size_t>(k)];
  }
  friend bool operator==(const BettiProfile& a, const BettiProfile& b) { return a.ranks == b.ranks; }
};

BettiProfile make_profile(std::vector<std::int64_t> ranks);

// rank H_k = alpha_k(lower) - beta_k(upper, lower)
//          + alpha_{n-3-k}(upper) - beta_{n-3-k}(lower, upper), k = 0..n-2.
BettiProfile betti_telescopic(const TelescopicData& data, const CountOptions& opts = {});

// Fixed length vector of size n: rank H_k = a_k + a_{n-3-k}, k = 0..n-3.
BettiProfile betti_fixed(const LengthVector& lengths, const CountOptions& opts = {});

// Closed forms for unit legs with the last leg varying in [a, b].
// Rejects a or b equal to an integer of parity opposite to n.
BettiProfile betti_equilateral(int n, const Rational& a, const Rational& b);

// For odd n the band is odd-dimensional and compact, so its Euler
// characteristic must be half that of its boundary.
struct EulerBoundaryCheck {
  bool applicable = false;  // false when n is even: no constraint
  bool pass = false;
  std::int64_t chi_band = 0;
  std::int64_t chi_lower = 0;
  std::int64_t chi_upper = 0;
};
EulerBoundaryCheck euler_consistency(const TelescopicData& data);

std::int64_t binomial(int n, int k);

}  // namespace teleskope
