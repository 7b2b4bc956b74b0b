#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "teleskope/core.hpp"

namespace teleskope {

enum class CountEngine {
  Auto,     // bitmask up to 24 free indices, DP when integer-scalable
  Bitmask,  // exhaustive subset enumeration
  Dp,       // cardinality-resolved subset-sum dynamic program
};

struct CountOptions {
  CountEngine engine = CountEngine::Auto;
  // DP is eligible when the common-denominator scaling keeps the total
  // scaled length at or below this bound.
  std::int64_t dp_total_bound = 2'000'000;
};

struct CountTable {
  enum class Kind { Alpha, Beta, AFixed };
  Kind kind;
  std::vector<std::int64_t> values;  // indexed by k = 0..n-2
  std::string provenance;            // which length vector(s) produced it

  std::int64_t at(int k) const {
    return (k < 0 || k >= static_cast<int>(values.size())) ? 0 : values[static_cast<std::size_t>(k)];
  }
};

// Number of long subsets J of {1,...,n-1} with |J| = n-k-1, w.r.t. the full
// n-vector. Equivalently the short (k+1)-subsets of {1,...,n} containing n.
// Out-of-range k counts an impossible cardinality and is 0.
std::int64_t alpha(const LengthVector& lengths, int k, const CountOptions& opts = {});

// Number of J in {1,...,n-2} with |J| = n-k-2 such that J + {n} is short
// w.r.t. `first` and J + {n-1} is long w.r.t. `second`. The two vectors must
// agree on coordinates 1..n-1.
std::int64_t beta(const LengthVector& first, const LengthVector& second, int k,
                  const CountOptions& opts = {});

// Number of short (k+1)-subsets of {1,...,n} containing the index of the
// longest leg (ties broken to the largest such index).
std::int64_t a_fixed(const LengthVector& lengths, int k, const CountOptions& opts = {});

CountTable alpha_table(const LengthVector& lengths, const CountOptions& opts = {});
CountTable beta_table(const LengthVector& first, const LengthVector& second,
                      const CountOptions& opts = {});
CountTable a_fixed_table(const LengthVector& lengths, const CountOptions& opts = {});

}  // namespace teleskope
