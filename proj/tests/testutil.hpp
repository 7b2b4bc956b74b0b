#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "teleskope/core.hpp"

// Test-side oracles: direct definitional enumerations over explicit subsets
// with plain rational arithmetic. They share no code with the library's
// counting engines.
namespace oracle_naive {

using teleskope::LengthVector;
using teleskope::Rational;

inline Rational signed_sum_of(const LengthVector& l, std::uint64_t bits) {
  Rational s;
  for (int i = 1; i <= l.size(); ++i) {
    if ((bits >> (i - 1)) & 1u)
      s += l.at(i);
    else
      s -= l.at(i);
  }
  return s;
}

inline Rational gap(const LengthVector& l) {
  std::optional<Rational> best;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << l.size()); ++bits) {
    Rational a = signed_sum_of(l, bits).abs();
    if (!best || a < *best) best = a;
  }
  return *best;
}

// Long (n-k-1)-subsets of {1..n-1}.
inline std::int64_t alpha(const LengthVector& l, int k) {
  const int n = l.size();
  if (k < 0 || k > n - 2) return 0;
  std::int64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n - 1)); ++bits) {
    if (std::popcount(bits) != n - k - 1) continue;
    if (signed_sum_of(l, bits).sign() > 0) ++count;
  }
  return count;
}

// The complement formulation: short (k+1)-subsets of {1..n} containing n.
inline std::int64_t alpha_dual(const LengthVector& l, int k) {
  const int n = l.size();
  if (k < 0 || k > n - 2) return 0;
  std::int64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if (std::popcount(bits) != k + 1) continue;
    if (!((bits >> (n - 1)) & 1u)) continue;
    // short: complement is long
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if (signed_sum_of(l, full & ~bits).sign() > 0) ++count;
  }
  return count;
}

inline std::int64_t beta(const LengthVector& first, const LengthVector& second, int k) {
  const int n = first.size();
  if (k < 0 || k > n - 2) return 0;
  std::int64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n - 2)); ++bits) {
    if (std::popcount(bits) != n - k - 2) continue;
    const std::uint64_t with_n = bits | (std::uint64_t{1} << (n - 1));
    const std::uint64_t with_n1 = bits | (std::uint64_t{1} << (n - 2));
    if (signed_sum_of(first, with_n).sign() < 0 && signed_sum_of(second, with_n1).sign() > 0)
      ++count;
  }
  return count;
}

inline std::int64_t a_fixed(const LengthVector& l, int k) {
  const int n = l.size();
  if (k < 0 || k > n - 2) return 0;
  int pivot = 1;
  for (int i = 2; i <= n; ++i)
    if (l.at(i) >= l.at(pivot)) pivot = i;
  std::int64_t count = 0;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if (std::popcount(bits) != k + 1) continue;
    if (!((bits >> (pivot - 1)) & 1u)) continue;
    if (signed_sum_of(l, full & ~bits).sign() > 0) ++count;
  }
  return count;
}

}  // namespace oracle_naive

namespace testutil {

using teleskope::LengthVector;
using teleskope::Rational;
using teleskope::TelescopicData;

// Sorted random integer legs in 1..max_len.
inline LengthVector random_fixed(std::mt19937_64& rng, int count, int max_len = 12) {
  std::uniform_int_distribution<int> dist(1, max_len);
  std::vector<Rational> vals;
  vals.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) vals.push_back(Rational(dist(rng)));
  std::sort(vals.begin(), vals.end());
  return LengthVector(std::move(vals));
}

// lo/hi drawn from chamber interiors of the critical telescopic lengths, so
// instances are generic by construction and cover all chamber pairs.
inline TelescopicData random_instance(std::mt19937_64& rng, int n, int max_len = 12) {
  const LengthVector fixed = random_fixed(rng, n - 1, max_len);
  auto criticals = teleskope::critical_lengths(fixed);
  std::vector<Rational> bounds;
  if (!(criticals.front() == Rational(0))) bounds.push_back(Rational(0));
  bounds.insert(bounds.end(), criticals.begin(), criticals.end());
  const int chambers = static_cast<int>(bounds.size());
  std::uniform_int_distribution<int> chamber_dist(0, chambers - 1);
  int i = chamber_dist(rng), j = chamber_dist(rng);
  if (i > j) std::swap(i, j);
  auto midpoint = [&](int c) {
    if (c + 1 < chambers)
      return (bounds[static_cast<std::size_t>(c)] + bounds[static_cast<std::size_t>(c + 1)]) / Rational(2);
    return bounds.back() + Rational(1);
  };
  Rational lo, hi;
  if (i == j) {
    if (i + 1 < chambers) {
      Rational w = bounds[static_cast<std::size_t>(i + 1)] - bounds[static_cast<std::size_t>(i)];
      lo = bounds[static_cast<std::size_t>(i)] + w / Rational(3);
      hi = bounds[static_cast<std::size_t>(i)] + (w + w) / Rational(3);
    } else {
      lo = bounds.back() + Rational(1);
      hi = bounds.back() + Rational(2);
    }
  } else {
    lo = midpoint(i);
    hi = midpoint(j);
  }
  return TelescopicData(fixed, lo, hi);
}

// Instance satisfying the vanishing hypothesis (lo+hi)/2 >= largest fixed leg.
inline TelescopicData random_vanishing_instance(std::mt19937_64& rng, int n, int max_len = 12) {
  const LengthVector fixed = random_fixed(rng, n - 1, max_len);
  const Rational top = fixed.at(fixed.size());
  std::uniform_int_distribution<int> off(0, 3 * max_len);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Rational lo = Rational(1 + off(rng)) / Rational(3);
    Rational hi = top + top - lo + Rational(1 + off(rng)) / Rational(3);
    if (!(lo < hi)) continue;
    TelescopicData data(fixed, lo, hi);
    if (teleskope::is_generic(data)) return data;
  }
  throw std::runtime_error("could not build a generic vanishing instance");
}

}  // namespace testutil
