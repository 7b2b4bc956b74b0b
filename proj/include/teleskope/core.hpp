#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "teleskope/errors.hpp"
#include "teleskope/rational.hpp"

namespace teleskope {

// Positive leg lengths, indexed 1-based to match the usual linkage notation.
class LengthVector {
public:
  explicit LengthVector(std::vector<Rational> lengths);
  static LengthVector parse(const std::vector<std::string>& texts);

  int size() const { return static_cast<int>(lengths_.size()); }
  const Rational& at(int i) const;  // i in 1..size()
  const std::vector<Rational>& values() const { return lengths_; }

  bool is_sorted_ascending() const;
  Rational total() const;

  // New vector with `t` appended as the last leg.
  LengthVector with_appended(const Rational& t) const;
  // Legs `from..to` (inclusive, 1-based).
  LengthVector slice(int from, int to) const;

  friend bool operator==(const LengthVector& a, const LengthVector& b) { return a.lengths_ == b.lengths_; }

private:
  std::vector<Rational> lengths_;
};

// Subset of {1,...,n} as a bit set; n <= 64. Implicitly encodes the sign
// vector with +1 on members and -1 elsewhere.
class SubsetMask {
public:
  explicit SubsetMask(int universe, std::uint64_t bits = 0);
  static SubsetMask of(int universe, std::initializer_list<int> members);

  int universe() const { return universe_; }
  std::uint64_t bits() const { return bits_; }
  int count() const;
  bool contains(int i) const;
  SubsetMask with(int i) const;
  SubsetMask without(int i) const;
  SubsetMask complement() const;
  std::vector<int> members() const;          // ascending, 1-based
  std::vector<int> sign_vector() const;      // +1 / -1 per index

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.universe_ == b.universe_ && a.bits_ == b.bits_;
  }

private:
  std::uint64_t bits_;
  int universe_;
};

// Metric data of a linkage whose last leg is telescopic: fixed legs sorted
// ascending plus the admissible interval [lo, hi] for the last leg.
class TelescopicData {
public:
  TelescopicData(LengthVector fixed_sorted, Rational lo, Rational hi);

  const LengthVector& fixed() const { return fixed_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int n() const { return fixed_.size() + 1; }

  LengthVector lower_vector() const { return fixed_.with_appended(lo_); }
  LengthVector upper_vector() const { return fixed_.with_appended(hi_); }
  LengthVector vector_at(const Rational& t) const { return fixed_.with_appended(t); }

private:
  LengthVector fixed_;
  Rational lo_;
  Rational hi_;
};

// sum_{i in J} l_i - sum_{i not in J} l_i, exactly.
Rational signed_sum(const LengthVector& lengths, const SubsetMask& subset);

// signed_sum > 0. A zero sum throws DegenerateSubsetError: such a subset is
// neither long nor short and the caller was responsible for genericity.
bool is_long(const LengthVector& lengths, const SubsetMask& subset);
bool is_short(const LengthVector& lengths, const SubsetMask& subset);

// min |sum_i eps_i l_i| over all sign vectors; zero exactly when some signed
// sum vanishes, i.e. the vector is non-generic.
Rational genericity_gap(const LengthVector& lengths);

struct GapWitness {
  Rational gap;
  std::vector<int> signs;  // a sign vector attaining the minimum
};
GapWitness genericity_gap_witness(const LengthVector& lengths);

bool is_generic(const TelescopicData& data);
// Throws GenericityError carrying one zero sign vector per degenerate endpoint.
void require_generic(const TelescopicData& data);

// Sorted distinct values |sum eps_i l_i| over the fixed legs: the telescopic
// lengths at which the band crosses a critical level. Betti numbers are
// constant while lo and hi stay strictly between consecutive values.
std::vector<Rational> critical_lengths(const LengthVector& fixed);

namespace detail {

// Common-denominator integer form of a length vector, used by the
// enumeration and DP engines. `small` is populated when every partial signed
// sum fits comfortably in int64.
struct ScaledLengths {
  std::vector<BigInt> big;
  std::vector<std::int64_t> small;
  BigInt denom;
  bool fits64 = false;
};
ScaledLengths scale_to_integers(const std::vector<Rational>& values);

}  // namespace detail

}  // namespace teleskope
