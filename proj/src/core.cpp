#include "teleskope/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace teleskope {

namespace {

constexpr int kDirectEnumLimit = 24;  // legs; 2^(m-1) signed sums
constexpr int kMeetInMiddleLimit = 40;

void check_index(int i, int universe, const char* what) {
  if (i < 1 || i > universe)
    throw ContractError(std::string(what) + ": index " + std::to_string(i) + " outside 1.." +
                        std::to_string(universe));
}

}  // namespace

LengthVector::LengthVector(std::vector<Rational> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw ContractError("length vector must be nonempty");
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (lengths_[i].sign() <= 0)
      throw ContractError("leg " + std::to_string(i + 1) + " must be strictly positive, got " +
                          lengths_[i].str());
  }
}

LengthVector LengthVector::parse(const std::vector<std::string>& texts) {
  std::vector<Rational> vals;
  vals.reserve(texts.size());
  for (const auto& t : texts) vals.push_back(Rational::parse(t));
  return LengthVector(std::move(vals));
}

const Rational& LengthVector::at(int i) const {
  check_index(i, size(), "length vector");
  return lengths_[static_cast<std::size_t>(i - 1)];
}

bool LengthVector::is_sorted_ascending() const {
  return std::is_sorted(lengths_.begin(), lengths_.end());
}

Rational LengthVector::total() const {
  Rational t;
  for (const auto& l : lengths_) t += l;
  return t;
}

LengthVector LengthVector::with_appended(const Rational& t) const {
  std::vector<Rational> vals = lengths_;
  vals.push_back(t);
  return LengthVector(std::move(vals));
}

LengthVector LengthVector::slice(int from, int to) const {
  check_index(from, size(), "slice");
  check_index(to, size(), "slice");
  if (from > to) throw ContractError("slice: empty range");
  return LengthVector(std::vector<Rational>(lengths_.begin() + (from - 1), lengths_.begin() + to));
}

SubsetMask::SubsetMask(int universe, std::uint64_t bits) : bits_(bits), universe_(universe) {
  if (universe < 1 || universe > 64) throw ContractError("subset universe must be within 1..64");
  if (universe < 64 && (bits >> universe) != 0)
    throw ContractError("subset has bits outside its universe");
}

SubsetMask SubsetMask::of(int universe, std::initializer_list<int> members) {
  SubsetMask m(universe);
  for (int i : members) m = m.with(i);
  return m;
}

int SubsetMask::count() const { return std::popcount(bits_); }

bool SubsetMask::contains(int i) const {
  check_index(i, universe_, "subset");
  return (bits_ >> (i - 1)) & 1u;
}

SubsetMask SubsetMask::with(int i) const {
  check_index(i, universe_, "subset");
  return SubsetMask(universe_, bits_ | (std::uint64_t{1} << (i - 1)));
}

SubsetMask SubsetMask::without(int i) const {
  check_index(i, universe_, "subset");
  return SubsetMask(universe_, bits_ & ~(std::uint64_t{1} << (i - 1)));
}

SubsetMask SubsetMask::complement() const {
  std::uint64_t full = universe_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe_) - 1;
  return SubsetMask(universe_, full & ~bits_);
}

std::vector<int> SubsetMask::members() const {
  std::vector<int> out;
  for (int i = 1; i <= universe_; ++i)
    if ((bits_ >> (i - 1)) & 1u) out.push_back(i);
  return out;
}

std::vector<int> SubsetMask::sign_vector() const {
  std::vector<int> out(static_cast<std::size_t>(universe_));
  for (int i = 0; i < universe_; ++i) out[static_cast<std::size_t>(i)] = ((bits_ >> i) & 1u) ? 1 : -1;
  return out;
}

TelescopicData::TelescopicData(LengthVector fixed_sorted, Rational lo, Rational hi)
    : fixed_(std::move(fixed_sorted)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (fixed_.size() < 2) throw ContractError("telescopic linkage needs at least two fixed legs");
  if (!fixed_.is_sorted_ascending())
    throw ContractError("fixed legs must be sorted ascending");
  if (lo_.sign() <= 0) throw ContractError("telescopic lower bound must be strictly positive");
  if (!(lo_ < hi_)) throw ContractError("telescopic interval needs lo < hi");
}

Rational signed_sum(const LengthVector& lengths, const SubsetMask& subset) {
  if (subset.universe() != lengths.size())
    throw ContractError("signed_sum: subset universe " + std::to_string(subset.universe()) +
                        " does not match vector size " + std::to_string(lengths.size()));
  Rational acc;
  for (int i = 1; i <= lengths.size(); ++i) {
    if (subset.contains(i))
      acc += lengths.at(i);
    else
      acc -= lengths.at(i);
  }
  return acc;
}

bool is_long(const LengthVector& lengths, const SubsetMask& subset) {
  Rational s = signed_sum(lengths, subset);
  if (s.is_zero())
    throw DegenerateSubsetError("subset has zero signed sum: neither long nor short",
                                subset.members());
  return s.sign() > 0;
}

bool is_short(const LengthVector& lengths, const SubsetMask& subset) {
  return is_long(lengths, subset.complement());
}

namespace detail {

ScaledLengths scale_to_integers(const std::vector<Rational>& values) {
  ScaledLengths out;
  out.denom = 1;
  for (const auto& v : values) {
    BigInt d = v.den();
    out.denom = out.denom / boost::multiprecision::gcd(out.denom, d) * d;
  }
  out.big.reserve(values.size());
  BigInt abssum = 0;
  for (const auto& v : values) {
    BigInt s = v.num() * (out.denom / v.den());
    abssum += boost::multiprecision::abs(s);
    out.big.push_back(std::move(s));
  }
  if (abssum < (BigInt(1) << 59)) {
    out.fits64 = true;
    out.small.reserve(out.big.size());
    for (const auto& b : out.big) out.small.push_back(b.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace detail

namespace {

// Minimum |signed sum| with the first sign fixed +1 (negation symmetry).
// Visits 2^(m-1) sums with one add per step via Gray-code flips.
template <typename Int>
void min_abs_signed_sum_direct(const std::vector<Int>& v, Int& best, std::uint64_t& best_mask) {
  const int m = static_cast<int>(v.size());
  Int cur = v[0];
  for (int i = 1; i < m; ++i) cur -= v[i];
  auto consider = [&](const Int& s, std::uint64_t mask) {
    Int a = s < 0 ? Int(-s) : s;
    if (a < best) {
      best = std::move(a);
      best_mask = mask;
    }
  };
  best = cur < 0 ? Int(-cur) : cur;
  best_mask = 0;
  std::uint64_t gray = 0;
  const std::uint64_t steps = std::uint64_t{1} << (m - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    int bit = std::countr_zero(i);
    std::uint64_t flip = std::uint64_t{1} << bit;
    gray ^= flip;
    const Int& delta = v[static_cast<std::size_t>(bit + 1)];
    if (gray & flip)
      cur += delta + delta;
    else
      cur -= delta + delta;
    consider(cur, gray);
  }
}

struct SumEntry {
  std::int64_t sum;
  std::uint32_t mask;
};

void enumerate_half(const std::vector<std::int64_t>& v, int from, int count, bool fix_first,
                    std::vector<SumEntry>& out) {
  std::int64_t base = 0;
  int free_from = from;
  int free_count = count;
  if (fix_first) {
    base = v[static_cast<std::size_t>(from)];
    ++free_from;
    --free_count;
  }
  std::uint64_t total = std::uint64_t{1} << free_count;
  out.reserve(total);
  std::int64_t cur = base;
  for (int i = 0; i < free_count; ++i) cur -= v[static_cast<std::size_t>(free_from + i)];
  out.push_back({cur, 0});
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    int bit = std::countr_zero(i);
    std::uint64_t flip = std::uint64_t{1} << bit;
    gray ^= flip;
    std::int64_t delta = 2 * v[static_cast<std::size_t>(free_from + bit)];
    cur += (gray & flip) ? delta : -delta;
    out.push_back({cur, static_cast<std::uint32_t>(gray)});
  }
}

// Meet-in-the-middle minimum |signed sum|, first sign fixed +1.
void min_abs_signed_sum_mitm(const std::vector<std::int64_t>& v, std::int64_t& best,
                             std::uint64_t& best_mask) {
  const int m = static_cast<int>(v.size());
  const int left = m / 2;
  std::vector<SumEntry> ls, rs;
  enumerate_half(v, 0, left, /*fix_first=*/true, ls);
  enumerate_half(v, left, m - left, /*fix_first=*/false, rs);
  std::sort(rs.begin(), rs.end(), [](const SumEntry& a, const SumEntry& b) { return a.sum < b.sum; });
  best = std::numeric_limits<std::int64_t>::max();
  best_mask = 0;
  auto consider = [&](const SumEntry& l, const SumEntry& r) {
    std::int64_t s = l.sum + r.sum;
    std::int64_t a = s < 0 ? -s : s;
    if (a < best) {
      best = a;
      // Free-sign bits: left part skips the fixed first element.
      best_mask = static_cast<std::uint64_t>(l.mask) |
                  (static_cast<std::uint64_t>(r.mask) << (left - 1));
    }
  };
  for (const auto& l : ls) {
    auto it = std::lower_bound(rs.begin(), rs.end(), -l.sum,
                               [](const SumEntry& e, std::int64_t key) { return e.sum < key; });
    if (it != rs.end()) consider(l, *it);
    if (it != rs.begin()) consider(l, *(it - 1));
  }
}

GapWitness gap_witness_impl(const LengthVector& lengths) {
  const auto scaled = detail::scale_to_integers(lengths.values());
  const int m = lengths.size();
  std::uint64_t mask = 0;
  Rational gap;
  if (m == 1) {
    return {lengths.at(1), {1}};
  }
  if (m <= kDirectEnumLimit) {
    if (scaled.fits64) {
      std::int64_t best;
      min_abs_signed_sum_direct<std::int64_t>(scaled.small, best, mask);
      gap = Rational(BigInt(best), scaled.denom);
    } else {
      BigInt best;
      min_abs_signed_sum_direct<BigInt>(scaled.big, best, mask);
      gap = Rational(best, scaled.denom);
    }
  } else if (m <= kMeetInMiddleLimit && scaled.fits64) {
    std::int64_t best;
    min_abs_signed_sum_mitm(scaled.small, best, mask);
    gap = Rational(BigInt(best), scaled.denom);
  } else {
    throw ContractError("genericity gap supports at most " + std::to_string(kMeetInMiddleLimit) +
                        " legs (got " + std::to_string(m) + ")");
  }
  std::vector<int> signs(static_cast<std::size_t>(m), -1);
  signs[0] = 1;
  for (int i = 1; i < m; ++i)
    if ((mask >> (i - 1)) & 1u) signs[static_cast<std::size_t>(i)] = 1;
  // Canonical orientation: witness sum is the nonnegative one.
  Rational s;
  for (int i = 0; i < m; ++i)
    s += signs[static_cast<std::size_t>(i)] > 0 ? lengths.at(i + 1) : -lengths.at(i + 1);
  if (s.sign() < 0)
    for (auto& e : signs) e = -e;
  return {gap, std::move(signs)};
}

}  // namespace

Rational genericity_gap(const LengthVector& lengths) { return gap_witness_impl(lengths).gap; }

GapWitness genericity_gap_witness(const LengthVector& lengths) { return gap_witness_impl(lengths); }

bool is_generic(const TelescopicData& data) {
  return !genericity_gap(data.lower_vector()).is_zero() &&
         !genericity_gap(data.upper_vector()).is_zero();
}

void require_generic(const TelescopicData& data) {
  std::vector<DegeneracyWitness> witnesses;
  auto lo_w = gap_witness_impl(data.lower_vector());
  if (lo_w.gap.is_zero()) witnesses.push_back({"lo", std::move(lo_w.signs)});
  auto hi_w = gap_witness_impl(data.upper_vector());
  if (hi_w.gap.is_zero()) witnesses.push_back({"hi", std::move(hi_w.signs)});
  if (!witnesses.empty())
    throw GenericityError("metric data is not generic: a signed length sum vanishes",
                          std::move(witnesses));
}

std::vector<Rational> critical_lengths(const LengthVector& fixed) {
  const int m = fixed.size();
  if (m > 24)
    throw ContractError("critical length enumeration supports at most 24 fixed legs");
  const auto scaled = detail::scale_to_integers(fixed.values());
  std::vector<Rational> out;
  if (scaled.fits64) {
    const auto& v = scaled.small;
    std::int64_t cur = v[0];
    for (int i = 1; i < m; ++i) cur -= v[i];
    std::vector<std::int64_t> sums;
    sums.reserve(std::uint64_t{1} << (m - 1));
    sums.push_back(cur < 0 ? -cur : cur);
    std::uint64_t gray = 0;
    const std::uint64_t steps = m == 1 ? 1 : (std::uint64_t{1} << (m - 1));
    for (std::uint64_t i = 1; i < steps; ++i) {
      int bit = std::countr_zero(i);
      std::uint64_t flip = std::uint64_t{1} << bit;
      gray ^= flip;
      std::int64_t delta = 2 * v[static_cast<std::size_t>(bit + 1)];
      cur += (gray & flip) ? delta : -delta;
      sums.push_back(cur < 0 ? -cur : cur);
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    out.reserve(sums.size());
    for (std::int64_t s : sums) out.push_back(Rational(BigInt(s), scaled.denom));
  } else {
    const auto& v = scaled.big;
    BigInt cur = v[0];
    for (int i = 1; i < m; ++i) cur -= v[i];
    std::vector<BigInt> sums;
    sums.push_back(boost::multiprecision::abs(cur));
    std::uint64_t gray = 0;
    const std::uint64_t steps = m == 1 ? 1 : (std::uint64_t{1} << (m - 1));
    for (std::uint64_t i = 1; i < steps; ++i) {
      int bit = std::countr_zero(i);
      std::uint64_t flip = std::uint64_t{1} << bit;
      gray ^= flip;
      BigInt delta = 2 * v[static_cast<std::size_t>(bit + 1)];
      cur += (gray & flip) ? delta : -delta;
      sums.push_back(boost::multiprecision::abs(cur));
    }
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    out.reserve(sums.size());
    for (const auto& s : sums) out.push_back(Rational(s, scaled.denom));
  }
  return out;
}

}  // namespace teleskope
