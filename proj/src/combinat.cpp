#include "teleskope/combinat.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace teleskope {

namespace {

constexpr int kBitmaskLimit = 24;  // free indices enumerated exhaustively

std::string vector_str(const LengthVector& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 1; i <= v.size(); ++i) {
    if (i > 1) os << ",";
    os << v.at(i).str();
  }
  os << ")";
  return os.str();
}

void require_vector_generic(const LengthVector& v, const char* role) {
  auto w = genericity_gap_witness(v);
  if (w.gap.is_zero())
    throw GenericityError(std::string("length vector ") + role + " " + vector_str(v) +
                              " is not generic: a signed sum vanishes",
                          {DegeneracyWitness{role, std::move(w.signs)}});
}

// Visits every subset of `w` by Gray code, reporting (cardinality, sum).
template <typename Int, typename Fn>
void for_each_subset(const std::vector<Int>& w, Fn&& fn) {
  const int m = static_cast<int>(w.size());
  Int cur{};
  int cnt = 0;
  fn(cnt, cur);
  if (m == 0) return;
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t i = 1; i < total; ++i) {
    int bit = std::countr_zero(i);
    std::uint64_t flip = std::uint64_t{1} << bit;
    gray ^= flip;
    if (gray & flip) {
      cur += w[static_cast<std::size_t>(bit)];
      ++cnt;
    } else {
      cur -= w[static_cast<std::size_t>(bit)];
      --cnt;
    }
    fn(cnt, cur);
  }
}

// counts[c][s] = number of subsets of `w` with cardinality c and sum s.
// O(m^2 * S) time, O(m * S) space.
std::vector<std::vector<std::uint64_t>> subset_sum_dp(const std::vector<std::int64_t>& w) {
  const int m = static_cast<int>(w.size());
  std::int64_t total = 0;
  for (auto v : w) total += v;
  std::vector<std::vector<std::uint64_t>> dp(static_cast<std::size_t>(m) + 1);
  for (int c = 0; c <= m; ++c) dp[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(total) + 1, 0);
  dp[0][0] = 1;
  std::int64_t seen = 0;
  for (int item = 0; item < m; ++item) {
    const std::int64_t wi = w[static_cast<std::size_t>(item)];
    seen += wi;
    for (int c = std::min(item + 1, m); c >= 1; --c) {
      auto& row = dp[static_cast<std::size_t>(c)];
      const auto& prev = dp[static_cast<std::size_t>(c - 1)];
      for (std::int64_t s = seen; s >= wi; --s)
        row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - wi)];
    }
  }
  return dp;
}

enum class Pick { BitmaskSmall, BitmaskBig, Dp };

Pick pick_engine(const detail::ScaledLengths& scaled, int free_count, const CountOptions& opts) {
  std::int64_t total = 0;
  if (scaled.fits64)
    for (auto v : scaled.small) total += v;
  const bool dp_ok = scaled.fits64 && total <= opts.dp_total_bound && free_count <= 62;
  switch (opts.engine) {
    case CountEngine::Bitmask:
      if (free_count > kBitmaskLimit)
        throw ContractError("bitmask engine supports at most " + std::to_string(kBitmaskLimit) +
                            " free indices (got " + std::to_string(free_count) + ")");
      return scaled.fits64 ? Pick::BitmaskSmall : Pick::BitmaskBig;
    case CountEngine::Dp:
      if (!dp_ok) throw ContractError("DP engine needs integer-scalable lengths below the total bound");
      return Pick::Dp;
    case CountEngine::Auto:
      if (free_count <= kBitmaskLimit) return scaled.fits64 ? Pick::BitmaskSmall : Pick::BitmaskBig;
      if (dp_ok) return Pick::Dp;
      throw ContractError("instance too large: " + std::to_string(free_count) +
                          " free indices and no integer scaling below the DP bound");
  }
  throw ContractError("unreachable");
}

// Generic counting core: per cardinality c of a subset of `free` weights,
// count subsets whose sum s satisfies 2s < upper (when has_upper) and
// 2s > lower (when has_lower). Thresholds are in scaled units.
template <typename Int>
void tally_bitmask(const std::vector<Int>& w, bool has_lower, const Int& lower, bool has_upper,
                   const Int& upper, std::vector<std::int64_t>& counts) {
  for_each_subset<Int>(w, [&](int c, const Int& s) {
    Int twice = s + s;
    if (has_lower && !(twice > lower)) return;
    if (has_upper && !(twice < upper)) return;
    ++counts[static_cast<std::size_t>(c)];
  });
}

void tally_dp(const std::vector<std::int64_t>& w, bool has_lower, std::int64_t lower, bool has_upper,
              std::int64_t upper, std::vector<std::int64_t>& counts) {
  auto dp = subset_sum_dp(w);
  for (std::size_t c = 0; c < dp.size(); ++c) {
    std::uint64_t acc = 0;
    const auto& row = dp[c];
    for (std::size_t s = 0; s < row.size(); ++s) {
      if (row[s] == 0) continue;
      std::int64_t twice = 2 * static_cast<std::int64_t>(s);
      if (has_lower && !(twice > lower)) continue;
      if (has_upper && !(twice < upper)) continue;
      acc += row[s];
    }
    counts[c] = static_cast<std::int64_t>(acc);
  }
}

// Counts per cardinality with thresholds expressed against 2*sum.
std::vector<std::int64_t> count_by_cardinality(const std::vector<Rational>& all_values,
                                               const std::vector<int>& free_idx, bool has_lower,
                                               const Rational& lower_r, bool has_upper,
                                               const Rational& upper_r, const CountOptions& opts) {
  auto scaled = detail::scale_to_integers(all_values);
  std::vector<std::int64_t> counts(free_idx.size() + 1, 0);
  const Pick pick = pick_engine(scaled, static_cast<int>(free_idx.size()), opts);

  // Thresholds arrive as rationals over the same denominator basis.
  auto to_scaled_big = [&](const Rational& r) {
    // r * denom is integral by construction of the callers.
    BigInt num = r.num() * scaled.denom;
    if (num % r.den() != 0)
      throw ContractError("internal: threshold does not share the common denominator");
    return BigInt(num / r.den());
  };

  if (pick == Pick::BitmaskBig) {
    std::vector<BigInt> w;
    w.reserve(free_idx.size());
    for (int i : free_idx) w.push_back(scaled.big[static_cast<std::size_t>(i)]);
    tally_bitmask<BigInt>(w, has_lower, to_scaled_big(lower_r), has_upper, to_scaled_big(upper_r),
                          counts);
    return counts;
  }

  std::vector<std::int64_t> w;
  w.reserve(free_idx.size());
  for (int i : free_idx) w.push_back(scaled.small[static_cast<std::size_t>(i)]);
  const std::int64_t lo64 = has_lower ? to_scaled_big(lower_r).convert_to<std::int64_t>() : 0;
  const std::int64_t hi64 = has_upper ? to_scaled_big(upper_r).convert_to<std::int64_t>() : 0;
  if (pick == Pick::BitmaskSmall)
    tally_bitmask<std::int64_t>(w, has_lower, lo64, has_upper, hi64, counts);
  else
    tally_dp(w, has_lower, lo64, has_upper, hi64, counts);
  return counts;
}

int table_size(int n) { return n - 1; }  // entries k = 0..n-2

}  // namespace

CountTable alpha_table(const LengthVector& lengths, const CountOptions& opts) {
  const int n = lengths.size();
  if (n < 2) throw ContractError("alpha needs at least two legs");
  require_vector_generic(lengths, "");

  // J subset of {1..n-1}; signed sum = 2*sum(J) - total. Long: 2s > total.
  std::vector<int> free_idx(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) free_idx[static_cast<std::size_t>(i)] = i;
  auto counts = count_by_cardinality(lengths.values(), free_idx, /*has_lower=*/true,
                                     lengths.total(), /*has_upper=*/false, Rational(), opts);

  CountTable t{CountTable::Kind::Alpha, std::vector<std::int64_t>(static_cast<std::size_t>(table_size(n)), 0),
               vector_str(lengths)};
  for (int k = 0; k <= n - 2; ++k) {
    int card = n - k - 1;  // cardinality of the long subsets counted at k
    if (card >= 0 && card < static_cast<int>(counts.size()))
      t.values[static_cast<std::size_t>(k)] = counts[static_cast<std::size_t>(card)];
  }
  return t;
}

CountTable beta_table(const LengthVector& first, const LengthVector& second,
                      const CountOptions& opts) {
  const int n = first.size();
  if (n < 3) throw ContractError("beta needs at least three legs");
  if (second.size() != n)
    throw ContractError("beta: vectors differ in size");
  for (int i = 1; i <= n - 1; ++i)
    if (!(first.at(i) == second.at(i)))
      throw ContractError("beta: vectors must agree on coordinates 1.." + std::to_string(n - 1) +
                          ", differ at " + std::to_string(i));
  require_vector_generic(first, "first");
  require_vector_generic(second, "second");

  // J subset of {1..n-2} with s = sum(J). With T' the total over 1..n-2:
  //   <first, eps_{J+{n}}>   = 2s - T' - l_{n-1} + first_n   (must be < 0)
  //   <second, eps_{J+{n-1}}> = 2s - T' + l_{n-1} - second_n (must be > 0)
  std::vector<Rational> values = first.values();
  values.push_back(second.at(n));  // shares the scaling basis
  Rational tprime;
  for (int i = 1; i <= n - 2; ++i) tprime += first.at(i);
  const Rational upper = tprime + first.at(n - 1) - first.at(n);
  const Rational lower = tprime - first.at(n - 1) + second.at(n);

  std::vector<int> free_idx(static_cast<std::size_t>(n - 2));
  for (int i = 0; i < n - 2; ++i) free_idx[static_cast<std::size_t>(i)] = i;
  auto counts = count_by_cardinality(values, free_idx, /*has_lower=*/true, lower,
                                     /*has_upper=*/true, upper, opts);

  CountTable t{CountTable::Kind::Beta, std::vector<std::int64_t>(static_cast<std::size_t>(table_size(n)), 0),
               "first=" + vector_str(first) + ", second=" + vector_str(second)};
  for (int k = 0; k <= n - 2; ++k) {
    int card = n - k - 2;
    if (card >= 0 && card < static_cast<int>(counts.size()))
      t.values[static_cast<std::size_t>(k)] = counts[static_cast<std::size_t>(card)];
  }
  return t;
}

CountTable a_fixed_table(const LengthVector& lengths, const CountOptions& opts) {
  const int n = lengths.size();
  if (n < 2) throw ContractError("a_fixed needs at least two legs");
  require_vector_generic(lengths, "");

  // Largest index attaining the maximal length.
  int pivot = 1;
  for (int i = 2; i <= n; ++i)
    if (lengths.at(i) >= lengths.at(pivot)) pivot = i;

  // K = J + {pivot}, short w.r.t. lengths: 2*(s + l_pivot) - total < 0.
  std::vector<int> free_idx;
  free_idx.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i)
    if (i != pivot - 1) free_idx.push_back(i);
  const Rational upper = lengths.total() - lengths.at(pivot) - lengths.at(pivot);
  auto counts = count_by_cardinality(lengths.values(), free_idx, /*has_lower=*/false, Rational(),
                                     /*has_upper=*/true, upper, opts);

  CountTable t{CountTable::Kind::AFixed, std::vector<std::int64_t>(static_cast<std::size_t>(table_size(n)), 0),
               vector_str(lengths)};
  for (int k = 0; k <= n - 2; ++k) {
    // |K| = k+1, so |J| = k.
    if (k < static_cast<int>(counts.size())) t.values[static_cast<std::size_t>(k)] = counts[static_cast<std::size_t>(k)];
  }
  return t;
}

std::int64_t alpha(const LengthVector& lengths, int k, const CountOptions& opts) {
  if (k < 0 || k > lengths.size() - 2) return 0;
  return alpha_table(lengths, opts).at(k);
}

std::int64_t beta(const LengthVector& first, const LengthVector& second, int k,
                  const CountOptions& opts) {
  if (k < 0 || k > first.size() - 2) return 0;
  return beta_table(first, second, opts).at(k);
}

std::int64_t a_fixed(const LengthVector& lengths, int k, const CountOptions& opts) {
  if (k < 0 || k > lengths.size() - 2) return 0;
  return a_fixed_table(lengths, opts).at(k);
}

}  // namespace teleskope
