#include "teleskope/betti.hpp"

#include <stdexcept>

namespace teleskope {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BettiProfile make_profile(std::vector<std::int64_t> ranks) {
  BettiProfile p;
  p.ranks = std::move(ranks);
  std::int64_t e = 0;
  int sign = 1;
  for (auto r : p.ranks) {
    if (r < 0) throw std::logic_error("negative homology rank");
    e += sign * r;
    sign = -sign;
  }
  p.euler = e;
  return p;
}

BettiProfile betti_telescopic(const TelescopicData& data, const CountOptions& opts) {
  require_generic(data);
  const int n = data.n();
  const LengthVector lower = data.lower_vector();
  const LengthVector upper = data.upper_vector();

  const CountTable a_lo = alpha_table(lower, opts);
  const CountTable a_hi = alpha_table(upper, opts);
  const CountTable b_hi_lo = beta_table(upper, lower, opts);  // beta_k(upper, lower)
  const CountTable b_lo_hi = beta_table(lower, upper, opts);  // beta_k(lower, upper)

  std::vector<std::int64_t> ranks(static_cast<std::size_t>(n - 1), 0);
  for (int k = 0; k <= n - 2; ++k) {
    ranks[static_cast<std::size_t>(k)] =
        a_lo.at(k) - b_hi_lo.at(k) + a_hi.at(n - 3 - k) - b_lo_hi.at(n - 3 - k);
  }
  return make_profile(std::move(ranks));
}

BettiProfile betti_fixed(const LengthVector& lengths, const CountOptions& opts) {
  const int n = lengths.size();
  if (n < 3) throw ContractError("fixed-length profile needs at least three legs");
  const CountTable a = a_fixed_table(lengths, opts);
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(n - 2), 0);
  for (int k = 0; k <= n - 3; ++k)
    ranks[static_cast<std::size_t>(k)] = a.at(k) + a.at(n - 3 - k);
  return make_profile(std::move(ranks));
}

namespace {

bool bad_parity_integer(const Rational& x, int n) {
  if (!x.is_integer()) return false;
  const bool x_even = x.num() % 2 == 0;
  const bool n_even = n % 2 == 0;
  return x_even != n_even;  // opposite parity to n
}

// One zero sign vector for unit legs with last length q (an admissible
// opposite-parity integer): q legs positive... (n-1-q)/2+q positives needed.
std::vector<int> unit_witness(int n, const Rational& q) {
  std::vector<int> signs(static_cast<std::size_t>(n), -1);
  // sum eps_i over n-1 unit legs must equal q when eps_n = -1.
  BigInt qi = q.num();
  if (qi <= n - 1) {
    long long plus = ((n - 1) + qi.convert_to<long long>()) / 2;
    for (long long i = 0; i < plus; ++i) signs[static_cast<std::size_t>(i)] = 1;
  }
  return signs;
}

}  // namespace

BettiProfile betti_equilateral(int n, const Rational& a, const Rational& b) {
  if (n < 3) throw ContractError("equilateral profile needs n >= 3");
  if (!(Rational(0) < a && a < b)) throw ContractError("need 0 < a < b");
  std::vector<DegeneracyWitness> bad;
  if (bad_parity_integer(a, n)) bad.push_back({"lo", unit_witness(n, a)});
  if (bad_parity_integer(b, n)) bad.push_back({"hi", unit_witness(n, b)});
  if (!bad.empty())
    throw GenericityError("equilateral data not generic: interval endpoint is an integer of parity opposite to n",
                          std::move(bad));

  const Rational one(1), two(2), three(3);
  std::vector<std::int64_t> ranks(static_cast<std::size_t>(n - 1), 0);
  for (int k = 0; k <= n - 2; ++k) {
    const int d = n - 2 * k;
    std::int64_t r = 0;
    if (d >= 5) {
      r = a < Rational(n - 2 * k - 1) ? binomial(n - 1, k) : 0;
    } else if (d <= 1) {
      r = b < Rational(2 * k - n + 5) ? binomial(n - 1, k + 2) : 0;
    } else if (d == 2) {
      if (a < one && b < one)
        r = binomial(n - 1, k) + binomial(n - 1, k + 2) - binomial(n - 2, k);
      else if (a < one && b < three)
        r = binomial(n - 1, k) + binomial(n - 1, k + 2);
      else if (a > one && b < three)
        r = binomial(n - 1, k + 2);
      else if (a < one)
        r = binomial(n - 1, k);
      else
        r = 0;
    } else if (d == 3) {
      if (b < two)
        r = binomial(n - 1, k) + binomial(n - 1, k + 2);
      else if (a < two)
        r = binomial(n - 1, k);
      else
        r = 0;
    } else {  // d == 4
      if (b < one)
        r = binomial(n - 1, k) + binomial(n - 1, k + 2) - binomial(n - 2, k + 1);
      else if (a < three)
        r = binomial(n - 1, k);
      else
        r = 0;
    }
    ranks[static_cast<std::size_t>(k)] = r;
  }
  return make_profile(std::move(ranks));
}

EulerBoundaryCheck euler_consistency(const TelescopicData& data) {
  EulerBoundaryCheck out;
  if (data.n() % 2 == 0) return out;  // even n: boundary is odd-dimensional, chi = 0 anyway
  out.applicable = true;
  out.chi_band = betti_telescopic(data).euler;
  out.chi_lower = betti_fixed(data.lower_vector()).euler;
  out.chi_upper = betti_fixed(data.upper_vector()).euler;
  out.pass = 2 * out.chi_band == out.chi_lower + out.chi_upper;
  return out;
}

}  // namespace teleskope
