#include "teleskope/structure.hpp"

namespace teleskope {

bool is_nonempty(const TelescopicData& data) {
  const LengthVector& fixed = data.fixed();
  const int m = fixed.size();
  const Rational big_r = fixed.total();
  const Rational small_r = fixed.at(m) + fixed.at(m) - big_r;
  return data.lo() <= big_r && small_r <= data.hi();
}

namespace {

// Is the pair {p, q} (p < q, indices in 1..n, q possibly the telescopic n)
// long for every telescopic length in [lo, hi]?
bool pair_long_throughout(const TelescopicData& data, int p, int q) {
  const LengthVector& fixed = data.fixed();
  const Rational total = fixed.total();
  const int n = data.n();
  if (q == n) {
    // sum = 2*l_p + t - total, increasing in t: worst case at lo.
    return fixed.at(p) + fixed.at(p) + data.lo() > total;
  }
  // sum = 2*(l_p + l_q) - total - t, decreasing in t: worst case at hi.
  return fixed.at(p) + fixed.at(p) + fixed.at(q) + fixed.at(q) > total + data.hi();
}

}  // namespace

std::optional<std::array<int, 3>> find_rigid_triple(const TelescopicData& data) {
  require_generic(data);
  const int n = data.n();
  for (int i = 1; i <= n - 2; ++i)
    for (int j = i + 1; j <= n - 1; ++j) {
      if (!pair_long_throughout(data, i, j)) continue;
      for (int k = j + 1; k <= n; ++k)
        if (pair_long_throughout(data, i, k) && pair_long_throughout(data, j, k))
          return std::array<int, 3>{i, j, k};
    }
  return std::nullopt;
}

int component_count(const TelescopicData& data) {
  require_generic(data);
  if (!is_nonempty(data)) return 0;
  const LengthVector& fixed = data.fixed();
  const int m = fixed.size();  // n-1
  const Rational total = fixed.total();

  // (a): the two largest fixed legs below the top one dominate at hi.
  bool cond_a = false;
  if (m >= 3) {
    const Rational lhs = (fixed.at(m - 2) + fixed.at(m - 1)) * Rational(2);
    cond_a = lhs >= total + data.hi();
  }
  // (b): top two fixed legs dominate at hi, and {n-2, n} is long at lo.
  const Rational b1 = (fixed.at(m - 1) + fixed.at(m)) * Rational(2);
  const Rational b2 = (fixed.at(m - 1) + data.lo()) * Rational(2);
  const bool cond_b = b1 >= total + data.hi() && b2 >= total + data.lo();

  return (cond_a || cond_b) ? 2 : 1;
}

std::optional<CollapseDecomposition> detect_collapse(const TelescopicData& data) {
  require_generic(data);
  const Rational gap = genericity_gap(data.lower_vector());
  if (!(data.hi() - data.lo() < gap)) return std::nullopt;
  return CollapseDecomposition{betti_fixed(data.lower_vector())};
}

std::optional<CircleFactorDecomposition> detect_circle_factor(const TelescopicData& data) {
  require_generic(data);
  const int n = data.n();
  if (n < 4) return std::nullopt;
  const LengthVector tail = data.fixed().slice(2, n - 1);
  const Rational smallest = data.fixed().at(1);
  if (!(genericity_gap(tail.with_appended(data.lo())) > smallest)) return std::nullopt;
  if (!(genericity_gap(tail.with_appended(data.hi())) > smallest)) return std::nullopt;
  return CircleFactorDecomposition{TelescopicData(tail, data.lo(), data.hi())};
}

std::optional<TwoToriDecomposition> classify_disconnected(const TelescopicData& data) {
  if (component_count(data) != 2) return std::nullopt;
  const int n = data.n();
  std::vector<std::int64_t> expected(static_cast<std::size_t>(n - 1), 0);
  for (int k = 0; k <= n - 2; ++k) expected[static_cast<std::size_t>(k)] = 2 * binomial(n - 3, k);
  return TwoToriDecomposition{std::move(expected)};
}

StructureReport structure_report(const TelescopicData& data) {
  StructureReport out;
  out.nonempty = is_nonempty(data);
  out.components = component_count(data);
  out.rigid_triple = find_rigid_triple(data);
  out.collapse = detect_collapse(data);
  out.circle_factor = detect_circle_factor(data);
  out.two_tori = classify_disconnected(data);
  return out;
}

}  // namespace teleskope
