#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "teleskope/betti.hpp"
#include "teleskope/core.hpp"

namespace teleskope {

// Band narrower than the lower vector's genericity gap: the space is the
// boundary manifold times an interval.
struct CollapseDecomposition {
  BettiProfile boundary;  // profile of the lower fixed-length space
};

// Smallest leg shorter than every positive signed sum of the others at both
// interval endpoints: the space splits off a circle factor.
struct CircleFactorDecomposition {
  TelescopicData reduced;  // legs 2..n-1 with the same telescopic interval
};

// Disconnected instances are an interval times two tori.
struct TwoToriDecomposition {
  std::vector<std::int64_t> expected_ranks;  // 2 * C(n-3, k)
};

struct StructureReport {
  bool nonempty = false;
  int components = 0;  // 0, 1 or 2
  std::optional<std::array<int, 3>> rigid_triple;
  std::optional<CollapseDecomposition> collapse;
  std::optional<CircleFactorDecomposition> circle_factor;
  std::optional<TwoToriDecomposition> two_tori;
};

// [lo, hi] meets [r, R] with R the fixed total and r the largest fixed leg
// minus the rest. Valid for non-generic data too.
bool is_nonempty(const TelescopicData& data);

// Lexicographically smallest triple i<j<k whose three pairs are long for
// every admissible telescopic length. Pairs without index n are checked at
// hi, pairs with n at lo (the signed sums are monotone in the last length).
std::optional<std::array<int, 3>> find_rigid_triple(const TelescopicData& data);

// 0 empty, 2 when the printed disconnection inequalities hold, else 1.
int component_count(const TelescopicData& data);

std::optional<CollapseDecomposition> detect_collapse(const TelescopicData& data);
std::optional<CircleFactorDecomposition> detect_circle_factor(const TelescopicData& data);
std::optional<TwoToriDecomposition> classify_disconnected(const TelescopicData& data);

StructureReport structure_report(const TelescopicData& data);

}  // namespace teleskope
