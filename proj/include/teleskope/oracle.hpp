#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "teleskope/core.hpp"

namespace teleskope {

// Marked cells of the (n-2)-torus grid whose center value of the squared
// end-to-end distance function lies in the band.
struct GridBand {
  int n = 0;           // leg count including the telescopic one
  int resolution = 0;  // cells per angle
  double band_lo = 0;  // a = -(hi)^2
  double band_hi = 0;  // b = -(lo)^2
  std::vector<std::uint8_t> marked;
  std::int64_t marked_count = 0;
  // Cells whose center value is too close to a band wall for the floating
  // evaluation to classify reliably.
  std::int64_t ambiguous = 0;
  double rounding_margin = 0;
  // Lipschitz variation bound over one cell diagonal, reported so callers
  // can judge how far the discretization is from the walls.
  double wall_margin = 0;

  int dims() const { return n - 2; }
};

// -(|sum l_i u_i|)^2 with u_1 = (1,0) and u_i = (cos t_i, sin t_i); `angles`
// covers joints 2..n-1, so it has fixed.size()-1 entries.
double eval_f(std::span<const double> angles, const LengthVector& fixed);

GridBand build_band(const TelescopicData& data, int resolution, int threads = 0);

struct ComponentResult {
  int components = 0;
  bool low_confidence = false;  // ambiguous cells were present
};
// Face-adjacent connected components of the marked set, with wraparound.
ComponentResult band_components(const GridBand& band);

// V - E + F of the marked pixel complex on the torus grid; n = 4 only.
std::int64_t band_euler_2d(const GridBand& band);

struct OracleRun {
  int resolution_used = 0;
  std::int64_t ambiguous = 0;
  int components = 0;
  std::optional<std::int64_t> euler;  // present when n = 4
  bool stable = false;                // agrees with the doubled resolution
  std::int64_t marked = 0;
  double wall_margin = 0;
};
// Builds the band, doubling the resolution (up to `max_doublings`) while
// ambiguous cells remain, then checks agreement against one more doubling.
OracleRun oracle_verify(const TelescopicData& data, int resolution, int threads = 0,
                        bool with_euler = false, int max_doublings = 4);

}  // namespace teleskope
