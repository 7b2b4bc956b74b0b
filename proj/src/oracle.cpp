#include "teleskope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace teleskope {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int hardware_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::int64_t checked_cell_count(int g, int dims) {
  std::int64_t total = 1;
  for (int i = 0; i < dims; ++i) {
    total *= g;
    if (total > (std::int64_t{1} << 30))
      throw ContractError("grid too large: " + std::to_string(g) + "^" + std::to_string(dims));
  }
  return total;
}

struct DisjointSet {
  std::vector<std::int32_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n, -1) {}
  std::int32_t find(std::int32_t x) {
    std::int32_t root = x;
    while (parent[static_cast<std::size_t>(root)] >= 0) root = parent[static_cast<std::size_t>(root)];
    while (parent[static_cast<std::size_t>(x)] >= 0) {
      std::int32_t next = parent[static_cast<std::size_t>(x)];
      parent[static_cast<std::size_t>(x)] = root;
      x = next;
    }
    return root;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

double eval_f(std::span<const double> angles, const LengthVector& fixed) {
  const int m = fixed.size();
  if (static_cast<int>(angles.size()) != m - 1)
    throw ContractError("eval_f: expected " + std::to_string(m - 1) + " angles, got " +
                        std::to_string(angles.size()));
  double x = fixed.at(1).to_double();
  double y = 0;
  for (int i = 2; i <= m; ++i) {
    const double l = fixed.at(i).to_double();
    const double t = angles[static_cast<std::size_t>(i - 2)];
    x += l * std::cos(t);
    y += l * std::sin(t);
  }
  return -(x * x + y * y);
}

GridBand build_band(const TelescopicData& data, int resolution, int threads) {
  require_generic(data);
  if (resolution < 8) throw ContractError("grid resolution must be at least 8");
  const int n = data.n();
  const int dims = n - 2;
  const int g = resolution;
  const std::int64_t cells = checked_cell_count(g, dims);

  GridBand band;
  band.n = n;
  band.resolution = g;
  band.band_lo = -(data.hi() * data.hi()).to_double();
  band.band_hi = -(data.lo() * data.lo()).to_double();
  band.marked.assign(static_cast<std::size_t>(cells), 0);

  const LengthVector& fixed = data.fixed();
  const int m = fixed.size();
  std::vector<double> len(static_cast<std::size_t>(m));
  double total_len = 0;
  for (int i = 1; i <= m; ++i) {
    len[static_cast<std::size_t>(i - 1)] = fixed.at(i).to_double();
    total_len += len[static_cast<std::size_t>(i - 1)];
  }
  band.rounding_margin =
      64.0 * static_cast<double>(m) * std::numeric_limits<double>::epsilon() * total_len * total_len;
  band.wall_margin = 2.0 * total_len * total_len * (kTwoPi / g) * std::sqrt(static_cast<double>(dims));

  std::vector<double> cos_t(static_cast<std::size_t>(g)), sin_t(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    const double t = (i + 0.5) * kTwoPi / g;
    cos_t[static_cast<std::size_t>(i)] = std::cos(t);
    sin_t[static_cast<std::size_t>(i)] = std::sin(t);
  }

  const double a = band.band_lo;
  const double b = band.band_hi;
  const double margin = band.rounding_margin;

  // Walk cells in row-major order, keeping partial arm sums per axis; the
  // innermost axis only adds the last leg.
  auto process_slab = [&](int first_outer, int last_outer, std::int64_t& marked_out,
                          std::int64_t& ambiguous_out) {
    std::vector<int> idx(static_cast<std::size_t>(dims), 0);
    std::vector<double> px(static_cast<std::size_t>(dims) + 1), py(static_cast<std::size_t>(dims) + 1);
    px[0] = len[0];
    py[0] = 0;
    std::int64_t marked_local = 0, ambiguous_local = 0;
    for (int outer = first_outer; outer < last_outer; ++outer) {
      idx[0] = outer;
      std::fill(idx.begin() + 1, idx.end(), 0);
      while (true) {
        for (int axis = 0; axis < dims - 1; ++axis) {
          px[static_cast<std::size_t>(axis) + 1] =
              px[static_cast<std::size_t>(axis)] +
              len[static_cast<std::size_t>(axis) + 1] * cos_t[static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)])];
          py[static_cast<std::size_t>(axis) + 1] =
              py[static_cast<std::size_t>(axis)] +
              len[static_cast<std::size_t>(axis) + 1] * sin_t[static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)])];
        }
        std::int64_t base = 0;
        for (int axis = 0; axis < dims; ++axis) base = base * g + idx[static_cast<std::size_t>(axis)];
        base -= idx[static_cast<std::size_t>(dims) - 1];
        const double bx = px[static_cast<std::size_t>(dims) - 1];
        const double by = py[static_cast<std::size_t>(dims) - 1];
        const double ll = len[static_cast<std::size_t>(dims)];
        for (int inner = 0; inner < g; ++inner) {
          const double x = bx + ll * cos_t[static_cast<std::size_t>(inner)];
          const double y = by + ll * sin_t[static_cast<std::size_t>(inner)];
          const double f = -(x * x + y * y);
          if (f >= a && f <= b) {
            band.marked[static_cast<std::size_t>(base + inner)] = 1;
            ++marked_local;
          }
          if (std::abs(f - a) <= margin || std::abs(f - b) <= margin) ++ambiguous_local;
        }
        // Advance the middle axes (outermost is owned by the slab loop).
        int axis = dims - 2;
        while (axis >= 1) {
          if (++idx[static_cast<std::size_t>(axis)] < g) break;
          idx[static_cast<std::size_t>(axis)] = 0;
          --axis;
        }
        if (axis < 1) break;
      }
    }
    marked_out = marked_local;
    ambiguous_out = ambiguous_local;
  };

  if (dims == 1) {
    // Single circle: the "outer" loop is the only axis; run it inline.
    std::int64_t marked_total = 0, ambiguous_total = 0;
    const double ll = len[1];
    for (int inner = 0; inner < g; ++inner) {
      const double x = len[0] + ll * cos_t[static_cast<std::size_t>(inner)];
      const double y = ll * sin_t[static_cast<std::size_t>(inner)];
      const double f = -(x * x + y * y);
      if (f >= a && f <= b) {
        band.marked[static_cast<std::size_t>(inner)] = 1;
        ++marked_total;
      }
      if (std::abs(f - a) <= margin || std::abs(f - b) <= margin) ++ambiguous_total;
    }
    band.marked_count = marked_total;
    band.ambiguous = ambiguous_total;
    return band;
  }

  const int workers = std::min(hardware_threads(threads), g);
  std::vector<std::int64_t> marked_per(static_cast<std::size_t>(workers), 0);
  std::vector<std::int64_t> ambiguous_per(static_cast<std::size_t>(workers), 0);
  if (workers == 1) {
    process_slab(0, g, marked_per[0], ambiguous_per[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int from = static_cast<int>(static_cast<std::int64_t>(g) * w / workers);
      const int to = static_cast<int>(static_cast<std::int64_t>(g) * (w + 1) / workers);
      pool.emplace_back([&, w, from, to] {
        process_slab(from, to, marked_per[static_cast<std::size_t>(w)], ambiguous_per[static_cast<std::size_t>(w)]);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (int w = 0; w < workers; ++w) {
    band.marked_count += marked_per[static_cast<std::size_t>(w)];
    band.ambiguous += ambiguous_per[static_cast<std::size_t>(w)];
  }
  return band;
}

ComponentResult band_components(const GridBand& band) {
  const int g = band.resolution;
  const int dims = band.dims();
  const std::int64_t cells = static_cast<std::int64_t>(band.marked.size());
  DisjointSet ds(static_cast<std::size_t>(cells));

  std::vector<std::int64_t> stride(static_cast<std::size_t>(dims));
  stride[static_cast<std::size_t>(dims) - 1] = 1;
  for (int a = dims - 2; a >= 0; --a)
    stride[static_cast<std::size_t>(a)] = stride[static_cast<std::size_t>(a) + 1] * g;

  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  for (std::int64_t c = 0; c < cells; ++c) {
    if (band.marked[static_cast<std::size_t>(c)]) {
      for (int a = 0; a < dims; ++a) {
        const int coord = idx[static_cast<std::size_t>(a)];
        const std::int64_t neighbor =
            c + (coord + 1 == g ? -coord : 1) * stride[static_cast<std::size_t>(a)];
        if (band.marked[static_cast<std::size_t>(neighbor)])
          ds.unite(static_cast<std::int32_t>(c), static_cast<std::int32_t>(neighbor));
      }
    }
    int a = dims - 1;
    while (a >= 0) {
      if (++idx[static_cast<std::size_t>(a)] < g) break;
      idx[static_cast<std::size_t>(a)] = 0;
      --a;
    }
  }

  int comps = 0;
  for (std::int64_t c = 0; c < cells; ++c)
    if (band.marked[static_cast<std::size_t>(c)] && ds.parent[static_cast<std::size_t>(c)] < 0) ++comps;
  return {comps, band.ambiguous > 0};
}

std::int64_t band_euler_2d(const GridBand& band) {
  if (band.n != 4)
    throw UnsupportedDimensionError("pixel Euler characteristic needs a two-dimensional band (n = 4)");
  const int g = band.resolution;
  std::vector<std::uint8_t> corner(static_cast<std::size_t>(g) * g, 0);
  std::vector<std::uint8_t> edge0(static_cast<std::size_t>(g) * g, 0);  // along axis 0
  std::vector<std::uint8_t> edge1(static_cast<std::size_t>(g) * g, 0);  // along axis 1
  auto at = [g](int i, int j) {
    return static_cast<std::size_t>((i % g) * g + (j % g));
  };
  std::int64_t faces = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (!band.marked[at(i, j)]) continue;
      ++faces;
      corner[at(i, j)] = corner[at(i + 1, j)] = corner[at(i, j + 1)] = corner[at(i + 1, j + 1)] = 1;
      edge0[at(i, j)] = edge0[at(i, j + 1)] = 1;  // sides at fixed j, varying i
      edge1[at(i, j)] = edge1[at(i + 1, j)] = 1;  // sides at fixed i, varying j
    }
  auto tally = [](const std::vector<std::uint8_t>& v) {
    std::int64_t s = 0;
    for (auto b : v) s += b;
    return s;
  };
  return tally(corner) - (tally(edge0) + tally(edge1)) + faces;
}

OracleRun oracle_verify(const TelescopicData& data, int resolution, int threads, bool with_euler,
                        int max_doublings) {
  int g = resolution;
  for (int attempt = 0;; ++attempt) {
    const GridBand band = build_band(data, g, threads);
    const GridBand doubled = build_band(data, 2 * g, threads);
    const int c1 = band_components(band).components;
    const int c2 = band_components(doubled).components;
    std::optional<std::int64_t> e1, e2;
    if (with_euler) {
      e1 = band_euler_2d(band);
      e2 = band_euler_2d(doubled);
    }
    const bool stable = band.ambiguous == 0 && doubled.ambiguous == 0 && c1 == c2 &&
                        (!with_euler || *e1 == *e2);
    if (stable || attempt >= max_doublings) {
      OracleRun run;
      run.resolution_used = g;
      run.ambiguous = band.ambiguous;
      run.components = c1;
      run.euler = e1;
      run.stable = stable;
      run.marked = band.marked_count;
      run.wall_margin = band.wall_margin;
      return run;
    }
    g *= 2;
  }
}

}  // namespace teleskope
