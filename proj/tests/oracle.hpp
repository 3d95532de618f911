#pragma once

// Straight-line reference implementations used only by tests. They follow
// the textbook definitions directly (full circular convolution then
// decimation; moments summed over pixels) and share no code with the
// library's transform or feature paths.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "palm/image.hpp"
#include "palm/matrix.hpp"
#include "palm/rng.hpp"

namespace oracle {

using Grid = std::vector<std::vector<double>>;  // [row][col]

inline std::array<double, 4> db2_low() {
  const double s3 = std::sqrt(3.0);
  const double n = 4.0 * std::sqrt(2.0);
  return {(1 + s3) / n, (3 + s3) / n, (3 - s3) / n, (1 - s3) / n};
}

inline std::array<double, 4> db2_high() {
  const auto h = db2_low();
  return {h[3], -h[2], h[1], -h[0]};
}

inline int mod(int a, int n) { return ((a % n) + n) % n; }

// Full-length circular convolution, then keep even samples.
inline std::vector<double> conv_decimate(const std::vector<double>& x,
                                         const std::array<double, 4>& f) {
  const int n = static_cast<int>(x.size());
  std::vector<double> full(x.size(), 0.0);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < 4; ++k) full[m] += f[k] * x[mod(m - k, n)];
  }
  std::vector<double> out;
  for (int m = 0; m < n; m += 2) out.push_back(full[m]);
  return out;
}

// Explicit 2D circular convolution with the separable kernel
// col_filter[a] * row_filter[b], decimated by 2 in both directions.
// row_filter runs along x (within a row), col_filter along y.
inline Grid conv2_decimate(const Grid& x, const std::array<double, 4>& row_filter,
                           const std::array<double, 4>& col_filter) {
  const int n = static_cast<int>(x.size());
  Grid out(n / 2, std::vector<double>(n / 2, 0.0));
  for (int r = 0; r < n; r += 2) {
    for (int c = 0; c < n; c += 2) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          acc += col_filter[a] * row_filter[b] * x[mod(r - a, n)][mod(c - b, n)];
        }
      }
      out[r / 2][c / 2] = acc;
    }
  }
  return out;
}

struct Level {
  Grid ll, lh, hl, hh;
};

// lh: lowpass along x, highpass along y. hl: highpass along x, lowpass along y.
inline Level dwt2_level(const Grid& x) {
  const auto h = db2_low();
  const auto g = db2_high();
  return {conv2_decimate(x, h, h), conv2_decimate(x, h, g), conv2_decimate(x, g, h),
          conv2_decimate(x, g, g)};
}

// Detail subbands d1..d9 plus final LL, level 1 first, LH/HL/HH per level.
inline std::pair<std::vector<Grid>, Grid> dwt2_multilevel(const Grid& x, int levels) {
  std::vector<Grid> details;
  Grid cur = x;
  for (int l = 0; l < levels; ++l) {
    Level lv = dwt2_level(cur);
    details.push_back(lv.lh);
    details.push_back(lv.hl);
    details.push_back(lv.hh);
    cur = lv.ll;
  }
  return {details, cur};
}

inline double mean_square(const Grid& g) {
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& row : g) {
    for (double v : row) {
      s += v * v;
      ++n;
    }
  }
  return s / static_cast<double>(n);
}

inline Grid to_grid(const palm::Matrix& m) {
  Grid g(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) g[r][c] = m(r, c);
  }
  return g;
}

// 14 features of the block whose top-left pixel is (x0, y0).
inline std::array<double, 14> block_features(const palm::GrayImage& img, int x0, int y0, int n) {
  std::vector<double> px;
  Grid grid(n, std::vector<double>(n));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double v = img.pixels[static_cast<std::size_t>(y0 + y) * img.width + (x0 + x)];
      px.push_back(v);
      grid[y][x] = v;
    }
  }
  const double count = static_cast<double>(px.size());
  double mean = 0.0;
  for (double v : px) mean += v;
  mean /= count;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : px) {
    m2 += std::pow(v - mean, 2);
    m3 += std::pow(v - mean, 3);
    m4 += std::pow(v - mean, 4);
  }
  std::map<int, int> counts;
  for (double v : px) ++counts[static_cast<int>(v)];
  double entropy = 0.0;
  for (const auto& [v, c] : counts) {
    const double p = c / count;
    entropy -= p * std::log(p) / std::log(2.0);
  }

  std::array<double, 14> f{mean, m2 / count, m3 / count, m4 / count, entropy};
  const auto [details, ll] = dwt2_multilevel(grid, 3);
  for (int i = 0; i < 9; ++i) f[5 + i] = mean_square(details[i]);
  return f;
}

inline palm::GrayImage random_image(int w, int h, std::uint64_t seed) {
  palm::SplitMix64 rng(seed);
  palm::GrayImage img(w, h);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

inline palm::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                  double lo = -100.0, double hi = 100.0) {
  palm::SplitMix64 rng(seed);
  palm::Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

}  // namespace oracle
