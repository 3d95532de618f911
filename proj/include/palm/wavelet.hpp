#pragma once

#include <array>
#include <span>
#include <vector>

#include "palm/matrix.hpp"

namespace palm {

// Orthonormal 4-tap analysis pair. The highpass is the alternating-sign flip
// of the lowpass: highpass[k] = (-1)^k * lowpass[3 - k].
struct WaveletFilter {
  std::array<double, 4> lowpass{};
  std::array<double, 4> highpass{};

  // Second-order Daubechies (db2), lowpass summing to sqrt(2).
  static WaveletFilter db2();
};

struct Dwt1d {
  std::vector<double> approx;
  std::vector<double> detail;
};

// One analysis step with periodic extension:
//   approx[n] = sum_k lowpass[k]  * x[(2n - k) mod L]
//   detail[n] = sum_k highpass[k] * x[(2n - k) mod L]
// i.e. circular convolution followed by keeping the even-indexed outputs.
// Throws InvalidInput for odd or zero length.
Dwt1d dwt1d(std::span<const double> signal, const WaveletFilter& filter = WaveletFilter::db2());

// Exact inverse (transpose) of dwt1d. approx and detail must have equal length.
std::vector<double> idwt1d(std::span<const double> approx, std::span<const double> detail,
                           const WaveletFilter& filter = WaveletFilter::db2());

// Subband naming: first letter is the filter applied along rows (horizontal
// direction), second along columns. HL therefore responds to vertical edges,
// LH to horizontal edges.
struct Quadrants {
  Matrix ll;
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

// Single separable level: dwt1d along every row, then along every column.
// Throws InvalidInput unless the block is square with even side >= 2.
Quadrants dwt2d_level(const Matrix& block, const WaveletFilter& filter = WaveletFilter::db2());
Matrix idwt2d_level(const Quadrants& q, const WaveletFilter& filter = WaveletFilter::db2());

struct DetailLevel {
  Matrix lh;
  Matrix hl;
  Matrix hh;
};

// Detail subbands of a multilevel decomposition plus the final approximation.
// levels[0] is the finest level (largest subbands).
struct SubbandSet {
  std::vector<DetailLevel> levels;
  Matrix ll;

  // d_1..d_{3L} in level-major order, LH/HL/HH within a level, finest first.
  // index is 0-based.
  const Matrix& detail(std::size_t index) const;
  std::size_t detail_count() const { return 3 * levels.size(); }

  // Sum of squared coefficients over every subband including ll.
  double energy() const;
};

// Recursively applies dwt2d_level to the LL output. The block side must be
// divisible by 2^levels; throws InvalidInput otherwise.
SubbandSet dwt2d_multilevel(const Matrix& block, int levels = 3,
                            const WaveletFilter& filter = WaveletFilter::db2());

// Throws InvalidInput when subband shapes are inconsistent.
Matrix idwt2d_multilevel(const SubbandSet& subbands,
                         const WaveletFilter& filter = WaveletFilter::db2());

}  // namespace palm
