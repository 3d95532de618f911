#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "palm/image.hpp"
#include "palm/matrix.hpp"

namespace palm {

inline constexpr int kDefaultBlockSize = 16;
inline constexpr int kStatisticalFeatures = 5;
inline constexpr int kWaveletFeatures = 9;
inline constexpr int kFeatureCount = kStatisticalFeatures + kWaveletFeatures;
inline constexpr int kWaveletLevels = 3;

// Rows are features f1..f14, columns are blocks in raster order.
using FeatureMatrix = Matrix;

// Empirical distribution of the intensities present in a block.
struct BlockPmf {
  std::vector<std::uint8_t> values;  // distinct intensities, ascending
  std::vector<std::uint32_t> counts;
  std::vector<double> probs;         // counts / total
  std::uint32_t total = 0;

  std::size_t support() const { return values.size(); }
};

// Splits the image into non-overlapping side x side tiles, left to right then
// top to bottom. Throws InvalidInput if either dimension is not a multiple of
// side (no padding).
std::vector<GrayImage> partition_blocks(const GrayImage& image, int side = kDefaultBlockSize);

BlockPmf block_pmf(const GrayImage& block);

// f1 mean, f2..f4 central moments of order 2..4, f5 entropy in bits.
std::array<double, kStatisticalFeatures> statistical_features(const BlockPmf& pmf);

// Mean squared coefficient of each 3-level db2 detail subband, ordered
// LH1, HL1, HH1, LH2, HL2, HH2, LH3, HL3, HH3.
std::array<double, kWaveletFeatures> wavelet_features(const GrayImage& block);

// All 14 features of one block.
std::array<double, kFeatureCount> block_features(const GrayImage& block);

// 14 x M matrix, M = width * height / side^2.
FeatureMatrix extract_feature_matrix(const GrayImage& image, int side = kDefaultBlockSize);

}  // namespace palm
