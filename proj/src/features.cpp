#include "palm/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "palm/error.hpp"
#include "palm/wavelet.hpp"

namespace palm {

std::vector<GrayImage> partition_blocks(const GrayImage& image, int side) {
  if (side <= 0) throw InvalidInput("partition_blocks: block side must be positive");
  if (image.width <= 0 || image.height <= 0 || image.width % side != 0 ||
      image.height % side != 0) {
    throw InvalidInput("partition_blocks: image " + std::to_string(image.width) + "x" +
                       std::to_string(image.height) + " is not divisible into " +
                       std::to_string(side) + "x" + std::to_string(side) + " blocks");
  }
  std::vector<GrayImage> blocks;
  blocks.reserve(static_cast<std::size_t>(image.width / side) * (image.height / side));
  for (int by = 0; by < image.height; by += side) {
    for (int bx = 0; bx < image.width; bx += side) {
      GrayImage block(side, side);
      for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) block.at(x, y) = image.at(bx + x, by + y);
      }
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

BlockPmf block_pmf(const GrayImage& block) {
  if (block.pixels.empty()) throw InvalidInput("block_pmf: empty block");
  std::array<std::uint32_t, 256> hist{};
  for (std::uint8_t p : block.pixels) ++hist[p];

  BlockPmf pmf;
  pmf.total = static_cast<std::uint32_t>(block.pixels.size());
  for (int v = 0; v < 256; ++v) {
    if (hist[v] == 0) continue;
    pmf.values.push_back(static_cast<std::uint8_t>(v));
    pmf.counts.push_back(hist[v]);
    pmf.probs.push_back(static_cast<double>(hist[v]) / pmf.total);
  }
  return pmf;
}

std::array<double, kStatisticalFeatures> statistical_features(const BlockPmf& pmf) {
  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.support(); ++k) mean += pmf.probs[k] * pmf.values[k];

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, entropy = 0.0;
  for (std::size_t k = 0; k < pmf.support(); ++k) {
    const double p = pmf.probs[k];
    const double d = pmf.values[k] - mean;
    const double d2 = d * d;
    m2 += p * d2;
    m3 += p * d2 * d;
    m4 += p * d2 * d2;
    entropy -= p * std::log2(p);
  }
  // A one-point distribution gives -1*log2(1) = -0.0.
  return {mean, m2, m3, m4, entropy + 0.0};
}

std::array<double, kWaveletFeatures> wavelet_features(const GrayImage& block) {
  Matrix m(static_cast<std::size_t>(block.height), static_cast<std::size_t>(block.width));
  for (std::size_t i = 0; i < block.pixels.size(); ++i) m.data()[i] = block.pixels[i];

  const SubbandSet bands = dwt2d_multilevel(m, kWaveletLevels);
  std::array<double, kWaveletFeatures> out{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Matrix& d = bands.detail(i);
    out[i] = sum_of_squares(d) / static_cast<double>(d.size());
  }
  return out;
}

std::array<double, kFeatureCount> block_features(const GrayImage& block) {
  const auto stats = statistical_features(block_pmf(block));
  const auto energies = wavelet_features(block);
  std::array<double, kFeatureCount> f{};
  std::copy(stats.begin(), stats.end(), f.begin());
  std::copy(energies.begin(), energies.end(), f.begin() + kStatisticalFeatures);
  return f;
}

FeatureMatrix extract_feature_matrix(const GrayImage& image, int side) {
  const auto blocks = partition_blocks(image, side);
  FeatureMatrix f(kFeatureCount, blocks.size());
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    const auto column = block_features(blocks[m]);
    for (std::size_t i = 0; i < column.size(); ++i) f(i, m) = column[i];
  }
  return f;
}

}  // namespace palm
