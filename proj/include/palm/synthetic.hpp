#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "palm/dataset.hpp"
#include "palm/image.hpp"

namespace palm {

// Knobs of the synthetic multispectral palm generator. Defaults produce
// identities that are easy to separate.
struct SyntheticConfig {
  int persons = 50;
  int samples = 12;
  std::uint64_t seed = 7;
  int width = 128;
  int height = 128;

  int min_lines = 3;
  int max_lines = 5;
  double noise_sigma = 6.0;     // gray levels, added per image
  int max_shift = 2;            // integer translation in [-max_shift, max_shift]
  double contrast_jitter = 0.03;
  std::array<double, 4> gammas = {0.8, 1.0, 1.2, 1.4};  // R, G, B, NIR

  // Two bases must differ by >= separation_level gray levels in at least
  // separation_fraction of their pixels, otherwise the newer one is redrawn.
  double separation_fraction = 0.10;
  int separation_level = 20;
  int max_redraws = 64;
};

// The person's noise-free base texture: smooth dark curves over a ridged
// background. Depends only on (config.seed, person, attempt).
GrayImage synthetic_base(const SyntheticConfig& config, int person, int attempt = 0);

// The bases generate_synthetic uses: attempts are redrawn until every pair
// passes the separation check. Throws ConfigError if max_redraws runs out.
std::vector<GrayImage> synthetic_bases(const SyntheticConfig& config);

// Fraction of pixels where |a - b| >= level. Images must have equal shape.
double separated_fraction(const GrayImage& a, const GrayImage& b, int level);

// Writes <out_dir>/pNNN/sNN_<code>.pgm for every person, sample and spectrum
// plus <out_dir>/manifest.json, and returns the manifest. Fully determined by
// the config. Throws ConfigError for persons < 2 or samples < 2, IoError when
// the directory cannot be written.
DatasetManifest generate_synthetic(const SyntheticConfig& config,
                                   const std::filesystem::path& out_dir);

}  // namespace palm
