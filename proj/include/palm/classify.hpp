#pragma once

#include <array>
#include <span>
#include <vector>

#include "palm/features.hpp"
#include "palm/spectrum.hpp"

namespace palm {

using SpectralFeatures = PerSpectrum<FeatureMatrix>;
using RowWeights = std::array<double, kFeatureCount>;

// One training (or probe) sample: its feature matrix in every spectrum.
struct LabeledFeatures {
  int person_id = 0;
  SpectralFeatures features;
};

// Per-spectrum elementwise mean of a person's training feature matrices.
struct PersonTemplate {
  int person_id = 0;
  SpectralFeatures templates;

  friend bool operator==(const PersonTemplate&, const PersonTemplate&) = default;
};

// alpha normalizes each feature row, w scores its discriminative power.
struct ModelWeights {
  RowWeights alpha{};
  RowWeights w{};

  // alpha_i > 0, w_i in [0, 1], some w_i > 0. Throws InvalidInput.
  void validate() const;

  friend bool operator==(const ModelWeights&, const ModelWeights&) = default;
};

struct GalleryModel {
  std::vector<PersonTemplate> templates;  // ascending person_id
  ModelWeights weights;
  int block_size = kDefaultBlockSize;
  std::size_t blocks = 0;  // M

  // Unique ascending ids, 14 x M templates in all spectra, valid weights.
  void validate() const;

  friend bool operator==(const GalleryModel&, const GalleryModel&) = default;
};

// Accumulated weighted votes per enrolled person, aligned with the gallery.
struct ScoreBoard {
  std::vector<int> person_ids;
  std::vector<double> scores;
  std::vector<int> votes;  // number of row votes won

  double total() const;
};

struct WmvDecision {
  int person_id = 0;
  ScoreBoard board;
};

// Groups by person (output sorted by id) and averages per spectrum.
// Throws InvalidInput on empty input or mismatched matrix shapes.
std::vector<PersonTemplate> build_templates(std::span<const LabeledFeatures> training);

inline constexpr double kAlphaEpsilon = 1e-12;

// alpha_i = 1 / |mean| of row i over every training sample, spectrum and
// block. Rows whose |mean| is <= kAlphaEpsilon get alpha_i = 1 and a warning
// on std::clog.
RowWeights fit_alpha(std::span<const LabeledFeatures> training);

// w_i = accuracy of row i used on its own, measured by symmetric 2-fold
// validation inside the training set: per person the first ceil(n/2) samples
// form the gallery and the rest are probes, then the last ceil(n/2) form the
// gallery and the first floor(n/2) are probes. The two accuracies are
// averaged. Throws ConfigError with fewer than 2 persons or a person with
// fewer than 2 samples.
RowWeights fit_w(std::span<const LabeledFeatures> training, const RowWeights& alpha);

// Templates, alpha and w from training data only.
GalleryModel fit_gallery(std::span<const LabeledFeatures> training,
                         int block_size = kDefaultBlockSize);

// Mean over spectra of sum_i sum_j w_i alpha_i (test_ij - template_ij)^2.
double distance(const SpectralFeatures& test, const PersonTemplate& person,
                const ModelWeights& weights);

// argmin of distance over the gallery; ties go to the lowest person id.
// Throws InvalidInput for an empty gallery.
int identify_mdc(const SpectralFeatures& test, const GalleryModel& gallery);

// Each (spectrum, feature row) pair votes w_i for the person whose alpha-scaled
// row vector is nearest in Euclidean norm. The highest total wins; ties at
// either stage go to the lowest person id.
WmvDecision identify_wmv(const SpectralFeatures& test, const GalleryModel& gallery);

}  // namespace palm
