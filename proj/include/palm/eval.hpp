#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "palm/classify.hpp"
#include "palm/dataset.hpp"

namespace palm {

struct SplitConfig {
  int train_per_person = 6;
  int trials = 10;
  std::uint64_t rng_seed = 7;

  // 2 <= train_per_person < samples_per_person, trials >= 1. Throws ConfigError.
  void validate(int samples_per_person) const;
};

struct SampleKey {
  int person_id = 0;
  int sample_index = 0;

  auto operator<=>(const SampleKey&) const = default;
};

struct Split {
  std::vector<SampleKey> train;
  std::vector<SampleKey> test;
};

// Per person (ascending id) a Fisher-Yates shuffle of 0..samples-1 drawn from
// SplitMix64(derive_seed(rng_seed, {train_per_person, trial})); the first
// train_per_person indices train, the rest test. Spectra never separate since
// keys address whole multispectral samples.
Split split(const DatasetManifest& manifest, const SplitConfig& config, int trial);

// Feature matrices of every multispectral sample in a dataset.
class FeatureStore {
 public:
  void insert(SampleKey key, SpectralFeatures features);
  const SpectralFeatures& at(SampleKey key) const;
  std::size_t size() const { return samples_.size(); }

  std::vector<LabeledFeatures> gather(std::span<const SampleKey> keys) const;

 private:
  std::map<SampleKey, SpectralFeatures> samples_;
};

// Loads every image listed in the manifest and extracts its feature matrix.
FeatureStore extract_dataset_features(const DatasetManifest& manifest,
                                      int block_size = kDefaultBlockSize);

struct TrialOutcome {
  GalleryModel model;  // fitted on the train partition only
  std::size_t probes = 0;
  std::size_t mdc_correct = 0;
  std::size_t wmv_correct = 0;
  double mdc_seconds = 0.0;  // summed over probes
  double wmv_seconds = 0.0;
};

// split -> fit on train -> identify every test probe with both classifiers.
TrialOutcome run_trial(const FeatureStore& store, const DatasetManifest& manifest,
                       const SplitConfig& config, int trial, int block_size = kDefaultBlockSize);

struct ClassifierStats {
  std::vector<double> accuracy;            // per trial
  std::vector<std::size_t> misidentified;  // per trial
  double mean_accuracy = 0.0;
  double seconds_per_query = 0.0;
};

struct EvalReport {
  SplitConfig config;
  int persons = 0;
  int samples_per_person = 0;
  std::size_t probes_per_trial = 0;
  ClassifierStats mdc;
  ClassifierStats wmv;
};

EvalReport run_experiment(const FeatureStore& store, const DatasetManifest& manifest,
                          const SplitConfig& config, int block_size = kDefaultBlockSize);
EvalReport run_experiment(const DatasetManifest& manifest, const SplitConfig& config,
                          int block_size = kDefaultBlockSize);

// Published PolyU multispectral accuracies (percent, MDC then WMV) for
// train_per_person in 3..6 of 12. Reference only; not reproducible here.
std::optional<std::pair<double, double>> reference_accuracy(int train_per_person,
                                                            int samples_per_person);

// Fixed-width table (ratio, MDC accuracy, WMV accuracy) in ascending ratio
// order, followed by per-query timing. Throws InvalidInput on a report
// without trials.
std::string render_report(std::span<const EvalReport> reports);

// JSON document {"experiments": [...]} with per-trial arrays. Timing lives
// under each experiment's "timing" key and is omitted when include_timing is
// false.
std::string report_to_json(std::span<const EvalReport> reports, bool include_timing = true);

}  // namespace palm
