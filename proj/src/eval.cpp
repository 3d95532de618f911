#include "palm/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "palm/error.hpp"
#include "palm/rng.hpp"

namespace palm {

void SplitConfig::validate(int samples_per_person) const {
  if (train_per_person < 2) throw ConfigError("train_per_person must be >= 2");
  if (train_per_person >= samples_per_person) {
    throw ConfigError("train_per_person " + std::to_string(train_per_person) +
                      " leaves no test samples out of " + std::to_string(samples_per_person));
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
}

Split split(const DatasetManifest& manifest, const SplitConfig& config, int trial) {
  config.validate(manifest.samples_per_person);
  SplitMix64 rng(derive_seed(config.rng_seed, {static_cast<std::uint64_t>(config.train_per_person),
                                               static_cast<std::uint64_t>(trial)}));
  Split out;
  std::vector<int> order(static_cast<std::size_t>(manifest.samples_per_person));
  for (int person : manifest.person_ids()) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(std::span<int>(order));
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& part = i < static_cast<std::size_t>(config.train_per_person) ? out.train : out.test;
      part.push_back({person, order[i]});
    }
  }
  return out;
}

void FeatureStore::insert(SampleKey key, SpectralFeatures features) {
  samples_.insert_or_assign(key, std::move(features));
}

const SpectralFeatures& FeatureStore::at(SampleKey key) const {
  const auto it = samples_.find(key);
  if (it == samples_.end()) {
    throw InvalidInput("FeatureStore: no sample for person " + std::to_string(key.person_id) +
                       " index " + std::to_string(key.sample_index));
  }
  return it->second;
}

std::vector<LabeledFeatures> FeatureStore::gather(std::span<const SampleKey> keys) const {
  std::vector<LabeledFeatures> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back({k.person_id, at(k)});
  return out;
}

FeatureStore extract_dataset_features(const DatasetManifest& manifest, int block_size) {
  std::map<SampleKey, SpectralFeatures> pending;
  for (const auto& r : manifest.records) {
    const GrayImage img = load_image(manifest.image_path(r));
    try {
      pending[{r.person_id, r.sample_index}][index_of(r.spectrum)] =
          extract_feature_matrix(img, block_size);
    } catch (const InvalidInput& e) {
      throw InvalidInput(manifest.image_path(r).string() + ": " + e.what());
    }
  }
  FeatureStore store;
  for (auto& [key, features] : pending) store.insert(key, std::move(features));
  return store;
}

TrialOutcome run_trial(const FeatureStore& store, const DatasetManifest& manifest,
                       const SplitConfig& config, int trial, int block_size) {
  const Split parts = split(manifest, config, trial);

  TrialOutcome out;
  {
    const auto training = store.gather(parts.train);
    out.model = fit_gallery(training, block_size);
  }

  using clock = std::chrono::steady_clock;
  for (const auto& key : parts.test) {
    const SpectralFeatures& probe = store.at(key);
    try {
      const auto t0 = clock::now();
      const int mdc = identify_mdc(probe, out.model);
      const auto t1 = clock::now();
      const int wmv = identify_wmv(probe, out.model).person_id;
      const auto t2 = clock::now();
      out.mdc_seconds += std::chrono::duration<double>(t1 - t0).count();
      out.wmv_seconds += std::chrono::duration<double>(t2 - t1).count();
      if (mdc == key.person_id) ++out.mdc_correct;
      if (wmv == key.person_id) ++out.wmv_correct;
      ++out.probes;
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(trial) + ": probe person " +
                               std::to_string(key.person_id) + " sample " +
                               std::to_string(key.sample_index) + " failed: " + e.what());
    }
  }
  return out;
}

EvalReport run_experiment(const FeatureStore& store, const DatasetManifest& manifest,
                          const SplitConfig& config, int block_size) {
  config.validate(manifest.samples_per_person);
  EvalReport report;
  report.config = config;
  report.persons = manifest.persons;
  report.samples_per_person = manifest.samples_per_person;

  double mdc_seconds = 0.0, wmv_seconds = 0.0;
  std::size_t total_probes = 0;
  for (int trial = 0; trial < config.trials; ++trial) {
    const TrialOutcome t = run_trial(store, manifest, config, trial, block_size);
    const double n = static_cast<double>(t.probes);
    report.probes_per_trial = t.probes;
    report.mdc.accuracy.push_back(static_cast<double>(t.mdc_correct) / n);
    report.wmv.accuracy.push_back(static_cast<double>(t.wmv_correct) / n);
    report.mdc.misidentified.push_back(t.probes - t.mdc_correct);
    report.wmv.misidentified.push_back(t.probes - t.wmv_correct);
    mdc_seconds += t.mdc_seconds;
    wmv_seconds += t.wmv_seconds;
    total_probes += t.probes;
  }
  for (ClassifierStats* stats : {&report.mdc, &report.wmv}) {
    double sum = 0.0;
    for (double a : stats->accuracy) sum += a;
    stats->mean_accuracy = sum / static_cast<double>(stats->accuracy.size());
  }
  report.mdc.seconds_per_query = mdc_seconds / static_cast<double>(total_probes);
  report.wmv.seconds_per_query = wmv_seconds / static_cast<double>(total_probes);
  return report;
}

EvalReport run_experiment(const DatasetManifest& manifest, const SplitConfig& config,
                          int block_size) {
  config.validate(manifest.samples_per_person);
  return run_experiment(extract_dataset_features(manifest, block_size), manifest, config,
                        block_size);
}

std::optional<std::pair<double, double>> reference_accuracy(int train_per_person,
                                                            int samples_per_person) {
  if (samples_per_person != 12) return std::nullopt;
  switch (train_per_person) {
    case 3:
      return std::make_pair(97.42, 99.95);
    case 4:
      return std::make_pair(99.72, 99.99);
    case 5:
      return std::make_pair(99.51, 99.99);
    case 6:
      return std::make_pair(100.0, 99.99);
    default:
      return std::nullopt;
  }
}

namespace {

std::vector<const EvalReport*> by_ratio(std::span<const EvalReport> reports) {
  std::vector<const EvalReport*> sorted;
  for (const auto& r : reports) {
    if (r.mdc.accuracy.empty() || r.wmv.accuracy.empty()) {
      throw InvalidInput("render_report: report without trials");
    }
    sorted.push_back(&r);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const EvalReport* a, const EvalReport* b) {
    return a->config.train_per_person < b->config.train_per_person;
  });
  return sorted;
}

std::string ratio_label(const EvalReport& r) {
  return std::to_string(r.config.train_per_person) + "/" + std::to_string(r.samples_per_person);
}

}  // namespace

std::string render_report(std::span<const EvalReport> reports) {
  const auto sorted = by_ratio(reports);
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s | %-16s | %-16s\n", "Ratio", "MDC accuracy (%)",
                "WMV accuracy (%)");
  os << line << std::string(48, '-') << '\n';
  for (const auto* r : sorted) {
    std::snprintf(line, sizeof line, "%-10s | %16.2f | %16.2f\n", ratio_label(*r).c_str(),
                  100.0 * r->mdc.mean_accuracy, 100.0 * r->wmv.mean_accuracy);
    os << line;
  }
  os << '\n';
  for (const auto* r : sorted) {
    std::snprintf(line, sizeof line,
                  "%s: %d trials x %zu probes, mean time per query MDC %.3f ms, WMV %.3f ms\n",
                  ratio_label(*r).c_str(), r->config.trials, r->probes_per_trial,
                  1e3 * r->mdc.seconds_per_query, 1e3 * r->wmv.seconds_per_query);
    os << line;
  }
  bool header = false;
  for (const auto* r : sorted) {
    const auto ref = reference_accuracy(r->config.train_per_person, r->samples_per_person);
    if (!ref) continue;
    if (!header) {
      os << "\nReference, PolyU multispectral (500 persons), not reproduced here:\n";
      header = true;
    }
    std::snprintf(line, sizeof line, "%-10s | %16.2f | %16.2f\n", ratio_label(*r).c_str(),
                  ref->first, ref->second);
    os << line;
  }
  return os.str();
}

std::string report_to_json(std::span<const EvalReport> reports, bool include_timing) {
  using nlohmann::json;
  json experiments = json::array();
  for (const auto* r : by_ratio(reports)) {
    auto stats = [](const ClassifierStats& s) {
      std::size_t total = 0;
      for (auto m : s.misidentified) total += m;
      return json{{"accuracy", s.accuracy},
                  {"mean_accuracy", s.mean_accuracy},
                  {"misidentified", s.misidentified},
                  {"misidentified_total", total}};
    };
    json e{{"train_per_person", r->config.train_per_person},
           {"samples_per_person", r->samples_per_person},
           {"persons", r->persons},
           {"trials", r->config.trials},
           {"seed", r->config.rng_seed},
           {"probes_per_trial", r->probes_per_trial},
           {"mdc", stats(r->mdc)},
           {"wmv", stats(r->wmv)}};
    if (const auto ref = reference_accuracy(r->config.train_per_person, r->samples_per_person)) {
      e["reference_percent"] = {{"dataset", "PolyU multispectral, 500 persons"},
                                {"mdc", ref->first},
                                {"wmv", ref->second}};
    }
    if (include_timing) {
      e["timing"] = {{"mdc_seconds_per_query", r->mdc.seconds_per_query},
                     {"wmv_seconds_per_query", r->wmv.seconds_per_query}};
    }
    experiments.push_back(std::move(e));
  }
  return json{{"experiments", std::move(experiments)}}.dump(2);
}

}  // namespace palm
