#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "palm/classify.hpp"
#include "palm/dataset.hpp"
#include "palm/error.hpp"
#include "palm/eval.hpp"
#include "palm/model_io.hpp"
#include "palm/synthetic.hpp"

namespace palm::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenArgs {
  int persons = 50;
  int samples = 12;
  std::uint64_t seed = 7;
  std::string out;
};

struct TrainArgs {
  std::string dataset;
  int train_per_person = 6;
  std::uint64_t seed = 7;
  std::string out;
  bool all = false;
  int block_size = kDefaultBlockSize;
};

struct IdentifyArgs {
  std::string model;
  std::vector<std::string> probe;
  std::string method = "wmv";
};

struct EvalArgs {
  std::string dataset;
  std::vector<int> ratios = {3, 4, 5, 6};
  int trials = 10;
  std::uint64_t seed = 7;
  std::string report;
  int block_size = kDefaultBlockSize;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.persons < 2) throw UsageError("--persons must be >= 2");
  if (a.samples < 2) throw UsageError("--samples must be >= 2");
  SyntheticConfig cfg;
  cfg.persons = a.persons;
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  const DatasetManifest m = generate_synthetic(cfg, a.out);
  out << (fs::path(a.out) / kManifestFileName).string() << '\n';
  out << m.records.size() << " records\n";
  return kOk;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  if (a.block_size <= 0) throw UsageError("--block-size must be positive");
  const DatasetManifest m = load_manifest(a.dataset);

  std::vector<SampleKey> keys;
  if (a.all) {
    for (int p : m.person_ids()) {
      for (int s = 0; s < m.samples_per_person; ++s) keys.push_back({p, s});
    }
  } else {
    const SplitConfig cfg{a.train_per_person, 1, a.seed};
    try {
      cfg.validate(m.samples_per_person);
    } catch (const ConfigError& e) {
      throw UsageError(std::string(e.what()) + " (pass --all to train on every sample)");
    }
    keys = split(m, cfg, 0).train;
  }

  // Only the training keys are ever loaded.
  FeatureStore store;
  for (const auto& k : keys) {
    SpectralFeatures f;
    for (Spectrum s : kAllSpectra) {
      f[index_of(s)] =
          extract_feature_matrix(load_image(m.image_path(m.find(k.person_id, k.sample_index, s))),
                                 a.block_size);
    }
    store.insert(k, std::move(f));
  }
  const GalleryModel model = fit_gallery(store.gather(keys), a.block_size);
  save_model(model, a.out);
  out << a.out << '\n';
  out << model.templates.size() << " persons, " << keys.size() << " training samples, M="
      << model.blocks << '\n';
  return kOk;
}

int cmd_identify(const IdentifyArgs& a, std::ostream& out) {
  if (a.probe.size() != kSpectrumCount) {
    throw UsageError("--probe needs 4 images (R G B NIR), got " + std::to_string(a.probe.size()));
  }
  if (a.method != "mdc" && a.method != "wmv") throw UsageError("--method must be mdc or wmv");

  const GalleryModel model = load_model(a.model);
  SpectralFeatures probe;
  for (std::size_t s = 0; s < kSpectrumCount; ++s) {
    probe[s] = extract_feature_matrix(load_image(a.probe[s]), model.block_size);
  }

  if (a.method == "mdc") {
    out << "person " << identify_mdc(probe, model) << '\n';
    return kOk;
  }
  const WmvDecision d = identify_wmv(probe, model);
  out << "person " << d.person_id << '\n';
  std::vector<std::size_t> order(d.board.scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return d.board.scores[x] > d.board.scores[y];
  });
  char line[96];
  for (std::size_t r = 0; r < std::min<std::size_t>(3, order.size()); ++r) {
    std::snprintf(line, sizeof line, "score %d %.6f\n", d.board.person_ids[order[r]],
                  d.board.scores[order[r]]);
    out << line;
  }
  return kOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.ratios.empty()) throw UsageError("--ratios must not be empty");
  if (a.block_size <= 0) throw UsageError("--block-size must be positive");
  const DatasetManifest m = load_manifest(a.dataset);
  for (int r : a.ratios) {
    try {
      SplitConfig{r, a.trials, a.seed}.validate(m.samples_per_person);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--ratios ") + std::to_string(r) + ": " + e.what());
    }
  }

  const FeatureStore store = extract_dataset_features(m, a.block_size);
  std::vector<EvalReport> reports;
  for (int r : a.ratios) {
    reports.push_back(run_experiment(store, m, SplitConfig{r, a.trials, a.seed}, a.block_size));
  }
  out << render_report(reports);
  if (!a.report.empty()) {
    std::ofstream f(a.report, std::ios::trunc);
    if (!f) throw IoError(a.report + ": cannot open for writing");
    f << report_to_json(reports) << '\n';
    if (!f) throw IoError(a.report + ": write failed");
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Palmprint identification from statistical and wavelet block features", "palmid"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic multispectral palm dataset");
  gen_cmd->add_option("--persons", gen.persons, "Number of persons")->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "Samples per person")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit a gallery model on one train split");
  train_cmd->add_option("--dataset", train.dataset, "Dataset directory or manifest.json")->required();
  train_cmd->add_option("--train-per-person", train.train_per_person, "Training samples per person")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Split seed")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Model JSON path")->required();
  train_cmd->add_flag("--all", train.all, "Train on every sample (no test data left)");
  train_cmd->add_option("--block-size", train.block_size, "Block side N")->capture_default_str();

  IdentifyArgs identify;
  auto* identify_cmd = app.add_subcommand("identify", "Identify one multispectral probe");
  identify_cmd->add_option("--model", identify.model, "Model JSON path")->required();
  identify_cmd->add_option("--probe", identify.probe, "Probe images in order R G B NIR")
      ->required()
      ->expected(1, 4);
  identify_cmd->add_option("--method", identify.method, "mdc or wmv")->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Repeated train/test identification experiment");
  eval_cmd->add_option("--dataset", eval.dataset, "Dataset directory or manifest.json")->required();
  eval_cmd->add_option("--ratios", eval.ratios, "Training samples per person, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--trials", eval.trials, "Trials per ratio")->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Split seed")->capture_default_str();
  eval_cmd->add_option("--report", eval.report, "Optional JSON report path");
  eval_cmd->add_option("--block-size", eval.block_size, "Block side N")->capture_default_str();

  std::vector<std::string> argv_storage{"palmid"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "palmid: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*train_cmd) return cmd_train(train, out);
    if (*identify_cmd) return cmd_identify(identify, out);
    if (*eval_cmd) return cmd_eval(eval, out);
  } catch (const UsageError& e) {
    err << "palmid: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "palmid: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "palmid: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace palm::cli
