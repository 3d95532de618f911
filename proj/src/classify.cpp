#include "palm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <string>

#include "palm/error.hpp"

namespace palm {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* where) {
  if (!a.same_shape(b)) {
    throw InvalidInput(std::string(where) + ": feature matrix shape mismatch (" +
                       std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                       std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

void require_feature_rows(const Matrix& m, const char* where) {
  if (m.rows() != kFeatureCount || m.cols() == 0) {
    throw InvalidInput(std::string(where) + ": expected a 14 x M feature matrix, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double row_sq_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

// Per-person sample lists in ascending person order, preserving input order.
std::map<int, std::vector<const LabeledFeatures*>> group_by_person(
    std::span<const LabeledFeatures> samples) {
  std::map<int, std::vector<const LabeledFeatures*>> groups;
  for (const auto& s : samples) groups[s.person_id].push_back(&s);
  return groups;
}

PersonTemplate average(int person_id, std::span<const LabeledFeatures* const> samples) {
  PersonTemplate t;
  t.person_id = person_id;
  for (Spectrum s : kAllSpectra) {
    const std::size_t si = index_of(s);
    const Matrix& first = samples.front()->features[si];
    Matrix acc(first.rows(), first.cols());
    for (const auto* sample : samples) {
      const Matrix& m = sample->features[si];
      require_same_shape(m, first, "build_templates");
      for (std::size_t i = 0; i < acc.size(); ++i) acc.data()[i] += m.data()[i];
    }
    const double n = static_cast<double>(samples.size());
    for (double& v : acc.data()) v /= n;
    t.templates[si] = std::move(acc);
  }
  return t;
}

}  // namespace

void ModelWeights::validate() const {
  bool any_w = false;
  for (int i = 0; i < kFeatureCount; ++i) {
    if (!(alpha[i] > 0.0) || !std::isfinite(alpha[i])) {
      throw InvalidInput("ModelWeights: alpha[" + std::to_string(i) + "] must be positive");
    }
    if (!(w[i] >= 0.0 && w[i] <= 1.0)) {
      throw InvalidInput("ModelWeights: w[" + std::to_string(i) + "] must lie in [0, 1]");
    }
    any_w = any_w || w[i] > 0.0;
  }
  if (!any_w) throw InvalidInput("ModelWeights: at least one w must be positive");
}

void GalleryModel::validate() const {
  weights.validate();
  if (block_size <= 0) throw InvalidInput("GalleryModel: block size must be positive");
  for (std::size_t k = 0; k < templates.size(); ++k) {
    if (k > 0 && templates[k].person_id <= templates[k - 1].person_id) {
      throw InvalidInput("GalleryModel: person ids must be unique and ascending");
    }
    for (const Matrix& m : templates[k].templates) {
      require_feature_rows(m, "GalleryModel");
      if (m.cols() != blocks) throw InvalidInput("GalleryModel: template block count mismatch");
    }
  }
}

double ScoreBoard::total() const { return std::accumulate(scores.begin(), scores.end(), 0.0); }

std::vector<PersonTemplate> build_templates(std::span<const LabeledFeatures> training) {
  if (training.empty()) throw InvalidInput("build_templates: no training samples");
  const Matrix& reference = training.front().features[0];
  require_feature_rows(reference, "build_templates");
  for (const auto& s : training) {
    for (const Matrix& m : s.features) require_same_shape(m, reference, "build_templates");
  }

  std::vector<PersonTemplate> out;
  for (const auto& [person, samples] : group_by_person(training)) {
    out.push_back(average(person, samples));
  }
  return out;
}

RowWeights fit_alpha(std::span<const LabeledFeatures> training) {
  if (training.empty()) throw InvalidInput("fit_alpha: no training samples");
  RowWeights sums{};
  std::size_t count = 0;
  for (const auto& s : training) {
    for (const Matrix& m : s.features) {
      require_feature_rows(m, "fit_alpha");
      for (std::size_t i = 0; i < kFeatureCount; ++i) {
        for (double v : m.row(i)) sums[i] += v;
      }
      count += m.cols();
    }
  }

  RowWeights alpha{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    // f3 is signed, so the magnitude of the mean sets its scale.
    const double mean = sums[i] / static_cast<double>(count);
    if (std::abs(mean) <= kAlphaEpsilon) {
      std::clog << "palm: feature row " << (i + 1) << " has mean " << mean
                << ", using alpha = 1\n";
      alpha[i] = 1.0;
    } else {
      alpha[i] = 1.0 / std::abs(mean);
    }
  }
  return alpha;
}

RowWeights fit_w(std::span<const LabeledFeatures> training, const RowWeights& alpha) {
  const auto groups = group_by_person(training);
  if (groups.size() < 2) throw ConfigError("fit_w: need at least 2 persons");
  for (const auto& [person, samples] : groups) {
    if (samples.size() < 2) {
      throw ConfigError("fit_w: person " + std::to_string(person) +
                        " has fewer than 2 training samples");
    }
  }

  std::array<double, kFeatureCount> accuracy_sum{};
  for (int orientation = 0; orientation < 2; ++orientation) {
    std::vector<PersonTemplate> gallery;
    std::vector<std::pair<std::size_t, const LabeledFeatures*>> probes;  // (gallery index, sample)
    for (const auto& [person, samples] : groups) {
      const std::size_t n = samples.size();
      const std::size_t g = (n + 1) / 2;
      const std::span<const LabeledFeatures* const> all(samples);
      const auto gallery_part = orientation == 0 ? all.first(g) : all.last(g);
      const auto probe_part = orientation == 0 ? all.last(n - g) : all.first(n - g);
      for (const auto* p : probe_part) probes.emplace_back(gallery.size(), p);
      gallery.push_back(average(person, gallery_part));
    }

    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      std::size_t correct = 0;
      for (const auto& [truth, probe] : probes) {
        std::size_t best = 0;
        double best_d = 0.0;
        for (std::size_t k = 0; k < gallery.size(); ++k) {
          double d = 0.0;
          for (std::size_t s = 0; s < kSpectrumCount; ++s) {
            d += alpha[i] * row_sq_diff(probe->features[s].row(i), gallery[k].templates[s].row(i));
          }
          d /= static_cast<double>(kSpectrumCount);
          if (k == 0 || d < best_d) {
            best = k;
            best_d = d;
          }
        }
        if (best == truth) ++correct;
      }
      accuracy_sum[i] += static_cast<double>(correct) / static_cast<double>(probes.size());
    }
  }

  RowWeights w{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) w[i] = accuracy_sum[i] / 2.0;
  return w;
}

GalleryModel fit_gallery(std::span<const LabeledFeatures> training, int block_size) {
  GalleryModel model;
  model.templates = build_templates(training);
  model.weights.alpha = fit_alpha(training);
  model.weights.w = fit_w(training, model.weights.alpha);
  model.block_size = block_size;
  model.blocks = model.templates.front().templates[0].cols();
  model.validate();
  return model;
}

double distance(const SpectralFeatures& test, const PersonTemplate& person,
                const ModelWeights& weights) {
  double total = 0.0;
  for (std::size_t s = 0; s < kSpectrumCount; ++s) {
    const Matrix& t = test[s];
    const Matrix& k = person.templates[s];
    require_same_shape(t, k, "distance");
    require_feature_rows(t, "distance");
    double d = 0.0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      d += weights.w[i] * weights.alpha[i] * row_sq_diff(t.row(i), k.row(i));
    }
    total += d;
  }
  return total / static_cast<double>(kSpectrumCount);
}

int identify_mdc(const SpectralFeatures& test, const GalleryModel& gallery) {
  if (gallery.templates.empty()) throw InvalidInput("identify_mdc: empty gallery");
  int best_id = gallery.templates.front().person_id;
  double best = distance(test, gallery.templates.front(), gallery.weights);
  for (std::size_t k = 1; k < gallery.templates.size(); ++k) {
    const double d = distance(test, gallery.templates[k], gallery.weights);
    if (d < best) {
      best = d;
      best_id = gallery.templates[k].person_id;
    }
  }
  return best_id;
}

WmvDecision identify_wmv(const SpectralFeatures& test, const GalleryModel& gallery) {
  if (gallery.templates.empty()) throw InvalidInput("identify_wmv: empty gallery");
  const std::size_t persons = gallery.templates.size();

  WmvDecision out;
  ScoreBoard& board = out.board;
  board.scores.assign(persons, 0.0);
  board.votes.assign(persons, 0);
  for (const auto& t : gallery.templates) board.person_ids.push_back(t.person_id);

  for (std::size_t s = 0; s < kSpectrumCount; ++s) {
    require_feature_rows(test[s], "identify_wmv");
    for (const auto& t : gallery.templates) require_same_shape(test[s], t.templates[s], "identify_wmv");

    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const double a2 = gallery.weights.alpha[i] * gallery.weights.alpha[i];
      std::size_t winner = 0;
      double best = 0.0;
      for (std::size_t k = 0; k < persons; ++k) {
        const double d = a2 * row_sq_diff(test[s].row(i), gallery.templates[k].templates[s].row(i));
        if (k == 0 || d < best) {
          best = d;
          winner = k;
        }
      }
      board.scores[winner] += gallery.weights.w[i];
      board.votes[winner] += 1;
    }
  }

  std::size_t top = 0;
  for (std::size_t k = 1; k < persons; ++k) {
    if (board.scores[k] > board.scores[top]) top = k;
  }
  out.person_id = board.person_ids[top];
  return out;
}

}  // namespace palm
