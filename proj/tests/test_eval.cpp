#include <doctest.h>

#include <json.hpp>
#include <set>
#include <sstream>

#include "palm/error.hpp"
#include "palm/eval.hpp"
#include "palm/synthetic.hpp"
#include "temp_dir.hpp"

using namespace palm;

namespace {

DatasetManifest shaped_manifest(int persons, int samples) {
  DatasetManifest m;
  m.persons = persons;
  m.samples_per_person = samples;
  for (int p = 0; p < persons; ++p) {
    for (int s = 0; s < samples; ++s) {
      for (Spectrum sp : kAllSpectra) m.records.push_back({p, s, sp, "x.pgm"});
    }
  }
  return m;
}

EvalReport fake_report(int train, int samples) {
  EvalReport r;
  r.config = {train, 2, 1};
  r.persons = 5;
  r.samples_per_person = samples;
  r.probes_per_trial = 10;
  r.mdc = {{0.9, 1.0}, {1, 0}, 0.95, 1e-4};
  r.wmv = {{1.0, 1.0}, {0, 0}, 1.0, 2e-4};
  return r;
}

}  // namespace

TEST_CASE("split") {
  const auto m = shaped_manifest(20, 12);
  const SplitConfig cfg{6, 10, 99};

  SUBCASE("6 of 12: counts, disjointness, coverage") {
    const Split s = split(m, cfg, 0);
    CHECK(s.train.size() == 120);
    CHECK(s.test.size() == 120);
    std::set<SampleKey> train(s.train.begin(), s.train.end());
    std::set<SampleKey> test(s.test.begin(), s.test.end());
    CHECK(train.size() == 120);
    for (const auto& k : test) CHECK(train.count(k) == 0);
    std::map<int, int> per_person;
    for (const auto& k : s.train) ++per_person[k.person_id];
    for (const auto& [p, n] : per_person) CHECK(n == 6);
    CHECK(train.size() + test.size() == 240);
  }
  SUBCASE("deterministic in (seed, trial), varies across trials and ratios") {
    const Split a = split(m, cfg, 3), b = split(m, cfg, 3), c = split(m, cfg, 4);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(a.train != c.train);
    // The ratio is part of the stream seed, so person 0's order changes too.
    const Split five = split(m, {5, 10, 99}, 3);
    CHECK(std::vector<SampleKey>(five.train.begin(), five.train.begin() + 5) !=
          std::vector<SampleKey>(a.train.begin(), a.train.begin() + 5));
  }
  SUBCASE("shuffles look uniform") {
    // Over many trials, each sample index should train about half the time.
    std::map<int, int> trained;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
      for (const auto& k : split(m, cfg, t).train) {
        if (k.person_id == 0) ++trained[k.sample_index];
      }
    }
    for (const auto& [idx, n] : trained) {
      CHECK(n > trials / 2 - 60);
      CHECK(n < trials / 2 + 60);
    }
  }
  SUBCASE("PolyU-shaped, 3 of 12") {
    CHECK(split(shaped_manifest(500, 12), {3, 10, 1}, 0).test.size() == 4500);
  }
  SUBCASE("invalid configs") {
    CHECK_THROWS_AS(split(m, {12, 1, 1}, 0), ConfigError);
    CHECK_THROWS_AS(split(m, {1, 1, 1}, 0), ConfigError);
    CHECK_THROWS_AS(split(m, {6, 0, 1}, 0), ConfigError);
  }
}

TEST_CASE("run_experiment") {
  SUBCASE("exact copies of each base give perfect accuracy") {
    TempDir dir;
    SyntheticConfig cfg;
    cfg.persons = 10;
    cfg.samples = 4;
    cfg.seed = 3;
    cfg.noise_sigma = 0.0;
    cfg.max_shift = 0;
    cfg.contrast_jitter = 0.0;
    const auto m = generate_synthetic(cfg, dir.path());
    const auto r = run_experiment(m, {2, 2, 5});
    CHECK(r.probes_per_trial == 20);
    CHECK(r.mdc.mean_accuracy == 1.0);
    CHECK(r.wmv.mean_accuracy == 1.0);
    CHECK(r.mdc.misidentified == std::vector<std::size_t>{0, 0});
  }
  SUBCASE("report bookkeeping is consistent and deterministic") {
    TempDir dir;
    SyntheticConfig cfg;
    cfg.persons = 6;
    cfg.samples = 5;
    cfg.seed = 11;
    const auto m = generate_synthetic(cfg, dir.path());
    const FeatureStore store = extract_dataset_features(m);
    CHECK(store.size() == 30);
    const auto a = run_experiment(store, m, {3, 3, 8});
    const auto b = run_experiment(store, m, {3, 3, 8});
    REQUIRE(a.mdc.accuracy.size() == 3);
    for (std::size_t t = 0; t < 3; ++t) {
      const double acc = a.mdc.accuracy[t];
      CHECK(acc >= 0.0);
      CHECK(acc <= 1.0);
      CHECK(acc == doctest::Approx(1.0 - static_cast<double>(a.mdc.misidentified[t]) / 12.0));
    }
    CHECK(a.mdc.mean_accuracy ==
          doctest::Approx((a.mdc.accuracy[0] + a.mdc.accuracy[1] + a.mdc.accuracy[2]) / 3));
    const std::vector<EvalReport> ra{a}, rb{b};
    CHECK(report_to_json(ra, false) == report_to_json(rb, false));
  }
}

TEST_CASE("render_report") {
  SUBCASE("single row") {
    const std::vector<EvalReport> one{fake_report(6, 12)};
    const std::string text = render_report(one);
    std::istringstream in(text);
    std::string header, rule, row;
    std::getline(in, header);
    std::getline(in, rule);
    std::getline(in, row);
    CHECK(header.find("Ratio") != std::string::npos);
    CHECK(header.find("MDC accuracy") != std::string::npos);
    CHECK(header.find("WMV accuracy") != std::string::npos);
    CHECK(std::count(header.begin(), header.end(), '|') == 2);
    CHECK(row.find("6/12") == 0);
    CHECK(row.find("95.00") != std::string::npos);
    CHECK(row.find("100.00") != std::string::npos);
    std::string next;
    std::getline(in, next);
    CHECK(next.empty());  // exactly one data row
    CHECK(text.find("ms") != std::string::npos);
  }
  SUBCASE("rows sorted by ratio") {
    const std::vector<EvalReport> four{fake_report(5, 12), fake_report(3, 12), fake_report(6, 12),
                                       fake_report(4, 12)};
    const std::string text = render_report(four);
    const auto p3 = text.find("3/12"), p4 = text.find("4/12"), p5 = text.find("5/12"),
               p6 = text.find("6/12");
    CHECK(p3 < p4);
    CHECK(p4 < p5);
    CHECK(p5 < p6);
  }
  SUBCASE("report without trials is rejected") {
    EvalReport empty = fake_report(3, 12);
    empty.mdc.accuracy.clear();
    const std::vector<EvalReport> v{empty};
    CHECK_THROWS_AS(render_report(v), InvalidInput);
  }
  SUBCASE("json omits timing on request") {
    const std::vector<EvalReport> v{fake_report(3, 12)};
    const auto with = nlohmann::json::parse(report_to_json(v, true));
    const auto without = nlohmann::json::parse(report_to_json(v, false));
    CHECK(with["experiments"][0].contains("timing"));
    CHECK_FALSE(without["experiments"][0].contains("timing"));
    CHECK(without["experiments"][0]["mdc"]["misidentified_total"] == 1);
    CHECK(without["experiments"][0]["reference_percent"]["mdc"] == 97.42);
  }
}
