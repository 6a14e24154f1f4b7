#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "xigua/errors.h"
#include "xigua/metrics.h"

using namespace xigua;

TEST_CASE("hand-computed confusion matrix") {
  const MetricsReport r = metrics_from_confusion({8, 2, 7, 3});
  CHECK(r.sensitivity == doctest::Approx(8.0 / 11).epsilon(1e-12));
  CHECK(r.specificity == doctest::Approx(7.0 / 9).epsilon(1e-12));
  CHECK(r.ppv == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.npv == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.accuracy == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.odds_ratio == doctest::Approx(28.0 / 3).epsilon(1e-12));
  CHECK(r.f1 == doctest::Approx(16.0 / 21).epsilon(1e-12));
}

TEST_CASE("same matrix from labels and scores") {
  std::vector<int> labels;
  std::vector<double> scores;
  auto add = [&](int label, double score, int times) {
    for (int i = 0; i < times; ++i) {
      labels.push_back(label);
      scores.push_back(score);
    }
  };
  add(1, 0.9, 8);
  add(0, 0.6, 2);
  add(0, 0.1, 7);
  add(1, 0.2, 3);
  const MetricsReport r = compute_metrics(labels, scores);
  CHECK(r.confusion.tp == 8);
  CHECK(r.confusion.fp == 2);
  CHECK(r.confusion.tn == 7);
  CHECK(r.confusion.fn == 3);
  CHECK(r.auc == doctest::Approx(oracle::pairwise_auc(labels, scores)).epsilon(1e-12));
  // Threshold is inclusive.
  CHECK(compute_metrics(labels, scores, 0.9).confusion.tp == 8);
}

TEST_CASE("zero cells") {
  const MetricsReport r = metrics_from_confusion({5, 0, 5, 0});
  CHECK(r.accuracy == 1.0);
  CHECK(r.odds_ratio == doctest::Approx(5.5 * 5.5 / 0.25).epsilon(1e-12));
  const MetricsReport none = metrics_from_confusion({0, 0, 4, 4});
  CHECK(none.ppv == 0.0);
  CHECK(none.f1 == 0.0);
  CHECK(none.sensitivity == 0.0);
}

TEST_CASE("AUC edge cases") {
  const std::vector<int> labels{0, 0, 1, 1};
  CHECK(rank_auc(labels, std::vector<double>{0.1, 0.2, 0.3, 0.4}) == 1.0);
  CHECK(rank_auc(labels, std::vector<double>{0.4, 0.3, 0.2, 0.1}) == 0.0);
  CHECK(rank_auc(labels, std::vector<double>{0.5, 0.5, 0.5, 0.5}) == 0.5);
  CHECK_THROWS_AS(rank_auc(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2}), ValidationError);
  CHECK_THROWS_AS(compute_metrics(std::vector<int>{}, std::vector<double>{}), ValidationError);
  CHECK_THROWS_AS(compute_metrics(std::vector<int>{0, 1}, std::vector<double>{0.1}), ValidationError);
  CHECK_THROWS_AS(compute_metrics(std::vector<int>{0, 2}, std::vector<double>{0.1, 0.2}), ValidationError);
}

TEST_CASE("rank AUC equals pairwise AUC on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(rng() % 2);
      scores[i] = static_cast<double>(rng() % 6) / 5.0;  // coarse grid forces ties
    }
    labels[0] = 0;
    labels[1] = 1;
    CHECK(rank_auc(labels, scores) == doctest::Approx(oracle::pairwise_auc(labels, scores)).epsilon(1e-12));
  }
}

TEST_CASE("metric identities on random confusion matrices") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Confusion c{1 + rng() % 50, 1 + rng() % 50, 1 + rng() % 50, 1 + rng() % 50};
    const MetricsReport r = metrics_from_confusion(c);
    const double p = static_cast<double>(c.positives());
    const double n = static_cast<double>(c.negatives());
    CHECK(r.accuracy == doctest::Approx((r.sensitivity * p + r.specificity * n) / (p + n)).epsilon(1e-12));
    CHECK(r.f1 == doctest::Approx(2 * r.ppv * r.sensitivity / (r.ppv + r.sensitivity)).epsilon(1e-12));
    for (double v : {r.accuracy, r.sensitivity, r.specificity, r.ppv, r.npv, r.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(r.odds_ratio >= 0.0);
  }
}

TEST_CASE("json report") {
  const auto j = metrics_to_json(metrics_from_confusion({8, 2, 7, 3}));
  CHECK(j["confusion"]["tp"] == 8);
  CHECK(j["ppv"].get<double>() == doctest::Approx(0.8));
}
