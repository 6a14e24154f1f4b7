#pragma once

#include <cstddef>
#include <span>

#include "json.hpp"

namespace xigua {

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t positives() const { return tp + fn; }
  std::size_t negatives() const { return tn + fp; }
  std::size_t total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
  Confusion confusion;
  double auc = 0;
  double accuracy = 0;
  double sensitivity = 0;
  double specificity = 0;
  double ppv = 0;
  double npv = 0;
  double odds_ratio = 0;
  double f1 = 0;
};

// Rates with a zero denominator are reported as 0. The odds ratio adds 0.5 to
// every cell when any cell is zero.
MetricsReport metrics_from_confusion(const Confusion& c);

// Mann-Whitney AUC with midranks for tied scores. Throws when one class is
// missing.
double rank_auc(std::span<const int> labels, std::span<const double> scores);

// Confusion matrix at `score >= threshold`, plus AUC over the raw scores.
MetricsReport compute_metrics(std::span<const int> labels, std::span<const double> scores,
                              double threshold = 0.5);

nlohmann::ordered_json metrics_to_json(const MetricsReport& report);

}  // namespace xigua
