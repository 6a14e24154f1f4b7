#include "xigua/metrics.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "xigua/errors.h"

namespace xigua {

namespace {

double ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

MetricsReport metrics_from_confusion(const Confusion& c) {
  MetricsReport r;
  r.confusion = c;
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  r.sensitivity = ratio(tp, tp + fn);
  r.specificity = ratio(tn, tn + fp);
  r.ppv = ratio(tp, tp + fp);
  r.npv = ratio(tn, tn + fn);
  r.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  if (c.tp == 0 || c.fp == 0 || c.tn == 0 || c.fn == 0) {
    r.odds_ratio = ((tp + 0.5) * (tn + 0.5)) / ((fp + 0.5) * (fn + 0.5));
  } else {
    r.odds_ratio = (tp * tn) / (fp * fn);
  }
  r.f1 = ratio(2 * r.ppv * r.sensitivity, r.ppv + r.sensitivity);
  return r;
}

double rank_auc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw ValidationError("labels and scores differ in length");
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    // Ranks i+1..j share their mean.
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positive_rank_sum += midrank;
        ++pos;
      }
    }
    i = j;
  }
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) throw ValidationError("AUC is undefined unless both classes are present");
  const double p = static_cast<double>(pos);
  return (positive_rank_sum - p * (p + 1) / 2.0) / (p * static_cast<double>(neg));
}

MetricsReport compute_metrics(std::span<const int> labels, std::span<const double> scores,
                              double threshold) {
  if (labels.empty()) throw ValidationError("metrics need at least one sample");
  if (labels.size() != scores.size()) throw ValidationError("labels and scores differ in length");
  Confusion c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ValidationError("labels must be 0 or 1");
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1) {
      predicted ? ++c.tp : ++c.fn;
    } else {
      predicted ? ++c.fp : ++c.tn;
    }
  }
  MetricsReport r = metrics_from_confusion(c);
  r.auc = rank_auc(labels, scores);
  return r;
}

nlohmann::ordered_json metrics_to_json(const MetricsReport& r) {
  return {{"auc", r.auc},
          {"accuracy", r.accuracy},
          {"sensitivity", r.sensitivity},
          {"ppv", r.ppv},
          {"npv", r.npv},
          {"specificity", r.specificity},
          {"odds_ratio", r.odds_ratio},
          {"f1", r.f1},
          {"confusion",
           {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}, {"fn", r.confusion.fn}}}};
}

}  // namespace xigua
