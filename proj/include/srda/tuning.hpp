#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "srda/running_stats.hpp"
#include "srda/types.hpp"

namespace srda {

enum class TuningMetric { top1, topk };

// Grid of blend coefficients to try; always sorted, deduplicated and
// containing both endpoints 0 and 1.
struct AlphaGrid {
  std::vector<double> values;
  TuningMetric metric = TuningMetric::top1;
  int k = 1;

  static AlphaGrid with_step(double step, TuningMetric metric = TuningMetric::top1, int k = 1);
  static AlphaGrid from_values(std::vector<double> values,
                               TuningMetric metric = TuningMetric::top1, int k = 1);
};

struct TuningResult {
  std::vector<double> alphas;      // grid order
  std::vector<double> accuracies;  // aligned with alphas
  double best_alpha = 0.0;
  double best_accuracy = 0.0;

  void write_csv(std::ostream& out) const;  // alpha,accuracy rows + "# best" line
};

// Rebuilds a head per grid point from the same frozen accumulator and
// evaluates each on the validation set. Never calls fit_one; the class and
// pooled accumulators are independent, so changing alpha needs no retraining.
TuningResult grid_search_alpha(const StatisticsAccumulator& acc, const Dataset& validation,
                               const AlphaGrid& grid, double epsilon);

struct HoldoutSplit {
  std::vector<std::int64_t> holdout;    // ascending sample indices
  std::vector<std::int64_t> remaining;  // ascending, original stream order
  // classes that had fewer samples than the budget (class, available count)
  std::vector<std::pair<std::int32_t, std::uint64_t>> short_classes;
};

// Reserves up to per_class_budget samples per class with a seeded per-class
// reservoir, before they would reach fit_one. Every sample of a class has
// equal probability of being reserved.
HoldoutSplit balanced_holdout(const std::vector<std::int32_t>& labels, int per_class_budget,
                              std::uint64_t seed);

}  // namespace srda
