#include "srda/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "srda/discriminant.hpp"
#include "srda/evaluation.hpp"
#include "srda/rng.hpp"

namespace srda {

namespace {

void normalize_grid(std::vector<double>& values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("alpha grid values must lie in [0, 1]");
    }
  }
  values.push_back(0.0);
  values.push_back(1.0);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace

AlphaGrid AlphaGrid::with_step(double step, TuningMetric metric, int k) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("alpha step must lie in (0, 1]");
  std::vector<double> values;
  const int n = static_cast<int>(std::ceil(1.0 / step - 1e-12));
  for (int i = 0; i < n; ++i) values.push_back(i * step);
  return from_values(std::move(values), metric, k);
}

AlphaGrid AlphaGrid::from_values(std::vector<double> values, TuningMetric metric, int k) {
  if (k < 1) throw std::invalid_argument("tuning k must be positive");
  normalize_grid(values);
  AlphaGrid grid;
  grid.values = std::move(values);
  grid.metric = metric;
  grid.k = k;
  return grid;
}

void TuningResult::write_csv(std::ostream& out) const {
  char buf[32];
  out << "alpha,accuracy\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", alphas[i]);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", accuracies[i]);
    out << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.17g", best_alpha);
  out << "# best_alpha = " << buf;
  std::snprintf(buf, sizeof(buf), "%.17g", best_accuracy);
  out << ", best_accuracy = " << buf << '\n';
}

TuningResult grid_search_alpha(const StatisticsAccumulator& acc, const Dataset& validation,
                               const AlphaGrid& grid, double epsilon) {
  if (validation.empty()) throw std::invalid_argument("grid_search_alpha: empty validation set");
  if (grid.values.empty()) throw std::invalid_argument("grid_search_alpha: empty grid");

  TuningResult result;
  result.best_accuracy = -1.0;
  for (double alpha : grid.values) {
    HeadConfig config;
    config.alpha = alpha;
    config.epsilon = epsilon;
    config.top_k = grid.k;
    double accuracy = 0.0;
    try {
      const DiscriminantModel model = DiscriminantModel::build(acc, config);
      const int k = grid.metric == TuningMetric::top1 ? 1 : grid.k;
      accuracy = topk_accuracy(model, validation, k);
    } catch (const std::exception& e) {
      throw std::runtime_error("alpha=" + std::to_string(alpha) + ": " + e.what());
    }
    result.alphas.push_back(alpha);
    result.accuracies.push_back(accuracy);
    if (accuracy > result.best_accuracy) {  // ties keep the smaller alpha
      result.best_accuracy = accuracy;
      result.best_alpha = alpha;
    }
  }
  return result;
}

HoldoutSplit balanced_holdout(const std::vector<std::int32_t>& labels, int per_class_budget,
                              std::uint64_t seed) {
  if (per_class_budget < 1) throw std::invalid_argument("per_class_budget must be >= 1");

  struct Reservoir {
    rng::Engine engine;
    std::vector<std::int64_t> picks;
    std::uint64_t seen = 0;
  };
  std::map<std::int32_t, Reservoir> reservoirs;

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::int32_t label = labels[i];
    auto it = reservoirs.find(label);
    if (it == reservoirs.end()) {
      it = reservoirs
               .emplace(label, Reservoir{rng::Engine(rng::mix(seed, static_cast<std::uint64_t>(
                                                                        label))),
                                         {}, 0})
               .first;
    }
    Reservoir& r = it->second;
    r.seen += 1;
    if (r.picks.size() < static_cast<std::size_t>(per_class_budget)) {
      r.picks.push_back(static_cast<std::int64_t>(i));
    } else {
      const std::uint64_t j = r.engine.below(r.seen);
      if (j < static_cast<std::uint64_t>(per_class_budget)) {
        r.picks[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(i);
      }
    }
  }

  std::vector<bool> held(labels.size(), false);
  HoldoutSplit split;
  for (auto& [label, r] : reservoirs) {
    for (std::int64_t i : r.picks) held[static_cast<std::size_t>(i)] = true;
    if (r.seen < static_cast<std::uint64_t>(per_class_budget)) {
      split.short_classes.emplace_back(label, r.seen);
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (held[i] ? split.holdout : split.remaining).push_back(static_cast<std::int64_t>(i));
  }
  return split;
}

}  // namespace srda
