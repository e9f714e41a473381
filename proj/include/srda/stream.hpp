#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srda/evaluation.hpp"
#include "srda/running_stats.hpp"
#include "srda/types.hpp"

namespace srda {

enum class OrderingMode { class_incremental, iid };

struct ScenarioConfig {
  int base_class_count = 0;  // classes fit before the first checkpoint
  std::uint64_t class_order_seed = 0;
  std::uint64_t within_class_shuffle_seed = 0;
  int increment_size = 1;  // classes added between checkpoints
  OrderingMode ordering_mode = OrderingMode::class_incremental;
};

// A replayable sample ordering plus the offsets at which evaluation fires.
// An offset n means "evaluate after the first n samples were fit".
struct StreamPlan {
  std::vector<std::int64_t> order;
  std::vector<std::int64_t> checkpoints;  // strictly increasing, last == order.size()

  void save(const std::string& path) const;
  static StreamPlan load(const std::string& path);
};

// Deterministic for fixed seeds. The class order is a seeded permutation of
// the distinct labels; the first base_class_count classes form the base
// phase. class_incremental keeps samples grouped by class; iid reshuffles
// all post-base samples globally (checkpoint offsets stay on the same
// schedule in both modes).
StreamPlan make_plan(const std::vector<std::int32_t>& labels, const ScenarioConfig& config);

// Distinct labels in order[0..offset) for every checkpoint offset.
std::vector<std::vector<std::int32_t>> checkpoint_class_sets(
    const std::vector<std::int32_t>& labels, const StreamPlan& plan);

struct RunOptions {
  // Evaluate each checkpoint on the eval samples of classes seen so far;
  // when false the whole eval set is scored (unseen labels count as wrong).
  bool restrict_eval_to_seen = true;
};

struct StreamRunResult {
  EvaluationReport report;
  StatisticsAccumulator accumulator;
};

// Streams every planned sample through fit_one exactly once, building and
// evaluating a head at each checkpoint. Returns the final accumulator so a
// different alpha can be tried afterwards without retraining.
StreamRunResult run_stream(const Dataset& train, const StreamPlan& plan,
                           const HeadConfig& head_config, const Dataset& eval_set,
                           const RunOptions& options = {});

}  // namespace srda
