#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "srda/discriminant.hpp"
#include "srda/types.hpp"

namespace srda {

struct CheckpointRecord {
  std::uint64_t stream_offset = 0;
  int classes_seen = 0;
  double top1_accuracy = 0.0;
  double topk_accuracy = 0.0;
};

struct EvaluationReport {
  int top_k = 1;
  std::vector<CheckpointRecord> checkpoints;
  std::optional<std::vector<double>> offline_top1;
  std::optional<std::vector<double>> offline_topk;
  std::optional<double> omega_all;
  std::string omega_metric;  // "top1" or "topk" when omega_all is set

  // One checkpoint per row:
  //   checkpoint_index,stream_offset,classes_seen,top1_accuracy,topk_accuracy,
  //   offline_top1,offline_topk
  // followed by a trailing "# omega_all(<metric>) = <value>" line when set.
  void write_csv(std::ostream& out) const;
};

// Fraction of samples whose true label is among the k best predictions.
double topk_accuracy(const DiscriminantModel& model, const Dataset& eval, int k);
double topk_accuracy(const DiscriminantModel& model, const Dataset& eval,
                     std::span<const std::int64_t> indices, int k);

// Mean over checkpoints of rho_t / rho_offline_t.
double omega_all(std::span<const double> rho, std::span<const double> rho_offline);

struct OfflineReference {
  std::vector<double> top1;
  std::vector<double> topk;
};

// For each checkpoint class set, fits head statistics on all training data
// of those classes and evaluates; the resulting accuracies serve as the
// offline bound in omega_all.
OfflineReference offline_reference(const Dataset& train, const Dataset& eval,
                                   const HeadConfig& config,
                                   const std::vector<std::vector<std::int32_t>>& class_sets,
                                   bool restrict_eval_to_seen = true);

}  // namespace srda
