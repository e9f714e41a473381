#include "srda/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace srda {

namespace {

const char* kCsvHeader =
    "checkpoint_index,stream_offset,classes_seen,top1_accuracy,topk_accuracy,"
    "offline_top1,offline_topk";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool hit_topk(const DiscriminantModel& model, const Dataset& eval, std::int64_t i, int k) {
  const std::vector<std::int32_t> top = model.predict_topk(eval.sample(i), k);
  return std::find(top.begin(), top.end(), eval.label(i)) != top.end();
}

}  // namespace

void EvaluationReport::write_csv(std::ostream& out) const {
  out << kCsvHeader << "\n";
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const CheckpointRecord& row = checkpoints[i];
    out << i << ',' << row.stream_offset << ',' << row.classes_seen << ','
        << format_double(row.top1_accuracy) << ',' << format_double(row.topk_accuracy) << ',';
    if (offline_top1 && i < offline_top1->size()) out << format_double((*offline_top1)[i]);
    out << ',';
    if (offline_topk && i < offline_topk->size()) out << format_double((*offline_topk)[i]);
    out << '\n';
  }
  if (omega_all) {
    out << "# omega_all(" << omega_metric << ") = " << format_double(*omega_all) << '\n';
  }
}

double topk_accuracy(const DiscriminantModel& model, const Dataset& eval, int k) {
  if (eval.empty()) throw std::invalid_argument("topk_accuracy: empty eval set");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < eval.size(); ++i) {
    if (hit_topk(model, eval, i, k)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(eval.size());
}

double topk_accuracy(const DiscriminantModel& model, const Dataset& eval,
                     std::span<const std::int64_t> indices, int k) {
  if (indices.empty()) throw std::invalid_argument("topk_accuracy: empty eval selection");
  std::int64_t hits = 0;
  for (std::int64_t i : indices) {
    if (hit_topk(model, eval, i, k)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(indices.size());
}

double omega_all(std::span<const double> rho, std::span<const double> rho_offline) {
  if (rho.size() != rho_offline.size()) {
    throw std::invalid_argument("omega_all: accuracy lists differ in length");
  }
  if (rho.empty()) throw std::invalid_argument("omega_all: empty accuracy lists");
  double sum = 0.0;
  for (std::size_t t = 0; t < rho.size(); ++t) {
    if (!(rho_offline[t] > 0.0)) {
      throw std::invalid_argument("omega_all: offline accuracy must be positive");
    }
    sum += rho[t] / rho_offline[t];
  }
  return sum / static_cast<double>(rho.size());
}

OfflineReference offline_reference(const Dataset& train, const Dataset& eval,
                                   const HeadConfig& config,
                                   const std::vector<std::vector<std::int32_t>>& class_sets,
                                   bool restrict_eval_to_seen) {
  if (train.empty() || eval.empty()) {
    throw std::invalid_argument("offline_reference: train and eval sets must be non-empty");
  }
  OfflineReference out;
  for (const std::vector<std::int32_t>& classes : class_sets) {
    std::vector<bool> keep;
    {
      std::int32_t max_label = 0;
      for (std::int32_t c : classes) max_label = std::max(max_label, c);
      keep.assign(static_cast<std::size_t>(max_label) + 1, false);
      for (std::int32_t c : classes) keep[static_cast<std::size_t>(c)] = true;
    }
    auto in_set = [&keep](std::int32_t label) {
      return label >= 0 && static_cast<std::size_t>(label) < keep.size() &&
             keep[static_cast<std::size_t>(label)];
    };

    StatisticsAccumulator acc(train.dimension());
    for (std::int64_t i = 0; i < train.size(); ++i) {
      if (in_set(train.label(i))) acc.fit_one(train.sample(i), train.label(i));
    }
    const DiscriminantModel model = DiscriminantModel::build(acc, config);

    if (restrict_eval_to_seen) {
      std::vector<std::int64_t> indices;
      for (std::int64_t i = 0; i < eval.size(); ++i) {
        if (in_set(eval.label(i))) indices.push_back(i);
      }
      out.top1.push_back(topk_accuracy(model, eval, indices, 1));
      out.topk.push_back(topk_accuracy(model, eval, indices, config.top_k));
    } else {
      out.top1.push_back(topk_accuracy(model, eval, 1));
      out.topk.push_back(topk_accuracy(model, eval, config.top_k));
    }
  }
  return out;
}

}  // namespace srda
