#include "srda/stream.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "srda/rng.hpp"

namespace srda {

namespace {

constexpr std::uint64_t kWithinClassTag = 0x57495448;  // per-class shuffle streams
constexpr std::uint64_t kIidTag = 0x49494421;          // global post-base shuffle

}  // namespace

void StreamPlan::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open plan file for writing: " + path);
  out << "srda-plan 1\n";
  out << "checkpoints";
  for (std::int64_t c : checkpoints) out << ' ' << c;
  out << '\n';
  for (std::int64_t i : order) out << i << '\n';
  if (!out) throw std::runtime_error("failed writing plan file: " + path);
}

StreamPlan StreamPlan::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "srda-plan 1") {
    throw std::runtime_error("not a stream plan file: " + path);
  }
  if (!std::getline(in, line)) throw std::runtime_error("plan file truncated: " + path);
  std::istringstream header(line);
  std::string tag;
  header >> tag;
  if (tag != "checkpoints") throw std::runtime_error("plan file missing checkpoint header");
  StreamPlan plan;
  std::int64_t value = 0;
  while (header >> value) plan.checkpoints.push_back(value);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    plan.order.push_back(std::stoll(line));
  }
  return plan;
}

StreamPlan make_plan(const std::vector<std::int32_t>& labels, const ScenarioConfig& config) {
  if (labels.empty()) throw std::invalid_argument("make_plan: no labels");
  if (config.increment_size < 1) throw std::invalid_argument("make_plan: increment_size must be >= 1");
  if (config.base_class_count < 0) {
    throw std::invalid_argument("make_plan: base_class_count must be non-negative");
  }

  std::vector<std::int32_t> class_order;
  {
    std::set<std::int32_t> distinct(labels.begin(), labels.end());
    class_order.assign(distinct.begin(), distinct.end());
  }
  if (config.base_class_count > static_cast<int>(class_order.size())) {
    throw std::invalid_argument("make_plan: base_class_count " +
                                std::to_string(config.base_class_count) + " exceeds the " +
                                std::to_string(class_order.size()) + " distinct classes");
  }

  rng::Engine class_rng(config.class_order_seed);
  class_rng.shuffle(class_order);

  std::map<std::int32_t, std::vector<std::int64_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(static_cast<std::int64_t>(i));
  }

  StreamPlan plan;
  plan.order.reserve(labels.size());
  std::int64_t base_offset = 0;
  int classes_done = 0;
  for (std::int32_t cls : class_order) {
    std::vector<std::int64_t>& block = by_class[cls];
    rng::Engine block_rng(rng::mix(config.within_class_shuffle_seed,
                                   rng::mix(kWithinClassTag, static_cast<std::uint64_t>(cls))));
    block_rng.shuffle(block);
    plan.order.insert(plan.order.end(), block.begin(), block.end());
    ++classes_done;

    const std::int64_t offset = static_cast<std::int64_t>(plan.order.size());
    if (classes_done == config.base_class_count) {
      plan.checkpoints.push_back(offset);
      base_offset = offset;
    } else if (classes_done > config.base_class_count &&
               (classes_done - config.base_class_count) % config.increment_size == 0) {
      plan.checkpoints.push_back(offset);
    }
  }
  const std::int64_t final_offset = static_cast<std::int64_t>(plan.order.size());
  if (plan.checkpoints.empty() || plan.checkpoints.back() != final_offset) {
    plan.checkpoints.push_back(final_offset);
  }

  if (config.ordering_mode == OrderingMode::iid && base_offset < final_offset) {
    std::vector<std::int64_t> tail(plan.order.begin() + base_offset, plan.order.end());
    rng::Engine tail_rng(rng::mix(config.within_class_shuffle_seed, kIidTag));
    tail_rng.shuffle(tail);
    std::copy(tail.begin(), tail.end(), plan.order.begin() + base_offset);
  }
  return plan;
}

std::vector<std::vector<std::int32_t>> checkpoint_class_sets(
    const std::vector<std::int32_t>& labels, const StreamPlan& plan) {
  std::vector<std::vector<std::int32_t>> out;
  std::set<std::int32_t> seen;
  std::size_t pos = 0;
  for (std::int64_t offset : plan.checkpoints) {
    while (pos < plan.order.size() && static_cast<std::int64_t>(pos) < offset) {
      seen.insert(labels[static_cast<std::size_t>(plan.order[pos])]);
      ++pos;
    }
    out.emplace_back(seen.begin(), seen.end());
  }
  return out;
}

StreamRunResult run_stream(const Dataset& train, const StreamPlan& plan,
                           const HeadConfig& head_config, const Dataset& eval_set,
                           const RunOptions& options) {
  head_config.validate();
  if (eval_set.empty()) throw std::invalid_argument("run_stream: empty eval set");
  if (eval_set.dimension() != train.dimension()) {
    throw std::invalid_argument("run_stream: train and eval dimensions differ");
  }
  for (std::int64_t idx : plan.order) {
    if (idx < 0 || idx >= train.size()) {
      throw std::invalid_argument("run_stream: plan index " + std::to_string(idx) +
                                  " outside the training set");
    }
  }

  StreamRunResult result{EvaluationReport{}, StatisticsAccumulator(train.dimension())};
  result.report.top_k = head_config.top_k;

  std::set<std::int32_t> seen;
  auto evaluate = [&](std::int64_t offset) {
    DiscriminantModel model;
    try {
      model = DiscriminantModel::build(result.accumulator, head_config);
    } catch (const std::exception& e) {
      throw std::runtime_error("checkpoint at stream offset " + std::to_string(offset) + ": " +
                               e.what());
    }
    CheckpointRecord row;
    row.stream_offset = static_cast<std::uint64_t>(offset);
    row.classes_seen = static_cast<int>(seen.size());
    if (options.restrict_eval_to_seen) {
      std::vector<std::int64_t> indices;
      for (std::int64_t i = 0; i < eval_set.size(); ++i) {
        if (seen.count(eval_set.label(i))) indices.push_back(i);
      }
      if (indices.empty()) {
        throw std::runtime_error("checkpoint at stream offset " + std::to_string(offset) +
                                 ": eval set has no samples of the classes seen so far");
      }
      row.top1_accuracy = topk_accuracy(model, eval_set, indices, 1);
      row.topk_accuracy = topk_accuracy(model, eval_set, indices, head_config.top_k);
    } else {
      row.top1_accuracy = topk_accuracy(model, eval_set, 1);
      row.topk_accuracy = topk_accuracy(model, eval_set, head_config.top_k);
    }
    result.report.checkpoints.push_back(row);
  };

  std::size_t next_checkpoint = 0;
  for (std::size_t pos = 0; pos <= plan.order.size(); ++pos) {
    while (next_checkpoint < plan.checkpoints.size() &&
           plan.checkpoints[next_checkpoint] == static_cast<std::int64_t>(pos)) {
      evaluate(static_cast<std::int64_t>(pos));
      ++next_checkpoint;
    }
    if (pos == plan.order.size()) break;
    const std::int64_t idx = plan.order[pos];
    try {
      result.accumulator.fit_one(train.sample(idx), train.label(idx));
    } catch (const std::exception& e) {
      throw std::runtime_error("fit failed at stream offset " + std::to_string(pos) +
                               " (sample index " + std::to_string(idx) + "): " + e.what());
    }
    seen.insert(train.label(idx));
  }
  return result;
}

}  // namespace srda
