#include "srda/running_stats.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace srda {

namespace {

std::atomic<std::uint64_t> g_fit_one_calls{0};

void symmetrize(Matrix& m) { m = (0.5 * (m + m.transpose())).eval(); }

}  // namespace

Matrix ClassStatistics::covariance() const {
  if (count < 2) return Matrix::Zero(scatter.rows(), scatter.cols());
  return scatter / static_cast<double>(count);
}

Matrix PooledCovariance::covariance() const {
  if (total_count < 2) return Matrix::Zero(scatter.rows(), scatter.cols());
  return scatter / static_cast<double>(total_count);
}

StatisticsAccumulator::StatisticsAccumulator(int dimension, int max_classes)
    : dimension_(dimension), max_classes_(max_classes) {
  if (dimension < 1) throw std::invalid_argument("accumulator dimension must be positive");
  if (max_classes < 0) throw std::invalid_argument("max_classes must be non-negative");
  pooled_.scatter = Matrix::Zero(dimension, dimension);
}

void StatisticsAccumulator::fit_one(const Eigen::Ref<const Vector>& z, std::int32_t label) {
  if (z.size() != dimension_) {
    throw std::invalid_argument("fit_one: feature dimension " + std::to_string(z.size()) +
                                " does not match accumulator dimension " +
                                std::to_string(dimension_));
  }
  if (!z.allFinite()) throw std::invalid_argument("fit_one: non-finite feature entry");
  if (label < 0) throw std::invalid_argument("fit_one: negative class label");
  if (max_classes_ != kUnlimitedClasses && label >= max_classes_) {
    throw std::invalid_argument("fit_one: label " + std::to_string(label) +
                                " exceeds max_classes " + std::to_string(max_classes_));
  }

  auto [it, inserted] = classes_.try_emplace(label);
  ClassStatistics& cls = it->second;
  if (inserted) {
    cls.mean = Vector::Zero(dimension_);
    cls.scatter = Matrix::Zero(dimension_, dimension_);
  }

  const double c = static_cast<double>(cls.count);
  const Vector diff = z - cls.mean;
  const Matrix delta = (c / (c + 1.0)) * (diff * diff.transpose());

  // Covariance accumulators consume the pre-update mean; the mean and the
  // counters move afterwards.
  pooled_.scatter += delta;
  symmetrize(pooled_.scatter);
  cls.scatter += delta;
  symmetrize(cls.scatter);
  cls.mean = (c * cls.mean + z) / (c + 1.0);
  cls.count += 1;
  pooled_.total_count += 1;

  g_fit_one_calls.fetch_add(1, std::memory_order_relaxed);
}

double StatisticsAccumulator::class_prior(std::int32_t label) const {
  if (pooled_.total_count == 0) {
    throw std::runtime_error("class_prior: no samples seen");
  }
  auto it = classes_.find(label);
  if (it == classes_.end()) return 0.0;
  return static_cast<double>(it->second.count) / static_cast<double>(pooled_.total_count);
}

std::vector<std::int32_t> StatisticsAccumulator::seen_classes() const {
  std::vector<std::int32_t> out;
  out.reserve(classes_.size());
  for (const auto& [label, stats] : classes_) out.push_back(label);
  return out;
}

std::uint64_t StatisticsAccumulator::class_count(std::int32_t label) const {
  auto it = classes_.find(label);
  return it == classes_.end() ? 0 : it->second.count;
}

Vector StatisticsAccumulator::class_mean(std::int32_t label) const {
  auto it = classes_.find(label);
  return it == classes_.end() ? Vector::Zero(dimension_) : it->second.mean;
}

Matrix StatisticsAccumulator::class_covariance(std::int32_t label) const {
  auto it = classes_.find(label);
  return it == classes_.end() ? Matrix::Zero(dimension_, dimension_) : it->second.covariance();
}

StatisticsAccumulator StatisticsAccumulator::from_parts(
    int dimension, int max_classes, std::map<std::int32_t, ClassStatistics> classes,
    PooledCovariance pooled) {
  StatisticsAccumulator acc(dimension, max_classes);
  std::uint64_t count_sum = 0;
  for (const auto& [label, stats] : classes) {
    if (stats.mean.size() != dimension || stats.scatter.rows() != dimension ||
        stats.scatter.cols() != dimension) {
      throw std::invalid_argument("from_parts: class " + std::to_string(label) +
                                  " has mismatched dimensions");
    }
    count_sum += stats.count;
  }
  if (pooled.scatter.rows() != dimension || pooled.scatter.cols() != dimension) {
    throw std::invalid_argument("from_parts: pooled scatter has mismatched dimensions");
  }
  if (count_sum != pooled.total_count) {
    throw std::invalid_argument("from_parts: class counts do not sum to the total count");
  }
  acc.classes_ = std::move(classes);
  acc.pooled_ = std::move(pooled);
  return acc;
}

std::uint64_t StatisticsAccumulator::fit_one_call_count() {
  return g_fit_one_calls.load(std::memory_order_relaxed);
}

StatisticsAccumulator merge(const StatisticsAccumulator& a, const StatisticsAccumulator& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("merge: accumulator dimensions differ");
  }
  int max_classes = kUnlimitedClasses;
  if (a.max_classes() != kUnlimitedClasses && b.max_classes() != kUnlimitedClasses) {
    max_classes = std::max(a.max_classes(), b.max_classes());
  }

  std::map<std::int32_t, ClassStatistics> classes = a.class_statistics();
  PooledCovariance pooled;
  pooled.total_count = a.total_count() + b.total_count();
  pooled.scatter = a.pooled().scatter + b.pooled().scatter;

  for (const auto& [label, other] : b.class_statistics()) {
    auto it = classes.find(label);
    if (it == classes.end()) {
      classes.emplace(label, other);
      continue;
    }
    ClassStatistics& mine = it->second;
    const double na = static_cast<double>(mine.count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    const Vector delta = other.mean - mine.mean;
    // Chan et al. pairwise combination of second moments.
    const Matrix cross = (na * nb / n) * (delta * delta.transpose());
    mine.scatter += other.scatter + cross;
    pooled.scatter += cross;
    mine.mean = (na * mine.mean + nb * other.mean) / n;
    mine.count += other.count;
  }

  for (auto& [label, stats] : classes) {
    stats.scatter = (0.5 * (stats.scatter + stats.scatter.transpose())).eval();
  }
  pooled.scatter = (0.5 * (pooled.scatter + pooled.scatter.transpose())).eval();

  return StatisticsAccumulator::from_parts(a.dimension(), max_classes, std::move(classes),
                                           std::move(pooled));
}

}  // namespace srda
