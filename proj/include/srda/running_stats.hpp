#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "srda/types.hpp"

namespace srda {

// Per-class sufficient statistics. `scatter` is the running second-moment
// accumulator (count * covariance); keeping it unnormalized makes every
// update a pure rank-1 addition and lets checkpoints round-trip bit-exactly.
struct ClassStatistics {
  std::uint64_t count = 0;
  Vector mean;
  Matrix scatter;

  // Biased empirical covariance of the samples seen so far (zero for count < 2).
  Matrix covariance() const;
};

// Within-class covariance accumulator shared by all classes.
struct PooledCovariance {
  std::uint64_t total_count = 0;
  Matrix scatter;

  Matrix covariance() const;
};

constexpr int kUnlimitedClasses = 0;

// Streaming estimator of per-class means, per-class covariances and the
// pooled within-class covariance, updated one sample at a time.
//
// For a sample z with label y, with c the count and m the mean of class y
// before the update:
//
//   delta           = c/(c+1) * (z - m)(z - m)^T
//   scatter_y      += delta
//   pooled_scatter += delta
//   m               = (c*m + z) / (c+1)
//   c_y += 1, total += 1
//
// covariance(k) = scatter_k / c_k is the biased empirical covariance of the
// samples of class k; pooled covariance = pooled_scatter / total is the
// within-class scatter pooled over classes. Both depend on arrival order
// only through floating-point round-off, which is what makes merge() and
// order-shuffled ingestion agree with a single sequential pass.
class StatisticsAccumulator {
 public:
  // max_classes bounds the label range; kUnlimitedClasses allows any label.
  // Class slots are allocated on first sight either way.
  explicit StatisticsAccumulator(int dimension, int max_classes = kUnlimitedClasses);

  void fit_one(const Eigen::Ref<const Vector>& features, std::int32_t label);
  void fit_one(const LabeledSample& sample) { fit_one(sample.features, sample.label); }

  // c_k / total over seen classes; 0 for unseen. Throws when nothing was fit.
  double class_prior(std::int32_t label) const;

  int dimension() const { return dimension_; }
  int max_classes() const { return max_classes_; }
  std::uint64_t total_count() const { return pooled_.total_count; }
  std::size_t seen_class_count() const { return classes_.size(); }
  std::vector<std::int32_t> seen_classes() const;  // ascending
  bool seen(std::int32_t label) const { return classes_.count(label) != 0; }

  std::uint64_t class_count(std::int32_t label) const;
  Vector class_mean(std::int32_t label) const;        // zero vector when unseen
  Matrix class_covariance(std::int32_t label) const;  // zero matrix when unseen
  Matrix pooled_covariance() const { return pooled_.covariance(); }

  const std::map<std::int32_t, ClassStatistics>& class_statistics() const { return classes_; }
  const PooledCovariance& pooled() const { return pooled_; }

  // Reassembles an accumulator from serialized parts, bit-exact.
  static StatisticsAccumulator from_parts(int dimension, int max_classes,
                                          std::map<std::int32_t, ClassStatistics> classes,
                                          PooledCovariance pooled);

  // Process-wide fit_one counter; lets tests assert an operation trained nothing.
  static std::uint64_t fit_one_call_count();

 private:
  int dimension_ = 0;
  int max_classes_ = kUnlimitedClasses;
  std::map<std::int32_t, ClassStatistics> classes_;
  PooledCovariance pooled_;
};

// Combines statistics from two disjoint stream shards. The result matches a
// single pass over the concatenated data up to round-off.
StatisticsAccumulator merge(const StatisticsAccumulator& a, const StatisticsAccumulator& b);

}  // namespace srda
