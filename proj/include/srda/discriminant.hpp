#pragma once

#include <cstdint>
#include <vector>

#include "srda/running_stats.hpp"

namespace srda {

// alpha blends each class covariance with the pooled one: 0 collapses every
// class onto the shared covariance (the linear head), 1 keeps the per-class
// covariances (the quadratic head). epsilon shrinks the blend toward the
// identity before inversion so heads stay well-defined for classes with few
// samples.
struct HeadConfig {
  double alpha = 0.0;
  double epsilon = 1e-4;
  int top_k = 5;

  void validate() const;
};

// Discriminant values, one per seen class, aligned with class_ids.
struct ScoreVector {
  std::vector<std::int32_t> class_ids;  // ascending
  Vector gamma;
};

// Frozen classification head built from accumulated statistics. Immutable
// after build; score/predict are const and safe to call concurrently.
//
// For each seen class k the head stores the class mean, the inverse and the
// log-determinant of (1-eps) * (alpha*cov_k + (1-alpha)*pooled) + eps*I, and
// the log prior. A score is
//
//   gamma_k = -1/2 log|.| - 1/2 (x-mean_k)^T inv (x-mean_k) + log prior_k
//
// which is the class log-posterior up to a constant shared by all classes.
class DiscriminantModel {
 public:
  static DiscriminantModel build(const StatisticsAccumulator& acc, const HeadConfig& config);

  ScoreVector score(const Eigen::Ref<const Vector>& x) const;
  std::int32_t predict(const Eigen::Ref<const Vector>& x) const;
  // The k best classes, best first; ties broken toward the smaller class id.
  std::vector<std::int32_t> predict_topk(const Eigen::Ref<const Vector>& x, int k) const;

  const HeadConfig& config() const { return config_; }
  int dimension() const { return dimension_; }
  const std::vector<std::int32_t>& class_ids() const { return class_ids_; }

  const Vector& class_mean(std::int32_t label) const;
  const Matrix& inverse(std::int32_t label) const;
  double log_det(std::int32_t label) const;
  double log_prior(std::int32_t label) const;

 private:
  std::size_t index_of(std::int32_t label) const;

  HeadConfig config_;
  int dimension_ = 0;
  std::vector<std::int32_t> class_ids_;
  std::vector<Vector> means_;
  std::vector<double> log_priors_;
  std::vector<std::size_t> inverse_index_;  // into inverses_/log_dets_
  std::vector<Matrix> inverses_;            // one entry when alpha == 0
  std::vector<double> log_dets_;
};

}  // namespace srda
