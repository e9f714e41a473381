#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace srda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One feature vector with its integer class label.
struct LabeledSample {
  Vector features;
  std::int32_t label = 0;
};

// Sample storage: one sample per column, float32 as on disk. All statistics
// and heads run in double; samples are widened on access.
class Dataset {
 public:
  Dataset() = default;
  Dataset(int dimension, std::int64_t count)
      : features_(dimension, count), labels_(static_cast<std::size_t>(count), 0) {}

  int dimension() const { return static_cast<int>(features_.rows()); }
  std::int64_t size() const { return static_cast<std::int64_t>(labels_.size()); }
  bool empty() const { return labels_.empty(); }

  Eigen::MatrixXf& features() { return features_; }
  const Eigen::MatrixXf& features() const { return features_; }
  std::vector<std::int32_t>& labels() { return labels_; }
  const std::vector<std::int32_t>& labels() const { return labels_; }

  std::int32_t label(std::int64_t i) const { return labels_[static_cast<std::size_t>(i)]; }
  Vector sample(std::int64_t i) const { return features_.col(i).cast<double>(); }

  std::vector<std::int32_t> distinct_labels() const;  // ascending
  int class_count() const { return static_cast<int>(distinct_labels().size()); }

 private:
  Eigen::MatrixXf features_;
  std::vector<std::int32_t> labels_;
};

}  // namespace srda
