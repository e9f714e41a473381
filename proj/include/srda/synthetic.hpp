#pragma once

#include <cstdint>
#include <vector>

#include "srda/types.hpp"

namespace srda {

struct SyntheticConfig {
  int class_count = 2;
  int dimension = 2;
  int samples_per_class = 100;
  // Upper bound on each class covariance's condition number; 1 makes every
  // class exactly unit-covariance (the homoscedastic case).
  double heteroscedasticity = 1.0;
  double mean_radius = 3.0;  // class means are drawn on a sphere of this radius
  std::uint64_t seed = 0;

  void validate() const;
};

// Generating parameters of one class, kept so tests can evaluate the exact
// Bayes rule on the same distribution the samples came from.
struct ClassDistribution {
  Vector mean;
  Matrix covariance;
  Matrix cholesky;  // lower factor of covariance
};

struct SyntheticDataset {
  Dataset data;  // grouped by class, labels 0..class_count-1
  std::vector<ClassDistribution> classes;
};

std::vector<ClassDistribution> make_class_distributions(const SyntheticConfig& config);
Dataset draw_samples(const std::vector<ClassDistribution>& classes, int samples_per_class,
                     std::uint64_t seed);
SyntheticDataset generate_synthetic(const SyntheticConfig& config);

}  // namespace srda
