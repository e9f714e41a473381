#include "srda/synthetic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

#include "srda/rng.hpp"

namespace srda {

namespace {

constexpr std::uint64_t kDistributionTag = 0xD157;
constexpr std::uint64_t kSampleTag = 0x5A3B;

Vector random_direction(rng::Engine& eng, int d) {
  Vector v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = eng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

// Random rotation from the QR factorization of a Gaussian matrix, with the
// column signs fixed by the R diagonal so the distribution is Haar.
Matrix random_rotation(rng::Engine& eng, int d) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = eng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

void SyntheticConfig::validate() const {
  if (class_count < 1) throw std::invalid_argument("class_count must be positive");
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (samples_per_class < 1) throw std::invalid_argument("samples_per_class must be positive");
  if (!(heteroscedasticity >= 1.0)) {
    throw std::invalid_argument("heteroscedasticity must be >= 1");
  }
  if (!(mean_radius >= 0.0)) throw std::invalid_argument("mean_radius must be non-negative");
}

std::vector<ClassDistribution> make_class_distributions(const SyntheticConfig& config) {
  config.validate();
  const int d = config.dimension;
  rng::Engine eng(rng::mix(config.seed, kDistributionTag));

  std::vector<ClassDistribution> out;
  out.reserve(static_cast<std::size_t>(config.class_count));
  const double log_kappa = std::log(config.heteroscedasticity);
  for (int k = 0; k < config.class_count; ++k) {
    ClassDistribution cls;
    cls.mean = config.mean_radius * random_direction(eng, d);
    if (config.heteroscedasticity == 1.0) {
      cls.covariance = Matrix::Identity(d, d);
      cls.cholesky = Matrix::Identity(d, d);
    } else {
      // Eigenvalues log-uniform in [1/kappa, 1]; spectrum ratio stays <= kappa.
      Vector eigenvalues(d);
      for (int i = 0; i < d; ++i) eigenvalues[i] = std::exp(eng.uniform(-log_kappa, 0.0));
      const Matrix q = random_rotation(eng, d);
      cls.covariance = q * eigenvalues.asDiagonal() * q.transpose();
      cls.covariance = (0.5 * (cls.covariance + cls.covariance.transpose())).eval();
      Eigen::LLT<Matrix> llt(cls.covariance);
      if (llt.info() != Eigen::Success) {
        throw std::runtime_error("synthetic covariance factorization failed");
      }
      cls.cholesky = llt.matrixL();
    }
    out.push_back(std::move(cls));
  }
  return out;
}

Dataset draw_samples(const std::vector<ClassDistribution>& classes, int samples_per_class,
                     std::uint64_t seed) {
  if (classes.empty()) throw std::invalid_argument("draw_samples: no class distributions");
  if (samples_per_class < 1) throw std::invalid_argument("samples_per_class must be positive");

  const int d = static_cast<int>(classes.front().mean.size());
  const std::int64_t total =
      static_cast<std::int64_t>(classes.size()) * static_cast<std::int64_t>(samples_per_class);
  Dataset data(d, total);

  std::int64_t col = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    rng::Engine eng(rng::mix(seed, rng::mix(kSampleTag, static_cast<std::uint64_t>(k))));
    Vector g(d);
    for (int s = 0; s < samples_per_class; ++s) {
      for (int i = 0; i < d; ++i) g[i] = eng.normal();
      const Vector z = classes[k].mean + classes[k].cholesky * g;
      data.features().col(col) = z.cast<float>();
      data.labels()[static_cast<std::size_t>(col)] = static_cast<std::int32_t>(k);
      ++col;
    }
  }
  return data;
}

SyntheticDataset generate_synthetic(const SyntheticConfig& config) {
  SyntheticDataset out;
  out.classes = make_class_distributions(config);
  out.data = draw_samples(out.classes, config.samples_per_class, rng::mix(config.seed, kSampleTag));
  return out;
}

}  // namespace srda
