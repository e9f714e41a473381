#include "srda/discriminant.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace srda {

namespace {

struct InverseAndLogDet {
  Matrix inverse;
  double log_det = 0.0;
};

// epsilon > 0 makes the shrunk matrix positive definite whenever the blend
// is positive semi-definite, so the Cholesky factorization is the natural
// solve here.
InverseAndLogDet invert_shrunk(const Matrix& blended, double epsilon) {
  const Eigen::Index d = blended.rows();
  Matrix shrunk = (1.0 - epsilon) * blended + epsilon * Matrix::Identity(d, d);
  if (!shrunk.allFinite()) {
    throw std::runtime_error("build_head: covariance has non-finite entries");
  }
  Eigen::LLT<Matrix> llt(shrunk);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("build_head: covariance factorization failed");
  }
  InverseAndLogDet out;
  out.inverse = llt.solve(Matrix::Identity(d, d));
  out.log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return out;
}

}  // namespace

void HeadConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (top_k < 1) throw std::invalid_argument("top_k must be positive");
}

DiscriminantModel DiscriminantModel::build(const StatisticsAccumulator& acc,
                                           const HeadConfig& config) {
  config.validate();
  if (acc.seen_class_count() == 0) {
    throw std::runtime_error("build_head: no classes seen");
  }
  if (config.alpha < 1.0 && acc.total_count() < 2) {
    throw std::runtime_error("build_head: pooled covariance needs at least two samples");
  }

  DiscriminantModel model;
  model.config_ = config;
  model.dimension_ = acc.dimension();

  const Matrix pooled = acc.pooled_covariance();
  const double total = static_cast<double>(acc.total_count());

  if (config.alpha == 0.0) {
    // Every class shares one covariance; invert it once.
    auto shared = invert_shrunk(pooled, config.epsilon);
    model.inverses_.push_back(std::move(shared.inverse));
    model.log_dets_.push_back(shared.log_det);
  }

  for (const auto& [label, stats] : acc.class_statistics()) {
    model.class_ids_.push_back(label);
    model.means_.push_back(stats.mean);
    model.log_priors_.push_back(std::log(static_cast<double>(stats.count) / total));
    if (config.alpha == 0.0) {
      model.inverse_index_.push_back(0);
    } else {
      const Matrix blended =
          config.alpha * stats.covariance() + (1.0 - config.alpha) * pooled;
      auto own = invert_shrunk(blended, config.epsilon);
      model.inverse_index_.push_back(model.inverses_.size());
      model.inverses_.push_back(std::move(own.inverse));
      model.log_dets_.push_back(own.log_det);
    }
  }
  return model;
}

ScoreVector DiscriminantModel::score(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dimension_) {
    throw std::invalid_argument("score: feature dimension " + std::to_string(x.size()) +
                                " does not match model dimension " + std::to_string(dimension_));
  }
  if (!x.allFinite()) throw std::invalid_argument("score: non-finite input");

  ScoreVector out;
  out.class_ids = class_ids_;
  out.gamma.resize(static_cast<Eigen::Index>(class_ids_.size()));
  for (std::size_t i = 0; i < class_ids_.size(); ++i) {
    const std::size_t inv = inverse_index_[i];
    const Vector diff = x - means_[i];
    const double quad = diff.dot(inverses_[inv] * diff);
    out.gamma[static_cast<Eigen::Index>(i)] =
        -0.5 * log_dets_[inv] - 0.5 * quad + log_priors_[i];
  }
  return out;
}

std::int32_t DiscriminantModel::predict(const Eigen::Ref<const Vector>& x) const {
  const ScoreVector s = score(x);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < s.gamma.size(); ++i) {
    if (s.gamma[i] > s.gamma[best]) best = i;  // ties keep the smaller class id
  }
  return s.class_ids[static_cast<std::size_t>(best)];
}

std::vector<std::int32_t> DiscriminantModel::predict_topk(const Eigen::Ref<const Vector>& x,
                                                          int k) const {
  if (k < 1) throw std::invalid_argument("predict_topk: k must be positive");
  const ScoreVector s = score(x);
  std::vector<std::size_t> idx(s.class_ids.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ga = s.gamma[static_cast<Eigen::Index>(a)];
    const double gb = s.gamma[static_cast<Eigen::Index>(b)];
    if (ga != gb) return ga > gb;
    return s.class_ids[a] < s.class_ids[b];
  });
  const std::size_t n = std::min(static_cast<std::size_t>(k), idx.size());
  std::vector<std::int32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.class_ids[idx[i]];
  return out;
}

std::size_t DiscriminantModel::index_of(std::int32_t label) const {
  auto it = std::lower_bound(class_ids_.begin(), class_ids_.end(), label);
  if (it == class_ids_.end() || *it != label) {
    throw std::invalid_argument("unknown class id " + std::to_string(label));
  }
  return static_cast<std::size_t>(it - class_ids_.begin());
}

const Vector& DiscriminantModel::class_mean(std::int32_t label) const {
  return means_[index_of(label)];
}

const Matrix& DiscriminantModel::inverse(std::int32_t label) const {
  return inverses_[inverse_index_[index_of(label)]];
}

double DiscriminantModel::log_det(std::int32_t label) const {
  return log_dets_[inverse_index_[index_of(label)]];
}

double DiscriminantModel::log_prior(std::int32_t label) const {
  return log_priors_[index_of(label)];
}

}  // namespace srda
