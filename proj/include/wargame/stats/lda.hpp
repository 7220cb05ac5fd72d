#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wargame/core/response.hpp"
#include "wargame/util/rng.hpp"

namespace wargame {

using FeatureVector = Eigen::Matrix<double, kActionCount, 1>;

struct LabeledVector {
  std::string label;
  FeatureVector x;
};

// Binary 21-vector of a response, catalog order.
FeatureVector to_features(ActionSet v);

struct LdaOptions {
  // S_w is regularized by lambda * I, lambda = ridge_scale * trace(S_w) / 21.
  double ridge_scale = 1e-6;
  bool include_random_baseline = false;
  std::string random_label = "random";
};

struct ProjectedPoint {
  std::string label;
  Eigen::Vector2d y;
};

struct ClassEllipse {
  std::string label;
  std::size_t n = 0;
  Eigen::Vector2d mean;
  Eigen::Matrix2d covariance;  // sample covariance in the projected plane
};

struct LdaProjection {
  std::array<FeatureVector, 2> basis;  // unit length, largest component positive
  std::vector<ProjectedPoint> points;  // input order, then any baseline vectors
  std::vector<ClassEllipse> classes;   // sorted by label
  std::vector<double> eigenvalues;     // descending
  std::size_t random_count = 0;
};

// Fisher discriminant projection to two dimensions. Needs at least two
// classes of two or more vectors. Throws Error on degenerate input.
LdaProjection lda_project(const std::vector<LabeledVector>& data, const LdaOptions& opts, util::Rng& rng);

// Number of baseline vectors: rounded mean of the class sizes.
std::size_t random_baseline_count(const std::vector<std::size_t>& class_sizes);

// trace((W' S_w W)^-1 W' S_b W) for a 21 x k projection W.
double fisher_ratio(const std::vector<LabeledVector>& data, const Eigen::MatrixXd& w);

}  // namespace wargame
