#include "wargame/stats/lda.hpp"

#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "wargame/kernels/kernels.hpp"
#include "wargame/stats/analysis.hpp"
#include "wargame/util/error.hpp"

namespace wargame {

FeatureVector to_features(ActionSet v) {
  FeatureVector x;
  for (std::size_t i = 0; i < kActionCount; ++i) x(static_cast<Eigen::Index>(i)) = v.test(i) ? 1.0 : 0.0;
  return x;
}

std::size_t random_baseline_count(const std::vector<std::size_t>& class_sizes) {
  if (class_sizes.empty()) return 0;
  double s = 0.0;
  for (auto n : class_sizes) s += static_cast<double>(n);
  return static_cast<std::size_t>(std::lround(s / static_cast<double>(class_sizes.size())));
}

namespace {

using Mat = Eigen::Matrix<double, kActionCount, kActionCount>;

struct Scatter {
  Mat within = Mat::Zero();
  Mat between = Mat::Zero();
};

Scatter scatter(const std::vector<LabeledVector>& data) {
  std::map<std::string, std::pair<FeatureVector, std::size_t>> sums;
  FeatureVector total = FeatureVector::Zero();
  for (const auto& d : data) {
    auto& [s, n] = sums.try_emplace(d.label, FeatureVector::Zero(), 0).first->second;
    s += d.x;
    ++n;
    total += d.x;
  }
  const FeatureVector mu = total / static_cast<double>(data.size());
  std::map<std::string, FeatureVector> means;
  Scatter sc;
  for (const auto& [label, sn] : sums) {
    const FeatureVector m = sn.first / static_cast<double>(sn.second);
    means.emplace(label, m);
    sc.between += static_cast<double>(sn.second) * (m - mu) * (m - mu).transpose();
  }
  for (const auto& d : data) {
    const FeatureVector c = d.x - means.at(d.label);
    // symmetric, so the kernel's row-major layout matches Eigen's storage
    kernels::rank1_update({sc.within.data(), kActionCount * kActionCount}, {c.data(), kActionCount}, 1.0);
  }
  return sc;
}

}  // namespace

double fisher_ratio(const std::vector<LabeledVector>& data, const Eigen::MatrixXd& w) {
  if (w.rows() != static_cast<Eigen::Index>(kActionCount)) throw Error("projection must have 21 rows");
  const Scatter sc = scatter(data);
  const Eigen::MatrixXd sw = w.transpose() * sc.within * w;
  const Eigen::MatrixXd sb = w.transpose() * sc.between * w;
  return sw.ldlt().solve(sb).trace();
}

LdaProjection lda_project(const std::vector<LabeledVector>& input, const LdaOptions& opts, util::Rng& rng) {
  std::map<std::string, std::size_t> counts;
  for (const auto& d : input) ++counts[d.label];
  if (counts.size() < 2) throw Error("LDA needs at least two classes");
  if (input.size() <= 2) throw Error("LDA needs more than two vectors");
  for (const auto& [label, n] : counts)
    if (n < 2) throw Error("LDA class '" + label + "' has fewer than two vectors");

  std::vector<LabeledVector> data = input;
  LdaProjection out;
  if (opts.include_random_baseline) {
    if (counts.count(opts.random_label)) throw Error("class label '" + opts.random_label + "' is reserved");
    std::vector<std::size_t> sizes;
    for (const auto& [label, n] : counts) sizes.push_back(n);
    out.random_count = random_baseline_count(sizes);
    for (const auto& v : gen_random_vectors(out.random_count, rng))
      data.push_back({opts.random_label, to_features(v.selections)});
  }

  const Scatter sc = scatter(data);
  const double lambda = opts.ridge_scale * sc.within.trace() / static_cast<double>(kActionCount);
  const Mat sw = sc.within + lambda * Mat::Identity();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(sc.between, sw);
  if (solver.info() != Eigen::Success) throw Error("LDA: within-class scatter is singular after regularization");

  // Eigen returns ascending eigenvalues.
  for (Eigen::Index i = kActionCount - 1; i >= 0; --i) out.eigenvalues.push_back(solver.eigenvalues()(i));
  for (int k = 0; k < 2; ++k) {
    FeatureVector b = solver.eigenvectors().col(static_cast<Eigen::Index>(kActionCount) - 1 - k);
    if (!b.allFinite() || b.norm() == 0.0) throw Error("LDA: degenerate projection direction");
    b.normalize();
    Eigen::Index arg = 0;
    b.cwiseAbs().maxCoeff(&arg);
    if (b(arg) < 0) b = -b;
    out.basis[static_cast<std::size_t>(k)] = b;
  }

  std::map<std::string, std::vector<Eigen::Vector2d>> by_class;
  for (const auto& d : data) {
    const Eigen::Vector2d y(out.basis[0].dot(d.x), out.basis[1].dot(d.x));
    out.points.push_back({d.label, y});
    by_class[d.label].push_back(y);
  }
  for (const auto& [label, ys] : by_class) {
    ClassEllipse e;
    e.label = label;
    e.n = ys.size();
    e.mean.setZero();
    for (const auto& y : ys) e.mean += y;
    e.mean /= static_cast<double>(ys.size());
    e.covariance.setZero();
    for (const auto& y : ys) e.covariance += (y - e.mean) * (y - e.mean).transpose();
    e.covariance /= static_cast<double>(ys.size() > 1 ? ys.size() - 1 : 1);
    out.classes.push_back(e);
  }
  return out;
}

}  // namespace wargame
