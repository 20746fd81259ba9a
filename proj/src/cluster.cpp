#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "bilanz/errors.hpp"
#include "bilanz/mining.hpp"

namespace bilanz {

namespace {

constexpr int kMaxIterations = 100;

int nearest_centroid(const Eigen::MatrixXd& centroids, const Eigen::RowVectorXd& point) {
  int best = 0;
  double best_dist = (centroids.row(0) - point).squaredNorm();
  for (int j = 1; j < centroids.rows(); ++j) {
    double dist = (centroids.row(j) - point).squaredNorm();
    if (dist < best_dist) {  // ties keep the lowest index
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

}  // namespace

std::vector<double> Standardization::apply(const std::vector<double>& raw) const {
  if (raw.size() != mean.size())
    throw ConfigError("feature vector has " + std::to_string(raw.size()) + " dimensions, model has " +
                      std::to_string(mean.size()));
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j)
    out[j] = stddev[j] > 0.0 ? (raw[j] - mean[j]) / stddev[j] : raw[j];
  return out;
}

ClusterModel cluster(const std::vector<std::pair<FirmPeriodKey, std::vector<double>>>& points,
                     int k, std::uint64_t seed, ClusterTrace* trace) {
  const std::size_t n = points.size();
  if (n == 0) throw ConfigError("cannot cluster an empty corpus");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (static_cast<std::size_t>(k) > n)
    throw ConfigError("k (" + std::to_string(k) + ") exceeds the number of firm-periods (" +
                      std::to_string(n) + ")");

  const std::size_t dims = points.front().second.size();
  Eigen::MatrixXd raw(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].second.size() != dims) throw ConfigError("ragged feature vectors");
    for (std::size_t j = 0; j < dims; ++j) {
      double v = points[i].second[j];
      if (!std::isfinite(v))
        throw ConfigError("non-finite feature for " + points[i].first.str());
      raw(i, j) = v;
    }
  }

  // Standardize to zero mean / unit variance. Constant columns (exact
  // min == max) pass through unscaled and are marked with stddev 0.
  ClusterModel model;
  model.standardization.mean.resize(dims);
  model.standardization.stddev.resize(dims);
  Eigen::MatrixXd data = raw;
  for (std::size_t j = 0; j < dims; ++j) {
    double mean = raw.col(j).mean();
    bool constant = raw.col(j).minCoeff() == raw.col(j).maxCoeff();
    double sd = constant ? 0.0 : std::sqrt((raw.col(j).array() - mean).square().sum() / n);
    model.standardization.mean[j] = mean;
    model.standardization.stddev[j] = sd;
    if (sd > 0.0) data.col(j) = (raw.col(j).array() - mean) / sd;
  }

  // Farthest-point seeding: RNG only picks the first centroid.
  std::mt19937_64 rng(seed);
  std::size_t first = static_cast<std::size_t>(rng() % n);
  std::vector<Eigen::Index> chosen = {static_cast<Eigen::Index>(first)};
  Eigen::VectorXd nearest_dist(n);
  for (std::size_t i = 0; i < n; ++i)
    nearest_dist(i) = (data.row(i) - data.row(first)).squaredNorm();
  while (chosen.size() < static_cast<std::size_t>(k)) {
    Eigen::Index next = 0;
    nearest_dist.maxCoeff(&next);  // first maximum wins ties
    chosen.push_back(next);
    for (std::size_t i = 0; i < n; ++i)
      nearest_dist(i) = std::min(nearest_dist(i), (data.row(i) - data.row(next)).squaredNorm());
  }

  Eigen::MatrixXd centroids(k, dims);
  for (int j = 0; j < k; ++j) centroids.row(j) = data.row(chosen[j]);

  std::vector<int> assignment(n);
  for (std::size_t i = 0; i < n; ++i) assignment[i] = nearest_centroid(centroids, data.row(i));

  int iterations = 0;
  for (; iterations < kMaxIterations; ++iterations) {
    // Update step; a cluster that lost all members keeps its centroid.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, dims);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(assignment[i]) += data.row(i);
      ++counts[assignment[i]];
    }
    for (int j = 0; j < k; ++j)
      if (counts[j] > 0) centroids.row(j) = sums.row(j) / static_cast<double>(counts[j]);

    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int j = nearest_centroid(centroids, data.row(i));
      if (j != assignment[i]) {
        assignment[i] = j;
        changed = true;
      }
      objective += (data.row(i) - centroids.row(j)).squaredNorm();
    }
    if (trace) trace->objective.push_back(objective);
    if (!changed) {
      ++iterations;
      break;
    }
  }
  if (trace) trace->iterations = iterations;

  model.centroids.assign(k, std::vector<double>(dims));
  for (int j = 0; j < k; ++j)
    for (std::size_t col = 0; col < dims; ++col) model.centroids[j][col] = centroids(j, col);
  for (std::size_t i = 0; i < n; ++i) model.assignments[points[i].first] = assignment[i];
  if (model.assignments.size() != n) throw ConfigError("duplicate firm-period keys");
  return model;
}

int assign_cluster(const ClusterModel& model, const std::vector<double>& raw_features) {
  if (model.centroids.empty()) throw ConfigError("cluster model has no centroids");
  std::vector<double> standardized = model.standardization.apply(raw_features);
  Eigen::RowVectorXd point =
      Eigen::Map<const Eigen::RowVectorXd>(standardized.data(), standardized.size());
  Eigen::MatrixXd centroids(model.centroids.size(), standardized.size());
  for (std::size_t j = 0; j < model.centroids.size(); ++j) {
    if (model.centroids[j].size() != standardized.size())
      throw ConfigError("centroid dimensionality mismatch");
    centroids.row(j) =
        Eigen::Map<const Eigen::RowVectorXd>(model.centroids[j].data(), standardized.size());
  }
  return nearest_centroid(centroids, point);
}

}  // namespace bilanz
