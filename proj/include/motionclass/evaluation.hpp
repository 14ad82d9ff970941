#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "motionclass/json_util.hpp"

namespace motionclass {

/// counts(cluster, class).
using ConfusionMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;

/// Throws when lengths differ or an id falls outside [0, clusters) x [0, classes).
ConfusionMatrix confusion(std::span<const int> clusters, std::span<const int> classes, int cluster_count,
                          int class_count);

struct AccResult {
  double score = 0.0;
  std::vector<int> mapping;  // cluster -> class, -1 when unmapped
};

/// Best injective cluster -> class accuracy via Hungarian on negated, zero-padded counts.
AccResult acc(const ConfusionMatrix& conf);

struct LabeledPrediction {
  int id = 0;
  int cluster = 0;
  int truth = 0;
};

/// Up-samples every true class, with replacement, to the largest class count. Originals are kept in order.
std::vector<LabeledPrediction> balance(std::span<const LabeledPrediction> examples, int class_count,
                                       std::uint64_t seed);

/// ACC of the class-balanced multiset.
AccResult balanced_acc(std::span<const LabeledPrediction> examples, int cluster_count, int class_count,
                       std::uint64_t seed);

struct ClusterReport {
  ConfusionMatrix histogram;           // cluster x class
  std::vector<std::vector<int>> top;   // per cluster, ids by descending assigned-cluster posterior
};

/// `posteriors` rows align with `examples`; ties in posterior go to the lower id.
ClusterReport cluster_report(std::span<const LabeledPrediction> examples, const Eigen::MatrixXd& posteriors,
                             int cluster_count, int class_count, int top_m);

Json to_json(const ConfusionMatrix& m);

}  // namespace motionclass
