#include "motionclass/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "motionclass/hungarian.hpp"

namespace motionclass {

ConfusionMatrix confusion(std::span<const int> clusters, std::span<const int> classes, int cluster_count,
                          int class_count) {
  if (clusters.size() != classes.size()) throw std::invalid_argument("confusion: cluster and class lists differ in length");
  ConfusionMatrix m = ConfusionMatrix::Zero(cluster_count, class_count);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i] < 0 || clusters[i] >= cluster_count || classes[i] < 0 || classes[i] >= class_count)
      throw std::invalid_argument("confusion: id out of range at item " + std::to_string(i));
    ++m(clusters[i], classes[i]);
  }
  return m;
}

AccResult acc(const ConfusionMatrix& conf) {
  if (conf.rows() < 1 || conf.cols() < 1) throw std::invalid_argument("acc: empty confusion matrix");
  if ((conf.array() < 0).any()) throw std::invalid_argument("acc: negative count");
  const long total = conf.sum();
  if (total == 0) throw std::invalid_argument("acc: confusion matrix has no examples");
  const auto n = std::max(conf.rows(), conf.cols());
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  cost.topLeftCorner(conf.rows(), conf.cols()) = -conf.cast<double>();
  AccResult out;
  out.mapping.assign(conf.rows(), -1);
  long matched = 0;
  for (const auto& [r, c] : assign(cost)) {
    if (r < conf.rows() && c < conf.cols()) {
      out.mapping[r] = c;
      matched += conf(r, c);
    }
  }
  out.score = static_cast<double>(matched) / static_cast<double>(total);
  return out;
}

std::vector<LabeledPrediction> balance(std::span<const LabeledPrediction> examples, int class_count,
                                       std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> members(class_count);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const int t = examples[i].truth;
    if (t < 0 || t >= class_count) throw std::invalid_argument("balance: class id out of range at item " + std::to_string(i));
    members[t].push_back(i);
  }
  std::string empty;
  for (int c = 0; c < class_count; ++c)
    if (members[c].empty()) empty += (empty.empty() ? "" : ", ") + std::to_string(c);
  if (!empty.empty()) throw std::invalid_argument("balance: empty classes: " + empty);

  std::size_t target = 0;
  for (const auto& m : members) target = std::max(target, m.size());
  std::vector<LabeledPrediction> out(examples.begin(), examples.end());
  std::mt19937_64 rng(seed);
  for (const auto& m : members) {
    std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
    for (std::size_t k = m.size(); k < target; ++k) out.push_back(examples[m[pick(rng)]]);
  }
  return out;
}

AccResult balanced_acc(std::span<const LabeledPrediction> examples, int cluster_count, int class_count,
                       std::uint64_t seed) {
  const auto balanced = balance(examples, class_count, seed);
  std::vector<int> clusters, classes;
  for (const auto& e : balanced) {
    clusters.push_back(e.cluster);
    classes.push_back(e.truth);
  }
  return acc(confusion(clusters, classes, cluster_count, class_count));
}

ClusterReport cluster_report(std::span<const LabeledPrediction> examples, const Eigen::MatrixXd& posteriors,
                             int cluster_count, int class_count, int top_m) {
  ClusterReport r;
  r.histogram = ConfusionMatrix::Zero(cluster_count, class_count);
  std::vector<std::vector<std::size_t>> members(cluster_count);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& e = examples[i];
    if (e.cluster < 0 || e.cluster >= cluster_count) throw std::invalid_argument("cluster_report: cluster id out of range");
    if (e.truth >= 0 && e.truth < class_count) ++r.histogram(e.cluster, e.truth);
    members[e.cluster].push_back(i);
  }
  for (int k = 0; k < cluster_count; ++k) {
    auto& m = members[k];
    std::sort(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
      const double pa = posteriors(static_cast<Eigen::Index>(a), k);
      const double pb = posteriors(static_cast<Eigen::Index>(b), k);
      if (pa != pb) return pa > pb;
      return examples[a].id < examples[b].id;
    });
    std::vector<int> ids;
    for (std::size_t j = 0; j < m.size() && static_cast<int>(j) < top_m; ++j) ids.push_back(examples[m[j]].id);
    r.top.push_back(std::move(ids));
  }
  return r;
}

Json to_json(const ConfusionMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace motionclass
