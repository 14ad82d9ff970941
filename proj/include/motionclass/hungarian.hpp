#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace motionclass {

/// Minimum-cost one-to-one assignment of min(rows, cols) pairs (shortest augmenting path, O(n^2 m)).
/// Returns (row, col) pairs sorted by row. Costs must be finite.
std::vector<std::pair<int, int>> assign(const Eigen::MatrixXd& cost);

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<std::pair<int, int>>& pairs);

}  // namespace motionclass
