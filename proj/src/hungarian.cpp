#include "motionclass/hungarian.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace motionclass {
namespace {

// Rows <= cols. Potentials-based shortest augmenting path; returns the column of each row.
std::vector<int> solve_wide(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<std::pair<int, int>> assign(const Eigen::MatrixXd& cost) {
  std::vector<std::pair<int, int>> pairs;
  if (cost.rows() == 0 || cost.cols() == 0) return pairs;
  if (!cost.allFinite()) throw std::invalid_argument("assign: costs must be finite");
  if (cost.rows() <= cost.cols()) {
    const auto cols = solve_wide(cost);
    for (int i = 0; i < static_cast<int>(cols.size()); ++i) pairs.emplace_back(i, cols[i]);
  } else {
    const Eigen::MatrixXd t = cost.transpose();
    const auto rows = solve_wide(t);
    for (int j = 0; j < static_cast<int>(rows.size()); ++j) pairs.emplace_back(rows[j], j);
    std::sort(pairs.begin(), pairs.end());
  }
  return pairs;
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<std::pair<int, int>>& pairs) {
  double total = 0.0;
  for (auto [r, c] : pairs) total += cost(r, c);
  return total;
}

}  // namespace motionclass
