#include "motionclass/flow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace motionclass {
namespace {

// Separable box sum with zero padding.
GrayImage box_sum(const GrayImage& in, int r) {
  const auto h = in.rows(), w = in.cols();
  GrayImage tmp = GrayImage::Zero(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    float acc = 0.0f;
    for (Eigen::Index x = 0; x < std::min<Eigen::Index>(r, w); ++x) acc += in(y, x);
    for (Eigen::Index x = 0; x < w; ++x) {
      if (x + r < w) acc += in(y, x + r);
      if (x - r - 1 >= 0) acc -= in(y, x - r - 1);
      tmp(y, x) = acc;
    }
  }
  GrayImage out = GrayImage::Zero(h, w);
  for (Eigen::Index x = 0; x < w; ++x) {
    float acc = 0.0f;
    for (Eigen::Index y = 0; y < std::min<Eigen::Index>(r, h); ++y) acc += tmp(y, x);
    for (Eigen::Index y = 0; y < h; ++y) {
      if (y + r < h) acc += tmp(y + r, x);
      if (y - r - 1 >= 0) acc -= tmp(y - r - 1, x);
      out(y, x) = acc;
    }
  }
  return out;
}

}  // namespace

GrayImage corner_response(const GrayImage& gray, int window_radius) {
  const auto h = gray.rows(), w = gray.cols();
  GrayImage ixx = GrayImage::Zero(h, w), iyy = GrayImage::Zero(h, w), ixy = GrayImage::Zero(h, w);
  for (Eigen::Index y = 1; y + 1 < h; ++y) {
    for (Eigen::Index x = 1; x + 1 < w; ++x) {
      const float gx = (gray(y - 1, x + 1) + 2.0f * gray(y, x + 1) + gray(y + 1, x + 1) - gray(y - 1, x - 1) -
                        2.0f * gray(y, x - 1) - gray(y + 1, x - 1)) * 0.125f;
      const float gy = (gray(y + 1, x - 1) + 2.0f * gray(y + 1, x) + gray(y + 1, x + 1) - gray(y - 1, x - 1) -
                        2.0f * gray(y - 1, x) - gray(y - 1, x + 1)) * 0.125f;
      ixx(y, x) = gx * gx;
      iyy(y, x) = gy * gy;
      ixy(y, x) = gx * gy;
    }
  }
  const GrayImage a = box_sum(ixx, window_radius);
  const GrayImage c = box_sum(iyy, window_radius);
  const GrayImage b = box_sum(ixy, window_radius);
  const GrayImage half_trace = 0.5f * (a + c);
  const GrayImage half_diff = 0.5f * (a - c);
  GrayImage response = half_trace - (half_diff.square() + b.square()).sqrt();
  return response.max(0.0f);
}

std::vector<InterestPoint> detect_points(const GrayImage& gray, int max_points, const FlowParams& params) {
  std::vector<InterestPoint> points;
  if (gray.size() == 0 || max_points <= 0) return points;
  const GrayImage response = corner_response(gray, params.window_radius);
  const float peak = response.maxCoeff();
  const float threshold = std::max(static_cast<float>(params.min_response), static_cast<float>(params.quality_level) * peak);
  if (!(peak > 0.0f) || peak < threshold) return points;

  const int half = params.descriptor_side / 2;
  const int border = std::max({half, params.nms_radius, params.window_radius + 1});
  const auto h = gray.rows(), w = gray.cols();
  const int r = params.nms_radius;

  struct Candidate {
    float response;
    Eigen::Index index;
  };
  std::vector<Candidate> candidates;
  for (Eigen::Index y = border; y < h - border; ++y) {
    for (Eigen::Index x = border; x < w - border; ++x) {
      const float v = response(y, x);
      if (v < threshold) continue;
      bool is_max = true;
      for (int dy = -r; dy <= r && is_max; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const float n = response(y + dy, x + dx);
          // Raster-order tie-break keeps exactly one pixel of a flat plateau.
          const bool earlier = dy < 0 || (dy == 0 && dx < 0);
          if (n > v || (earlier && n == v)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) candidates.push_back({v, y * w + x});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.response != b.response ? a.response > b.response : a.index < b.index;
  });
  if (static_cast<int>(candidates.size()) > max_points) candidates.resize(max_points);

  const int side = 2 * half + 1;
  points.reserve(candidates.size());
  for (const auto& c : candidates) {
    const Eigen::Index y = c.index / w, x = c.index % w;
    InterestPoint p;
    p.position = {x + 0.5, y + 0.5};
    p.response = c.response;
    Eigen::VectorXf d(side * side);
    for (int dy = 0; dy < side; ++dy)
      for (int dx = 0; dx < side; ++dx) d(dy * side + dx) = gray(y - half + dy, x - half + dx);
    d.array() -= d.mean();
    const float norm = d.norm();
    if (norm > 1e-4f) {
      d /= norm;
    } else {
      d.setZero();
    }
    p.descriptor = std::move(d);
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<FlowPoint> match_flow(const std::vector<InterestPoint>& prev, const std::vector<InterestPoint>& curr,
                                  double search_radius, double score_min) {
  std::vector<FlowPoint> out;
  if (prev.empty() || curr.empty()) return out;

  // Bucket previous points on a grid with cell = search radius.
  const double cell = std::max(search_radius, 1.0);
  auto key = [cell](const Eigen::Vector2d& p) {
    return std::pair<long, long>(static_cast<long>(std::floor(p.x() / cell)), static_cast<long>(std::floor(p.y() / cell)));
  };
  std::vector<std::tuple<long, long, int>> grid;
  grid.reserve(prev.size());
  for (int j = 0; j < static_cast<int>(prev.size()); ++j) {
    auto [gx, gy] = key(prev[j].position);
    grid.emplace_back(gx, gy, j);
  }
  std::sort(grid.begin(), grid.end());

  struct Pair {
    double score;
    int curr, prev;
  };
  std::vector<Pair> pairs;
  const double r2 = search_radius * search_radius;
  for (int i = 0; i < static_cast<int>(curr.size()); ++i) {
    const auto& c = curr[i];
    if (c.descriptor.size() == 0) continue;
    auto [cx, cy] = key(c.position);
    for (long gx = cx - 1; gx <= cx + 1; ++gx) {
      for (long gy = cy - 1; gy <= cy + 1; ++gy) {
        auto lo = std::lower_bound(grid.begin(), grid.end(), std::make_tuple(gx, gy, -1));
        for (auto it = lo; it != grid.end() && std::get<0>(*it) == gx && std::get<1>(*it) == gy; ++it) {
          const int j = std::get<2>(*it);
          const auto& p = prev[j];
          if ((c.position - p.position).squaredNorm() > r2) continue;
          if (p.descriptor.size() != c.descriptor.size()) continue;
          const double score = c.descriptor.dot(p.descriptor);
          if (score >= score_min) pairs.push_back({score, i, j});
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.curr != b.curr) return a.curr < b.curr;
    return a.prev < b.prev;
  });

  std::vector<int> match(curr.size(), -1);
  std::vector<char> prev_used(prev.size(), 0);
  std::vector<double> score(curr.size(), 0.0);
  for (const auto& p : pairs) {
    if (match[p.curr] >= 0 || prev_used[p.prev]) continue;
    match[p.curr] = p.prev;
    prev_used[p.prev] = 1;
    score[p.curr] = p.score;
  }
  for (int i = 0; i < static_cast<int>(curr.size()); ++i) {
    if (match[i] < 0) continue;
    out.push_back({curr[i].position, curr[i].position - prev[match[i]].position, std::min(1.0, score[i])});
  }
  return out;
}

void write_flow_csv(const std::filesystem::path& path, const std::vector<FlowPoint>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x,y,dx,dy,score\n";
  for (const auto& p : points)
    out << p.position.x() << ',' << p.position.y() << ',' << p.flow.x() << ',' << p.flow.y() << ',' << p.match_score
        << '\n';
}

}  // namespace motionclass
