#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mevo/moea.hpp"

namespace mevo {

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dominates: dimension mismatch");
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) strict = true;
  }
  return strict;
}

std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives) {
  const int n = static_cast<int>(objectives.size());
  std::vector<std::vector<int>> fronts;
  if (n == 0) return fronts;

  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<int>> dominated_by(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  std::vector<int> current;
  for (int i = 0; i < n; ++i)
    if (domination_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (int i : current) {
      for (int j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front) {
  const int n = static_cast<int>(front.size());
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  const int m = static_cast<int>(front[0].size());
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    return dist;
  }

  std::vector<int> order(n);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return front[a][j] < front[b][j]; });
    double span = front[order[n - 1]][j] - front[order[0]][j];
    dist[order[0]] = std::numeric_limits<double>::infinity();
    dist[order[n - 1]] = std::numeric_limits<double>::infinity();
    if (span <= 0.0) continue;  // constant objective contributes nothing
    for (int i = 1; i + 1 < n; ++i) {
      double gap = front[order[i + 1]][j] - front[order[i - 1]][j];
      if (dist[order[i]] != std::numeric_limits<double>::infinity())
        dist[order[i]] += gap / span;
    }
  }
  return dist;
}

}  // namespace mevo
