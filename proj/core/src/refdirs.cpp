#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mevo/moea.hpp"

namespace mevo {

namespace {

double pair_energy(const std::vector<double>& a, const std::vector<double>& b, double s) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double diff = a[k] - b[k];
    d2 += diff * diff;
  }
  d2 = std::max(d2, 1e-24);
  return std::pow(d2, -s / 2.0);
}

double total_energy(const std::vector<std::vector<double>>& x, double s) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) e += pair_energy(x[i], x[j], s);
  return e;
}

void project_to_simplex(std::vector<double>& p) {
  double sum = 0.0;
  for (double& v : p) {
    if (v < 1e-12) v = 1e-12;
    sum += v;
  }
  for (double& v : p) v /= sum;
}

}  // namespace

std::vector<std::vector<double>> riesz_reference_directions(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1)
    throw std::invalid_argument("riesz_reference_directions: m and n must be positive");

  std::vector<std::vector<double>> x;
  x.reserve(static_cast<std::size_t>(n));
  // Per-objective extremes are pinned so the direction set always spans the
  // axes of the simplex.
  const int pinned = std::min(m, n);
  for (int j = 0; j < pinned; ++j) {
    std::vector<double> e(static_cast<std::size_t>(m), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    x.push_back(std::move(e));
  }
  if (n <= m) return x;

  Rng rng(seed);
  for (int i = m; i < n; ++i) {
    std::vector<double> p(static_cast<std::size_t>(m));
    for (double& v : p) v = -std::log(std::max(rng.uniform(), 1e-12));
    project_to_simplex(p);
    x.push_back(std::move(p));
  }

  // Spread the free points by minimizing Riesz s-energy with a projected,
  // step-adaptive gradient descent; the pinned extremes do not move.
  const double s = static_cast<double>(m) * static_cast<double>(m);
  double step = 0.01;
  double best_energy = total_energy(x, s);
  std::vector<std::vector<double>> best = x;

  for (int iter = 0; iter < 400 && step > 1e-7; ++iter) {
    std::vector<std::vector<double>> next = x;
    for (int i = m; i < n; ++i) {
      std::vector<double> grad(static_cast<std::size_t>(m), 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        double d2 = 0.0;
        for (int k = 0; k < m; ++k) {
          double diff = x[i][k] - x[j][k];
          d2 += diff * diff;
        }
        d2 = std::max(d2, 1e-24);
        double coeff = -s * std::pow(d2, -(s + 2.0) / 2.0);
        for (int k = 0; k < m; ++k) grad[k] += coeff * (x[i][k] - x[j][k]);
      }
      double norm = 0.0;
      for (double g : grad) norm += g * g;
      norm = std::sqrt(norm);
      if (norm < 1e-300) continue;
      for (int k = 0; k < m; ++k) next[i][k] = x[i][k] - step * grad[k] / norm;
      project_to_simplex(next[i]);
    }
    double e = total_energy(next, s);
    if (e < best_energy) {
      best_energy = e;
      best = next;
      x = std::move(next);
      step = std::min(step * 1.1, 0.05);
    } else {
      x = best;
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace mevo
