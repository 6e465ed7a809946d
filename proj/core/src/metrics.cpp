#include "mevo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mevo/data.hpp"
#include "mevo/moea.hpp"

namespace mevo {

namespace {

struct NormalizeBox {
  std::vector<double> ideal;
  std::vector<double> span;  // nadir - ideal, zero spans replaced by 1
};

NormalizeBox box_of(const std::vector<std::vector<double>>& reference) {
  NormalizeBox box;
  if (reference.empty()) return box;
  const std::size_t m = reference[0].size();
  box.ideal.assign(m, std::numeric_limits<double>::infinity());
  std::vector<double> nadir(m, -std::numeric_limits<double>::infinity());
  for (const auto& r : reference) {
    for (std::size_t j = 0; j < m; ++j) {
      box.ideal[j] = std::min(box.ideal[j], r[j]);
      nadir[j] = std::max(nadir[j], r[j]);
    }
  }
  box.span.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = nadir[j] - box.ideal[j];
    box.span[j] = s > 1e-12 ? s : 1.0;
  }
  return box;
}

std::vector<std::vector<double>> normalized(const std::vector<std::vector<double>>& pts,
                                            const NormalizeBox& box) {
  std::vector<std::vector<double>> out = pts;
  for (auto& p : out)
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = (p[j] - box.ideal[j]) / box.span[j];
  return out;
}

}  // namespace

double igd(const std::vector<std::vector<double>>& reference,
           const std::vector<std::vector<double>>& points) {
  if (reference.empty() || points.empty()) return 0.0;
  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        double diff = r[j] - p[j];
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

void merge_nondominated(std::vector<std::vector<double>>& ref, const FrontSnapshot& points) {
  for (const auto& p : points) {
    bool drop = false;
    for (const auto& r : ref) {
      if (r == p || dominates(r, p)) {
        drop = true;
        break;
      }
    }
    if (drop) continue;
    ref.erase(std::remove_if(ref.begin(), ref.end(),
                             [&](const std::vector<double>& r) { return dominates(p, r); }),
              ref.end());
    ref.push_back(p);
  }
}

RunningMetricResult running_metric(const FrontHistory& history, int window) {
  if (window <= 0) throw std::invalid_argument("running_metric: window must be positive");
  RunningMetricResult result;
  result.window = window;
  const int g_total = static_cast<int>(history.size());
  if (g_total == 0) return result;

  std::vector<int> checkpoints;
  for (int t = window; t <= g_total; t += window) checkpoints.push_back(t);
  if (checkpoints.empty() || checkpoints.back() != g_total) checkpoints.push_back(g_total);

  std::vector<std::vector<double>> reference;
  int merged_upto = 0;
  int window_start = 1;
  for (int t : checkpoints) {
    while (merged_upto < t) merge_nondominated(reference, history[static_cast<std::size_t>(merged_upto++)]);
    NormalizeBox box = box_of(reference);
    auto norm_ref = normalized(reference, box);

    RunningWindow win;
    win.checkpoint = t;
    for (int g = window_start; g <= t; ++g) {
      win.generations.push_back(g);
      auto pts = normalized(history[static_cast<std::size_t>(g - 1)], box);
      win.igd_values.push_back(igd(norm_ref, pts));
    }
    if (!win.igd_values.empty()) win.delta = win.igd_values.front() - win.igd_values.back();
    result.windows.push_back(std::move(win));
    window_start = t + 1;
  }
  return result;
}

std::vector<IgdTrajectory> cross_algorithm_running_metric(
    const std::vector<FrontHistory>& runs) {
  std::vector<std::vector<double>> reference;
  for (const auto& run : runs)
    if (!run.empty()) merge_nondominated(reference, run.back());
  NormalizeBox box = box_of(reference);
  auto norm_ref = normalized(reference, box);

  std::vector<IgdTrajectory> out;
  out.reserve(runs.size());
  for (const auto& run : runs) {
    IgdTrajectory traj;
    for (std::size_t g = 0; g < run.size(); ++g) {
      traj.generations.push_back(static_cast<int>(g) + 1);
      traj.igd_values.push_back(igd(norm_ref, normalized(run[g], box)));
    }
    out.push_back(std::move(traj));
  }
  return out;
}

double extended_bub(const std::vector<Fingerprint>& fps, const BubOptions& options) {
  if (fps.empty()) throw std::invalid_argument("extended_bub: empty fingerprint set");
  const int n = static_cast<int>(fps.size());
  if (n == 1) {
    log_info("extended_bub: singleton set scores 1.0 by convention");
    return 1.0;
  }
  const int bits = fps[0].n_bits;
  for (const auto& fp : fps)
    if (fp.n_bits != bits) throw std::invalid_argument("extended_bub: fingerprint size mismatch");

  const int gamma = options.gamma >= 0 ? options.gamma : n % 2;

  long long a = 0, d = 0, dis = 0;
  double w_a = 0.0, w_d = 0.0;
  for (int col = 0; col < bits; ++col) {
    int k = 0;
    for (const auto& fp : fps) k += fp.test(col) ? 1 : 0;
    const int delta = 2 * k - n;
    if (delta > gamma) {
      ++a;
      w_a += static_cast<double>(delta) / static_cast<double>(n);
    } else if (-delta > gamma) {
      ++d;
      w_d += static_cast<double>(-delta) / static_cast<double>(n);
    } else {
      ++dis;
    }
  }

  const double denom_core = std::sqrt(static_cast<double>(a) * static_cast<double>(d)) +
                            static_cast<double>(a);
  const double denominator = denom_core + static_cast<double>(dis);
  if (denominator <= 0.0) return 1.0;  // no columns classified; degenerate
  const double numerator =
      options.weighted ? std::sqrt(w_a * w_d) + w_a : denom_core;
  return numerator / denominator;
}

std::vector<double> internal_similarity_series(
    const std::vector<std::vector<Fingerprint>>& fronts, const BubOptions& options) {
  std::vector<double> out;
  out.reserve(fronts.size());
  for (const auto& fps : fronts) out.push_back(extended_bub(fps, options));
  return out;
}

}  // namespace mevo
