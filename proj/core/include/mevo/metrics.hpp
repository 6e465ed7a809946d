#pragma once

#include <vector>

#include "mevo/fingerprint.hpp"

namespace mevo {

// One generation's Pareto front, as objective vectors (maximization).
using FrontSnapshot = std::vector<std::vector<double>>;
// Index g holds the front after generation g+1.
using FrontHistory = std::vector<FrontSnapshot>;

// Inverted generational distance: mean distance from each reference point to
// its nearest point of `points` (Euclidean, in whatever space the caller
// normalized to). Empty reference or point set yields 0.
double igd(const std::vector<std::vector<double>>& reference,
           const std::vector<std::vector<double>>& points);

// Inserts `points` into `ref`, keeping only mutually non-dominated vectors
// and dropping exact duplicates.
void merge_nondominated(std::vector<std::vector<double>>& ref, const FrontSnapshot& points);

struct RunningWindow {
  int checkpoint = 0;               // generation number (1-based) closing the window
  std::vector<int> generations;     // in-window generation numbers
  std::vector<double> igd_values;   // IGD of each in-window front vs the
                                    // reference accumulated up to `checkpoint`
  double delta = 0.0;               // igd_values.front() - igd_values.back()
};

struct RunningMetricResult {
  int window = 0;
  std::vector<RunningWindow> windows;
};

// Running metric over one run: at each checkpoint t the reference is the
// non-dominated merge of all fronts up to t, objectives are normalized by
// that reference's ideal/nadir, and each in-window front is scored by IGD.
// The per-window delta measures the improvement within the window; a
// stationary history yields all-zero deltas.
RunningMetricResult running_metric(const FrontHistory& history, int window);

struct IgdTrajectory {
  std::vector<int> generations;
  std::vector<double> igd_values;
};

// Cross-run comparison: the reference merges the *final* fronts of all runs;
// every run's whole history is then scored against that one normalized
// reference.
std::vector<IgdTrajectory> cross_algorithm_running_metric(
    const std::vector<FrontHistory>& runs);

struct BubOptions {
  int gamma = -1;        // coincidence threshold; -1 -> N mod 2
  bool weighted = true;  // weighted column counters in the numerator
};

// Extended Baroni-Urbani/Buser similarity over a set of fingerprints.
// Columns with on-count k are 1-coincident when 2k - N > gamma, 0-coincident
// when N - 2k > gamma, and dissimilar otherwise; the index is
// (sqrt(a*d) + a) / (sqrt(a*d) + a + dis). With `weighted`, the numerator
// counters are weighted by the coincidence fraction |2k - N| / N, which
// keeps the n-ary index on the scale of its pairwise ancestor. At N = 2 and
// gamma = 0 both forms reduce exactly to the pairwise index. A singleton set
// scores 1.0 (logged).
double extended_bub(const std::vector<Fingerprint>& fps, const BubOptions& options = {});

// Extended BUB of each generation's Pareto-front fingerprints.
std::vector<double> internal_similarity_series(
    const std::vector<std::vector<Fingerprint>>& fronts, const BubOptions& options = {});

}  // namespace mevo
