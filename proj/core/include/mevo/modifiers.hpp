#pragma once

#include <string>
#include <vector>

namespace mevo {

// GuacaMol-style score modifiers mapping a raw value into [0,1].
struct ScoreModifier {
  enum class Kind { Gaussian, MinGaussian, MaxGaussian, ThresholdedLinear, Identity };
  Kind kind = Kind::Identity;
  double mu = 0.0;
  double sigma = 1.0;
  double threshold = 1.0;

  double apply(double x) const;

  static ScoreModifier gaussian(double mu, double sigma);
  static ScoreModifier min_gaussian(double mu, double sigma);   // 1 below mu
  static ScoreModifier max_gaussian(double mu, double sigma);   // 1 above mu
  static ScoreModifier thresholded_linear(double threshold);
  static ScoreModifier identity();

  // "gaussian 356 10" etc.; throws std::invalid_argument on bad spec.
  static ScoreModifier parse(const std::string& kind,
                             const std::vector<double>& params);
  std::string describe() const;
};

}  // namespace mevo
