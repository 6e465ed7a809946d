#include "mevo/modifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace mevo {

namespace {

double gaussian_value(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z);
}

}  // namespace

double ScoreModifier::apply(double x) const {
  switch (kind) {
    case Kind::Gaussian:
      return gaussian_value(x, mu, sigma);
    case Kind::MinGaussian:
      return x <= mu ? 1.0 : gaussian_value(x, mu, sigma);
    case Kind::MaxGaussian:
      return x >= mu ? 1.0 : gaussian_value(x, mu, sigma);
    case Kind::ThresholdedLinear:
      if (threshold <= 0.0) return x >= threshold ? 1.0 : 0.0;
      return std::clamp(std::min(x, threshold) / threshold, 0.0, 1.0);
    case Kind::Identity:
      return std::clamp(x, 0.0, 1.0);
  }
  return 0.0;
}

ScoreModifier ScoreModifier::gaussian(double mu, double sigma) {
  return {Kind::Gaussian, mu, sigma, 1.0};
}
ScoreModifier ScoreModifier::min_gaussian(double mu, double sigma) {
  return {Kind::MinGaussian, mu, sigma, 1.0};
}
ScoreModifier ScoreModifier::max_gaussian(double mu, double sigma) {
  return {Kind::MaxGaussian, mu, sigma, 1.0};
}
ScoreModifier ScoreModifier::thresholded_linear(double threshold) {
  return {Kind::ThresholdedLinear, 0.0, 1.0, threshold};
}
ScoreModifier ScoreModifier::identity() { return {}; }

ScoreModifier ScoreModifier::parse(const std::string& kind,
                                   const std::vector<double>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("modifier " + kind + " expects " +
                                  std::to_string(n) + " parameter(s)");
    }
  };
  if (kind == "gaussian") {
    need(2);
    return gaussian(params[0], params[1]);
  }
  if (kind == "min_gaussian") {
    need(2);
    return min_gaussian(params[0], params[1]);
  }
  if (kind == "max_gaussian") {
    need(2);
    return max_gaussian(params[0], params[1]);
  }
  if (kind == "thresholded_linear") {
    need(1);
    return thresholded_linear(params[0]);
  }
  if (kind == "identity") {
    need(0);
    return identity();
  }
  throw std::invalid_argument("unknown modifier kind: " + kind);
}

std::string ScoreModifier::describe() const {
  char buf[96];
  switch (kind) {
    case Kind::Gaussian:
      std::snprintf(buf, sizeof(buf), "gaussian(%g,%g)", mu, sigma);
      break;
    case Kind::MinGaussian:
      std::snprintf(buf, sizeof(buf), "min_gaussian(%g,%g)", mu, sigma);
      break;
    case Kind::MaxGaussian:
      std::snprintf(buf, sizeof(buf), "max_gaussian(%g,%g)", mu, sigma);
      break;
    case Kind::ThresholdedLinear:
      std::snprintf(buf, sizeof(buf), "thresholded_linear(%g)", threshold);
      break;
    case Kind::Identity:
      std::snprintf(buf, sizeof(buf), "identity");
      break;
  }
  return buf;
}

}  // namespace mevo
