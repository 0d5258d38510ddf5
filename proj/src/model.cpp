#include "athermal/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

constexpr double kDeltaFloor = -1.0 + 1e-6;

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double normalize_theta(double theta) {
  // cos^2 and sin^2 are pi-periodic and symmetric about pi/2, so every
  // angle is equivalent to one in [0, pi/2].
  double s = std::abs(std::sin(theta));
  return std::asin(std::min(1.0, s));
}

void ModelParams::validate() {
  if (d < 2) throw config_error("ModelParams.d: need d >= 2, got " + std::to_string(d));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw config_error("ModelParams.beta: need beta > 0, got " + std::to_string(beta));
  if (!(g0 > 0.0) || !std::isfinite(g0))
    throw config_error("ModelParams.g0: need g0 > 0, got " + std::to_string(g0));
  if (!std::isfinite(theta)) throw config_error("ModelParams.theta: non-finite");
  theta = normalize_theta(theta);
}

void ReservoirModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw config_error("ReservoirModel.sigma: need sigma >= 0, got " + std::to_string(sigma));
  if (!(n_sigma > 0.0))
    throw config_error("ReservoirModel.n_sigma: need n_sigma > 0, got " + std::to_string(n_sigma));
  if (support_lo() <= -1.0)
    throw config_error("ReservoirModel: truncated support must lie inside delta > -1");
}

double ReservoirModel::support_lo() const {
  return std::max(-n_sigma * sigma, kDeltaFloor);
}

double ReservoirModel::support_hi() const { return n_sigma * sigma; }

double ReservoirModel::pdf(double delta) const {
  if (sigma <= 0.0)
    throw config_error("ReservoirModel.pdf: undefined for sigma = 0 (point mass)");
  double lo = support_lo(), hi = support_hi();
  if (delta < lo || delta > hi) return 0.0;
  double z = std_normal_cdf(hi / sigma) - std_normal_cdf(lo / sigma);
  double t = delta / sigma;
  return std::exp(-0.5 * t * t) / (sigma * std::sqrt(2.0 * M_PI) * z);
}

double ReservoirModel::cdf(double delta) const {
  if (sigma <= 0.0) return delta < 0.0 ? 0.0 : 1.0;
  double lo = support_lo(), hi = support_hi();
  if (delta <= lo) return 0.0;
  if (delta >= hi) return 1.0;
  double z = std_normal_cdf(hi / sigma) - std_normal_cdf(lo / sigma);
  return (std_normal_cdf(delta / sigma) - std_normal_cdf(lo / sigma)) / z;
}

Population thermal_populations(const ModelParams& params, double delta) {
  if (delta < -1.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", delta);
    throw config_error(std::string("thermal_populations: delta < -1 (") + buf +
                       ") is the inverted-population regime");
  }
  int d = params.d;
  double x = params.beta * params.g0 * (1.0 + delta);
  Population q(d);
  if (x == 0.0) {
    for (int j = 0; j < d; ++j) q[j] = 1.0 / d;
    return q;
  }
  // q_j = exp(-x j) * (1-e^{-x}) / (1-e^{-x d}); expm1 keeps small x exact
  double norm = std::expm1(-x) / std::expm1(-x * d);
  for (int j = 0; j < d; ++j) q[j] = std::exp(-x * j) * norm;
  return q;
}

void validate_population(const Population& p) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw config_error("Population: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw config_error("Population: entries must sum to 1 within 1e-12");
}

double trace_distance(const Population& p, const Population& q) {
  if (p.size() != q.size())
    throw config_error("trace_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += std::abs(p[j] - q[j]);
  return 0.5 * s;
}

}  // namespace athermal
