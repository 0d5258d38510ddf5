#include "athermal/collision.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Hermite rule for weight exp(-t^2) via the Golub-Welsch eigenvalue
// construction: Jacobi matrix has zero diagonal and off-diagonal sqrt(k/2).
Quadrature gauss_hermite(int n) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(0.5 * k);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  double sqrt_pi = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    q.weights[i] = sqrt_pi * v0 * v0;
  }
  return q;
}

Population avg_with_nodes(const ModelParams& params, const ReservoirModel& res,
                          const Quadrature& q) {
  double lo = res.support_lo(), hi = res.support_hi();
  double scale = std::sqrt(2.0) * res.sigma;
  Population acc(params.d, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    double delta = std::min(std::max(scale * q.nodes[i], lo), hi);
    Population t = thermal_populations(params, delta);
    for (int j = 0; j < params.d; ++j) acc[j] += q.weights[i] * t[j];
    wsum += q.weights[i];
  }
  for (double& v : acc) v /= wsum;
  return acc;
}

}  // namespace

std::pair<Population, Population> collide(const Population& p_sys,
                                          const Population& q_res,
                                          double theta) {
  if (p_sys.size() != q_res.size())
    throw config_error("collide: dimension mismatch");
  double c2 = std::cos(theta) * std::cos(theta);
  double s2 = 1.0 - c2;
  Population ps(p_sys.size()), qr(q_res.size());
  for (std::size_t j = 0; j < p_sys.size(); ++j) {
    ps[j] = c2 * p_sys[j] + s2 * q_res[j];
    qr[j] = c2 * q_res[j] + s2 * p_sys[j];
  }
  return {ps, qr};
}

Population analytic_state(const Population& p0, const Population& tau,
                          double theta, int r) {
  if (p0.size() != tau.size())
    throw config_error("analytic_state: dimension mismatch");
  if (r < 0) throw config_error("analytic_state: need r >= 0");
  double c2 = std::cos(theta) * std::cos(theta);
  double w = std::pow(c2, r);
  Population out(p0.size());
  for (std::size_t j = 0; j < p0.size(); ++j)
    out[j] = tau[j] - (tau[j] - p0[j]) * w;
  return out;
}

Population ensemble_avg_thermal(const ModelParams& params,
                                const ReservoirModel& res) {
  res.validate();
  if (res.sigma == 0.0) return thermal_populations(params, 0.0);
  Population coarse = avg_with_nodes(params, res, gauss_hermite(64));
  Population fine = avg_with_nodes(params, res, gauss_hermite(128));
  for (int j = 0; j < params.d; ++j) {
    if (std::abs(coarse[j] - fine[j]) > 1e-12)
      throw numeric_error(
          "ensemble_avg_thermal: 64- and 128-node quadrature disagree above "
          "1e-12; sigma too large for the clamped Gauss-Hermite rule");
  }
  return fine;
}

}  // namespace athermal
