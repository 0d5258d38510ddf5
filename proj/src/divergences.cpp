#include "athermal/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "athermal/collision.hpp"
#include "athermal/energetics.hpp"
#include "athermal/errors.hpp"

namespace athermal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kViolationTol = 1e-12;  // on beta*delta_F (dimensionless)

void require_positive(const Population& q) {
  for (double v : q)
    if (v <= 0.0)
      throw config_error(
          "renyi_divergence: reference state must be strictly positive");
}

}  // namespace

double renyi_divergence(const Population& p, const Population& q,
                        double alpha) {
  if (p.size() != q.size())
    throw config_error("renyi_divergence: dimension mismatch");
  require_positive(q);
  if (std::isinf(alpha)) {
    double m = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      m = std::max(m, p[j] / q[j]);
    return std::log(m);
  }
  if (alpha == 1.0) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] > 0.0) s += p[j] * std::log(p[j] / q[j]);
    return s;
  }
  // sum p^alpha q^(1-alpha) in log space
  double m = -kInf;
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) {
      if (alpha < 0.0) return kInf;  // p_j^alpha blows up
      continue;                      // 0^alpha q^(1-alpha) = 0 for alpha > 0
    }
    double t = alpha * std::log(p[j]) + (1.0 - alpha) * std::log(q[j]);
    terms.push_back(t);
    m = std::max(m, t);
  }
  if (terms.empty())
    throw config_error("renyi_divergence: p has no support");
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  double log_sum = m + std::log(s);
  double sgn = alpha < 0.0 ? -1.0 : 1.0;
  return sgn / (alpha - 1.0) * log_sum;
}

double log_partition(const ModelParams& params) {
  double off = 0.5 * (params.d - 1);
  double s = 0.0;
  for (int j = 0; j < params.d; ++j)
    s += std::exp(-params.beta * params.g0 * (j - off));
  return std::log(s);
}

double free_energy(const Population& p, const ModelParams& params,
                   double alpha) {
  Population tau = thermal_populations(params, 0.0);
  return (renyi_divergence(p, tau, alpha) - log_partition(params)) /
         params.beta;
}

AlphaGrid AlphaGrid::defaults() {
  return AlphaGrid{{0.5, 1.0, 2.0, 3.0, kInf}};
}

DivergenceReport second_laws_check(const std::vector<Population>& trajectory,
                                   const ModelParams& params,
                                   const AlphaGrid& grid) {
  DivergenceReport report;
  if (trajectory.size() < 2) return report;
  Population tau = thermal_populations(params, 0.0);
  for (std::size_t r = 1; r < trajectory.size(); ++r) {
    for (double alpha : grid.alphas) {
      double d_prev = renyi_divergence(trajectory[r - 1], tau, alpha);
      double d_cur = renyi_divergence(trajectory[r], tau, alpha);
      DivergenceEntry e;
      e.step = static_cast<int>(r);
      e.alpha = alpha;
      e.divergence = d_cur;
      e.delta_F = (d_cur - d_prev) / params.beta;
      e.violation = (d_cur - d_prev) > kViolationTol;
      if (e.violation) ++report.violations;
      report.entries.push_back(e);
    }
  }
  return report;
}

std::vector<DeltaFRow> delta_F_vs_work(double p0,
                                       const std::vector<double>& delta_grid,
                                       const ModelParams& params,
                                       const AlphaGrid& grid) {
  if (params.d != 2)
    throw config_error("delta_F_vs_work: qubit comparison, need d = 2");
  Population pre{p0, 1.0 - p0};
  validate_population(pre);
  Population tau = thermal_populations(params, 0.0);
  std::vector<DeltaFRow> rows;
  rows.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    Population q = thermal_populations(params, delta);
    Population post = collide(pre, q, params.theta).first;
    DeltaFRow row;
    row.delta = delta;
    row.beta_work = params.beta * work_single(pre, delta, params);
    for (double alpha : grid.alphas)
      row.beta_delta_F.push_back(renyi_divergence(post, tau, alpha) -
                                 renyi_divergence(pre, tau, alpha));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<double, double> epsilon_bound(const ModelParams& params,
                                        double sigma) {
  ReservoirModel res;
  res.kind = Inhomogeneity::kHamiltonian;
  res.sigma = sigma;
  Population tau = thermal_populations(params, 0.0);
  Population tau_bar = ensemble_avg_thermal(params, res);
  double exact = trace_distance(tau, tau_bar);
  double estimate = std::numeric_limits<double>::quiet_NaN();
  if (params.d == 2) {
    double bg = params.beta * params.g0;
    double a = std::exp(-bg);
    estimate = std::sqrt(2.0 / M_PI) * bg * a / ((1.0 + a) * (1.0 + a)) * sigma;
  }
  return {exact, estimate};
}

double entropy_production(const Population& p_sys, double delta,
                          const ModelParams& params) {
  Population q = thermal_populations(params, delta);
  int d = params.d;
  double c2 = std::cos(params.theta) * std::cos(params.theta);
  double s2 = 1.0 - c2;
  // post-collision system marginal
  Population post(d);
  for (int j = 0; j < d; ++j) post[j] = c2 * p_sys[j] + s2 * q[j];
  // The partial swap permutes the product spectrum inside 2x2 blocks, so
  // S(rho_post) = S(p (x) q); the reference is diagonal, so the cross term
  // only needs the post-collision diagonal c^2 p_j q_k + s^2 p_k q_j.
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      double pre_jk = p_sys[j] * q[k];
      if (pre_jk > 0.0) s += pre_jk * std::log(pre_jk);
      double diag = c2 * p_sys[j] * q[k] + s2 * p_sys[k] * q[j];
      if (diag > 0.0) s -= diag * std::log(post[j] * q[k]);
    }
  }
  return s;
}

}  // namespace athermal
