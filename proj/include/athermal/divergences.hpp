#pragma once

#include <utility>
#include <vector>

#include "athermal/model.hpp"

namespace athermal {

// Renyi divergence of diagonal states,
//   D_alpha(p||q) = sgn(alpha)/(alpha-1) * log sum_j p_j^alpha q_j^(1-alpha),
// with the alpha -> 1 limit (Kullback-Leibler) and alpha = +inf limit
// (log max_j p_j/q_j) handled explicitly. Conventions: 0^alpha * q^(1-alpha)
// = 0 for alpha > 0; a zero p_j makes D_alpha infinite for alpha < 0
// (+inf sentinel). q must be strictly positive (thermal states are).
double renyi_divergence(const Population& p, const Population& q,
                        double alpha);

// log Z_S with Z_S = sum_j exp(-beta*g0*(j-(d-1)/2)).
double log_partition(const ModelParams& params);

// Generalized free energy F_alpha = (1/beta) [D_alpha(p||tau_S) - log Z_S].
double free_energy(const Population& p, const ModelParams& params,
                   double alpha);

struct AlphaGrid {
  std::vector<double> alphas;
  // {0.5, 1, 2, 3, inf}: both sides of alpha = 1 plus the max-divergence
  static AlphaGrid defaults();
};

struct DivergenceEntry {
  int step = 0;            // transition (step-1) -> step
  double alpha = 0.0;
  double divergence = 0.0;  // D_alpha(state at step || tau_S)
  double delta_F = 0.0;     // F_alpha(step) - F_alpha(step-1)
  bool violation = false;   // beta*delta_F > 1e-12
};

struct DivergenceReport {
  std::vector<DivergenceEntry> entries;
  int violations = 0;
};

// Flags every step/alpha pair where the generalized free energy increased
// beyond round-off. Exact thermal operation (delta = 0 throughout) never
// trips it; inhomogeneous reservoirs can.
DivergenceReport second_laws_check(const std::vector<Population>& trajectory,
                                   const ModelParams& params,
                                   const AlphaGrid& grid);

struct DeltaFRow {
  double delta = 0.0;
  double beta_work = 0.0;
  std::vector<double> beta_delta_F;  // one entry per grid alpha
};

// Single collision from the qubit state (p0, 1-p0) against tau(delta) for
// each delta in the grid: beta*W next to beta*dF_alpha, the Fig.-style
// comparison of work against the generalized free-energy changes.
std::vector<DeltaFRow> delta_F_vs_work(double p0,
                                       const std::vector<double>& delta_grid,
                                       const ModelParams& params,
                                       const AlphaGrid& grid);

// (exact, estimate): exact = trace_distance(tau_S, tau_bar) via quadrature;
// estimate = sqrt(2/pi) * beta*g0 * a/(1+a)^2 * sigma, the small-sigma
// qubit asymptote (NaN for d != 2, where no closed form is used).
std::pair<double, double> epsilon_bound(const ModelParams& params,
                                        double sigma);

// Entropy production of one collision,
//   dS = D[rho_post || rho_S_post (x) tau(delta)],
// evaluated in closed form: the post-collision joint spectrum equals the
// pre-collision product spectrum, so only the diagonal of rho_post enters
// the cross term. Always >= 0.
double entropy_production(const Population& p_sys, double delta,
                          const ModelParams& params);

}  // namespace athermal
