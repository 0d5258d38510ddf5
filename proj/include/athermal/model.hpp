#pragma once

#include <vector>

namespace athermal {

// Diagonal qudit state: probabilities indexed by level j in {0,...,d-1}.
// Level 0 is the ground state (s_z eigenvalue j-(d-1)/2 with g0 > 0).
using Population = std::vector<double>;

enum class Inhomogeneity {
  kHamiltonian,  // g_r = g0*(1+delta_r), common beta
  kTemperature,  // beta_r = beta*(1+delta_r), common g0
};

// System/reservoir qudit parameters, hbar = k_B = 1.
struct ModelParams {
  int d = 2;           // qudit dimension, >= 2
  double beta = 1.0;   // inverse temperature, > 0
  double g0 = 1.0;     // level splitting frequency, > 0
  double theta = 0.1;  // partial-swap mixing angle

  // Throws config_error on invalid fields. Folds theta into [0, pi/2]
  // (only cos^2/sin^2 enter any formula, so the fold loses nothing).
  void validate();
};

// Maps any real angle to the equivalent one in [0, pi/2].
double normalize_theta(double theta);

// Distribution of the reservoir inhomogeneity delta: Gaussian with mean 0
// and std sigma, truncated to [max(-n_sigma*sigma, -1+1e-6), n_sigma*sigma]
// so that a(delta) = exp(-beta*g0*(1+delta)) stays in (0,1).
struct ReservoirModel {
  Inhomogeneity kind = Inhomogeneity::kHamiltonian;
  double sigma = 0.0;
  double n_sigma = 6.0;  // truncation half-width in units of sigma

  void validate() const;
  double support_lo() const;
  double support_hi() const;
  // pdf/cdf of the truncated Gaussian; for sigma == 0 delta is the point
  // mass at 0 (pdf is not defined there and must not be called).
  double pdf(double delta) const;
  double cdf(double delta) const;
};

// q_j(delta) = [(1-a)/(1-a^d)] * a^j, a = exp(-beta*g0*(1+delta)).
// Identical for both inhomogeneity kinds: only the product beta_r*g_r
// enters. delta = -1 gives the uniform (infinite-temperature) state;
// delta < -1 (inverted regime) throws config_error.
Population thermal_populations(const ModelParams& params, double delta);

// Asserts entries >= 0 and unit sum within 1e-12; throws config_error.
void validate_population(const Population& p);

// (1/2) sum_j |p_j - q_j|; throws config_error on dimension mismatch.
double trace_distance(const Population& p, const Population& q);

}  // namespace athermal
