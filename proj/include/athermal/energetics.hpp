#pragma once

#include "athermal/model.hpp"

namespace athermal {

// Per-collision energy bookkeeping, hbar = 1. Sign conventions: work > 0
// when energy flows into the joint (system + fresh qudit) pair during the
// swap; heat > 0 when the reservoir qudit dumps energy into the system.
// First law: dU = work + heat holds exactly per collision.
struct CollisionRecord {
  double delta = 0.0;
  double work = 0.0;
  double heat = 0.0;
  double dU = 0.0;
};

// q_j(0) and its first two delta-derivatives at delta = 0 (true
// derivatives; averages built from them use the standard 1/2 factor on
// the second-order term).
struct TaylorCoefficients {
  int level = 0;
  double value = 0.0;   // q_j(0)
  double first = 0.0;   // q_j'(0)
  double second = 0.0;  // q_j''(0)
};

// W = g0 * delta * sin^2(theta) * sum_j j*(p_j - q_j(delta)).
// Only the Hamiltonian kind performs work; for the Temperature kind the
// swap conserves the joint energy exactly (use work = 0).
double work_single(const Population& p_sys, double delta,
                   const ModelParams& params);

// Hamiltonian kind: g0*(1+delta)*sin^2(theta)*sum_j (j-(d-1)/2)*(q_j - p_j);
// Temperature kind: same sum without the (1+delta) prefactor (= dU).
double heat_single(const Population& p_sys, double delta,
                   const ModelParams& params, Inhomogeneity kind);

// dU = g0 * sin^2(theta) * sum_j (j-(d-1)/2)*(q_j(delta) - p_j);
// identical for both inhomogeneity kinds.
double delta_U(const Population& p_sys, double delta,
               const ModelParams& params);

// Work/heat/dU for one collision of the given kind; first law exact.
CollisionRecord collision_record(const Population& p_sys, double delta,
                                 const ModelParams& params,
                                 Inhomogeneity kind);

TaylorCoefficients taylor_coefficients(const ModelParams& params, int j);

// Ensemble average of work_single over delta ~ G to O(sigma^2):
//   -sigma^2 * g0 * sin^2(theta) * sum_j j * q_j'(0)
// Independent of the system state, hence of the collision index.
double avg_work_taylor(const ModelParams& params, double sigma);

// Ensemble average of heat_single (Hamiltonian kind) to O(sigma^2) for
// pre-collision ensemble-averaged state p_bar:
//   g0 sin^2(theta) sum_j (j-(d-1)/2)[q_j(0) - p_bar_j
//                                     + (q_j'(0) + q_j''(0)/2) sigma^2]
double avg_heat_taylor(const Population& p_bar, const ModelParams& params,
                       double sigma);

// Ensemble average of delta_U to O(sigma^2); closes the first law with
// avg_work_taylor + avg_heat_taylor exactly.
double avg_dU_taylor(const Population& p_bar, const ModelParams& params,
                     double sigma);

struct AccumulatedWork {
  double work = 0.0;            // sum over N collisions, magnitude
  double distance_ratio = 0.0;  // D(rho_bar_N, tau_bar)/D(rho_0, tau_bar)
};

// Work accumulated over N collisions when the coupling is scheduled as
// sin^2(theta) = c * N^(-xi):
//   W_N = N * g0 * sigma^2 * sin^2(theta) * |sum_j j q_j'(0)|,
//   ratio = cos^(2N)(theta) -> exp(-c) for xi = 1.
AccumulatedWork accumulated_work(const ModelParams& params, double sigma,
                                 long long N, double c, double xi);

}  // namespace athermal
