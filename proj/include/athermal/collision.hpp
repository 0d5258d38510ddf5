#pragma once

#include <utility>

#include "athermal/model.hpp"

namespace athermal {

// One partial-swap collision acting on diagonal states:
//   system out    = cos^2(theta) p + sin^2(theta) q
//   reservoir out = cos^2(theta) q + sin^2(theta) p
std::pair<Population, Population> collide(const Population& p_sys,
                                          const Population& q_res,
                                          double theta);

// Closed form for r collisions against a constant reservoir state tau:
//   tau - (tau - p0) cos^{2r}(theta)
Population analytic_state(const Population& p0, const Population& tau,
                          double theta, int r);

// Ensemble-averaged reservoir thermal state
//   tau_bar = integral G(delta) tau(delta) d delta
// by 64-node Gauss-Hermite quadrature, cross-checked against 128 nodes;
// disagreement above 1e-12 throws numeric_error. Node positions are
// clamped to the truncated support of G so the thermal state stays in
// its domain (the clamp sits under weight exp(-n_sigma^2/2) ~ 1e-8 and
// is invisible at the 1e-12 agreement level for sigma <~ 0.1).
Population ensemble_avg_thermal(const ModelParams& params,
                                const ReservoirModel& res);

}  // namespace athermal
