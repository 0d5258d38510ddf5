#pragma once

#include <Eigen/Dense>

#include "athermal/model.hpp"

namespace athermal {

// Full two-qudit density matrix over the product basis |j>_S (x) |k>_R,
// row/column index = j*d + k. Kept only for oracle-grade checks (work,
// heat, commutation, entropy production); the reduced dynamics itself
// stays diagonal and runs on Population vectors.
struct JointState {
  Eigen::MatrixXcd rho;
  int d = 0;  // single-qudit dimension; rho is d^2 x d^2
};

// U = cos(theta) I + i sin(theta) S with S the swap |j,k> -> |k,j>.
Eigen::MatrixXcd partial_swap_unitary(int d, double theta);

// H_S (x) I + I (x) H_R with level energies g*(j - (d-1)/2):
// the system uses g0, the reservoir qudit uses g0*(1+delta) for the
// Hamiltonian kind and g0 for the Temperature kind (where the
// inhomogeneity sits in beta_r, not in the spectrum).
Eigen::MatrixXd joint_hamiltonian(const ModelParams& params, double delta,
                                  Inhomogeneity kind);

// U (p (x) q) U^dagger for diagonal inputs.
JointState joint_post_collision(const Population& p_sys,
                                const Population& q_res, double theta);

// Partial traces over the reservoir / system index.
Population marginal_system(const JointState& state);
Population marginal_reservoir(const JointState& state);

// Frobenius norm of [H, U]; vanishes exactly for delta = 0 with the
// Hamiltonian kind (resonant qudits), strictly positive otherwise.
double commutator_norm(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& u);

}  // namespace athermal
