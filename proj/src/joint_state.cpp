#include "athermal/joint_state.hpp"

#include <cmath>
#include <complex>

#include "athermal/errors.hpp"

namespace athermal {

Eigen::MatrixXcd partial_swap_unitary(int d, double theta) {
  int n = d * d;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  std::complex<double> c(std::cos(theta), 0.0);
  std::complex<double> is(0.0, std::sin(theta));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      u(j * d + k, j * d + k) += c;
      u(k * d + j, j * d + k) += is;  // S|j,k> = |k,j>
    }
  return u;
}

Eigen::MatrixXd joint_hamiltonian(const ModelParams& params, double delta,
                                  Inhomogeneity kind) {
  int d = params.d;
  double g_res = kind == Inhomogeneity::kHamiltonian ? params.g0 * (1.0 + delta)
                                                     : params.g0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d * d, d * d);
  double off = 0.5 * (d - 1);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      h(j * d + k, j * d + k) = params.g0 * (j - off) + g_res * (k - off);
  return h;
}

JointState joint_post_collision(const Population& p_sys,
                                const Population& q_res, double theta) {
  if (p_sys.size() != q_res.size())
    throw config_error("joint_post_collision: dimension mismatch");
  int d = static_cast<int>(p_sys.size());
  Eigen::MatrixXcd u = partial_swap_unitary(d, theta);
  Eigen::VectorXd diag(d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) diag(j * d + k) = p_sys[j] * q_res[k];
  JointState out;
  out.d = d;
  out.rho = u * diag.asDiagonal() * u.adjoint();
  return out;
}

Population marginal_system(const JointState& state) {
  int d = state.d;
  Population p(d, 0.0);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) p[j] += state.rho(j * d + k, j * d + k).real();
  return p;
}

Population marginal_reservoir(const JointState& state) {
  int d = state.d;
  Population p(d, 0.0);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) p[k] += state.rho(j * d + k, j * d + k).real();
  return p;
}

double commutator_norm(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd comm = h * u - u * h;
  return comm.norm();
}

}  // namespace athermal
