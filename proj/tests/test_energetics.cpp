// Energy bookkeeping tests: per-collision work/heat, first law, Taylor
// expansion of the ensemble averages, accumulated work under coupling
// schedules.
//
// Categories:
//   1. Closed-form single-collision work/heat/dU: fixed numeric values
//   2. First law W + Q = dU, exactly, across randomized collisions
//   3. Equivalence with dense-matrix energy accounting (both kinds)
//   4. Zero-work structure of the Temperature kind
//   5. Taylor coefficients of the thermal state vs finite differences
//   6. Ensemble-averaged work/heat/dU vs Monte Carlo; O(sigma^4) residual
//   7. Accumulated work under sin^2(theta) = c N^(-xi) schedules

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "athermal/energetics.hpp"
#include "athermal/errors.hpp"
#include "athermal/model.hpp"
#include "athermal/rng.hpp"
#include "oracles.hpp"

using namespace athermal;

namespace {

constexpr double kExactTol = 1e-12;

double sin2(double theta) { return std::sin(theta) * std::sin(theta); }

}  // namespace

TEST_CASE("single-collision work: fixed numeric values") {
  ModelParams p;  // d=2, beta=1, g0=1, theta=0.1
  const double unit = p.g0 * sin2(p.theta);

  // p0 = 0.5, delta = 0.02: W/unit = 0.02*(q0(0.02) - 0.5).
  double w = work_single({0.5, 0.5}, 0.02, p);
  CHECK(std::abs(w / unit - 0.0046994519893303762) < kExactTol);

  // No detuning, no work.
  CHECK(work_single({0.3, 0.7}, 0.0, p) == 0.0);

  // No population transfer, no work: p already equals q(delta).
  auto q = thermal_populations(p, 0.02);
  CHECK(std::abs(work_single(q, 0.02, p)) < 1e-16);
}

TEST_CASE("single-collision heat: fixed numeric values for both kinds") {
  ModelParams p;
  const double unit = p.g0 * sin2(p.theta);
  Population sys{0.73, 0.27};

  double qt = heat_single(sys, 0.02, p, Inhomogeneity::kTemperature);
  CHECK(std::abs(qt / unit - (-0.0049725994665188107)) < kExactTol);

  double qh = heat_single(sys, 0.02, p, Inhomogeneity::kHamiltonian);
  CHECK(std::abs(qh / unit - (-0.0050720514558491869)) < kExactTol);

  // Temperature-kind heat equals dU (all energy change is heat).
  CHECK(std::abs(qt - delta_U(sys, 0.02, p)) < 1e-16);
}

TEST_CASE("energetics domain: delta <= -1 rejected") {
  ModelParams p;
  CHECK_THROWS_AS(work_single({0.5, 0.5}, -1.0, p), config_error);
  CHECK_THROWS_AS(heat_single({0.5, 0.5}, -1.5, p, Inhomogeneity::kHamiltonian),
                  config_error);
  CHECK_THROWS_AS(delta_U({0.5, 0.5}, -1.0, p), config_error);
}

TEST_CASE("first law holds exactly per collision") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> del(-0.2, 0.2);
  std::uniform_real_distribution<double> ang(0.0, M_PI / 2);
  for (int d : {2, 3, 4}) {
    ModelParams p;
    p.d = d;
    for (auto kind : {Inhomogeneity::kHamiltonian, Inhomogeneity::kTemperature}) {
      for (int rep = 0; rep < 700; ++rep) {
        p.theta = ang(gen);
        auto sys = oracle::random_population(gen, d);
        auto rec = collision_record(sys, del(gen), p, kind);
        CHECK(std::abs(rec.work + rec.heat - rec.dU) < kExactTol);
        if (kind == Inhomogeneity::kTemperature) CHECK(rec.work == 0.0);
      }
    }
  }
}

TEST_CASE("closed forms match dense-matrix energy accounting") {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> del(-0.2, 0.2);
  std::uniform_real_distribution<double> ang(0.05, M_PI / 2);
  for (int d : {2, 3, 4}) {
    for (auto kind : {Inhomogeneity::kHamiltonian, Inhomogeneity::kTemperature}) {
      for (int rep = 0; rep < 50; ++rep) {
        ModelParams p;
        p.d = d;
        p.beta = 0.5 + rep * 0.02;
        p.g0 = 1.0 + (rep % 5) * 0.3;
        p.theta = ang(gen);
        auto sys = oracle::random_population(gen, d);
        double delta = del(gen);
        auto rec = collision_record(sys, delta, p, kind);
        auto ref = oracle::energy_dense(sys, delta, p, kind);
        CHECK(std::abs(rec.work - ref.work) < kExactTol);
        CHECK(std::abs(rec.heat - ref.heat) < kExactTol);
        CHECK(std::abs(rec.dU - ref.dU) < kExactTol);
      }
    }
  }
}

TEST_CASE("Temperature kind never performs work (dense check)") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> del(-0.9, 3.0);
  for (int rep = 0; rep < 60; ++rep) {
    ModelParams p;
    p.d = 2 + rep % 3;
    p.theta = 0.05 + 0.3 * (rep % 5);
    auto sys = oracle::random_population(gen, p.d);
    auto ref = oracle::energy_dense(sys, del(gen), p, Inhomogeneity::kTemperature);
    CHECK(std::abs(ref.work) < kExactTol);
  }
}

TEST_CASE("Taylor coefficients: qubit closed forms") {
  ModelParams p;
  auto t0 = taylor_coefficients(p, 0);
  auto t1 = taylor_coefficients(p, 1);
  CHECK(std::abs(t0.value - 0.73105857863000488) < 1e-14);
  CHECK(std::abs(t0.first - 0.19661193324148185) < 1e-13);
  CHECK(std::abs(t0.second - (-0.090857747672948409)) < 1e-13);
  CHECK(std::abs(t1.first + t0.first) < 1e-14);
  CHECK(std::abs(t1.second + t0.second) < 1e-14);
}

TEST_CASE("Taylor coefficients vs finite differences") {
  for (int d : {2, 3, 5}) {
    for (double bg : {0.7, 1.0, 2.3}) {
      ModelParams p;
      p.d = d;
      p.beta = bg;
      for (int j = 0; j < d; ++j) {
        auto t = taylor_coefficients(p, j);
        auto qj = [&](double delta) { return thermal_populations(p, delta)[j]; };
        CHECK(std::abs(t.value - qj(0.0)) < 1e-15);
        double fd1 = oracle::fd_first(qj, 0.0, 1e-5);
        double fd2 = oracle::fd_second(qj, 0.0, 1e-4);
        CHECK(std::abs(t.first - fd1) < 1e-6 * std::max(1.0, std::abs(fd1)));
        CHECK(std::abs(t.second - fd2) < 1e-5 * std::max(1.0, std::abs(fd2)));
      }
    }
  }
}

TEST_CASE("Taylor coefficients: sum rules") {
  for (int d : {2, 3, 4, 6}) {
    ModelParams p;
    p.d = d;
    p.beta = 1.4;
    double sv = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < d; ++j) {
      auto t = taylor_coefficients(p, j);
      sv += t.value;
      s1 += t.first;
      s2 += t.second;
    }
    CHECK(std::abs(sv - 1.0) < kExactTol);
    CHECK(std::abs(s1) < kExactTol);
    CHECK(std::abs(s2) < kExactTol);
  }
}

TEST_CASE("ensemble-averaged work: closed form and positivity") {
  ModelParams p;
  CHECK(avg_work_taylor(p, 0.0) == 0.0);

  const double unit = p.g0 * sin2(p.theta);
  CHECK(std::abs(avg_work_taylor(p, 0.02) / unit - 7.8644773296592741e-5) <
        1e-15);

  // Average work is strictly positive whenever sigma > 0.
  for (int d : {2, 3, 4}) {
    ModelParams pd;
    pd.d = d;
    CHECK(avg_work_taylor(pd, 0.05) > 0.0);
  }
}

TEST_CASE("ensemble-averaged work matches Monte Carlo, state-independent") {
  ModelParams p;
  ReservoirModel res;
  res.sigma = 0.02;
  const double unit = p.g0 * sin2(p.theta);
  const double want = avg_work_taylor(p, res.sigma) / unit;

  for (double p0 : {0.6, 0.2}) {
    RandomStream rs(77, p0 < 0.5 ? 1 : 0);
    const int n = 1000000;
    std::vector<double> ws(n);
    Population sys{p0, 1.0 - p0};
    for (int i = 0; i < n; ++i) {
      double delta = rs.next_truncated_normal(res.sigma, res.support_lo(),
                                              res.support_hi());
      ws[i] = work_single(sys, delta, p) / unit;
    }
    auto m = oracle::mean_std_error(ws);
    CHECK(std::abs(m.mean - want) < 3.0 * m.std_error);
  }
}

TEST_CASE("ensemble-averaged heat matches Monte Carlo") {
  ModelParams p;
  ReservoirModel res;
  res.sigma = 0.02;
  Population pbar{0.75, 0.25};
  const double want = avg_heat_taylor(pbar, p, res.sigma);

  RandomStream rs(78, 0);
  const int n = 1000000;
  std::vector<double> qs(n);
  for (int i = 0; i < n; ++i) {
    double delta = rs.next_truncated_normal(res.sigma, res.support_lo(),
                                            res.support_hi());
    qs[i] = heat_single(pbar, delta, p, Inhomogeneity::kHamiltonian);
  }
  auto m = oracle::mean_std_error(qs);
  CHECK(std::abs(m.mean - want) < 3.0 * m.std_error);

  // Heat depends on the pre-collision state; work does not.
  CHECK(avg_heat_taylor({0.5, 0.5}, p, res.sigma) != want);
}

TEST_CASE("ensemble averages: degenerate cases and first-law closure") {
  ModelParams p;
  auto tau = thermal_populations(p, 0.0);
  CHECK(std::abs(avg_heat_taylor(tau, p, 0.0)) < 1e-16);
  CHECK(std::abs(avg_dU_taylor(tau, p, 0.0)) < 1e-16);

  std::mt19937_64 gen(24);
  for (int d : {2, 3, 4}) {
    ModelParams pd;
    pd.d = d;
    for (double sigma : {0.0, 0.01, 0.05}) {
      for (int rep = 0; rep < 20; ++rep) {
        auto pbar = oracle::random_population(gen, d);
        double w = avg_work_taylor(pd, sigma);
        double q = avg_heat_taylor(pbar, pd, sigma);
        double du = avg_dU_taylor(pbar, pd, sigma);
        CHECK(std::abs(w + q - du) < 1e-14);
      }
    }
  }
}

TEST_CASE("ensemble-averaged work error scales as sigma^4") {
  // Common random numbers across sigma: antithetic pairs with the second
  // moment matched to the truncated Gaussian, so the O(sigma^2) term
  // carries no sampling noise and the residual exposes the sigma^4 tail.
  ModelParams p;
  const double unit = p.g0 * sin2(p.theta);
  Population sys{0.5, 0.5};

  std::mt19937_64 gen(25);
  std::normal_distribution<double> nd(0.0, 1.0);
  const int npairs = 300000;
  std::vector<double> z;
  z.reserve(2 * npairs);
  while (z.size() < 2u * npairs) {
    double v = nd(gen);
    if (std::abs(v) <= 6.0) {
      z.push_back(v);
      z.push_back(-v);
    }
  }
  // Match E[z^2] to the +-6 sigma truncated normal value.
  const double phi6 = std::exp(-18.0) / std::sqrt(2.0 * M_PI);
  const double mass = std::erf(6.0 / std::sqrt(2.0));
  const double target_m2 = 1.0 - 12.0 * phi6 / mass;
  double m2 = 0.0;
  for (double v : z) m2 += v * v;
  m2 /= z.size();
  const double scale = std::sqrt(target_m2 / m2);
  for (double& v : z) v *= scale;

  std::vector<double> sigmas{0.08, 0.04, 0.02};
  std::vector<double> errs;
  for (double sigma : sigmas) {
    double acc = 0.0;
    for (double v : z) acc += work_single(sys, sigma * v, p) / unit;
    acc /= z.size();
    errs.push_back(std::abs(acc - avg_work_taylor(p, sigma) / unit));
  }
  double slope = std::log(errs[0] / errs[2]) / std::log(4.0);
  CHECK(slope > 3.5);
  CHECK(slope < 4.5);
}

TEST_CASE("accumulated work: xi = 1 keeps work finite, ratio -> e^{-c}") {
  ModelParams p;
  const double sigma = 0.02;
  auto acc = accumulated_work(p, sigma, 10000, 3.0, 1.0);
  CHECK(std::abs(acc.distance_ratio - std::exp(-3.0)) < 1e-3);
  // W_N = g0 sigma^2 c q0'(0) for d = 2, independent of N at xi = 1.
  CHECK(std::abs(acc.work - 3.0 * sigma * sigma * 0.19661193324148185) < 1e-12);
  auto acc2 = accumulated_work(p, sigma, 1000000, 3.0, 1.0);
  CHECK(std::abs(acc2.work - acc.work) < 1e-15);
}

TEST_CASE("accumulated work: xi = 2 suppresses work and thermalization") {
  ModelParams p;
  auto acc = accumulated_work(p, 0.02, 1000000, 3.0, 2.0);
  CHECK(acc.work < 1e-9);
  CHECK(acc.distance_ratio > 1.0 - 1e-5);
}

TEST_CASE("accumulated work: xi = 1/2 grows as sqrt(N)") {
  ModelParams p;
  auto a = accumulated_work(p, 0.02, 10000, 3.0, 0.5);
  auto b = accumulated_work(p, 0.02, 1000000, 3.0, 0.5);
  CHECK(std::abs(b.work / a.work - 10.0) < 1e-9);
  CHECK(b.distance_ratio < 1e-100);  // e^{-c sqrt(N)} scale
}

TEST_CASE("accumulated work: schedule validation") {
  ModelParams p;
  CHECK_THROWS_AS(accumulated_work(p, 0.02, 1, 3.0, 1.0), config_error);  // sin^2 > 1
  CHECK_THROWS_AS(accumulated_work(p, 0.02, 0, 3.0, 1.0), config_error);
  CHECK_THROWS_AS(accumulated_work(p, 0.02, 100, 0.0, 1.0), config_error);
  // sin^2 = 1 exactly: full swap each collision, ratio collapses to 0.
  auto edge = accumulated_work(p, 0.02, 1, 1.0, 1.0);
  CHECK(edge.distance_ratio == 0.0);
  CHECK(std::isfinite(edge.work));
}
