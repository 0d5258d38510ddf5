#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "athermal/model.hpp"
#include "athermal/rng.hpp"

namespace athermal {

enum class DensityMode { kQuadraticApprox, kExactNumeric };

// Which single-collision energy exchange is being distributed over the
// inhomogeneity delta ~ G. All values are reported in units g0*sin^2(theta)
// (the natural scale in which the distributions are theta-independent).
enum class ObservableKind { kWork, kHeatHamiltonian, kHeatTemperature };

// One delta from the truncated Gaussian, by rejection; sigma = 0 gives 0.
double sample_delta(const ReservoirModel& res, RandomStream& stream);

// Qubit-only map delta -> y for the chosen observable:
//   work:               y = delta * (q0(delta) - p0)
//   heat (Hamiltonian): y = (1 + delta) * (p0 - q0(delta))
//   heat (Temperature): y = p0 - q0(delta)
double observable_value(ObservableKind obs, double p0,
                        const ModelParams& params, double delta);
// Analytic dy/ddelta of the same map.
double observable_derivative(ObservableKind obs, double p0,
                             const ModelParams& params, double delta);

// Exact pushforward of the truncated Gaussian G through y(delta):
// monotone pieces are cut at the zeros of dy/ddelta, each query point is
// inverted by bisection per piece, and the change-of-variables formula
// sums G(delta_s)/|y'(delta_s)| over contributing branches. Fold points
// (y' = 0) are integrable 1/sqrt singularities of the density.
class Pushforward {
 public:
  Pushforward(ObservableKind obs, double p0, const ModelParams& params,
              double sigma);

  // density of y; +inf exactly at a fold value
  double density(double y) const;
  // P(Y <= y), exact through the piecewise preimage intervals
  double cdf(double y) const;
  // inverse cdf by bisection over the image
  double quantile(double prob) const;

  std::pair<double, double> image() const { return {ymin_, ymax_}; }
  // y values of interior folds (where the density diverges)
  const std::vector<double>& singular_values() const { return singular_; }

 private:
  struct Piece {
    double dlo, dhi;  // delta interval
    double ylo, yhi;  // y at the ends (unordered: ylo = y(dlo))
    bool increasing;
  };

  double map(double delta) const;
  double slope(double delta) const;
  double invert(const Piece& piece, double y) const;

  ObservableKind obs_;
  double p0_;
  ModelParams params_;
  ReservoirModel res_;
  std::vector<Piece> pieces_;
  std::vector<double> singular_;
  double ymin_ = 0.0, ymax_ = 0.0;
};

// Pointwise densities. QuadraticApprox solves the second-order Taylor
// inversion in closed form (roots weighted by G/sqrt(discriminant));
// ExactNumeric delegates to Pushforward. Qubit only; sigma > 0.
double work_density(double y, double p0, const ModelParams& params,
                    double sigma, DensityMode mode);
double heat_density(double y, double p0, const ModelParams& params,
                    double sigma, Inhomogeneity kind, DensityMode mode);

// Image of the second-order Taylor (QuadraticApprox) map over the
// truncated support, and its fold values (parabola vertex) if the vertex
// falls inside the support. Used to size emitted grids so the quadratic
// curve is not clipped.
std::pair<double, double> quadratic_image(ObservableKind obs, double p0,
                                          const ModelParams& params,
                                          double sigma);
std::vector<double> quadratic_singular_values(ObservableKind obs, double p0,
                                              const ModelParams& params,
                                              double sigma);

struct SampleSet {
  std::vector<double> values;
  std::uint64_t seed = 0;
  long long n = 0;
};

// n i.i.d. single-collision observables at sampled delta, in units
// g0*sin^2(theta); trajectory i draws from stream (seed, i), so the set
// is reproducible and extensible without reshuffling earlier draws.
SampleSet empirical_distribution(ObservableKind obs, double p0,
                                 const ModelParams& params, double sigma,
                                 long long n, std::uint64_t seed);

struct DensityCurve {
  std::vector<double> grid;     // evaluation abscissae (ascending)
  std::vector<double> density;  // matching density values
  DensityMode mode = DensityMode::kExactNumeric;
  std::vector<double> singular_points;  // fold y values, if any
};

// 2001 uniform points spanning the image of the (mode-specific) map over
// the truncated support; grid points that land on a fold value are
// evaluated half a cell inward so every stored value is finite.
DensityCurve density_curve(ObservableKind obs, double p0,
                           const ModelParams& params, double sigma,
                           DensityMode mode, int n_points = 2001);

// Integral of the curve, trapezoid away from folds and a sqrt-substitution
// trapezoid in the cells adjacent to each fold (plain trapezoid misses the
// integrable singularity by more than the 1e-3 normalization budget).
double curve_normalization(const DensityCurve& curve);

// Two-sided Kolmogorov-Smirnov statistic between a sample and a CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

}  // namespace athermal
