#include "athermal/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "athermal/errors.hpp"

namespace athermal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFoldSlope = 1e-14;  // |dy/ddelta| below this is a fold

void require_qubit(const ModelParams& params, const char* who) {
  if (params.d != 2)
    throw config_error(std::string(who) +
                       ": qubit-only inversion formulas, need d = 2");
}

// d = 2 ground population and its delta-derivatives
double q0_of(const ModelParams& params, double delta) {
  double a = std::exp(-params.beta * params.g0 * (1.0 + delta));
  return 1.0 / (1.0 + a);
}

double q0_prime(const ModelParams& params, double delta) {
  double bg = params.beta * params.g0;
  double a = std::exp(-bg * (1.0 + delta));
  double one = 1.0 + a;
  return bg * a / (one * one);
}

double q0_second(const ModelParams& params, double delta) {
  double bg = params.beta * params.g0;
  double a = std::exp(-bg * (1.0 + delta));
  double one = 1.0 + a;
  return bg * bg * a * (a - 1.0) / (one * one * one);
}

ReservoirModel reservoir_for(ObservableKind obs, double sigma) {
  ReservoirModel res;
  res.kind = obs == ObservableKind::kHeatTemperature
                 ? Inhomogeneity::kTemperature
                 : Inhomogeneity::kHamiltonian;
  res.sigma = sigma;
  res.validate();
  return res;
}

// Second-order Taylor inversion: the map is approximated by
// y = -(A delta^2 + B delta + C0) ... organized so that roots solve
// A delta^2 + B delta + C = 0 with C = C(y); at a root |dy/ddelta| =
// sqrt(B^2 - 4AC), which weights each branch.
void quad_coefficients(ObservableKind obs, double y, double p0,
                       const ModelParams& params, double& A, double& B,
                       double& C) {
  double q0 = q0_of(params, 0.0);
  double qp = q0_prime(params, 0.0);
  switch (obs) {
    case ObservableKind::kWork:
      A = qp;
      B = q0 - p0;
      C = -y;
      break;
    case ObservableKind::kHeatHamiltonian:
      A = qp;
      B = qp + q0 - p0;
      C = y - (p0 - q0);
      break;
    case ObservableKind::kHeatTemperature:
      A = q0_second(params, 0.0);
      B = qp;
      C = y - (p0 - q0);
      break;
  }
}

double quad_density(ObservableKind obs, double y, double p0,
                    const ModelParams& params, const ReservoirModel& res) {
  double A, B, C;
  quad_coefficients(obs, y, p0, params, A, B, C);
  if (std::abs(A) < 1e-14 * std::max(1.0, std::abs(B))) {
    if (B == 0.0) return 0.0;
    return res.pdf(-C / B) / std::abs(B);
  }
  double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return 0.0;
  if (disc == 0.0) return kInf;  // tangency: fold point of the parabola
  double sq = std::sqrt(disc);
  double r1 = (-B + sq) / (2.0 * A);
  double r2 = (-B - sq) / (2.0 * A);
  return (res.pdf(r1) + res.pdf(r2)) / sq;
}

// y(delta) of the quadratic (Taylor) map itself, used to size the grid in
// QuadraticApprox mode.
double quad_map(ObservableKind obs, double p0, const ModelParams& params,
                double delta) {
  double A, B, C0;
  quad_coefficients(obs, 0.0, p0, params, A, B, C0);
  // with y = 0 the coefficients satisfy A d^2 + B d + C0 = 0 at roots of
  // the map minus zero; the map is y = A d^2 + B d for work and
  // y = -(A d^2 + B d) + (p0 - q0)-type for the heats -- recover it from
  // the sign with which y enters C(y).
  switch (obs) {
    case ObservableKind::kWork:
      return A * delta * delta + B * delta;  // C = -y
    case ObservableKind::kHeatHamiltonian:
    case ObservableKind::kHeatTemperature:
      return -C0 - B * delta - A * delta * delta;  // C = y + C0
  }
  return 0.0;
}

}  // namespace

double sample_delta(const ReservoirModel& res, RandomStream& stream) {
  if (res.sigma <= 0.0) return 0.0;
  return stream.next_truncated_normal(res.sigma, res.support_lo(),
                                      res.support_hi());
}

double observable_value(ObservableKind obs, double p0,
                        const ModelParams& params, double delta) {
  require_qubit(params, "observable_value");
  double q0 = q0_of(params, delta);
  switch (obs) {
    case ObservableKind::kWork:
      return delta * (q0 - p0);
    case ObservableKind::kHeatHamiltonian:
      return (1.0 + delta) * (p0 - q0);
    case ObservableKind::kHeatTemperature:
      return p0 - q0;
  }
  return 0.0;
}

double observable_derivative(ObservableKind obs, double p0,
                             const ModelParams& params, double delta) {
  require_qubit(params, "observable_derivative");
  double q0 = q0_of(params, delta);
  double qp = q0_prime(params, delta);
  switch (obs) {
    case ObservableKind::kWork:
      return (q0 - p0) + delta * qp;
    case ObservableKind::kHeatHamiltonian:
      return (p0 - q0) - (1.0 + delta) * qp;
    case ObservableKind::kHeatTemperature:
      return -qp;
  }
  return 0.0;
}

Pushforward::Pushforward(ObservableKind obs, double p0,
                         const ModelParams& params, double sigma)
    : obs_(obs), p0_(p0), params_(params), res_(reservoir_for(obs, sigma)) {
  require_qubit(params, "Pushforward");
  if (!(sigma > 0.0))
    throw config_error("Pushforward: need sigma > 0 (point mass otherwise)");
  if (p0 < 0.0 || p0 > 1.0)
    throw config_error("Pushforward: p0 outside [0,1]");

  double lo = res_.support_lo(), hi = res_.support_hi();
  // locate zeros of dy/ddelta by sign scan + bisection
  std::vector<double> breaks{lo};
  const int kScan = 4096;
  double step = (hi - lo) / kScan;
  double xa = lo, fa = slope(xa);
  for (int i = 1; i <= kScan; ++i) {
    double xb = lo + i * step, fb = slope(xb);
    if (fa == 0.0 && xa != lo) {
      breaks.push_back(xa);
    } else if (fa * fb < 0.0) {
      double a = xa, b = xb, va = fa;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b), vm = slope(m);
        if (vm == 0.0) {
          a = b = m;
          break;
        }
        if ((va < 0.0) == (vm < 0.0)) {
          a = m;
          va = vm;
        } else {
          b = m;
        }
      }
      breaks.push_back(0.5 * (a + b));
    }
    xa = xb;
    fa = fb;
  }
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) {
                             return std::abs(a - b) < 1e-13 * (hi - lo);
                           }),
               breaks.end());

  ymin_ = kInf;
  ymax_ = -kInf;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Piece p;
    p.dlo = breaks[i];
    p.dhi = breaks[i + 1];
    p.ylo = map(p.dlo);
    p.yhi = map(p.dhi);
    p.increasing = p.yhi >= p.ylo;
    pieces_.push_back(p);
    ymin_ = std::min(ymin_, std::min(p.ylo, p.yhi));
    ymax_ = std::max(ymax_, std::max(p.ylo, p.yhi));
  }
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i)
    singular_.push_back(map(breaks[i]));
  std::sort(singular_.begin(), singular_.end());
}

double Pushforward::map(double delta) const {
  return observable_value(obs_, p0_, params_, delta);
}

double Pushforward::slope(double delta) const {
  return observable_derivative(obs_, p0_, params_, delta);
}

double Pushforward::invert(const Piece& piece, double y) const {
  double a = piece.dlo, b = piece.dhi;
  double fa = map(a) - y;
  // Exact hits on a piece endpoint must resolve to that endpoint; the
  // sign-bracket below would otherwise treat fa = 0 as positive and walk
  // the whole piece.
  if (fa == 0.0) return a;
  if (map(b) - y == 0.0) return b;
  for (int it = 0; it < 80; ++it) {
    double m = 0.5 * (a + b), fm = map(m) - y;
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double Pushforward::density(double y) const {
  if (y < ymin_ || y > ymax_) return 0.0;
  double dens = 0.0;
  for (const Piece& piece : pieces_) {
    double plo = std::min(piece.ylo, piece.yhi);
    double phi = std::max(piece.ylo, piece.yhi);
    if (y < plo || y > phi) continue;
    double ds = invert(piece, y);
    double sl = std::abs(slope(ds));
    if (sl < kFoldSlope) return kInf;
    dens += res_.pdf(ds) / sl;
  }
  return dens;
}

double Pushforward::cdf(double y) const {
  if (y < ymin_) return 0.0;
  if (y >= ymax_) return 1.0;
  double mass = 0.0;
  for (const Piece& piece : pieces_) {
    if (piece.increasing) {
      if (y >= piece.yhi) {
        mass += res_.cdf(piece.dhi) - res_.cdf(piece.dlo);
      } else if (y >= piece.ylo) {
        mass += res_.cdf(invert(piece, y)) - res_.cdf(piece.dlo);
      }
    } else {
      if (y >= piece.ylo) {
        mass += res_.cdf(piece.dhi) - res_.cdf(piece.dlo);
      } else if (y >= piece.yhi) {
        mass += res_.cdf(piece.dhi) - res_.cdf(invert(piece, y));
      }
    }
  }
  return std::min(1.0, std::max(0.0, mass));
}

double Pushforward::quantile(double prob) const {
  if (prob <= 0.0) return ymin_;
  if (prob >= 1.0) return ymax_;
  double a = ymin_, b = ymax_;
  for (int it = 0; it < 80; ++it) {
    double m = 0.5 * (a + b);
    if (cdf(m) < prob)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

double work_density(double y, double p0, const ModelParams& params,
                    double sigma, DensityMode mode) {
  require_qubit(params, "work_density");
  if (mode == DensityMode::kQuadraticApprox) {
    ReservoirModel res = reservoir_for(ObservableKind::kWork, sigma);
    return quad_density(ObservableKind::kWork, y, p0, params, res);
  }
  return Pushforward(ObservableKind::kWork, p0, params, sigma).density(y);
}

double heat_density(double y, double p0, const ModelParams& params,
                    double sigma, Inhomogeneity kind, DensityMode mode) {
  require_qubit(params, "heat_density");
  ObservableKind obs = kind == Inhomogeneity::kHamiltonian
                           ? ObservableKind::kHeatHamiltonian
                           : ObservableKind::kHeatTemperature;
  if (mode == DensityMode::kQuadraticApprox) {
    ReservoirModel res = reservoir_for(obs, sigma);
    return quad_density(obs, y, p0, params, res);
  }
  return Pushforward(obs, p0, params, sigma).density(y);
}

std::pair<double, double> quadratic_image(ObservableKind obs, double p0,
                                          const ModelParams& params,
                                          double sigma) {
  require_qubit(params, "quadratic_image");
  ReservoirModel res = reservoir_for(obs, sigma);
  double lo = res.support_lo(), hi = res.support_hi();
  double A, B, C0;
  quad_coefficients(obs, 0.0, p0, params, A, B, C0);
  double ymin = std::min(quad_map(obs, p0, params, lo),
                         quad_map(obs, p0, params, hi));
  double ymax = std::max(quad_map(obs, p0, params, lo),
                         quad_map(obs, p0, params, hi));
  if (A != 0.0) {
    double dstar = -B / (2.0 * A);
    if (dstar > lo && dstar < hi) {
      double ys = quad_map(obs, p0, params, dstar);
      ymin = std::min(ymin, ys);
      ymax = std::max(ymax, ys);
    }
  }
  return {ymin, ymax};
}

std::vector<double> quadratic_singular_values(ObservableKind obs, double p0,
                                              const ModelParams& params,
                                              double sigma) {
  require_qubit(params, "quadratic_singular_values");
  ReservoirModel res = reservoir_for(obs, sigma);
  double A, B, C0;
  quad_coefficients(obs, 0.0, p0, params, A, B, C0);
  std::vector<double> out;
  if (A != 0.0) {
    double dstar = -B / (2.0 * A);
    if (dstar > res.support_lo() && dstar < res.support_hi())
      out.push_back(quad_map(obs, p0, params, dstar));
  }
  return out;
}

SampleSet empirical_distribution(ObservableKind obs, double p0,
                                 const ModelParams& params, double sigma,
                                 long long n, std::uint64_t seed) {
  require_qubit(params, "empirical_distribution");
  if (n < 1) throw config_error("empirical_distribution: need n >= 1");
  ReservoirModel res;
  res.kind = obs == ObservableKind::kHeatTemperature
                 ? Inhomogeneity::kTemperature
                 : Inhomogeneity::kHamiltonian;
  res.sigma = sigma;
  res.validate();
  SampleSet set;
  set.seed = seed;
  set.n = n;
  set.values.resize(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    double delta = sample_delta(res, stream);
    set.values[static_cast<std::size_t>(i)] =
        observable_value(obs, p0, params, delta);
  }
  return set;
}

DensityCurve density_curve(ObservableKind obs, double p0,
                           const ModelParams& params, double sigma,
                           DensityMode mode, int n_points) {
  require_qubit(params, "density_curve");
  if (n_points < 2) throw config_error("density_curve: need n_points >= 2");
  ReservoirModel res = reservoir_for(obs, sigma);
  double lo = res.support_lo(), hi = res.support_hi();

  DensityCurve curve;
  curve.mode = mode;

  double ymin, ymax;
  std::optional<Pushforward> pf;
  if (mode == DensityMode::kExactNumeric) {
    pf.emplace(obs, p0, params, sigma);
    auto im = pf->image();
    ymin = im.first;
    ymax = im.second;
    curve.singular_points = pf->singular_values();
  } else {
    // image of the quadratic map over the support: ends plus the vertex
    double A, B, C0;
    quad_coefficients(obs, 0.0, p0, params, A, B, C0);
    std::vector<double> cand{quad_map(obs, p0, params, lo),
                             quad_map(obs, p0, params, hi)};
    if (std::abs(A) > 0.0) {
      // vertex of A d^2 + B d + C(y): the map's fold sits at d* = -B/(2A)
      double dstar = -B / (2.0 * A);
      if (dstar > lo && dstar < hi) {
        double ys = quad_map(obs, p0, params, dstar);
        cand.push_back(ys);
        curve.singular_points.push_back(ys);
      }
    }
    ymin = *std::min_element(cand.begin(), cand.end());
    ymax = *std::max_element(cand.begin(), cand.end());
  }

  double cell = (ymax - ymin) / (n_points - 1);
  auto eval = [&](double y) {
    return mode == DensityMode::kExactNumeric
               ? pf->density(y)
               : quad_density(obs, y, p0, params, res);
  };
  curve.grid.reserve(n_points);
  curve.density.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    double y = ymin + i * cell;
    // a grid point sitting on a fold value would evaluate to +inf;
    // nudge it half a cell toward the interior of the image
    for (double ys : curve.singular_points) {
      if (std::abs(y - ys) < 1e-12 * std::max(1.0, std::abs(ys)) + 1e-300) {
        y = ys + (std::abs(ys - ymin) < std::abs(ymax - ys) ? 0.5 : -0.5) * cell;
      }
    }
    double g = eval(y);
    for (int tries = 0; !std::isfinite(g) && tries < 3; ++tries) {
      y += (y < 0.5 * (ymin + ymax) ? 0.25 : -0.25) * cell;
      g = eval(y);
    }
    curve.grid.push_back(y);
    curve.density.push_back(g);
  }
  return curve;
}

double curve_normalization(const DensityCurve& curve) {
  const std::vector<double>& y = curve.grid;
  const std::vector<double>& g = curve.density;
  std::size_t n = y.size();
  if (n < 2) return 0.0;
  double cell = (y.back() - y.front()) / static_cast<double>(n - 1);
  const std::vector<double>& sing = curve.singular_points;

  auto nearest_singular = [&](double a, double b, double& ys) {
    bool found = false;
    double best = kInf;
    for (double s : sing) {
      double dist = std::min(std::abs(a - s), std::abs(b - s));
      if (a <= s && s <= b) dist = 0.0;
      if (dist < best) {
        best = dist;
        ys = s;
        found = true;
      }
    }
    return found && best < 8.0 * cell;
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double a = y[i], b = y[i + 1], ga = g[i], gb = g[i + 1];
    double ys = 0.0;
    if (nearest_singular(a, b, ys)) {
      if (a < ys && ys < b) {
        // cell straddles the fold: both halves are sqrt-slivers
        total += 2.0 * ga * (ys - a) + 2.0 * gb * (b - ys);
      } else if (ys <= a) {
        // right side of the fold: trapezoid in u = sqrt(y - ys)
        double ua = std::sqrt(a - ys), ub = std::sqrt(b - ys);
        total += (ub - ua) * (ua * ga + ub * gb);
      } else {
        // left side: u = sqrt(ys - y)
        double ua = std::sqrt(ys - a), ub = std::sqrt(ys - b);
        total += (ua - ub) * (ua * ga + ub * gb);
      }
    } else {
      total += 0.5 * (ga + gb) * (b - a);
    }
  }
  // slivers between a fold and the nearest (inward-shifted) grid point
  for (double s : sing) {
    if (s < y.front()) total += 2.0 * g.front() * (y.front() - s);
    if (s > y.back()) total += 2.0 * g.back() * (s - y.back());
  }
  return total;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw config_error("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace athermal
