#include "junction/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

#include "junction/model.hpp"
#include "junction/parallel.hpp"

namespace junction {

namespace {

constexpr double kPhasePerStep = 0.02;

// exp(X) for a traceless real 2x2 X, using X^2 = -det(X) I.
Eigen::Matrix2d exp_traceless(const Eigen::Matrix2d& x) {
  const double s2 = -x.determinant();
  double c, k;
  if (s2 > 1e-14) {
    const double s = std::sqrt(s2);
    c = std::cosh(s);
    k = std::sinh(s) / s;
  } else if (s2 < -1e-14) {
    const double s = std::sqrt(-s2);
    c = std::cos(s);
    k = std::sin(s) / s;
  } else {
    c = 1.0 + 0.5 * s2;
    k = 1.0 + s2 / 6.0;
  }
  return c * Eigen::Matrix2d::Identity() + k * x;
}

Eigen::Matrix2d linear_generator(double t, const SemiclassicalParams& p) {
  const double scale = 4.0 * std::numbers::pi / p.n_sites;
  Eigen::Matrix2d a;
  a << 0.0, -2.0 * scale * p.coupling,
      scale * (p.dc_amplitude + p.ac_amplitude * std::cos(p.angular_frequency * t)), 0.0;
  return a;
}

PhasePoint axpy(PhasePoint x, double h, PhasePoint k) { return {x.q + h * k.q, x.p + h * k.p}; }

PhasePoint rk4_step(PhasePoint x, double t, double h, const SemiclassicalParams& p) {
  const PhasePoint k1 = classical_rhs(x, t, p);
  const PhasePoint k2 = classical_rhs(axpy(x, 0.5 * h, k1), t + 0.5 * h, p);
  const PhasePoint k3 = classical_rhs(axpy(x, 0.5 * h, k2), t + 0.5 * h, p);
  const PhasePoint k4 = classical_rhs(axpy(x, h, k3), t + h, p);
  return {x.q + h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q), x.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

}  // namespace

double SemiclassicalParams::effective_hbar() const { return kTwoPi / n_sites; }

double SemiclassicalParams::period() const { return kTwoPi / angular_frequency; }

double SemiclassicalParams::small_oscillation_frequency() const {
  return 4.0 * std::numbers::pi / n_sites * std::sqrt(2.0 * dc_amplitude * coupling);
}

void SemiclassicalParams::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) throw std::invalid_argument("semiclassical model needs an even N >= 2");
  if (!(angular_frequency > 0.0)) throw std::invalid_argument("drive frequency must be positive");
  if (!(dc_amplitude * coupling > 0.0)) throw std::invalid_argument("Omega^2 = (4 pi/N)^2 2 J Delta_0 must be positive");
  if (!std::isfinite(ac_amplitude)) throw std::invalid_argument("Delta_1 must be finite");
}

SemiclassicalParams semiclassical_from_mhz(int n_sites, double dc_mhz, double ac_mhz, double drive_mhz,
                                           double coupling_mhz) {
  SemiclassicalParams p;
  p.n_sites = n_sites;
  p.dc_amplitude = mhz_to_angular(dc_mhz);
  p.ac_amplitude = mhz_to_angular(ac_mhz);
  p.angular_frequency = mhz_to_angular(drive_mhz);
  p.coupling = mhz_to_angular(coupling_mhz);
  return p;
}

PhasePoint classical_rhs(PhasePoint x, double t, const SemiclassicalParams& params) {
  const double scale = 4.0 * std::numbers::pi / params.n_sites;
  const double g = params.dc_amplitude + params.ac_amplitude * std::cos(params.angular_frequency * t);
  return {-2.0 * scale * params.coupling * std::sin(x.p), scale * g * std::sin(x.q)};
}

double classical_energy(PhasePoint x, double t, const SemiclassicalParams& params) {
  const double g = params.dc_amplitude + params.ac_amplitude * std::cos(params.angular_frequency * t);
  return g * std::cos(x.q) + 2.0 * params.coupling * std::cos(x.p);
}

std::vector<PhasePoint> Trajectory::wrapped() const {
  std::vector<PhasePoint> out = points;
  for (auto& x : out) {
    x.q = std::fmod(x.q, kTwoPi);
    if (x.q < 0) x.q += kTwoPi;
  }
  return out;
}

Trajectory integrate_trajectory(PhasePoint start, double duration, double step, const SemiclassicalParams& params) {
  if (!(step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (duration < 0.0) throw std::invalid_argument("duration must be non-negative");
  params.validate();

  const double period = params.period();
  const auto per_period = static_cast<long>(std::ceil(period / step - 1e-9));
  const double h = period / static_cast<double>(per_period);
  const auto total = static_cast<long>(std::ceil(duration / h - 1e-9));

  Trajectory traj;
  traj.times.reserve(total + 1);
  traj.points.reserve(total + 1);
  PhasePoint x = start;
  for (long k = 0; k <= total; ++k) {
    const double t = static_cast<double>(k) * h;
    traj.times.push_back(t);
    traj.points.push_back(x);
    if (k % per_period == 0) traj.stroboscopic.push_back(static_cast<std::size_t>(k));
    if (k < total) x = rk4_step(x, t, h, params);
  }
  return traj;
}

int default_monodromy_steps(const SemiclassicalParams& params) {
  const double ratio = std::abs(params.ac_amplitude / params.dc_amplitude);
  const double phase = params.period() * params.small_oscillation_frequency() * std::sqrt(1.0 + ratio);
  return std::max(64, static_cast<int>(std::ceil(phase / kPhasePerStep)));
}

Eigen::Matrix2d monodromy_matrix(const SemiclassicalParams& params, int steps) {
  params.validate();
  if (steps <= 0) steps = default_monodromy_steps(params);
  const double h = params.period() / steps;
  const double c = std::sqrt(3.0) / 6.0;

  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Eigen::Matrix2d a1 = linear_generator(t + (0.5 - c) * h, params);
    const Eigen::Matrix2d a2 = linear_generator(t + (0.5 + c) * h, params);
    const Eigen::Matrix2d omega = 0.5 * h * (a1 + a2) + std::sqrt(3.0) / 12.0 * h * h * (a2 * a1 - a1 * a2);
    m = exp_traceless(omega) * m;
  }
  return m;
}

double monodromy_trace(const SemiclassicalParams& params, int steps) {
  return std::abs(monodromy_matrix(params, steps).trace());
}

StabilityGrid stability_grid(const SemiclassicalParams& base, double omega_max, int n_omega, double delta1_max,
                             int n_delta1, int workers) {
  if (!(omega_max > 0.0) || n_omega < 1) throw std::invalid_argument("omega range must be positive and non-empty");
  if (delta1_max < 0.0 || n_delta1 < 1) throw std::invalid_argument("Delta_1 range must be non-negative and non-empty");

  StabilityGrid grid;
  for (int j = 0; j < n_omega; ++j) grid.omegas.push_back(omega_max * (j + 1) / n_omega);
  for (int i = 0; i < n_delta1; ++i) grid.delta1.push_back(n_delta1 == 1 ? 0.0 : delta1_max * i / (n_delta1 - 1));
  grid.abs_trace.resize(n_delta1, n_omega);

  parallel_for(n_delta1, workers, [&](int i) {
    SemiclassicalParams p = base;
    p.ac_amplitude = grid.delta1[i];
    for (int j = 0; j < n_omega; ++j) {
      p.angular_frequency = grid.omegas[j];
      grid.abs_trace(i, j) = monodromy_trace(p);
    }
  });
  return grid;
}

double stability_edge(const SemiclassicalParams& base, double omega_lo, double omega_hi, double tolerance) {
  auto excess = [&](double w) {
    SemiclassicalParams p = base;
    p.angular_frequency = w;
    return monodromy_trace(p) - 2.0;
  };
  double f_lo = excess(omega_lo);
  const double f_hi = excess(omega_hi);
  if ((f_lo > 0) == (f_hi > 0)) throw std::invalid_argument("no stability change inside the bracket");
  while (omega_hi - omega_lo > tolerance) {
    const double mid = 0.5 * (omega_lo + omega_hi);
    const double f_mid = excess(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      omega_lo = mid;
      f_lo = f_mid;
    } else {
      omega_hi = mid;
    }
  }
  return 0.5 * (omega_lo + omega_hi);
}

double measured_oscillation_frequency(const SemiclassicalParams& params, double amplitude, int cycles) {
  SemiclassicalParams p = params;
  p.ac_amplitude = 0.0;
  const double omega_0 = p.small_oscillation_frequency();
  // Sample in periods of the expected oscillation so crossings are well resolved.
  p.angular_frequency = omega_0;
  const double step = p.period() / 4000.0;
  const Trajectory traj = integrate_trajectory({kTwoPi + amplitude, 0.0}, (cycles + 0.5) * p.period(), step, p);

  std::vector<double> crossings;
  for (std::size_t k = 1; k < traj.points.size(); ++k) {
    const double a = traj.points[k - 1].q - kTwoPi;
    const double b = traj.points[k].q - kTwoPi;
    if (a < 0.0 && b >= 0.0) {
      crossings.push_back(traj.times[k - 1] + (traj.times[k] - traj.times[k - 1]) * (-a) / (b - a));
    }
  }
  if (crossings.size() < 2) throw std::runtime_error("too few zero crossings to measure a frequency");
  return kTwoPi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
}

Eigen::MatrixXd potential_contours(const std::vector<double>& q_grid, const std::vector<double>& p_grid,
                                   const SemiclassicalParams& params) {
  if (q_grid.empty() || p_grid.empty()) throw std::invalid_argument("contour grids must be non-empty");
  Eigen::MatrixXd field(p_grid.size(), q_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    for (std::size_t j = 0; j < q_grid.size(); ++j) {
      field(i, j) = params.dc_amplitude * std::cos(q_grid[j]) + 2.0 * params.coupling * std::cos(p_grid[i]);
    }
  }
  return field;
}

}  // namespace junction
