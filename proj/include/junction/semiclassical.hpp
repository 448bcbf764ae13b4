#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace junction {

/// Classical companion of the driven ergodic domain in scaled coordinates
/// Q = 2 pi q / L, P = b p (b = 1, hbar = 1). Frequencies are angular, rad/ns.
struct SemiclassicalParams {
  int n_sites = 12;
  double dc_amplitude = 0.0;       // Delta_0
  double ac_amplitude = 0.0;       // Delta_1
  double angular_frequency = 1.0;  // omega
  double coupling = 0.0;           // J

  double lattice_constant() const { return 1.0; }
  double chain_length() const { return 0.5 * n_sites; }
  double effective_hbar() const;
  double period() const;
  /// Omega = (4 pi / N) sqrt(2 Delta_0 J)
  double small_oscillation_frequency() const;

  void validate() const;
};

/// The single bridge from ordinary-frequency inputs (MHz) to the classical model.
SemiclassicalParams semiclassical_from_mhz(int n_sites, double dc_mhz, double ac_mhz, double drive_mhz,
                                           double coupling_mhz);

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// (dQ/dt, dP/dt) with
///   dQ/dt = -(8 pi J / N) sin P,
///   dP/dt =  (4 pi / N) [Delta_0 + Delta_1 cos(omega t)] sin Q.
PhasePoint classical_rhs(PhasePoint x, double t, const SemiclassicalParams& params);

/// [Delta_0 + Delta_1 cos(omega t)] cos Q + 2 J cos P. The flow above is
/// generated by (4 pi / N) times this function.
double classical_energy(PhasePoint x, double t, const SemiclassicalParams& params);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;         // Q unwrapped
  std::vector<std::size_t> stroboscopic;  // indices with t = k T

  /// Q reduced to [0, 2 pi).
  std::vector<PhasePoint> wrapped() const;
};

/// Fixed-step RK4 from t = 0. The step is shrunk so that an integer number of
/// steps fills both `duration` and every drive period.
Trajectory integrate_trajectory(PhasePoint start, double duration, double step, const SemiclassicalParams& params);

/// One-period monodromy of the linearization about (2 pi, 0):
///   d(dQ)/dt = -(8 pi J / N) dP,  d(dP)/dt = (4 pi / N)(Delta_0 + Delta_1 cos omega t) dQ.
/// Fourth-order Magnus steps with exact 2x2 exponentials keep det M = 1.
Eigen::Matrix2d monodromy_matrix(const SemiclassicalParams& params, int steps = 0);
double monodromy_trace(const SemiclassicalParams& params, int steps = 0);

/// Default step count: about 0.02 rad of fastest local phase per step.
int default_monodromy_steps(const SemiclassicalParams& params);

/// Margin on |tr M| <= 2 that absorbs roundoff at the tongue tips, where
/// |tr M| = 2 exactly for Delta_1 = 0.
inline constexpr double kStabilityMargin = 1e-9;

inline bool is_stable_trace(double abs_trace) { return abs_trace <= 2.0 + kStabilityMargin; }

struct StabilityGrid {
  std::vector<double> omegas;  // rad/ns
  std::vector<double> delta1;  // rad/ns
  Eigen::MatrixXd abs_trace;   // rows: delta1 index, cols: omega index

  bool stable(int i_delta1, int j_omega) const { return is_stable_trace(abs_trace(i_delta1, j_omega)); }
};

/// omega_j = omega_max (j + 1) / n_omega for j = 0..n_omega-1 and
/// Delta_1,i = delta1_max i / (n_delta1 - 1). Nodes of a grid are shared with
/// any refinement by an integer factor.
StabilityGrid stability_grid(const SemiclassicalParams& base, double omega_max, int n_omega, double delta1_max,
                             int n_delta1, int workers = 1);

/// Drive frequency where |tr M| crosses 2 between omega_lo and omega_hi at the
/// base amplitude, by bisection. Requires a sign change of |tr M| - 2.
double stability_edge(const SemiclassicalParams& base, double omega_lo, double omega_hi, double tolerance = 1e-9);

/// Small-oscillation angular frequency from zero crossings of dQ on a
/// trajectory started at (2 pi + amplitude, 0) with the drive off.
double measured_oscillation_frequency(const SemiclassicalParams& params, double amplitude = 1e-4, int cycles = 20);

/// Delta_0 cos Q + 2 J cos P on the tensor grid; rows follow p_grid, columns q_grid.
Eigen::MatrixXd potential_contours(const std::vector<double>& q_grid, const std::vector<double>& p_grid,
                                   const SemiclassicalParams& params);

}  // namespace junction
