#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "junction/hamiltonian.hpp"
#include "junction/sector.hpp"

namespace junction {

/// Raised when a numerical contract (unitarity, convergence) is violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UnitaryMatrix {
  Eigen::MatrixXcd matrix;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  /// max |U^dag U - I|
  double unitarity_defect() const;
};

struct FloquetOperator {
  UnitaryMatrix unitary;
  double period = 0.0;  // ns
  int step_count = 0;
};

/// Exponential-midpoint integrator: psi <- exp(-i H(t + dt/2) dt) psi, one
/// Hermitian eigendecomposition per step.
class Propagator {
 public:
  explicit Propagator(SectorHamiltonian hamiltonian) : hamiltonian_(std::move(hamiltonian)) {}

  const SectorHamiltonian& hamiltonian() const { return hamiltonian_; }

  /// exp(-i H(t + dt/2) dt)
  Eigen::MatrixXcd step_unitary(double t, double dt) const;

  /// Applies one midpoint step to `amplitudes` in place.
  void step(Eigen::VectorXcd& amplitudes, double t, double dt) const;

  /// States at each sample time. `psi0` is the state at `t_start`; every
  /// interval between consecutive samples is split into the smallest number of
  /// equal steps not longer than `max_step`, so samples land exactly.
  std::vector<QuantumState> evolve_state(const QuantumState& psi0, std::span<const double> t_samples, double max_step,
                                         double t_start = 0.0) const;

  /// Product of `steps` equal midpoint steps from t_from to t_to.
  UnitaryMatrix evolution_operator(double t_from, double t_to, int steps) const;

 private:
  SectorHamiltonian hamiltonian_;
};

/// One-period propagator U(t_0 + T, t_0) built from `steps_per_period` steps.
FloquetOperator floquet_operator(const SectorHamiltonian& hamiltonian, int steps_per_period, double t_origin = 0.0);

struct ConvergenceReport {
  int steps_per_period = 0;  // smallest power of two meeting the tolerance
  double last_change = 0.0;  // max |F(k) - F(k/2)| at the accepted k
  double observed_order = 0.0;  // log2 of the last change ratio; ~2 for the midpoint scheme
  std::vector<int> step_counts;
  std::vector<double> changes;  // changes[i] = max |F(step_counts[i]) - F(step_counts[i] / 2)|
};

/// Doubles the step count from 1 until halving the step changes F by < tol.
/// Throws std::invalid_argument for tol <= 0 and NumericalError when the
/// change stalls above tol (roundoff floor) or exceeds `max_steps`.
ConvergenceReport convergence_probe(const SectorHamiltonian& hamiltonian, double tol, int max_steps = 1 << 16);

}  // namespace junction
