#include "junction/propagator.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace junction {

namespace {

using cplx = std::complex<double>;

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensystem(const SectorHamiltonian& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.at(t));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hamiltonian eigendecomposition failed at t=" + std::to_string(t));
  }
  return solver;
}

Eigen::VectorXcd phases(const Eigen::VectorXd& energies, double dt) {
  Eigen::VectorXcd out(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) out[k] = std::polar(1.0, -energies[k] * dt);
  return out;
}

}  // namespace

double UnitaryMatrix::unitarity_defect() const {
  const Eigen::MatrixXcd defect = matrix.adjoint() * matrix - Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
  return defect.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd Propagator::step_unitary(double t, double dt) const {
  const auto solver = eigensystem(hamiltonian_, t + 0.5 * dt);
  const Eigen::MatrixXcd v = solver.eigenvectors().cast<cplx>();
  return v * phases(solver.eigenvalues(), dt).asDiagonal() * v.transpose();
}

void Propagator::step(Eigen::VectorXcd& amplitudes, double t, double dt) const {
  const auto solver = eigensystem(hamiltonian_, t + 0.5 * dt);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::VectorXcd coefficients = v.transpose().cast<cplx>() * amplitudes;
  coefficients.array() *= phases(solver.eigenvalues(), dt).array();
  amplitudes = v.cast<cplx>() * coefficients;
}

std::vector<QuantumState> Propagator::evolve_state(const QuantumState& psi0, std::span<const double> t_samples,
                                                   double max_step, double t_start) const {
  if (!(max_step > 0)) throw std::invalid_argument("time step must be positive");
  require_same_basis(hamiltonian_.basis(), psi0);

  std::vector<QuantumState> trajectory;
  trajectory.reserve(t_samples.size());
  Eigen::VectorXcd psi = psi0.amplitudes;
  double t = t_start;
  for (double target : t_samples) {
    if (target < t) throw std::invalid_argument("sample times must be ascending and not before the start time");
    const double span = target - t;
    if (span > 0) {
      const auto steps = static_cast<long>(std::ceil(span / max_step - 1e-9));
      const double dt = span / static_cast<double>(steps);
      for (long k = 0; k < steps; ++k) step(psi, t + static_cast<double>(k) * dt, dt);
    }
    t = target;
    trajectory.push_back(QuantumState{psi, psi0.basis_tag});
  }
  return trajectory;
}

UnitaryMatrix Propagator::evolution_operator(double t_from, double t_to, int steps) const {
  if (steps < 1) throw std::invalid_argument("step count must be at least 1");
  const int dim = hamiltonian_.dimension();
  const double dt = (t_to - t_from) / steps;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 0; k < steps; ++k) u = step_unitary(t_from + k * dt, dt) * u;
  return UnitaryMatrix{std::move(u)};
}

FloquetOperator floquet_operator(const SectorHamiltonian& hamiltonian, int steps_per_period, double t_origin) {
  if (steps_per_period < 1) throw std::invalid_argument("steps per period must be at least 1");
  const double period = hamiltonian.period();
  Propagator propagator(hamiltonian);
  return FloquetOperator{propagator.evolution_operator(t_origin, t_origin + period, steps_per_period), period,
                         steps_per_period};
}

ConvergenceReport convergence_probe(const SectorHamiltonian& hamiltonian, double tol, int max_steps) {
  if (!(tol > 0)) throw std::invalid_argument("convergence tolerance must be positive");

  ConvergenceReport report;
  Eigen::MatrixXcd previous = floquet_operator(hamiltonian, 1).unitary.matrix;
  int stalls = 0;
  for (int steps = 2; steps <= max_steps; steps *= 2) {
    Eigen::MatrixXcd current = floquet_operator(hamiltonian, steps).unitary.matrix;
    const double change = (current - previous).cwiseAbs().maxCoeff();
    report.step_counts.push_back(steps);
    report.changes.push_back(change);
    const std::size_t n = report.changes.size();
    if (n >= 2 && report.changes[n - 2] > 0 && change > 0) {
      report.observed_order = std::log2(report.changes[n - 2] / change);
    }
    if (change < tol) {
      // F(steps/2) already meets the tolerance against its refinement.
      report.steps_per_period = steps / 2;
      report.last_change = change;
      return report;
    }
    // Once in the asymptotic regime the change must keep shrinking; three
    // consecutive non-decreasing small changes mean roundoff dominates.
    if (n >= 2 && change < 1e-6 && change >= report.changes[n - 2]) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    previous = std::move(current);
  }
  throw NumericalError("Floquet operator did not converge to tol=" + std::to_string(tol) + " within " +
                       std::to_string(max_steps) + " steps per period");
}

}  // namespace junction
