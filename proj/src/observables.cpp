#include "junction/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace junction {

namespace {

void require_distinct_sites(const SectorBasis& basis, int i, int j) {
  if (i == j) throw std::invalid_argument("correlation needs two distinct sites");
  for (int site : {i, j}) {
    if (site < 1 || site > basis.n_sites()) throw std::out_of_range("site index " + std::to_string(site) + " outside the chain");
  }
}

}  // namespace

Eigen::VectorXd populations(const QuantumState& psi, const SectorBasis& basis) {
  require_same_basis(basis, psi);
  Eigen::VectorXd pops = Eigen::VectorXd::Zero(basis.n_sites());
  for (int k = 0; k < basis.dimension(); ++k) {
    const double weight = std::norm(psi.amplitudes[k]);
    const Occupation& v = basis.state(k);
    for (int l = 0; l < basis.n_sites(); ++l) pops[l] += weight * v[l];
  }
  return pops;
}

JointProbabilities joint_probabilities(const QuantumState& psi, const SectorBasis& basis, int i, int j) {
  require_same_basis(basis, psi);
  require_distinct_sites(basis, i, j);
  JointProbabilities p;
  for (int k = 0; k < basis.dimension(); ++k) {
    const double weight = std::norm(psi.amplitudes[k]);
    const bool one_i = basis.state(k)[i - 1] >= 1;
    const bool one_j = basis.state(k)[j - 1] >= 1;
    if (one_i) {
      (one_j ? p.p11 : p.p10) += weight;
    } else {
      (one_j ? p.p01 : p.p00) += weight;
    }
  }
  p.p1_i = p.p10 + p.p11;
  p.p0_i = p.p00 + p.p01;
  p.p1_j = p.p01 + p.p11;
  p.p0_j = p.p00 + p.p10;
  return p;
}

double czz_from_counts(const JointProbabilities& p) {
  const double total = p.p00 + p.p01 + p.p10 + p.p11;
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("joint probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  return p.p00 + p.p11 - p.p01 - p.p10 - (p.p0_i - p.p1_i) * (p.p0_j - p.p1_j);
}

double czz_expectation(const QuantumState& psi, const SectorBasis& basis, int i, int j) {
  require_same_basis(basis, psi);
  require_distinct_sites(basis, i, j);
  double zz = 0, z_i = 0, z_j = 0;
  for (int k = 0; k < basis.dimension(); ++k) {
    const double weight = std::norm(psi.amplitudes[k]);
    const double s_i = basis.state(k)[i - 1] >= 1 ? 1.0 : -1.0;
    const double s_j = basis.state(k)[j - 1] >= 1 ? 1.0 : -1.0;
    zz += weight * s_i * s_j;
    z_i += weight * s_i;
    z_j += weight * s_j;
  }
  return zz - z_i * z_j;
}

ObservableSeries measure_series(std::span<const QuantumState> trajectory, std::span<const double> times,
                                const SectorBasis& basis, const std::vector<std::pair<int, int>>& pairs) {
  if (trajectory.size() != times.size()) throw std::invalid_argument("trajectory and time list differ in length");
  ObservableSeries series;
  series.times.assign(times.begin(), times.end());
  series.populations.reserve(trajectory.size());
  for (const auto& pair : pairs) series.correlations[pair].reserve(trajectory.size());
  for (const auto& psi : trajectory) {
    series.populations.push_back(populations(psi, basis));
    for (const auto& [i, j] : pairs) series.correlations[{i, j}].push_back(czz_expectation(psi, basis, i, j));
  }
  return series;
}

std::vector<std::pair<int, int>> pairs_with(int reference, int n_sites) {
  std::vector<std::pair<int, int>> pairs;
  for (int l = 1; l <= n_sites; ++l) {
    if (l != reference) pairs.emplace_back(l, reference);
  }
  return pairs;
}

}  // namespace junction
