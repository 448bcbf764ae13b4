#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "junction/sector.hpp"

namespace junction {

/// <n_l> for l = 1..N (index l-1).
Eigen::VectorXd populations(const QuantumState& psi, const SectorBasis& basis);

/// Two-site readout probabilities. A site reads "1" when its occupation is
/// at least one, so multi-excitation sectors collapse onto qubit outcomes.
struct JointProbabilities {
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;  // first index: site i, second: site j
  double p0_i = 0, p1_i = 0, p0_j = 0, p1_j = 0;
};

JointProbabilities joint_probabilities(const QuantumState& psi, const SectorBasis& basis, int i, int j);

/// Counting estimator P00 + P11 - P01 - P10 - [P0(i) - P1(i)][P0(j) - P1(j)].
/// Throws std::invalid_argument when the joints do not sum to one (1e-9).
double czz_from_counts(const JointProbabilities& p);

/// <sz_i sz_j> - <sz_i><sz_j> with sz = 2 [v >= 1] - 1.
double czz_expectation(const QuantumState& psi, const SectorBasis& basis, int i, int j);

struct ObservableSeries {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> populations;  // one per time
  std::map<std::pair<int, int>, std::vector<double>> correlations;  // (i, j) -> C_ZZ per time
};

/// Populations at every state of the trajectory plus C_ZZ for each pair.
ObservableSeries measure_series(std::span<const QuantumState> trajectory, std::span<const double> times,
                                const SectorBasis& basis, const std::vector<std::pair<int, int>>& pairs = {});

/// Pairs (l, reference) for every l != reference.
std::vector<std::pair<int, int>> pairs_with(int reference, int n_sites);

}  // namespace junction
