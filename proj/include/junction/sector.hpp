#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace junction {

using Occupation = std::vector<int>;

/// Fixed-excitation-number occupation basis. States are ordered
/// lexicographically descending, so |n,0,...,0> comes first.
class SectorBasis {
 public:
  /// Throws std::invalid_argument unless 0 <= n <= N * n_max.
  SectorBasis(int n_sites, int total_excitations, int boson_cutoff);

  int n_sites() const { return n_sites_; }
  int total_excitations() const { return total_excitations_; }
  int boson_cutoff() const { return boson_cutoff_; }
  int dimension() const { return static_cast<int>(states_.size()); }

  const std::vector<Occupation>& states() const { return states_; }
  const Occupation& state(int index) const { return states_.at(index); }

  /// Dense index of an occupation vector; throws std::invalid_argument when it
  /// does not belong to this sector.
  int index_of(const Occupation& occupation) const;

  /// Occupation of site l (1-based) in every basis state.
  Eigen::VectorXd site_occupations(int site) const;

  /// Identifies (N, n, n_max); states carry it to catch basis mix-ups.
  std::uint64_t tag() const { return tag_; }

 private:
  int n_sites_;
  int total_excitations_;
  int boson_cutoff_;
  std::vector<Occupation> states_;
  std::map<Occupation, int> index_map_;
  std::uint64_t tag_;
};

struct QuantumState {
  Eigen::VectorXcd amplitudes;
  std::uint64_t basis_tag = 0;

  double norm() const { return amplitudes.norm(); }
};

/// Single excitation on `site` (1-based). Requires an n = 1 sector.
QuantumState fock_state(const SectorBasis& basis, int site);

/// Basis vector for an arbitrary occupation of the sector.
QuantumState occupation_state(const SectorBasis& basis, const Occupation& occupation);

void require_same_basis(const SectorBasis& basis, const QuantumState& state);

}  // namespace junction
