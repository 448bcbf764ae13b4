#include "junction/sector.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace junction {

namespace {

// Emits every occupation of sites [site, N) holding `remaining` excitations,
// largest occupation first, which yields lexicographically descending order.
void enumerate(int site, int remaining, int cutoff, Occupation& current, std::vector<Occupation>& out) {
  const int n_sites = static_cast<int>(current.size());
  if (site == n_sites - 1) {
    if (remaining <= cutoff) {
      current[site] = remaining;
      out.push_back(current);
    }
    return;
  }
  const int capacity_after = (n_sites - site - 1) * cutoff;
  for (int k = std::min(cutoff, remaining); k >= 0; --k) {
    if (remaining - k > capacity_after) break;
    current[site] = k;
    enumerate(site + 1, remaining - k, cutoff, current, out);
  }
  current[site] = 0;
}

}  // namespace

SectorBasis::SectorBasis(int n_sites, int total_excitations, int boson_cutoff)
    : n_sites_(n_sites), total_excitations_(total_excitations), boson_cutoff_(boson_cutoff) {
  if (n_sites < 1) throw std::invalid_argument("sector needs at least one site");
  if (boson_cutoff < 1) throw std::invalid_argument("boson cutoff must be at least 1");
  if (total_excitations < 0 || total_excitations > n_sites * boson_cutoff) {
    throw std::invalid_argument("excitation number " + std::to_string(total_excitations) + " outside 0.." +
                                std::to_string(n_sites * boson_cutoff));
  }
  Occupation current(n_sites, 0);
  enumerate(0, total_excitations, boson_cutoff, current, states_);
  for (int i = 0; i < dimension(); ++i) index_map_.emplace(states_[i], i);

  tag_ = (static_cast<std::uint64_t>(n_sites) << 40) ^ (static_cast<std::uint64_t>(total_excitations) << 20) ^
         static_cast<std::uint64_t>(boson_cutoff);
}

int SectorBasis::index_of(const Occupation& occupation) const {
  auto it = index_map_.find(occupation);
  if (it == index_map_.end()) {
    if (static_cast<int>(occupation.size()) != n_sites_) {
      throw std::invalid_argument("occupation has " + std::to_string(occupation.size()) + " sites, sector has " +
                                  std::to_string(n_sites_));
    }
    const int total = std::accumulate(occupation.begin(), occupation.end(), 0);
    throw std::invalid_argument("occupation (total " + std::to_string(total) + ") is not in the n=" +
                                std::to_string(total_excitations_) + ", n_max=" + std::to_string(boson_cutoff_) +
                                " sector");
  }
  return it->second;
}

Eigen::VectorXd SectorBasis::site_occupations(int site) const {
  if (site < 1 || site > n_sites_) throw std::out_of_range("site index " + std::to_string(site) + " outside the chain");
  Eigen::VectorXd occ(dimension());
  for (int i = 0; i < dimension(); ++i) occ[i] = states_[i][site - 1];
  return occ;
}

QuantumState occupation_state(const SectorBasis& basis, const Occupation& occupation) {
  QuantumState state{Eigen::VectorXcd::Zero(basis.dimension()), basis.tag()};
  state.amplitudes[basis.index_of(occupation)] = 1.0;
  return state;
}

QuantumState fock_state(const SectorBasis& basis, int site) {
  if (basis.total_excitations() != 1) {
    throw std::invalid_argument("fock_state needs the single-excitation sector, got n=" +
                                std::to_string(basis.total_excitations()));
  }
  if (site < 1 || site > basis.n_sites()) throw std::out_of_range("site index " + std::to_string(site) + " outside the chain");
  Occupation occupation(basis.n_sites(), 0);
  occupation[site - 1] = 1;
  return occupation_state(basis, occupation);
}

void require_same_basis(const SectorBasis& basis, const QuantumState& state) {
  if (state.basis_tag != basis.tag() || state.amplitudes.size() != basis.dimension()) {
    throw std::invalid_argument("state does not belong to this sector basis");
  }
}

}  // namespace junction
