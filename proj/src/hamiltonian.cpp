#include "junction/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace junction {

namespace {

void require_matching_sites(const ChainSpec& chain, const SectorBasis& basis) {
  if (chain.n_sites != basis.n_sites()) throw std::invalid_argument("chain and sector disagree on the site count");
}

}  // namespace

Eigen::MatrixXd hopping_matrix(const ChainSpec& chain, const SectorBasis& basis, int first_bond, int last_bond) {
  require_matching_sites(chain, basis);
  const int dim = basis.dimension();
  const int cutoff = basis.boson_cutoff();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  first_bond = std::max(first_bond, 1);
  last_bond = std::min(last_bond, chain.n_sites - 1);

  Occupation moved;
  for (int i = 0; i < dim; ++i) {
    const Occupation& v = basis.state(i);
    for (int bond = first_bond; bond <= last_bond; ++bond) {
      const int left = bond - 1;
      const int right = bond;
      // a_l a^dag_{l+1}: one boson hops left -> right; the h.c. term fills the transpose.
      if (v[left] == 0 || v[right] >= cutoff) continue;
      moved = v;
      --moved[left];
      ++moved[right];
      const int j = basis.index_of(moved);
      const double element = chain.bond_couplings[bond - 1] * std::sqrt(double(v[left]) * (v[right] + 1));
      h(j, i) += element;
      h(i, j) += element;
    }
  }
  return h;
}

Eigen::MatrixXd hopping_matrix(const ChainSpec& chain, const SectorBasis& basis) {
  return hopping_matrix(chain, basis, 1, chain.n_sites - 1);
}

Eigen::VectorXd diagonal_at(double t, const ChainSpec& chain, const DriveSpec& drive, const PotentialSpec& potential,
                            const SectorBasis& basis, SiteRange sites) {
  require_matching_sites(chain, basis);
  const double half_u = 0.5 * chain.onsite_nonlinearity;
  std::vector<double> g(chain.n_sites);
  for (int l = 1; l <= chain.n_sites; ++l) g[l - 1] = frequency_at(l, t, drive, potential);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) {
    const Occupation& v = basis.state(i);
    double e = 0;
    for (int l = std::max(sites.first, 1); l <= std::min(sites.last, chain.n_sites); ++l) {
      const int occ = v[l - 1];
      e += g[l - 1] * occ + half_u * occ * (occ - 1);
    }
    diag[i] = e;
  }
  return diag;
}

Eigen::VectorXd diagonal_at(double t, const ChainSpec& chain, const DriveSpec& drive, const PotentialSpec& potential,
                            const SectorBasis& basis) {
  return diagonal_at(t, chain, drive, potential, basis, SiteRange{1, chain.n_sites});
}

HamiltonianSnapshot hamiltonian_at(double t, const Model& model, const SectorBasis& basis) {
  Eigen::MatrixXd h = hopping_matrix(model.chain, basis);
  h.diagonal() += diagonal_at(t, model.chain, model.drive, model.potential, basis);
  return HamiltonianSnapshot{h.cast<std::complex<double>>(), t};
}

JunctionPieces junction_pieces(double t, const Model& model, const SectorBasis& basis, int boundary) {
  const int n = model.chain.n_sites;
  if (boundary < 1 || boundary >= n) throw std::invalid_argument("junction boundary must lie inside the chain");
  JunctionPieces pieces;
  pieces.ergodic = hopping_matrix(model.chain, basis, 1, boundary - 1);
  pieces.ergodic.diagonal() += diagonal_at(t, model.chain, model.drive, model.potential, basis, {1, boundary});
  pieces.localized = hopping_matrix(model.chain, basis, boundary + 1, n - 1);
  pieces.localized.diagonal() += diagonal_at(t, model.chain, model.drive, model.potential, basis, {boundary + 1, n});
  pieces.interface = hopping_matrix(model.chain, basis, boundary, boundary);
  return pieces;
}

SectorHamiltonian::SectorHamiltonian(const Model& model, const SectorBasis& basis)
    : basis_(basis), drive_(model.drive) {
  model.chain.validate();
  model.drive.validate(model.chain.n_sites);
  if (static_cast<int>(model.potential.static_offsets.size()) != model.chain.n_sites) {
    throw std::invalid_argument("potential needs one offset per site");
  }
  require_matching_sites(model.chain, basis);

  static_part_ = hopping_matrix(model.chain, basis);
  DriveSpec undriven = model.drive;
  undriven.ac_amplitude = 0.0;
  static_part_.diagonal() += diagonal_at(0.0, model.chain, undriven, model.potential, basis);

  ac_diagonal_ = Eigen::VectorXd::Zero(basis.dimension());
  for (int l = model.drive.driven_sites.first; l <= model.drive.driven_sites.last; ++l) {
    ac_diagonal_ += model.drive.spatial_profile[l - 1] * basis.site_occupations(l);
  }
}

Eigen::MatrixXd SectorHamiltonian::at(double t) const {
  Eigen::MatrixXd h = static_part_;
  h.diagonal() += drive_.ac_factor(t) * ac_diagonal_;
  return h;
}

}  // namespace junction
