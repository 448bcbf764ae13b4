#pragma once

#include <Eigen/Dense>

#include "junction/model.hpp"
#include "junction/sector.hpp"

namespace junction {

struct HamiltonianSnapshot {
  Eigen::MatrixXcd matrix;
  double time = 0.0;
};

/// Nearest-neighbour bosonic hopping restricted to bonds [first_bond, last_bond]
/// (bond l couples sites l and l+1).
Eigen::MatrixXd hopping_matrix(const ChainSpec& chain, const SectorBasis& basis, int first_bond, int last_bond);
Eigen::MatrixXd hopping_matrix(const ChainSpec& chain, const SectorBasis& basis);

/// Diagonal sum over `sites` of g_l(t) v_l + (U/2) v_l (v_l - 1).
Eigen::VectorXd diagonal_at(double t, const ChainSpec& chain, const DriveSpec& drive, const PotentialSpec& potential,
                            const SectorBasis& basis, SiteRange sites);
Eigen::VectorXd diagonal_at(double t, const ChainSpec& chain, const DriveSpec& drive, const PotentialSpec& potential,
                            const SectorBasis& basis);

HamiltonianSnapshot hamiltonian_at(double t, const Model& model, const SectorBasis& basis);

/// The junction split H = H_erg(t) + H_loc + H_int for a boundary between
/// sites `boundary` and `boundary + 1`.
struct JunctionPieces {
  Eigen::MatrixXd ergodic;
  Eigen::MatrixXd localized;
  Eigen::MatrixXd interface;
};
JunctionPieces junction_pieces(double t, const Model& model, const SectorBasis& basis, int boundary);

/// H(t) = H_static + f(t) D_ac with f(t) = Delta_1 cos(omega (t - t_0) + phi).
/// Precomputed once per model; the propagator evaluates it every step.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const Model& model, const SectorBasis& basis);

  int dimension() const { return static_cast<int>(static_part_.rows()); }
  double period() const { return drive_.period(); }
  bool is_static() const { return drive_.ac_amplitude == 0.0 || ac_diagonal_.isZero(0.0); }
  const SectorBasis& basis() const { return basis_; }

  /// Real symmetric H(t); every term of the model is real in the occupation basis.
  Eigen::MatrixXd at(double t) const;

 private:
  SectorBasis basis_;
  DriveSpec drive_;
  Eigen::MatrixXd static_part_;
  Eigen::VectorXd ac_diagonal_;
};

}  // namespace junction
