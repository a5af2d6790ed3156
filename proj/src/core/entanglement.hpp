#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/determinants.hpp"

namespace entcorr {

// Antisymmetric pairing matrix of a two-electron state: with the state
// written sum_{a<b} A_ab a+_a a+_b |vac>, the matrix holds w_ab = A_ab / 2
// above the diagonal and -w_ab below. The inverse map reads the upper
// triangle back and enforces antisymmetry.
Eigen::MatrixXd omega_from_amplitudes(const DeterminantSpace& space,
                                      const Eigen::VectorXd& amplitudes);
Eigen::VectorXd amplitudes_from_omega(const DeterminantSpace& space,
                                      const Eigen::MatrixXd& omega);

// Reduced density matrix of the kept modes (ascending, no duplicates) after
// tracing out the rest, including the fermionic reordering signs. Row and
// column indices are occupation patterns of the kept modes: bit t set means
// kept_modes[t] occupied, so for two kept modes the diagonal runs
// (empty, first kept, second kept, both).
Eigen::MatrixXd reduced_density(const DeterminantSpace& space,
                                const Eigen::VectorXd& amplitudes,
                                const std::vector<int>& kept_modes);

// -Tr(rho log2 rho). Requires a symmetric matrix with unit trace and
// eigenvalues in [0, 1] up to numerical noise (negatives below -1e-10 are an
// error, smaller ones are clamped).
double von_neumann_entropy(const Eigen::MatrixXd& rho);

// Closed-form occupation populations of the first spatial orbital (modes 0
// and 1) straight from the pairing matrix, ordered
// (empty, mode 0 only, mode 1 only, both). For zero-spin-projection states
// the 4x4 reduced density matrix is diagonal and equals diag of this.
Eigen::Vector4d spatial_occupations_from_omega(const Eigen::MatrixXd& omega);

// Closed-form populations (empty, occupied) of the first spin mode. The full
// variant counts every determinant; the paired-doubles variant counts only
// doubly occupied spatial orbitals toward the empty slot, which reproduces
// the truncated textbook expression and undercounts whenever the state has
// weight on open-shell determinants.
Eigen::Vector2d spin_mode_occupations(const DeterminantSpace& space,
                                      const Eigen::VectorXd& amplitudes,
                                      bool paired_doubles_only = false);

}  // namespace entcorr
