#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "core/determinants.hpp"
#include "core/mo_integrals.hpp"

namespace entcorr {

// Full configuration-interaction Hamiltonian over every two-electron
// determinant, built from excitation-rank rules on occupation bitmasks.
// Symmetric by construction; includes the nuclear energy on the diagonal.
Eigen::MatrixXd build_hamiltonian(const MoIntegrals& ints,
                                  const DeterminantSpace& space);

// Normalized eigenstate used for the correlation analysis.
struct CIVector {
  double energy = 0.0;          // exact lowest eigenvalue, always
  Eigen::VectorXd amplitudes;   // analysis state in determinant order
  std::size_t reference_index = 0;
  int degenerate_dimension = 1;  // eigenstates inside the degeneracy window
  bool aligned_to_reference = false;
};

struct GroundStateOptions {
  // Eigenstates within this of the lowest eigenvalue count as degenerate.
  double degeneracy_window = 1e-5;
  // Smallest reference-projection norm that still selects the aligned state.
  double min_projection = 1e-4;
};

// Exact lowest eigenpair with a deterministic sign (largest-magnitude
// component positive). Verifies the residual before returning.
std::pair<double, Eigen::VectorXd> lowest_eigenpair(const Eigen::MatrixXd& h);

// Ground-state analysis vector. The reported energy is always the exact
// lowest eigenvalue. The amplitudes are the normalized projection of the
// reference determinant onto the (near-)degenerate lowest eigenspace, so the
// analysis follows the branch a reference-driven solver would converge to
// when several states tie; when the reference has no weight in that space
// the lowest eigenvector itself is returned.
CIVector ground_state(const Eigen::MatrixXd& h, std::size_t reference_index,
                      const GroundStateOptions& options = {});

// Matrix of the total-spin-squared operator over the determinant space.
// Valid when both spin channels share one spatial orbital set.
Eigen::MatrixXd s_squared_matrix(const DeterminantSpace& space);

}  // namespace entcorr
