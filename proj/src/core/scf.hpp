#pragma once

#include <Eigen/Dense>
#include <numbers>

#include "core/integrals.hpp"
#include "core/mo_integrals.hpp"

namespace entcorr {

struct ScfOptions {
  int max_iterations = 200;
  // Converged when both the orbital-gradient surrogate |FPS-SPF| and the
  // energy step fall below these. The gradient default leaves the energy
  // determined far beyond the tolerances quoted elsewhere while staying
  // reachable at marginally stable unrestricted solutions, whose gradients
  // flatten out near the symmetry-breaking onset.
  double commutator_tol = 1e-8;
  double energy_tol = 1e-12;
  int diis_size = 6;
  double damping = 0.5;  // fallback mixing when DIIS is unusable
  // Breaks spin symmetry in the UHF guess by rotating the RHF HOMO/LUMO
  // pair in opposite directions for the two spins.
  double uhf_mix_angle = std::numbers::pi / 8.0;
  bool verbose = false;
  // Optional warm-start orbitals (empty = unset). run_rhf seeds its density
  // from guess_alpha instead of the core Hamiltonian; run_uhf uses the pair
  // directly in place of the mixed restricted guess when both are set. Seeds
  // from a nearby geometry need not be orthonormal in this overlap metric.
  Eigen::MatrixXd guess_alpha, guess_beta;
};

struct ScfResult {
  double energy = 0.0;
  Eigen::MatrixXd coeff_alpha, coeff_beta;   // columns are MOs
  Eigen::VectorXd orbital_energies_alpha, orbital_energies_beta;
  int n_alpha = 0, n_beta = 0;
  int iterations = 0;
  double commutator_norm = 0.0;
  bool restricted = false;  // true when both spins share one spatial set
};

// Thrown after max_iterations; carries the last iterate so callers can
// inspect how far the solver got.
class ScfNotConverged : public Error {
 public:
  ScfNotConverged(const std::string& message, ScfResult last)
      : Error(ErrorCode::not_converged, message), last_iterate(std::move(last)) {}
  ScfResult last_iterate;
};

// S^(-1/2) by symmetric orthogonalization; eigenvalues below the cutoff
// mean a (numerically) linearly dependent basis and raise a conditioning
// error rather than silently dropping vectors.
Eigen::MatrixXd symmetric_orthogonalizer(const Eigen::MatrixXd& overlap,
                                         double cutoff = 1e-10);

ScfResult run_rhf(const IntegralSet& ints, int n_electrons,
                  const ScfOptions& options = {});
ScfResult run_uhf(const IntegralSet& ints, int n_electrons,
                  const ScfOptions& options = {});

// AO -> MO transform for one orthonormal coefficient set. The coefficients
// must satisfy C^T S C = 1 within 1e-8.
SpatialMoIntegrals transform_to_mo(const IntegralSet& ints,
                                   const Eigen::MatrixXd& coeff);

// O(m^5) four-index transform; the bra pair of (pq|rs) goes through `bra`
// and the ket pair through `ket`.
EriTensor transform_eri(const EriTensor& eri, const Eigen::MatrixXd& bra,
                        const Eigen::MatrixXd& ket);

// Spin-resolved transform for (possibly) different alpha and beta sets.
MoIntegrals transform_to_spin_mo(const IntegralSet& ints,
                                 const Eigen::MatrixXd& coeff_alpha,
                                 const Eigen::MatrixXd& coeff_beta);

}  // namespace entcorr
