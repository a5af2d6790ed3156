#pragma once

// Independent numerical routes used only by the test suite. Everything here
// deliberately avoids the closed-form machinery of the library under test:
// integrals are done by brute-force quadrature, the Boys function by a
// long-double series / continued fraction, eigensolves by hand-rolled cyclic
// Jacobi sweeps, and CI matrix elements by the literal first-quantized
// two-particle expansion.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "core/basis.hpp"
#include "core/ci.hpp"

namespace oracle {

// <i|j> over contracted s-functions by tensor-product Gauss-Hermite quadrature.
double overlap_quadrature(const entcorr::BasisFunction& fi,
                          const entcorr::BasisFunction& fj, int points = 96);

// -1/2 <i|del^2|j>, same grid, Laplacian applied analytically to fj.
double kinetic_quadrature(const entcorr::BasisFunction& fi,
                          const entcorr::BasisFunction& fj, int points = 96);

// -Z <i| 1/|r-C| |j> on a spherical product grid centered at the nucleus,
// where the radial measure cancels the Coulomb singularity.
double nuclear_quadrature(const entcorr::BasisFunction& fi,
                          const entcorr::BasisFunction& fj,
                          const Eigen::Vector3d& nucleus, double charge,
                          int radial = 96, int angular = 64);

// Chemists' (ij|kl): the kl charge distribution is replaced by its exact
// electrostatic potential (Gaussian charge => erf kernel) and the remaining
// three-dimensional integral is done by Gauss-Hermite quadrature.
double eri_quadrature(const entcorr::BasisFunction& fi,
                      const entcorr::BasisFunction& fj,
                      const entcorr::BasisFunction& fk,
                      const entcorr::BasisFunction& fl, int points = 72);

// Boys F0 to ~1e-14: long-double Taylor series for small arguments, Lentz
// continued fraction for the complementary error function otherwise.
double boys_f0_reference(double x);

// Ascending eigenvalues and matching eigenvector columns via cyclic Jacobi
// rotations. Independent of Eigen's solvers.
void jacobi_eigensystem(const Eigen::MatrixXd& symmetric,
                        Eigen::VectorXd& eigenvalues,
                        Eigen::MatrixXd& eigenvectors);

// Two-electron Hamiltonian over ordered determinants (p<q), built from the
// antisymmetrized first-quantized expansion instead of Slater-Condon rules:
//   <pq|H|rs> = h_pr d_qs + h_qs d_pr - h_ps d_qr - h_qr d_ps
//             + (pr|qs) - (ps|qr) + E_nuc d_IJ
Eigen::MatrixXd first_quantized_hamiltonian(const entcorr::MoIntegrals& ints,
                                            const entcorr::DeterminantSpace& space);

// Reduced density matrix computed in the full 4^m Fock space: embed the
// two-electron state, move the kept modes to the lowest qubit positions with
// a network of fermionic swap gates (swap with a phase of -1 on doubly
// occupied pairs), then take a plain qubit partial trace. Independent of the
// library's determinant-pair bookkeeping and reordering-sign logic.
Eigen::MatrixXd fock_reduced_density(const entcorr::DeterminantSpace& space,
                                     const Eigen::VectorXd& amplitudes,
                                     const std::vector<int>& kept_modes);

}  // namespace oracle
