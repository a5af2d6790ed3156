#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace entcorr {

// Two-site anisotropic XY exchange model in a transverse field,
//   H = -(J/2)(1+gamma) sx*sx - (J/2)(1-gamma) sy*sy - B (sz*1 + 1*sz),
// written in the product basis (uu, ud, du, dd). gamma = 1 is the Ising
// limit, gamma = 0 the isotropic XY limit.
struct SpinModelParams {
  double j = 0.0;      // exchange coupling
  double b = 0.0;      // transverse field strength
  double gamma = 1.0;  // anisotropy
};

// One eigenpair of the two-site Hamiltonian plus the single-site entropy of
// the corresponding eigenstate.
struct SpinEigenpair {
  double energy = 0.0;
  Eigen::Vector4d vector = Eigen::Vector4d::Zero();
};

// Full closed-form eigensystem, energies ascending. Ties keep the
// (uu, dd)-sector state ahead of the (ud, du)-sector one so the first entry
// is continuous in the strong-field limit.
struct SpinSpectrum {
  std::array<SpinEigenpair, 4> states;
};

// 4x4 Hamiltonian matrix in the (uu, ud, du, dd) basis:
//   [[-2B, 0, 0, -J*gamma], [0, 0, -J, 0], [0, -J, 0, 0], [-J*gamma, 0, 0, 2B]].
Eigen::Matrix4d spin_hamiltonian(const SpinModelParams& params);

// Closed-form spectrum: energies -J and +J on the (ud, du) block and -alpha,
// +alpha on the (uu, dd) block with alpha = sqrt(4 B^2 + J^2 gamma^2).
// Throws invalid_argument when every parameter vanishes (H = 0 carries no
// distinguished ground state).
SpinSpectrum analytic_spectrum(const SpinModelParams& params);

// Entanglement entropy (base-2 von Neumann entropy of either single site) of
// the ground state. Returns exactly 1 when the (ud, du) Bell state lies
// lowest and the binary entropy of (alpha + 2|B|) / (2 alpha) otherwise,
// evaluated in a cancellation-free form.
double ground_state_entropy(const SpinModelParams& params);

// Same quantity for the Ising ground state expressed through the single
// ratio lambda = J / B, via
//   S = -1/2 log2(1/4 - 1/(4 + l^2))
//       + log2((sqrt(4 + l^2) - 2) / (sqrt(4 + l^2) + 2)) / sqrt(4 + l^2),
// algebraically rearranged so both terms stay finite for small lambda.
// Valid whenever the field-aligned branch is the ground state (any lambda
// for gamma = 1 with B > 0).
double ising_entropy_from_ratio(double lambda);

// Leading asymptotic exchange coupling between two hydrogen-like spins at
// internuclear distance r (bohr): J(r) = -0.821 r^(5/2) exp(-2 r). The
// expansion drops O(r^2 exp(-2 r)) terms, so `asymptotic_valid` is false
// below r = 1 where they are not negligible. Throws for r <= 0.
struct ExchangeCoupling {
  double value = 0.0;
  bool asymptotic_valid = true;
};
ExchangeCoupling exchange_coupling(double r_bohr);

// One row of a distance sweep at fixed field.
struct SpinSweepRow {
  double r_bohr = 0.0;
  double b = 0.0;
  double entropy = 0.0;
};

// Ground-state entanglement versus distance for each field value, using
// exchange_coupling(r) for J. Rows are grouped by field in the order given,
// distances ascending within each group.
std::vector<SpinSweepRow> sweep_entanglement(const std::vector<double>& r_bohr,
                                             const std::vector<double>& b_values,
                                             double gamma = 1.0);

}  // namespace entcorr
