#include <cmath>
#include <random>

#include "core/basis.hpp"
#include "core/constants.hpp"
#include "core/error.hpp"
#include "core/integrals.hpp"
#include "core/molecule.hpp"
#include "core/scf.hpp"
#include "doctest.h"

using namespace entcorr;

namespace {
std::string fixture(const char* name) {
  return std::string(ENTCORR_TEST_FIXTURE_DIR) + "/" + name;
}
IntegralSet h2_ints(double r_bohr, const char* basis_name) {
  const Molecule m = Molecule::h2(r_bohr);
  const BasisSet set = BasisSet::load_gaussian94_file(fixture(basis_name));
  return compute_integrals(m, OrbitalBasis::build(m, set));
}
IntegralSet he_ints(const char* basis_name) {
  const Molecule m = Molecule::helium();
  const BasisSet set = BasisSet::load_gaussian94_file(fixture(basis_name));
  return compute_integrals(m, OrbitalBasis::build(m, set));
}

// Random m x m ERI tensor with exact eightfold symmetry, plus a random
// symmetric h; used to test the MO transform against a quadruple-loop
// reference.
IntegralSet random_orthonormal_set(std::size_t m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IntegralSet ints;
  ints.overlap = Eigen::MatrixXd::Identity(m, m);
  ints.kinetic = Eigen::MatrixXd::Zero(m, m);
  ints.nuclear = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      ints.kinetic(p, q) = ints.kinetic(q, p) = u(rng);
      ints.nuclear(p, q) = ints.nuclear(q, p) = u(rng);
    }
  ints.eri = EriTensor(m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * m + q < r * m + s) continue;
          const double v = u(rng);
          ints.eri(p, q, r, s) = ints.eri(q, p, r, s) = v;
          ints.eri(p, q, s, r) = ints.eri(q, p, s, r) = v;
          ints.eri(r, s, p, q) = ints.eri(s, r, p, q) = v;
          ints.eri(r, s, q, p) = ints.eri(s, r, q, p) = v;
        }
  ints.e_nuclear = u(rng);
  return ints;
}
}  // namespace

TEST_CASE("rhf reproduces frozen reference energies") {
  const ScfResult h2 = run_rhf(h2_ints(1.4, "sto-3g.g94"), 2);
  CHECK(h2.energy == doctest::Approx(-1.1167143251).epsilon(5e-7));
  CHECK(std::abs(h2.energy - (-1.1167)) < 1e-3);

  const ScfResult he = run_rhf(he_ints("3-21g.g94"), 2);
  CHECK(he.energy == doctest::Approx(-2.8356798725).epsilon(5e-7));
  CHECK(std::abs(he.energy - (-2.8357)) < 1e-3);
}

TEST_CASE("converged rhf satisfies stationarity and idempotency") {
  const IntegralSet ints = h2_ints(1.4 * bohr_per_angstrom, "3-21g.g94");
  const ScfResult r = run_rhf(ints, 2);
  CHECK(r.commutator_norm < ScfOptions{}.commutator_tol);
  CHECK(r.restricted);

  const Eigen::MatrixXd& c = r.coeff_alpha;
  const Eigen::MatrixXd ortho = c.transpose() * ints.overlap * c -
                                Eigen::MatrixXd::Identity(c.cols(), c.cols());
  CHECK(ortho.cwiseAbs().maxCoeff() < 1e-8);

  // Density idempotency through the overlap metric: P S P = 2 P.
  const Eigen::MatrixXd p =
      2.0 * c.leftCols(r.n_alpha) * c.leftCols(r.n_alpha).transpose();
  CHECK((p * ints.overlap * p - 2.0 * p).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("uhf collapses to rhf at short bond lengths and below the mix") {
  const IntegralSet ints = h2_ints(angstrom_to_bohr(0.74), "3-21g.g94");
  const ScfResult rhf = run_rhf(ints, 2);
  const ScfResult uhf = run_uhf(ints, 2);
  CHECK(std::abs(uhf.energy - rhf.energy) < 1e-8);
  CHECK(uhf.restricted);

  ScfOptions unmixed;
  unmixed.uhf_mix_angle = 0.0;
  const ScfResult plain = run_uhf(ints, 2, unmixed);
  CHECK(std::abs(plain.energy - rhf.energy) < 1e-10);
}

TEST_CASE("uhf breaks symmetry at stretched geometries") {
  for (double r_ang : {3.0, 6.0}) {
    const IntegralSet ints = h2_ints(angstrom_to_bohr(r_ang), "3-21g.g94");
    const ScfResult rhf = run_rhf(ints, 2);
    const ScfResult uhf = run_uhf(ints, 2);
    CHECK(uhf.energy < rhf.energy - 1e-4);
    CHECK(uhf.energy <= rhf.energy + 1e-12);
    CHECK_FALSE(uhf.restricted);
  }
}

TEST_CASE("uhf dissociation limit is twice the one-atom energy") {
  const Molecule h_atom = Molecule::parse_xyz("H 0 0 0\n", LengthUnit::bohr);
  const BasisSet set = BasisSet::load_gaussian94_file(fixture("3-21g.g94"));
  const IntegralSet atom_ints =
      compute_integrals(h_atom, OrbitalBasis::build(h_atom, set));
  const ScfResult atom = run_uhf(atom_ints, 1);
  CHECK(atom.energy == doctest::Approx(-0.4961986).epsilon(2e-6));

  const ScfResult far = run_uhf(h2_ints(angstrom_to_bohr(6.0), "3-21g.g94"), 2);
  CHECK(std::abs(far.energy - 2.0 * atom.energy) < 1e-4);
}

TEST_CASE("fock matrix is diagonal in its own mo basis") {
  const IntegralSet ints = he_ints("3-21g.g94");
  const ScfResult r = run_rhf(ints, 2);
  const SpatialMoIntegrals mo = transform_to_mo(ints, r.coeff_alpha);
  // For two electrons in orbital 0: F_mo = h_mo + 2(pq|00) - (p0|0q).
  const std::size_t m = mo.m;
  Eigen::MatrixXd f(m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      f(p, q) = mo.h(p, q) + 2.0 * mo.eri(p, q, 0, 0) - mo.eri(p, 0, 0, q);
  for (std::size_t p = 0; p < m; ++p) {
    CHECK(f(p, p) == doctest::Approx(r.orbital_energies_alpha(p)).epsilon(1e-8));
    for (std::size_t q = 0; q < m; ++q)
      if (p != q) CHECK(std::abs(f(p, q)) < 1e-7);
  }
}

TEST_CASE("singular overlap raises a conditioning error") {
  // Two identical shells on one atom make S exactly singular.
  const std::string text =
      "****\nH 0\nS 1 1.00\n 1.0 1.0\nS 1 1.00\n 1.0 1.0\n****\n";
  const BasisSet set = BasisSet::parse_gaussian94(text);
  const Molecule hminus = Molecule::parse_xyz("H 0 0 0\ncharge -1\n", LengthUnit::bohr);
  const IntegralSet ints =
      compute_integrals(hminus, OrbitalBasis::build(hminus, set));
  try {
    run_rhf(ints, 2);
    FAIL("expected a conditioning error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::conditioning);
  }
}

TEST_CASE("non-convergence carries the last iterate") {
  ScfOptions strangled;
  strangled.max_iterations = 1;
  try {
    run_rhf(h2_ints(1.4, "sto-3g.g94"), 2, strangled);
    FAIL("expected non-convergence");
  } catch (const ScfNotConverged& e) {
    CHECK(e.last_iterate.iterations == 1);
    CHECK(std::isfinite(e.last_iterate.energy));
    CHECK(e.last_iterate.commutator_norm > 0.0);
  }
}

TEST_CASE("mo transform is exact against a quadruple-loop reference") {
  const std::size_t m = 3;
  const IntegralSet ints = random_orthonormal_set(m, 7u);
  // Random orthogonal C via QR.
  std::mt19937 rng(11u);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd c = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();

  const SpatialMoIntegrals mo = transform_to_mo(ints, c);
  const Eigen::MatrixXd h_ref =
      c.transpose() * ints.core_hamiltonian() * c;
  CHECK((mo.h - h_ref).cwiseAbs().maxCoeff() < 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          double want = 0.0;
          for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q)
              for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < m; ++s)
                  want += c(p, i) * c(q, j) * c(r, k) * c(s, l) *
                          ints.eri(p, q, r, s);
          worst = std::max(worst, std::abs(mo.eri(i, j, k, l) - want));
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("mo transform with identity coefficients is the identity") {
  const IntegralSet ints = random_orthonormal_set(2, 3u);
  const SpatialMoIntegrals mo =
      transform_to_mo(ints, Eigen::MatrixXd::Identity(2, 2));
  CHECK((mo.h - ints.core_hamiltonian()).cwiseAbs().maxCoeff() < 1e-14);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s)
          CHECK(mo.eri(p, q, r, s) == ints.eri(p, q, r, s));
}

TEST_CASE("mo transform rejects non-orthonormal coefficients") {
  const IntegralSet ints = he_ints("3-21g.g94");
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = 2.0;
  try {
    transform_to_mo(ints, bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find("orthonormal") != std::string::npos);
  }
}

TEST_CASE("spin-resolved transform agrees with the restricted one") {
  const IntegralSet ints = he_ints("3-21g.g94");
  const ScfResult r = run_rhf(ints, 2);
  const SpatialMoIntegrals mo = transform_to_mo(ints, r.coeff_alpha);
  const MoIntegrals spin = transform_to_spin_mo(ints, r.coeff_alpha, r.coeff_alpha);
  CHECK((spin.h_alpha - mo.h).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((spin.h_beta - mo.h).cwiseAbs().maxCoeff() < 1e-13);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t r2 = 0; r2 < 2; ++r2)
        for (std::size_t s = 0; s < 2; ++s) {
          CHECK(std::abs(spin.eri_aaaa(p, q, r2, s) - mo.eri(p, q, r2, s)) < 1e-13);
          CHECK(std::abs(spin.eri_aabb(p, q, r2, s) - mo.eri(p, q, r2, s)) < 1e-13);
          CHECK(std::abs(spin.eri_bbbb(p, q, r2, s) - mo.eri(p, q, r2, s)) < 1e-13);
        }
}
