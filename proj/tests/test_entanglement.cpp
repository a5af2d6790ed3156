#include <cmath>
#include <random>
#include <vector>

#include "core/basis.hpp"
#include "core/ci.hpp"
#include "core/determinants.hpp"
#include "core/entanglement.hpp"
#include "core/error.hpp"
#include "core/integrals.hpp"
#include "core/molecule.hpp"
#include "core/scf.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace entcorr;

namespace {
std::string fixture(const char* name) {
  return std::string(ENTCORR_TEST_FIXTURE_DIR) + "/" + name;
}

Eigen::VectorXd random_state(const DeterminantSpace& space, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd a(space.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = g(rng);
  a.normalize();
  return a;
}

// Random state restricted to zero spin projection (one even mode, one odd).
Eigen::VectorXd random_sz0_state(const DeterminantSpace& space, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [p, q] = space.modes(i);
    if ((p & 1) != (q & 1)) a(static_cast<Eigen::Index>(i)) = g(rng);
  }
  a.normalize();
  return a;
}

// Random state supported on doubly occupied spatial orbitals only.
Eigen::VectorXd random_paired_state(const DeterminantSpace& space, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(space.size());
  for (std::size_t k = 0; k < space.m(); ++k)
    a(static_cast<Eigen::Index>(space.index_of(2 * k, 2 * k + 1))) = g(rng);
  a.normalize();
  return a;
}

Eigen::VectorXd basis_state(const DeterminantSpace& space, int lo, int hi) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(space.size());
  a(static_cast<Eigen::Index>(space.index_of(lo, hi))) = 1.0;
  return a;
}
}  // namespace

TEST_CASE("reduced density matches the fock-space swap-network oracle") {
  const std::vector<std::vector<int>> kept_sets2 = {
      {0}, {1}, {3}, {0, 1}, {1, 2}, {0, 3}, {1, 3}, {2, 3}, {0, 1, 2}};
  const DeterminantSpace s2 = DeterminantSpace::enumerate(2);
  for (unsigned seed : {1u, 2u, 3u}) {
    const Eigen::VectorXd a = random_state(s2, seed);
    for (const auto& kept : kept_sets2) {
      const Eigen::MatrixXd got = reduced_density(s2, a, kept);
      const Eigen::MatrixXd want = oracle::fock_reduced_density(s2, a, kept);
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(got.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  const DeterminantSpace s3 = DeterminantSpace::enumerate(3);
  const std::vector<std::vector<int>> kept_sets3 = {
      {0, 1}, {2, 5}, {1, 4}, {0}, {1, 2, 4}};
  for (const auto& kept : kept_sets3) {
    const Eigen::VectorXd a = random_state(s3, 7u);
    const Eigen::MatrixXd got = reduced_density(s3, a, kept);
    const Eigen::MatrixXd want = oracle::fock_reduced_density(s3, a, kept);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("complementary subsystems of a pure state have equal entropy") {
  const DeterminantSpace space = DeterminantSpace::enumerate(2);
  const Eigen::VectorXd a = random_state(space, 11u);
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> splits = {
      {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{1}, {0, 2, 3}}, {{3}, {0, 1, 2}}};
  for (const auto& [left, right] : splits) {
    const double sl = von_neumann_entropy(reduced_density(space, a, left));
    const double sr = von_neumann_entropy(reduced_density(space, a, right));
    CHECK(sl == doctest::Approx(sr).epsilon(1e-10));
  }
}

TEST_CASE("named states pin the occupation slot ordering") {
  const DeterminantSpace space = DeterminantSpace::enumerate(2);
  const std::vector<int> first_orbital = {0, 1};

  // Half reference determinant, half doubly excited: populations land on the
  // (empty) and (both) slots only.
  Eigen::VectorXd cat = Eigen::VectorXd::Zero(space.size());
  cat(static_cast<Eigen::Index>(space.index_of(0, 1))) = 1.0 / std::sqrt(2.0);
  cat(static_cast<Eigen::Index>(space.index_of(2, 3))) = 1.0 / std::sqrt(2.0);
  const Eigen::MatrixXd rho = reduced_density(space, cat, first_orbital);
  CHECK(rho(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(rho(3, 3) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::abs(rho(1, 1)) < 1e-13);
  CHECK(std::abs(rho(2, 2)) < 1e-13);
  CHECK(std::abs(rho(0, 3)) < 1e-13);  // superselected: no coherence
  CHECK(von_neumann_entropy(rho) == doctest::Approx(1.0).epsilon(1e-12));

  // A single determinant is unentangled whichever slot it fills.
  const Eigen::MatrixXd ref =
      reduced_density(space, basis_state(space, 0, 1), first_orbital);
  CHECK(ref(3, 3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(von_neumann_entropy(ref) == doctest::Approx(0.0).epsilon(1e-12));

  const Eigen::MatrixXd only0 =
      reduced_density(space, basis_state(space, 0, 2), first_orbital);
  CHECK(only0(1, 1) == doctest::Approx(1.0).epsilon(1e-13));

  const Eigen::MatrixXd only1 =
      reduced_density(space, basis_state(space, 1, 2), first_orbital);
  CHECK(only1(2, 2) == doctest::Approx(1.0).epsilon(1e-13));

  const Eigen::MatrixXd mode0 =
      reduced_density(space, basis_state(space, 0, 1), {0});
  CHECK(mode0(0, 0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(mode0(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("pairing matrix round trip") {
  const DeterminantSpace space = DeterminantSpace::enumerate(3);
  const Eigen::VectorXd a = random_state(space, 17u);
  const Eigen::MatrixXd omega = omega_from_amplitudes(space, a);
  CHECK((omega + omega.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  const Eigen::VectorXd back = amplitudes_from_omega(space, omega);
  CHECK((back - a).cwiseAbs().maxCoeff() < 1e-14);

  // The bare reference determinant has a single pairing entry of one half.
  const Eigen::MatrixXd ref =
      omega_from_amplitudes(space, basis_state(space, 0, 1));
  CHECK(ref(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ref(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(ref.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd bad = ref;
  bad(1, 0) = 0.25;
  CHECK_THROWS_AS((void)amplitudes_from_omega(space, bad), Error);
}

TEST_CASE("closed-form occupations agree with the generic trace") {
  const DeterminantSpace space = DeterminantSpace::enumerate(3);
  for (unsigned seed : {3u, 4u, 5u}) {
    const Eigen::VectorXd a = random_sz0_state(space, seed);
    const Eigen::MatrixXd rho = reduced_density(space, a, {0, 1});
    const Eigen::Vector4d closed =
        spatial_occupations_from_omega(omega_from_amplitudes(space, a));
    for (int t = 0; t < 4; ++t)
      CHECK(closed(t) == doctest::Approx(rho(t, t)).epsilon(1e-12));
    // Zero-spin-projection states cannot carry single-mode coherences here.
    CHECK(std::abs(rho(1, 2)) < 1e-13);

    const Eigen::Vector2d full = spin_mode_occupations(space, a);
    const Eigen::MatrixXd rho2 = reduced_density(space, a, {0});
    CHECK(full(0) == doctest::Approx(rho2(0, 0)).epsilon(1e-12));
    CHECK(full(1) == doctest::Approx(rho2(1, 1)).epsilon(1e-12));
  }

  // On doubly-occupied-only states the truncated empty-slot count is exact;
  // elsewhere it undershoots by the open-shell weight without mode 0.
  const Eigen::VectorXd paired = random_paired_state(space, 6u);
  const Eigen::Vector2d full = spin_mode_occupations(space, paired);
  const Eigen::Vector2d trunc = spin_mode_occupations(space, paired, true);
  CHECK((full - trunc).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::VectorXd spread = random_state(space, 8u);
  const Eigen::Vector2d full2 = spin_mode_occupations(space, spread);
  const Eigen::Vector2d trunc2 = spin_mode_occupations(space, spread, true);
  CHECK(trunc2(0) < full2(0) - 1e-3);
  CHECK(trunc2(1) == doctest::Approx(full2(1)).epsilon(1e-14));

  double open_weight_without_mode0 = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [p, q] = space.modes(i);
    const bool paired_det = (p % 2 == 0) && (q == p + 1);
    if (p != 0 && !paired_det)
      open_weight_without_mode0 += spread(static_cast<Eigen::Index>(i)) *
                                   spread(static_cast<Eigen::Index>(i));
  }
  CHECK(full2(0) - trunc2(0) ==
        doctest::Approx(open_weight_without_mode0).epsilon(1e-12));
}

TEST_CASE("entropy values and error paths") {
  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(2, 2);
  two.diagonal() << 0.8535533905932737, 0.1464466094067263;
  CHECK(von_neumann_entropy(two) == doctest::Approx(0.6008760367).epsilon(1e-9));

  CHECK(von_neumann_entropy(Eigen::MatrixXd::Identity(4, 4) / 4.0) ==
        doctest::Approx(2.0).epsilon(1e-13));

  Eigen::MatrixXd clamped = Eigen::MatrixXd::Zero(2, 2);
  clamped.diagonal() << 1.0, -1e-13;
  CHECK(von_neumann_entropy(clamped) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd negative = Eigen::MatrixXd::Zero(2, 2);
  negative.diagonal() << 1.2, -0.2;
  CHECK_THROWS_AS((void)von_neumann_entropy(negative), Error);

  Eigen::MatrixXd off_trace = Eigen::MatrixXd::Zero(2, 2);
  off_trace.diagonal() << 0.4, 0.4;
  CHECK_THROWS_AS((void)von_neumann_entropy(off_trace), Error);

  CHECK_THROWS_AS((void)von_neumann_entropy(Eigen::MatrixXd::Ones(2, 3)), Error);
}

TEST_CASE("entropies agree with the rotation-based eigensolver route") {
  std::mt19937 rng(23u);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = g(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  Eigen::Vector4d p(0.4, 0.3, 0.2, 0.1);
  const Eigen::MatrixXd rho = q * p.asDiagonal() * q.transpose();

  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  oracle::jacobi_eigensystem(rho, evals, evecs);
  double want = 0.0;
  for (int i = 0; i < 4; ++i)
    if (evals(i) > 1e-14) want -= evals(i) * std::log2(evals(i));
  CHECK(von_neumann_entropy(rho) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("frozen helium entanglement entropies") {
  const Molecule mol = Molecule::helium();
  const BasisSet set = BasisSet::load_gaussian94_file(fixture("3-21g.g94"));
  const IntegralSet ao = compute_integrals(mol, OrbitalBasis::build(mol, set));
  const ScfResult scf = run_rhf(ao, 2);
  const DeterminantSpace space = DeterminantSpace::enumerate(ao.size());
  const Eigen::MatrixXd h = build_hamiltonian(
      MoIntegrals::restricted(transform_to_mo(ao, scf.coeff_alpha)), space);
  const CIVector state = ground_state(h, space.reference_index());

  const double s_spatial =
      von_neumann_entropy(reduced_density(space, state.amplitudes, {0, 1}));
  const double s_mode =
      von_neumann_entropy(reduced_density(space, state.amplitudes, {0}));
  CHECK(s_spatial == doctest::Approx(0.031330).epsilon(2e-3));
  CHECK(s_mode == doctest::Approx(0.031319).epsilon(2e-3));
  CHECK(s_spatial > s_mode);  // the orbital sees strictly more correlation
}

TEST_CASE("entropies are invariant under rotations of the empty orbitals") {
  const Molecule mol = Molecule::h2(2.0);
  const BasisSet set = BasisSet::load_gaussian94_file(fixture("3-21g.g94"));
  const IntegralSet ao = compute_integrals(mol, OrbitalBasis::build(mol, set));
  const ScfResult scf = run_rhf(ao, 2);
  const DeterminantSpace space = DeterminantSpace::enumerate(ao.size());

  auto analyze = [&](const Eigen::MatrixXd& coeff) {
    const Eigen::MatrixXd h = build_hamiltonian(
        MoIntegrals::restricted(transform_to_mo(ao, coeff)), space);
    const CIVector state = ground_state(h, space.reference_index());
    return std::tuple{
        state.energy,
        von_neumann_entropy(reduced_density(space, state.amplitudes, {0, 1})),
        von_neumann_entropy(reduced_density(space, state.amplitudes, {0}))};
  };

  const auto [e_ref, s4_ref, s2_ref] = analyze(scf.coeff_alpha);

  std::mt19937 rng(29u);
  std::normal_distribution<double> g;
  Eigen::MatrixXd r3(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r3(i, j) = g(rng);
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(4, 4);
  rot.bottomRightCorner(3, 3) =
      Eigen::HouseholderQR<Eigen::MatrixXd>(r3).householderQ();

  const auto [e_rot, s4_rot, s2_rot] = analyze(scf.coeff_alpha * rot);
  CHECK(e_rot == doctest::Approx(e_ref).epsilon(1e-10));
  CHECK(s4_rot == doctest::Approx(s4_ref).epsilon(1e-8));
  CHECK(s2_rot == doctest::Approx(s2_ref).epsilon(1e-8));
}
