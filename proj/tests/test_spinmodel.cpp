#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "core/error.hpp"
#include "core/spinmodel.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace entcorr;

namespace {

// Hamiltonian assembled from explicit Pauli tensor products, independent of
// the closed-form matrix in the library.
Eigen::Matrix4d kron_hamiltonian(const SpinModelParams& p) {
  using C = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << C(0), C(1), C(1), C(0);
  sy << C(0), C(0, -1), C(0, 1), C(0);
  sz << C(1), C(0), C(0), C(-1);
  id.setIdentity();
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };
  Eigen::Matrix4cd h = -0.5 * p.j * (1.0 + p.gamma) * kron(sx, sx) -
                       0.5 * p.j * (1.0 - p.gamma) * kron(sy, sy) -
                       p.b * (kron(sz, id) + kron(id, sz));
  REQUIRE(h.imag().cwiseAbs().maxCoeff() < 1e-15);
  return h.real();
}

// Single-site entropy computed the long way round: diagonalize the 4x4 with
// Jacobi rotations, trace out the second spin by hand, then diagonalize the
// 2x2 the same way.
double numeric_ground_entropy(const SpinModelParams& p) {
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  oracle::jacobi_eigensystem(kron_hamiltonian(p), evals, evecs);
  Eigen::Vector4d v = evecs.col(0);
  Eigen::Matrix2d rho;
  rho(0, 0) = v(0) * v(0) + v(1) * v(1);
  rho(1, 1) = v(2) * v(2) + v(3) * v(3);
  rho(0, 1) = rho(1, 0) = v(0) * v(2) + v(1) * v(3);
  Eigen::VectorXd probs;
  Eigen::MatrixXd basis;
  oracle::jacobi_eigensystem(rho, probs, basis);
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    if (probs(i) > 1e-300) s -= probs(i) * std::log2(probs(i));
  return s;
}

}  // namespace

TEST_CASE("hamiltonian matrix matches the pauli tensor-product build") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    SpinModelParams p{u(rng), u(rng), u(rng)};
    Eigen::Matrix4d h = spin_hamiltonian(p);
    CHECK((h - kron_hamiltonian(p)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("closed-form eigenpairs solve the eigenproblem for random parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    SpinModelParams p{u(rng), u(rng), u(rng)};
    Eigen::Matrix4d h = spin_hamiltonian(p);
    SpinSpectrum spec = analytic_spectrum(p);

    Eigen::Matrix4d basis;
    for (int k = 0; k < 4; ++k) {
      const auto& state = spec.states[static_cast<std::size_t>(k)];
      CHECK((h * state.vector - state.energy * state.vector).norm() < 1e-12);
      basis.col(k) = state.vector;
      if (k > 0)
        CHECK(spec.states[static_cast<std::size_t>(k - 1)].energy <=
              state.energy + 1e-15);
    }
    CHECK((basis.transpose() * basis - Eigen::Matrix4d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    const double alpha = std::hypot(2.0 * p.b, p.j * p.gamma);
    std::array<double, 4> expected{-std::abs(p.j), std::abs(p.j), -alpha, alpha};
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 4; ++k)
      CHECK(spec.states[static_cast<std::size_t>(k)].energy ==
            doctest::Approx(expected[static_cast<std::size_t>(k)]).epsilon(1e-14));
  }
}

TEST_CASE("spectrum handles decoupled and degenerate parameter sets") {
  SUBCASE("isotropic coupling without a field leaves the aligned states at zero") {
    SpinSpectrum spec = analytic_spectrum({1.5, 0.0, 0.0});
    Eigen::Matrix4d h = spin_hamiltonian({1.5, 0.0, 0.0});
    for (const auto& s : spec.states)
      CHECK((h * s.vector - s.energy * s.vector).norm() < 1e-14);
    CHECK(spec.states[0].energy == doctest::Approx(-1.5));
    CHECK(spec.states[1].energy == doctest::Approx(0.0));
    CHECK(spec.states[2].energy == doctest::Approx(0.0));
  }
  SUBCASE("pure field orders the spectrum as -2B, 0, 0, 2B") {
    SpinSpectrum spec = analytic_spectrum({0.0, 0.7, 1.0});
    CHECK(spec.states[0].energy == doctest::Approx(-1.4));
    CHECK(spec.states[0].vector.cwiseAbs().maxCoeff() ==
          doctest::Approx(1.0));
    CHECK(std::abs(spec.states[0].vector(0)) == doctest::Approx(1.0));
  }
  SUBCASE("negative field aligns the ground state with dd") {
    SpinSpectrum spec = analytic_spectrum({0.0, -0.7, 1.0});
    CHECK(spec.states[0].energy == doctest::Approx(-1.4));
    CHECK(std::abs(spec.states[0].vector(3)) == doctest::Approx(1.0));
  }
  SUBCASE("all-zero parameters are rejected") {
    CHECK_THROWS_AS(analytic_spectrum({0.0, 0.0, 0.0}), Error);
  }
}

TEST_CASE("ratio form and direct populations give the same entropy") {
  SUBCASE("log-spaced ratios, both signs") {
    for (double mag = 1e-3; mag <= 1.0e3; mag *= 3.0) {
      for (double lambda : {mag, -mag}) {
        const double direct = ground_state_entropy({lambda, 1.0, 1.0});
        CHECK(ising_entropy_from_ratio(lambda) ==
              doctest::Approx(direct).epsilon(1e-12));
        // Scaling J and B together must leave the entropy untouched.
        CHECK(ground_state_entropy({0.37 * lambda, 0.37, 1.0}) ==
              doctest::Approx(direct).epsilon(1e-12));
      }
    }
  }
  SUBCASE("pinned values") {
    CHECK(ising_entropy_from_ratio(2.0) ==
          doctest::Approx(0.6008760366928561).epsilon(1e-12));
    CHECK(ising_entropy_from_ratio(0.5) ==
          doctest::Approx(0.1119303188100642).epsilon(1e-12));
    CHECK(ising_entropy_from_ratio(10.0) ==
          doctest::Approx(0.9720752237070408).epsilon(1e-12));
    CHECK(ising_entropy_from_ratio(0.0) == 0.0);
    CHECK(std::abs(ising_entropy_from_ratio(1e6) - 1.0) < 1e-10);
  }
}

TEST_CASE("closed-form entropy matches the jacobi-diagonalization route") {
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    SpinModelParams p{lambda, 1.0, 1.0};
    CHECK(ground_state_entropy(p) ==
          doctest::Approx(numeric_ground_entropy(p)).epsilon(1e-10));
    SpinModelParams m{-lambda, 0.25, 1.0};
    CHECK(ground_state_entropy(m) ==
          doctest::Approx(numeric_ground_entropy(m)).epsilon(1e-10));
  }
}

TEST_CASE("bell-state ground branch saturates the entropy at one") {
  // When |J| beats sqrt(4 B^2 + (J gamma)^2) the ground state is a Bell pair
  // on (ud, du) regardless of the coupling sign.
  CHECK(ground_state_entropy({2.0, 0.1, 0.1}) == doctest::Approx(1.0));
  CHECK(ground_state_entropy({-2.0, 0.1, 0.1}) == doctest::Approx(1.0));
  CHECK(numeric_ground_entropy({2.0, 0.1, 0.1}) == doctest::Approx(1.0));
  // Isotropic limit: alpha = 2|B| < |J| keeps the Bell branch lowest.
  CHECK(ground_state_entropy({1.0, 0.3, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("exchange coupling follows the asymptotic form") {
  ExchangeCoupling j5 = exchange_coupling(5.0);
  CHECK(j5.value == doctest::Approx(-2.0836431802420220e-3).epsilon(1e-12));
  CHECK(j5.asymptotic_valid);

  ExchangeCoupling j50 = exchange_coupling(50.0);
  CHECK(std::abs(j50.value) < 1e-39);

  CHECK_FALSE(exchange_coupling(0.1).asymptotic_valid);
  CHECK(exchange_coupling(1.5).asymptotic_valid);
  CHECK_THROWS_AS(exchange_coupling(0.0), Error);
  CHECK_THROWS_AS(exchange_coupling(-1.0), Error);

  // The magnitude peaks where the derivative changes sign: r = 5/4.
  double left = std::abs(exchange_coupling(1.20).value);
  double peak = std::abs(exchange_coupling(1.25).value);
  double right = std::abs(exchange_coupling(1.30).value);
  CHECK(peak > left);
  CHECK(peak > right);
}

TEST_CASE("distance sweep is unimodal and ordered by field strength") {
  std::vector<double> grid;
  for (double r = 1.0; r <= 10.0 + 1e-9; r += 0.05) grid.push_back(r);
  const std::vector<double> fields{0.05, 0.1, 0.2};
  std::vector<SpinSweepRow> rows = sweep_entanglement(grid, fields);
  REQUIRE(rows.size() == grid.size() * fields.size());

  std::vector<double> peaks;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    std::size_t base = f * grid.size();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SpinSweepRow& row = rows[base + i];
      CHECK(row.b == fields[f]);
      CHECK(row.r_bohr == doctest::Approx(grid[i]));
      if (row.entropy > rows[base + arg].entropy) arg = i;
    }
    // Strictly rising up to the peak, strictly falling after it.
    for (std::size_t i = 0; i + 1 <= arg; ++i)
      CHECK(rows[base + i].entropy < rows[base + i + 1].entropy);
    for (std::size_t i = arg; i + 1 < grid.size(); ++i)
      CHECK(rows[base + i].entropy > rows[base + i + 1].entropy);
    CHECK(grid[arg] == doctest::Approx(1.25));
    peaks.push_back(rows[base + arg].entropy);
  }
  CHECK(peaks[0] > peaks[1]);
  CHECK(peaks[1] > peaks[2]);
  CHECK(peaks[0] == doctest::Approx(0.6719290347107418).epsilon(1e-10));
}
