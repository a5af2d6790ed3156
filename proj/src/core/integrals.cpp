#include "core/integrals.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace entcorr {

double boys_f0(double x) {
  require(x >= 0.0 && std::isfinite(x), ErrorCode::invalid_argument,
          "boys_f0 argument ", x, " outside [0, inf)");
  if (x < 1e-6) {
    // Alternating Taylor series; six terms keep the truncation error far
    // below double precision on this branch.
    return 1.0 - x / 3.0 + x * x / 10.0 - x * x * x / 42.0 +
           x * x * x * x / 216.0 - x * x * x * x * x / 1320.0;
  }
  const double sx = std::sqrt(x);
  return 0.5 * std::sqrt(std::numbers::pi / x) * std::erf(sx);
}

namespace {

struct PrimitivePair {
  double p = 0.0;            // combined exponent
  double prefactor = 0.0;    // c_a c_b exp(-mu |A-B|^2)
  Eigen::Vector3d center;    // exponent-weighted midpoint
};

// Expands the product of two contracted s-functions into primitive pair
// Gaussians; every integral below is a weighted sum over these.
std::vector<PrimitivePair> pair_expansion(const BasisFunction& fa,
                                          const BasisFunction& fb) {
  std::vector<PrimitivePair> pairs;
  pairs.reserve(fa.shell.primitives.size() * fb.shell.primitives.size());
  const double ab2 = (fa.center - fb.center).squaredNorm();
  for (const auto& a : fa.shell.primitives)
    for (const auto& b : fb.shell.primitives) {
      PrimitivePair pp;
      pp.p = a.exponent + b.exponent;
      const double mu = a.exponent * b.exponent / pp.p;
      pp.prefactor = a.coefficient * b.coefficient * std::exp(-mu * ab2);
      pp.center = (a.exponent * fa.center + b.exponent * fb.center) / pp.p;
      pairs.push_back(pp);
    }
  return pairs;
}

double overlap_contracted(const BasisFunction& fa, const BasisFunction& fb) {
  double s = 0.0;
  const double ab2 = (fa.center - fb.center).squaredNorm();
  for (const auto& a : fa.shell.primitives)
    for (const auto& b : fb.shell.primitives) {
      const double p = a.exponent + b.exponent;
      const double mu = a.exponent * b.exponent / p;
      s += a.coefficient * b.coefficient * std::exp(-mu * ab2) *
           std::pow(std::numbers::pi / p, 1.5);
    }
  return s;
}

double kinetic_contracted(const BasisFunction& fa, const BasisFunction& fb) {
  double t = 0.0;
  const double ab2 = (fa.center - fb.center).squaredNorm();
  for (const auto& a : fa.shell.primitives)
    for (const auto& b : fb.shell.primitives) {
      const double p = a.exponent + b.exponent;
      const double mu = a.exponent * b.exponent / p;
      const double s = std::exp(-mu * ab2) * std::pow(std::numbers::pi / p, 1.5);
      t += a.coefficient * b.coefficient * mu * (3.0 - 2.0 * mu * ab2) * s;
    }
  return t;
}

double nuclear_contracted(const std::vector<PrimitivePair>& pairs,
                          const Molecule& molecule) {
  double v = 0.0;
  for (const auto& pp : pairs) {
    for (const auto& nucleus : molecule.nuclei()) {
      const double pc2 = (pp.center - nucleus.position_bohr).squaredNorm();
      v -= nucleus.charge * pp.prefactor * 2.0 * std::numbers::pi / pp.p *
           boys_f0(pp.p * pc2);
    }
  }
  return v;
}

double eri_contracted(const std::vector<PrimitivePair>& bra,
                      const std::vector<PrimitivePair>& ket) {
  double value = 0.0;
  for (const auto& ij : bra)
    for (const auto& kl : ket) {
      const double denom = ij.p * kl.p * std::sqrt(ij.p + kl.p);
      const double pq2 = (ij.center - kl.center).squaredNorm();
      value += ij.prefactor * kl.prefactor * 2.0 *
               std::pow(std::numbers::pi, 2.5) / denom *
               boys_f0(ij.p * kl.p / (ij.p + kl.p) * pq2);
    }
  return value;
}

}  // namespace

IntegralSet compute_integrals(const Molecule& molecule, const OrbitalBasis& basis) {
  const std::size_t n = basis.size();
  require(n >= 1, ErrorCode::invalid_argument, "empty basis");

  IntegralSet ints;
  ints.e_nuclear = molecule.nuclear_repulsion();  // also rejects coincident nuclei
  ints.overlap = Eigen::MatrixXd::Zero(n, n);
  ints.kinetic = Eigen::MatrixXd::Zero(n, n);
  ints.nuclear = Eigen::MatrixXd::Zero(n, n);
  ints.eri = EriTensor(n);

  std::vector<std::vector<std::vector<PrimitivePair>>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    pairs[i].resize(n);
    for (std::size_t j = 0; j <= i; ++j)
      pairs[i][j] = pair_expansion(basis[i], basis[j]);
  }
  auto pair_at = [&](std::size_t i, std::size_t j) -> const std::vector<PrimitivePair>& {
    return i >= j ? pairs[i][j] : pairs[j][i];
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double s = overlap_contracted(basis[i], basis[j]);
      const double t = kinetic_contracted(basis[i], basis[j]);
      const double v = nuclear_contracted(pair_at(i, j), molecule);
      ints.overlap(i, j) = ints.overlap(j, i) = s;
      ints.kinetic(i, j) = ints.kinetic(j, i) = t;
      ints.nuclear(i, j) = ints.nuclear(j, i) = v;
    }

  // Canonical quadruples (i>=j, k>=l, ij>=kl); the other seven images are
  // assigned, never recomputed, so the eightfold symmetry is bitwise exact.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
          if (i * n + j < k * n + l) continue;
          const double value = eri_contracted(pair_at(i, j), pair_at(k, l));
          ints.eri(i, j, k, l) = value;
          ints.eri(j, i, k, l) = value;
          ints.eri(i, j, l, k) = value;
          ints.eri(j, i, l, k) = value;
          ints.eri(k, l, i, j) = value;
          ints.eri(l, k, i, j) = value;
          ints.eri(k, l, j, i) = value;
          ints.eri(l, k, j, i) = value;
        }

  return ints;
}

}  // namespace entcorr
