#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "core/basis.hpp"
#include "core/molecule.hpp"

namespace entcorr {

// Boys function F0. Closed form via erf for x >= 1e-6, six-term Taylor
// series below, continuous across the switch to ~1e-13 relative.
double boys_f0(double x);

// Chemists'-notation (pq|rs) with full m^4 storage; all eight index
// symmetries hold exactly because assignment mirrors canonical entries.
class EriTensor {
 public:
  EriTensor() = default;
  explicit EriTensor(std::size_t m) : m_(m), values_(m * m * m * m, 0.0) {}

  double operator()(std::size_t p, std::size_t q, std::size_t r,
                    std::size_t s) const {
    return values_[((p * m_ + q) * m_ + r) * m_ + s];
  }
  double& operator()(std::size_t p, std::size_t q, std::size_t r,
                     std::size_t s) {
    return values_[((p * m_ + q) * m_ + r) * m_ + s];
  }

  std::size_t extent() const { return m_; }
  const std::vector<double>& raw() const { return values_; }

 private:
  std::size_t m_ = 0;
  std::vector<double> values_;
};

// All AO-basis integrals for one geometry. Lengths in bohr, energies in
// hartree throughout.
struct IntegralSet {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  EriTensor eri;
  double e_nuclear = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(overlap.rows()); }
  Eigen::MatrixXd core_hamiltonian() const { return kinetic + nuclear; }
};

IntegralSet compute_integrals(const Molecule& molecule, const OrbitalBasis& basis);

}  // namespace entcorr
