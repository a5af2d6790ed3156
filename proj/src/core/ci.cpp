#include "core/ci.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "core/error.hpp"

namespace entcorr {
namespace {

int sole_bit(std::uint64_t mask) { return std::countr_zero(mask); }

// Number of occupied modes strictly between a and b.
int occupied_between(std::uint64_t mask, int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo < 2) return 0;
  const std::uint64_t window =
      ((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1);
  return std::popcount(mask & window);
}

// Fermionic ladder operators on occupation bitmasks; `sign` accumulates the
// (-1)^(occupied below) phases. Returns false when the operator annihilates
// the state.
bool annihilate(std::uint64_t& mask, int p, double& sign) {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (!(mask & bit)) return false;
  if (std::popcount(mask & (bit - 1)) & 1) sign = -sign;
  mask &= ~bit;
  return true;
}

bool create(std::uint64_t& mask, int p, double& sign) {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (mask & bit) return false;
  if (std::popcount(mask & (bit - 1)) & 1) sign = -sign;
  mask |= bit;
  return true;
}

std::size_t index_of_mask(const DeterminantSpace& space, std::uint64_t mask) {
  const int low = std::countr_zero(mask);
  const int high = 63 - std::countl_zero(mask);
  return space.index_of(low, high);
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const MoIntegrals& ints,
                                  const DeterminantSpace& space) {
  require(space.m() == ints.m, ErrorCode::invalid_argument,
          "determinant space is built over ", space.m(),
          " spatial orbitals but the integrals hold ", ints.m);
  const std::size_t n = space.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);

  for (std::size_t i = 0; i < n; ++i) {
    const auto [p, q] = space.modes(i);
    h(i, i) = ints.h_so(p, p) + ints.h_so(q, q) + ints.eri_so(p, p, q, q) -
              ints.eri_so(p, q, q, p) + ints.e_nuclear;

    const std::uint64_t mask_i = space.bitmask(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto [r, s] = space.modes(j);
      const std::uint64_t mask_j = space.bitmask(j);
      const std::uint64_t diff = mask_i ^ mask_j;
      double value;
      if (std::popcount(diff) == 2) {
        // Single replacement a -> b around the shared mode t; the phase
        // counts occupied modes crossed while moving the electron.
        const int a = sole_bit(mask_i & diff);
        const int b = sole_bit(mask_j & diff);
        const int t = sole_bit(mask_i & mask_j);
        const double sign = occupied_between(mask_i, a, b) & 1 ? -1.0 : 1.0;
        value = sign * (ints.h_so(a, b) + ints.eri_so(a, b, t, t) -
                        ints.eri_so(a, t, t, b));
      } else {
        // Both electrons move. With each determinant's modes kept in
        // ascending order the aligned pairing carries no extra phase.
        value = ints.eri_so(p, r, q, s) - ints.eri_so(p, s, q, r);
      }
      h(i, j) = h(j, i) = value;
    }
  }
  return h;
}

std::pair<double, Eigen::VectorXd> lowest_eigenpair(const Eigen::MatrixXd& h) {
  require(h.rows() == h.cols() && h.rows() > 0, ErrorCode::invalid_argument,
          "eigenproblem needs a square nonempty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  require(solver.info() == Eigen::Success, ErrorCode::internal,
          "eigensolver failed on the interaction matrix");
  const double e0 = solver.eigenvalues()(0);
  Eigen::VectorXd v = solver.eigenvectors().col(0);

  const double residual = (h * v - e0 * v).norm();
  require(residual < 1e-10 * std::max(1.0, h.norm()), ErrorCode::internal,
          "eigenpair residual ", residual, " exceeds tolerance");

  Eigen::Index top = 0;
  v.cwiseAbs().maxCoeff(&top);
  if (v(top) < 0.0) v = -v;
  return {e0, std::move(v)};
}

CIVector ground_state(const Eigen::MatrixXd& h, std::size_t reference_index,
                      const GroundStateOptions& options) {
  require(h.rows() == h.cols() && h.rows() > 0, ErrorCode::invalid_argument,
          "eigenproblem needs a square nonempty matrix");
  require(reference_index < static_cast<std::size_t>(h.rows()),
          ErrorCode::invalid_argument, "reference index ", reference_index,
          " outside a space of ", h.rows(), " determinants");
  require(options.degeneracy_window >= 0.0, ErrorCode::invalid_argument,
          "degeneracy window must be nonnegative");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  require(solver.info() == Eigen::Success, ErrorCode::internal,
          "eigensolver failed on the interaction matrix");
  const Eigen::VectorXd& e = solver.eigenvalues();
  const double e_min = e(0);

  int dim = 1;
  while (dim < e.size() && e(dim) - e_min <= options.degeneracy_window) ++dim;

  CIVector out;
  out.energy = e_min;
  out.reference_index = reference_index;
  out.degenerate_dimension = dim;

  // Project the reference determinant onto the (near-)degenerate lowest
  // eigenspace. Its component along the reference axis is the sum of squared
  // overlaps, so a successful projection is automatically positive there.
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(h.rows());
  for (int k = 0; k < dim; ++k) {
    const Eigen::VectorXd col = solver.eigenvectors().col(k);
    proj += col(static_cast<Eigen::Index>(reference_index)) * col;
  }
  const double norm = proj.norm();
  if (norm >= options.min_projection) {
    out.amplitudes = proj / norm;
    out.aligned_to_reference = true;
  } else {
    out.amplitudes = solver.eigenvectors().col(0);
    out.aligned_to_reference = false;
  }

  const double at_ref = out.amplitudes(static_cast<Eigen::Index>(reference_index));
  if (std::abs(at_ref) > 1e-8) {
    if (at_ref < 0.0) out.amplitudes = -out.amplitudes;
  } else {
    Eigen::Index top = 0;
    out.amplitudes.cwiseAbs().maxCoeff(&top);
    if (out.amplitudes(top) < 0.0) out.amplitudes = -out.amplitudes;
  }
  return out;
}

Eigen::MatrixXd s_squared_matrix(const DeterminantSpace& space) {
  const std::size_t n = space.size();
  const int modes = static_cast<int>(space.mode_count());
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(n, n);

  for (std::size_t j = 0; j < n; ++j) {
    const auto [a, b] = space.modes(j);
    const auto spin_z = [](int mode) { return (mode & 1) == 0 ? 0.5 : -0.5; };
    const double sz = spin_z(a) + spin_z(b);
    s2(j, j) += sz * (sz + 1.0);

    // S-S+ applied term by term: raise beta k -> alpha k, then lower alpha
    // l -> beta l; every intermediate stays a two-electron determinant.
    const std::uint64_t mask0 = space.bitmask(j);
    for (int k = 0; 2 * k + 1 < modes; ++k) {
      std::uint64_t up = mask0;
      double sign_up = 1.0;
      if (!annihilate(up, 2 * k + 1, sign_up)) continue;
      if (!create(up, 2 * k, sign_up)) continue;
      for (int l = 0; 2 * l + 1 < modes; ++l) {
        std::uint64_t down = up;
        double sign = sign_up;
        if (!annihilate(down, 2 * l, sign)) continue;
        if (!create(down, 2 * l + 1, sign)) continue;
        s2(static_cast<Eigen::Index>(index_of_mask(space, down)),
           static_cast<Eigen::Index>(j)) += sign;
      }
    }
  }
  return s2;
}

}  // namespace entcorr
