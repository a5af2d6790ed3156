#include "core/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "core/error.hpp"

namespace entcorr {

Eigen::MatrixXd omega_from_amplitudes(const DeterminantSpace& space,
                                      const Eigen::VectorXd& amplitudes) {
  require(static_cast<std::size_t>(amplitudes.size()) == space.size(),
          ErrorCode::invalid_argument, "amplitude vector has ",
          amplitudes.size(), " entries for a space of ", space.size());
  const auto n = static_cast<Eigen::Index>(space.mode_count());
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [a, b] = space.modes(i);
    const double w = 0.5 * amplitudes(static_cast<Eigen::Index>(i));
    omega(a, b) = w;
    omega(b, a) = -w;
  }
  return omega;
}

Eigen::VectorXd amplitudes_from_omega(const DeterminantSpace& space,
                                      const Eigen::MatrixXd& omega) {
  const auto n = static_cast<Eigen::Index>(space.mode_count());
  require(omega.rows() == n && omega.cols() == n, ErrorCode::invalid_argument,
          "pairing matrix must be ", n, "x", n, " for this space");
  const double skew = (omega + omega.transpose()).cwiseAbs().maxCoeff();
  require(skew < 1e-10, ErrorCode::invalid_argument,
          "pairing matrix is not antisymmetric (max deviation ", skew, ")");
  Eigen::VectorXd amplitudes(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto [a, b] = space.modes(i);
    amplitudes(static_cast<Eigen::Index>(i)) = 2.0 * omega(a, b);
  }
  return amplitudes;
}

Eigen::MatrixXd reduced_density(const DeterminantSpace& space,
                                const Eigen::VectorXd& amplitudes,
                                const std::vector<int>& kept_modes) {
  require(static_cast<std::size_t>(amplitudes.size()) == space.size(),
          ErrorCode::invalid_argument, "amplitude vector has ",
          amplitudes.size(), " entries for a space of ", space.size());
  require(std::abs(amplitudes.norm() - 1.0) < 1e-8,
          ErrorCode::invalid_argument,
          "state must be normalized (norm ", amplitudes.norm(), ")");
  const int nm = static_cast<int>(space.mode_count());
  require(!kept_modes.empty() && kept_modes.size() < static_cast<std::size_t>(nm),
          ErrorCode::invalid_argument,
          "kept modes must be a nonempty strict subset");
  std::vector<int> position(nm, -1);
  for (std::size_t t = 0; t < kept_modes.size(); ++t) {
    const int mode = kept_modes[t];
    require(mode >= 0 && mode < nm, ErrorCode::invalid_argument, "kept mode ",
            mode, " outside 0..", nm - 1);
    require(t == 0 || kept_modes[t - 1] < mode, ErrorCode::invalid_argument,
            "kept modes must be strictly ascending");
    position[mode] = static_cast<int>(t);
  }

  // Each determinant contributes one ket |kept pattern> tagged with its
  // environment occupation; kets sharing an environment tag interfere. The
  // sign is the parity of pulling the kept creation operators in front of
  // the environment ones: for two electrons that is -1 exactly when the
  // lower mode is traced out and the higher one kept.
  struct Term {
    std::uint64_t env = 0;
    int kept = 0;
    double value = 0.0;
  };
  std::vector<Term> terms;
  terms.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double a_i = amplitudes(static_cast<Eigen::Index>(i));
    if (a_i == 0.0) continue;
    const auto [lo, hi] = space.modes(i);
    const bool lo_kept = position[lo] >= 0;
    const bool hi_kept = position[hi] >= 0;
    Term term;
    term.value = (!lo_kept && hi_kept) ? -a_i : a_i;
    if (lo_kept) term.kept |= 1 << position[lo];
    if (hi_kept) term.kept |= 1 << position[hi];
    if (!lo_kept) term.env |= std::uint64_t{1} << lo;
    if (!hi_kept) term.env |= std::uint64_t{1} << hi;
    terms.push_back(term);
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& l, const Term& r) { return l.env < r.env; });

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << kept_modes.size());
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t start = 0; start < terms.size();) {
    std::size_t stop = start;
    while (stop < terms.size() && terms[stop].env == terms[start].env) ++stop;
    for (std::size_t i = start; i < stop; ++i)
      for (std::size_t j = start; j < stop; ++j)
        rho(terms[i].kept, terms[j].kept) += terms[i].value * terms[j].value;
    start = stop;
  }
  return rho;
}

double von_neumann_entropy(const Eigen::MatrixXd& rho) {
  require(rho.rows() == rho.cols() && rho.rows() > 0,
          ErrorCode::invalid_argument, "density matrix must be square");
  const double asym = (rho - rho.transpose()).cwiseAbs().maxCoeff();
  require(asym < 1e-10, ErrorCode::invalid_argument,
          "density matrix is not symmetric (max deviation ", asym, ")");
  require(std::abs(rho.trace() - 1.0) < 1e-8, ErrorCode::invalid_argument,
          "density matrix trace is ", rho.trace(), ", expected 1");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
  require(solver.info() == Eigen::Success, ErrorCode::internal,
          "eigensolver failed on the density matrix");
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double p = solver.eigenvalues()(k);
    require(p > -1e-10, ErrorCode::invalid_argument,
            "density matrix has a negative eigenvalue ", p);
    if (p > 1e-14) entropy -= p * std::log2(p);
  }
  return entropy;
}

Eigen::Vector4d spatial_occupations_from_omega(const Eigen::MatrixXd& omega) {
  const Eigen::Index n = omega.rows();
  require(n == omega.cols() && n >= 2 && n % 2 == 0,
          ErrorCode::invalid_argument,
          "pairing matrix must be square with an even dimension of at least 2");
  const double skew = (omega + omega.transpose()).cwiseAbs().maxCoeff();
  require(skew < 1e-10, ErrorCode::invalid_argument,
          "pairing matrix is not antisymmetric (max deviation ", skew, ")");

  Eigen::Vector4d occupations = Eigen::Vector4d::Zero();
  occupations(3) = 4.0 * omega(0, 1) * omega(0, 1);
  for (Eigen::Index b = 2; b < n; ++b) {
    occupations(1) += 4.0 * omega(0, b) * omega(0, b);
    occupations(2) += 4.0 * omega(1, b) * omega(1, b);
  }
  for (Eigen::Index a = 2; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      occupations(0) += 4.0 * omega(a, b) * omega(a, b);
  return occupations;
}

Eigen::Vector2d spin_mode_occupations(const DeterminantSpace& space,
                                      const Eigen::VectorXd& amplitudes,
                                      bool paired_doubles_only) {
  require(static_cast<std::size_t>(amplitudes.size()) == space.size(),
          ErrorCode::invalid_argument, "amplitude vector has ",
          amplitudes.size(), " entries for a space of ", space.size());
  Eigen::Vector2d occupations = Eigen::Vector2d::Zero();
  if (paired_doubles_only) {
    for (std::size_t k = 1; k < space.m(); ++k) {
      const double a =
          amplitudes(static_cast<Eigen::Index>(space.index_of(
              static_cast<int>(2 * k), static_cast<int>(2 * k + 1))));
      occupations(0) += a * a;
    }
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double a = amplitudes(static_cast<Eigen::Index>(i));
    const bool has_mode0 = space.modes(i).first == 0;
    if (has_mode0)
      occupations(1) += a * a;
    else if (!paired_doubles_only)
      occupations(0) += a * a;
  }
  return occupations;
}

}  // namespace entcorr
