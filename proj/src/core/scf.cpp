#include "core/scf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <iostream>
#include <sstream>
#include <utility>

#include "core/error.hpp"

namespace entcorr {
namespace {

struct DiisHistory {
  std::deque<Eigen::MatrixXd> focks;
  std::deque<Eigen::MatrixXd> errors;
  std::size_t capacity;

  explicit DiisHistory(int cap) : capacity(static_cast<std::size_t>(cap)) {}

  void push(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& error) {
    focks.push_back(fock);
    errors.push_back(error);
    if (focks.size() > capacity) {
      focks.pop_front();
      errors.pop_front();
    }
  }

  void clear() {
    focks.clear();
    errors.clear();
  }

  // Pulay mixing: minimize the norm of the combined error subject to the
  // coefficients summing to one. The constrained minimum is c = G+ 1 / (1' G+ 1)
  // with G the error Gram matrix; using a spectrally filtered pseudo-inverse
  // keeps the coefficients moderate once the history turns linearly
  // dependent near convergence, where an exact solve would amplify noise.
  // Returns false when no trustworthy combination exists; the caller then
  // falls back to damping.
  bool extrapolate(Eigen::MatrixXd& fock_out) const {
    const Eigen::Index n = static_cast<Eigen::Index>(focks.size());
    if (n < 2) return false;
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j)
        g(i, j) = g(j, i) = (errors[i].array() * errors[j].array()).sum();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success) return false;
    const double cut = es.eigenvalues().cwiseAbs().maxCoeff() * 1e-12;
    if (!(cut > 0.0)) return false;

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (es.eigenvalues()(k) <= cut) continue;
      const Eigen::VectorXd v = es.eigenvectors().col(k);
      y += (v.dot(ones) / es.eigenvalues()(k)) * v;
    }
    const double denom = ones.dot(y);
    if (!(denom > 0.0)) return false;
    const Eigen::VectorXd coeff = y / denom;
    if (!coeff.allFinite() || coeff.cwiseAbs().maxCoeff() > 1e4) return false;

    fock_out = Eigen::MatrixXd::Zero(focks[0].rows(), focks[0].cols());
    for (Eigen::Index i = 0; i < n; ++i) fock_out += coeff(i) * focks[i];
    return true;
  }
};

Eigen::MatrixXd coulomb(const EriTensor& eri, const Eigen::MatrixXd& p) {
  const std::size_t m = eri.extent();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double sum = 0.0;
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) sum += eri(a, b, c, d) * p(c, d);
      j(a, b) = sum;
    }
  return j;
}

Eigen::MatrixXd exchange(const EriTensor& eri, const Eigen::MatrixXd& p) {
  const std::size_t m = eri.extent();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double sum = 0.0;
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d) sum += eri(a, c, d, b) * p(c, d);
      k(a, b) = sum;
    }
  return k;
}

// Solve F C = S C eps through the symmetric orthogonalizer X.
void solve_roothaan(const Eigen::MatrixXd& fock, const Eigen::MatrixXd& x,
                    Eigen::MatrixXd& coeff, Eigen::VectorXd& energies) {
  const Eigen::MatrixXd fp = x.transpose() * fock * x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(fp);
  require(solver.info() == Eigen::Success, ErrorCode::internal,
          "eigensolver failed on the transformed Fock matrix");
  energies = solver.eigenvalues();
  coeff = x * solver.eigenvectors();
}

Eigen::MatrixXd density_matrix(const Eigen::MatrixXd& c, int nocc) {
  if (nocc == 0) {
    return Eigen::MatrixXd::Zero(c.rows(), c.rows());
  }
  return c.leftCols(nocc) * c.leftCols(nocc).transpose();
}

struct Guess {
  Eigen::MatrixXd ca, cb;
};

bool usable_seed(const Eigen::MatrixXd& seed, int m, int nocc) {
  if (seed.size() == 0) return false;
  require(seed.rows() == m && seed.cols() >= nocc,
          ErrorCode::invalid_argument, "warm-start orbitals must be ", m,
          " rows with at least ", nocc, " columns, got ", seed.rows(), "x",
          seed.cols());
  return true;
}

// One spin-resolved SCF loop. The restricted case runs through the same loop
// with the beta channel tied to alpha, which keeps the convergence logic in
// one place.
ScfResult run_scf_loop(const IntegralSet& ints, int n_alpha, int n_beta,
                       const Guess& guess, bool restricted,
                       const ScfOptions& options) {
  const auto m = static_cast<int>(ints.size());
  require(n_alpha >= n_beta, ErrorCode::internal, "spin counts out of order");
  require(n_alpha <= m, ErrorCode::invalid_argument, "more electrons (",
          n_alpha + n_beta, ") than the basis can hold (", 2 * m, ")");

  const Eigen::MatrixXd x = symmetric_orthogonalizer(ints.overlap);
  const Eigen::MatrixXd h = ints.core_hamiltonian();

  Eigen::MatrixXd ca = guess.ca, cb = guess.cb;
  // Both spin channels share one extrapolation: a single error metric and one
  // coefficient set applied to both Fock matrices. Extrapolating the channels
  // independently lets them drift against each other and limit-cycle at
  // marginally stable broken-symmetry solutions.
  DiisHistory diis(options.diis_size);
  Eigen::MatrixXd prev_fa, prev_fb;
  double energy = 0.0, last_energy = 0.0, comm = 0.0;
  double best_comm = 1e300;
  int stalled = 0;
  Eigen::VectorXd ea, eb;
  int iter = 0;
  bool converged = false;

  for (iter = 1; iter <= options.max_iterations; ++iter) {
    const Eigen::MatrixXd pa = density_matrix(ca, n_alpha);
    const Eigen::MatrixXd pb = restricted ? pa : density_matrix(cb, n_beta);
    const Eigen::MatrixXd ptot = pa + pb;

    const Eigen::MatrixXd j = coulomb(ints.eri, ptot);
    Eigen::MatrixXd fa = h + j - exchange(ints.eri, pa);
    Eigen::MatrixXd fb =
        restricted ? fa : (h + j - exchange(ints.eri, pb)).eval();

    energy = 0.5 * ((ptot.array() * h.array()).sum() +
                    (pa.array() * fa.array()).sum() +
                    (pb.array() * fb.array()).sum()) +
             ints.e_nuclear;

    const Eigen::MatrixXd err_a =
        fa * pa * ints.overlap - ints.overlap * pa * fa;
    const Eigen::MatrixXd err_b =
        restricted ? err_a
                   : (fb * pb * ints.overlap - ints.overlap * pb * fb).eval();
    comm = std::sqrt(err_a.squaredNorm() + err_b.squaredNorm());

    if (options.verbose) {
      std::cerr << "scf " << (restricted ? "rhf" : "uhf") << " iter=" << iter
                << " energy=" << energy << " commutator=" << comm << "\n";
    }
    if (iter > 1 && comm < options.commutator_tol &&
        std::abs(energy - last_energy) < options.energy_tol) {
      converged = true;
      break;
    }
    last_energy = energy;

    // A history that stops making progress (limit cycle around a flat
    // direction) is discarded; the following damped plain steps reseed it.
    if (comm < 0.9 * best_comm) {
      best_comm = comm;
      stalled = 0;
    } else if (++stalled >= 25) {
      diis.clear();
      stalled = 0;
    }

    Eigen::MatrixXd stacked_f(m, restricted ? m : 2 * m);
    Eigen::MatrixXd stacked_e(m, restricted ? m : 2 * m);
    stacked_f.leftCols(m) = fa;
    stacked_e.leftCols(m) = err_a;
    if (!restricted) {
      stacked_f.rightCols(m) = fb;
      stacked_e.rightCols(m) = err_b;
    }
    diis.push(stacked_f, stacked_e);

    Eigen::MatrixXd mixed;
    if (diis.extrapolate(mixed)) {
      fa = mixed.leftCols(m);
      if (!restricted) fb = mixed.rightCols(m);
    } else {
      if (prev_fa.size() > 0)
        fa = options.damping * prev_fa + (1.0 - options.damping) * fa;
      if (!restricted && prev_fb.size() > 0)
        fb = options.damping * prev_fb + (1.0 - options.damping) * fb;
    }
    prev_fa = fa;
    if (!restricted) prev_fb = fb;

    solve_roothaan(fa, x, ca, ea);
    if (restricted) {
      cb = ca;
      eb = ea;
    } else {
      solve_roothaan(fb, x, cb, eb);
    }
  }

  // Rebuild the orbitals from the final (unextrapolated) Fock matrices so the
  // reported eigenvalues belong to the converged density.
  {
    const Eigen::MatrixXd pa = density_matrix(ca, n_alpha);
    const Eigen::MatrixXd pb = restricted ? pa : density_matrix(cb, n_beta);
    const Eigen::MatrixXd j = coulomb(ints.eri, pa + pb);
    const Eigen::MatrixXd fa = h + j - exchange(ints.eri, pa);
    solve_roothaan(fa, x, ca, ea);
    if (restricted) {
      cb = ca;
      eb = ea;
    } else {
      const Eigen::MatrixXd fb = h + j - exchange(ints.eri, pb);
      solve_roothaan(fb, x, cb, eb);
    }
  }

  ScfResult result;
  result.energy = energy;
  result.coeff_alpha = ca;
  result.coeff_beta = cb;
  result.orbital_energies_alpha = ea;
  result.orbital_energies_beta = eb;
  result.n_alpha = n_alpha;
  result.n_beta = n_beta;
  result.iterations = std::min(iter, options.max_iterations);
  result.commutator_norm = comm;
  result.restricted = restricted;

  if (!converged) {
    std::ostringstream msg;
    msg << (restricted ? "restricted" : "unrestricted")
        << " scf did not converge within " << options.max_iterations
        << " iterations (commutator " << comm << ")";
    throw ScfNotConverged(msg.str(), std::move(result));
  }
  return result;
}

}  // namespace

Eigen::MatrixXd symmetric_orthogonalizer(const Eigen::MatrixXd& overlap,
                                         double cutoff) {
  require(overlap.rows() == overlap.cols(), ErrorCode::invalid_argument,
          "overlap matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(overlap);
  require(solver.info() == Eigen::Success, ErrorCode::internal,
          "eigensolver failed on the overlap matrix");
  const Eigen::VectorXd& s = solver.eigenvalues();
  require(s.minCoeff() > cutoff, ErrorCode::conditioning,
          "overlap matrix is near singular (smallest eigenvalue ",
          s.minCoeff(), ", cutoff ", cutoff,
          "); the basis has (nearly) linearly dependent functions");
  const Eigen::VectorXd inv_sqrt = s.array().rsqrt();
  return solver.eigenvectors() * inv_sqrt.asDiagonal() *
         solver.eigenvectors().transpose();
}

ScfResult run_rhf(const IntegralSet& ints, int n_electrons,
                  const ScfOptions& options) {
  require(n_electrons >= 2 && n_electrons % 2 == 0,
          ErrorCode::invalid_argument,
          "restricted scf needs a positive even electron count, got ",
          n_electrons);
  const int nocc = n_electrons / 2;
  const auto m = static_cast<int>(ints.size());
  require(nocc <= m, ErrorCode::invalid_argument, "more electron pairs (",
          nocc, ") than basis functions (", m, ")");

  Guess guess;
  if (usable_seed(options.guess_alpha, m, nocc)) {
    guess.ca = options.guess_alpha;
  } else {
    // Core-Hamiltonian guess.
    const Eigen::MatrixXd x = symmetric_orthogonalizer(ints.overlap);
    Eigen::VectorXd e0;
    solve_roothaan(ints.core_hamiltonian(), x, guess.ca, e0);
  }
  guess.cb = guess.ca;
  return run_scf_loop(ints, nocc, nocc, guess, /*restricted=*/true, options);
}

ScfResult run_uhf(const IntegralSet& ints, int n_electrons,
                  const ScfOptions& options) {
  require(n_electrons >= 1, ErrorCode::invalid_argument,
          "unrestricted scf needs at least one electron");
  const int n_alpha = (n_electrons + 1) / 2;
  const int n_beta = n_electrons / 2;
  const auto m = static_cast<int>(ints.size());

  const bool seeded_pair = usable_seed(options.guess_alpha, m, n_alpha) &&
                           usable_seed(options.guess_beta, m, n_beta);

  Guess guess;
  bool have_rhf = false;
  ScfResult rhf;
  if (n_alpha == n_beta) {
    rhf = run_rhf(ints, n_electrons, options);
    have_rhf = true;
    if (seeded_pair) {
      // Warm start: adopt the caller's (possibly broken-symmetry) orbitals
      // as-is; the restricted solution above still serves as the collapse
      // yardstick.
      guess.ca = options.guess_alpha;
      guess.cb = options.guess_beta;
    } else {
      guess.ca = rhf.coeff_alpha;
      guess.cb = rhf.coeff_beta;
      // Rotate the alpha HOMO/LUMO pair one way and beta the other to break
      // spin symmetry. With angle zero the guess is the restricted solution
      // and the loop reproduces it.
      const double angle = options.uhf_mix_angle;
      if (angle != 0.0 && n_alpha >= 1 && n_alpha < m) {
        const int homo = n_alpha - 1, lumo = n_alpha;
        const Eigen::VectorXd hi = guess.ca.col(homo);
        const Eigen::VectorXd lo = guess.ca.col(lumo);
        guess.ca.col(homo) = std::cos(angle) * hi + std::sin(angle) * lo;
        guess.ca.col(lumo) = -std::sin(angle) * hi + std::cos(angle) * lo;
        guess.cb.col(homo) = std::cos(angle) * hi - std::sin(angle) * lo;
        guess.cb.col(lumo) = std::sin(angle) * hi + std::cos(angle) * lo;
      }
    }
  } else if (seeded_pair) {
    guess.ca = options.guess_alpha;
    guess.cb = options.guess_beta;
  } else {
    const Eigen::MatrixXd x = symmetric_orthogonalizer(ints.overlap);
    Eigen::VectorXd e0;
    solve_roothaan(ints.core_hamiltonian(), x, guess.ca, e0);
    guess.cb = guess.ca;
  }

  ScfResult uhf = run_scf_loop(ints, n_alpha, n_beta, guess,
                               /*restricted=*/false, options);
  uhf.restricted = false;

  // The mixed guess either relaxes to a genuinely lower broken-symmetry
  // solution or drifts back to (or above) the restricted one. In the latter
  // case the restricted solution is the cleaner representative, so return it.
  if (have_rhf && uhf.energy > rhf.energy - 1e-8) {
    return rhf;
  }
  return uhf;
}

SpatialMoIntegrals transform_to_mo(const IntegralSet& ints,
                                   const Eigen::MatrixXd& coeff) {
  const std::size_t m = ints.size();
  require(static_cast<std::size_t>(coeff.rows()) == m &&
              static_cast<std::size_t>(coeff.cols()) == m,
          ErrorCode::invalid_argument, "coefficient matrix must be ", m, "x",
          m);
  const Eigen::MatrixXd gram = coeff.transpose() * ints.overlap * coeff;
  const double dev =
      (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  require(dev < 1e-8, ErrorCode::invalid_argument,
          "orbital coefficients are not orthonormal in the overlap metric "
          "(max deviation ",
          dev, ")");

  SpatialMoIntegrals mo;
  mo.m = m;
  mo.e_nuclear = ints.e_nuclear;
  mo.h = coeff.transpose() * ints.core_hamiltonian() * coeff;
  mo.eri = transform_eri(ints.eri, coeff, coeff);
  return mo;
}

EriTensor transform_eri(const EriTensor& eri, const Eigen::MatrixXd& bra,
                        const Eigen::MatrixXd& ket) {
  const std::size_t m = eri.extent();
  // Quarter transforms: (pq|rs) -> (iq|rs) -> (ij|rs) -> (ij|ks) -> (ij|kl),
  // bra pair through `bra`, ket pair through `ket`.
  EriTensor t1(m), t2(m), t3(m), t4(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          double sum = 0.0;
          for (std::size_t p = 0; p < m; ++p) sum += bra(p, i) * eri(p, q, r, s);
          t1(i, q, r, s) = sum;
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          double sum = 0.0;
          for (std::size_t q = 0; q < m; ++q) sum += bra(q, j) * t1(i, q, r, s);
          t2(i, j, r, s) = sum;
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t s = 0; s < m; ++s) {
          double sum = 0.0;
          for (std::size_t r = 0; r < m; ++r) sum += ket(r, k) * t2(i, j, r, s);
          t3(i, j, k, s) = sum;
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
          double sum = 0.0;
          for (std::size_t s = 0; s < m; ++s) sum += ket(s, l) * t3(i, j, k, s);
          t4(i, j, k, l) = sum;
        }
  return t4;
}

MoIntegrals transform_to_spin_mo(const IntegralSet& ints,
                                 const Eigen::MatrixXd& coeff_alpha,
                                 const Eigen::MatrixXd& coeff_beta) {
  const SpatialMoIntegrals a = transform_to_mo(ints, coeff_alpha);
  const SpatialMoIntegrals b = transform_to_mo(ints, coeff_beta);
  MoIntegrals mo;
  mo.m = ints.size();
  mo.e_nuclear = ints.e_nuclear;
  mo.h_alpha = a.h;
  mo.h_beta = b.h;
  mo.eri_aaaa = a.eri;
  mo.eri_bbbb = b.eri;
  mo.eri_aabb = transform_eri(ints.eri, coeff_alpha, coeff_beta);
  return mo;
}

}  // namespace entcorr
