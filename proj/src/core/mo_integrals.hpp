#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "core/error.hpp"
#include "core/integrals.hpp"

namespace entcorr {

// One-spin molecular-orbital integrals: h in some orthonormal orbital set
// plus chemists' (pq|rs) in the same set, and the frozen nuclear energy.
struct SpatialMoIntegrals {
  std::size_t m = 0;
  Eigen::MatrixXd h;
  EriTensor eri;
  double e_nuclear = 0.0;
};

// Spin-resolved molecular-orbital integrals. Spin orbitals are interleaved:
// mode 2k is spatial orbital k with spin up, mode 2k+1 the same orbital with
// spin down; the alpha and beta spatial sets may differ (broken-symmetry
// references). One- and two-electron accessors take mode indices and apply
// the spin selection rules.
struct MoIntegrals {
  std::size_t m = 0;  // spatial orbitals per spin channel
  Eigen::MatrixXd h_alpha, h_beta;
  EriTensor eri_aaaa;  // (alpha alpha | alpha alpha)
  EriTensor eri_aabb;  // (alpha alpha | beta beta)
  EriTensor eri_bbbb;
  double e_nuclear = 0.0;

  static MoIntegrals restricted(const SpatialMoIntegrals& mo) {
    MoIntegrals out;
    out.m = mo.m;
    out.h_alpha = mo.h;
    out.h_beta = mo.h;
    out.eri_aaaa = mo.eri;
    out.eri_aabb = mo.eri;
    out.eri_bbbb = mo.eri;
    out.e_nuclear = mo.e_nuclear;
    return out;
  }

  std::size_t modes() const { return 2 * m; }

  static int spin(int mode) { return mode & 1; }
  static int spatial(int mode) { return mode >> 1; }

  double h_so(int p, int q) const {
    if (spin(p) != spin(q)) return 0.0;
    return spin(p) == 0 ? h_alpha(spatial(p), spatial(q))
                        : h_beta(spatial(p), spatial(q));
  }

  // Chemists' (pq|rs) over spin orbitals; zero unless p,q share a spin and
  // r,s share a spin.
  double eri_so(int p, int q, int r, int s) const {
    if (spin(p) != spin(q) || spin(r) != spin(s)) return 0.0;
    const auto sp = static_cast<std::size_t>(spatial(p));
    const auto sq = static_cast<std::size_t>(spatial(q));
    const auto sr = static_cast<std::size_t>(spatial(r));
    const auto ss = static_cast<std::size_t>(spatial(s));
    if (spin(p) == 0 && spin(r) == 0) return eri_aaaa(sp, sq, sr, ss);
    if (spin(p) == 0 && spin(r) == 1) return eri_aabb(sp, sq, sr, ss);
    if (spin(p) == 1 && spin(r) == 0) return eri_aabb(sr, ss, sp, sq);
    return eri_bbbb(sp, sq, sr, ss);
  }
};

}  // namespace entcorr
