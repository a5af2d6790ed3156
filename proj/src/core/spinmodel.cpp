#include "core/spinmodel.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace entcorr {

namespace {

// Shannon entropy (base 2) of a two-outcome distribution, evaluated with
// log1p so a tiny minority probability keeps full relative accuracy.
double binary_entropy(double p_small) {
  if (p_small <= 0.0) return 0.0;
  if (p_small >= 1.0) return 0.0;
  const double ln2 = std::log(2.0);
  return -p_small * std::log2(p_small) -
         (1.0 - p_small) * std::log1p(-p_small) / ln2;
}

}  // namespace

Eigen::Matrix4d spin_hamiltonian(const SpinModelParams& params) {
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  const double jg = params.j * params.gamma;
  h(0, 0) = -2.0 * params.b;
  h(3, 3) = 2.0 * params.b;
  h(0, 3) = h(3, 0) = -jg;
  h(1, 2) = h(2, 1) = -params.j;
  return h;
}

SpinSpectrum analytic_spectrum(const SpinModelParams& params) {
  const double jg = params.j * params.gamma;
  const double alpha = std::hypot(2.0 * params.b, jg);
  require(alpha != 0.0 || params.j != 0.0, ErrorCode::invalid_argument,
          "spin model parameters produce a zero Hamiltonian");

  const double inv = 1.0 / std::sqrt(2.0);
  Eigen::Vector4d aligned_low_vec, aligned_high_vec;
  if (alpha == 0.0) {
    // The (uu, dd) block vanishes; any basis of it works, so keep the axis
    // states.
    aligned_low_vec << 1.0, 0.0, 0.0, 0.0;
    aligned_high_vec << 0.0, 0.0, 0.0, 1.0;
  } else {
    // Components (alpha +- 2B) / (2 alpha): derive the smaller one from the
    // product identity (alpha - 2B)(alpha + 2B) = (J gamma)^2 so it never
    // suffers cancellation.
    const double sign = jg < 0.0 ? -1.0 : 1.0;
    const double babs = std::abs(params.b);
    const double big = std::sqrt((alpha + 2.0 * babs) / (2.0 * alpha));
    const double small =
        std::abs(jg) / std::sqrt(2.0 * alpha * (alpha + 2.0 * babs));
    const double cp = params.b >= 0.0 ? big : small;
    const double cm = params.b >= 0.0 ? small : big;
    aligned_low_vec << cp, 0.0, 0.0, sign * cm;
    aligned_high_vec << -sign * cm, 0.0, 0.0, cp;
  }

  std::array<SpinEigenpair, 4> states{{
      {-alpha, aligned_low_vec},
      {alpha, aligned_high_vec},
      {-params.j, Eigen::Vector4d(0.0, inv, inv, 0.0)},
      {params.j, Eigen::Vector4d(0.0, -inv, inv, 0.0)},
  }};
  std::stable_sort(states.begin(), states.end(),
                   [](const SpinEigenpair& a, const SpinEigenpair& b) {
                     return a.energy < b.energy;
                   });
  return {states};
}

double ground_state_entropy(const SpinModelParams& params) {
  const double jg = params.j * params.gamma;
  const double alpha = std::hypot(2.0 * params.b, jg);
  require(alpha != 0.0 || params.j != 0.0, ErrorCode::invalid_argument,
          "spin model parameters produce a zero Hamiltonian");
  if (std::abs(params.j) > alpha) return 1.0;  // Bell pair on (ud, du)
  const double babs = std::abs(params.b);
  const double p_small = (jg * jg) / (2.0 * alpha * (alpha + 2.0 * babs));
  return binary_entropy(p_small);
}

double ising_entropy_from_ratio(double lambda) {
  if (lambda == 0.0) return 0.0;
  const double l2 = lambda * lambda;
  const double q = std::sqrt(4.0 + l2);
  // Original form:
  //   S = -1/2 log2(1/4 - 1/(4 + l^2))
  //       + log2((q - 2) / (q + 2)) / q.
  // Substituting 1/4 - 1/(4 + l^2) = l^2 / (4 (4 + l^2)) and
  // q - 2 = l^2 / (q + 2) removes the subtractions that underflow at small
  // lambda.
  const double term1 = -0.5 * std::log2(l2 / (4.0 * (4.0 + l2)));
  const double term2 = std::log2(l2 / ((q + 2.0) * (q + 2.0))) / q;
  return term1 + term2;
}

ExchangeCoupling exchange_coupling(double r_bohr) {
  require(r_bohr > 0.0, ErrorCode::invalid_argument,
          "exchange coupling needs a positive distance, got ", r_bohr);
  ExchangeCoupling out;
  out.value = -0.821 * std::pow(r_bohr, 2.5) * std::exp(-2.0 * r_bohr);
  out.asymptotic_valid = r_bohr >= 1.0;
  return out;
}

std::vector<SpinSweepRow> sweep_entanglement(const std::vector<double>& r_bohr,
                                             const std::vector<double>& b_values,
                                             double gamma) {
  std::vector<SpinSweepRow> rows;
  rows.reserve(r_bohr.size() * b_values.size());
  for (double b : b_values) {
    for (double r : r_bohr) {
      const double j = exchange_coupling(r).value;
      rows.push_back({r, b, ground_state_entropy({j, b, gamma})});
    }
  }
  return rows;
}

}  // namespace entcorr
