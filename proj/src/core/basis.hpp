#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "core/molecule.hpp"

namespace entcorr {

struct Primitive {
  double exponent = 0.0;
  // Contraction coefficient in the unit-height convention: the contracted
  // function is sum_i coefficient_i * exp(-exponent_i r^2) and has unit
  // self-overlap after parsing.
  double coefficient = 0.0;
};

struct Shell {
  std::vector<Primitive> primitives;
};

// Per-element sets of contracted s-shells read from Gaussian94-format text.
// Normalization happens here, at parse time, so the integral code never
// sees contraction conventions.
class BasisSet {
 public:
  static BasisSet parse_gaussian94(const std::string& text);
  static BasisSet load_gaussian94_file(const std::string& path);

  // Inverse of parsing: primitive normalization factors are divided back
  // out so the emitted text re-parses to the same shells.
  std::string to_gaussian94() const;

  const std::vector<Shell>& shells_for(int atomic_number) const;
  bool has_element(int atomic_number) const;
  std::vector<int> elements() const;

 private:
  std::map<int, std::vector<Shell>> shells_;
};

// One contracted s-function pinned to a nuclear center.
struct BasisFunction {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Shell shell;
};

// The molecule's atom-ordered list of contracted functions.
class OrbitalBasis {
 public:
  static OrbitalBasis build(const Molecule& molecule, const BasisSet& set);

  std::size_t size() const { return functions_.size(); }
  const BasisFunction& operator[](std::size_t i) const { return functions_[i]; }
  const std::vector<BasisFunction>& functions() const { return functions_; }

 private:
  std::vector<BasisFunction> functions_;
};

// Normalizes a shell in place: folds per-primitive norms into the
// coefficients, then rescales to unit contracted self-overlap.
void normalize_shell(Shell& shell);

double primitive_norm(double exponent);

}  // namespace entcorr
