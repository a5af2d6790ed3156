#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace entcorr {

struct Nucleus {
  int atomic_number = 0;
  double charge = 0.0;  // equals atomic_number for the elements handled here
  Eigen::Vector3d position_bohr = Eigen::Vector3d::Zero();
};

enum class LengthUnit { angstrom, bohr };

// A point-charge nuclear frame plus a net charge. Electron count follows
// from the two. Geometry is stored in bohr regardless of input units.
class Molecule {
 public:
  Molecule(std::vector<Nucleus> nuclei, int net_charge);

  // Text format, one entry per line: "<element> <x> <y> <z>"; an optional
  // line "charge <integer>" sets the net charge (default 0). Blank lines
  // and lines starting with '#' or '!' are ignored.
  static Molecule parse_xyz(const std::string& text, LengthUnit unit);

  static Molecule h2(double bond_length_bohr);
  static Molecule helium();

  const std::vector<Nucleus>& nuclei() const { return nuclei_; }
  int net_charge() const { return net_charge_; }
  int electron_count() const;
  double nuclear_repulsion() const;

  // The engine's correlated stages handle exactly two electrons; pipelines
  // call this before running them.
  void require_two_electrons() const;

 private:
  std::vector<Nucleus> nuclei_;
  int net_charge_ = 0;
};

int atomic_number_from_symbol(const std::string& symbol);
const std::string& symbol_from_atomic_number(int z);

}  // namespace entcorr
