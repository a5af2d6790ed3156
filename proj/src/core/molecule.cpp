#include "core/molecule.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "core/constants.hpp"
#include "core/error.hpp"

namespace entcorr {

namespace {
constexpr std::array<const char*, 11> kSymbols = {
    "X", "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne"};

std::string normalize_symbol(const std::string& raw) {
  std::string s;
  for (char c : raw) s.push_back(static_cast<char>(std::tolower(c)));
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  return s;
}
}  // namespace

int atomic_number_from_symbol(const std::string& symbol) {
  const std::string s = normalize_symbol(symbol);
  for (std::size_t z = 1; z < kSymbols.size(); ++z)
    if (s == kSymbols[z]) return static_cast<int>(z);
  fail(ErrorCode::parse, "unknown element symbol '", symbol, "'");
}

const std::string& symbol_from_atomic_number(int z) {
  static const std::vector<std::string> table(kSymbols.begin(), kSymbols.end());
  require(z >= 1 && z < static_cast<int>(table.size()), ErrorCode::invalid_argument,
          "atomic number ", z, " outside supported range");
  return table[static_cast<std::size_t>(z)];
}

Molecule::Molecule(std::vector<Nucleus> nuclei, int net_charge)
    : nuclei_(std::move(nuclei)), net_charge_(net_charge) {
  require(!nuclei_.empty(), ErrorCode::invalid_argument, "molecule has no nuclei");
  for (const auto& n : nuclei_) {
    require(n.position_bohr.allFinite(), ErrorCode::invalid_argument,
            "non-finite nuclear coordinates");
    require(n.atomic_number >= 1, ErrorCode::invalid_argument,
            "nucleus with atomic number ", n.atomic_number);
  }
  require(electron_count() >= 1, ErrorCode::invalid_argument,
          "molecule has ", electron_count(), " electrons");
}

Molecule Molecule::parse_xyz(const std::string& text, LengthUnit unit) {
  std::vector<Nucleus> nuclei;
  int net_charge = 0;
  bool saw_charge = false;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  const double scale = unit == LengthUnit::angstrom ? bohr_per_angstrom : 1.0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '!') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (normalize_symbol(head) == "Charge") {
      require(!saw_charge, ErrorCode::parse, "line ", line_number,
              ": duplicate charge line");
      require(static_cast<bool>(fields >> net_charge), ErrorCode::parse,
              "line ", line_number, ": malformed charge line '", line, "'");
      saw_charge = true;
      continue;
    }
    Nucleus n;
    try {
      n.atomic_number = atomic_number_from_symbol(head);
    } catch (const Error&) {
      fail(ErrorCode::parse, "line ", line_number, ": unknown element symbol '",
           head, "'");
    }
    n.charge = n.atomic_number;
    double x = 0, y = 0, z = 0;
    require(static_cast<bool>(fields >> x >> y >> z), ErrorCode::parse, "line ",
            line_number, ": expected '<element> <x> <y> <z>', got '", line, "'");
    n.position_bohr = scale * Eigen::Vector3d(x, y, z);
    nuclei.push_back(n);
  }
  require(!nuclei.empty(), ErrorCode::parse, "no atoms found in molecule text");
  return Molecule(std::move(nuclei), net_charge);
}

Molecule Molecule::h2(double bond_length_bohr) {
  require(bond_length_bohr > 0.0 && std::isfinite(bond_length_bohr),
          ErrorCode::invalid_argument, "H2 bond length ", bond_length_bohr,
          " bohr is not positive");
  Nucleus a{1, 1.0, Eigen::Vector3d(0, 0, 0)};
  Nucleus b{1, 1.0, Eigen::Vector3d(0, 0, bond_length_bohr)};
  return Molecule({a, b}, 0);
}

Molecule Molecule::helium() {
  return Molecule({Nucleus{2, 2.0, Eigen::Vector3d::Zero()}}, 0);
}

int Molecule::electron_count() const {
  int z = 0;
  for (const auto& n : nuclei_) z += n.atomic_number;
  return z - net_charge_;
}

double Molecule::nuclear_repulsion() const {
  double e = 0.0;
  for (std::size_t a = 0; a < nuclei_.size(); ++a)
    for (std::size_t b = a + 1; b < nuclei_.size(); ++b) {
      const double r = (nuclei_[a].position_bohr - nuclei_[b].position_bohr).norm();
      require(r > 0.0, ErrorCode::invalid_argument, "coincident nuclei ", a,
              " and ", b);
      e += nuclei_[a].charge * nuclei_[b].charge / r;
    }
  return e;
}

void Molecule::require_two_electrons() const {
  require(electron_count() == 2, ErrorCode::unsupported,
          "this engine treats exactly two electrons, molecule has ",
          electron_count());
}

}  // namespace entcorr
