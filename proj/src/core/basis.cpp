#include "core/basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace entcorr {

namespace {

// Gaussian94 files write Fortran doubles; fold D exponents into E.
double parse_number(std::string token, int line_number) {
  for (char& c : token)
    if (c == 'D' || c == 'd') c = 'E';
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "line ", line_number, ": expected a number, got '",
         token, "'");
  }
  require(used == token.size(), ErrorCode::parse, "line ", line_number,
          ": trailing characters in number '", token, "'");
  return value;
}

bool blank_or_comment(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '!' || line[first] == '#';
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

double primitive_norm(double exponent) {
  return std::pow(2.0 * exponent / std::numbers::pi, 0.75);
}

void normalize_shell(Shell& shell) {
  require(!shell.primitives.empty(), ErrorCode::parse, "shell has no primitives");
  for (auto& p : shell.primitives) {
    require(p.exponent > 0.0 && std::isfinite(p.exponent), ErrorCode::parse,
            "primitive exponent ", p.exponent, " is not positive");
    require(std::isfinite(p.coefficient), ErrorCode::parse,
            "primitive coefficient is not finite");
    p.coefficient *= primitive_norm(p.exponent);
  }
  double self_overlap = 0.0;
  for (const auto& a : shell.primitives)
    for (const auto& b : shell.primitives)
      self_overlap += a.coefficient * b.coefficient *
                      std::pow(std::numbers::pi / (a.exponent + b.exponent), 1.5);
  require(self_overlap > 0.0, ErrorCode::parse,
          "contracted shell has non-positive self-overlap ", self_overlap);
  const double rescale = 1.0 / std::sqrt(self_overlap);
  for (auto& p : shell.primitives) p.coefficient *= rescale;
}

BasisSet BasisSet::parse_gaussian94(const std::string& text) {
  BasisSet set;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;

  auto next_content_line = [&](std::string& out) {
    while (std::getline(stream, line)) {
      ++line_number;
      if (!blank_or_comment(line)) {
        out = trim(line);
        return true;
      }
    }
    return false;
  };

  std::string current;
  // Leading **** separators before the first element block are optional.
  while (next_content_line(current)) {
    if (current.rfind("****", 0) == 0) continue;

    // Element header: "<symbol> 0".
    std::istringstream header(current);
    std::string symbol;
    header >> symbol;
    int z = 0;
    try {
      z = atomic_number_from_symbol(symbol);
    } catch (const Error&) {
      fail(ErrorCode::parse, "line ", line_number,
           ": expected element header, got '", current, "'");
    }
    require(!set.shells_.count(z), ErrorCode::parse, "line ", line_number,
            ": duplicate basis block for element ", symbol);

    std::vector<Shell> shells;
    while (true) {
      std::string shell_line;
      require(next_content_line(shell_line), ErrorCode::parse,
              "unexpected end of basis text inside block for ", symbol);
      if (shell_line.rfind("****", 0) == 0) break;

      std::istringstream sl(shell_line);
      std::string type;
      int nprim = 0;
      require(static_cast<bool>(sl >> type >> nprim), ErrorCode::parse, "line ",
              line_number, ": malformed shell header '", shell_line, "'");
      std::transform(type.begin(), type.end(), type.begin(), ::toupper);
      require(type == "S", ErrorCode::unsupported, "line ", line_number,
              ": shell type '", type, "' not supported, engine handles s shells only");
      require(nprim >= 1, ErrorCode::parse, "line ", line_number,
              ": shell with ", nprim, " primitives");

      Shell shell;
      for (int i = 0; i < nprim; ++i) {
        std::string prim_line;
        require(next_content_line(prim_line), ErrorCode::parse,
                "unexpected end of basis text in shell for ", symbol);
        std::istringstream pl(prim_line);
        std::string e_tok, c_tok;
        require(static_cast<bool>(pl >> e_tok >> c_tok), ErrorCode::parse,
                "line ", line_number, ": malformed primitive line '", prim_line,
                "'");
        Primitive p;
        p.exponent = parse_number(e_tok, line_number);
        p.coefficient = parse_number(c_tok, line_number);
        shell.primitives.push_back(p);
      }
      normalize_shell(shell);
      shells.push_back(std::move(shell));
    }
    require(!shells.empty(), ErrorCode::parse, "element ", symbol,
            " has no shells");
    set.shells_[z] = std::move(shells);
  }
  require(!set.shells_.empty(), ErrorCode::parse, "no basis blocks found");
  return set;
}

BasisSet BasisSet::load_gaussian94_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::io, "cannot open basis file '", path,
          "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_gaussian94(buffer.str());
  } catch (const Error& e) {
    fail(e.code(), path, ": ", e.what());
  }
}

std::string BasisSet::to_gaussian94() const {
  std::ostringstream os;
  os << "****\n";
  for (const auto& [z, shells] : shells_) {
    os << symbol_from_atomic_number(z) << "     0\n";
    for (const auto& shell : shells) {
      os << "S    " << shell.primitives.size() << "   1.00\n";
      char buf[80];
      for (const auto& p : shell.primitives) {
        std::snprintf(buf, sizeof(buf), "   %20.12E   %20.12E\n", p.exponent,
                      p.coefficient / primitive_norm(p.exponent));
        os << buf;
      }
    }
    os << "****\n";
  }
  return os.str();
}

const std::vector<Shell>& BasisSet::shells_for(int atomic_number) const {
  const auto it = shells_.find(atomic_number);
  require(it != shells_.end(), ErrorCode::invalid_argument,
          "basis set has no entry for element ",
          symbol_from_atomic_number(atomic_number));
  return it->second;
}

bool BasisSet::has_element(int atomic_number) const {
  return shells_.count(atomic_number) > 0;
}

std::vector<int> BasisSet::elements() const {
  std::vector<int> zs;
  for (const auto& [z, unused] : shells_) zs.push_back(z);
  return zs;
}

OrbitalBasis OrbitalBasis::build(const Molecule& molecule, const BasisSet& set) {
  OrbitalBasis basis;
  for (const auto& nucleus : molecule.nuclei()) {
    for (const auto& shell : set.shells_for(nucleus.atomic_number)) {
      BasisFunction f;
      f.center = nucleus.position_bohr;
      f.shell = shell;
      basis.functions_.push_back(std::move(f));
    }
  }
  require(!basis.functions_.empty(), ErrorCode::invalid_argument,
          "empty orbital basis");
  return basis;
}

}  // namespace entcorr
