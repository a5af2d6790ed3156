#include "core/fcidump.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include "core/error.hpp"

namespace entcorr {

namespace {

void append_record(std::string& out, double value, int i, int j, int k, int l) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%23.16E %3d %3d %3d %3d\n", value, i, j, k, l);
  out += buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

// KEY = <integer> anywhere in the header text, tolerant of spacing.
bool find_header_int(const std::string& header, const char* key, int& out) {
  const std::regex pattern(std::string(key) + R"(\s*=\s*([+-]?\d+))");
  std::smatch match;
  if (!std::regex_search(header, match, pattern)) return false;
  out = std::atoi(match[1].str().c_str());
  return true;
}

double parse_value(const std::string& field, int line_no) {
  std::string text = field;
  for (char& c : text)  // Fortran-style exponents
    if (c == 'D' || c == 'd') c = 'E';
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  require(end == text.c_str() + text.size() && !text.empty(), ErrorCode::parse,
          "line ", line_no, ": expected a number, got '", field, "'");
  return value;
}

int parse_index(const std::string& field, int line_no, int norb) {
  char* end = nullptr;
  const long value = std::strtol(field.c_str(), &end, 10);
  require(end == field.c_str() + field.size() && !field.empty(),
          ErrorCode::parse, "line ", line_no, ": expected an orbital index, got '",
          field, "'");
  require(value >= 0 && value <= norb, ErrorCode::parse, "line ", line_no,
          ": orbital index ", value, " outside 0..", norb);
  return static_cast<int>(value);
}

void store_eri(EriTensor& eri, int i, int j, int k, int l, double value) {
  const auto p = static_cast<std::size_t>(i - 1);
  const auto q = static_cast<std::size_t>(j - 1);
  const auto r = static_cast<std::size_t>(k - 1);
  const auto s = static_cast<std::size_t>(l - 1);
  eri(p, q, r, s) = eri(q, p, r, s) = eri(p, q, s, r) = eri(q, p, s, r) = value;
  eri(r, s, p, q) = eri(s, r, p, q) = eri(r, s, q, p) = eri(s, r, q, p) = value;
}

}  // namespace

std::string write_fcidump(const SpatialMoIntegrals& ints, const FcidumpMeta& meta) {
  const std::size_t m = ints.m;
  require(m >= 1, ErrorCode::invalid_argument,
          "integral set must contain at least one orbital");
  require(ints.h.rows() == static_cast<Eigen::Index>(m) &&
              ints.h.cols() == static_cast<Eigen::Index>(m) &&
              ints.eri.extent() == m,
          ErrorCode::invalid_argument,
          "integral tensors disagree with the orbital count");

  std::string out;
  char buf[96];
  std::snprintf(buf, sizeof buf, " &FCI NORB=%3d,NELEC=%3d,MS2=%2d,\n",
                static_cast<int>(m), meta.nelec, meta.ms2);
  out += buf;
  out += "  ORBSYM=";
  for (std::size_t p = 0; p < m; ++p) out += "1,";
  out += "\n  ISYM=1,\n /\n";

  // Two-electron values over canonical index quadruples: i >= j, k >= l,
  // pair (i,j) >= pair (k,l) in triangular numbering.
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      for (std::size_t r = 0; r <= p; ++r)
        for (std::size_t s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          append_record(out, ints.eri(p, q, r, s), static_cast<int>(p) + 1,
                        static_cast<int>(q) + 1, static_cast<int>(r) + 1,
                        static_cast<int>(s) + 1);
        }
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q <= p; ++q)
      append_record(out, ints.h(static_cast<Eigen::Index>(p),
                                static_cast<Eigen::Index>(q)),
                    static_cast<int>(p) + 1, static_cast<int>(q) + 1, 0, 0);
  append_record(out, ints.e_nuclear, 0, 0, 0, 0);
  return out;
}

FcidumpFile read_fcidump(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  std::string header;
  bool header_closed = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1)
      require(line.find('&') != std::string::npos, ErrorCode::parse,
              "line 1: expected a namelist header starting with '&'");
    header += line;
    header += '\n';
    if (line.find('/') != std::string::npos) {
      header_closed = true;
      break;
    }
  }
  require(header_closed, ErrorCode::parse,
          "header never closed: no '/' line found");

  int norb = 0;
  require(find_header_int(header, "NORB", norb), ErrorCode::parse,
          "header is missing NORB");
  require(norb >= 1, ErrorCode::parse, "NORB must be at least 1, got ", norb);

  FcidumpFile file;
  file.meta.nelec = 0;
  file.meta.ms2 = 0;
  find_header_int(header, "NELEC", file.meta.nelec);
  find_header_int(header, "MS2", file.meta.ms2);

  const auto m = static_cast<std::size_t>(norb);
  file.integrals.m = m;
  file.integrals.h = Eigen::MatrixXd::Zero(norb, norb);
  file.integrals.eri = EriTensor(m);
  file.integrals.e_nuclear = 0.0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    require(fields.size() == 5, ErrorCode::parse, "line ", line_no,
            ": expected 'value i j k l', got ", fields.size(), " fields");
    const double value = parse_value(fields[0], line_no);
    const int i = parse_index(fields[1], line_no, norb);
    const int j = parse_index(fields[2], line_no, norb);
    const int k = parse_index(fields[3], line_no, norb);
    const int l = parse_index(fields[4], line_no, norb);

    if (i == 0 && j == 0 && k == 0 && l == 0) {
      file.integrals.e_nuclear = value;
    } else if (i >= 1 && j >= 1 && k == 0 && l == 0) {
      file.integrals.h(i - 1, j - 1) = value;
      file.integrals.h(j - 1, i - 1) = value;
    } else if (i >= 1 && j >= 1 && k >= 1 && l >= 1) {
      store_eri(file.integrals.eri, i, j, k, l, value);
    } else {
      fail(ErrorCode::parse, "line ", line_no, ": unsupported index pattern ",
           i, " ", j, " ", k, " ", l,
           " (expected ijkl, ij00, or 0000)");
    }
  }
  return file;
}

FcidumpFile read_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open integral file '", path, "'");
  std::ostringstream contents;
  contents << in.rdbuf();
  require(!in.bad(), ErrorCode::io, "failed reading integral file '", path, "'");
  return read_fcidump(contents.str());
}

}  // namespace entcorr
