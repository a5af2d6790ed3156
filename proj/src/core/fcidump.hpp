#pragma once

#include <string>

#include "core/mo_integrals.hpp"

namespace entcorr {

// Electron count and doubled spin projection carried in an integral-file
// header alongside the orbital count.
struct FcidumpMeta {
  int nelec = 0;
  int ms2 = 0;
};

// A parsed plain-text integral file: orthonormal-orbital h and chemists'
// (ij|kl) plus the constant nuclear term, with the header metadata.
struct FcidumpFile {
  SpatialMoIntegrals integrals;
  FcidumpMeta meta;
};

// Render integrals in the conventional plain-text interchange layout:
// a namelist-style header (NORB, NELEC, MS2, ORBSYM, ISYM) closed by " /",
// then one record per line as "%23.16E %3d %3d %3d %3d" with 1-based
// indices. Every symmetry-unique record is written, two-electron values
// first (i >= j, k >= l, pair (i,j) >= pair (k,l)), then h_ij for i >= j
// with k = l = 0, then the nuclear constant with all indices zero. The
// ordering is fixed, so equal inputs produce byte-identical text.
std::string write_fcidump(const SpatialMoIntegrals& ints, const FcidumpMeta& meta);

// Parse the text format back. Index conventions: all four indices in
// 1..NORB is a two-electron value (expanded to all eight symmetry images),
// k = l = 0 a one-electron value, all zero the nuclear constant; anything
// else is malformed. Records may appear in any order, later duplicates win,
// and missing entries stay zero. Malformed headers or records and indices
// outside 0..NORB raise parse errors naming the offending line.
FcidumpFile read_fcidump(const std::string& text);

// read_fcidump on a file's contents; unreadable paths raise an io error.
FcidumpFile read_fcidump_file(const std::string& path);

}  // namespace entcorr
