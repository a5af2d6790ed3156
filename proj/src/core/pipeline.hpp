#pragma once

#include <string>
#include <vector>

#include "core/integrals.hpp"
#include "core/results.hpp"
#include "core/scf.hpp"

namespace entcorr {

// Which converged orbital set the correlation/entanglement analysis uses.
// The unrestricted reference may collapse to the restricted solution where
// no lower broken-symmetry solution exists.
enum class ReferenceKind { uhf, rhf };
const char* reference_name(ReferenceKind kind);

// Knobs for one analyzed geometry. The entanglement targets pick which
// subsystems are traced out: `spatial_orbital` keeps that orbital's two spin
// modes (a 4x4 reduced density), `spin_mode` keeps the single mode (2x2).
struct AnalysisOptions {
  int spatial_orbital = 0;
  int spin_mode = 0;
  // Eigenvectors within this energy of the minimum count as degenerate; the
  // analysis state is the reference determinant's projection onto that
  // subspace (see ground_state).
  double degeneracy_window = 1e-5;
  ScfOptions scf;
};

// One row of analysis output: both mean-field energies, the exact (full CI)
// energy in the chosen reference's orbital space, the correlation energy
// E_c = E_ref - E_exact for the tagged reference, and the two entropies.
struct PointAnalysis {
  ReferenceKind reference = ReferenceKind::uhf;
  double e_rhf = 0.0;
  double e_uhf = 0.0;
  double e_fci = 0.0;
  double e_c = 0.0;
  double s_spatial = 0.0;
  double s_spinmode = 0.0;
};

// Full treatment of one geometry: restricted and unrestricted mean field,
// then per requested reference an exact diagonalization plus reduced-density
// entropies. References are analyzed in the order given.
std::vector<PointAnalysis> analyze_point(
    const IntegralSet& ao, const std::vector<ReferenceKind>& references,
    const AnalysisOptions& options = {});

// A dissociation scan of the two-proton, two-electron molecule.
struct ScanConfig {
  std::string basis_path;
  double r_start_angstrom = 0.3;
  double r_stop_angstrom = 6.0;
  double r_step_angstrom = 0.05;
  std::vector<ReferenceKind> references{ReferenceKind::uhf,
                                        ReferenceKind::rhf};
  AnalysisOptions analysis;
  // Seed each geometry's SCF from the previous one instead of from scratch.
  // Faster, but couples grid points: a broken-symmetry solution can be
  // followed (or missed) across the symmetry-breaking onset, so results may
  // differ from independent per-point runs. Forces sequential execution.
  bool warm_start = false;
  int threads = 0;  // worker count; 0 means all hardware threads
};

// A point whose computation failed; the scan records it and moves on.
struct PointFailure {
  double r_angstrom = 0.0;
  std::string reference;
  std::string message;
};

struct ScanOutcome {
  ResultTable table;  // rows in grid order; per R, references in config order
  std::vector<PointFailure> failures;
};

// The grid points a config describes (start, start+step, ..., up to stop
// inclusive within floating-point slack). Throws on invalid bounds.
std::vector<double> scan_grid(const ScanConfig& config);

// Runs the scan. Config errors throw before any computation; per-point
// errors land in `failures` while the remaining rows are still produced.
// Identical configs yield byte-identical tables.
ScanOutcome run_h2_scan(const ScanConfig& config);

// Single closed-shell two-electron atom, one row with R recorded as 0 and
// the restricted tag ("rhf"); the unrestricted energy column reflects the
// collapse to the restricted solution.
ResultTable run_he_point(const std::string& basis_path,
                         const AnalysisOptions& options = {});

// Spin-model sweep: ground-state entanglement of the two-spin model versus
// distance (bohr) for each field value. Zero fields are rejected.
ResultTable run_spin_sweep(const std::vector<double>& r_bohr,
                           const std::vector<double>& b_values,
                           double gamma = 1.0);

// Exact diagonalization + entanglement on externally supplied orbital
// integrals. No mean-field stage runs: the file's first orbital defines the
// reference determinant, whose diagonal energy fills both energy columns.
// Rows are tagged "fcidump". Files must declare exactly two electrons.
ResultTable run_from_fcidump(const std::string& path,
                             const AnalysisOptions& options = {});

// Restricted canonical-orbital integrals of a named two-electron system
// ("h2" at the given distance, or "he") rendered as integral-file text.
std::string export_fcidump_text(const std::string& system,
                                const std::string& basis_path,
                                double r_angstrom = 0.0);

}  // namespace entcorr
