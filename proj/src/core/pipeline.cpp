#include "core/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

#include "core/basis.hpp"
#include "core/ci.hpp"
#include "core/constants.hpp"
#include "core/determinants.hpp"
#include "core/entanglement.hpp"
#include "core/error.hpp"
#include "core/fcidump.hpp"
#include "core/molecule.hpp"
#include "core/spinmodel.hpp"

namespace entcorr {

namespace {

ResultTable make_point_table() {
  ResultTable t;
  t.columns = {"r_angstrom", "e_rhf", "e_uhf",    "e_fci",
               "e_c",        "s_spatial", "s_spinmode"};
  t.tag_name = "reference";
  return t;
}

void append_analysis(ResultTable& table, double r_angstrom,
                     const PointAnalysis& a) {
  table.add_row({r_angstrom, a.e_rhf, a.e_uhf, a.e_fci, a.e_c, a.s_spatial,
                 a.s_spinmode},
                reference_name(a.reference));
}

void validate_targets(const AnalysisOptions& options, std::size_t m) {
  require(options.spatial_orbital >= 0 &&
              options.spatial_orbital < static_cast<int>(m),
          ErrorCode::invalid_argument, "target orbital ",
          options.spatial_orbital, " outside 0..", m - 1);
  require(options.spin_mode >= 0 && options.spin_mode < static_cast<int>(2 * m),
          ErrorCode::invalid_argument, "target spin mode ", options.spin_mode,
          " outside 0..", 2 * m - 1);
  require(options.degeneracy_window >= 0.0, ErrorCode::invalid_argument,
          "degeneracy window must be nonnegative, got ",
          options.degeneracy_window);
}

// Entropy of the listed modes' subsystem; keeping every mode of a normalized
// state is the pure-state edge case with entropy exactly zero.
double subsystem_entropy(const DeterminantSpace& space,
                         const Eigen::VectorXd& amplitudes,
                         std::vector<int> kept) {
  if (kept.size() == space.mode_count()) return 0.0;
  return von_neumann_entropy(reduced_density(space, amplitudes, kept));
}

// Exact diagonalization plus entropies in a fixed orbital set, shared by the
// in-process and external-integral paths.
PointAnalysis analyze_in_orbitals(const MoIntegrals& mo, double e_rhf,
                                  double e_uhf, ReferenceKind reference,
                                  const AnalysisOptions& options) {
  validate_targets(options, mo.m);
  const DeterminantSpace space = DeterminantSpace::enumerate(mo.m);
  const Eigen::MatrixXd h = build_hamiltonian(mo, space);
  GroundStateOptions gs;
  gs.degeneracy_window = options.degeneracy_window;
  const CIVector ci = ground_state(h, space.reference_index(), gs);

  PointAnalysis out;
  out.reference = reference;
  out.e_rhf = e_rhf;
  out.e_uhf = e_uhf;
  out.e_fci = ci.energy;
  out.e_c = (reference == ReferenceKind::uhf ? e_uhf : e_rhf) - ci.energy;
  const int orb = options.spatial_orbital;
  out.s_spatial =
      subsystem_entropy(space, ci.amplitudes, {2 * orb, 2 * orb + 1});
  out.s_spinmode = subsystem_entropy(space, ci.amplitudes, {options.spin_mode});
  return out;
}

// Per-point SCF seeds used by warm-started scans.
struct ScfSeeds {
  Eigen::MatrixXd rhf;
  Eigen::MatrixXd uhf_alpha, uhf_beta;
};

struct ScfPair {
  ScfResult rhf, uhf;
};

ScfPair run_references(const IntegralSet& ao, const ScfOptions& base,
                       const ScfSeeds* seeds) {
  ScfPair out;
  ScfOptions rhf_opts = base;
  ScfOptions uhf_opts = base;
  if (seeds != nullptr) {
    rhf_opts.guess_alpha = seeds->rhf;
    rhf_opts.guess_beta.resize(0, 0);
    uhf_opts.guess_alpha = seeds->uhf_alpha;
    uhf_opts.guess_beta = seeds->uhf_beta;
  }
  out.rhf = run_rhf(ao, 2, rhf_opts);
  out.uhf = run_uhf(ao, 2, uhf_opts);
  return out;
}

std::vector<PointAnalysis> analyze_with_scf(
    const IntegralSet& ao, const std::vector<ReferenceKind>& references,
    const AnalysisOptions& options, const ScfSeeds* seeds) {
  require(!references.empty(), ErrorCode::invalid_argument,
          "at least one reference must be requested");
  validate_targets(options, ao.size());
  const ScfPair scf = run_references(ao, options.scf, seeds);

  std::vector<PointAnalysis> rows;
  rows.reserve(references.size());
  for (ReferenceKind ref : references) {
    const MoIntegrals mo =
        ref == ReferenceKind::rhf
            ? MoIntegrals::restricted(transform_to_mo(ao, scf.rhf.coeff_alpha))
            : transform_to_spin_mo(ao, scf.uhf.coeff_alpha,
                                   scf.uhf.coeff_beta);
    rows.push_back(analyze_in_orbitals(mo, scf.rhf.energy, scf.uhf.energy, ref,
                                       options));
  }
  return rows;
}

struct PointOutcome {
  std::vector<PointAnalysis> rows;
  std::vector<std::pair<ReferenceKind, std::string>> errors;
  ScfPair scf;
  bool scf_ok = false;
};

PointOutcome compute_scan_point(const IntegralSet& ao,
                                const ScanConfig& config,
                                const ScfSeeds* seeds) {
  PointOutcome out;
  try {
    out.scf = run_references(ao, config.analysis.scf, seeds);
    out.scf_ok = true;
  } catch (const std::exception& e) {
    for (ReferenceKind ref : config.references)
      out.errors.emplace_back(ref, e.what());
    return out;
  }
  for (ReferenceKind ref : config.references) {
    try {
      const MoIntegrals mo =
          ref == ReferenceKind::rhf
              ? MoIntegrals::restricted(
                    transform_to_mo(ao, out.scf.rhf.coeff_alpha))
              : transform_to_spin_mo(ao, out.scf.uhf.coeff_alpha,
                                     out.scf.uhf.coeff_beta);
      out.rows.push_back(analyze_in_orbitals(mo, out.scf.rhf.energy,
                                             out.scf.uhf.energy, ref,
                                             config.analysis));
    } catch (const std::exception& e) {
      out.errors.emplace_back(ref, e.what());
    }
  }
  return out;
}

}  // namespace

const char* reference_name(ReferenceKind kind) {
  return kind == ReferenceKind::uhf ? "uhf" : "rhf";
}

std::vector<PointAnalysis> analyze_point(
    const IntegralSet& ao, const std::vector<ReferenceKind>& references,
    const AnalysisOptions& options) {
  return analyze_with_scf(ao, references, options, nullptr);
}

std::vector<double> scan_grid(const ScanConfig& config) {
  require(config.r_step_angstrom > 0.0, ErrorCode::invalid_argument,
          "grid step must be positive, got ", config.r_step_angstrom);
  require(config.r_start_angstrom > 0.0, ErrorCode::invalid_argument,
          "grid start must be a positive distance, got ",
          config.r_start_angstrom);
  require(config.r_start_angstrom < config.r_stop_angstrom,
          ErrorCode::invalid_argument, "grid start ", config.r_start_angstrom,
          " must lie below stop ", config.r_stop_angstrom);
  std::vector<double> grid;
  const double span = config.r_stop_angstrom - config.r_start_angstrom;
  const auto count =
      static_cast<std::size_t>(std::floor(span / config.r_step_angstrom +
                                          1e-9)) +
      1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    grid.push_back(config.r_start_angstrom +
                   static_cast<double>(i) * config.r_step_angstrom);
  return grid;
}

ScanOutcome run_h2_scan(const ScanConfig& config) {
  const std::vector<double> grid = scan_grid(config);
  require(!config.references.empty(), ErrorCode::invalid_argument,
          "at least one reference must be requested");
  // Loading the basis up front validates the config before any computation
  // and shares the parsed set across workers.
  const BasisSet set = BasisSet::load_gaussian94_file(config.basis_path);

  auto integrals_at = [&](double r_angstrom) {
    const Molecule mol = Molecule::h2(angstrom_to_bohr(r_angstrom));
    return compute_integrals(mol, OrbitalBasis::build(mol, set));
  };

  std::vector<PointOutcome> outcomes(grid.size());
  if (config.warm_start) {
    // Sequential by construction: each point seeds from its predecessor.
    ScfSeeds seeds;
    bool have_seeds = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const IntegralSet ao = integrals_at(grid[i]);
      outcomes[i] =
          compute_scan_point(ao, config, have_seeds ? &seeds : nullptr);
      if (outcomes[i].scf_ok) {
        const ScfPair& scf = outcomes[i].scf;
        seeds.rhf = scf.rhf.coeff_alpha;
        if (scf.uhf.restricted) {
          // Previous point collapsed: pass no unrestricted pair so the next
          // point still tries the symmetry-breaking mixed guess.
          seeds.uhf_alpha.resize(0, 0);
          seeds.uhf_beta.resize(0, 0);
        } else {
          seeds.uhf_alpha = scf.uhf.coeff_alpha;
          seeds.uhf_beta = scf.uhf.coeff_beta;
        }
        have_seeds = true;
      }
    }
  } else {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(config.threads > 0
                                  ? static_cast<std::size_t>(config.threads)
                                  : hw,
                              grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i = next.fetch_add(1); i < grid.size();
           i = next.fetch_add(1)) {
        outcomes[i] = compute_scan_point(integrals_at(grid[i]), config,
                                         nullptr);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  ScanOutcome out;
  out.table = make_point_table();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (const PointAnalysis& row : outcomes[i].rows)
      append_analysis(out.table, grid[i], row);
    for (const auto& [ref, message] : outcomes[i].errors)
      out.failures.push_back({grid[i], reference_name(ref), message});
  }
  return out;
}

ResultTable run_he_point(const std::string& basis_path,
                         const AnalysisOptions& options) {
  const BasisSet set = BasisSet::load_gaussian94_file(basis_path);
  const Molecule mol = Molecule::helium();
  const IntegralSet ao = compute_integrals(mol, OrbitalBasis::build(mol, set));
  const std::vector<PointAnalysis> rows =
      analyze_point(ao, {ReferenceKind::rhf}, options);
  ResultTable table = make_point_table();
  append_analysis(table, 0.0, rows.front());
  return table;
}

ResultTable run_spin_sweep(const std::vector<double>& r_bohr,
                           const std::vector<double>& b_values,
                           double gamma) {
  require(!r_bohr.empty(), ErrorCode::invalid_argument,
          "sweep needs at least one distance");
  require(!b_values.empty(), ErrorCode::invalid_argument,
          "sweep needs at least one field value");
  for (double b : b_values)
    require(b != 0.0, ErrorCode::invalid_argument,
            "field values must be nonzero (the entropy is defined through "
            "J/B)");
  ResultTable table;
  table.columns = {"r_bohr", "b", "entropy"};
  for (const SpinSweepRow& row : sweep_entanglement(r_bohr, b_values, gamma))
    table.add_row({row.r_bohr, row.b, row.entropy});
  return table;
}

ResultTable run_from_fcidump(const std::string& path,
                             const AnalysisOptions& options) {
  const FcidumpFile file = read_fcidump_file(path);
  require(file.meta.nelec == 2, ErrorCode::unsupported,
          "only two-electron systems are supported; the file declares ",
          file.meta.nelec, " electrons");
  const MoIntegrals mo = MoIntegrals::restricted(file.integrals);
  validate_targets(options, mo.m);

  // The reference-determinant expectation value stands in for both
  // mean-field energies; with canonical restricted orbitals it is the
  // restricted mean-field energy.
  const DeterminantSpace space = DeterminantSpace::enumerate(mo.m);
  const Eigen::MatrixXd h = build_hamiltonian(mo, space);
  const auto ref_idx = static_cast<Eigen::Index>(space.reference_index());
  const double e_ref = h(ref_idx, ref_idx);

  PointAnalysis row = analyze_in_orbitals(mo, e_ref, e_ref,
                                          ReferenceKind::rhf, options);
  ResultTable table = make_point_table();
  table.add_row({0.0, row.e_rhf, row.e_uhf, row.e_fci, row.e_c, row.s_spatial,
                 row.s_spinmode},
                "fcidump");
  return table;
}

std::string export_fcidump_text(const std::string& system,
                                const std::string& basis_path,
                                double r_angstrom) {
  const BasisSet set = BasisSet::load_gaussian94_file(basis_path);
  Molecule mol = [&] {
    if (system == "he") return Molecule::helium();
    if (system == "h2") {
      require(r_angstrom > 0.0, ErrorCode::invalid_argument,
              "the diatomic needs a positive distance, got ", r_angstrom);
      return Molecule::h2(angstrom_to_bohr(r_angstrom));
    }
    fail(ErrorCode::invalid_argument, "unknown system '", system,
         "' (expected 'h2' or 'he')");
  }();
  const IntegralSet ao = compute_integrals(mol, OrbitalBasis::build(mol, set));
  const ScfResult rhf = run_rhf(ao, 2, ScfOptions{});
  return write_fcidump(transform_to_mo(ao, rhf.coeff_alpha), {2, 0});
}

}  // namespace entcorr
