// Command-line driver.  Talks to the engine exclusively through the public
// C API so it doubles as a usage example for external clients.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entcorr/entcorr.h"

namespace {

// Matches the conversion used inside the library so unit round trips are
// exact to the last bit.
constexpr double kBohrPerAngstrom = 1.8897259886;

std::string default_fixture_dir() {
  if (const char* env = std::getenv("ENTCORR_FIXTURES")) return env;
#ifdef ENTCORR_SOURCE_FIXTURE_DIR
  return ENTCORR_SOURCE_FIXTURE_DIR;
#else
  return ".";
#endif
}

// A basis argument with '/' is a path; a bare name is looked up in the
// bundled fixture directory, appending ".g94" when missing.
std::string resolve_basis(const std::string& arg) {
  if (arg.find('/') != std::string::npos) return arg;
  std::string name = arg;
  if (name.size() < 4 || name.compare(name.size() - 4, 4, ".g94") != 0)
    name += ".g94";
  return default_fixture_dir() + "/" + name;
}

int fail(const char* what) {
  std::fprintf(stderr, "entcorr: %s: %s\n", what, entcorr_last_error());
  return 1;
}

int write_text(const std::string& out_path, const char* text) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::fprintf(stderr, "entcorr: cannot write %s\n", out_path.c_str());
    return 1;
  }
  return 0;
}

int render_table(entcorr_table* table, const std::string& format,
                 const std::string& out_path) {
  char* text = nullptr;
  if (entcorr_table_render(table, format.c_str(), &text) != ENTCORR_OK)
    return fail("render");
  const int rc = write_text(out_path, text);
  entcorr_string_free(text);
  return rc;
}

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> points;
  if (step <= 0.0 || start > stop) return points;  // API reports the error
  const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9);
  for (std::size_t i = 0; i <= count; ++i)
    points.push_back(start + step * static_cast<double>(i));
  return points;
}

struct CommonOutput {
  std::string format = "csv";
  std::string out_path;
  bool verbose = false;
};

void add_output_flags(CLI::App* cmd, CommonOutput* common) {
  cmd->add_option("--format", common->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--out", common->out_path,
                  "Write to this file instead of stdout");
  cmd->add_flag("-v,--verbose", common->verbose,
                "Progress and timing on stderr");
}

void add_analysis_flags(CLI::App* cmd, entcorr_analysis_options* opts) {
  cmd->add_option("--orbital", opts->spatial_orbital,
                  "Spatial orbital traced out for s_spatial")
      ->capture_default_str();
  cmd->add_option("--spin-mode", opts->spin_mode,
                  "Spin mode traced out for s_spinmode")
      ->capture_default_str();
  cmd->add_option("--degeneracy-window", opts->degeneracy_window,
                  "Ground-manifold energy window (hartree)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Correlation energy and ground-state entanglement for two-electron "
      "systems, plus the matching two-spin exchange model."};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() {
    return std::string("entcorr ") + entcorr_version();
  });

  // -- scan-h2 ------------------------------------------------------
  entcorr_scan_config scan_cfg;
  entcorr_scan_config_init(&scan_cfg);
  std::string scan_basis = "3-21g";
  std::string scan_units = "angstrom";
  std::string scan_reference = "both";
  CommonOutput scan_out;
  CLI::App* scan = app.add_subcommand(
      "scan-h2", "Dissociation scan of H2: SCF, exact diagonalization and "
                 "entanglement at each bond length");
  scan->add_option("--basis", scan_basis,
                   "Basis set file or bundled basis name")
      ->capture_default_str();
  scan->add_option("--r-start", scan_cfg.r_start_angstrom,
                   "First bond length")->capture_default_str();
  scan->add_option("--r-stop", scan_cfg.r_stop_angstrom,
                   "Last bond length")->capture_default_str();
  scan->add_option("--r-step", scan_cfg.r_step_angstrom, "Grid spacing")
      ->capture_default_str();
  scan->add_option("--units", scan_units, "Unit of the --r-* options")
      ->check(CLI::IsMember({"angstrom", "bohr"}))
      ->capture_default_str();
  scan->add_option("--reference", scan_reference,
                   "Mean-field reference(s) to analyze")
      ->check(CLI::IsMember({"rhf", "uhf", "both"}))
      ->capture_default_str();
  scan->add_flag("--warm-start",
                 "Seed each point with the previous point's orbitals "
                 "(sequential)");
  scan->add_option("--threads", scan_cfg.threads,
                   "Worker threads (0 = hardware default)")
      ->capture_default_str();
  add_analysis_flags(scan, &scan_cfg.analysis);
  add_output_flags(scan, &scan_out);

  // -- he -----------------------------------------------------------
  std::string he_basis = "3-21g";
  entcorr_analysis_options he_opts;
  entcorr_analysis_options_init(&he_opts);
  CommonOutput he_out;
  CLI::App* he = app.add_subcommand(
      "he", "Single helium atom: correlation energy and entanglement");
  he->add_option("--basis", he_basis, "Basis set file or bundled basis name")
      ->capture_default_str();
  add_analysis_flags(he, &he_opts);
  add_output_flags(he, &he_out);

  // -- spin-sweep ----------------------------------------------------
  double sweep_start = 0.5, sweep_stop = 12.0, sweep_step = 0.05;
  std::vector<double> sweep_b = {0.05, 0.1, 0.2};
  double sweep_gamma = 1.0;
  CommonOutput sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "spin-sweep", "Two-spin model: ground-state entanglement vs distance "
                    "for each field value");
  sweep->add_option("--r-start", sweep_start, "First distance (bohr)")
      ->capture_default_str();
  sweep->add_option("--r-stop", sweep_stop, "Last distance (bohr)")
      ->capture_default_str();
  sweep->add_option("--r-step", sweep_step, "Grid spacing (bohr)")
      ->capture_default_str();
  sweep->add_option("--b-values", sweep_b,
                    "Comma-separated magnetic field strengths")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--gamma", sweep_gamma, "Exchange anisotropy")
      ->capture_default_str();
  add_output_flags(sweep, &sweep_out);

  // -- fcidump-run ----------------------------------------------------
  std::string dump_path;
  entcorr_analysis_options dump_opts;
  entcorr_analysis_options_init(&dump_opts);
  CommonOutput dump_out;
  CLI::App* dump_run = app.add_subcommand(
      "fcidump-run", "Exact diagonalization and entanglement from a "
                     "two-electron FCIDUMP file");
  dump_run->add_option("file", dump_path, "FCIDUMP file")->required();
  add_analysis_flags(dump_run, &dump_opts);
  add_output_flags(dump_run, &dump_out);

  // -- export-fcidump --------------------------------------------------
  std::string export_system;
  std::string export_basis = "3-21g";
  double export_r = 0.0;
  std::string export_units = "angstrom";
  CommonOutput export_out;
  CLI::App* exporter = app.add_subcommand(
      "export-fcidump", "Write molecular-orbital integrals of a built-in "
                        "system as FCIDUMP text");
  exporter->add_option("--system", export_system, "System: h2 or he")
      ->check(CLI::IsMember({"h2", "he"}))
      ->required();
  exporter->add_option("--basis", export_basis,
                       "Basis set file or bundled basis name")
      ->capture_default_str();
  exporter->add_option("--r", export_r, "Bond length (h2 only)");
  exporter->add_option("--units", export_units, "Unit of --r")
      ->check(CLI::IsMember({"angstrom", "bohr"}))
      ->capture_default_str();
  exporter->add_option("-o,--out", export_out.out_path,
                       "Write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0]() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  if (app.got_subcommand(scan)) {
    const std::string basis = resolve_basis(scan_basis);
    scan_cfg.basis_path = basis.c_str();
    if (scan_units == "bohr") {
      scan_cfg.r_start_angstrom /= kBohrPerAngstrom;
      scan_cfg.r_stop_angstrom /= kBohrPerAngstrom;
      scan_cfg.r_step_angstrom /= kBohrPerAngstrom;
    }
    scan_cfg.include_uhf = scan_reference != "rhf" ? 1 : 0;
    scan_cfg.include_rhf = scan_reference != "uhf" ? 1 : 0;
    scan_cfg.warm_start = scan->count("--warm-start") > 0 ? 1 : 0;

    entcorr_table* table = nullptr;
    size_t failed = 0;
    if (entcorr_h2_scan(&scan_cfg, &table, &failed) != ENTCORR_OK)
      return fail("scan-h2");
    if (scan_out.verbose)
      std::fprintf(stderr, "entcorr: %zu rows, %zu failed, %lld ms\n",
                   entcorr_table_row_count(table), failed,
                   static_cast<long long>(elapsed_ms()));
    if (failed > 0)
      std::fprintf(stderr, "entcorr: scan-h2: %s\n", entcorr_last_error());
    const int rc = render_table(table, scan_out.format, scan_out.out_path);
    entcorr_table_free(table);
    return rc != 0 ? rc : (failed > 0 ? 3 : 0);
  }

  if (app.got_subcommand(he)) {
    const std::string basis = resolve_basis(he_basis);
    entcorr_table* table = nullptr;
    if (entcorr_he_point(basis.c_str(), &he_opts, &table) != ENTCORR_OK)
      return fail("he");
    if (he_out.verbose)
      std::fprintf(stderr, "entcorr: done in %lld ms\n",
                   static_cast<long long>(elapsed_ms()));
    const int rc = render_table(table, he_out.format, he_out.out_path);
    entcorr_table_free(table);
    return rc;
  }

  if (app.got_subcommand(sweep)) {
    const std::vector<double> r = grid(sweep_start, sweep_stop, sweep_step);
    entcorr_table* table = nullptr;
    if (entcorr_spin_sweep(r.data(), r.size(), sweep_b.data(), sweep_b.size(),
                           sweep_gamma, &table) != ENTCORR_OK)
      return fail("spin-sweep");
    if (sweep_out.verbose)
      std::fprintf(stderr, "entcorr: %zu rows in %lld ms\n",
                   entcorr_table_row_count(table),
                   static_cast<long long>(elapsed_ms()));
    const int rc = render_table(table, sweep_out.format, sweep_out.out_path);
    entcorr_table_free(table);
    return rc;
  }

  if (app.got_subcommand(dump_run)) {
    entcorr_table* table = nullptr;
    if (entcorr_fcidump_run(dump_path.c_str(), &dump_opts, &table) !=
        ENTCORR_OK)
      return fail("fcidump-run");
    const int rc = render_table(table, dump_out.format, dump_out.out_path);
    entcorr_table_free(table);
    return rc;
  }

  if (app.got_subcommand(exporter)) {
    const std::string basis = resolve_basis(export_basis);
    const double r_angstrom =
        export_units == "bohr" ? export_r / kBohrPerAngstrom : export_r;
    char* text = nullptr;
    if (entcorr_export_fcidump(export_system.c_str(), basis.c_str(),
                               r_angstrom, &text) != ENTCORR_OK)
      return fail("export-fcidump");
    const int rc = write_text(export_out.out_path, text);
    entcorr_string_free(text);
    return rc;
  }

  return 0;  // unreachable: a subcommand is required
}
