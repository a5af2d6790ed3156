#include "entcorr/entcorr.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/results.hpp"
#include "core/spinmodel.hpp"

struct entcorr_table {
  entcorr::ResultTable data;
};

namespace {

thread_local std::string g_last_error;

entcorr_status status_of(entcorr::ErrorCode code) {
  switch (code) {
    case entcorr::ErrorCode::invalid_argument:
      return ENTCORR_ERR_INVALID_ARGUMENT;
    case entcorr::ErrorCode::parse:
      return ENTCORR_ERR_PARSE;
    case entcorr::ErrorCode::conditioning:
      // An ill-conditioned problem is fixable only by changing the inputs,
      // so it reports as an argument problem rather than an internal one.
      return ENTCORR_ERR_INVALID_ARGUMENT;
    case entcorr::ErrorCode::not_converged:
      return ENTCORR_ERR_NOT_CONVERGED;
    case entcorr::ErrorCode::unsupported:
      return ENTCORR_ERR_UNSUPPORTED;
    case entcorr::ErrorCode::io:
      return ENTCORR_ERR_IO;
    case entcorr::ErrorCode::internal:
      return ENTCORR_ERR_INTERNAL;
  }
  return ENTCORR_ERR_INTERNAL;
}

// Runs the body, translating exceptions into status codes + last-error text.
template <typename Fn>
entcorr_status guarded(Fn&& fn) {
  try {
    fn();
    return ENTCORR_OK;
  } catch (const entcorr::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ENTCORR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ENTCORR_ERR_INTERNAL;
  }
}

entcorr_status invalid(const char* message) {
  g_last_error = message;
  return ENTCORR_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

entcorr::AnalysisOptions to_analysis(const entcorr_analysis_options* in) {
  entcorr::AnalysisOptions out;
  if (in != nullptr) {
    out.spatial_orbital = in->spatial_orbital;
    out.spin_mode = in->spin_mode;
    out.degeneracy_window = in->degeneracy_window;
  }
  return out;
}

entcorr_status deliver(entcorr::ResultTable&& table, entcorr_table** out) {
  *out = new entcorr_table{std::move(table)};
  return ENTCORR_OK;
}

}  // namespace

extern "C" {

const char* entcorr_last_error(void) { return g_last_error.c_str(); }

const char* entcorr_version(void) { return "1.0.0"; }

void entcorr_table_free(entcorr_table* table) { delete table; }

size_t entcorr_table_row_count(const entcorr_table* table) {
  return table == nullptr ? 0 : table->data.row_count();
}

size_t entcorr_table_column_count(const entcorr_table* table) {
  return table == nullptr ? 0 : table->data.columns.size();
}

const char* entcorr_table_column_name(const entcorr_table* table,
                                      size_t column) {
  if (table == nullptr || column >= table->data.columns.size()) return nullptr;
  return table->data.columns[column].c_str();
}

entcorr_status entcorr_table_value(const entcorr_table* table, size_t row,
                                   const char* column, double* out) {
  if (table == nullptr) return invalid("table is NULL");
  if (column == nullptr) return invalid("column name is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  if (row >= table->data.row_count()) return invalid("row index out of range");
  return guarded([&] { *out = table->data.value(row, column); });
}

const char* entcorr_table_row_tag(const entcorr_table* table, size_t row) {
  static const std::string untagged;
  if (table == nullptr || row >= table->data.row_count()) return nullptr;
  if (table->data.tags.size() <= row) return untagged.c_str();
  return table->data.tags[row].c_str();
}

entcorr_status entcorr_table_render(const entcorr_table* table,
                                    const char* format, char** out) {
  if (table == nullptr) return invalid("table is NULL");
  if (format == nullptr) return invalid("format is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  return guarded([&] {
    std::string text;
    if (std::strcmp(format, "csv") == 0) {
      text = entcorr::to_csv(table->data);
    } else if (std::strcmp(format, "json") == 0) {
      text = entcorr::to_json(table->data);
    } else {
      entcorr::fail(entcorr::ErrorCode::invalid_argument,
                    "unknown render format '", format,
                    "' (expected csv or json)");
    }
    char* copy = copy_string(text);
    if (copy == nullptr)
      entcorr::fail(entcorr::ErrorCode::internal, "out of memory");
    *out = copy;
  });
}

void entcorr_string_free(char* text) { std::free(text); }

void entcorr_analysis_options_init(entcorr_analysis_options* options) {
  if (options == nullptr) return;
  const entcorr::AnalysisOptions defaults;
  options->spatial_orbital = defaults.spatial_orbital;
  options->spin_mode = defaults.spin_mode;
  options->degeneracy_window = defaults.degeneracy_window;
}

void entcorr_scan_config_init(entcorr_scan_config* config) {
  if (config == nullptr) return;
  const entcorr::ScanConfig defaults;
  config->basis_path = nullptr;
  config->r_start_angstrom = defaults.r_start_angstrom;
  config->r_stop_angstrom = defaults.r_stop_angstrom;
  config->r_step_angstrom = defaults.r_step_angstrom;
  config->include_uhf = 1;
  config->include_rhf = 1;
  entcorr_analysis_options_init(&config->analysis);
  config->warm_start = 0;
  config->threads = 0;
}

entcorr_status entcorr_h2_scan(const entcorr_scan_config* config,
                               entcorr_table** out, size_t* failed_rows) {
  if (config == nullptr) return invalid("config is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  if (config->basis_path == nullptr) return invalid("basis_path is NULL");
  if (config->include_uhf == 0 && config->include_rhf == 0)
    return invalid("at least one reference must be included");
  return guarded([&] {
    entcorr::ScanConfig cfg;
    cfg.basis_path = config->basis_path;
    cfg.r_start_angstrom = config->r_start_angstrom;
    cfg.r_stop_angstrom = config->r_stop_angstrom;
    cfg.r_step_angstrom = config->r_step_angstrom;
    cfg.references.clear();
    if (config->include_uhf != 0)
      cfg.references.push_back(entcorr::ReferenceKind::uhf);
    if (config->include_rhf != 0)
      cfg.references.push_back(entcorr::ReferenceKind::rhf);
    cfg.analysis = to_analysis(&config->analysis);
    cfg.warm_start = config->warm_start != 0;
    cfg.threads = config->threads;

    entcorr::ScanOutcome outcome = entcorr::run_h2_scan(cfg);
    if (failed_rows != nullptr) *failed_rows = outcome.failures.size();
    if (!outcome.failures.empty()) {
      const entcorr::PointFailure& first = outcome.failures.front();
      std::ostringstream os;
      os.precision(12);
      os << outcome.failures.size() << " analyses failed; first: r = "
         << first.r_angstrom << " angstrom, " << first.reference << ": "
         << first.message;
      g_last_error = os.str();
    }
    deliver(std::move(outcome.table), out);
  });
}

entcorr_status entcorr_he_point(const char* basis_path,
                                const entcorr_analysis_options* options,
                                entcorr_table** out) {
  if (basis_path == nullptr) return invalid("basis_path is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  return guarded([&] {
    deliver(entcorr::run_he_point(basis_path, to_analysis(options)), out);
  });
}

entcorr_status entcorr_fcidump_run(const char* path,
                                   const entcorr_analysis_options* options,
                                   entcorr_table** out) {
  if (path == nullptr) return invalid("path is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  return guarded([&] {
    deliver(entcorr::run_from_fcidump(path, to_analysis(options)), out);
  });
}

entcorr_status entcorr_export_fcidump(const char* system,
                                      const char* basis_path,
                                      double r_angstrom, char** out) {
  if (system == nullptr) return invalid("system is NULL");
  if (basis_path == nullptr) return invalid("basis_path is NULL");
  if (out == nullptr) return invalid("output pointer is NULL");
  return guarded([&] {
    const std::string text =
        entcorr::export_fcidump_text(system, basis_path, r_angstrom);
    char* copy = copy_string(text);
    if (copy == nullptr)
      entcorr::fail(entcorr::ErrorCode::internal, "out of memory");
    *out = copy;
  });
}

entcorr_status entcorr_spin_sweep(const double* r_bohr, size_t r_count,
                                  const double* b_values, size_t b_count,
                                  double gamma, entcorr_table** out) {
  if (out == nullptr) return invalid("output pointer is NULL");
  if (r_bohr == nullptr && r_count > 0) return invalid("r_bohr is NULL");
  if (b_values == nullptr && b_count > 0) return invalid("b_values is NULL");
  return guarded([&] {
    const std::vector<double> r(r_bohr, r_bohr + r_count);
    const std::vector<double> b(b_values, b_values + b_count);
    deliver(entcorr::run_spin_sweep(r, b, gamma), out);
  });
}

entcorr_status entcorr_spin_ground_entropy(double j, double b, double gamma,
                                           double* out) {
  if (out == nullptr) return invalid("output pointer is NULL");
  return guarded(
      [&] { *out = entcorr::ground_state_entropy({j, b, gamma}); });
}

entcorr_status entcorr_exchange_coupling(double r_bohr, double* value,
                                         int* asymptotic_valid) {
  if (value == nullptr) return invalid("output pointer is NULL");
  return guarded([&] {
    const entcorr::ExchangeCoupling j = entcorr::exchange_coupling(r_bohr);
    *value = j.value;
    if (asymptotic_valid != nullptr)
      *asymptotic_valid = j.asymptotic_valid ? 1 : 0;
  });
}

}  // extern "C"
