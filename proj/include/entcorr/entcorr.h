/*
 * entcorr — two-electron correlation and entanglement analysis.
 *
 * C interface to the entcorr shared library.  All functions are
 * thread-safe; error messages are stored per thread.  Every function that
 * can fail returns an entcorr_status; on failure the out-parameters are
 * left untouched and entcorr_last_error() describes what went wrong.
 */
#ifndef ENTCORR_H
#define ENTCORR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* Status reporting                                                    */
/* ------------------------------------------------------------------ */

typedef enum entcorr_status {
  ENTCORR_OK = 0,
  ENTCORR_ERR_INVALID_ARGUMENT = 1, /* bad value, bad index, bad config   */
  ENTCORR_ERR_PARSE = 2,            /* malformed basis or integral file   */
  ENTCORR_ERR_NOT_CONVERGED = 3,    /* iterative solver hit its limit     */
  ENTCORR_ERR_UNSUPPORTED = 4,      /* input outside the two-electron scope */
  ENTCORR_ERR_IO = 5,               /* file could not be read or written  */
  ENTCORR_ERR_INTERNAL = 6          /* invariant violation; please report */
} entcorr_status;

/* Message for the most recent failure on the calling thread.  Never NULL
 * (empty string if nothing failed yet).  The pointer stays valid until the
 * next entcorr call on the same thread. */
const char* entcorr_last_error(void);

/* Library version as "major.minor.patch". */
const char* entcorr_version(void);

/* ------------------------------------------------------------------ */
/* Result tables                                                       */
/* ------------------------------------------------------------------ */

/* A table of numeric columns, plus one optional string tag per row
 * (e.g. which mean-field reference produced the row). */
typedef struct entcorr_table entcorr_table;

void entcorr_table_free(entcorr_table* table); /* NULL is a no-op */

size_t entcorr_table_row_count(const entcorr_table* table);
size_t entcorr_table_column_count(const entcorr_table* table);

/* Name of the given numeric column, or NULL if out of range.  The pointer
 * stays valid for the lifetime of the table. */
const char* entcorr_table_column_name(const entcorr_table* table,
                                      size_t column);

/* Value at (row, named column). */
entcorr_status entcorr_table_value(const entcorr_table* table, size_t row,
                                   const char* column, double* out);

/* Tag of the given row ("" for untagged tables), or NULL if out of range. */
const char* entcorr_table_row_tag(const entcorr_table* table, size_t row);

/* Render the table as "csv" or "json".  On success *out receives a
 * NUL-terminated heap string; release it with entcorr_string_free. */
entcorr_status entcorr_table_render(const entcorr_table* table,
                                    const char* format, char** out);

void entcorr_string_free(char* text); /* NULL is a no-op */

/* ------------------------------------------------------------------ */
/* Analysis options                                                    */
/* ------------------------------------------------------------------ */

typedef struct entcorr_analysis_options {
  /* Spatial orbital whose pair of spin modes forms the traced-out block
   * for the s_spatial column.  Default 0 (the occupied reference orbital). */
  int spatial_orbital;
  /* Single spin mode kept for the s_spinmode column.  Modes interleave
   * spin within each spatial orbital: 2k is orbital k up, 2k+1 is orbital
   * k down.  Default 0. */
  int spin_mode;
  /* Width (hartree) of the energy window treated as a degenerate ground
   * manifold when selecting the eigenstate aligned with the reference
   * determinant.  Default 1e-5. */
  double degeneracy_window;
} entcorr_analysis_options;

void entcorr_analysis_options_init(entcorr_analysis_options* options);

/* ------------------------------------------------------------------ */
/* Molecular scans                                                     */
/* ------------------------------------------------------------------ */

typedef struct entcorr_scan_config {
  /* Path to a Gaussian94-format basis set file.  Required. */
  const char* basis_path;
  /* Bond-length grid in angstrom: start, start+step, ... up to stop
   * inclusive.  Defaults 0.3, 6.0, 0.05. */
  double r_start_angstrom;
  double r_stop_angstrom;
  double r_step_angstrom;
  /* Which mean-field references to analyze at each point.  When both are
   * set the unrestricted row precedes the restricted row.  Defaults 1, 1. */
  int include_uhf;
  int include_rhf;
  entcorr_analysis_options analysis;
  /* Nonzero: walk the grid sequentially, seeding each mean field with the
   * previous point's orbitals (follows one solution branch smoothly).
   * Default 0 (points solved independently, possibly in parallel). */
  int warm_start;
  /* Worker threads for the independent-point mode; 0 picks the hardware
   * default.  Results are identical regardless of thread count. */
  int threads;
} entcorr_scan_config;

void entcorr_scan_config_init(entcorr_scan_config* config);

/* Dissociation scan of H2.  Produces one row per (grid point, reference)
 * with columns r_angstrom, e_rhf, e_uhf, e_fci, e_c, s_spatial, s_spinmode
 * and the reference name as the row tag.
 *
 * Points that fail (e.g. a mean field that does not converge) are skipped;
 * the rest of the scan still runs.  On return *failed_rows (optional)
 * holds the number of skipped (point, reference) pairs, and when it is
 * nonzero entcorr_last_error() describes the first failure.  The call
 * itself returns non-OK only for configuration or file errors. */
entcorr_status entcorr_h2_scan(const entcorr_scan_config* config,
                               entcorr_table** out, size_t* failed_rows);

/* Single helium atom with the given basis file: one restricted-reference
 * row in the same schema as entcorr_h2_scan (r_angstrom recorded as 0).
 * `options` may be NULL for defaults. */
entcorr_status entcorr_he_point(const char* basis_path,
                                const entcorr_analysis_options* options,
                                entcorr_table** out);

/* ------------------------------------------------------------------ */
/* External integral files                                             */
/* ------------------------------------------------------------------ */

/* Exact diagonalization and entanglement analysis of a two-electron
 * FCIDUMP file.  One row tagged "fcidump"; both mean-field energy columns
 * carry the reference determinant's energy.  `options` may be NULL. */
entcorr_status entcorr_fcidump_run(const char* path,
                                   const entcorr_analysis_options* options,
                                   entcorr_table** out);

/* Render the molecular-orbital integrals of a built-in system as FCIDUMP
 * text.  `system` is "h2" (requires r_angstrom > 0) or "he" (r_angstrom
 * ignored).  On success *out receives a heap string; release it with
 * entcorr_string_free. */
entcorr_status entcorr_export_fcidump(const char* system,
                                      const char* basis_path,
                                      double r_angstrom, char** out);

/* ------------------------------------------------------------------ */
/* Two-spin model                                                      */
/* ------------------------------------------------------------------ */

/* Ground-state entanglement sweep of the two-spin anisotropic exchange
 * model whose coupling is the H2 triplet-singlet splitting J(r).  One row
 * per (r, b) pair with columns r_bohr, b, entropy; `b_values` must be
 * nonzero.  `gamma` is the exchange anisotropy (1 recovers the Ising
 * limit). */
entcorr_status entcorr_spin_sweep(const double* r_bohr, size_t r_count,
                                  const double* b_values, size_t b_count,
                                  double gamma, entcorr_table** out);

/* Ground-state entanglement entropy (base-2) of the two-spin model with
 * exchange strength j, transverse field b and anisotropy gamma. */
entcorr_status entcorr_spin_ground_entropy(double j, double b, double gamma,
                                           double* out);

/* Triplet-singlet splitting J(r) of H2 at internuclear distance r (bohr),
 * from the large-r surface-integral form.  `asymptotic_valid` (optional)
 * is set to 0 when r is below the trust region of that form. */
entcorr_status entcorr_exchange_coupling(double r_bohr, double* value,
                                         int* asymptotic_valid);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ENTCORR_H */
