#pragma once

#include "likint/model.hpp"
#include "likint/truncation.hpp"
#include "likint/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace likint {

// Full-factorial (p, n, m) sweep over the conjugate Gaussian model. Per
// replicate: fresh N(0, I_p) data, MC relative error from a seeded uniform
// grid; the QMC relative error is deterministic (for this model the grid
// error does not depend on the mode location).
struct ExperimentConfig {
  std::vector<int> p_list{1, 2, 4, 8};
  std::vector<int> n_list{8, 16, 32, 64};
  std::vector<int> m_list{400, 800, 1600, 3200};
  int replicates = 1000;
  std::uint64_t base_seed = 20240501;
  double sigma = 1.0;
  double sigma_p = 1.0;
  int threads = 0;  // 0 = all cores
};

struct TableRow {
  int p = 0;
  int n = 0;
  int m = 0;
  double mean_mc = 0.0;
  double q025_mc = 0.0;
  double q975_mc = 0.0;
  double mean_qmc = 0.0;
};

// Truncation region the simulation sweep pins: high-dim radius from the
// likelihood-curvature scale with t(n) = log(n), i.e.
// gamma'^2 = sigma^2 p log(n) / n.
TruncationRegion simulation_region(const GaussianConjugate& gc);

// One (p, n, m) cell; seeds derive from (base_seed, p, n, m), so a single
// cell rerun reproduces the corresponding full-run row exactly.
TableRow run_cell(const ExperimentConfig& cfg, int p, int n, int m);

// All cells, ordered m fastest, then n, then p. Cells run in parallel;
// per-cell failures surface as NaN rows and the sweep continues.
std::vector<TableRow> reproduce_tables(const ExperimentConfig& cfg);

struct TrendReport {
  bool qmc_abs_error_shrinks_with_n = true;  // (a) p in {1,2}
  bool mc_width_shrinks_with_m = true;       // (b) p <= 4
  bool qmc_mean_negative_low_dim = true;     // (c) p <= 2
  bool mc_width_grows_with_p = true;         // (d)
  std::vector<std::string> failures;

  bool pass() const {
    return qmc_abs_error_shrinks_with_n && mc_width_shrinks_with_m &&
           qmc_mean_negative_low_dim && mc_width_grows_with_p;
  }
};

TrendReport trend_checks(const std::vector<TableRow>& rows);

// CSV with header p,n,m,mean_mc,q025_mc,q975_mc,mean_qmc; floats pinned to
// six decimals so serialization round-trips byte-identically.
void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows);
std::vector<TableRow> read_table_csv(std::istream& is);

}  // namespace likint
