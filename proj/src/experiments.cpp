#include "likint/experiments.hpp"

#include "likint/integrate.hpp"
#include "likint/numerics.hpp"
#include "likint/parallel.hpp"
#include "likint/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace likint {

namespace {

std::uint64_t cell_seed(const ExperimentConfig& cfg, int p, int n, int m) {
  std::uint64_t s = rng::derive_seed(cfg.base_seed, static_cast<std::uint64_t>(p));
  s = rng::derive_seed(s, static_cast<std::uint64_t>(n));
  return rng::derive_seed(s, static_cast<std::uint64_t>(m));
}

}  // namespace

TruncationRegion simulation_region(const GaussianConjugate& gc) {
  const CurvatureMeta meta = gc.likelihood_meta();
  return make_region(gc.mode(), static_cast<double>(gc.n()), meta, TruncationPolicy::high_dim,
                     TSpec::log_n());
}

TableRow run_cell(const ExperimentConfig& cfg, int p, int n, int m) {
  TableRow row{p, n, m, 0, 0, 0, 0};
  const std::uint64_t seed = cell_seed(cfg, p, n, m);
  const int R = cfg.replicates;

  std::vector<double> mc_errors(static_cast<std::size_t>(R));
  double qmc_error = 0.0;
  const PointSet qmc_grid = halton(m, p, 1);

  for (int r = 0; r < R; ++r) {
    const std::uint64_t data_seed = rng::derive_seed(seed, 2 * static_cast<std::uint64_t>(r));
    const std::uint64_t grid_seed = rng::derive_seed(seed, 2 * static_cast<std::uint64_t>(r) + 1);
    const GaussianConjugate gc =
        GaussianConjugate::generate(n, p, cfg.sigma, cfg.sigma_p, data_seed);
    const PosteriorModel model = gc.model();
    const TruncationRegion region = simulation_region(gc);
    const EstimateReport mc =
        estimate_normalizer(model, region, uniform_grid(m, p, grid_seed));
    mc_errors[static_cast<std::size_t>(r)] = *mc.rel_error;
    // The rescaled integrand of this model does not depend on the data (the
    // mode is only a shift), so the deterministic QMC error is shared by all
    // replicates; evaluate it once.
    if (r == 0) qmc_error = *estimate_normalizer(model, region, qmc_grid).rel_error;
  }

  row.mean_mc = pairwise_sum(mc_errors) / static_cast<double>(R);
  std::sort(mc_errors.begin(), mc_errors.end());
  row.q025_mc = quantile_type7(mc_errors, 0.025);
  row.q975_mc = quantile_type7(mc_errors, 0.975);
  row.mean_qmc = qmc_error;
  return row;
}

std::vector<TableRow> reproduce_tables(const ExperimentConfig& cfg) {
  if (cfg.p_list.empty() || cfg.n_list.empty() || cfg.m_list.empty())
    throw std::invalid_argument("reproduce_tables: empty sweep list");
  if (cfg.replicates < 1) throw std::invalid_argument("reproduce_tables: need replicates >= 1");

  struct Cell {
    int p, n, m;
  };
  std::vector<Cell> cells;
  for (int p : cfg.p_list)
    for (int n : cfg.n_list)
      for (int m : cfg.m_list) cells.push_back({p, n, m});

  std::vector<TableRow> rows(cells.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  parallel_for(0, static_cast<Index>(cells.size()), cfg.threads, [&](Index i) {
    const Cell& c = cells[static_cast<std::size_t>(i)];
    try {
      rows[static_cast<std::size_t>(i)] = run_cell(cfg, c.p, c.n, c.m);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "cell (p=%d, n=%d, m=%d) failed: %s\n", c.p, c.n, c.m, e.what());
      rows[static_cast<std::size_t>(i)] = TableRow{c.p, c.n, c.m, nan, nan, nan, nan};
    }
  });
  return rows;
}

TrendReport trend_checks(const std::vector<TableRow>& rows) {
  TrendReport report;
  auto find = [&rows](int p, int n, int m) -> const TableRow* {
    for (const auto& r : rows)
      if (r.p == p && r.n == n && r.m == m) return &r;
    return nullptr;
  };
  auto note = [&report](const std::string& what) { report.failures.push_back(what); };

  std::vector<int> ps, ns, ms;
  for (const auto& r : rows) {
    if (std::find(ps.begin(), ps.end(), r.p) == ps.end()) ps.push_back(r.p);
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    if (std::find(ms.begin(), ms.end(), r.m) == ms.end()) ms.push_back(r.m);
  }
  std::sort(ps.begin(), ps.end());
  std::sort(ns.begin(), ns.end());
  std::sort(ms.begin(), ms.end());

  // (a) |mean_qmc| nonincreasing in n for p in {1,2}.
  for (int p : ps) {
    if (p > 2) continue;
    for (int m : ms) {
      const TableRow* prev = nullptr;
      for (int n : ns) {
        const TableRow* r = find(p, n, m);
        if (!r) continue;
        if (prev && std::abs(r->mean_qmc) > std::abs(prev->mean_qmc) + 1e-9) {
          report.qmc_abs_error_shrinks_with_n = false;
          std::ostringstream os;
          os << "(a) |mean_qmc| grew from n=" << prev->n << " to n=" << n << " at p=" << p
             << ", m=" << m;
          note(os.str());
        }
        prev = r;
      }
    }
  }

  // (b) MC interval width strictly decreasing in m for p <= 4.
  for (int p : ps) {
    if (p > 4) continue;
    for (int n : ns) {
      const TableRow* prev = nullptr;
      for (int m : ms) {
        const TableRow* r = find(p, n, m);
        if (!r) continue;
        if (prev && !(r->q975_mc - r->q025_mc < prev->q975_mc - prev->q025_mc)) {
          report.mc_width_shrinks_with_m = false;
          std::ostringstream os;
          os << "(b) MC width did not shrink from m=" << prev->m << " to m=" << m
             << " at p=" << p << ", n=" << n;
          note(os.str());
        }
        prev = r;
      }
    }
  }

  // (c) mean_qmc < 0 for p <= 2 (truncation removes mass).
  for (const auto& r : rows) {
    if (r.p <= 2 && !(r.mean_qmc < 0)) {
      report.qmc_mean_negative_low_dim = false;
      std::ostringstream os;
      os << "(c) mean_qmc not negative at p=" << r.p << ", n=" << r.n << ", m=" << r.m;
      note(os.str());
    }
  }

  // (d) MC interval width increasing in p at fixed (n, m).
  for (int n : ns) {
    for (int m : ms) {
      const TableRow* prev = nullptr;
      for (int p : ps) {
        const TableRow* r = find(p, n, m);
        if (!r) continue;
        if (prev && !(r->q975_mc - r->q025_mc > prev->q975_mc - prev->q025_mc)) {
          report.mc_width_grows_with_p = false;
          std::ostringstream os;
          os << "(d) MC width did not grow from p=" << prev->p << " to p=" << p
             << " at n=" << n << ", m=" << m;
          note(os.str());
        }
        prev = r;
      }
    }
  }
  return report;
}

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << "p,n,m,mean_mc,q025_mc,q975_mc,mean_qmc\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& r : rows)
    os << r.p << ',' << r.n << ',' << r.m << ',' << r.mean_mc << ',' << r.q025_mc << ','
       << r.q975_mc << ',' << r.mean_qmc << '\n';
}

std::vector<TableRow> read_table_csv(std::istream& is) {
  std::vector<TableRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != "p,n,m,mean_mc,q025_mc,q975_mc,mean_qmc")
    throw std::invalid_argument("read_table_csv: unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TableRow r;
    char comma;
    ls >> r.p >> comma >> r.n >> comma >> r.m >> comma >> r.mean_mc >> comma >> r.q025_mc >>
        comma >> r.q975_mc >> comma >> r.mean_qmc;
    if (!ls) throw std::invalid_argument("read_table_csv: malformed row: " + line);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace likint
