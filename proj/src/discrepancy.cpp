#include "likint/discrepancy.hpp"

#include "likint/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace likint {

const char* to_string(DiscrepancyMethod method) {
  switch (method) {
    case DiscrepancyMethod::exact_brute_force: return "exact_brute_force";
    case DiscrepancyMethod::exact_1d: return "exact_1d";
    case DiscrepancyMethod::atanassov_bound: return "atanassov_bound";
    case DiscrepancyMethod::asymptotic_bound: return "asymptotic_bound";
  }
  return "unknown";
}

namespace {

void check_unit_cube(const Eigen::Ref<const Matrix>& points) {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("discrepancy: need at least one point and one dimension");
  if (((points.array() < 0.0) || (points.array() > 1.0)).any())
    throw std::invalid_argument("discrepancy: points must lie in the unit cube");
}

}  // namespace

double local_discrepancy(const Eigen::Ref<const Matrix>& points,
                         const Eigen::Ref<const Vector>& anchor) {
  check_unit_cube(points);
  if (anchor.size() != points.cols())
    throw std::invalid_argument("local_discrepancy: anchor dimension mismatch");
  if (((anchor.array() <= 0.0) || (anchor.array() > 1.0)).any())
    throw std::invalid_argument("local_discrepancy: anchor must lie in (0,1]^p");
  const Index m = points.rows();
  Index inside = 0;
  for (Index i = 0; i < m; ++i)
    if ((points.row(i).transpose().array() < anchor.array()).all()) ++inside;
  return static_cast<double>(inside) / static_cast<double>(m) - anchor.prod();
}

double local_discrepancy(const PointSet& ps, const Eigen::Ref<const Vector>& anchor) {
  return local_discrepancy(ps.points, anchor);
}

DiscrepancyReport star_discrepancy_exact(const Eigen::Ref<const Matrix>& points,
                                         double work_budget) {
  check_unit_cube(points);
  const Index m = points.rows();
  const Index p = points.cols();

  // Candidate anchor coordinates per dimension: the point coordinates plus 1.
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    auto& g = grid[static_cast<std::size_t>(j)];
    g.resize(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = points(i, j);
    g.push_back(1.0);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }

  // The last dimension is swept incrementally, so the cost is
  // (prefix anchors) x (classification + sort + sweep).
  double prefix_anchors = 1.0;
  for (Index j = 0; j + 1 < p; ++j)
    prefix_anchors *= static_cast<double>(grid[static_cast<std::size_t>(j)].size());
  const double per_prefix =
      static_cast<double>(m) * static_cast<double>(p) +
      static_cast<double>(m) * std::log2(static_cast<double>(m) + 1.0) +
      static_cast<double>(grid[static_cast<std::size_t>(p - 1)].size());
  const double work = prefix_anchors * per_prefix;
  if (work > work_budget) {
    std::ostringstream msg;
    msg << "star_discrepancy_exact: requires ~" << work
        << " elementary operations, budget is " << work_budget
        << "; raise work_budget to proceed";
    throw std::runtime_error(msg.str());
  }

  const auto& last_grid = grid[static_cast<std::size_t>(p - 1)];
  std::vector<std::size_t> idx(static_cast<std::size_t>(p - 1), 0);
  Vector prefix(p - 1);
  std::vector<double> strict_last, closed_last;
  strict_last.reserve(static_cast<std::size_t>(m));
  closed_last.reserve(static_cast<std::size_t>(m));
  double best = -1.0;
  Vector witness = Vector::Zero(p);
  const double inv_m = 1.0 / static_cast<double>(m);

  for (;;) {
    double prefix_vol = 1.0;
    for (Index j = 0; j + 1 < p; ++j) {
      prefix(j) = grid[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
      prefix_vol *= prefix(j);
    }

    // Classify points against the prefix box; keep their last coordinates.
    strict_last.clear();
    closed_last.clear();
    for (Index i = 0; i < m; ++i) {
      bool in_strict = true, in_closed = true;
      for (Index j = 0; j + 1 < p; ++j) {
        const double x = points(i, j);
        if (x >= prefix(j)) in_strict = false;
        if (x > prefix(j)) {
          in_closed = false;
          break;
        }
      }
      if (in_closed) closed_last.push_back(points(i, p - 1));
      if (in_strict && in_closed) strict_last.push_back(points(i, p - 1));
    }
    std::sort(strict_last.begin(), strict_last.end());
    std::sort(closed_last.begin(), closed_last.end());

    // Sweep the last coordinate upward with two pointers.
    std::size_t si = 0, ci = 0;
    for (const double a : last_grid) {
      while (si < strict_last.size() && strict_last[si] < a) ++si;
      while (ci < closed_last.size() && closed_last[ci] <= a) ++ci;
      const double vol = prefix_vol * a;
      const double upper = static_cast<double>(ci) * inv_m - vol;
      const double lower = vol - static_cast<double>(si) * inv_m;
      const double val = std::max(upper, lower);
      // Lexicographic enumeration + strict improvement keeps the first
      // (lexicographically smallest) maximizing anchor as the witness.
      if (val > best) {
        best = val;
        witness.head(p - 1) = prefix;
        witness(p - 1) = a;
      }
    }

    Index j = p - 2;
    for (; j >= 0; --j) {
      auto& k = idx[static_cast<std::size_t>(j)];
      if (++k < grid[static_cast<std::size_t>(j)].size()) break;
      k = 0;
    }
    if (j < 0) break;
  }

  DiscrepancyReport report;
  report.value = best;
  report.method = DiscrepancyMethod::exact_brute_force;
  report.m = m;
  report.p = p;
  report.witness = witness;
  return report;
}

DiscrepancyReport star_discrepancy_exact(const PointSet& ps, double work_budget) {
  return star_discrepancy_exact(ps.points, work_budget);
}

DiscrepancyReport star_discrepancy_1d(const Eigen::Ref<const Matrix>& points) {
  check_unit_cube(points);
  if (points.cols() != 1) throw std::invalid_argument("star_discrepancy_1d: requires p = 1");
  const Index m = points.rows();
  std::vector<double> x(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = points(i, 0);
  std::sort(x.begin(), x.end());
  double best = -1.0;
  double at = 0.0;
  for (Index i = 1; i <= m; ++i) {
    const double xi = x[static_cast<std::size_t>(i - 1)];
    const double hi = static_cast<double>(i) / static_cast<double>(m) - xi;
    const double lo = xi - static_cast<double>(i - 1) / static_cast<double>(m);
    if (hi > best) {
      best = hi;
      at = xi;
    }
    if (lo > best) {
      best = lo;
      at = xi;
    }
  }
  DiscrepancyReport report;
  report.value = best;
  report.method = DiscrepancyMethod::exact_1d;
  report.m = m;
  report.p = 1;
  report.witness = Vector::Constant(1, at);
  return report;
}

DiscrepancyReport star_discrepancy_1d(const PointSet& ps) {
  return star_discrepancy_1d(ps.points);
}

DiscrepancyReport halton_bound_explicit(double m, int p) {
  if (!(m >= 2)) throw std::invalid_argument("halton_bound_explicit: need m >= 2");
  if (p < 1) throw std::invalid_argument("halton_bound_explicit: need p >= 1");
  const double log_m = std::log(m);

  // First product term, in log space: (2^p/p!) prod_i ((c_i-1) L/(2 log c_i) + p).
  double term1 = p * std::log(2.0) - std::lgamma(p + 1.0);
  for (int i = 1; i <= p; ++i) {
    const double c = nth_prime(static_cast<std::size_t>(i));
    term1 += std::log((c - 1.0) * log_m / (2.0 * std::log(c)) + p);
  }

  // Second term: 2^p (c_1 + sum_k (c_{k+1}/k!) prod_{i<=k} (floor(c_i/2) L/log c_i + k)).
  std::vector<double> summands;
  summands.push_back(std::log(static_cast<double>(nth_prime(1))));
  for (int k = 1; k <= p - 1; ++k) {
    double s = std::log(static_cast<double>(nth_prime(static_cast<std::size_t>(k) + 1))) -
               std::lgamma(k + 1.0);
    for (int i = 1; i <= k; ++i) {
      const double c = nth_prime(static_cast<std::size_t>(i));
      s += std::log(std::floor(c / 2.0) * log_m / std::log(c) + k);
    }
    summands.push_back(s);
  }
  const double term2 = p * std::log(2.0) + logsumexp(summands);

  const std::vector<double> both{term1, term2};
  const double log_value = logsumexp(both) - log_m;

  DiscrepancyReport report;
  report.value = std::exp(log_value);
  report.method = DiscrepancyMethod::atanassov_bound;
  report.m = static_cast<Index>(m);
  report.p = p;
  return report;
}

double halton_bound_asymptotic(double m, int p) {
  if (!(m >= 3)) throw std::invalid_argument("halton_bound_asymptotic: need m >= 3");
  if (p < 2) throw std::invalid_argument("halton_bound_asymptotic: need p >= 2");
  const double log_value = p * std::log(4.0 * std::exp(1.0)) + 1.5 * std::log(p) +
                           std::log(std::log(p)) + p * std::log(std::log(m)) - std::log(m);
  return std::exp(log_value);
}

bool prime_bounds_check(std::size_t j) {
  if (j == 0) throw std::invalid_argument("prime_bounds_check: index is 1-based");
  const double c = nth_prime(j);
  const double x = static_cast<double>(j);
  const double lower = x * std::log(x);  // 0 at j = 1
  if (c < lower) return false;
  if (j >= 3) {
    const double upper = x * std::log(x) + x * std::log(std::log(x)) + 2.0;
    if (c > upper) return false;
  }
  return true;
}

}  // namespace likint
