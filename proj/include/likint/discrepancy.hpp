#pragma once

#include "likint/sequences.hpp"
#include "likint/types.hpp"

#include <optional>

namespace likint {

enum class DiscrepancyMethod { exact_brute_force, exact_1d, atanassov_bound, asymptotic_bound };

const char* to_string(DiscrepancyMethod method);

struct DiscrepancyReport {
  double value = 0.0;
  DiscrepancyMethod method = DiscrepancyMethod::exact_brute_force;
  Index m = 0;
  Index p = 0;
  std::optional<Vector> witness;  // maximizing anchor, exact methods only
};

// Signed local discrepancy of the anchored box [0, a):
//   (1/m) * #{x_i in [0,a)} - prod_j a_j,   a in (0,1]^p.
double local_discrepancy(const Eigen::Ref<const Matrix>& points,
                         const Eigen::Ref<const Vector>& anchor);
double local_discrepancy(const PointSet& ps, const Eigen::Ref<const Vector>& anchor);

// Exact star discrepancy sup_a |delta(a)| by enumerating the critical-box
// grid (point coordinates plus 1 per dimension), evaluating both the closed
// count (captures the sup over boxes shrinking onto a point) and the strict
// count (captures the open boundary). Refuses when the elementary-operation
// estimate exceeds work_budget, naming the required budget.
DiscrepancyReport star_discrepancy_exact(const Eigen::Ref<const Matrix>& points,
                                         double work_budget = 1e8);
DiscrepancyReport star_discrepancy_exact(const PointSet& ps, double work_budget = 1e8);

// Closed form for p = 1: max_i max(i/m - x_(i), x_(i) - (i-1)/m) over the
// sorted sample. Oracle for the brute-force method.
DiscrepancyReport star_discrepancy_1d(const Eigen::Ref<const Matrix>& points);
DiscrepancyReport star_discrepancy_1d(const PointSet& ps);

// Explicit Atanassov-style upper bound on the Halton star discrepancy,
//   m D* <= (2^p/p!) prod_i ((c_i-1) log m / (2 log c_i) + p)
//         + 2^p (c_1 + sum_{k=1}^{p-1} (c_{k+1}/k!) prod_{i<=k} (floor(c_i/2) log m / log c_i + k)),
// evaluated in log space with exact primes. May exceed 1.
DiscrepancyReport halton_bound_explicit(double m, int p);

// Rate-only asymptotic envelope (4e)^p p^{3/2} log(p) log(m)^p / m with unit
// constant, valid as m and p grow jointly.
double halton_bound_asymptotic(double m, int p);

// Rosser-style check on the j-th prime: j log j <= c_j always, and
// c_j <= j log j + j log log j + 2 for j >= 3 (log log j is not usable below).
bool prime_bounds_check(std::size_t j);

}  // namespace likint
