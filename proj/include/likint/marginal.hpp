#pragma once

#include "likint/integrate.hpp"
#include "likint/model.hpp"
#include "likint/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace likint {

enum class MarginalMethod { mc, qmc };

// Grouped-data model whose marginal likelihood is a product of per-group
// integrals over the random effect u_i.
struct GroupedModel {
  int k = 0;           // number of groups
  int random_dim = 1;  // dimension of each u_i
  std::vector<Index> group_sizes;
  // (theta, group index) -> posterior model in u for that group, with the
  // fully normalized integrand as log_post so the summed estimates equal the
  // marginal log-likelihood.
  std::function<PosteriorModel(const Vector& theta, int group)> per_group_posterior;
};

struct MarginalEval {
  Vector theta;
  double log_marginal = 0.0;
  std::vector<double> per_group_logs;
  MarginalMethod method = MarginalMethod::qmc;
  Index m = 0;
  std::optional<std::uint64_t> seed;          // mc only
  std::optional<int> underflow_group;         // first group whose estimate hit -inf
};

struct MarginalOptions {
  TruncationPolicy policy = TruncationPolicy::high_dim;
  // When unset, each group's t is max(default rate, 2 log m) so the
  // truncation error stays below the grid error at every m.
  std::optional<TSpec> t_spec;
  int threads = 1;
};

// Approximate marginal log-likelihood: per group, find the mode of the
// integrand in u, truncate with the shared radius recipe, estimate with the
// chosen grid, and sum mode offset + truncated estimate across groups.
// Deterministic for qmc; mc derives per-group seeds from (seed, group).
MarginalEval marginal_loglik(const GroupedModel& gm, const Vector& theta, MarginalMethod method,
                             Index m, std::uint64_t seed = 0,
                             const MarginalOptions& opts = {});

// Gaussian random-intercept linear mixed model
//   y_ij = theta + u_i + e_ij,  u_i ~ N(0, tau^2),  e_ij ~ N(0, sigma^2).
struct GaussianLMM {
  std::vector<Vector> groups;  // observations per group
  double sigma = 1.0;
  double tau = 1.0;

  static GaussianLMM generate(int k, Index ni, double sigma, double tau, double theta0,
                              std::uint64_t seed);
  GroupedModel grouped_model() const;
  int k() const { return static_cast<int>(groups.size()); }
};

// Exact log marginal likelihood via the compound-symmetry covariance
// sigma^2 I + tau^2 J per group (an algebraic route independent of the
// per-group conjugate integrals).
double lmm_marginal_oracle(const GaussianLMM& lmm, double theta);

// Closed-form maximizer of the exact marginal: the GLS weighted mean.
double lmm_gls_estimate(const GaussianLMM& lmm);

struct MmleResult {
  Vector theta_tilde;
  double log_marginal_at_opt = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximizes the approximated marginal log-likelihood with a frozen grid
// seed (the objective is deterministic during the search): golden-section
// for scalar theta, Nelder-Mead otherwise.
MmleResult mmle(const GroupedModel& gm, MarginalMethod method, Index m, std::uint64_t seed,
                const Vector& search_lo, const Vector& search_hi, double tol = 1e-8,
                const MarginalOptions& opts = {});

}  // namespace likint
