#include "likint/marginal.hpp"

#include "likint/numerics.hpp"
#include "likint/optim.hpp"
#include "likint/parallel.hpp"
#include "likint/rng.hpp"

#include <cmath>

namespace likint {

namespace {

// Shared per-group t: never below the default rate, and at least 2 log m
// so the truncation error O(1/m) stays dominated by the grid error.
TSpec group_t_spec(const MarginalOptions& opts, double n_i, Index m,
                   const CurvatureMeta& meta) {
  if (opts.t_spec) return *opts.t_spec;
  const double default_rate = std::sqrt(meta.eta2 * std::log(std::max(n_i, 2.0)) / meta.eta1);
  const double grid_tied = 2.0 * std::log(static_cast<double>(std::max<Index>(m, 3)));
  return TSpec::custom(std::max(default_rate, grid_tied));
}

}  // namespace

MarginalEval marginal_loglik(const GroupedModel& gm, const Vector& theta, MarginalMethod method,
                             Index m, std::uint64_t seed, const MarginalOptions& opts) {
  if (gm.k < 1) throw std::invalid_argument("marginal_loglik: need at least one group");
  if (m < 1) throw std::invalid_argument("marginal_loglik: need m >= 1");

  MarginalEval eval;
  eval.theta = theta;
  eval.method = method;
  eval.m = m;
  if (method == MarginalMethod::mc) eval.seed = seed;
  eval.per_group_logs.assign(static_cast<std::size_t>(gm.k), 0.0);

  // The qmc grid is shared across groups; mc grids get per-group seeds.
  PointSet qmc_grid;
  if (method == MarginalMethod::qmc) qmc_grid = halton(m, gm.random_dim, 1);

  parallel_for(0, gm.k, opts.threads, [&](Index g) {
    const PosteriorModel model = gm.per_group_posterior(theta, static_cast<int>(g));
    const ModeResult mode = find_mode(model, Vector::Zero(model.dim));
    const TSpec t_spec = group_t_spec(opts, model.n, m, model.meta);
    const TruncationRegion region =
        make_region(mode.theta_hat, std::max(model.n, 2.0), model.meta, opts.policy, t_spec);
    const PointSet& grid = method == MarginalMethod::qmc
                               ? qmc_grid
                               : uniform_grid(m, gm.random_dim,
                                              rng::derive_seed(seed, static_cast<std::uint64_t>(g)));
    const EstimateReport report = estimate_normalizer(model, region, grid);
    eval.per_group_logs[static_cast<std::size_t>(g)] =
        model.log_post(mode.theta_hat) + report.log_estimate;
  });

  eval.log_marginal = pairwise_sum(eval.per_group_logs);
  for (std::size_t g = 0; g < eval.per_group_logs.size(); ++g) {
    if (std::isinf(eval.per_group_logs[g])) {
      eval.underflow_group = static_cast<int>(g);
      eval.log_marginal = -std::numeric_limits<double>::infinity();
      break;
    }
  }
  return eval;
}

GaussianLMM GaussianLMM::generate(int k, Index ni, double sigma, double tau, double theta0,
                                  std::uint64_t seed) {
  if (k < 1 || ni < 1) throw std::invalid_argument("GaussianLMM: need k >= 1 and ni >= 1");
  GaussianLMM lmm;
  lmm.sigma = sigma;
  lmm.tau = tau;
  lmm.groups.reserve(static_cast<std::size_t>(k));
  const Matrix noise = rng::standard_normals(k, ni + 1, seed);
  for (int i = 0; i < k; ++i) {
    const double u = tau * noise(i, 0);
    Vector y(ni);
    for (Index j = 0; j < ni; ++j) y(j) = theta0 + u + sigma * noise(i, j + 1);
    lmm.groups.push_back(std::move(y));
  }
  return lmm;
}

GroupedModel GaussianLMM::grouped_model() const {
  if (groups.empty()) throw std::invalid_argument("GaussianLMM: no groups");
  if (!(tau > 0)) throw std::invalid_argument("GaussianLMM: integration requires tau > 0");
  GroupedModel gm;
  gm.k = k();
  gm.random_dim = 1;
  for (const auto& y : groups) gm.group_sizes.push_back(y.size());
  const double s = sigma, t = tau;
  const std::vector<Vector> data = groups;
  gm.per_group_posterior = [data, s, t](const Vector& theta, int group) {
    if (theta.size() != 1) throw std::invalid_argument("GaussianLMM: theta is scalar");
    // Integrand in u: prod_j phi(y_ij; theta + u, sigma^2) * phi(u; 0, tau^2),
    // i.e. a conjugate Gaussian in u with data y_i - theta.
    Matrix centered = data.at(static_cast<std::size_t>(group)) -
                      Vector::Constant(data.at(static_cast<std::size_t>(group)).size(), theta(0));
    return GaussianConjugate(std::move(centered), s, t).model();
  };
  return gm;
}

double lmm_marginal_oracle(const GaussianLMM& lmm, double theta) {
  if (!(lmm.sigma > 0) || lmm.tau < 0)
    throw std::invalid_argument("lmm_marginal_oracle: need sigma > 0 and tau >= 0");
  const double s2 = lmm.sigma * lmm.sigma;
  const double t2 = lmm.tau * lmm.tau;
  double total = 0.0;
  for (const Vector& y : lmm.groups) {
    const double ni = static_cast<double>(y.size());
    const double denom = s2 + ni * t2;
    if (!(denom > 0)) throw std::invalid_argument("lmm_marginal_oracle: covariance not PD");
    const Vector r = y.array() - theta;
    const double sum_r = r.sum();
    // Compound symmetry: det = s2^{ni-1} (s2 + ni t2),
    // r' Sigma^{-1} r = (|r|^2 - t2 (sum r)^2 / (s2 + ni t2)) / s2.
    const double quad = (r.squaredNorm() - t2 * sum_r * sum_r / denom) / s2;
    total += -0.5 * ni * std::log(2.0 * M_PI) -
             0.5 * ((ni - 1.0) * std::log(s2) + std::log(denom)) - 0.5 * quad;
  }
  return total;
}

double lmm_gls_estimate(const GaussianLMM& lmm) {
  const double s2 = lmm.sigma * lmm.sigma;
  const double t2 = lmm.tau * lmm.tau;
  double num = 0.0, den = 0.0;
  for (const Vector& y : lmm.groups) {
    const double ni = static_cast<double>(y.size());
    const double w = ni / (s2 + ni * t2);
    num += w * y.mean();
    den += w;
  }
  return num / den;
}

MmleResult mmle(const GroupedModel& gm, MarginalMethod method, Index m, std::uint64_t seed,
                const Vector& search_lo, const Vector& search_hi, double tol,
                const MarginalOptions& opts) {
  if (search_lo.size() != search_hi.size() || search_lo.size() < 1)
    throw std::invalid_argument("mmle: inconsistent search bracket");
  const Index q = search_lo.size();
  auto objective = [&](const Vector& theta) {
    return marginal_loglik(gm, theta, method, m, seed, opts).log_marginal;
  };

  MmleResult result;
  if (q == 1) {
    const auto opt = golden_section_maximize(
        [&](double x) { return objective(Vector::Constant(1, x)); }, search_lo(0), search_hi(0),
        tol);
    result.theta_tilde = Vector::Constant(1, opt.x);
    result.log_marginal_at_opt = opt.fx;
    result.iterations = opt.iterations;
    result.converged = opt.converged;
  } else {
    const Vector init = 0.5 * (search_lo + search_hi);
    const double step = (search_hi - search_lo).maxCoeff() / 4.0;
    const auto opt = nelder_mead_maximize(objective, init, step, tol);
    result.theta_tilde = opt.x;
    result.log_marginal_at_opt = opt.fx;
    result.iterations = opt.iterations;
    result.converged = opt.converged;
  }
  return result;
}

}  // namespace likint
