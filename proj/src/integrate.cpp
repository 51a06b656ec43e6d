#include "likint/integrate.hpp"

#include "likint/numerics.hpp"
#include "likint/parallel.hpp"
#include "likint/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace likint {

const char* to_string(TruncationPolicy policy) {
  switch (policy) {
    case TruncationPolicy::fixed_p: return "fixed_p";
    case TruncationPolicy::high_dim: return "high_dim";
    case TruncationPolicy::custom: return "custom";
  }
  return "unknown";
}

GridDescriptor describe(const PointSet& ps) {
  return GridDescriptor{ps.kind, ps.m(), ps.p(), ps.seed, ps.start_index};
}

EstimateReport estimate_normalizer(const PosteriorModel& model, const TruncationRegion& region,
                                   const PointSet& ps) {
  const auto t0 = std::chrono::steady_clock::now();
  const Index p = model.dim;
  if (ps.p() != p) throw std::invalid_argument("estimate_normalizer: grid dimension mismatch");
  if (region.center.size() != p)
    throw std::invalid_argument("estimate_normalizer: region dimension mismatch");
  if (!(region.radius > 0)) throw std::invalid_argument("estimate_normalizer: radius must be > 0");
  if (region.policy == TruncationPolicy::high_dim &&
      !(model.meta.delta_np > std::sqrt(static_cast<double>(p)) * region.radius))
    throw std::invalid_argument(
        "estimate_normalizer: locality radius delta_np must exceed sqrt(p) * radius");

  const Index m = ps.m();
  const double gamma = region.radius;
  const double l_center = model.log_post(region.center);

  std::vector<double> shifted(static_cast<std::size_t>(m));
  Vector theta(p);
  for (Index i = 0; i < m; ++i) {
    theta = (2.0 * gamma) * (ps.points.row(i).transpose().array() - 0.5).matrix() +
            region.center;
    shifted[static_cast<std::size_t>(i)] = model.log_post(theta) - l_center;
  }
  const double lse = logsumexp(shifted);

  EstimateReport report;
  report.log_estimate =
      static_cast<double>(p) * std::log(2.0 * gamma) - std::log(static_cast<double>(m)) + lse;
  report.underflow = !std::isfinite(lse);
  report.grid = describe(ps);
  report.region = region;
  report.log_cube_volume = static_cast<double>(p) * std::log(2.0 * gamma);
  report.log_ball_volume = 0.5 * static_cast<double>(p) * std::log(M_PI) +
                           static_cast<double>(p) * std::log(gamma) -
                           std::lgamma(0.5 * static_cast<double>(p) + 1.0);
  if (model.oracle_log_normalizer)
    report.rel_error = relative_error(report.log_estimate, *model.oracle_log_normalizer);
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

double relative_error(double log_estimate, double oracle_log) {
  if (!std::isfinite(oracle_log)) throw std::invalid_argument("relative_error: oracle not finite");
  return std::expm1(log_estimate - oracle_log);
}

double relative_error(const EstimateReport& report, double oracle_log) {
  return relative_error(report.log_estimate, oracle_log);
}

ReplicateStats run_mc_replicates(const PosteriorModel& model, const TruncationRegion& region,
                                 Index m, int replicates, std::uint64_t seed, int threads) {
  if (replicates < 1) throw std::invalid_argument("run_mc_replicates: need replicates >= 1");
  const bool has_oracle = model.oracle_log_normalizer.has_value();

  ReplicateStats stats;
  stats.n_replicates = replicates;
  stats.over_log_estimates = !has_oracle;
  stats.per_replicate_seeds.resize(static_cast<std::size_t>(replicates));
  std::vector<double> values(static_cast<std::size_t>(replicates));

  parallel_for(0, replicates, threads, [&](Index r) {
    const std::uint64_t rseed = rng::derive_seed(seed, static_cast<std::uint64_t>(r));
    stats.per_replicate_seeds[static_cast<std::size_t>(r)] = rseed;
    const PointSet grid = uniform_grid(m, model.dim, rseed);
    const EstimateReport report = estimate_normalizer(model, region, grid);
    values[static_cast<std::size_t>(r)] =
        has_oracle ? *report.rel_error : report.log_estimate;
  });

  stats.mean_rel_error = pairwise_sum(values) / static_cast<double>(replicates);
  std::sort(values.begin(), values.end());
  stats.q025 = quantile_type7(values, 0.025);
  stats.q975 = quantile_type7(values, 0.975);
  return stats;
}

}  // namespace likint
