#pragma once

#include "likint/model.hpp"
#include "likint/sequences.hpp"
#include "likint/truncation.hpp"
#include "likint/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace likint {

struct GridDescriptor {
  GridKind kind = GridKind::uniform;
  Index m = 0;
  Index p = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> start_index;
};

GridDescriptor describe(const PointSet& ps);

// Mode-relative truncated-integral estimate on the log scale.
struct EstimateReport {
  double log_estimate = 0.0;
  GridDescriptor grid;
  TruncationRegion region;
  std::optional<double> rel_error;  // vs the model oracle, when present
  double wall_time_s = 0.0;
  bool underflow = false;  // every summand underflowed; log_estimate is -inf
  // Region-volume diagnostics (log scale): the hypercube actually integrated
  // over and the L2 ball of the same radius.
  double log_cube_volume = 0.0;
  double log_ball_volume = 0.0;
};

struct ReplicateStats {
  double mean_rel_error = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
  int n_replicates = 0;
  std::vector<std::uint64_t> per_replicate_seeds;
  // Set when the model carries no oracle: the statistics are then over the
  // log-estimates themselves.
  bool over_log_estimates = false;
};

// Truncated estimator of the mode-relative normalizing constant:
//   log_estimate = p log(2 gamma) - log m + logsumexp_i { l(theta_i) - l(center) },
// with theta_i the grid points mapped onto the truncation cube. The region
// center must be the posterior mode. Pure and deterministic in its inputs.
EstimateReport estimate_normalizer(const PosteriorModel& model, const TruncationRegion& region,
                                   const PointSet& ps);

// exp(log_estimate - oracle_log) - 1; negative values mean underestimation.
double relative_error(double log_estimate, double oracle_log);
double relative_error(const EstimateReport& report, double oracle_log);

// R uniform-grid replicates with seeds derived from (seed, replicate index);
// reports the mean and type-7 empirical 2.5%/97.5% quantiles of the relative
// errors (or of the log-estimates when there is no oracle). Replicates may
// run in parallel; results do not depend on the thread count.
ReplicateStats run_mc_replicates(const PosteriorModel& model, const TruncationRegion& region,
                                 Index m, int replicates, std::uint64_t seed, int threads = 1);

}  // namespace likint
