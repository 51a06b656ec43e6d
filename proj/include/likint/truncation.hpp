#pragma once

#include "likint/model.hpp"
#include "likint/types.hpp"

#include <cmath>
#include <stdexcept>

namespace likint {

enum class TruncationPolicy { fixed_p, high_dim, custom };

const char* to_string(TruncationPolicy policy);

// Choice of the truncation-rate function t(n). The default is the
// curvature-scaled rate t(n) = sqrt(eta2 log(n) / eta1) that the error
// analysis prescribes; log_n uses t(n) = log(n), the choice the simulation
// harness pins; value holds t fixed.
struct TSpec {
  enum class Kind { theorem_default, log_n, value };
  Kind kind = Kind::theorem_default;
  double t = 0.0;

  static TSpec theorem() { return {}; }
  static TSpec log_n() { return {Kind::log_n, 0.0}; }
  static TSpec custom(double t_value) { return {Kind::value, t_value}; }
};

inline double resolve_t(const TSpec& spec, double n, const CurvatureMeta& meta) {
  switch (spec.kind) {
    case TSpec::Kind::theorem_default:
      if (!(n >= 2)) throw std::invalid_argument("resolve_t: need n >= 2");
      return std::sqrt(meta.eta2 * std::log(n) / meta.eta1);
    case TSpec::Kind::log_n:
      if (!(n >= 2)) throw std::invalid_argument("resolve_t: need n >= 2");
      return std::log(n);
    case TSpec::Kind::value:
      if (!(spec.t > 0)) throw std::invalid_argument("resolve_t: custom t must be > 0");
      return spec.t;
  }
  throw std::logic_error("resolve_t: unreachable");
}

// Truncation radius: gamma = sqrt(t(n) / (eta2 n)) for the fixed-p policy,
// inflated by sqrt(p) for the high-dim policy.
inline double truncation_radius(double n, int p, const CurvatureMeta& meta,
                                TruncationPolicy policy, const TSpec& t_spec = {}) {
  meta.validate();
  if (!(n >= 2)) throw std::invalid_argument("truncation_radius: need n >= 2");
  if (p < 1) throw std::invalid_argument("truncation_radius: need p >= 1");
  if (policy == TruncationPolicy::custom)
    throw std::invalid_argument("truncation_radius: custom policy carries its own radius");
  const double t = resolve_t(t_spec, n, meta);
  const double gamma = std::sqrt(t / (meta.eta2 * n));
  return policy == TruncationPolicy::high_dim ? std::sqrt(static_cast<double>(p)) * gamma
                                              : gamma;
}

// Hypercube [center - radius, center + radius]^p around the posterior mode.
struct TruncationRegion {
  Vector center;
  double radius = 0.0;
  TruncationPolicy policy = TruncationPolicy::fixed_p;
  double t_value = 0.0;  // the t(n) that produced the radius (0 for custom)
};

inline TruncationRegion make_region(const Vector& mode, double n, const CurvatureMeta& meta,
                                    TruncationPolicy policy, const TSpec& t_spec = {}) {
  TruncationRegion region;
  region.center = mode;
  region.policy = policy;
  region.t_value = resolve_t(t_spec, n, meta);
  region.radius = truncation_radius(n, static_cast<int>(mode.size()), meta, policy, t_spec);
  return region;
}

inline TruncationRegion make_custom_region(const Vector& center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("make_custom_region: radius must be > 0");
  return TruncationRegion{center, radius, TruncationPolicy::custom, 0.0};
}

}  // namespace likint
