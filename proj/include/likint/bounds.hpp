#pragma once

#include "likint/discrepancy.hpp"
#include "likint/model.hpp"
#include "likint/truncation.hpp"
#include "likint/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace likint {

enum class BoundKind {
  truncation_abs,
  truncation_rel,
  mc_tail_abs,
  mc_tail_rel,
  mc_rate_abs,
  mc_rate_rel,
  qmc_rate_abs,
  qmc_rate_rel,
  hk_variation,
  kh_product,
  crossover,
};

enum class Regime { fixed_p, high_dim, gaussian_special, classical };

const char* to_string(BoundKind kind);
const char* to_string(Regime regime);

// Evaluated theoretical bound. Magnitudes are extreme across the parameter
// ranges of interest, so everything is computed on the log scale; `value`
// is exp(log_value) and may round to 0 or overflow to inf.
struct BoundReport {
  BoundKind kind = BoundKind::truncation_rel;
  Regime regime = Regime::fixed_p;
  double value = 0.0;
  double log_value = 0.0;
  std::vector<std::pair<std::string, double>> components;
  std::vector<std::string> flags;
};

// ---------------------------------------------------------------------------
// Scalar-templated formula kernels (log scale), usable in higher precision.

namespace detail {

// log of the explicit-constant MC error rate.
template <typename S>
S log_mc_rate(S n, S m, S p, S eta1, S eta2, Regime regime, bool relative) {
  const S log_pre_eta = S(1.5) * std::log(eta2 / eta1);
  const S log_dim_pre = regime == Regime::high_dim
                            ? (p / 2 + 1) * std::log(p)       // p^{p/2+1}
                            : S(0.5) * std::log(p);           // sqrt(p)
  S log_value;
  if (relative) {
    // 2 sqrt(p) (4/(2 pi))^{p/2} (eta2/eta1)^{3/2} sqrt(n log(n)^{p+1} log(m)/m)
    log_value = std::log(S(2)) + log_dim_pre + (p / 2) * std::log(S(4) / (S(2) * S(M_PI))) +
                log_pre_eta +
                S(0.5) * (std::log(n) + (p + 1) * std::log(std::log(n)) +
                          std::log(std::log(m)) - std::log(m));
  } else {
    // 2^p sqrt(p) (eta2/eta1)^{3/2} sqrt(log(n)^{p+1} log(m)/(n^{p-1} m))
    log_value = p * std::log(S(2)) + log_dim_pre + log_pre_eta +
                S(0.5) * ((p + 1) * std::log(std::log(n)) + std::log(std::log(m)) -
                          (p - 1) * std::log(n) - std::log(m));
  }
  return log_value;
}

// log of the QMC rate envelope (unit constants unless stated by the formula).
template <typename S>
S log_qmc_rate(S n, S m, S p, Regime regime, bool relative, S C = S(1), S sigma = S(1)) {
  const S llm = std::log(std::log(m));
  const S lln = std::log(std::log(n));
  switch (regime) {
    case Regime::fixed_p: {
      S v = p * llm + (p / 2) * lln - std::log(m);
      if (!relative) v -= (p / 2) * std::log(n);
      return v;
    }
    case Regime::high_dim: {
      S v = p * std::log(C) + p * llm - std::log(m) + ((3 * p + 5) / 2) * std::log(p) -
            (p - 1) * std::log(std::log(p + 1));
      if (relative)
        v += (p / 2) * lln - std::log(n);
      else
        v -= (p / 2 + 1) * std::log(n);
      return v;
    }
    case Regime::gaussian_special: {
      // (8e)^p log(m)^p log(p) p^{p/2+3/2} log(n)^{p/2} / (m n)
      //   * (1 + sqrt(p pi) / (sqrt(2) sigma^3))^p
      S v = p * std::log(S(8) * std::exp(S(1))) + p * llm + std::log(std::log(p)) +
            (p / 2 + S(1.5)) * std::log(p) + (p / 2) * lln - std::log(m) - std::log(n) +
            p * std::log1p(std::sqrt(p * S(M_PI)) / (std::sqrt(S(2)) * sigma * sigma * sigma));
      if (!relative) v -= (p / 2) * std::log(n);  // mass factor; stated form is relative
      return v;
    }
    default:
      throw std::invalid_argument("log_qmc_rate: unsupported regime");
  }
}

// log of the QMC-vs-MC crossover ratio; QMC wins when the ratio is < 1.
template <typename S>
S log_crossover_ratio(S n, S m, S p, Regime regime, S C = S(1)) {
  const S llm = std::log(std::log(m));
  switch (regime) {
    case Regime::classical:
      // log(m)^p / sqrt(m)
      return p * llm - std::log(m) / 2;
    case Regime::fixed_p:
      // log(m)^{p-1/2} / sqrt(m n log n)
      return (p - S(0.5)) * llm -
             S(0.5) * (std::log(m) + std::log(n) + std::log(std::log(n)));
    case Regime::high_dim:
      // C^p log(m)^{p-1/2} p^{p+2} / (sqrt(m) log(p+1)^p sqrt(log n) n^{3/2})
      return p * std::log(C) + (p - S(0.5)) * llm - std::log(m) / 2 +
             (p + 2) * std::log(p) - p * std::log(std::log(p + 1)) -
             S(0.5) * std::log(std::log(n)) - S(1.5) * std::log(n);
    default:
      throw std::invalid_argument("log_crossover_ratio: unsupported regime");
  }
}

// log Bell number through the Bell triangle in extended precision.
double log_bell(int k);

}  // namespace detail

// ---------------------------------------------------------------------------
// Bound evaluators.

// Exact k-th Bell number via the Bell-triangle recurrence; k <= 25 keeps the
// result inside 64 bits.
std::uint64_t bell_number(int k);

// Truncation-error envelope with unit constant:
//   relative:  exp(-min{n^eps, p t(n)/2})
//   absolute:  n^{-p/2} times the relative form.
BoundReport truncation_error_bound(double n, int p, const CurvatureMeta& meta,
                                   const TSpec& t_spec, bool relative);

// Concentration tail for the truncated MC estimator, clamped to [0,1].
// The non-constructive additive h(delta,n,p) term is omitted and flagged.
double mc_tail_bound(double zeta, double n, double m, int p, const CurvatureMeta& meta,
                     const TSpec& t_spec, bool relative, Regime regime = Regime::fixed_p);
BoundReport mc_tail_report(double zeta, double n, double m, int p, const CurvatureMeta& meta,
                           const TSpec& t_spec, bool relative, Regime regime = Regime::fixed_p);

// Explicit-constant MC error rate (holds with probability 1 - 2/m).
BoundReport mc_error_rate(double n, double m, int p, const CurvatureMeta& meta, Regime regime,
                          bool relative);

// Upper bound on the Hardy-Krause variation of the truncated, rescaled
// likelihood; the three summands are exposed as components. The middle
// summand exists only for p >= 3 (flagged below); bell_on_corner = false
// drops the Bell factor from the corner summand.
BoundReport hk_variation_bound(double n, int p, const CurvatureMeta& meta, double gamma_prime,
                               bool bell_on_corner = true);

// Koksma-Hlawka combination: discrepancy times HK variation.
BoundReport kh_error_bound(const BoundReport& hk, const DiscrepancyReport& dstar);

// QMC rate envelopes (fixed-p, high-dim Halton, Gaussian-specialized).
BoundReport qmc_error_rate(double n, double m, int p, Regime regime, bool relative,
                           double C = 1.0, double sigma = 1.0);

struct CrossoverResult {
  bool qmc_wins = false;
  double ratio = 0.0;
  double log_ratio = 0.0;
};

CrossoverResult crossover(double n, double m, int p, Regime regime, double C = 1.0);
BoundReport crossover_report(double n, double m, int p, Regime regime, double C = 1.0);

// Lipschitz constant of the mode-relative posterior mass on the truncation
// cube, including the sqrt(n) growth factor:
//   fixed_p:  eta2 sqrt(t p n / eta1)
//   high_dim: p eta2 sqrt(t n / eta1)
double lipschitz_constant(double n, int p, const CurvatureMeta& meta, const TSpec& t_spec,
                          TruncationPolicy policy);

// L2-ball truncation envelope with the decaying exponent -p t/(2+eps);
// the high-dim relative variant carries the extra (eta1/eta2)^p factor.
BoundReport l2_truncation_bound(double n, int p, const CurvatureMeta& meta, const TSpec& t_spec,
                                TruncationPolicy policy, bool relative, double eps_slack = 0.1);

}  // namespace likint
