#include "likint/bounds.hpp"

#include "likint/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace likint {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::truncation_abs: return "truncation_abs";
    case BoundKind::truncation_rel: return "truncation_rel";
    case BoundKind::mc_tail_abs: return "mc_tail_abs";
    case BoundKind::mc_tail_rel: return "mc_tail_rel";
    case BoundKind::mc_rate_abs: return "mc_rate_abs";
    case BoundKind::mc_rate_rel: return "mc_rate_rel";
    case BoundKind::qmc_rate_abs: return "qmc_rate_abs";
    case BoundKind::qmc_rate_rel: return "qmc_rate_rel";
    case BoundKind::hk_variation: return "hk_variation";
    case BoundKind::kh_product: return "kh_product";
    case BoundKind::crossover: return "crossover";
  }
  return "unknown";
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::fixed_p: return "fixed_p";
    case Regime::high_dim: return "high_dim";
    case Regime::gaussian_special: return "gaussian_special";
    case Regime::classical: return "classical";
  }
  return "unknown";
}

namespace detail {

double log_bell(int k) {
  if (k < 0) throw std::invalid_argument("log_bell: k must be >= 0");
  if (k > 256) throw std::invalid_argument("log_bell: k too large");
  // Bell triangle in extended precision; magnitudes stay far below the
  // long double range for k <= 256.
  std::vector<long double> row{1.0L};
  long double bell = 1.0L;
  for (int i = 1; i <= k; ++i) {
    std::vector<long double> next(row.size() + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j < row.size(); ++j) next[j + 1] = next[j] + row[j];
    row = std::move(next);
    bell = row[0];
  }
  return static_cast<double>(std::log(bell));
}

}  // namespace detail

std::uint64_t bell_number(int k) {
  if (k < 0 || k > 25) throw std::invalid_argument("bell_number: k must lie in [0, 25]");
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<std::uint64_t> next(row.size() + 1);
    next[0] = row.back();
    for (std::size_t j = 0; j < row.size(); ++j) next[j + 1] = next[j] + row[j];
    row = std::move(next);
  }
  return row[0];
}

namespace {

void finish(BoundReport& report) { report.value = std::exp(report.log_value); }

void require_np(double n, double m, int p, double min_n = 2, double min_m = 0) {
  if (!(n >= min_n)) throw std::invalid_argument("bounds: sample size n too small");
  if (min_m > 0 && !(m >= min_m)) throw std::invalid_argument("bounds: grid size m too small");
  if (p < 1) throw std::invalid_argument("bounds: need p >= 1");
}

}  // namespace

BoundReport truncation_error_bound(double n, int p, const CurvatureMeta& meta,
                                   const TSpec& t_spec, bool relative) {
  require_np(n, 0, p);
  meta.validate();
  const double t = resolve_t(t_spec, n, meta);
  const double n_eps = std::pow(n, meta.epsilon);
  const double exponent = -std::min(n_eps, 0.5 * static_cast<double>(p) * t);

  BoundReport report;
  report.kind = relative ? BoundKind::truncation_rel : BoundKind::truncation_abs;
  report.regime = Regime::fixed_p;
  report.log_value = exponent;
  report.components.emplace_back("log_exponential_term", exponent);
  report.components.emplace_back("t_value", t);
  if (!relative) {
    const double mass = -0.5 * static_cast<double>(p) * std::log(n);
    report.log_value += mass;
    report.components.emplace_back("log_mass_factor", mass);
  }
  report.flags.emplace_back("unit_constant");
  finish(report);
  return report;
}

double mc_tail_bound(double zeta, double n, double m, int p, const CurvatureMeta& meta,
                     const TSpec& t_spec, bool relative, Regime regime) {
  if (!(zeta > 0)) throw std::invalid_argument("mc_tail_bound: zeta must be > 0");
  require_np(n, m, p, 2, 1);
  if (regime != Regime::fixed_p && regime != Regime::high_dim)
    throw std::invalid_argument("mc_tail_bound: regime must be fixed_p or high_dim");
  meta.validate();
  const double t = resolve_t(t_spec, n, meta);
  const double pd = static_cast<double>(p);
  double log_exponent_mag;  // log of the (positive) exponent magnitude
  if (relative) {
    // (1/4) (2 pi/4)^p eta1 eta2^{2p-2} m zeta^2 / (t^{p+1} n p_dim)
    log_exponent_mag = -std::log(4.0) + pd * std::log(2.0 * M_PI / 4.0) + std::log(meta.eta1) +
                       (2.0 * pd - 2.0) * std::log(meta.eta2) + std::log(m) +
                       2.0 * std::log(zeta) - (pd + 1.0) * std::log(t) - std::log(n);
    log_exponent_mag -= regime == Regime::high_dim ? (pd + 2.0) * std::log(pd) : std::log(pd);
  } else {
    // fixed-p: (1/4) eta1 eta2^{p-2} m n^{p-1} zeta^2 / (4^p t^{p+1} p_dim)
    // high-dim: same with 1/4^p only and p_dim^{p+2} in the denominator.
    log_exponent_mag = std::log(meta.eta1) + (pd - 2.0) * std::log(meta.eta2) + std::log(m) +
                       (pd - 1.0) * std::log(n) + 2.0 * std::log(zeta) -
                       (pd + 1.0) * std::log(t);
    if (regime == Regime::high_dim)
      log_exponent_mag += -pd * std::log(4.0) - (pd + 2.0) * std::log(pd);
    else
      log_exponent_mag += -std::log(4.0) - pd * std::log(4.0) - std::log(pd);
  }
  const double tail = 2.0 * std::exp(-std::exp(log_exponent_mag));
  return std::min(1.0, tail);
}

BoundReport mc_tail_report(double zeta, double n, double m, int p, const CurvatureMeta& meta,
                           const TSpec& t_spec, bool relative, Regime regime) {
  BoundReport report;
  report.kind = relative ? BoundKind::mc_tail_rel : BoundKind::mc_tail_abs;
  report.regime = regime;
  const double prob = mc_tail_bound(zeta, n, m, p, meta, t_spec, relative, regime);
  report.value = prob;
  report.log_value = std::log(prob);
  report.components.emplace_back("probability", prob);
  report.components.emplace_back("t_value", resolve_t(t_spec, n, meta));
  report.flags.emplace_back("excludes_h_term");
  return report;
}

BoundReport mc_error_rate(double n, double m, int p, const CurvatureMeta& meta, Regime regime,
                          bool relative) {
  require_np(n, m, p, 3, 3);
  if (regime != Regime::fixed_p && regime != Regime::high_dim)
    throw std::invalid_argument("mc_error_rate: regime must be fixed_p or high_dim");
  meta.validate();
  const double pd = static_cast<double>(p);

  const double log_eta = 1.5 * std::log(meta.eta2 / meta.eta1);
  const double log_dim_pre =
      regime == Regime::high_dim ? (pd / 2.0 + 1.0) * std::log(pd) : 0.5 * std::log(pd);
  double log_pre, log_rate_sq;
  if (relative) {
    log_pre = std::log(2.0) + log_dim_pre + 0.5 * pd * std::log(4.0 / (2.0 * M_PI)) + log_eta;
    log_rate_sq = std::log(n) + (pd + 1.0) * std::log(std::log(n)) +
                  std::log(std::log(m)) - std::log(m);
  } else {
    log_pre = pd * std::log(2.0) + log_dim_pre + log_eta;
    log_rate_sq = (pd + 1.0) * std::log(std::log(n)) + std::log(std::log(m)) -
                  (pd - 1.0) * std::log(n) - std::log(m);
  }

  BoundReport report;
  report.kind = relative ? BoundKind::mc_rate_rel : BoundKind::mc_rate_abs;
  report.regime = regime;
  report.log_value = log_pre + 0.5 * log_rate_sq;
  report.components.emplace_back("log_prefactor", log_pre);
  report.components.emplace_back("log_rate", 0.5 * log_rate_sq);
  report.components.emplace_back("success_probability", 1.0 - 2.0 / m);
  finish(report);
  return report;
}

BoundReport hk_variation_bound(double n, int p, const CurvatureMeta& meta, double gamma_prime,
                               bool bell_on_corner) {
  require_np(n, 0, p);
  meta.validate();
  if (!(gamma_prime > 0)) throw std::invalid_argument("hk_variation_bound: gamma' must be > 0");
  const double pd = static_cast<double>(p);
  const double logD = std::log(meta.deriv_bound_D);

  // s1: D sqrt(eta2 p^3 log n) / n^{p(p-1)-1/2}
  const double s1 = logD + 0.5 * (std::log(meta.eta2) + 3.0 * std::log(pd) +
                                  std::log(std::log(n))) -
                    (pd * (pd - 1.0) - 0.5) * std::log(n);
  // s2: B_p D^{p-1} (eta2 pi p)^{(p+2)/2} / (2^{(p-1)/2} n); only for p >= 3.
  double s2 = -std::numeric_limits<double>::infinity();
  if (p >= 3)
    s2 = detail::log_bell(p) + (pd - 1.0) * logD +
         0.5 * (pd + 2.0) * std::log(meta.eta2 * M_PI * pd) -
         0.5 * (pd - 1.0) * std::log(2.0) - std::log(n);
  // s3: [B_p] (D sqrt(pi))^p prod_{i=floor(p/2)}^p i; the product is 0 at p=1.
  double s3;
  if (p == 1) {
    s3 = -std::numeric_limits<double>::infinity();
  } else {
    double log_fall = 0.0;
    for (int i = p / 2; i <= p; ++i) log_fall += std::log(static_cast<double>(i));
    s3 = pd * (logD + 0.5 * std::log(M_PI)) + log_fall;
    if (bell_on_corner) s3 += detail::log_bell(p);
  }

  const double log_box = pd * std::log(2.0 * gamma_prime);
  const std::vector<double> summands{s1, s2, s3};
  BoundReport report;
  report.kind = BoundKind::hk_variation;
  report.regime = Regime::fixed_p;
  report.log_value = log_box + logsumexp(summands);
  report.components.emplace_back("log_box_factor", log_box);
  report.components.emplace_back("log_gradient_term", s1);
  report.components.emplace_back("log_partition_term", s2);
  report.components.emplace_back("log_corner_term", s3);
  if (p < 3) report.flags.emplace_back("middle_term_empty_below_p3");
  if (!bell_on_corner) report.flags.emplace_back("corner_without_bell_factor");
  finish(report);
  return report;
}

BoundReport kh_error_bound(const BoundReport& hk, const DiscrepancyReport& dstar) {
  if (hk.kind != BoundKind::hk_variation)
    throw std::invalid_argument("kh_error_bound: first argument must be an hk_variation report");
  if (!(dstar.value >= 0)) throw std::invalid_argument("kh_error_bound: negative discrepancy");
  BoundReport report;
  report.kind = BoundKind::kh_product;
  report.regime = hk.regime;
  report.log_value = hk.log_value + std::log(dstar.value);
  report.components.emplace_back("log_hk_variation", hk.log_value);
  report.components.emplace_back("log_star_discrepancy", std::log(dstar.value));
  finish(report);
  return report;
}

BoundReport qmc_error_rate(double n, double m, int p, Regime regime, bool relative, double C,
                           double sigma) {
  require_np(n, m, p, 3, 3);
  if (regime == Regime::classical)
    throw std::invalid_argument("qmc_error_rate: classical regime is crossover-only");
  if (regime == Regime::gaussian_special && p < 2)
    throw std::invalid_argument("qmc_error_rate: gaussian_special needs p >= 2");
  if (!(C > 0) || !(sigma > 0))
    throw std::invalid_argument("qmc_error_rate: C and sigma must be > 0");

  BoundReport report;
  report.kind = relative ? BoundKind::qmc_rate_rel : BoundKind::qmc_rate_abs;
  report.regime = regime;
  report.log_value = detail::log_qmc_rate<double>(n, m, static_cast<double>(p), regime, relative,
                                                  C, sigma);
  report.components.emplace_back("log_value", report.log_value);
  report.flags.emplace_back(regime == Regime::fixed_p ? "unit_constant" : "rate_only");
  if (regime == Regime::gaussian_special && !relative)
    report.flags.emplace_back("absolute_derived_from_relative");
  finish(report);
  return report;
}

CrossoverResult crossover(double n, double m, int p, Regime regime, double C) {
  require_np(n, m, p, 3, 3);
  if (regime == Regime::gaussian_special)
    throw std::invalid_argument("crossover: regime must be fixed_p, classical or high_dim");
  CrossoverResult result;
  result.log_ratio =
      detail::log_crossover_ratio<double>(n, m, static_cast<double>(p), regime, C);
  result.ratio = std::exp(result.log_ratio);
  result.qmc_wins = result.log_ratio < 0.0;
  return result;
}

BoundReport crossover_report(double n, double m, int p, Regime regime, double C) {
  const CrossoverResult r = crossover(n, m, p, regime, C);
  BoundReport report;
  report.kind = BoundKind::crossover;
  report.regime = regime;
  report.value = r.ratio;
  report.log_value = r.log_ratio;
  report.components.emplace_back("ratio", r.ratio);
  report.components.emplace_back("qmc_wins", r.qmc_wins ? 1.0 : 0.0);
  return report;
}

double lipschitz_constant(double n, int p, const CurvatureMeta& meta, const TSpec& t_spec,
                          TruncationPolicy policy) {
  if (!(n >= 1)) throw std::invalid_argument("lipschitz_constant: need n >= 1");
  if (p < 1) throw std::invalid_argument("lipschitz_constant: need p >= 1");
  meta.validate();
  const double t = resolve_t(t_spec, std::max(n, 2.0), meta);
  const double pd = static_cast<double>(p);
  if (policy == TruncationPolicy::high_dim)
    return pd * meta.eta2 * std::sqrt(t * n / meta.eta1);
  return meta.eta2 * std::sqrt(t * pd * n / meta.eta1);
}

BoundReport l2_truncation_bound(double n, int p, const CurvatureMeta& meta, const TSpec& t_spec,
                                TruncationPolicy policy, bool relative, double eps_slack) {
  require_np(n, 0, p);
  meta.validate();
  if (!(eps_slack > 0)) throw std::invalid_argument("l2_truncation_bound: eps must be > 0");
  const double t = resolve_t(t_spec, n, meta);
  const double pd = static_cast<double>(p);
  const double exponent = -pd * t / (2.0 + eps_slack);

  BoundReport report;
  report.kind = relative ? BoundKind::truncation_rel : BoundKind::truncation_abs;
  report.regime = policy == TruncationPolicy::high_dim ? Regime::high_dim : Regime::fixed_p;
  report.log_value = exponent;
  report.components.emplace_back("log_exponential_term", exponent);
  report.components.emplace_back("eps_slack", eps_slack);
  if (!relative) {
    const double mass = -0.5 * pd * std::log(n);
    report.log_value += mass;
    report.components.emplace_back("log_mass_factor", mass);
  } else if (policy == TruncationPolicy::high_dim) {
    const double eta_factor = pd * std::log(meta.eta1 / meta.eta2);
    report.log_value += eta_factor;
    report.components.emplace_back("log_eta_ratio_factor", eta_factor);
  }
  report.flags.emplace_back("l2_ball");
  report.flags.emplace_back("unit_constant");
  finish(report);
  return report;
}

}  // namespace likint
