#pragma once

#include "likint/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

namespace likint {

struct TruncationRegion;  // defined in truncation.hpp

// Curvature/regularity constants attached to a posterior model: eta1/eta2
// scale the negative-Hessian eigenvalues per observation, D bounds the
// normalized partial derivatives on the truncation cube, epsilon is the
// tail-decay exponent, delta_np the locality radius inside which the
// eigenvalue bounds hold.
struct CurvatureMeta {
  double eta1 = 1.0;
  double eta2 = 1.0;
  double deriv_bound_D = 1.0;
  double epsilon = 1.0;
  double delta_np = std::numeric_limits<double>::infinity();

  void validate() const {
    if (!(eta1 > 0) || !(eta2 > 0) || eta1 > eta2)
      throw std::invalid_argument("CurvatureMeta: need 0 < eta1 <= eta2");
    if (!(deriv_bound_D > 0)) throw std::invalid_argument("CurvatureMeta: D must be > 0");
    if (!(epsilon > 0)) throw std::invalid_argument("CurvatureMeta: epsilon must be > 0");
    if (!(delta_np > 0)) throw std::invalid_argument("CurvatureMeta: delta_np must be > 0");
  }
};

// Log-posterior evaluator with derivatives. log_post is the log-likelihood
// plus log-prior; all callables must be reentrant (the harness evaluates
// them from many threads).
struct PosteriorModel {
  Index dim = 0;
  double n = 0;  // sample size
  std::function<double(const Vector&)> log_post;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;
  CurvatureMeta meta;
  // Exact log of the mode-relative full-space normalizer, when available:
  // log integral exp(l(theta) - l(theta_hat)) dtheta.
  std::optional<double> oracle_log_normalizer;
};

struct ModeResult {
  Vector theta_hat;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Newton ascent with step-halving line search on log_post; falls back to a
// damped gradient step when the Hessian is not usable. Non-convergence is
// reported, not thrown.
ModeResult find_mode(const PosteriorModel& model, const Vector& init, double tol = 1e-10,
                     int max_iter = 100);

// Worst deviation of grad/hess from central finite differences of log_post.
double finite_diff_check(const PosteriorModel& model, const Vector& theta, double h);

// Conjugate isotropic Gaussian: data rows y_i ~ N(mu, sigma^2 I_p), prior
// mu ~ N(0, sigma_p^2 I_p). Mode and normalizer are available in closed
// form, which makes this the oracle model for every relative-error check.
class GaussianConjugate {
 public:
  GaussianConjugate(Matrix data, double sigma, double sigma_p);

  // Data generated from N(0, I_p) with the given seed.
  static GaussianConjugate generate(Index n, Index p, double sigma, double sigma_p,
                                    std::uint64_t seed);

  Index dim() const { return data_.cols(); }
  Index n() const { return data_.rows(); }
  double sigma() const { return sigma_; }
  double sigma_p() const { return sigma_p_; }
  const Matrix& data() const { return data_; }

  // Posterior precision per coordinate, n/sigma^2 + 1/sigma_p^2.
  double precision() const;
  double posterior_variance() const { return 1.0 / precision(); }
  Vector mode() const;

  double log_post(const Vector& mu) const;

  // eta1 = eta2 = precision()/n: the Assumption-style bounds hold with
  // equality at the (constant) posterior Hessian.
  CurvatureMeta meta() const;
  // Curvature of the likelihood term alone (eta = 1/sigma^2); this is the
  // scale the closed-form rate analysis of the isotropic model uses.
  CurvatureMeta likelihood_meta() const;

  PosteriorModel model() const;

 private:
  Matrix data_;
  double sigma_;
  double sigma_p_;
  Vector sum_y_;
  double sum_sq_ = 0.0;
};

// log integral exp(l(mu) - l(mode)) dmu over all of R^p: (p/2) log(2 pi v)
// with v the posterior variance.
double gaussian_log_normalizer(const GaussianConjugate& gc);

// Same integral restricted to [mode - radius, mode + radius]^p, via the
// 1-D Gaussian tail difference per coordinate. Region must be centered at
// the exact mode.
double truncated_normalizer_oracle(const GaussianConjugate& gc, const TruncationRegion& region);

}  // namespace likint
