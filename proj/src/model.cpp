#include "likint/model.hpp"

#include "likint/rng.hpp"
#include "likint/truncation.hpp"

#include <cmath>

namespace likint {

ModeResult find_mode(const PosteriorModel& model, const Vector& init, double tol, int max_iter) {
  if (init.size() != model.dim) throw std::invalid_argument("find_mode: init dimension mismatch");
  if (!init.allFinite()) throw std::invalid_argument("find_mode: init must be finite");
  Vector theta = init;
  double f = model.log_post(theta);
  Vector g = model.grad(theta);
  int it = 0;
  for (; it < max_iter && g.norm() > tol; ++it) {
    Vector step;
    const Matrix neg_hess = -model.hess(theta);
    Eigen::LDLT<Matrix> ldlt(neg_hess);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) step = ldlt.solve(g);
    // The Newton step must be a finite ascent direction; otherwise fall back
    // to a damped gradient step.
    if (step.size() == 0 || !step.allFinite() || !(step.dot(g) > 0)) {
      double damping = model.meta.eta2 * std::max(model.n, 1.0);
      if (!std::isfinite(damping) || damping <= 0) damping = 1e3;
      step = g / damping;
    }
    double scale = 1.0;
    bool moved = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      const Vector candidate = theta + scale * step;
      const double fc = model.log_post(candidate);
      if (fc > f) {
        theta = candidate;
        f = fc;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved) break;  // no ascent direction left; report as-is
    g = model.grad(theta);
  }
  ModeResult result;
  result.theta_hat = theta;
  result.grad_norm = g.norm();
  result.iterations = it;
  result.converged = result.grad_norm <= tol;
  return result;
}

double finite_diff_check(const PosteriorModel& model, const Vector& theta, double h) {
  if (!(h > 0)) throw std::invalid_argument("finite_diff_check: h must be > 0");
  const Index p = model.dim;
  double worst = 0.0;
  const Vector g = model.grad(theta);
  const Matrix H = model.hess(theta);
  const double f0 = model.log_post(theta);
  for (Index i = 0; i < p; ++i) {
    Vector up = theta, dn = theta;
    up(i) += h;
    dn(i) -= h;
    const double f_up = model.log_post(up);
    const double f_dn = model.log_post(dn);
    worst = std::max(worst, std::abs((f_up - f_dn) / (2.0 * h) - g(i)));
    worst = std::max(worst, std::abs((f_up - 2.0 * f0 + f_dn) / (h * h) - H(i, i)));
    for (Index j = i + 1; j < p; ++j) {
      Vector pp = theta, pm = theta, mp = theta, mm = theta;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      const double mixed = (model.log_post(pp) - model.log_post(pm) - model.log_post(mp) +
                            model.log_post(mm)) /
                           (4.0 * h * h);
      worst = std::max(worst, std::abs(mixed - H(i, j)));
    }
  }
  return worst;
}

GaussianConjugate::GaussianConjugate(Matrix data, double sigma, double sigma_p)
    : data_(std::move(data)), sigma_(sigma), sigma_p_(sigma_p) {
  if (data_.rows() < 1 || data_.cols() < 1)
    throw std::invalid_argument("GaussianConjugate: need n >= 1 and p >= 1");
  if (!data_.allFinite()) throw std::invalid_argument("GaussianConjugate: data must be finite");
  if (!(sigma_ > 0) || !(sigma_p_ > 0))
    throw std::invalid_argument("GaussianConjugate: scales must be > 0");
  sum_y_ = data_.colwise().sum().transpose();
  sum_sq_ = data_.array().square().sum();
}

GaussianConjugate GaussianConjugate::generate(Index n, Index p, double sigma, double sigma_p,
                                              std::uint64_t seed) {
  return GaussianConjugate(rng::standard_normals(n, p, seed), sigma, sigma_p);
}

double GaussianConjugate::precision() const {
  return static_cast<double>(n()) / (sigma_ * sigma_) + 1.0 / (sigma_p_ * sigma_p_);
}

Vector GaussianConjugate::mode() const { return sum_y_ / ((sigma_ * sigma_) * precision()); }

double GaussianConjugate::log_post(const Vector& mu) const {
  if (mu.size() != dim()) throw std::invalid_argument("GaussianConjugate: dimension mismatch");
  const double nn = static_cast<double>(n());
  const double pp = static_cast<double>(dim());
  const double ss = sum_sq_ - 2.0 * mu.dot(sum_y_) + nn * mu.squaredNorm();
  return -0.5 * nn * pp * std::log(2.0 * M_PI * sigma_ * sigma_) -
         ss / (2.0 * sigma_ * sigma_) - 0.5 * pp * std::log(2.0 * M_PI * sigma_p_ * sigma_p_) -
         mu.squaredNorm() / (2.0 * sigma_p_ * sigma_p_);
}

CurvatureMeta GaussianConjugate::meta() const {
  CurvatureMeta m;
  m.eta1 = m.eta2 = precision() / static_cast<double>(n());
  m.deriv_bound_D = m.eta2;
  m.epsilon = 1.0;  // strictly log-concave
  m.delta_np = std::numeric_limits<double>::infinity();
  return m;
}

CurvatureMeta GaussianConjugate::likelihood_meta() const {
  CurvatureMeta m;
  m.eta1 = m.eta2 = 1.0 / (sigma_ * sigma_);
  m.deriv_bound_D = m.eta2;
  m.epsilon = 1.0;
  m.delta_np = std::numeric_limits<double>::infinity();
  return m;
}

PosteriorModel GaussianConjugate::model() const {
  PosteriorModel pm;
  pm.dim = dim();
  pm.n = static_cast<double>(n());
  const double A = precision();
  const double c0 = log_post(mode());
  const Vector mu_hat = mode();
  pm.log_post = [c0, A, mu_hat](const Vector& mu) {
    return c0 - 0.5 * A * (mu - mu_hat).squaredNorm();
  };
  pm.grad = [A, mu_hat](const Vector& mu) -> Vector { return -A * (mu - mu_hat); };
  const Index p = dim();
  pm.hess = [A, p](const Vector&) -> Matrix { return -A * Matrix::Identity(p, p); };
  pm.meta = meta();
  pm.oracle_log_normalizer = gaussian_log_normalizer(*this);
  return pm;
}

double gaussian_log_normalizer(const GaussianConjugate& gc) {
  return 0.5 * static_cast<double>(gc.dim()) *
         std::log(2.0 * M_PI * gc.posterior_variance());
}

double truncated_normalizer_oracle(const GaussianConjugate& gc, const TruncationRegion& region) {
  const Vector mu_hat = gc.mode();
  if (region.center.size() != gc.dim())
    throw std::invalid_argument("truncated_normalizer_oracle: region dimension mismatch");
  if ((region.center - mu_hat).lpNorm<Eigen::Infinity>() >
      1e-8 * (1.0 + mu_hat.lpNorm<Eigen::Infinity>()))
    throw std::invalid_argument("truncated_normalizer_oracle: region must be centered at the mode");
  const double v = gc.posterior_variance();
  // Per coordinate: sqrt(2 pi v) * (2 Phi(gamma/sqrt(v)) - 1).
  const double mass_1d = std::erf(region.radius / std::sqrt(2.0 * v));
  return static_cast<double>(gc.dim()) * (0.5 * std::log(2.0 * M_PI * v) + std::log(mass_1d));
}

}  // namespace likint
