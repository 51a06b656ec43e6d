#include "likint/model.hpp"

#include "likint/rng.hpp"
#include "likint/sequences.hpp"
#include "likint/truncation.hpp"

#include <cmath>

#include "doctest.h"

using namespace likint;

namespace {

Matrix ones_column(Index n) { return Matrix::Ones(n, 1); }

PosteriorModel quadratic_1d(double center) {
  PosteriorModel m;
  m.dim = 1;
  m.n = 1;
  m.log_post = [center](const Vector& t) { return -0.5 * (t(0) - center) * (t(0) - center); };
  m.grad = [center](const Vector& t) { return Vector::Constant(1, -(t(0) - center)); };
  m.hess = [](const Vector&) { return -Matrix::Identity(1, 1); };
  return m;
}

}  // namespace

TEST_CASE("conjugate Gaussian closed-form mode") {
  const GaussianConjugate gc(ones_column(4), 1.0, 1.0);
  CHECK(gc.mode()(0) == doctest::Approx(0.8));  // (n/sigma^2) v ybar = 4/5
  CHECK(gc.precision() == doctest::Approx(5.0));

  const ModeResult found = find_mode(gc.model(), Vector::Zero(1));
  CHECK(found.converged);
  CHECK(found.theta_hat(0) == doctest::Approx(0.8).epsilon(1e-10));
}

TEST_CASE("find_mode at the exact mode converges immediately") {
  const GaussianConjugate gc = GaussianConjugate::generate(12, 3, 1.0, 2.0, 4);
  const ModeResult res = find_mode(gc.model(), gc.mode());
  CHECK(res.converged);
  CHECK(res.iterations <= 1);
  CHECK(res.grad_norm <= 1e-10);
}

TEST_CASE("find_mode solves a quadratic in one Newton step") {
  const ModeResult res = find_mode(quadratic_1d(3.0), Vector::Zero(1), 1e-12, 50);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.theta_hat(0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("find_mode falls back to gradient steps on a flat Hessian direction") {
  PosteriorModel m;
  m.dim = 1;
  m.n = 1;
  m.meta.eta2 = 1.0;
  m.log_post = [](const Vector& t) { return -std::pow(t(0), 4); };
  m.grad = [](const Vector& t) { return Vector::Constant(1, -4.0 * std::pow(t(0), 3)); };
  // Degenerate reported Hessian: zero everywhere.
  m.hess = [](const Vector&) { return Matrix::Zero(1, 1); };
  const ModeResult res = find_mode(m, Vector::Constant(1, 0.5), 1e-4, 2000);
  CHECK(res.converged);
  CHECK(std::abs(res.theta_hat(0)) < 0.1);
}

TEST_CASE("gaussian_log_normalizer closed forms") {
  const GaussianConjugate unit(ones_column(1), 1.0, 1.0);
  CHECK(gaussian_log_normalizer(unit) == doctest::Approx(0.5 * std::log(M_PI)));

  const GaussianConjugate wide(Matrix::Zero(3, 2), 1.0, 2.0);
  CHECK(gaussian_log_normalizer(wide) == doctest::Approx(std::log(2.0 * M_PI / 3.25)));

  // Product structure: doubling p doubles the log-normalizer.
  const GaussianConjugate p1 = GaussianConjugate::generate(5, 1, 1.0, 1.0, 1);
  const GaussianConjugate p2 = GaussianConjugate::generate(5, 2, 1.0, 1.0, 2);
  CHECK(gaussian_log_normalizer(p2) == doctest::Approx(2.0 * gaussian_log_normalizer(p1)));
}

TEST_CASE("truncated normalizer oracle") {
  const GaussianConjugate gc = GaussianConjugate::generate(6, 2, 1.0, 1.0, 9);
  const double v = gc.posterior_variance();

  // Wide region recovers the full-space normalizer.
  const auto wide = make_custom_region(gc.mode(), 50.0 * std::sqrt(v));
  CHECK(truncated_normalizer_oracle(gc, wide) ==
        doctest::Approx(gaussian_log_normalizer(gc)).epsilon(1e-12));

  // Radius at the 97.5% normal quantile captures 95% per coordinate.
  const auto z95 = make_custom_region(gc.mode(), 1.959964 * std::sqrt(v));
  const double per_dim =
      truncated_normalizer_oracle(gc, z95) / 2.0 - 0.5 * std::log(2.0 * M_PI * v);
  CHECK(std::exp(per_dim) == doctest::Approx(0.95).epsilon(1e-6));

  // Independence across coordinates: p = 2 value is twice the p = 1 value.
  const GaussianConjugate one(Matrix::Zero(6, 1), 1.0, 1.0);
  const GaussianConjugate two(Matrix::Zero(6, 2), 1.0, 1.0);
  const double r = 0.4;
  CHECK(truncated_normalizer_oracle(two, make_custom_region(two.mode(), r)) ==
        doctest::Approx(2.0 * truncated_normalizer_oracle(one, make_custom_region(one.mode(), r))));

  // Off-center regions are rejected.
  CHECK_THROWS_AS(truncated_normalizer_oracle(
                      gc, make_custom_region(gc.mode() + Vector::Constant(2, 0.1), 1.0)),
                  std::invalid_argument);
}

TEST_CASE("gradient and Hessian agree with finite differences") {
  // Quadratic log-posterior: central differences are exact up to round-off.
  const GaussianConjugate small = GaussianConjugate::generate(2, 1, 1.0, 1.0, 21);
  CHECK(finite_diff_check(small.model(), Vector::Constant(1, 0.3), 1e-4) < 1e-6);

  const GaussianConjugate gc = GaussianConjugate::generate(8, 3, 1.3, 0.9, 21);
  const PosteriorModel model = gc.model();
  Vector theta(3);
  theta << 0.2, -0.4, 1.1;
  CHECK(finite_diff_check(model, theta, 1e-3) < 1e-6);

  // Linear log-posterior: derivatives are exact.
  PosteriorModel linear;
  linear.dim = 2;
  linear.n = 1;
  linear.log_post = [](const Vector& t) { return 2.0 * t(0) - t(1); };
  linear.grad = [](const Vector&) {
    Vector g(2);
    g << 2.0, -1.0;
    return g;
  };
  linear.hess = [](const Vector&) { return Matrix::Zero(2, 2); };
  CHECK(finite_diff_check(linear, Vector::Zero(2), 1e-3) < 1e-8);

  // Adding a constant to log_post cancels out of every difference.
  PosteriorModel shifted = model;
  const auto base = model.log_post;
  shifted.log_post = [base](const Vector& t) { return base(t) + 1.25; };
  CHECK(finite_diff_check(shifted, theta, 1e-3) < 1e-6);
}

TEST_CASE("curvature metadata matches the Hessian") {
  const GaussianConjugate gc = GaussianConjugate::generate(16, 2, 1.0, 1.0, 3);
  const CurvatureMeta meta = gc.meta();
  const double n = static_cast<double>(gc.n());
  CHECK(meta.eta1 == meta.eta2);
  CHECK(meta.eta1 == doctest::Approx(1.0 + 1.0 / n).epsilon(1e-12));
  const Matrix H = gc.model().hess(gc.mode());
  CHECK(((-H) - meta.eta2 * n * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  const CurvatureMeta lm = gc.likelihood_meta();
  CHECK(lm.eta1 == doctest::Approx(1.0));
}

TEST_CASE("mode maximizes the log posterior over the truncation cube") {
  const GaussianConjugate gc = GaussianConjugate::generate(10, 2, 1.0, 1.0, 13);
  const PosteriorModel model = gc.model();
  const Vector mode = gc.mode();
  const double at_mode = model.log_post(mode);
  const PointSet cube = uniform_grid(1000, 2, 555);
  const Matrix thetas = scale_to_box(cube, mode, 0.9);
  for (Index i = 0; i < thetas.rows(); ++i)
    CHECK(model.log_post(thetas.row(i).transpose()) <= at_mode + 1e-12);
}

TEST_CASE("oracles are invariant under data-row permutation") {
  Matrix data = rng::standard_normals(7, 2, 99);
  const GaussianConjugate a(data, 1.0, 1.0);
  data.row(0).swap(data.row(6));
  data.row(2).swap(data.row(4));
  const GaussianConjugate b(data, 1.0, 1.0);
  CHECK(gaussian_log_normalizer(a) == doctest::Approx(gaussian_log_normalizer(b)));
  CHECK((a.mode() - b.mode()).cwiseAbs().maxCoeff() < 1e-14);
}
