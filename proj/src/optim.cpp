#include "likint/optim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace likint {

ScalarOptResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                        double hi, double tol, int max_iter) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_maximize: need lo < hi");
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int it = 0;
  for (; it < max_iter && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  ScalarOptResult result;
  result.x = 0.5 * (a + b);
  result.fx = f(result.x);
  result.iterations = it;
  result.converged = (b - a) <= tol;
  return result;
}

VectorOptResult nelder_mead_maximize(const std::function<double(const Vector&)>& f,
                                     const Vector& init, double step, double tol, int max_iter) {
  const Index n = init.size();
  if (n < 1) throw std::invalid_argument("nelder_mead_maximize: empty start point");
  // Minimize -f with the standard simplex moves.
  auto cost = [&f](const Vector& x) { return -f(x); };

  std::vector<Vector> simplex(static_cast<std::size_t>(n) + 1, init);
  for (Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i) + 1](i) += step;
  std::vector<double> fv(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = cost(simplex[i]);

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  int it = 0;
  bool converged = false;
  for (; it < max_iter; ++it) {
    std::vector<std::size_t> order(simplex.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });

    double diameter = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      diameter = std::max(diameter, (simplex[order[i]] - simplex[order[0]]).norm());
    if (diameter < tol) {
      converged = true;
      break;
    }

    const std::size_t best = order.front(), worst = order.back();
    Vector centroid = Vector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(n);

    const Vector reflected = centroid + kReflect * (centroid - simplex[worst]);
    const double f_ref = cost(reflected);
    if (f_ref < fv[best]) {
      const Vector expanded = centroid + kExpand * (reflected - centroid);
      const double f_exp = cost(expanded);
      if (f_exp < f_ref) {
        simplex[worst] = expanded;
        fv[worst] = f_exp;
      } else {
        simplex[worst] = reflected;
        fv[worst] = f_ref;
      }
      continue;
    }
    if (f_ref < fv[order[order.size() - 2]]) {
      simplex[worst] = reflected;
      fv[worst] = f_ref;
      continue;
    }
    const Vector contracted = centroid + kContract * (simplex[worst] - centroid);
    const double f_con = cost(contracted);
    if (f_con < fv[worst]) {
      simplex[worst] = contracted;
      fv[worst] = f_con;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + kShrink * (simplex[i] - simplex[best]);
      fv[i] = cost(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < simplex.size(); ++i)
    if (fv[i] < fv[best]) best = i;
  VectorOptResult result;
  result.x = simplex[best];
  result.fx = -fv[best];
  result.iterations = it;
  result.converged = converged;
  return result;
}

}  // namespace likint
