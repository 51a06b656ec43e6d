#pragma once

#include "likint/types.hpp"

#include <functional>

namespace likint {

struct ScalarOptResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Golden-section maximization of a unimodal objective on [lo, hi].
ScalarOptResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                        double hi, double tol = 1e-8, int max_iter = 500);

struct VectorOptResult {
  Vector x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead maximization (standard reflection/expansion/contraction
// coefficients); terminates when the simplex diameter falls below tol.
VectorOptResult nelder_mead_maximize(const std::function<double(const Vector&)>& f,
                                     const Vector& init, double step = 0.5, double tol = 1e-9,
                                     int max_iter = 2000);

}  // namespace likint
