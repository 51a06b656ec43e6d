#include "likint/discrepancy.hpp"

#include "likint/rng.hpp"
#include "likint/sequences.hpp"

#include <cmath>

#include "doctest.h"

using namespace likint;

namespace {

Matrix single_point(std::initializer_list<double> coords) {
  Matrix m(1, static_cast<Index>(coords.size()));
  Index j = 0;
  for (double c : coords) m(0, j++) = c;
  return m;
}

}  // namespace

TEST_CASE("local discrepancy of anchored boxes") {
  Vector a(1);
  a << 0.4;
  CHECK(local_discrepancy(single_point({0.5}), a) == doctest::Approx(-0.4));
  a << 0.6;
  CHECK(local_discrepancy(single_point({0.5}), a) == doctest::Approx(0.4));

  // All four base-2 prefix points {0, 1/2, 1/4, 3/4} lie inside [0, 0.8).
  a << 0.8;
  CHECK(local_discrepancy(halton(4, 1, 0), a) == doctest::Approx(1.0 - 0.8));

  Vector bad(2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(local_discrepancy(single_point({0.5}), bad), std::invalid_argument);
  a << 0.0;
  CHECK_THROWS_AS(local_discrepancy(single_point({0.5}), a), std::invalid_argument);
}

TEST_CASE("exact star discrepancy on tiny sets") {
  CHECK(star_discrepancy_exact(single_point({0.5})).value == doctest::Approx(0.5));

  Matrix two(2, 1);
  two << 0.25, 0.75;
  CHECK(star_discrepancy_exact(two).value == doctest::Approx(0.25));

  // A single point at the origin: boxes shrinking onto it give |1/m - vol| -> 1.
  const auto degenerate = star_discrepancy_exact(halton(1, 2, 0));
  CHECK(degenerate.value == doctest::Approx(1.0));
  REQUIRE(degenerate.witness.has_value());
  CHECK(degenerate.witness->isZero());
}

TEST_CASE("closed-form 1-D star discrepancy") {
  CHECK(star_discrepancy_1d(single_point({0.5})).value == doctest::Approx(0.5));
  CHECK(star_discrepancy_1d(halton(4, 1, 0)).value == doctest::Approx(0.25));

  Matrix mid(3, 1);
  mid << 1.0 / 6.0, 0.5, 5.0 / 6.0;
  CHECK(star_discrepancy_1d(mid).value == doctest::Approx(1.0 / 6.0));

  Matrix flat(2, 2);
  flat.setConstant(0.5);
  CHECK_THROWS_AS(star_discrepancy_1d(flat), std::invalid_argument);
}

TEST_CASE("brute force agrees with the 1-D closed form") {
  for (int rep = 0; rep < 40; ++rep) {
    const Index m = 1 + static_cast<Index>(rng::at(9, rep) % 64);
    const PointSet ps = uniform_grid(m, 1, 1000 + static_cast<std::uint64_t>(rep));
    const double brute = star_discrepancy_exact(ps).value;
    const double closed = star_discrepancy_1d(ps).value;
    CHECK(brute == doctest::Approx(closed).epsilon(1e-12));
  }
}

namespace {

// Naive reference: evaluate both counts at every grid anchor directly.
double naive_star_discrepancy(const Matrix& pts) {
  const Index m = pts.rows(), p = pts.cols();
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < m; ++i) grid[static_cast<std::size_t>(j)].push_back(pts(i, j));
    grid[static_cast<std::size_t>(j)].push_back(1.0);
    std::sort(grid[static_cast<std::size_t>(j)].begin(), grid[static_cast<std::size_t>(j)].end());
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
  double best = -1.0;
  for (;;) {
    double vol = 1.0;
    Vector a(p);
    for (Index j = 0; j < p; ++j) {
      a(j) = grid[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
      vol *= a(j);
    }
    Index strict = 0, closed = 0;
    for (Index i = 0; i < m; ++i) {
      if ((pts.row(i).transpose().array() < a.array()).all()) ++strict;
      if ((pts.row(i).transpose().array() <= a.array()).all()) ++closed;
    }
    best = std::max(best, std::max(double(closed) / m - vol, vol - double(strict) / m));
    Index j = p - 1;
    for (; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < grid[static_cast<std::size_t>(j)].size()) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
  return best;
}

}  // namespace

TEST_CASE("sweep enumeration matches the naive anchor scan in higher dimensions") {
  for (int rep = 0; rep < 10; ++rep) {
    for (Index p : {2, 3}) {
      const PointSet ps = uniform_grid(10, p, 400 + static_cast<std::uint64_t>(rep));
      CHECK(star_discrepancy_exact(ps).value ==
            doctest::Approx(naive_star_discrepancy(ps.points)).epsilon(1e-14));
    }
  }
  // Duplicated coordinates exercise the grid dedup path.
  Matrix dup(4, 2);
  dup << 0.5, 0.5, 0.5, 0.25, 0.25, 0.5, 0.5, 0.5;
  CHECK(star_discrepancy_exact(dup).value ==
        doctest::Approx(naive_star_discrepancy(dup)).epsilon(1e-14));
}

TEST_CASE("|local discrepancy| is dominated by the star discrepancy") {
  const PointSet ps = uniform_grid(24, 2, 5);
  const double dstar = star_discrepancy_exact(ps).value;
  for (int rep = 0; rep < 200; ++rep) {
    Vector a(2);
    const std::uint64_t key = rng::stream_key(77);
    a << 1.0 - rng::to_unit(rng::at(key, 2 * rep)), 1.0 - rng::to_unit(rng::at(key, 2 * rep + 1));
    CHECK(std::abs(local_discrepancy(ps, a)) <= dstar + 1e-12);
  }
}

TEST_CASE("exact discrepancy is invariant under point permutation") {
  const PointSet ps = uniform_grid(12, 2, 31);
  Matrix shuffled = ps.points;
  shuffled.row(0).swap(shuffled.row(7));
  shuffled.row(3).swap(shuffled.row(11));
  CHECK(star_discrepancy_exact(ps).value ==
        doctest::Approx(star_discrepancy_exact(shuffled).value).epsilon(1e-15));
}

TEST_CASE("work budget guard refuses oversized enumerations") {
  const PointSet ps = uniform_grid(64, 3, 1);
  CHECK_THROWS_WITH_AS(star_discrepancy_exact(ps, 1000.0),
                       doctest::Contains("budget"), std::runtime_error);
}

TEST_CASE("explicit Halton bound: closed form at p = 1") {
  for (double m : {8.0, 100.0, 4096.0}) {
    const double expected = (2.0 * (std::log(m) / (2.0 * std::log(2.0)) + 1.0) + 4.0) / m;
    CHECK(halton_bound_explicit(m, 1).value == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("explicit Halton bound dominates the exact discrepancy") {
  for (int p = 1; p <= 3; ++p) {
    for (Index m : {8, 16, 32, 64}) {
      const double exact = star_discrepancy_exact(halton(m, p, 0)).value;
      const double bound = halton_bound_explicit(static_cast<double>(m), p).value;
      CHECK(bound >= exact);
    }
  }
}

TEST_CASE("explicit Halton bound decays faster than 1/m alone") {
  // Direct evaluation at m = 1e3 vs 1e6: the growth is polylogarithmic, so
  // value(1e3) exceeds value(1e6) rescaled by the m-ratio over the squared
  // log-ratio.
  const double v3 = halton_bound_explicit(1e3, 2).value;
  const double v6 = halton_bound_explicit(1e6, 2).value;
  const double log_ratio = std::log(1e6) / std::log(1e3);
  CHECK(v3 > v6 * (1e6 / 1e3) / (log_ratio * log_ratio));
}

TEST_CASE("asymptotic Halton envelope") {
  const double e2 = std::exp(2.0);
  const double expected =
      std::pow(4.0 * std::exp(1.0), 2.0) * std::pow(2.0, 1.5) * std::log(2.0) * 4.0 / e2;
  CHECK(halton_bound_asymptotic(e2, 2) == doctest::Approx(expected).epsilon(1e-12));

  // Ratio identity between m and m^2: log(m^2)^p m / (log(m)^p m^2) = 2^p/m.
  const double m = 50.0;
  for (int p : {2, 3, 5}) {
    const double ratio = halton_bound_asymptotic(m * m, p) / halton_bound_asymptotic(m, p);
    CHECK(ratio == doctest::Approx(std::pow(2.0, p) / m).epsilon(1e-10));
  }

  // Fixed p, m -> infinity: the envelope vanishes.
  CHECK(halton_bound_asymptotic(1e12, 2) < 1e-6);
}

TEST_CASE("1-D Halton discrepancy decays like log(m)/m") {
  for (Index m = 4; m <= 1024; m *= 2) {
    const double dstar = star_discrepancy_1d(halton(m, 1, 0)).value;
    CHECK(dstar <= 2.0 * std::log(static_cast<double>(m) + 1.0) / static_cast<double>(m));
  }
}

TEST_CASE("Rosser-style prime inequalities") {
  CHECK(prime_bounds_check(1));  // lower bound only: 1 log 1 = 0 <= 2
  CHECK(prime_bounds_check(2));
  CHECK(prime_bounds_check(6));  // c_6 = 13 between 10.75 and 16.25
  for (std::size_t j = 3; j <= 100; ++j) CHECK(prime_bounds_check(j));
  CHECK_THROWS_AS(prime_bounds_check(0), std::invalid_argument);
}
