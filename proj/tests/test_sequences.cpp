#include "likint/sequences.hpp"

#include "likint/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace likint;

namespace {

// Independent oracle: expand i in base b, reverse the digits, evaluate the
// resulting rational with a single division.
double digit_reversal_oracle(std::uint64_t i, std::uint32_t b) {
  std::vector<std::uint32_t> digits;
  while (i > 0) {
    digits.push_back(static_cast<std::uint32_t>(i % b));
    i /= b;
  }
  std::uint64_t num = 0, den = 1;
  for (std::uint32_t d : digits) {
    num = num * b + d;
    den *= b;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

TEST_CASE("radical inverse matches hand-derived values") {
  CHECK(radical_inverse(0, 2) == 0.0);
  CHECK(radical_inverse(3, 2) == 0.75);            // 11 in base 2 reverses to 0.11
  CHECK(radical_inverse(5, 3) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));  // 12 -> 0.21
  CHECK(radical_inverse(5, 2) == 0.625);
  CHECK(radical_inverse(5, 5) == doctest::Approx(1.0 / 25.0).epsilon(1e-15));  // 10 -> 0.01
  CHECK_THROWS_AS(radical_inverse(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(radical_inverse(1, 0), std::invalid_argument);
}

TEST_CASE("radical inverse equals the digit-reversal oracle across bases") {
  for (std::uint32_t b : {2u, 3u, 5u, 7u, 31u})
    for (std::uint64_t i = 0; i < 300; ++i)
      CHECK(radical_inverse(i, b) == digit_reversal_oracle(i, b));
}

TEST_CASE("nth_prime") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(5) == 11);
  CHECK(nth_prime(25) == 97);
  CHECK(nth_prime(64) == 311);
  CHECK_THROWS_AS(nth_prime(0), std::invalid_argument);

  // Sieve oracle for the first 100 primes.
  std::vector<std::uint32_t> sieve;
  for (std::uint32_t c = 2; sieve.size() < 100; ++c) {
    bool prime = true;
    for (std::uint32_t d = 2; d * d <= c; ++d)
      if (c % d == 0) {
        prime = false;
        break;
      }
    if (prime) sieve.push_back(c);
  }
  for (std::size_t j = 1; j <= sieve.size(); ++j) CHECK(nth_prime(j) == sieve[j - 1]);
}

TEST_CASE("halton generates the van der Corput prefix") {
  const PointSet ps = halton(4, 1, 0);
  ps.validate();
  CHECK(ps.points(0, 0) == 0.0);
  CHECK(ps.points(1, 0) == 0.5);
  CHECK(ps.points(2, 0) == 0.25);
  CHECK(ps.points(3, 0) == 0.75);
}

TEST_CASE("halton base-2/3 start and shifted start") {
  const PointSet two = halton(2, 2, 0);
  CHECK(two.points(0, 0) == 0.0);
  CHECK(two.points(0, 1) == 0.0);
  CHECK(two.points(1, 0) == 0.5);
  CHECK(two.points(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const PointSet shifted = halton(1, 3, 5);
  CHECK(shifted.points(0, 0) == 0.625);
  CHECK(shifted.points(0, 1) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
  CHECK(shifted.points(0, 2) == doctest::Approx(1.0 / 25.0).epsilon(1e-15));

  CHECK_THROWS_AS(halton(4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(halton(4, kMaxHaltonDim + 1, 0), std::invalid_argument);
}

TEST_CASE("halton determinism and prefix property") {
  const PointSet big = halton(4096, 3, 0);
  for (Index m : {1, 2, 3, 5, 17, 64, 1000, 4095, 4096}) {
    const PointSet small = halton(m, 3, 0);
    CHECK(small.points == big.points.topRows(m));
  }
  const PointSet again = halton(4096, 3, 0);
  CHECK(again.points == big.points);
}

TEST_CASE("halton base-2 column stratifies dyadic intervals") {
  for (int r = 1; r <= 4; ++r) {
    const Index m = Index(1) << r;
    const PointSet ps = halton(m, 1, 0);
    std::vector<int> hits(static_cast<std::size_t>(m), 0);
    for (Index i = 0; i < m; ++i)
      ++hits[static_cast<std::size_t>(std::floor(ps.points(i, 0) * static_cast<double>(m)))];
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("uniform grid determinism and range") {
  const PointSet a = uniform_grid(5, 2, 42);
  const PointSet b = uniform_grid(5, 2, 42);
  a.validate();
  CHECK(a.points == b.points);
  CHECK(uniform_grid(5, 2, 43).points != a.points);

  const PointSet c = uniform_grid(3, 4, 0);
  CHECK((c.points.array() >= 0.0).all());
  CHECK((c.points.array() < 1.0).all());
}

TEST_CASE("uniform grid sample mean is near 1/2") {
  const PointSet ps = uniform_grid(10000, 1, 7);
  CHECK(std::abs(ps.points.mean() - 0.5) < 0.02);
}

TEST_CASE("point set structural invariants") {
  PointSet bad = halton(2, 2, 0);
  bad.seed = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PointSet bad2 = uniform_grid(2, 2, 1);
  bad2.seed.reset();
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("scale_to_box maps the cube onto the region") {
  Vector center(2);
  center << 1.0, 2.0;

  Matrix mid(1, 2);
  mid << 0.5, 0.5;
  CHECK(scale_to_box(mid, center, 0.7).row(0).transpose() == center);

  Matrix corner(1, 2);
  corner << 0.0, 0.0;
  const Matrix lo = scale_to_box(corner, center, 0.5);
  CHECK(lo(0, 0) == doctest::Approx(0.5));
  CHECK(lo(0, 1) == doctest::Approx(1.5));

  Matrix x(1, 1);
  x << 0.75;
  CHECK(scale_to_box(x, Vector::Zero(1), 2.0)(0, 0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(scale_to_box(x, center, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_to_box(x, Vector::Zero(1), 0.0), std::invalid_argument);
}

TEST_CASE("scale_to_box round-trips through the inverse affine map") {
  const PointSet ps = uniform_grid(200, 3, 11);
  Vector center(3);
  center << -1.0, 0.25, 8.0;
  const double radius = 0.37;
  const Matrix theta = scale_to_box(ps, center, radius);
  CHECK((theta.array() >= (center.transpose().replicate(200, 1).array() - radius)).all());
  CHECK((theta.array() <= (center.transpose().replicate(200, 1).array() + radius)).all());
  Matrix back = (theta.rowwise() - center.transpose()) / (2.0 * radius);
  back.array() += 0.5;
  CHECK((back - ps.points).cwiseAbs().maxCoeff() < std::pow(2.0, -40));
}

TEST_CASE("derived seeds decorrelate replicate streams") {
  CHECK(rng::derive_seed(1, 0) != rng::derive_seed(1, 1));
  CHECK(rng::derive_seed(1, 0) != rng::derive_seed(2, 0));
  const Matrix z = rng::standard_normals(2000, 1, 3);
  CHECK(std::abs(z.mean()) < 0.08);
  CHECK(std::abs(z.array().square().mean() - 1.0) < 0.12);
}
