#pragma once

#include "likint/types.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace likint {

enum class GridKind { halton, uniform };

// Maximum Halton dimension; bases are the first 64 primes (2 .. 311).
inline constexpr Index kMaxHaltonDim = 64;

// m points in [0,1)^p with their provenance. Immutable after construction
// and safe to share across threads.
struct PointSet {
  Matrix points;  // m x p
  GridKind kind = GridKind::uniform;
  std::optional<std::uint64_t> seed;         // uniform only
  std::optional<std::uint64_t> start_index;  // halton only
  std::vector<std::uint32_t> bases;          // per-column prime bases (halton only)

  Index m() const { return points.rows(); }
  Index p() const { return points.cols(); }

  // Enforces the structural invariants; throws std::invalid_argument.
  void validate() const;
};

// j-th prime, 1-based (nth_prime(1) == 2). The table grows on demand.
std::uint32_t nth_prime(std::size_t j);

// Base-b digit reversal of i mapped into [0,1). Exact (a single correctly
// rounded division) whenever the digit count fits the integer path.
template <typename Scalar = double>
Scalar radical_inverse(std::uint64_t i, std::uint32_t base) {
  if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
  std::uint64_t reversed = 0;
  std::uint64_t denom = 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  while (i > 0 && denom <= kMax / base) {
    reversed = reversed * base + i % base;
    denom *= base;
    i /= base;
  }
  Scalar x = static_cast<Scalar>(reversed) / static_cast<Scalar>(denom);
  if (i > 0) {  // digits past the 64-bit denominator range
    Scalar scale = Scalar(1) / static_cast<Scalar>(denom);
    while (i > 0) {
      scale /= static_cast<Scalar>(base);
      x += static_cast<Scalar>(i % base) * scale;
      i /= base;
    }
  }
  return x;
}

// Halton set: row i, column j is radical_inverse(start_index + i, c_j) with
// c_j the j-th prime. Deterministic and prefix-stable in m.
PointSet halton(Index m, Index p, std::uint64_t start_index = 0);

// m iid Uniform[0,1)^p points from the counter-based generator; (seed, row,
// column) fully determines each coordinate.
PointSet uniform_grid(Index m, Index p, std::uint64_t seed);

// Affine map of unit-cube points onto the hypercube
// [center - radius, center + radius]^p: theta = 2*radius*(x - 1/2) + center.
template <typename Derived>
Matrix scale_to_box(const Eigen::MatrixBase<Derived>& unit_points,
                    const Eigen::Ref<const Vector>& center, double radius) {
  if (center.size() != unit_points.cols())
    throw std::invalid_argument("scale_to_box: center length != point dimension");
  if (!(radius > 0)) throw std::invalid_argument("scale_to_box: radius must be > 0");
  Matrix out = (2.0 * radius) * (unit_points.derived().array() - 0.5).matrix();
  out.rowwise() += center.transpose();
  return out;
}

inline Matrix scale_to_box(const PointSet& ps, const Eigen::Ref<const Vector>& center,
                           double radius) {
  return scale_to_box(ps.points, center, radius);
}

}  // namespace likint
