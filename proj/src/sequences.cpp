#include "likint/sequences.hpp"

#include "likint/rng.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace likint {

namespace {

// Shared, grow-on-demand table of primes; trial division is plenty for the
// dimensions in play.
std::uint32_t prime_at(std::size_t j) {
  static std::vector<std::uint32_t> table{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() < j) {
    std::uint32_t candidate = table.back() + 2;
    for (;; candidate += 2) {
      bool is_prime = true;
      for (std::uint32_t d : table) {
        if (static_cast<std::uint64_t>(d) * d > candidate) break;
        if (candidate % d == 0) {
          is_prime = false;
          break;
        }
      }
      if (is_prime) break;
    }
    table.push_back(candidate);
  }
  return table[j - 1];
}

}  // namespace

std::uint32_t nth_prime(std::size_t j) {
  if (j == 0) throw std::invalid_argument("nth_prime: index is 1-based");
  constexpr std::size_t kCapacity = 200000;
  if (j > kCapacity) throw std::invalid_argument("nth_prime: index exceeds table capacity");
  return prime_at(j);
}

void PointSet::validate() const {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("PointSet: need m >= 1 and p >= 1");
  if (((points.array() < 0.0) || (points.array() >= 1.0)).any())
    throw std::invalid_argument("PointSet: coordinates must lie in [0,1)");
  if (kind == GridKind::halton) {
    if (seed.has_value()) throw std::invalid_argument("PointSet: halton carries no seed");
    if (!start_index.has_value())
      throw std::invalid_argument("PointSet: halton requires start_index");
    if (static_cast<Index>(bases.size()) != points.cols())
      throw std::invalid_argument("PointSet: one prime base per column required");
  } else {
    if (!seed.has_value()) throw std::invalid_argument("PointSet: uniform requires seed");
    if (start_index.has_value())
      throw std::invalid_argument("PointSet: uniform carries no start_index");
  }
}

PointSet halton(Index m, Index p, std::uint64_t start_index) {
  if (m < 1) throw std::invalid_argument("halton: need m >= 1");
  if (p < 1 || p > kMaxHaltonDim)
    throw std::invalid_argument("halton: dimension outside [1, 64]");
  PointSet ps;
  ps.kind = GridKind::halton;
  ps.start_index = start_index;
  ps.bases.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) ps.bases.push_back(nth_prime(static_cast<std::size_t>(j) + 1));
  ps.points.resize(m, p);
  for (Index j = 0; j < p; ++j) {
    const std::uint32_t base = ps.bases[static_cast<std::size_t>(j)];
    for (Index i = 0; i < m; ++i)
      ps.points(i, j) = radical_inverse(start_index + static_cast<std::uint64_t>(i), base);
  }
  return ps;
}

PointSet uniform_grid(Index m, Index p, std::uint64_t seed) {
  if (m < 1 || p < 1) throw std::invalid_argument("uniform_grid: need m >= 1 and p >= 1");
  PointSet ps;
  ps.kind = GridKind::uniform;
  ps.seed = seed;
  ps.points.resize(m, p);
  const std::uint64_t key = rng::stream_key(seed);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < p; ++j)
      ps.points(i, j) = rng::to_unit(
          rng::at(key, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(p) +
                           static_cast<std::uint64_t>(j)));
  return ps;
}

}  // namespace likint
