#include "likint/rng.hpp"

#include <cmath>

namespace likint::rng {

Matrix standard_normals(Index rows, Index cols, std::uint64_t seed) {
  Matrix out(rows, cols);
  const std::uint64_t key = stream_key(seed ^ 0xA3EC647659359ACDULL);
  const Index total = rows * cols;
  std::uint64_t k = 0;
  for (Index t = 0; t < total; t += 2) {
    // u1 in (0,1] keeps the log finite.
    const double u1 = 1.0 - to_unit(at(key, k++));
    const double u2 = to_unit(at(key, k++));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z0 = r * std::cos(2.0 * M_PI * u2);
    const double z1 = r * std::sin(2.0 * M_PI * u2);
    out(t / cols, t % cols) = z0;
    if (t + 1 < total) out((t + 1) / cols, (t + 1) % cols) = z1;
  }
  return out;
}

}  // namespace likint::rng
