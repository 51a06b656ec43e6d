#pragma once

#include "likint/types.hpp"

#include <iosfwd>

namespace likint {

// Point CSV: header x1,...,xp, one row per point, 17 significant digits.
void write_points_csv(std::ostream& os, const Eigen::Ref<const Matrix>& points);
Matrix read_points_csv(std::istream& is);

}  // namespace likint
