#include "likint/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace likint {

void write_points_csv(std::ostream& os, const Eigen::Ref<const Matrix>& points) {
  const Index p = points.cols();
  for (Index j = 0; j < p; ++j) os << (j ? "," : "") << 'x' << (j + 1);
  os << '\n';
  char buf[40];
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < p; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", points(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
}

Matrix read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_points_csv: empty input");
  Index p = line.empty() ? 0 : 1;
  for (char c : line)
    if (c == ',') ++p;
  if (p < 1) throw std::invalid_argument("read_points_csv: no columns");

  std::vector<double> values;
  Index rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    Index cols = 0;
    while (std::getline(ls, cell, ',')) {
      values.push_back(std::stod(cell));
      ++cols;
    }
    if (cols != p) throw std::invalid_argument("read_points_csv: ragged row: " + line);
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("read_points_csv: no data rows");
  Matrix points(rows, p);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < p; ++j)
      points(i, j) = values[static_cast<std::size_t>(i * p + j)];
  return points;
}

}  // namespace likint
