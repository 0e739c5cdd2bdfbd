#include "tirlab/matrix.hpp"

#include <cmath>

#include "tirlab/error.hpp"

namespace tirlab {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require(rows >= 1 && cols >= 1, Errc::invalid_argument,
          "matrix dimensions must be at least 1x1");
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  require(rows.size() > 0 && rows.begin()->size() > 0, Errc::invalid_argument,
          "matrix dimensions must be at least 1x1");
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    require(row.size() == m.cols(), Errc::invalid_argument, "ragged row list");
    std::size_t c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace tirlab
