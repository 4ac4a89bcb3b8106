#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sf5/arith.hpp"

namespace sf5 {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  i64& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  i64 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix&) const = default;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<i64> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... > 0 on
/// the first `rank` diagonal entries.
struct SmithForm {
  IntMatrix d, u, v;
  std::size_t rank = 0;
  std::vector<i64> diagonal;  // the `rank` nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace sf5
