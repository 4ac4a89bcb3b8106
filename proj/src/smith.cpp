#include "sf5/smith.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace sf5 {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += (*this)(r, k) * rhs(k, c);
  return out;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ";" : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
  }
  os << "]";
  return os.str();
}

namespace {

struct Work {
  IntMatrix d, u, v;

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(a, c), d(b, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(a, c), u(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, a), d(r, b));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, a), v(r, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, i64 k) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(dst, c) += k * d(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) += k * u(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, i64 k) {
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, dst) += k * d(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) += k * v(r, src);
  }
  void negate_row(std::size_t a) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(a, c) = -d(a, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(a, c) = -u(a, c);
  }
};

i64 iabs(i64 x) { return x < 0 ? -x : x; }

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Work w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (w.d(r, c) != 0 && (pr == rows || iabs(w.d(r, c)) < iabs(w.d(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    for (bool done = false; !done;) {
      done = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (w.d(r, t) == 0) continue;
        w.add_row(r, t, -(w.d(r, t) / w.d(t, t)));
        if (w.d(r, t) != 0) {
          w.swap_rows(r, t);
          done = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (w.d(t, c) == 0) continue;
        w.add_col(c, t, -(w.d(t, c) / w.d(t, t)));
        if (w.d(t, c) != 0) {
          w.swap_cols(c, t);
          done = false;
        }
      }
      if (!done) continue;
      for (std::size_t r = t + 1; r < rows && done; ++r)
        for (std::size_t c = t + 1; c < cols && done; ++c)
          if (w.d(r, c) % w.d(t, t) != 0) {
            w.add_row(t, r, 1);
            done = false;
          }
    }
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  SmithForm out{w.d, w.u, w.v, t, {}};
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(out.d(i, i));
  return out;
}

}  // namespace sf5
