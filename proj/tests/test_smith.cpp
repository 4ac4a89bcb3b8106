#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sf5/smith.hpp"

using namespace sf5;

namespace {

// Bareiss determinant, exact for small integer matrices.
i64 det(IntMatrix a) {
  const std::size_t n = a.rows();
  i64 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("known Smith forms") {
  IntMatrix w(2, 3);
  const i64 vals[2][3] = {{1, 1, -2}, {1, -2, 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) w(i, j) = vals[i][j];
  const auto s = smith_normal_form(w);
  CHECK(s.rank == 2);
  CHECK(s.diagonal == std::vector<i64>{1, 3});

  IntMatrix z(2, 2);
  CHECK(smith_normal_form(z).rank == 0);

  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 3;
  CHECK(smith_normal_form(m).diagonal == std::vector<i64>{1, 6});
}

TEST_CASE("U M V = D with unimodular U, V and dividing diagonal") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
    const auto m = random_matrix(rng, r, c, trial % 2 ? 3 : 12);
    const auto s = smith_normal_form(m);
    INFO(m.str());
    CHECK(s.u * m * s.v == s.d);
    CHECK(std::abs(det(s.u)) == 1);
    CHECK(std::abs(det(s.v)) == 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    REQUIRE(s.diagonal.size() == s.rank);
    for (std::size_t i = 0; i < s.rank; ++i) {
      CHECK(s.d(i, i) == s.diagonal[i]);
      CHECK(s.diagonal[i] > 0);
      if (i + 1 < s.rank) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
    for (std::size_t i = s.rank; i < std::min(r, c); ++i) CHECK(s.d(i, i) == 0);
  }
}

TEST_CASE("invariant factors are unchanged by unimodular row operations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(rng, 2, 3, 6);
    IntMatrix g = IntMatrix::identity(2);
    g(0, 1) = static_cast<i64>(rng() % 7) - 3;
    CHECK(smith_normal_form(g * m).diagonal == smith_normal_form(m).diagonal);
  }
}
