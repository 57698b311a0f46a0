#include <doctest.h>

#include "charpoly/berkowitz.hpp"
#include "charpoly/matrix.hpp"
#include "charpoly/rng.hpp"

using namespace charpoly;

TEST_CASE("multiplication on frozen examples") {
  IntRing z;
  auto x = Matrix<IntRing>::from_ints(z, {{1, 2}, {3, 4}});
  auto swap = Matrix<IntRing>::from_ints(z, {{0, 1}, {1, 0}});
  CHECK(multiply(x, swap) == Matrix<IntRing>::from_ints(z, {{2, 1}, {4, 3}}));

  SplitMix64 rng(3);
  auto any = random_matrix(z, 3, rng);
  CHECK(multiply(Matrix<IntRing>::identity(z, 3), any) == any);
  CHECK(multiply(any, Matrix<IntRing>::identity(z, 3)) == any);

  // row times column: [a12 a13] [a21; a31] = [a12 a21 + a13 a31]
  auto row = Matrix<IntRing>::from_ints(z, {{2, 3}});
  auto col = Matrix<IntRing>::from_ints(z, {{5}, {7}});
  CHECK(multiply(row, col) == Matrix<IntRing>::from_ints(z, {{31}}));
}

TEST_CASE("multiplication validates shapes and rings") {
  IntRing z;
  auto a = Matrix<IntRing>::from_ints(z, {{1, 2}, {3, 4}});
  auto b = Matrix<IntRing>::from_ints(z, {{1, 2, 3}});
  CHECK_THROWS_AS(multiply(a, b), DimensionError);

  auto m7 = Matrix<ModRing>::from_ints(ModRing(7), {{1}});
  auto m11 = Matrix<ModRing>::from_ints(ModRing(11), {{1}});
  CHECK_THROWS_AS(multiply(m7, m11), RingMismatchError);
}

TEST_CASE("multiplication is associative") {
  SplitMix64 rng(17);
  IntRing z;
  for (int t = 0; t < 50; ++t) {
    std::size_t d0 = rng.bounded(4), d1 = rng.bounded(4), d2 = rng.bounded(4), d3 = rng.bounded(4);
    Matrix<IntRing> a(z, d0, d1), b(z, d1, d2), c(z, d2, d3);
    for (std::size_t i = 0; i < d0; ++i)
      for (std::size_t j = 0; j < d1; ++j) a.at(i, j) = random_element(z, rng);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j) b.at(i, j) = random_element(z, rng);
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d3; ++j) c.at(i, j) = random_element(z, rng);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("powers") {
  IntRing z;
  auto d = Matrix<IntRing>::from_ints(z, {{2, 0}, {0, 3}});
  CHECK(power(d, 0) == Matrix<IntRing>::identity(z, 2));
  CHECK(power(d, 1) == d);
  CHECK(power(d, 3) == Matrix<IntRing>::from_ints(z, {{8, 0}, {0, 27}}));
  CHECK_THROWS_AS(power(Matrix<IntRing>(z, 1, 2), 2), DimensionError);
}

TEST_CASE("block decomposition partitions into pivot, row, column, principal") {
  IntRing z;
  auto a = Matrix<IntRing>::from_ints(z, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});

  auto d1 = decompose(a, 1);
  CHECK(d1.pivot == z.from_long(1));
  CHECK(d1.row_block == Matrix<IntRing>::from_ints(z, {{2, 3}}));
  CHECK(d1.col_block == Matrix<IntRing>::from_ints(z, {{4}, {7}}));
  CHECK(d1.principal == Matrix<IntRing>::from_ints(z, {{5, 6}, {8, 9}}));
  CHECK(d1.principal == delete_rows_cols(a, {std::size_t{1}}));

  auto d2 = decompose(a, 2);
  CHECK(d2.pivot == z.from_long(5));
  CHECK(d2.row_block == Matrix<IntRing>::from_ints(z, {{6}}));
  CHECK(d2.col_block == Matrix<IntRing>::from_ints(z, {{8}}));
  CHECK(d2.principal == Matrix<IntRing>::from_ints(z, {{9}}));

  auto d3 = decompose(a, 3);
  CHECK(d3.pivot == z.from_long(9));
  CHECK(d3.row_block.cols() == 0);
  CHECK(d3.col_block.rows() == 0);
  CHECK(d3.principal.rows() == 0);

  CHECK_THROWS_AS(decompose(a, 0), IndexError);
  CHECK_THROWS_AS(decompose(a, 4), IndexError);
}

TEST_CASE("decomposition reassembles the original matrix") {
  IntRing z;
  SplitMix64 rng(23);
  auto a = random_matrix(z, 4, rng);
  auto d = decompose(a, 1);
  Matrix<IntRing> back(z, 4, 4);
  back.at(0, 0) = d.pivot;
  for (std::size_t t = 0; t < 3; ++t) {
    back.at(0, t + 1) = d.row_block.at(0, t);
    back.at(t + 1, 0) = d.col_block.at(t, 0);
    for (std::size_t u = 0; u < 3; ++u) back.at(t + 1, u + 1) = d.principal.at(t, u);
  }
  CHECK(back == a);
}

TEST_CASE("iterated principal submatrix equals repeated first deletion") {
  IntRing z;
  SplitMix64 rng(29);
  auto a = random_matrix(z, 5, rng);
  for (std::size_t j = 1; j <= 5; ++j) {
    auto m = a;
    for (std::size_t t = 0; t < j; ++t) m = delete_rows_cols(m, {std::size_t{1}});
    CHECK(decompose(a, j).principal == m);
  }
}

TEST_CASE("deleting rows and columns") {
  IntRing z;
  auto a = Matrix<IntRing>::from_ints(z, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(delete_rows_cols(a, {}) == a);
  CHECK(delete_rows_cols(a, {std::size_t{1}}) == Matrix<IntRing>::from_ints(z, {{5, 6}, {8, 9}}));

  Matrix<IntRing> big(z, 8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) big.at(i, j) = z.from_long(10 * (long long)(i + 1) + (long long)(j + 1));
  auto cut = delete_rows_cols(big, {std::size_t{2}, std::size_t{3}, std::size_t{8}});
  CHECK(cut == Matrix<IntRing>::from_ints(z, {{11, 14, 15, 16, 17},
                                              {41, 44, 45, 46, 47},
                                              {51, 54, 55, 56, 57},
                                              {61, 64, 65, 66, 67},
                                              {71, 74, 75, 76, 77}}));

  CHECK_THROWS_AS(delete_rows_cols(a, {std::size_t{0}}), IndexError);
  CHECK_THROWS_AS(delete_rows_cols(a, {std::size_t{4}}), IndexError);
  CHECK_THROWS_AS(delete_rows_cols(a, {std::size_t{2}, std::size_t{2}}), IndexError);
  CHECK_THROWS_AS(delete_rows_cols(a, {std::size_t{3}, std::size_t{1}}), IndexError);
}

TEST_CASE("tree product equals the sequential fold") {
  IntRing z;
  SplitMix64 rng(41);

  auto single = random_matrix(z, 3, rng);
  auto tp1 = tree_product(std::vector<Matrix<IntRing>>{single});
  CHECK(tp1.product == single);
  CHECK(tp1.stages == 0);

  for (std::size_t len = 1; len <= 8; ++len) {
    for (int t = 0; t < 10; ++t) {
      std::vector<std::size_t> dims(len + 1);
      for (auto& d : dims) d = rng.bounded(4);
      std::vector<Matrix<IntRing>> chain;
      for (std::size_t i = 0; i < len; ++i) {
        Matrix<IntRing> m(z, dims[i], dims[i + 1]);
        for (std::size_t r = 0; r < m.rows(); ++r)
          for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = random_element(z, rng);
        chain.push_back(std::move(m));
      }
      Matrix<IntRing> fold = chain.front();
      for (std::size_t i = 1; i < len; ++i) fold = multiply(fold, chain[i]);
      auto tp = tree_product(chain);
      CHECK(tp.product == fold);
      CHECK(tp.stages == ceil_log2(len));
    }
  }

  CHECK_THROWS_AS(tree_product(std::vector<Matrix<IntRing>>{}), DimensionError);
  std::vector<Matrix<IntRing>> bad{Matrix<IntRing>(z, 2, 3), Matrix<IntRing>(z, 2, 3)};
  CHECK_THROWS_AS(tree_product(bad), DimensionError);
}

TEST_CASE("four balanced factors pair as ((M1 M2)(M3 M4))") {
  IntRing z;
  SplitMix64 rng(43);
  std::vector<Matrix<IntRing>> ms;
  for (int i = 0; i < 4; ++i) ms.push_back(random_matrix(z, 2, rng));
  auto tp = tree_product(ms);
  CHECK(tp.stages == 2);
  CHECK(tp.product == multiply(multiply(ms[0], ms[1]), multiply(ms[2], ms[3])));
}

TEST_CASE("zero-dimensional matrices multiply by the usual rules") {
  IntRing z;
  Matrix<IntRing> row(z, 1, 0), col(z, 0, 1), empty(z, 0, 0);
  auto scalar = multiply(row, col);
  CHECK(scalar.rows() == 1);
  CHECK(scalar.cols() == 1);
  CHECK(scalar.at(0, 0) == z.zero());
  CHECK(multiply(empty, empty) == empty);
  CHECK(power(empty, 5) == empty);
}
