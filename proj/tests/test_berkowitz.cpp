#include <doctest.h>
#include <omp.h>

#include "charpoly/berkowitz.hpp"
#include "charpoly/rng.hpp"

using namespace charpoly;

namespace {

// Entry-by-entry route through the defining formula, powers recomputed
// from scratch: the cross-check for the shared-power builder.
template <RingType R>
std::vector<typename R::Element> column_by_definition(const Matrix<R>& a, std::size_t j) {
  const std::size_t n = a.rows();
  auto d = decompose(a, j);
  std::vector<typename R::Element> out{a.ring().one(), -a.at(j - 1, j - 1)};
  for (std::size_t i = 3; i <= n + 2 - j; ++i) {
    out.push_back(-multiply(multiply(d.row_block, power(d.principal, i - 3)), d.col_block).at(0, 0));
  }
  return out;
}

template <RingType R>
void check_modes_agree(const R& ring, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (std::size_t n = 1; n <= 8; ++n) {
    auto a = random_matrix(ring, n, rng);
    auto seq = char_poly(a, EvalMode::sequential);
    auto par = char_poly(a, EvalMode::parallel);
    CHECK(seq == par);
    CHECK(seq.coeffs.size() == n + 1);
    CHECK(seq.coeffs.front() == ring.one());
  }
}

}  // namespace

TEST_CASE("toeplitz columns match the defining formula") {
  IntRing z;
  SplitMix64 rng(7);
  auto a = random_matrix(z, 4, rng);
  for (std::size_t j = 1; j <= 4; ++j) {
    auto col = build_toeplitz_column(a, j);
    CHECK(col.stage == j);
    CHECK(col.entries.size() == 4 + 2 - j);
    CHECK(col.entries == column_by_definition(a, j));
  }
  CHECK_THROWS_AS(build_toeplitz_column(a, 0), IndexError);
  CHECK_THROWS_AS(build_toeplitz_column(a, 5), IndexError);
}

TEST_CASE("last-stage column is (1, -a_nn)") {
  IntRing z;
  auto a = Matrix<IntRing>::from_ints(z, {{1, 2}, {3, 4}});
  auto col = build_toeplitz_column(a, 2);
  CHECK(col.entries == std::vector<mpz_class>{1, -4});
}

TEST_CASE("identity matrix has zero coupling entries") {
  IntRing z;
  auto col = build_toeplitz_column(Matrix<IntRing>::identity(z, 3), 1);
  CHECK(col.entries == std::vector<mpz_class>{1, -1, 0, 0});
}

TEST_CASE("toeplitz expansion lays the column down the diagonals") {
  IntRing z;
  ToeplitzColumn<IntRing> two{z, 1, {z.from_long(1), z.from_long(-5)}};
  CHECK(expand_toeplitz(two) == Matrix<IntRing>::from_ints(z, {{1}, {-5}}));

  ToeplitzColumn<IntRing> three{z, 1, {z.from_long(1), z.from_long(-2), z.from_long(-3)}};
  CHECK(expand_toeplitz(three) == Matrix<IntRing>::from_ints(z, {{1, 0}, {-2, 1}, {-3, -2}}));

  // 4x4 input: the stage-1 factor is 5x4, first column repeated down-right
  SplitMix64 rng(11);
  auto a = random_matrix(z, 4, rng);
  auto col = build_toeplitz_column(a, 1);
  auto m = expand_toeplitz(col);
  CHECK(m.rows() == 5);
  CHECK(m.cols() == 4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(m.at(i, k) == (i >= k ? col.entries[i - k] : z.zero()));
}

TEST_CASE("applying a column agrees with expanding it") {
  IntRing z;
  SplitMix64 rng(13);
  auto a = random_matrix(z, 5, rng);
  for (std::size_t j = 1; j <= 5; ++j) {
    auto col = build_toeplitz_column(a, j);
    std::vector<mpz_class> v;
    for (std::size_t t = 0; t + 1 < col.entries.size(); ++t) v.push_back(random_element(z, rng));
    Matrix<IntRing> vm(z, v.size(), 1);
    for (std::size_t t = 0; t < v.size(); ++t) vm.at(t, 0) = v[t];
    auto direct = multiply(expand_toeplitz(col), vm);
    auto fast = apply_toeplitz(col, v);
    for (std::size_t t = 0; t < fast.size(); ++t) CHECK(fast[t] == direct.at(t, 0));
  }
  CHECK_THROWS_AS(apply_toeplitz(build_toeplitz_column(a, 1), std::vector<mpz_class>{1, 2}),
                  DimensionError);
}

TEST_CASE("characteristic polynomial of frozen inputs") {
  IntRing z;
  auto one_by_one = Matrix<IntRing>::from_ints(z, {{5}});
  CHECK(char_poly(one_by_one).coeffs == std::vector<mpz_class>{1, -5});

  auto diag = Matrix<IntRing>::from_ints(z, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  CHECK(char_poly(diag).coeffs == std::vector<mpz_class>{1, -6, 11, -6});

  // 2x2: (1, -(a+d), ad-bc)
  SplitMix64 rng(19);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(z, 2, rng);
    const auto &a = m.at(0, 0), &b = m.at(0, 1), &c = m.at(1, 0), &d = m.at(1, 1);
    CHECK(char_poly(m).coeffs == std::vector<mpz_class>{1, mpz_class(-(a + d)), mpz_class(a * d - b * c)});
  }
}

TEST_CASE("empty and non-square inputs are rejected") {
  IntRing z;
  CHECK_THROWS_AS(char_poly(Matrix<IntRing>(z, 0, 0)), DimensionError);
  CHECK_THROWS_AS(char_poly(Matrix<IntRing>(z, 2, 3)), DimensionError);
  CHECK_THROWS_AS(determinant(Matrix<IntRing>(z, 0, 0)), DimensionError);
}

TEST_CASE("sequential and parallel modes agree over every ring") {
  check_modes_agree(IntRing{}, 101);
  check_modes_agree(RatRing{}, 102);
  check_modes_agree(ModRing(101), 103);
  check_modes_agree(ModRing((std::uint64_t{1} << 61) - 1), 104);
}

TEST_CASE("parallel result is independent of the thread count") {
  ModRing f((std::uint64_t{1} << 61) - 1);
  SplitMix64 rng(107);
  auto a = random_matrix(f, 12, rng);
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto single = char_poly(a, EvalMode::parallel);
  omp_set_num_threads(saved);
  auto many = char_poly(a, EvalMode::parallel);
  CHECK(single == many);
  CHECK(single == char_poly(a, EvalMode::sequential));
}

TEST_CASE("determinants") {
  IntRing z;
  CHECK(determinant(Matrix<IntRing>::identity(z, 4)) == z.one());
  auto diag = Matrix<IntRing>::from_ints(z, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  CHECK(determinant(diag) == z.from_long(6));
  SplitMix64 rng(23);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(z, 2, rng);
    CHECK(determinant(m) == m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0));
  }
}

TEST_CASE("determinant is multiplicative") {
  ModRing f(1000003);
  SplitMix64 rng(29);
  for (std::size_t n = 1; n <= 6; ++n) {
    auto a = random_matrix(f, n, rng);
    auto b = random_matrix(f, n, rng);
    CHECK(determinant(multiply(a, b)) == determinant(a) * determinant(b));
  }
}

TEST_CASE("cayley-hamilton: a matrix satisfies its own polynomial") {
  IntRing z;
  SplitMix64 rng(31);
  for (std::size_t n = 1; n <= 6; ++n) {
    auto a = random_matrix(z, n, rng);
    auto p = char_poly(a);
    Matrix<IntRing> h = Matrix<IntRing>::identity(z, n);
    for (std::size_t k = 1; k < p.coeffs.size(); ++k)
      h = add(multiply(a, h), scale(Matrix<IntRing>::identity(z, n), p.coeffs[k]));
    CHECK(h == Matrix<IntRing>(z, n, n));
  }
}

TEST_CASE("adjoint on frozen inputs and the defining identity") {
  IntRing z;
  CHECK(adjoint(Matrix<IntRing>::identity(z, 1)) == Matrix<IntRing>::identity(z, 1));
  CHECK(adjoint(Matrix<IntRing>::identity(z, 4)) == Matrix<IntRing>::identity(z, 4));

  SplitMix64 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto m = random_matrix(z, 2, rng);
    Matrix<IntRing> expected(z, 2, 2);
    expected.at(0, 0) = m.at(1, 1);
    expected.at(0, 1) = -m.at(0, 1);
    expected.at(1, 0) = -m.at(1, 0);
    expected.at(1, 1) = m.at(0, 0);
    CHECK(adjoint(m) == expected);
  }

  ModRing f(101);
  SplitMix64 frng(41);
  for (int t = 0; t < 50; ++t) {
    auto a = random_matrix(f, 4, frng);
    CHECK(multiply(a, adjoint(a)) == scale(Matrix<ModRing>::identity(f, 4), determinant(a)));
  }
}

TEST_CASE("adjoint polynomial matches the explicit power sum") {
  IntRing z;

  auto tiny = Matrix<IntRing>::from_ints(z, {{7}});
  auto b1 = adjoint_poly(tiny);
  REQUIRE(b1.coeff_matrices.size() == 1);
  CHECK(b1.coeff_matrices[0] == Matrix<IntRing>::identity(z, 1));

  SplitMix64 rng(43);
  auto m = random_matrix(z, 3, rng);
  auto q = char_poly(m);
  auto b = adjoint_poly(m);
  REQUIRE(b.coeff_matrices.size() == 3);
  auto eye = Matrix<IntRing>::identity(z, 3);
  CHECK(b.coeff_matrices[0] == eye);                                    // I q3
  CHECK(b.coeff_matrices[1] == add(m, scale(eye, q.coeffs[1])));        // M q3 + I q2
  CHECK(b.coeff_matrices[2] ==
        add(add(power(m, 2), scale(m, q.coeffs[1])), scale(eye, q.coeffs[2])));  // M^2 q3 + M q2 + I q1
}

TEST_CASE("adjoint polynomial satisfies B(x)(xI - M) = q(x) I at points") {
  IntRing z;
  auto m = Matrix<IntRing>::identity(z, 2);
  auto q = char_poly(m);
  auto b = adjoint_poly(m);
  for (long long t : {0, 1, 2}) {
    auto x = z.from_long(t);
    auto xi_minus_m = add(scale(Matrix<IntRing>::identity(z, 2), x), scale(m, z.from_long(-1)));
    CHECK(multiply(b.evaluate(x), xi_minus_m) ==
          scale(Matrix<IntRing>::identity(z, 2), q.evaluate(z, x)));
  }
}

TEST_CASE("matrix inverse over fields") {
  RatRing q;
  CHECK(inverse(Matrix<RatRing>::identity(q, 3)) == Matrix<RatRing>::identity(q, 3));
  auto u = Matrix<RatRing>::from_ints(q, {{1, 1}, {0, 1}});
  CHECK(inverse(u) == Matrix<RatRing>::from_ints(q, {{1, -1}, {0, 1}}));

  ModRing f(7);
  auto singular = Matrix<ModRing>::from_ints(f, {{1, 2}, {2, 4}});
  CHECK_THROWS_AS(inverse(singular), SingularMatrixError);

  SplitMix64 rng(47);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(f, 4, rng);
    if (f.is_zero(determinant(a))) continue;
    CHECK(multiply(a, inverse(a)) == Matrix<ModRing>::identity(f, 4));
  }
}

TEST_CASE("integer inverse needs a unit determinant") {
  IntRing z;
  auto swap = Matrix<IntRing>::from_ints(z, {{0, 1}, {1, 0}});  // det -1
  CHECK(inverse(swap) == swap);
  auto scaled = Matrix<IntRing>::from_ints(z, {{2, 0}, {0, 1}});
  CHECK_THROWS_AS(inverse(scaled), UnsupportedOperationError);
}

TEST_CASE("depth report") {
  IntRing z;
  CHECK(depth_report(Matrix<IntRing>::identity(z, 1)).product_stages == 0);
  CHECK(depth_report(Matrix<IntRing>::identity(z, 4)).product_stages == 2);
  CHECK(depth_report(Matrix<IntRing>::identity(z, 8)).product_stages == 3);

  SplitMix64 rng(53);
  for (std::size_t n : {1, 2, 3, 4, 5, 8, 11, 16}) {
    auto a = random_matrix(z, n, rng);
    auto report = depth_report(a);
    CHECK(report.product_stages == ceil_log2(n));
    CHECK(report.depth_proxy() <= ceil_log2(n) * ceil_log2(n));
    // the reported product stage count is what the tree actually does
    std::vector<Matrix<IntRing>> factors;
    for (std::size_t j = 1; j <= n; ++j)
      factors.push_back(expand_toeplitz(build_toeplitz_column(a, j)));
    CHECK(tree_product(factors).stages == report.product_stages);
  }
}
