#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "charpoly/errors.hpp"
#include "charpoly/matrix.hpp"
#include "charpoly/ring.hpp"

namespace charpoly {

/// Coefficients of det(xI - A), degree-descending: (p_n, ..., p_0).
/// Always monic: coeffs.front() is one.
template <RingType R>
struct CoefficientVector {
  std::vector<typename R::Element> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }

  // p_k, i.e. the coefficient of x^k.
  const typename R::Element& coefficient_of_power(std::size_t k) const {
    return coeffs.at(coeffs.size() - 1 - k);
  }

  typename R::Element evaluate(const R& ring, const typename R::Element& x) const {
    typename R::Element acc = ring.zero();
    for (const auto& c : coeffs) acc = acc * x + c;
    return acc;
  }

  friend bool operator==(const CoefficientVector& a, const CoefficientVector& b) {
    return a.coeffs == b.coeffs;
  }
};

/// First column of the Toeplitz factor C_j: (1, -a_jj, -R_j M_j^{i-3} S_j, ...),
/// length n+2-j.
template <RingType R>
struct ToeplitzColumn {
  R ring;
  std::size_t stage = 1;  // j
  std::vector<typename R::Element> entries;
};

/// Polynomial with square matrix coefficients, degree-descending in x.
template <RingType R>
struct MatrixPolynomial {
  std::vector<Matrix<R>> coeff_matrices;

  Matrix<R> evaluate(const typename R::Element& x) const {
    Matrix<R> acc = coeff_matrices.front();
    for (std::size_t t = 1; t < coeff_matrices.size(); ++t)
      acc = add(scale(acc, x), coeff_matrices[t]);
    return acc;
  }
};

enum class EvalMode { sequential, parallel };

/// Stage counts of the parallel schedule (the observable depth proxy):
/// column_power_stages is the number of prefix-doubling rounds that build
/// every shared power M_j^k, product_stages the number of balanced-pairing
/// rounds multiplying the C_j out. Their product is bounded by
/// ceil(log2 n)^2.
struct DepthReport {
  std::size_t column_power_stages = 0;
  std::size_t product_stages = 0;

  std::size_t depth_proxy() const { return column_power_stages * product_stages; }
};

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t stages = 0;
  while (n > 1) {
    n = (n + 1) / 2;
    ++stages;
  }
  return stages;
}

namespace detail {
template <RingType R>
void require_nonempty_square(const Matrix<R>& a) {
  if (!a.square()) throw DimensionError("characteristic polynomial needs a square matrix");
  if (a.rows() == 0) throw DimensionError("empty (0x0) matrices are rejected; sizes start at 1");
}
}  // namespace detail

template <RingType R>
ToeplitzColumn<R> build_toeplitz_column(const Matrix<R>& a, std::size_t j) {
  detail::require_nonempty_square(a);
  const std::size_t n = a.rows();
  if (j < 1 || j > n) throw IndexError("stage " + std::to_string(j) + " out of range 1.." + std::to_string(n));
  ToeplitzColumn<R> col{a.ring(), j, {}};
  col.entries.reserve(n + 2 - j);
  col.entries.push_back(a.ring().one());
  col.entries.push_back(-a.at(j - 1, j - 1));
  if (n + 2 - j > 2) {
    BlockDecomposition<R> d = decompose(a, j);
    Matrix<R> t = d.col_block;  // M_j^{i-3} S_j, shared across entries
    for (std::size_t i = 3; i <= n + 2 - j; ++i) {
      if (i > 3) t = multiply(d.principal, t);
      col.entries.push_back(-multiply(d.row_block, t).at(0, 0));
    }
  }
  return col;
}

/// Expands a first column of length r into the (r) x (r-1) lower-triangular
/// Toeplitz matrix whose diagonals repeat that column.
template <RingType R>
Matrix<R> expand_toeplitz(const ToeplitzColumn<R>& col) {
  const std::size_t r = col.entries.size();
  if (r == 0) throw DimensionError("cannot expand an empty Toeplitz column");
  Matrix<R> m(col.ring, r, r - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r - 1 && k <= i; ++k) m.at(i, k) = col.entries[i - k];
  return m;
}

/// C_j * v without materializing C_j; v.size() must be entries.size() - 1.
template <RingType R>
std::vector<typename R::Element> apply_toeplitz(const ToeplitzColumn<R>& col,
                                                const std::vector<typename R::Element>& v) {
  const std::size_t r = col.entries.size();
  if (v.size() != r - 1)
    throw DimensionError("Toeplitz factor of " + std::to_string(r - 1) + " columns applied to a vector of length " +
                         std::to_string(v.size()));
  std::vector<typename R::Element> out(r, col.ring.zero());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < v.size() && k <= i; ++k) out[i] += col.entries[i - k] * v[k];
  }
  return out;
}

/// Berkowitz's division-free characteristic polynomial of det(xI - A).
///
/// Sequential mode is the serial reference: it folds C_1 (C_2 (... C_n))
/// right-to-left as column-vector images, O(n^2) per stage once the column
/// is built. Parallel mode materializes every C_j (one OpenMP task per
/// stage index) and multiplies them with a balanced product tree; exactness
/// and the fixed tree make the two modes agree entry for entry.
template <RingType R>
CoefficientVector<R> char_poly(const Matrix<R>& a, EvalMode mode = EvalMode::sequential) {
  detail::require_nonempty_square(a);
  const std::size_t n = a.rows();

  if (mode == EvalMode::sequential) {
    std::vector<typename R::Element> v{a.ring().one()};
    for (std::size_t j = n; j >= 1; --j) {
      v = apply_toeplitz(build_toeplitz_column(a, j), v);
    }
    return CoefficientVector<R>{std::move(v)};
  }

  std::vector<Matrix<R>> factors(n, Matrix<R>(a.ring(), 0, 0));
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (std::ptrdiff_t j = 1; j <= static_cast<std::ptrdiff_t>(n); ++j) {
    factors[static_cast<std::size_t>(j - 1)] =
        expand_toeplitz(build_toeplitz_column(a, static_cast<std::size_t>(j)));
  }
  Matrix<R> column = tree_product(std::move(factors)).product;
  std::vector<typename R::Element> v;
  v.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v.push_back(column.at(i, 0));
  return CoefficientVector<R>{std::move(v)};
}

/// det(A) = (-1)^n p_0, since the constant coefficient of det(xI - A) is
/// det(-A).
template <RingType R>
typename R::Element determinant(const Matrix<R>& a) {
  CoefficientVector<R> p = char_poly(a, EvalMode::sequential);
  const typename R::Element& p0 = p.coeffs.back();
  return a.rows() % 2 == 0 ? p0 : -p0;
}

/// B(x) = adj(xI - M) assembled from M's own characteristic coefficients q:
/// the x^{s-k} coefficient is q_s M^{k-1} + q_{s-1} M^{k-2} + ... + q_{s-k+1} I,
/// built by the Horner recurrence D <- M D + q I. s = dim(M), degree s-1.
template <RingType R>
MatrixPolynomial<R> adjoint_poly(const Matrix<R>& m) {
  detail::require_nonempty_square(m);
  const std::size_t s = m.rows();
  CoefficientVector<R> q = char_poly(m, EvalMode::sequential);
  MatrixPolynomial<R> b;
  b.coeff_matrices.reserve(s);
  b.coeff_matrices.push_back(Matrix<R>::identity(m.ring(), s));  // q_s I = I
  for (std::size_t k = 2; k <= s; ++k) {
    b.coeff_matrices.push_back(
        add(multiply(m, b.coeff_matrices.back()), scale(Matrix<R>::identity(m.ring(), s), q.coeffs[k - 1])));
  }
  return b;
}

/// Division-free adjugate: adj(A) = (-1)^{n-1} (A^{n-1} + p_{n-1} A^{n-2}
/// + ... + p_1 I), the Horner tail of the characteristic polynomial. The
/// defining identity A adj(A) = det(A) I pins the sign: A times the Horner
/// tail is -p_0 I and det(A) = (-1)^n p_0.
template <RingType R>
Matrix<R> adjoint(const Matrix<R>& a) {
  detail::require_nonempty_square(a);
  const std::size_t n = a.rows();
  CoefficientVector<R> p = char_poly(a, EvalMode::sequential);
  Matrix<R> h = Matrix<R>::identity(a.ring(), n);
  for (std::size_t k = 1; k <= n - 1; ++k) {
    h = add(multiply(a, h), scale(Matrix<R>::identity(a.ring(), n), p.coeffs[k]));
  }
  return n % 2 == 1 ? h : scale(h, -a.ring().one());
}

template <RingType R>
Matrix<R> inverse(const Matrix<R>& a) {
  detail::require_nonempty_square(a);
  typename R::Element det = determinant(a);
  if (a.ring().is_zero(det)) throw SingularMatrixError("matrix is singular");
  if constexpr (R::kind == RingKind::integer) {
    // Over the integers only unit determinants admit an inverse; 1/det is
    // then det itself.
    if (det == a.ring().one() || det == -a.ring().one()) return scale(adjoint(a), det);
    throw UnsupportedOperationError("integer matrix inverse needs determinant +1 or -1, got " +
                                    a.ring().str(det));
  } else {
    return scale(adjoint(a), a.ring().inverse(det));
  }
}

/// Stage counts of the parallel schedule for an n x n input.
/// Both counts are structural (data-independent); tree_product reports the
/// same product_stages when actually run.
template <RingType R>
DepthReport depth_report(const Matrix<R>& a) {
  detail::require_nonempty_square(a);
  const std::size_t n = a.rows();
  DepthReport r;
  r.product_stages = ceil_log2(n);
  // Highest shared power is M_1^{n-2}; prefix doubling reaches it in
  // ceil(log2(n-2)) rounds starting from M itself.
  r.column_power_stages = n >= 3 ? ceil_log2(n - 2) : 0;
  return r;
}

}  // namespace charpoly
