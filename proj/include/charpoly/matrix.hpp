#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "charpoly/errors.hpp"
#include "charpoly/ring.hpp"

namespace charpoly {

/// Dense row-major matrix over a commutative ring. Matrices are immutable
/// values in all the algorithms here; the mutable accessors exist for
/// construction. 0-dimensional matrices are legal (they show up as the
/// blocks of the last Berkowitz stage).
template <RingType R>
class Matrix {
 public:
  using Ring = R;
  using Element = typename R::Element;

  Matrix(R ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

  static Matrix identity(R ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
  }

  // Convenience for tests and the CLI: entries given as machine integers.
  static Matrix from_ints(R ring, std::initializer_list<std::initializer_list<long long>> rows) {
    Matrix m(ring, rows.size(), rows.size() == 0 ? 0 : rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != m.cols()) throw DimensionError("ragged row in matrix literal");
      std::size_t j = 0;
      for (long long v : row) m.at(i, j++) = ring.from_long(v);
      ++i;
    }
    return m;
  }

  const R& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  // 0-based element access. The named operations below (decompose,
  // delete_rows_cols) take 1-based indices, mirroring the a_jj subscripts.
  Element& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_.same(b.ring_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  R ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

namespace detail {
template <RingType R>
void require_same_ring(const Matrix<R>& a, const Matrix<R>& b) {
  if (!a.ring().same(b.ring()))
    throw RingMismatchError("matrices live over different rings: " + describe(a.ring().spec()) +
                            " vs " + describe(b.ring().spec()));
}
}  // namespace detail

template <RingType R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b) {
  detail::require_same_ring(a, b);
  if (a.cols() != b.rows())
    throw DimensionError("cannot multiply " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  Matrix<R> c(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a.at(i, k);
      if (a.ring().is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return c;
}

template <RingType R>
Matrix<R> add(const Matrix<R>& a, const Matrix<R>& b) {
  detail::require_same_ring(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix addition needs equal shapes");
  Matrix<R> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) += b.at(i, j);
  return c;
}

template <RingType R>
Matrix<R> scale(const Matrix<R>& a, const typename R::Element& s) {
  Matrix<R> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) * s;
  return c;
}

template <RingType R>
Matrix<R> power(const Matrix<R>& m, std::size_t k) {
  if (!m.square()) throw DimensionError("matrix power needs a square matrix");
  Matrix<R> acc = Matrix<R>::identity(m.ring(), m.rows());
  Matrix<R> base = m;
  while (k > 0) {
    if (k & 1) acc = multiply(acc, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return acc;
}

/// The four stage-j blocks of the Berkowitz pivot step: pivot a_jj, the row
/// R_j to its right, the column S_j below it, and the trailing principal
/// block M_j.
template <RingType R>
struct BlockDecomposition {
  typename R::Element pivot;
  Matrix<R> row_block;  // 1 x (n-j)
  Matrix<R> col_block;  // (n-j) x 1
  Matrix<R> principal;  // (n-j) x (n-j)
};

/// j is 1-based. For j = n all three blocks are 0-dimensional.
template <RingType R>
BlockDecomposition<R> decompose(const Matrix<R>& a, std::size_t j) {
  if (!a.square()) throw DimensionError("decompose needs a square matrix");
  const std::size_t n = a.rows();
  if (j < 1 || j > n) throw IndexError("decompose index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
  const std::size_t m = n - j;
  BlockDecomposition<R> d{a.at(j - 1, j - 1), Matrix<R>(a.ring(), 1, m), Matrix<R>(a.ring(), m, 1),
                          Matrix<R>(a.ring(), m, m)};
  for (std::size_t t = 0; t < m; ++t) {
    d.row_block.at(0, t) = a.at(j - 1, j + t);
    d.col_block.at(t, 0) = a.at(j + t, j - 1);
    for (std::size_t u = 0; u < m; ++u) d.principal.at(t, u) = a.at(j + t, j + u);
  }
  return d;
}

/// Deletes the rows and columns with the given 1-based indices, which must
/// be strictly increasing. An empty index set returns the matrix unchanged.
template <RingType R>
Matrix<R> delete_rows_cols(const Matrix<R>& a, std::span<const std::size_t> indices) {
  if (!a.square()) throw DimensionError("delete_rows_cols needs a square matrix");
  const std::size_t n = a.rows();
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 1 || indices[t] > n)
      throw IndexError("index " + std::to_string(indices[t]) + " out of range 1.." + std::to_string(n));
    if (t > 0 && indices[t] <= indices[t - 1])
      throw IndexError("indices must be strictly increasing");
  }
  std::vector<bool> drop(n, false);
  for (std::size_t idx : indices) drop[idx - 1] = true;
  std::vector<std::size_t> keep;
  keep.reserve(n - indices.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) keep.push_back(i);
  Matrix<R> b(a.ring(), keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) b.at(i, j) = a.at(keep[i], keep[j]);
  return b;
}

template <RingType R>
Matrix<R> delete_rows_cols(const Matrix<R>& a, std::initializer_list<std::size_t> indices) {
  return delete_rows_cols(a, std::span<const std::size_t>(indices.begin(), indices.size()));
}

template <RingType R>
struct TreeProduct {
  Matrix<R> product;
  std::size_t stages;  // parallel rounds of pairwise products, = ceil(log2 n)
};

/// Left-to-right product of a nonempty chain, computed by balanced binary
/// pairing. Same-stage pairs are independent and run on OpenMP workers; the
/// pairing tree is fixed and the arithmetic exact, so the result does not
/// depend on scheduling and equals the sequential left fold.
template <RingType R>
TreeProduct<R> tree_product(std::vector<Matrix<R>> ms) {
  if (ms.empty()) throw DimensionError("tree_product of an empty chain");
  for (std::size_t t = 0; t + 1 < ms.size(); ++t) {
    detail::require_same_ring(ms[t], ms[t + 1]);
    if (ms[t].cols() != ms[t + 1].rows())
      throw DimensionError("chain dimension mismatch at factor " + std::to_string(t + 2));
  }
  std::size_t stages = 0;
  while (ms.size() > 1) {
    const std::size_t pairs = ms.size() / 2;
    std::vector<Matrix<R>> next;
    next.reserve((ms.size() + 1) / 2);
    for (std::size_t i = 0; i < pairs; ++i) next.push_back(Matrix<R>(ms[0].ring(), 0, 0));
#pragma omp parallel for schedule(dynamic) if (pairs > 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs); ++i) {
      next[static_cast<std::size_t>(i)] = multiply(ms[2 * i], ms[2 * i + 1]);
    }
    if (ms.size() % 2 == 1) next.push_back(std::move(ms.back()));
    ms = std::move(next);
    ++stages;
  }
  return {std::move(ms.front()), stages};
}

}  // namespace charpoly
