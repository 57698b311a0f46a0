#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "charpoly/matrix.hpp"
#include "charpoly/ring.hpp"

namespace charpoly {

using AnyMatrix = std::variant<Matrix<IntRing>, Matrix<RatRing>, Matrix<ModRing>>;

/// Matrix file format:
///   line 1: `ring: int` | `ring: rational` | `ring: mod <p>`
///   line 2: n (>= 1)
///   lines 3..n+2: n whitespace-separated ring literals each
/// Lines starting with `#` are ignored; trailing whitespace is ignored.
/// Errors carry a 1-based line and column.
///
/// When override_ring is given the file's literals are re-read under that
/// ring instead of the header's.
AnyMatrix parse_matrix_text(std::string_view text,
                            std::optional<RingSpec> override_ring = std::nullopt);

AnyMatrix read_matrix_file(const std::string& path,
                           std::optional<RingSpec> override_ring = std::nullopt);

template <RingType R>
std::string to_matrix_text(const Matrix<R>& m) {
  std::string out = "ring: " + describe(m.ring().spec()) + "\n";
  out += std::to_string(m.rows()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += m.ring().str(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string to_matrix_text(const AnyMatrix& m) {
  return std::visit([](const auto& mat) { return to_matrix_text(mat); }, m);
}

inline RingSpec spec_of(const AnyMatrix& m) {
  return std::visit([](const auto& mat) { return mat.ring().spec(); }, m);
}

inline std::size_t size_of(const AnyMatrix& m) {
  return std::visit([](const auto& mat) { return mat.rows(); }, m);
}

}  // namespace charpoly
