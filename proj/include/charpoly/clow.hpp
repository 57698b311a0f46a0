#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "charpoly/errors.hpp"
#include "charpoly/matrix.hpp"
#include "charpoly/ring.hpp"

namespace charpoly {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Closed walk (w_1, ..., w_l) on vertices {1..n}. The head w_1 is the
/// least vertex and occurs exactly once; length is l (= number of edges,
/// since the walk closes back into the head).
struct Clow {
  std::vector<int> vertices;

  int head() const { return vertices.front(); }
  std::size_t length() const { return vertices.size(); }

  auto operator<=>(const Clow&) const = default;
};

/// Ordered list of clows with strictly increasing heads. The empty
/// sequence is legal (length 0, weight one).
struct ClowSequence {
  std::vector<Clow> clows;

  std::size_t length() const {
    std::size_t total = 0;
    for (const Clow& c : clows) total += c.length();
    return total;
  }
  bool empty() const { return clows.empty(); }

  auto operator<=>(const ClowSequence&) const = default;
};

/// A cycle cover is a clow sequence of vertex-disjoint simple cycles; it
/// corresponds to a permutation of the covered vertex set.
using CycleCover = ClowSequence;

bool is_simple_cycle(const Clow& c);
bool is_cycle_cover(const ClowSequence& cs);
bool is_valid_clow_sequence(const ClowSequence& cs);

/// (-1)^(number of clows); +1 for the empty sequence.
int sign(const ClowSequence& cs);

std::string to_string(const ClowSequence& cs);  // "(1,2),(3)"; "()" when empty

mpz_class count_clow_sequences(int n, int k);
mpz_class count_cycle_covers(int n, int k);

/// All clow sequences on {1..n} of total length k, in canonical order
/// (lexicographic on the clow lists, shorter clow prefix first). The count
/// is computed up front; if it exceeds cap the enumeration is refused.
std::vector<ClowSequence> enumerate_clow_sequences(int n, int k,
                                                   std::size_t cap = kDefaultEnumerationCap);

/// All cycle covers over every k-subset of {1..n} (one per permutation of
/// each subset), canonically ordered.
std::vector<CycleCover> enumerate_cycle_covers(int n, int k,
                                               std::size_t cap = kDefaultEnumerationCap);

/// The sign-reversing involution of the cancellation proof. Cycle covers
/// (and the empty sequence) are fixed points; every other sequence maps to
/// one of equal weight and length and opposite sign.
ClowSequence involution(const ClowSequence& cs);

template <RingType R>
typename R::Element sign_in(const R& ring, const ClowSequence& cs) {
  return sign(cs) < 0 ? -ring.one() : ring.one();
}

/// Product over traversed edges (i,j) of a_ij, with multiplicity.
template <RingType R>
typename R::Element weight(const ClowSequence& cs, const Matrix<R>& a) {
  typename R::Element w = a.ring().one();
  for (const Clow& c : cs.clows) {
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      int from = c.vertices[i];
      int to = c.vertices[(i + 1) % c.vertices.size()];
      if (from < 1 || from > static_cast<int>(a.rows()))
        throw IndexError("clow vertex " + std::to_string(from) + " outside matrix of size " +
                         std::to_string(a.rows()));
      w = w * a.at(static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1));
    }
  }
  return w;
}

/// p_{n-k} as the signed weighted sum over all clow sequences of length k.
template <RingType R>
typename R::Element clow_sum_coefficient(const Matrix<R>& a, int k,
                                         std::size_t cap = kDefaultEnumerationCap) {
  if (!a.square()) throw DimensionError("clow sums need a square matrix");
  typename R::Element total = a.ring().zero();
  for (const ClowSequence& cs : enumerate_clow_sequences(static_cast<int>(a.rows()), k, cap)) {
    total += sign_in(a.ring(), cs) * weight(cs, a);
  }
  return total;
}

/// p_{n-k} as (-1)^k times the sum of all principal k x k minor
/// determinants, each expanded over permutations. Independent of both the
/// Berkowitz pipeline and the clow enumeration.
template <RingType R>
typename R::Element minor_sum_coefficient(const Matrix<R>& a, int k,
                                          std::size_t cap = kDefaultEnumerationCap) {
  if (!a.square()) throw DimensionError("minor sums need a square matrix");
  const int n = static_cast<int>(a.rows());
  if (k < 0) throw IndexError("negative coefficient length");
  if (k == 0) return a.ring().one();  // empty subset sum is 1 by convention
  if (k > n) return a.ring().zero();

  mpz_class terms;
  mpz_bin_uiui(terms.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
  terms *= fact;
  if (cmp(terms, static_cast<unsigned long>(cap)) > 0)
    throw CapExceededError("minor-sum expansion needs " + terms.get_str() +
                           " permutation terms, cap is " + std::to_string(cap));

  typename R::Element total = a.ring().zero();
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) ++inversions;
      typename R::Element term = a.ring().one();
      for (int i = 0; i < k; ++i)
        term = term * a.at(static_cast<std::size_t>(subset[i]),
                           static_cast<std::size_t>(subset[perm[i]]));
      if (inversions % 2 == 0)
        total += term;
      else
        total -= term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    // next k-combination of {0..n-1}
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return k % 2 == 0 ? total : -total;
}

/// Sum of the weights of single clows of length l with head 1; equals
/// R M^{l-2} S for the stage-1 block decomposition.
template <RingType R>
typename R::Element anchored_clow_sum(const Matrix<R>& a, int l) {
  if (!a.square() || a.rows() < 2) throw DimensionError("anchored clow sums need n >= 2");
  if (l < 2) throw IndexError("anchored clows have length >= 2");
  const int n = static_cast<int>(a.rows());
  typename R::Element total = a.ring().zero();
  std::vector<int> walk(static_cast<std::size_t>(l), 1);  // walk[1..l-1] range over {2..n}
  for (std::size_t i = 1; i < walk.size(); ++i) walk[i] = 2;
  while (true) {
    typename R::Element w = a.ring().one();
    for (std::size_t i = 0; i < walk.size(); ++i) {
      int from = walk[i];
      int to = walk[(i + 1) % walk.size()];
      w = w * a.at(static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1));
    }
    total += w;
    std::size_t pos = walk.size() - 1;
    while (pos >= 1 && walk[pos] == n) walk[pos--] = 2;
    if (pos == 0) break;
    ++walk[pos];
  }
  return total;
}

}  // namespace charpoly
