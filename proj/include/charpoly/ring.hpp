#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "charpoly/errors.hpp"

namespace charpoly {

enum class RingKind { integer, rational, prime_field };

// Moduli must fit below 2^61 so a product of two residues fits __int128
// with headroom for accumulation.
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 61;

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Runtime ring descriptor as it appears in matrix file headers and CLI
// flags: "int" | "rational" | "mod <p>".
struct RingSpec {
  RingKind kind = RingKind::integer;
  std::uint64_t modulus = 0;  // set iff kind == prime_field

  bool operator==(const RingSpec&) const = default;
};

RingSpec make_integer_spec();
RingSpec make_rational_spec();
RingSpec make_prime_field_spec(std::uint64_t p);  // validates primality and bound

RingSpec parse_ring_spec(std::string_view text);
std::string describe(const RingSpec& spec);

namespace detail {
mpz_class parse_integer_literal(std::string_view text);
mpq_class parse_rational_literal(std::string_view text);
}  // namespace detail

// Prime-field residue. Carries its modulus so that mixing elements of
// different fields is a detectable runtime error, like the ring objects
// themselves.
struct Fp {
  std::uint64_t value = 0;
  std::uint64_t p = 0;

  friend bool operator==(const Fp& a, const Fp& b) {
    return a.p == b.p && a.value == b.value;
  }
};

namespace detail {
inline void require_same_field(const Fp& a, const Fp& b) {
  if (a.p != b.p)
    throw RingMismatchError("prime-field operands have different moduli: " +
                            std::to_string(a.p) + " vs " + std::to_string(b.p));
}
}  // namespace detail

inline Fp operator+(const Fp& a, const Fp& b) {
  detail::require_same_field(a, b);
  std::uint64_t s = a.value + b.value;  // < 2^62, no overflow
  if (s >= a.p) s -= a.p;
  return {s, a.p};
}

inline Fp operator-(const Fp& a) {
  return {a.value == 0 ? 0 : a.p - a.value, a.p};
}

inline Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }

inline Fp operator*(const Fp& a, const Fp& b) {
  detail::require_same_field(a, b);
  using u128 = unsigned __int128;
  return {static_cast<std::uint64_t>((u128(a.value) * b.value) % a.p), a.p};
}

inline Fp& operator+=(Fp& a, const Fp& b) { return a = a + b; }
inline Fp& operator-=(Fp& a, const Fp& b) { return a = a - b; }
inline Fp& operator*=(Fp& a, const Fp& b) { return a = a * b; }

// The three concrete rings. Each is a lightweight value holding whatever
// context its elements need (only the prime field has any), and is the
// single place where constants, literals and printing live. Matrices and
// the Berkowitz pipeline are generic over these.

class IntRing {
 public:
  using Element = mpz_class;
  static constexpr RingKind kind = RingKind::integer;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_long(long long v) const { return Element(static_cast<long>(v)); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }

  Element inverse(const Element&) const {
    throw UnsupportedOperationError("the integer ring is not a field; no multiplicative inverses");
  }

  Element parse(std::string_view text) const { return detail::parse_integer_literal(text); }
  std::string str(const Element& a) const { return a.get_str(); }

  bool same(const IntRing&) const { return true; }
  RingSpec spec() const { return make_integer_spec(); }
};

class RatRing {
 public:
  using Element = mpq_class;
  static constexpr RingKind kind = RingKind::rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_long(long long v) const { return Element(static_cast<long>(v)); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }

  Element inverse(const Element& a) const {
    if (is_zero(a)) throw NotInvertibleError("0 has no multiplicative inverse");
    Element r;
    mpq_inv(r.get_mpq_t(), a.get_mpq_t());
    return r;
  }

  Element parse(std::string_view text) const { return detail::parse_rational_literal(text); }
  std::string str(const Element& a) const { return a.get_str(); }

  bool same(const RatRing&) const { return true; }
  RingSpec spec() const { return make_rational_spec(); }
};

class ModRing {
 public:
  using Element = Fp;
  static constexpr RingKind kind = RingKind::prime_field;

  explicit ModRing(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Element zero() const { return {0, p_}; }
  Element one() const { return {1 % p_, p_}; }
  Element from_long(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return {static_cast<std::uint64_t>(r), p_};
  }

  bool is_zero(const Element& a) const { return a.value == 0; }

  Element inverse(const Element& a) const;

  Element parse(std::string_view text) const;
  std::string str(const Element& a) const { return std::to_string(a.value); }

  bool same(const ModRing& other) const { return p_ == other.p_; }
  RingSpec spec() const {
    RingSpec s;
    s.kind = RingKind::prime_field;
    s.modulus = p_;
    return s;
  }

 private:
  std::uint64_t p_;
};

template <typename R>
concept RingType = requires(const R& r, const typename R::Element& a, std::string_view text) {
  typename R::Element;
  { r.zero() } -> std::same_as<typename R::Element>;
  { r.one() } -> std::same_as<typename R::Element>;
  { r.from_long(1LL) } -> std::same_as<typename R::Element>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.inverse(a) } -> std::same_as<typename R::Element>;
  { r.parse(text) } -> std::same_as<typename R::Element>;
  { r.str(a) } -> std::same_as<std::string>;
  { r.same(r) } -> std::convertible_to<bool>;
  { r.spec() } -> std::same_as<RingSpec>;
  requires std::same_as<std::remove_cvref_t<decltype(R::kind)>, RingKind>;
};

static_assert(RingType<IntRing>);
static_assert(RingType<RatRing>);
static_assert(RingType<ModRing>);

// Runs f with the concrete ring named by spec. All branches must yield the
// same type; use for dispatching CLI/report-level code into the templates.
template <typename F>
decltype(auto) with_ring(const RingSpec& spec, F&& f) {
  switch (spec.kind) {
    case RingKind::integer:
      return std::forward<F>(f)(IntRing{});
    case RingKind::rational:
      return std::forward<F>(f)(RatRing{});
    case RingKind::prime_field:
      return std::forward<F>(f)(ModRing(spec.modulus));
  }
  throw Error("corrupt RingSpec");
}

}  // namespace charpoly
