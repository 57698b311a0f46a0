#include "charpoly/ring.hpp"

#include <array>
#include <cctype>

namespace charpoly {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality for every n < 3.3 * 10^24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

RingSpec make_integer_spec() { return RingSpec{RingKind::integer, 0}; }

RingSpec make_rational_spec() { return RingSpec{RingKind::rational, 0}; }

RingSpec make_prime_field_spec(u64 p) {
  if (p >= kModulusLimit)
    throw Error("modulus " + std::to_string(p) + " is out of range (must be < 2^61)");
  if (!is_prime_u64(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
  RingSpec s;
  s.kind = RingKind::prime_field;
  s.modulus = p;
  return s;
}

ModRing::ModRing(u64 p) : p_(make_prime_field_spec(p).modulus) {}

ModRing::Element ModRing::inverse(const Element& a) const {
  detail::require_same_field(a, zero());
  if (a.value == 0) throw NotInvertibleError("0 has no multiplicative inverse");
  // Extended Euclid on signed 64-bit; all values stay below 2^61.
  std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(a.value);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (s0 < 0) s0 += static_cast<std::int64_t>(p_);
  return {static_cast<u64>(s0), p_};
}

ModRing::Element ModRing::parse(std::string_view text) const {
  mpz_class v = detail::parse_integer_literal(text);
  // Residue literals of any magnitude are reduced, never rejected.
  u64 r = mpz_fdiv_ui(v.get_mpz_t(), p_);
  return {r, p_};
}

namespace detail {

namespace {

bool is_integer_literal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

// Denominator grammar is [1-9][0-9]*: positive, no leading zero.
bool is_denominator_literal(std::string_view text) {
  if (text.empty() || text[0] < '1' || text[0] > '9') return false;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

mpz_class parse_integer_literal(std::string_view text) {
  if (!is_integer_literal(text))
    throw MalformedLiteralError("malformed integer literal '" + std::string(text) + "'");
  return mpz_class(std::string(text), 10);
}

mpq_class parse_rational_literal(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return mpq_class(parse_integer_literal(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_denominator_literal(den))
    throw MalformedLiteralError("malformed rational literal '" + std::string(text) + "'");
  mpq_class q(parse_integer_literal(num), mpz_class(std::string(den), 10));
  q.canonicalize();
  return q;
}

}  // namespace detail

RingSpec parse_ring_spec(std::string_view text) {
  if (text == "int") return make_integer_spec();
  if (text == "rational") return make_rational_spec();
  constexpr std::string_view mod_prefix = "mod ";
  if (text.substr(0, mod_prefix.size()) == mod_prefix) {
    std::string_view digits = text.substr(mod_prefix.size());
    mpz_class p = detail::parse_integer_literal(digits);
    if (sgn(p) < 0 || !p.fits_ulong_p())
      throw Error("modulus '" + std::string(digits) + "' is out of range (must be < 2^61)");
    return make_prime_field_spec(p.get_ui());
  }
  throw Error("unknown ring '" + std::string(text) + "' (expected 'int', 'rational' or 'mod <p>')");
}

std::string describe(const RingSpec& spec) {
  switch (spec.kind) {
    case RingKind::integer:
      return "int";
    case RingKind::rational:
      return "rational";
    case RingKind::prime_field:
      return "mod " + std::to_string(spec.modulus);
  }
  throw Error("corrupt RingSpec");
}

}  // namespace charpoly
