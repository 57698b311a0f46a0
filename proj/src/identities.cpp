#include "charpoly/identities.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "charpoly/berkowitz.hpp"
#include "charpoly/clow.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/matrix.hpp"
#include "charpoly/matrix_io.hpp"
#include "charpoly/rng.hpp"

namespace charpoly {

namespace {

constexpr std::size_t kOracleSizeCap = 5;
constexpr std::size_t kAlgebraicSizeCap = 16;

template <RingType R>
std::vector<typename R::Element> sample_points(const R& ring, std::size_t count) {
  std::vector<typename R::Element> xs;
  xs.reserve(count);
  for (std::size_t t = 0; t < count; ++t) xs.push_back(ring.from_long(static_cast<long long>(t)));
  return xs;
}

template <RingType R>
Matrix<R> x_identity_minus(const R& ring, const typename R::Element& x, const Matrix<R>& m) {
  Matrix<R> out = scale(m, -ring.one());
  for (std::size_t i = 0; i < m.rows(); ++i) out.at(i, i) += x;
  return out;
}

// p(x) = (x - a11) q(x) - R B(x) S at n+2 points; degree bounds make the
// pointwise agreement an equality of polynomials.
template <RingType R>
bool samuelson_holds(const Matrix<R>& a) {
  const R& ring = a.ring();
  const std::size_t n = a.rows();
  CoefficientVector<R> p = char_poly(a);
  if (n == 1) {
    for (const auto& x : sample_points(ring, 3)) {
      if (!(p.evaluate(ring, x) == x - a.at(0, 0))) return false;
    }
    return true;
  }
  BlockDecomposition<R> d = decompose(a, 1);
  CoefficientVector<R> q = char_poly(d.principal);
  MatrixPolynomial<R> b = adjoint_poly(d.principal);
  for (const auto& x : sample_points(ring, n + 2)) {
    typename R::Element rbs = multiply(multiply(d.row_block, b.evaluate(x)), d.col_block).at(0, 0);
    typename R::Element rhs = (x - d.pivot) * q.evaluate(ring, x) - rbs;
    if (!(p.evaluate(ring, x) == rhs)) return false;
  }
  return true;
}

// B(x) (xI - M) = q(x) I at n+2 points.
template <RingType R>
bool adjoint_identity_holds(const Matrix<R>& m) {
  const R& ring = m.ring();
  CoefficientVector<R> q = char_poly(m);
  MatrixPolynomial<R> b = adjoint_poly(m);
  for (const auto& x : sample_points(ring, m.rows() + 2)) {
    Matrix<R> lhs = multiply(b.evaluate(x), x_identity_minus(ring, x, m));
    Matrix<R> rhs = scale(Matrix<R>::identity(ring, m.rows()), q.evaluate(ring, x));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

template <RingType R>
bool cayley_hamilton_holds(const Matrix<R>& a) {
  const R& ring = a.ring();
  CoefficientVector<R> p = char_poly(a);
  Matrix<R> h = Matrix<R>::identity(ring, a.rows());  // p_n I
  for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
    h = add(multiply(a, h), scale(Matrix<R>::identity(ring, a.rows()), p.coeffs[k]));
  }
  return h == Matrix<R>(ring, a.rows(), a.rows());
}

template <RingType R>
bool det_multiplicative_holds(const Matrix<R>& a, SplitMix64& rng) {
  Matrix<R> b = random_matrix(a.ring(), a.rows(), rng);
  return determinant(multiply(a, b)) == determinant(a) * determinant(b);
}

template <RingType R>
bool clow_equivalence_holds(const Matrix<R>& a) {
  CoefficientVector<R> p = char_poly(a);
  for (std::size_t k = 0; k <= a.rows(); ++k) {
    if (!(p.coeffs[k] == clow_sum_coefficient(a, static_cast<int>(k)))) return false;
  }
  return true;
}

template <RingType R>
bool minor_equivalence_holds(const Matrix<R>& a) {
  CoefficientVector<R> p = char_poly(a);
  for (std::size_t k = 0; k <= a.rows(); ++k) {
    if (!(p.coeffs[k] == minor_sum_coefficient(a, static_cast<int>(k)))) return false;
  }
  return true;
}

// The four coefficient relations of the 3x3 stage-1 factor: p = C_1 q.
template <RingType R>
bool structure_3x3_holds(const Matrix<R>& a) {
  CoefficientVector<R> p = char_poly(a);
  CoefficientVector<R> q = char_poly(delete_rows_cols(a, {std::size_t{1}}));
  BlockDecomposition<R> d = decompose(a, 1);
  typename R::Element rs = multiply(d.row_block, d.col_block).at(0, 0);
  typename R::Element rms = multiply(multiply(d.row_block, d.principal), d.col_block).at(0, 0);
  const auto& a11 = d.pivot;
  const auto &q2 = q.coeffs[0], &q1 = q.coeffs[1], &q0 = q.coeffs[2];
  if (!(p.coeffs[0] == q2)) return false;
  if (!(p.coeffs[1] == -(a11 * q2) + q1)) return false;
  if (!(p.coeffs[2] == -(rs * q2) - a11 * q1 + q0)) return false;
  return p.coeffs[3] == -(rms * q2) - rs * q1 - a11 * q0;
}

template <RingType R>
VerificationReport drive_trials(std::string name, std::size_t size, std::size_t trials,
                                std::uint64_t seed, const R& ring,
                                const std::function<bool(const Matrix<R>&, SplitMix64&)>& holds) {
  VerificationReport report;
  report.check_name = std::move(name);
  report.ring = ring.spec();
  report.size = size;
  report.seed = seed;
  report.trials = trials;
  SplitMix64 root(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 trial_rng = root.child(t);
    Matrix<R> a = random_matrix(ring, size, trial_rng);
    if (!holds(a, trial_rng)) {
      if (report.failures == 0) report.first_counterexample = to_matrix_text(a);
      ++report.failures;
    }
  }
  return report;
}

// All involution laws over the length-n sequences on n vertices, with
// swap-pair and fixed-point reporting. Structural laws are checked
// once; weight preservation and the zero signed non-cover sum use one
// random matrix per trial.
template <RingType R>
VerificationReport involution_suite(std::size_t size, std::size_t trials, std::uint64_t seed,
                                    const R& ring) {
  VerificationReport report;
  report.check_name = "involution_suite";
  report.ring = ring.spec();
  report.size = size;
  report.seed = seed;
  report.trials = trials;

  const int n = static_cast<int>(size);
  std::vector<ClowSequence> seqs = enumerate_clow_sequences(n, n);
  std::set<ClowSequence> universe(seqs.begin(), seqs.end());
  std::size_t fixed_points = 0;
  std::size_t swap_pairs = 0;
  std::vector<std::string> pair_texts;
  for (const ClowSequence& cs : seqs) {
    ClowSequence image = involution(cs);
    bool ok = is_valid_clow_sequence(image) && universe.count(image) > 0;
    if (image == cs) {
      ok = ok && is_cycle_cover(cs);
      ++fixed_points;
    } else {
      ok = ok && !is_cycle_cover(cs) && involution(image) == cs && sign(image) == -sign(cs) &&
           image.length() == cs.length();
      if (cs < image) {
        ++swap_pairs;
        pair_texts.push_back(to_string(cs) + "<->" + to_string(image));
      }
    }
    if (!ok) {
      if (report.failures == 0) report.first_counterexample = to_string(cs);
      ++report.failures;
    }
  }

  SplitMix64 root(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 trial_rng = root.child(t);
    Matrix<R> a = random_matrix(ring, size, trial_rng);
    typename R::Element noncover_sum = ring.zero();
    bool ok = true;
    for (const ClowSequence& cs : seqs) {
      ClowSequence image = involution(cs);
      if (!(weight(cs, a) == weight(image, a))) ok = false;
      if (!is_cycle_cover(cs)) noncover_sum += sign_in(ring, cs) * weight(cs, a);
    }
    if (!ring.is_zero(noncover_sum)) ok = false;
    if (!ok) {
      if (report.failures == 0) report.first_counterexample = to_matrix_text(a);
      ++report.failures;
    }
  }

  report.details.emplace_back("sequences", std::to_string(seqs.size()));
  report.details.emplace_back("fixed_points", std::to_string(fixed_points));
  report.details.emplace_back("swap_pairs", std::to_string(swap_pairs));
  if (swap_pairs > 0 && swap_pairs <= 16) {
    std::string joined;
    for (const std::string& s : pair_texts) {
      if (!joined.empty()) joined += "; ";
      joined += s;
    }
    report.details.emplace_back("pairs", joined);
  }
  return report;
}

template <RingType R>
VerificationReport dispatch_check(std::string_view name, std::size_t size, std::size_t trials,
                                  std::uint64_t seed, const R& ring) {
  using M = Matrix<R>;
  if (name == "samuelson")
    return drive_trials<R>("samuelson", size, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return samuelson_holds(a); });
  if (name == "adjoint_identity")
    return drive_trials<R>("adjoint_identity", size, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return adjoint_identity_holds(a); });
  if (name == "cayley_hamilton")
    return drive_trials<R>("cayley_hamilton", size, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return cayley_hamilton_holds(a); });
  if (name == "det_multiplicative")
    return drive_trials<R>("det_multiplicative", size, trials, seed, ring,
                           [](const M& a, SplitMix64& rng) { return det_multiplicative_holds(a, rng); });
  if (name == "clow_equivalence")
    return drive_trials<R>("clow_equivalence", size, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return clow_equivalence_holds(a); });
  if (name == "minor_equivalence")
    return drive_trials<R>("minor_equivalence", size, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return minor_equivalence_holds(a); });
  if (name == "involution_suite") return involution_suite(size, trials, seed, ring);
  if (name == "berkowitz_structure_3x3")
    return drive_trials<R>("berkowitz_structure_3x3", 3, trials, seed, ring,
                           [](const M& a, SplitMix64&) { return structure_3x3_holds(a); });
  throw Error("unknown check '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "samuelson",        "adjoint_identity", "cayley_hamilton", "det_multiplicative",
      "clow_equivalence", "minor_equivalence", "involution_suite", "berkowitz_structure_3x3"};
  return names;
}

std::size_t size_cap(std::string_view name) {
  if (name == "clow_equivalence" || name == "minor_equivalence" || name == "involution_suite")
    return kOracleSizeCap;
  const auto& names = all_check_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error("unknown check '" + std::string(name) + "'");
  return kAlgebraicSizeCap;
}

VerificationReport run_check(std::string_view name, std::size_t size, std::size_t trials,
                             std::uint64_t seed, const RingSpec& ring) {
  const std::size_t cap = size_cap(name);
  if (size < 1) throw Error("check size must be >= 1");
  if (size > cap && name != "berkowitz_structure_3x3")
    throw CapExceededError("check '" + std::string(name) + "' caps at size " + std::to_string(cap) +
                           ", got " + std::to_string(size));
  auto start = std::chrono::steady_clock::now();
  VerificationReport report = with_ring(ring, [&](auto concrete) {
    return dispatch_check(name, size, trials, seed, concrete);
  });
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render_text(const VerificationReport& r) {
  std::string out;
  out += "check: " + r.check_name + "\n";
  out += "ring: " + describe(r.ring) + "\n";
  out += "size: " + std::to_string(r.size) + "\n";
  out += "seed: " + std::to_string(r.seed) + "\n";
  out += "trials: " + std::to_string(r.trials) + "\n";
  out += "failures: " + std::to_string(r.failures) + "\n";
  for (const auto& [key, value] : r.details) out += key + ": " + value + "\n";
  out += "elapsed_ms: " + std::to_string(r.elapsed_ms) + "\n";
  if (r.first_counterexample) {
    out += "counterexample:\n";
    std::string_view body = *r.first_counterexample;
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t eol = body.find('\n', pos);
      if (eol == std::string_view::npos) eol = body.size();
      out += "  " + std::string(body.substr(pos, eol - pos)) + "\n";
      pos = eol + 1;
    }
  }
  return out;
}

std::string render_json_line(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check_name;
  j["ring"] = describe(r.ring);
  j["size"] = r.size;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["elapsed_ms"] = r.elapsed_ms;
  if (r.first_counterexample)
    j["counterexample"] = *r.first_counterexample;
  else
    j["counterexample"] = nullptr;
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [key, value] : r.details) details[key] = value;
  j["details"] = details;
  return j.dump();
}

}  // namespace charpoly
