#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charpoly/ring.hpp"

namespace charpoly {

/// Outcome of one named verification campaign. Everything except
/// elapsed_ms is a pure function of (check, size, trials, seed, ring);
/// the counterexample, when present, is the matrix-file serialization of
/// the failing input from the lowest-numbered trial.
struct VerificationReport {
  std::string check_name;
  RingSpec ring;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_counterexample;
  double elapsed_ms = 0.0;
  std::vector<std::pair<std::string, std::string>> details;
};

const std::vector<std::string>& all_check_names();

/// Largest size the named check accepts (oracle-backed checks enumerate
/// clow sequences and cap at 5; algebraic checks cap at 16).
std::size_t size_cap(std::string_view name);

VerificationReport run_check(std::string_view name, std::size_t size, std::size_t trials,
                             std::uint64_t seed, const RingSpec& ring);

std::string render_text(const VerificationReport& report);
std::string render_json_line(const VerificationReport& report);

}  // namespace charpoly
