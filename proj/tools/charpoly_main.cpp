#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charpoly/berkowitz.hpp"
#include "charpoly/clow.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/identities.hpp"
#include "charpoly/matrix_io.hpp"
#include "charpoly/ring.hpp"
#include "charpoly/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapExceeded = 3;

std::size_t enumeration_cap() {
  const char* env = std::getenv("CHARPOLY_ENUM_CAP");
  if (env == nullptr) return charpoly::kDefaultEnumerationCap;
  try {
    std::size_t pos = 0;
    unsigned long long cap = std::stoull(env, &pos);
    if (pos != std::string(env).size() || cap == 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(cap);
  } catch (...) {
    throw charpoly::Error("CHARPOLY_ENUM_CAP must be a positive integer, got '" + std::string(env) + "'");
  }
}

struct ComputeOptions {
  std::string input;
  std::string algorithm = "berkowitz";
  std::string mode = "sequential";
  std::string emit = "text";
  std::string ring_override;
};

int run_compute(const ComputeOptions& opt) {
  std::optional<charpoly::RingSpec> override_ring;
  if (!opt.ring_override.empty()) override_ring = charpoly::parse_ring_spec(opt.ring_override);
  charpoly::AnyMatrix any = charpoly::read_matrix_file(opt.input, override_ring);
  const std::size_t cap = enumeration_cap();

  return std::visit(
      [&](const auto& a) -> int {
        using Element = typename std::decay_t<decltype(a)>::Element;
        const auto& ring = a.ring();
        const std::size_t n = a.rows();
        std::vector<Element> coeffs;
        if (opt.algorithm == "berkowitz") {
          auto mode = opt.mode == "parallel" ? charpoly::EvalMode::parallel
                                             : charpoly::EvalMode::sequential;
          coeffs = charpoly::char_poly(a, mode).coeffs;
        } else if (opt.algorithm == "clow-oracle") {
          for (std::size_t k = 0; k <= n; ++k)
            coeffs.push_back(charpoly::clow_sum_coefficient(a, static_cast<int>(k), cap));
        } else {
          for (std::size_t k = 0; k <= n; ++k)
            coeffs.push_back(charpoly::minor_sum_coefficient(a, static_cast<int>(k), cap));
        }
        std::vector<std::string> coeff_text;
        for (const auto& c : coeffs) coeff_text.push_back(ring.str(c));
        // det(A) = (-1)^n p_0; the constant coefficient is the last entry.
        std::string det_text = ring.str(n % 2 == 0 ? coeffs.back() : Element(-coeffs.back()));

        if (opt.emit == "json-lines") {
          nlohmann::json j;
          j["algorithm"] = opt.algorithm;
          j["mode"] = opt.mode;
          j["ring"] = charpoly::describe(ring.spec());
          j["n"] = n;
          j["coefficients"] = coeff_text;
          j["determinant"] = det_text;
          std::cout << j.dump() << "\n";
        } else {
          std::cout << "coefficients:";
          for (const auto& c : coeff_text) std::cout << ' ' << c;
          std::cout << "\n";
          std::cout << "determinant: " << det_text << "\n";
        }
        return kExitOk;
      },
      any);
}

struct EnumerateOptions {
  int n = 0;
  int length = -1;
  bool with_signs = false;
  std::string matrix_path;
};

int run_enumerate(const EnumerateOptions& opt) {
  std::optional<charpoly::AnyMatrix> matrix;
  int n = opt.n;
  if (!opt.matrix_path.empty()) {
    matrix = charpoly::read_matrix_file(opt.matrix_path);
    if (n == 0) n = static_cast<int>(charpoly::size_of(*matrix));
  }
  if (n < 1) throw charpoly::Error("--n must be >= 1 (or pass --matrix)");
  if (opt.length < 0) throw charpoly::Error("--length must be >= 0");

  auto seqs = charpoly::enumerate_clow_sequences(n, opt.length, enumeration_cap());
  for (const auto& cs : seqs) {
    std::cout << charpoly::to_string(cs);
    if (opt.with_signs) std::cout << ' ' << (charpoly::sign(cs) < 0 ? "-1" : "+1");
    if (matrix) {
      std::cout << ' '
                << std::visit([&](const auto& a) { return a.ring().str(charpoly::weight(cs, a)); },
                              *matrix);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string check = "all";
  std::size_t size = 4;
  std::size_t trials = 25;
  std::uint64_t seed = 0;
  std::string ring = "int";
  std::string emit = "text";
};

int run_verify(const VerifyOptions& opt) {
  charpoly::RingSpec spec = charpoly::parse_ring_spec(opt.ring);
  std::vector<std::string> names;
  if (opt.check == "all") {
    names = charpoly::all_check_names();
  } else {
    names.push_back(opt.check);
  }
  std::size_t total_failures = 0;
  bool first = true;
  for (const std::string& name : names) {
    std::size_t size = opt.size;
    if (opt.check == "all") size = std::min(size, charpoly::size_cap(name));
    auto report = charpoly::run_check(name, size, opt.trials, opt.seed, spec);
    total_failures += report.failures;
    if (opt.emit == "json-lines") {
      std::cout << charpoly::render_json_line(report) << "\n";
    } else {
      if (!first) std::cout << "\n";
      std::cout << charpoly::render_text(report);
    }
    first = false;
  }
  return total_failures == 0 ? kExitOk : kExitVerifyFailed;
}

struct BenchOptions {
  std::size_t size = 64;
  std::string ring = "mod 2305843009213693951";  // 2^61 - 1
  std::string mode = "both";
  std::size_t repeats = 3;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int run_bench(const BenchOptions& opt) {
  if (opt.size < 1) throw charpoly::Error("--size must be >= 1");
  charpoly::RingSpec spec = charpoly::parse_ring_spec(opt.ring);
  charpoly::SplitMix64 rng(1);

  charpoly::with_ring(spec, [&](auto ring) {
    using R = decltype(ring);
    auto a = charpoly::random_matrix(ring, opt.size, rng);
    auto depth = charpoly::depth_report(a);

    std::cout << "n: " << opt.size << "\n";
    std::cout << "ring: " << charpoly::describe(spec) << "\n";
    std::cout << "repeats: " << opt.repeats << "\n";
    std::cout << "threads: " << omp_get_max_threads() << "\n";
    std::cout << "column_power_stages: " << depth.column_power_stages << "\n";
    std::cout << "product_stages: " << depth.product_stages << "\n";
    std::printf("%-12s %12s %12s %12s\n", "mode", "columns_ms", "product_ms", "total_ms");

    const std::size_t n = opt.size;
    auto bench_mode = [&](bool parallel) {
      charpoly::CoefficientVector<R> result;
      double best_columns = 0, best_product = 0, best_total = 0;
      for (std::size_t rep = 0; rep < opt.repeats; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<charpoly::ToeplitzColumn<R>> cols(
            n, charpoly::ToeplitzColumn<R>{ring, 1, {}});
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
          for (std::ptrdiff_t j = 1; j <= static_cast<std::ptrdiff_t>(n); ++j)
            cols[static_cast<std::size_t>(j - 1)] =
                charpoly::build_toeplitz_column(a, static_cast<std::size_t>(j));
        } else {
          for (std::size_t j = 1; j <= n; ++j) cols[j - 1] = charpoly::build_toeplitz_column(a, j);
        }
        double columns_ms = ms_since(t0);

        auto t1 = std::chrono::steady_clock::now();
        if (parallel) {
          std::vector<charpoly::Matrix<R>> factors;
          factors.reserve(n);
          for (const auto& c : cols) factors.push_back(charpoly::expand_toeplitz(c));
          auto tp = charpoly::tree_product(std::move(factors));
          result.coeffs.clear();
          for (std::size_t i = 0; i <= n; ++i) result.coeffs.push_back(tp.product.at(i, 0));
        } else {
          std::vector<typename R::Element> v{ring.one()};
          for (std::size_t j = n; j >= 1; --j) v = charpoly::apply_toeplitz(cols[j - 1], v);
          result.coeffs = std::move(v);
        }
        double product_ms = ms_since(t1);
        double total_ms = ms_since(t0);
        if (rep == 0 || total_ms < best_total) {
          best_columns = columns_ms;
          best_product = product_ms;
          best_total = total_ms;
        }
      }
      std::printf("%-12s %12.2f %12.2f %12.2f\n", parallel ? "parallel" : "sequential",
                  best_columns, best_product, best_total);
      return result;
    };

    std::optional<charpoly::CoefficientVector<R>> seq, par;
    if (opt.mode == "sequential" || opt.mode == "both") seq = bench_mode(false);
    if (opt.mode == "parallel" || opt.mode == "both") par = bench_mode(true);
    if (seq && par) std::cout << "modes_agree: " << (*seq == *par ? "yes" : "NO") << "\n";
  });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Division-free characteristic polynomial toolkit (Berkowitz + clow-sequence oracles)"};
  app.require_subcommand(1);

  ComputeOptions compute_opt;
  auto* compute = app.add_subcommand("compute", "characteristic polynomial and determinant of a matrix file");
  compute->add_option("input", compute_opt.input, "matrix file")->required();
  compute->add_option("--algorithm", compute_opt.algorithm, "berkowitz | clow-oracle | minor-sum")
      ->check(CLI::IsMember({"berkowitz", "clow-oracle", "minor-sum"}));
  compute->add_option("--mode", compute_opt.mode, "sequential | parallel (berkowitz only)")
      ->check(CLI::IsMember({"sequential", "parallel"}));
  compute->add_option("--emit", compute_opt.emit, "text | json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));
  compute->add_option("--ring", compute_opt.ring_override,
                      "reinterpret the file under this ring ('int', 'rational', 'mod <p>')");

  EnumerateOptions enum_opt;
  auto* enumerate = app.add_subcommand("enumerate", "list clow sequences in canonical order");
  enumerate->add_option("--n", enum_opt.n, "number of vertices");
  enumerate->add_option("--length", enum_opt.length, "total sequence length")->required();
  enumerate->add_flag("--with-signs", enum_opt.with_signs, "append the sign of each sequence");
  enumerate->add_option("--matrix", enum_opt.matrix_path, "matrix file; append each sequence's weight");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "run a named verification campaign");
  verify->add_option("--check", verify_opt.check, "check name or 'all'");
  verify->add_option("--size", verify_opt.size, "matrix size");
  verify->add_option("--trials", verify_opt.trials, "number of seeded trials");
  verify->add_option("--seed", verify_opt.seed, "root seed");
  verify->add_option("--ring", verify_opt.ring, "'int', 'rational' or 'mod <p>'");
  verify->add_option("--emit", verify_opt.emit, "text | json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "time the serial fold against the parallel product tree");
  bench->add_option("--size", bench_opt.size, "matrix size");
  bench->add_option("--ring", bench_opt.ring, "'int', 'rational' or 'mod <p>'");
  bench->add_option("--mode", bench_opt.mode, "sequential | parallel | both")
      ->check(CLI::IsMember({"sequential", "parallel", "both"}));
  bench->add_option("--repeats", bench_opt.repeats, "repetitions; best run is reported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute) return run_compute(compute_opt);
    if (*enumerate) return run_enumerate(enum_opt);
    if (*verify) return run_verify(verify_opt);
    if (*bench) return run_bench(bench_opt);
  } catch (const charpoly::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const charpoly::ParseError& e) {
    std::cerr << "error: " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
