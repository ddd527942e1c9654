#pragma once

// Golden models and the numbered acceptance checks shared by the acceptance
// test binary and `jacobi_lab verify`.

#include <optional>
#include <string>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/classifier.hpp"
#include "jacobi_lab/io.hpp"
#include "jacobi_lab/parallel.hpp"

namespace jacobi {

/// rho_n = (n+1)^2 (n >= 1), q = 1.
PowerAsymptotics model_m1();
/// beta1 = 0.5, beta2 = 0, x0 = y0 = 1.
PowerAsymptotics model_m2();
/// Exceptional, beta = 3, x = (1, 2, 0), y = (-2, 0, 0).
PowerAsymptotics model_m3();
/// Exceptional at the boundary beta = 2x1/x0 - 2y1/y0: beta = 3, x = (1, 1.5, 2), y = (-2, 0, 0).
PowerAsymptotics model_m4();
/// rho = 1, q = 0; no descriptor.
JacobiSequence model_m5(std::size_t N);

struct GoldenEntry {
  std::string label;
  PowerAsymptotics descriptor;
  std::string case_label;
  Regime regime = Regime::Undetermined;
  std::optional<ExponentPrediction> exponent;
  std::optional<double> a_constant;
  std::optional<double> density_lower;
  std::optional<double> density_upper;
};

/// Table of 12 hand-derived classifications.
std::vector<GoldenEntry> builtin_golden_table();
Json golden_to_json(const std::vector<GoldenEntry>& table);
std::vector<GoldenEntry> golden_from_json(const Json& j);

/// Empty string when `c` matches `expected`, else a field-by-field diff.
std::string golden_diff(const GoldenEntry& expected, const Classification& c);

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string observed;
  std::string expected;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  Execution exec{};
  std::optional<std::vector<GoldenEntry>> golden;  // defaults to the built-in table
  std::uint64_t seed = 20240607;
  std::vector<int> only;  // empty = all
};

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS] 03 solution decay: observed ... expected ..."
std::string format_check(const CheckResult& r);

/// JUnit-style XML for a completed run.
std::string junit_xml(const std::vector<CheckResult>& results);

}  // namespace jacobi
