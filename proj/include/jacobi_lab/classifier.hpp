#pragma once

// Limit-circle / limit-point decision procedures for power-asymptotic Jacobi
// matrices, with predicted convergence exponent and density bounds, and the
// classical Carleman, Wouk and Berezanskii criteria.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"

namespace jacobi {

enum class Regime { LCC, LPC, Undetermined };

/// Point prediction when lo == hi.
struct ExponentPrediction {
  double lo;
  double hi;
  bool is_point() const noexcept { return lo == hi; }
};

struct Classification {
  Regime regime = Regime::Undetermined;
  std::string case_label;  // "T1(i)", "T1(ii)", "T2(i)", "T2(ii)", "T2(iii)", "Undetermined"
  std::optional<ExponentPrediction> predicted_exponent;
  std::optional<double> density_lower;
  std::optional<double> density_upper;
  std::optional<double> a_constant;
  std::optional<double> z1, z2, d;
  std::vector<std::string> notes;
};

enum class Conclusion { ImpliesLPC, ImpliesLCC, NoConclusion };

struct CriterionVerdict {
  std::string name;
  bool applies = false;
  Conclusion conclusion = Conclusion::NoConclusion;
  std::string evidence;
};

/// Non-exceptional descriptors. Throws DomainError on the exceptional case.
Classification classify_theorem1(const PowerAsymptotics& params);

/// Exceptional case with second-order data. Throws DomainError otherwise.
Classification classify_theorem2(const PowerAsymptotics& params);

/// Dispatches between the two; an exceptional FirstOrder descriptor yields
/// Undetermined with a note.
Classification classify(const PowerAsymptotics& params);

/// Descriptor route: reads the leading behaviour of rho_n + rho_{n-1} - |q_n|.
CriterionVerdict wouk_test(const PowerAsymptotics& params);
/// Sequence route: heuristic boundedness check of both signed margins over the
/// sampled range; flagged as such in the evidence.
CriterionVerdict wouk_test(const JacobiSequence& seq);

CriterionVerdict carleman_test(const JacobiSequence& seq);

/// Berg-Szwarc form of Berezanskii's theorem: eventual log-concavity (checked
/// on the second half of the sampled range), sum 1/rho_n < inf and
/// sum |q_n|/rho_n < inf (beta2 - beta1 < -1 for descriptors).
CriterionVerdict berezanskii_test(const JacobiSequence& seq);

/// The two-inequality restatement of the case-(iii) lcc condition:
///   1 < x1/x0 - y1/y0,
///   x1/|y0| + (y1/y0)((x1/x0 - y1/y0) - 1) < 3/8 + x2/x0 - y2/y0.
/// Rejects descriptors outside case (iii).
std::pair<bool, bool> equivalent_conditions_case3(const PowerAsymptotics& params);

/// classify() plus every criterion verdict on a materialized sequence of
/// length `sample_size`.
struct ClassificationReport {
  PowerAsymptotics descriptor;
  Classification classification;
  std::vector<CriterionVerdict> criteria;
};
ClassificationReport classification_report(const PowerAsymptotics& params,
                                           std::size_t sample_size = 4096);

const char* to_string(Regime regime);
const char* to_string(Conclusion conclusion);

/// One-line summary, e.g. "T1(ii): lcc, exponent 0.5".
std::string summary_line(const Classification& c);

}  // namespace jacobi
