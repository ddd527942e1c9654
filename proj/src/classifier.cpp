#include "jacobi_lab/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "jacobi_lab/errors.hpp"
#include "tie_compare.hpp"

namespace jacobi {

using detail::Sign;
using detail::TieComparator;

namespace {

constexpr const char* kConjectureNote =
    "exponent interval only; the point value 1/beta is conjectured, not established";

double density_lower_bound(double beta, double x0) {
  return (beta - 1.0) / beta * std::pow(1.0 / x0, 1.0 / beta);
}

void append_notes(Classification& c, TieComparator& cmp) {
  for (auto& n : cmp.take_notes()) c.notes.push_back(std::move(n));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Classification classify_theorem1(const PowerAsymptotics& p) {
  validate(p);
  TieComparator cmp(p);
  const Sign s12 = cmp.compare(detail::beta1_of, detail::beta2_of, "beta1 = beta2");
  Sign dominance = Sign::Zero;
  if (s12 == Sign::Zero) {
    dominance = cmp.compare(detail::two_x0, detail::abs_y0, "2 x0 = |y0|");
    if (dominance == Sign::Zero) {
      throw DomainError("exceptional case (beta1 = beta2, 2 x0 = |y0|) is outside the first theorem");
    }
  }

  Classification c;
  if (s12 == Sign::Negative || dominance == Sign::Negative) {
    c.regime = Regime::LPC;
    c.case_label = "T1(i)";
    c.notes.push_back("lim |q_n|/rho_n > 2: dominating diagonal, lpc by Wouk's criterion");
    append_notes(c, cmp);
    return c;
  }

  c.case_label = "T1(ii)";
  if (cmp.compare(detail::beta1_of, detail::constant<1, 1>, "beta1 = 1") != Sign::Positive) {
    c.regime = Regime::LPC;
    c.notes.push_back("beta1 <= 1: |u_n|^2 ~ n^-beta1 is not summable");
    append_notes(c, cmp);
    return c;
  }

  const double b = p.beta1;
  c.regime = Regime::LCC;
  c.predicted_exponent = ExponentPrediction{1.0 / b, 1.0 / b};
  const double a =
      s12 == Sign::Positive ? 1.0 : 1.0 / std::sqrt(1.0 - p.y0 * p.y0 / (4.0 * p.x0 * p.x0));
  c.a_constant = a;
  c.density_lower = density_lower_bound(b, p.x0);
  c.density_upper = std::numbers::e * b / (b - 1.0) * std::pow(a / p.x0, 1.0 / b);
  const auto beta2_plus_one = [](const auto& s) {
    using T = std::decay_t<decltype(s.x0)>;
    return T(s.beta2 + T(1));
  };
  if (cmp.compare(beta2_plus_one, detail::beta1_of, "beta1 = beta2 + 1") == Sign::Negative) {
    c.notes.push_back("beta1 > beta2 + 1: the Berezanskii/Berg-Szwarc criterion applies as well");
  }
  append_notes(c, cmp);
  return c;
}

Classification classify_theorem2(const PowerAsymptotics& p) {
  validate(p);
  if (p.order != AsymptoticOrder::SecondOrder) {
    throw DomainError("the exceptional-case theorem needs second-order data (x2, y2)");
  }
  TieComparator cmp(p);
  if (!detail::exceptional(cmp)) {
    throw DomainError("classify_theorem2 requires beta1 = beta2 and 2 x0 = |y0|");
  }
  const double beta = p.beta1;
  const WoukCoefficients z = z1_z2(p);
  Classification c;
  c.z1 = z.z1;
  c.z2 = z.z2;
  c.d = -*z.z2 / p.x0 + beta * (beta - 2.0) / 4.0;

  const Sign vs_three_halves = cmp.compare(detail::beta1_of, detail::constant<3, 2>, "beta = 3/2");
  const Sign vs_b_star = cmp.compare(detail::beta1_of, detail::b_star, "beta = 2x1/x0 - 2y1/y0");

  if (vs_three_halves != Sign::Positive || vs_b_star == Sign::Positive) {
    c.regime = Regime::LPC;
    c.case_label = "T2(i)";
    if (vs_b_star == Sign::Positive) c.notes.push_back("z1 < 0: lpc by Wouk's criterion");
    else c.notes.push_back("beta <= 3/2");
  } else if (vs_b_star == Sign::Negative) {
    c.regime = Regime::LCC;
    c.case_label = "T2(ii)";
    if (cmp.compare(detail::beta1_of, detail::constant<2, 1>, "beta = 2") == Sign::Negative) {
      c.predicted_exponent = ExponentPrediction{1.0 / beta, 1.0 / (2.0 * (beta - 1.0))};
      c.notes.push_back(kConjectureNote);
    } else {
      c.predicted_exponent = ExponentPrediction{1.0 / beta, 1.0 / beta};
    }
  } else {
    c.case_label = "T2(iii)";
    const auto threshold = [](const auto& s) {
      using T = std::decay_t<decltype(s.x0)>;
      return T(T(3) / T(2) + T(2) * detail::z2_over_x0(s));
    };
    const bool above_two =
        cmp.compare(detail::beta1_of, detail::constant<2, 1>, "beta = 2") == Sign::Positive;
    const bool below_threshold =
        cmp.compare(detail::beta1_of, threshold, "beta = 3/2 + 2 z2/x0") == Sign::Negative;
    const double disc = 1.0 + 4.0 * *c.d;
    if (std::abs(disc) <= kTieTolerance) c.notes.push_back("d = -1/4: double root 1/2 (subcase 3b)");
    else if (disc < 0) c.notes.push_back("d < -1/4: complex roots (subcase 3a)");
    else c.notes.push_back("d > -1/4: distinct real roots (subcase 3c)");
    if (above_two && below_threshold) {
      c.regime = Regime::LCC;
      c.predicted_exponent = ExponentPrediction{1.0 / beta, 1.0 / beta};
    } else {
      c.regime = Regime::LPC;
      c.notes.push_back(above_two ? "beta >= 3/2 + 2 z2/x0" : "beta <= 2");
    }
  }
  if (c.regime == Regime::LCC) c.density_lower = density_lower_bound(beta, p.x0);
  append_notes(c, cmp);
  return c;
}

Classification classify(const PowerAsymptotics& p) {
  validate(p);
  if (!is_exceptional(p)) return classify_theorem1(p);
  if (p.order == AsymptoticOrder::SecondOrder) return classify_theorem2(p);
  Classification c;
  c.regime = Regime::Undetermined;
  c.case_label = "Undetermined";
  c.z1 = z1_z2(p).z1;
  c.notes.push_back("exceptional case lim |q_n|/rho_n = 2: second-order asymptotic data (x2, y2) required");
  const CriterionVerdict wouk = wouk_test(p);
  if (wouk.conclusion == Conclusion::ImpliesLPC) {
    c.notes.push_back("Wouk's criterion alone already implies lpc: " + wouk.evidence);
  }
  return c;
}

CriterionVerdict wouk_test(const PowerAsymptotics& p) {
  validate(p);
  TieComparator cmp(p);
  CriterionVerdict v{"Wouk", false, Conclusion::NoConclusion, ""};
  auto bounded = [&](std::string evidence) {
    v.applies = true;
    v.conclusion = Conclusion::ImpliesLPC;
    v.evidence = std::move(evidence);
    return v;
  };
  auto unbounded = [&](std::string evidence) {
    v.evidence = std::move(evidence);
    return v;
  };
  const auto zero = detail::constant<0, 1>;
  const Sign s12 = cmp.compare(detail::beta1_of, detail::beta2_of, "beta1 = beta2");
  const Sign beta1_sign = cmp.compare(detail::beta1_of, zero, "beta1 = 0");

  if (s12 == Sign::Negative) return bounded("|q_n| dominates: margin ~ -|y0| n^beta2");
  if (s12 == Sign::Positive) {
    if (beta1_sign != Sign::Positive) return bounded("beta1 <= 0: margin bounded");
    return unbounded("margin ~ 2 x0 n^beta1 -> +inf");
  }
  const Sign dominance = cmp.compare(detail::two_x0, detail::abs_y0, "2 x0 = |y0|");
  if (dominance == Sign::Negative) return bounded("lim |q_n|/rho_n > 2: margin bounded above");
  if (dominance == Sign::Positive) {
    if (beta1_sign != Sign::Positive) return bounded("beta <= 0: margin bounded");
    return unbounded("margin ~ (2 x0 - |y0|) n^beta -> +inf");
  }

  // Exceptional: margin = z1 n^(beta-1) + z2 n^(beta-2) + remainder.
  const Sign z1_sign = cmp.compare(detail::b_star, detail::beta1_of, "z1 = 0");
  const Sign vs_one = cmp.compare(detail::beta1_of, detail::constant<1, 1>, "beta = 1");
  const Sign vs_two = cmp.compare(detail::beta1_of, detail::constant<2, 1>, "beta = 2");
  if (z1_sign == Sign::Negative) return bounded("z1 < 0: margin ~ z1 n^(beta-1) bounded above");
  if (z1_sign == Sign::Positive) {
    if (vs_one != Sign::Positive) return bounded("z1 > 0, beta <= 1: margin bounded");
    return unbounded("z1 > 0, beta > 1: margin -> +inf");
  }
  if (p.order == AsymptoticOrder::FirstOrder) {
    if (vs_one != Sign::Positive) return bounded("z1 = 0, beta <= 1: margin bounded");
    return unbounded("z1 = 0 with first-order data: next term unknown");
  }
  const Sign z2_sign = cmp.compare(detail::z2_over_x0, zero, "z2 = 0");
  if (z2_sign == Sign::Negative) return bounded("z1 = 0, z2 < 0: margin bounded above");
  if (vs_two != Sign::Positive) return bounded("z1 = 0, beta <= 2: margin bounded");
  if (z2_sign == Sign::Positive) return unbounded("z1 = 0, z2 > 0, beta > 2: margin -> +inf");
  return unbounded("z1 = z2 = 0, beta > 2: decided by the remainder term");
}

CriterionVerdict wouk_test(const JacobiSequence& seq) {
  CriterionVerdict v{"Wouk", false, Conclusion::NoConclusion, ""};
  const std::size_t N = seq.size();
  if (N < 8) {
    v.evidence = "heuristic: sequence too short";
    return v;
  }
  const auto rho = seq.rho();
  const auto q = seq.q();
  for (int sign : {-1, +1}) {
    auto margin = [&](std::size_t n) { return rho[n] + rho[n - 1] + sign * q[n]; };
    double early = -INFINITY, late = -INFINITY;
    for (std::size_t n = std::max<std::size_t>(N / 4, 1); n < N / 2; ++n) early = std::max(early, margin(n));
    for (std::size_t n = N / 2; n < N; ++n) late = std::max(late, margin(n));
    if (late <= early + 1e-9 * std::max(1.0, std::abs(early))) {
      v.applies = true;
      v.conclusion = Conclusion::ImpliesLPC;
      v.evidence = std::string("heuristic: sup of rho_n + rho_{n-1} ") + (sign < 0 ? "- q_n" : "+ q_n") +
                   " stops growing over the sampled range (" + fmt(early) + " -> " + fmt(late) + ")";
      return v;
    }
  }
  v.evidence = "heuristic: both signed margins still growing over the sampled range";
  return v;
}

CriterionVerdict carleman_test(const JacobiSequence& seq) {
  const CarlemanResult r = carleman_sum(seq);
  CriterionVerdict v{"Carleman", false, Conclusion::NoConclusion,
                     "partial sum of 1/rho_n = " + fmt(r.partial_sum) + ", " + to_string(r.verdict)};
  if (r.verdict == SeriesVerdict::Divergent) {
    v.applies = true;
    v.conclusion = Conclusion::ImpliesLPC;
  }
  return v;
}

CriterionVerdict berezanskii_test(const JacobiSequence& seq) {
  if (seq.size() < 3) throw DomainError("berezanskii_test requires N >= 3");
  CriterionVerdict v{"Berezanskii", false, Conclusion::NoConclusion, ""};
  const std::size_t tail = std::max<std::size_t>(seq.size() / 2, 1);
  const std::size_t defects = log_concavity_defect(seq, tail);
  const CarlemanResult carleman = carleman_sum(seq);
  bool q_summable = false;
  std::string q_evidence = "sum |q_n|/rho_n undecidable from finite data";
  if (seq.source()) {
    TieComparator cmp(*seq.source());
    const auto beta2_plus_one = [](const auto& s) {
      using T = std::decay_t<decltype(s.x0)>;
      return T(s.beta2 + T(1));
    };
    q_summable = cmp.compare(beta2_plus_one, detail::beta1_of, "beta2 - beta1 = -1") == Sign::Negative;
    q_evidence = q_summable ? "beta2 - beta1 < -1" : "beta2 - beta1 >= -1";
  }
  std::ostringstream ev;
  ev << "log-concavity defects on n >= " << tail << ": " << defects
     << "; Carleman series " << to_string(carleman.verdict) << "; " << q_evidence;
  v.evidence = ev.str();
  if (defects == 0 && carleman.verdict == SeriesVerdict::Convergent && q_summable) {
    v.applies = true;
    v.conclusion = Conclusion::ImpliesLCC;
  }
  return v;
}

std::pair<bool, bool> equivalent_conditions_case3(const PowerAsymptotics& p) {
  validate(p);
  TieComparator cmp(p);
  if (p.order != AsymptoticOrder::SecondOrder || !detail::exceptional(cmp) ||
      cmp.compare(detail::beta1_of, detail::b_star, "beta = 2x1/x0 - 2y1/y0") != Sign::Zero ||
      cmp.compare(detail::beta1_of, detail::constant<3, 2>, "beta = 3/2") != Sign::Positive) {
    throw DomainError("equivalent_conditions_case3 requires a case-(iii) descriptor");
  }
  const auto spread = [](const auto& s) {
    using T = std::decay_t<decltype(s.x0)>;
    return T(s.x1 / s.x0 - s.y1 / s.y0);
  };
  const auto lhs = [&](const auto& s) {
    using T = std::decay_t<decltype(s.x0)>;
    return T(s.x1 / detail::magnitude(s.y0) + s.y1 / s.y0 * (spread(s) - T(1)));
  };
  const auto rhs = [](const auto& s) {
    using T = std::decay_t<decltype(s.x0)>;
    return T(T(3) / T(8) + s.x2 / s.x0 - s.y2 / s.y0);
  };
  const bool cond1 = cmp.compare(detail::constant<1, 1>, spread, "x1/x0 - y1/y0 = 1") == Sign::Negative;
  const bool cond2 = cmp.compare(lhs, rhs, "second case-(iii) condition") == Sign::Negative;
  return {cond1, cond2};
}

ClassificationReport classification_report(const PowerAsymptotics& params, std::size_t sample_size) {
  ClassificationReport report{params, classify(params), {}};
  const JacobiSequence seq = materialize(params, sample_size);
  report.criteria.push_back(carleman_test(seq));
  report.criteria.push_back(wouk_test(params));
  report.criteria.push_back(berezanskii_test(seq));
  report.classification.notes.push_back(
      "rho_0, q_0 evaluated at n = 1 (index-0 guard m = max(n, 1))");
  return report;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::LCC: return "lcc";
    case Regime::LPC: return "lpc";
    case Regime::Undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(Conclusion conclusion) {
  switch (conclusion) {
    case Conclusion::ImpliesLPC: return "ImpliesLPC";
    case Conclusion::ImpliesLCC: return "ImpliesLCC";
    case Conclusion::NoConclusion: return "NoConclusion";
  }
  return "?";
}

std::string summary_line(const Classification& c) {
  if (c.regime == Regime::Undetermined) {
    return "Undetermined: second-order asymptotic data (x2, y2) required";
  }
  std::string line = c.case_label + ": " + to_string(c.regime);
  if (c.predicted_exponent) {
    const auto& e = *c.predicted_exponent;
    line += e.is_point() ? ", exponent " + fmt(e.lo)
                         : ", exponent in [" + fmt(e.lo) + ", " + fmt(e.hi) + "]";
  }
  return line;
}

}  // namespace jacobi
