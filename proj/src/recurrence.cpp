#include "jacobi_lab/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobi_lab/errors.hpp"

namespace jacobi {

namespace {

constexpr double kOverflowLimit = 1e300;

void run_recurrence(const JacobiSequence& seq, std::vector<double>& u, const char* name) {
  const auto rho = seq.rho();
  const auto q = seq.q();
  for (std::size_t n = 0; n + 2 < u.size(); ++n) {
    u[n + 2] = -(q[n + 1] * u[n + 1] + rho[n] * u[n]) / rho[n + 1];
    if (!(std::abs(u[n + 2]) <= kOverflowLimit)) {
      std::ostringstream os;
      os << "recurrence overflow: |" << name << "[" << n + 2 << "]| exceeds 1e300"
         << " (solutions blow up at this scale; lpc-type growth)";
      throw RecurrenceOverflow(os.str(), n + 2);
    }
  }
}

}  // namespace

PolySolution solve_at_zero(const JacobiSequence& seq) {
  const std::size_t N = seq.size();
  if (N < 2) throw DomainError("solve_at_zero requires N >= 2");
  PolySolution sol;
  sol.N = N;
  sol.P.assign(N + 1, 0.0);
  sol.Q.assign(N + 1, 0.0);
  sol.P[0] = 1.0;
  sol.P[1] = -seq.q(0) / seq.rho(0);
  sol.Q[0] = 0.0;
  sol.Q[1] = 1.0 / seq.rho(0);
  run_recurrence(seq, sol.P, "P");
  run_recurrence(seq, sol.Q, "Q");
  return sol;
}

std::vector<double> solve_from(const JacobiSequence& seq, double u0, double u1) {
  if (seq.size() < 2) throw DomainError("solve_from requires N >= 2");
  std::vector<double> u(seq.size() + 1, 0.0);
  u[0] = u0;
  u[1] = u1;
  run_recurrence(seq, u, "u");
  return u;
}

std::vector<double> wronskian_residuals(const PolySolution& sol, const JacobiSequence& seq) {
  if (sol.N > seq.size()) throw DomainError("wronskian_residuals: solution longer than sequence");
  std::vector<double> res(sol.N);
  for (std::size_t n = 0; n < sol.N; ++n) {
    const double w = seq.rho(n) * (sol.Q[n + 1] * sol.P[n] - sol.P[n + 1] * sol.Q[n]);
    res[n] = std::abs(w - 1.0);
  }
  return res;
}

IndexWindow default_window(std::size_t N) {
  return {std::max<std::size_t>(N / 50, 2), N};
}

ExponentFit norm_exponent(const PolySolution& sol, IndexWindow window) {
  if (window.first < 2 || window.last > sol.N || window.first > window.last) {
    throw DomainError("norm_exponent: window must lie within [2, N]");
  }
  if (window.length() < 16) throw DomainError("norm_exponent: window length must be >= 16");
  std::vector<double> x, y;
  x.reserve(window.length());
  y.reserve(window.length());
  for (std::size_t n = window.first; n <= window.last; ++n) {
    const double l = sol.P[n] * sol.P[n] + sol.Q[n] * sol.Q[n];
    if (!(l > 0)) throw DomainError("norm_exponent: P^2 + Q^2 vanishes inside the window");
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(l));
  }
  const LinearFit f = least_squares(x, y);
  return {f.slope, f.intercept, f.r_squared, f.slope_stderr, window};
}

SummabilityProbe square_summability_probe(const PolySolution& sol) {
  if (sol.N < 64) throw DomainError("square_summability_probe requires N >= 64");
  SummabilityProbe probe;
  for (std::size_t k = 0;; ++k) {
    const std::size_t lo = std::size_t{1} << k;
    const std::size_t hi = lo << 1;
    if (hi - 1 > sol.N) break;
    double s = 0.0;
    for (std::size_t n = lo; n < hi; ++n) s += sol.P[n] * sol.P[n] + sol.Q[n] * sol.Q[n];
    probe.block_sums.push_back(s);
  }
  for (std::size_t k = 1; k < probe.block_sums.size(); ++k) {
    probe.ratios.push_back(probe.block_sums[k] / probe.block_sums[k - 1]);
  }
  const auto last = std::span<const double>(probe.ratios).last(4);
  if (std::all_of(last.begin(), last.end(), [](double r) { return r < 0.9; })) {
    probe.verdict = SummabilityTrend::SummableTrend;
  } else if (std::all_of(last.begin(), last.end(), [](double r) { return r > 1.0; })) {
    probe.verdict = SummabilityTrend::DivergentTrend;
  }
  return probe;
}

double TransformedRecurrence::scaled_tail(std::size_t n, double power) const {
  if (n == 0 || n >= C.size()) throw DomainError("scaled_tail: index out of range");
  return std::pow(static_cast<double>(n), power) * C[n];
}

TransformedRecurrence transformed_recurrence(const JacobiSequence& seq) {
  const std::size_t N = seq.size();
  if (N < 3) throw DomainError("transformed_recurrence requires N >= 3");
  TransformedRecurrence t;
  t.r.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (i >= 1 && seq.q(i) == 0.0) {
      std::ostringstream os;
      os << "transformed_recurrence: q[" << i << "] = 0, r_i would vanish";
      throw DomainError(os.str());
    }
    t.r[i] = -seq.q(i) / (2.0 * seq.rho(i));
  }
  t.C.assign(N - 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t n = 1; n + 1 < N; ++n) {
    t.C[n] = 1.0 - seq.rho(n) / (seq.rho(n + 1) * t.r[n] * t.r[n + 1]);
  }
  return t;
}

Case3Roots case3_roots(double d) {
  const double disc = 1.0 + 4.0 * d;
  if (std::abs(disc) <= 1e-12) return {{0.5, 0.0}, {0.5, 0.0}, RootFlavor::DoubleRoot};
  if (disc < 0) {
    const double im = 0.5 * std::sqrt(-disc);
    return {{0.5, im}, {0.5, -im}, RootFlavor::ComplexPair};
  }
  const double s = 0.5 * std::sqrt(disc);
  return {{0.5 + s, 0.0}, {0.5 - s, 0.0}, RootFlavor::RealDistinct};
}

bool case3c_square_summable(double d, double beta) {
  const double disc = 1.0 + 4.0 * d;
  if (disc <= 0) throw DomainError("case3c_square_summable requires d > -1/4");
  return std::sqrt(disc) < beta - 2.0;
}

RieszSparsity riesz_sparsity(std::span<const double> eigenvalues) {
  RieszSparsity out;
  double prev = 0.0;
  std::size_t n = 0;
  for (double lambda : eigenvalues) {
    const double mod = std::abs(lambda);
    if (mod < prev) throw DomainError("riesz_sparsity: eigenvalues must be sorted by modulus");
    prev = mod;
    if (mod == 0.0) {
      ++out.skipped_zeros;
      continue;
    }
    ++n;
    out.ratios.push_back(static_cast<double>(n) / mod);
  }
  const std::size_t count = out.ratios.size();
  if (count < 4) throw DomainError("riesz_sparsity needs at least four nonzero eigenvalues");
  const std::size_t quarter = count / 4;
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < quarter; ++i) {
    first += out.ratios[i];
    last += out.ratios[count - quarter + i];
  }
  out.first_quartile_mean = first / static_cast<double>(quarter);
  out.last_quartile_mean = last / static_cast<double>(quarter);
  out.decreasing = out.last_quartile_mean < out.first_quartile_mean * (1.0 - 1e-9);
  return out;
}

const char* to_string(SummabilityTrend trend) {
  switch (trend) {
    case SummabilityTrend::SummableTrend: return "SummableTrend";
    case SummabilityTrend::DivergentTrend: return "DivergentTrend";
    case SummabilityTrend::Unclear: return "Unclear";
  }
  return "?";
}

const char* to_string(RootFlavor flavor) {
  switch (flavor) {
    case RootFlavor::ComplexPair: return "ComplexPair";
    case RootFlavor::DoubleRoot: return "DoubleRoot";
    case RootFlavor::RealDistinct: return "RealDistinct";
  }
  return "?";
}

}  // namespace jacobi
