#pragma once

// The three-term difference equation rho_{n+1} u_{n+2} + q_{n+1} u_{n+1} + rho_n u_n = 0
// at z = 0: orthogonal polynomials of the first and second kind, Wronskian,
// decay fits, square-summability, and the exceptional-case transformed form.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/fit.hpp"

namespace jacobi {

/// P_n(0), Q_n(0) for n = 0..N where N = sequence length.
/// P_0 = 1, P_1 = -q_0/rho_0, Q_0 = 0, Q_1 = 1/rho_0.
struct PolySolution {
  std::vector<double> P;
  std::vector<double> Q;
  std::size_t N = 0;
};

/// Throws RecurrenceOverflow when |P_n| or |Q_n| exceeds 1e300.
PolySolution solve_at_zero(const JacobiSequence& seq);

/// Same recurrence from arbitrary initial values (u_0, u_1).
std::vector<double> solve_from(const JacobiSequence& seq, double u0, double u1);

/// |rho_n (Q_{n+1} P_n - P_{n+1} Q_n) - 1| for n = 0..N-1.
std::vector<double> wronskian_residuals(const PolySolution& sol, const JacobiSequence& seq);

/// Default regression window [N/50, N] (clamped to start at 2).
IndexWindow default_window(std::size_t N);

/// Slope of log(P_n^2 + Q_n^2) against log n over `window`.
ExponentFit norm_exponent(const PolySolution& sol, IndexWindow window);

enum class SummabilityTrend { SummableTrend, DivergentTrend, Unclear };

struct SummabilityProbe {
  std::vector<double> block_sums;  // S_k over [2^k, 2^{k+1}), complete blocks only
  std::vector<double> ratios;      // S_{k+1}/S_k
  SummabilityTrend verdict = SummabilityTrend::Unclear;
};

/// Dyadic block sums of P^2 + Q^2. SummableTrend iff the last four ratios are
/// all below 0.9, DivergentTrend iff all above 1.0.
SummabilityProbe square_summability_probe(const PolySolution& sol);

/// r_i = -q_i/(2 rho_i) and C_n = 1 - rho_n/(rho_{n+1} r_n r_{n+1}), so that
/// v_n = u_n / prod_{i=1}^{n-1} r_i solves v_{n+2} - 2 v_{n+1} + (1 - C_n) v_n = 0.
/// C has N-1 entries; C[0] is NaN (the substitution starts at n = 1).
struct TransformedRecurrence {
  std::vector<double> r;
  std::vector<double> C;

  /// n^power * C_n; n*C_n -> -z1/x0 and, when z1 = 0, n^2*C_n -> d.
  double scaled_tail(std::size_t n, double power) const;
};

/// Rejects sequences with q_i = 0 for some i >= 1.
TransformedRecurrence transformed_recurrence(const JacobiSequence& seq);

enum class RootFlavor { ComplexPair, DoubleRoot, RealDistinct };

struct Case3Roots {
  std::complex<double> alpha1;
  std::complex<double> alpha2;
  RootFlavor flavor;
};

/// Roots (1 +- sqrt(1+4d))/2 of X^2 - X - d. |1 + 4d| <= 1e-12 counts as the double root.
Case3Roots case3_roots(double d);

/// Subcase 3c: the dominant solution is square-summable iff sqrt(1+4d) < beta - 2.
bool case3c_square_summable(double d, double beta);

struct RieszSparsity {
  std::vector<double> ratios;  // n/|lambda_n|, n = 1, 2, ...
  double first_quartile_mean = 0.0;
  double last_quartile_mean = 0.0;
  bool decreasing = false;
  std::size_t skipped_zeros = 0;
};

/// `eigenvalues` sorted by increasing modulus; exact zeros are skipped.
RieszSparsity riesz_sparsity(std::span<const double> eigenvalues);

const char* to_string(SummabilityTrend trend);
const char* to_string(RootFlavor flavor);

}  // namespace jacobi
