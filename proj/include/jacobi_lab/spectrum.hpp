#pragma once

// Eigenvalues and counting functions of the N x N finite sections of J
// (diagonal q_0..q_{N-1}, off-diagonal rho_0..rho_{N-2}) by Sturm-sequence
// bisection.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/parallel.hpp"

namespace jacobi {

/// Raw tridiagonal data; rho.size() >= diag.size() - 1.
struct TridiagonalView {
  std::span<const double> diag;
  std::span<const double> offdiag;
  std::size_t N;
};

TridiagonalView truncation(const JacobiSequence& seq, std::size_t N);

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const TridiagonalView& t, double x);
std::size_t sturm_count(const JacobiSequence& seq, std::size_t N, double x);

/// Number of eigenvalues in [-r, r].
std::size_t count_in_window(const TridiagonalView& t, double r);

struct TruncatedSpectrum {
  std::size_t N = 0;
  std::vector<double> eigenvalues;  // increasing
  double tol = 0.0;
};

/// 1e-10 max(1, |a|, |b|)
double default_tolerance(double a, double b);

/// All eigenvalues in [a, b], each bracketed to width <= tol (tol <= 0 selects
/// the default).
std::vector<double> eigenvalues_in(const TridiagonalView& t, double a, double b, double tol = 0.0,
                                   Execution exec = {});
std::vector<double> eigenvalues_in(const JacobiSequence& seq, std::size_t N, double a, double b,
                                   double tol = 0.0, Execution exec = {});

/// Gershgorin interval [min q - 2 max rho, max q + 2 max rho].
std::pair<double, double> gershgorin_interval(const TridiagonalView& t);

TruncatedSpectrum full_spectrum(const JacobiSequence& seq, std::size_t N, double tol = 0.0,
                                Execution exec = {});

/// #{lambda : |lambda| <= r}.
std::size_t counting_function(const TruncatedSpectrum& spectrum, double r);

struct StabilizedCount {
  std::vector<std::size_t> Ns;
  std::vector<std::size_t> counts;
  bool stabilized = false;  // last two counts agree
};

StabilizedCount stabilized_counting(const JacobiSequence& seq, double r, std::span<const std::size_t> Ns);

/// Eigenvalues sorted by increasing modulus (ties: negative first).
std::vector<double> sort_by_modulus(std::vector<double> values);

}  // namespace jacobi
