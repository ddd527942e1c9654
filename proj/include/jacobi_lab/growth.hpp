#pragma once

// Growth of the entire functions attached to an lcc Jacobi matrix: the
// Nevanlinna matrix as a product of rank-one perturbations of the identity,
// real zeros of B, the majorant product F, the coefficient series H, and
// order / type / convergence-exponent estimators.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/classifier.hpp"
#include "jacobi_lab/fit.hpp"
#include "jacobi_lab/parallel.hpp"
#include "jacobi_lab/recurrence.hpp"

namespace jacobi {

/// M_N(z) = prod_{n=0}^{N-1} (I + z R_n) M_0, M_0 = [[0,-1],[1,0]],
/// R_n = [[-P_n Q_n, Q_n^2], [-P_n^2, P_n Q_n]] (P_n, Q_n at z = 0).
/// True entries are A exp(log_scale) etc.
template <class T>
struct NevanlinnaPartial {
  std::size_t N = 0;
  T A{}, B{}, C{}, D{};
  double log_scale = 0.0;
};

using ComplexPartial = NevanlinnaPartial<std::complex<double>>;
using RealPartial = NevanlinnaPartial<double>;

ComplexPartial nevanlinna_evaluate(const PolySolution& sol, std::complex<double> z, std::size_t N);
RealPartial nevanlinna_evaluate(const PolySolution& sol, double x, std::size_t N);

/// Applies one more factor (I + z R_{m.N}) without rescaling.
ComplexPartial nevanlinna_step(const PolySolution& sol, const ComplexPartial& m, std::complex<double> z);

/// |AD - BC - 1| on the true (unscaled) entries; +inf when exp(2 log_scale) overflows.
double determinant_defect(const ComplexPartial& m);
/// |det_s - exp(-2 log_scale)| / max(exp(-2 log_scale), |A_s D_s| + |B_s C_s|) on the scaled entries.
double determinant_defect_relative(const ComplexPartial& m);

/// log of the spectral norm of the true matrix.
double log_spectral_norm(const ComplexPartial& m);

struct ZeroScan {
  std::vector<double> zeros;   // increasing
  std::size_t grid_points = 0; // evaluations on the coarse grid
  std::size_t refined_cells = 0;
  std::vector<std::string> warnings;
};

/// Real zeros of B_N in [-r, r]. `grid` is points per decade (>= 64): uniform
/// on [-1, 1], geometric on 1 <= |x| <= r. Cells where |B| has a local minimum
/// without a sign change are resampled 16 times finer. Zeros are bisected to
/// 1e-9 max(1, r).
ZeroScan b_zero_scan(const PolySolution& sol, std::size_t N, double r, std::size_t grid = 4096,
                     Execution exec = {});

/// sum_{n>=1} log(1 + r g n^{-beta}) over n < terms plus the linearized tail
/// r g terms^{1-beta}/(beta-1). Requires beta > 1, g > 0, r >= 0.
double log_majorant(double r, double g, double beta, std::size_t terms = 1000000);

struct MajorantSample {
  double r = 0.0;
  double log_F = 0.0;
  double log_norm = 0.0;  // max over 16 rays of log ||M_N(r e^{i theta})||
  double gap = 0.0;       // log_norm - log_F
};

struct MajorantCheck {
  double g = 0.0;  // a/x0
  double beta1 = 0.0;
  std::vector<MajorantSample> samples;
  double sup_gap = 0.0;
  bool gap_nonincreasing_tail = false;  // over the upper half of the r-grid
};

/// Only for T1(ii) descriptors; g = a/x0 from the classification.
MajorantCheck majorant_F(const PolySolution& sol, const PowerAsymptotics& params,
                         std::span<const double> r_grid, std::size_t N, Execution exec = {});

/// log b_{n,n} = -sum_{k=1}^{n-1} log rho_k for n = 0..N-1 (entries 0 and 1 are 0).
std::vector<double> coefficient_series_H(const JacobiSequence& seq, std::size_t N);

struct OrderType {
  double order = 0.0;
  double type = 0.0;
  // diagnostics
  double order_naive = 0.0;   // max over the block of n log n / (-log c_n)
  double type_naive = 0.0;    // type evaluated at order_naive
  IndexWindow window{};
  double fit_r_squared = 0.0;
};

/// Tail estimates on the last dyadic block [2^k, 2^{k+1}) of log|c_n|. `order`
/// inverts the slope of log c_n - log c_{n+1} against log n (a difference form
/// of n log n/(-log c_n)); type = max n exp(rho log c_n / n)/(e rho).
/// Rejects input whose tail is not decaying.
OrderType order_type_from_coefficients(std::span<const double> log_coeffs);

/// log max_k |sum_n c_n z_k^n| over 16 rays z_k = r e^{2 pi i k/16}.
double log_max_modulus_series(std::span<const double> log_coeffs, double r);

struct MaxModulusFit {
  double order = 0.0;
  double type = 0.0;
  LinearFit fit{};
  std::size_t first_point = 0;
};

/// r_grid geometric with >= 8 points, log_M[i] = log M(r_grid[i]). Order from
/// log log M vs log r on the top half; type = mean log M / r^order there.
MaxModulusFit order_type_from_max_modulus(std::span<const double> r_grid,
                                          std::span<const double> log_M);
/// Samples `log_max_modulus` on r_grid first.
MaxModulusFit order_type_from_max_modulus(const std::function<double(double)>& log_max_modulus,
                                          std::span<const double> r_grid, Execution exec = {});

/// max over 16 rays of log|B_N(z)|.
double log_max_modulus_B(const PolySolution& sol, std::size_t N, double r);

/// Geometric grid r_min .. r_max with `points` entries.
std::vector<double> geometric_grid(double r_min, double r_max, std::size_t points);

struct ExponentEstimate {
  double exponent = 0.0;
  double slope_stderr = 0.0;
  std::size_t used = 0;
};

/// Slope of log n against log lambda_n over the top half. >= 32 moduli,
/// sorted, positive.
ExponentEstimate convergence_exponent_from_zeros(std::span<const double> moduli);

/// max over the top half of k/|lambda_k|^{1/beta}, beta > 1.
double upper_density(std::span<const double> moduli, double beta);

/// |zeros| sorted increasingly, dropping exact zeros.
std::vector<double> sorted_moduli(std::span<const double> values);

struct GrowthEstimate {
  double order = 0.0;
  double type_at_order = 0.0;
  double convergence_exponent = 0.0;
  double upper_density = 0.0;
  // diagnostics
  double exponent_stderr = 0.0;
  std::size_t zero_count = 0;
  double r_max = 0.0;
  std::size_t N = 0;
  MaxModulusFit max_modulus{};
  std::vector<std::string> notes;
};

/// Zeros of B_N in [-r_max, r_max] for the exponent and density, max modulus of
/// B_N on a 16-point geometric grid [r_max/1e3, r_max] for order and type.
/// `density_beta` defaults to 1/exponent.
GrowthEstimate estimate_growth(const PolySolution& sol, std::size_t N, double r_max,
                               std::optional<double> density_beta = std::nullopt,
                               std::size_t grid = 4096, Execution exec = {});

}  // namespace jacobi
