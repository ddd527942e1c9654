#include "jacobi_lab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "jacobi_lab/errors.hpp"

namespace jacobi {

namespace {

constexpr double kRescaleThreshold = 1e150;
constexpr std::size_t kRays = 16;

double magnitude(double v) { return std::abs(v); }
double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T>
void apply_factor(NevanlinnaPartial<T>& m, double p, double q, T z) {
  const double r00 = -p * q, r01 = q * q, r10 = -p * p, r11 = p * q;
  const T a = m.A + z * (r00 * m.A + r01 * m.C);
  const T b = m.B + z * (r00 * m.B + r01 * m.D);
  const T c = m.C + z * (r10 * m.A + r11 * m.C);
  const T d = m.D + z * (r10 * m.B + r11 * m.D);
  m.A = a;
  m.B = b;
  m.C = c;
  m.D = d;
  ++m.N;
}

template <class T>
void rescale(NevanlinnaPartial<T>& m) {
  const double s = std::max({magnitude(m.A), magnitude(m.B), magnitude(m.C), magnitude(m.D)});
  if (s > kRescaleThreshold) {
    m.A /= s;
    m.B /= s;
    m.C /= s;
    m.D /= s;
    m.log_scale += std::log(s);
  }
}

template <class T>
NevanlinnaPartial<T> evaluate(const PolySolution& sol, T z, std::size_t N) {
  if (N > sol.N) throw DomainError("nevanlinna_evaluate: N exceeds the solution length");
  NevanlinnaPartial<T> m;
  m.A = T(0.0);
  m.B = T(-1.0);
  m.C = T(1.0);
  m.D = T(0.0);
  for (std::size_t n = 0; n < N; ++n) {
    apply_factor(m, sol.P[n], sol.Q[n], z);
    rescale(m);
  }
  return m;
}

// sign and log|B_N(x)| on the real axis
struct BSample {
  int sign;
  double log_abs;
};

BSample b_sample(const PolySolution& sol, std::size_t N, double x) {
  const RealPartial m = evaluate(sol, x, N);
  if (m.B == 0.0) return {0, -std::numeric_limits<double>::infinity()};
  return {m.B > 0 ? 1 : -1, std::log(std::abs(m.B)) + m.log_scale};
}

double bisect_zero(const PolySolution& sol, std::size_t N, double lo, double hi, int sign_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const BSample s = b_sample(sol, N, mid);
    if (s.sign == 0) return mid;
    if (s.sign == sign_lo) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_grid(double r, std::size_t per_decade) {
  std::vector<double> pos;
  const double inner = std::min(r, 1.0);
  for (std::size_t i = 1; i <= per_decade; ++i) pos.push_back(inner * static_cast<double>(i) / per_decade);
  if (r > 1.0) {
    const double decades = std::log10(r);
    const auto count = static_cast<std::size_t>(std::ceil(per_decade * decades));
    for (std::size_t j = 1; j <= count; ++j) {
      pos.push_back(j == count ? r : std::pow(10.0, decades * static_cast<double>(j) / count));
    }
  }
  std::vector<double> grid;
  grid.reserve(2 * pos.size() + 1);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
  grid.push_back(0.0);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

}  // namespace

ComplexPartial nevanlinna_evaluate(const PolySolution& sol, std::complex<double> z, std::size_t N) {
  return evaluate(sol, z, N);
}

RealPartial nevanlinna_evaluate(const PolySolution& sol, double x, std::size_t N) {
  return evaluate(sol, x, N);
}

ComplexPartial nevanlinna_step(const PolySolution& sol, const ComplexPartial& m, std::complex<double> z) {
  if (m.N >= sol.N) throw DomainError("nevanlinna_step: no further factor available");
  ComplexPartial out = m;
  apply_factor(out, sol.P[m.N], sol.Q[m.N], z);
  return out;
}

double determinant_defect(const ComplexPartial& m) {
  const double scale = std::exp(2.0 * m.log_scale);
  if (!std::isfinite(scale)) return std::numeric_limits<double>::infinity();
  return std::abs((m.A * m.D - m.B * m.C) * scale - 1.0);
}

double determinant_defect_relative(const ComplexPartial& m) {
  const double target = std::exp(-2.0 * m.log_scale);
  const double size = std::abs(m.A * m.D) + std::abs(m.B * m.C);
  return std::abs(m.A * m.D - m.B * m.C - target) / std::max(target, size);
}

double log_spectral_norm(const ComplexPartial& m) {
  const double s = std::max({std::abs(m.A), std::abs(m.B), std::abs(m.C), std::abs(m.D)});
  if (!(s > 0)) return -std::numeric_limits<double>::infinity();
  const std::complex<double> a = m.A / s, b = m.B / s, c = m.C / s, d = m.D / s;
  const double f2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = std::abs(a * d - b * c);
  const double disc = std::max(f2 * f2 - 4.0 * det * det, 0.0);
  const double sigma2 = 0.5 * (f2 + std::sqrt(disc));
  return 0.5 * std::log(sigma2) + std::log(s) + m.log_scale;
}

ZeroScan b_zero_scan(const PolySolution& sol, std::size_t N, double r, std::size_t grid, Execution exec) {
  if (grid < 64) throw DomainError("b_zero_scan: grid must be >= 64 points per decade");
  if (!(r > 0)) throw DomainError("b_zero_scan: r must be positive");
  if (N < 1 || N > sol.N) throw DomainError("b_zero_scan: N must be in [1, solution length]");

  ZeroScan out;
  const std::vector<double> xs = scan_grid(r, grid);
  out.grid_points = xs.size();
  std::vector<BSample> samples(xs.size());
  parallel_for(xs.size(), exec, [&](std::size_t i) { samples[i] = b_sample(sol, N, xs[i]); });

  const double tol = 1e-9 * std::max(1.0, r);
  struct Bracket {
    double lo, hi;
    int sign_lo;
  };
  std::vector<Bracket> brackets;
  std::vector<double> exact_hits;

  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (samples[i].sign == 0) exact_hits.push_back(xs[i]);
    if (i + 1 < xs.size() && samples[i].sign != 0 && samples[i + 1].sign != 0 &&
        samples[i].sign != samples[i + 1].sign) {
      brackets.push_back({xs[i], xs[i + 1], samples[i].sign});
    }
  }

  // |B| dipping without a sign change may hide a pair of close zeros.
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const BSample& a = samples[i - 1];
    const BSample& b = samples[i];
    const BSample& c = samples[i + 1];
    if (a.sign == 0 || b.sign == 0 || c.sign == 0) continue;
    if (a.sign != b.sign || b.sign != c.sign) continue;
    if (!(b.log_abs < a.log_abs && b.log_abs < c.log_abs)) continue;
    ++out.refined_cells;
    constexpr std::size_t kSub = 16;
    const double lo = xs[i - 1], hi = xs[i + 1];
    double prev_x = lo;
    int prev_sign = a.sign;
    std::size_t found = 0;
    for (std::size_t k = 1; k <= 2 * kSub; ++k) {
      const double x = k == 2 * kSub ? hi : lo + (hi - lo) * static_cast<double>(k) / (2 * kSub);
      const BSample s = k == 2 * kSub ? c : b_sample(sol, N, x);
      if (s.sign == 0) {
        exact_hits.push_back(x);
        ++found;
        continue;
      }
      if (s.sign != prev_sign) {
        brackets.push_back({prev_x, x, prev_sign});
        ++found;
      }
      prev_x = x;
      prev_sign = s.sign;
    }
    if (found > 0) {
      std::ostringstream os;
      os << "resolved " << found << " zeros hidden in the cell [" << lo << ", " << hi << "]";
      out.warnings.push_back(os.str());
    }
  }

  std::vector<double> zeros(brackets.size());
  parallel_for(brackets.size(), exec, [&](std::size_t k) {
    zeros[k] = bisect_zero(sol, N, brackets[k].lo, brackets[k].hi, brackets[k].sign_lo, tol);
  });
  zeros.insert(zeros.end(), exact_hits.begin(), exact_hits.end());
  std::sort(zeros.begin(), zeros.end());
  zeros.erase(std::unique(zeros.begin(), zeros.end()), zeros.end());
  out.zeros = std::move(zeros);
  return out;
}

double log_majorant(double r, double g, double beta, std::size_t terms) {
  if (!(beta > 1)) throw DomainError("log_majorant requires beta > 1");
  if (!(g > 0)) throw DomainError("log_majorant requires g > 0");
  if (r < 0) throw DomainError("log_majorant requires r >= 0");
  if (terms < 2) throw DomainError("log_majorant requires at least two terms");
  if (r == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t n = 1; n < terms; ++n) sum += std::log1p(r * g * std::pow(static_cast<double>(n), -beta));
  sum += r * g * std::pow(static_cast<double>(terms), 1.0 - beta) / (beta - 1.0);
  return sum;
}

MajorantCheck majorant_F(const PolySolution& sol, const PowerAsymptotics& params,
                         std::span<const double> r_grid, std::size_t N, Execution exec) {
  const Classification c = classify(params);
  if (c.case_label != "T1(ii)" || !c.a_constant) {
    throw DomainError("majorant_F requires a descriptor in the non-exceptional lcc case");
  }
  if (r_grid.empty()) throw DomainError("majorant_F: empty r-grid");
  MajorantCheck out;
  out.g = *c.a_constant / params.x0;
  out.beta1 = params.beta1;
  out.samples.resize(r_grid.size());
  parallel_for(r_grid.size(), exec, [&](std::size_t i) {
    const double r = r_grid[i];
    if (!(r > 0)) throw DomainError("majorant_F: radii must be positive");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kRays; ++k) {
      const std::complex<double> z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / kRays);
      best = std::max(best, log_spectral_norm(nevanlinna_evaluate(sol, z, N)));
    }
    MajorantSample& s = out.samples[i];
    s.r = r;
    s.log_F = log_majorant(r, out.g, out.beta1);
    s.log_norm = best;
    s.gap = best - s.log_F;
  });
  out.sup_gap = -std::numeric_limits<double>::infinity();
  for (const auto& s : out.samples) out.sup_gap = std::max(out.sup_gap, s.gap);
  out.gap_nonincreasing_tail = true;
  for (std::size_t i = out.samples.size() / 2; i + 1 < out.samples.size(); ++i) {
    if (out.samples[i + 1].gap > out.samples[i].gap + 1e-9 * std::abs(out.samples[i].gap)) {
      out.gap_nonincreasing_tail = false;
    }
  }
  return out;
}

std::vector<double> coefficient_series_H(const JacobiSequence& seq, std::size_t N) {
  if (N < 2) throw DomainError("coefficient_series_H requires N >= 2");
  if (N > seq.size()) throw DomainError("coefficient_series_H: N exceeds the sequence length");
  std::vector<double> out(N, 0.0);
  for (std::size_t n = 2; n < N; ++n) out[n] = out[n - 1] - std::log(seq.rho(n - 1));
  return out;
}

OrderType order_type_from_coefficients(std::span<const double> log_coeffs) {
  const std::size_t L = log_coeffs.size();
  if (L < 64) throw DomainError("order_type_from_coefficients needs at least 64 coefficients");
  std::size_t lo = 1;
  while (4 * lo <= L) lo *= 2;
  const std::size_t hi = 2 * lo;  // block [lo, hi), hi <= L
  OrderType out;
  out.window = {lo, hi - 1};

  for (std::size_t n = lo; n < hi; ++n) {
    if (!std::isfinite(log_coeffs[n]) || log_coeffs[n] >= 0) {
      throw DomainError("order_type_from_coefficients: coefficients are not decaying on the tail");
    }
  }
  if (!(log_coeffs[hi - 1] < log_coeffs[lo])) {
    throw DomainError("order_type_from_coefficients: coefficients are not decaying on the tail");
  }

  std::vector<double> x, y;
  for (std::size_t n = lo; n + 1 < hi; ++n) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(log_coeffs[n] - log_coeffs[n + 1]);
  }
  const LinearFit f = least_squares(x, y);
  if (!(f.slope > 0)) throw DomainError("order_type_from_coefficients: decay is slower than any power of n!");
  out.order = 1.0 / f.slope;
  out.fit_r_squared = f.r_squared;

  auto type_at = [&](double rho) {
    double best = 0.0;
    for (std::size_t n = lo; n < hi; ++n) {
      const double nn = static_cast<double>(n);
      best = std::max(best, nn * std::exp(rho * log_coeffs[n] / nn));
    }
    return best / (std::numbers::e * rho);
  };
  for (std::size_t n = lo; n < hi; ++n) {
    const double nn = static_cast<double>(n);
    out.order_naive = std::max(out.order_naive, nn * std::log(nn) / -log_coeffs[n]);
  }
  out.type = type_at(out.order);
  out.type_naive = type_at(out.order_naive);
  return out;
}

double log_max_modulus_series(std::span<const double> log_coeffs, double r) {
  if (!(r > 0)) throw DomainError("log_max_modulus_series requires r > 0");
  if (log_coeffs.empty()) throw DomainError("log_max_modulus_series: empty series");
  const double lr = std::log(r);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < log_coeffs.size(); ++n) peak = std::max(peak, log_coeffs[n] + n * lr);
  const double last = log_coeffs.back() + (log_coeffs.size() - 1) * lr;
  if (last - peak > -40.0) {
    std::ostringstream os;
    os << "series truncated too early for r = " << r;
    throw EvaluationBreakdown(os.str());
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kRays; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / kRays;
    std::complex<double> s = 0.0;
    for (std::size_t n = 0; n < log_coeffs.size(); ++n) {
      const double t = log_coeffs[n] + n * lr - peak;
      if (t < -745.0) continue;
      s += std::polar(std::exp(t), theta * static_cast<double>(n));
    }
    if (std::abs(s) > 0) best = std::max(best, std::log(std::abs(s)) + peak);
  }
  return best;
}

MaxModulusFit order_type_from_max_modulus(std::span<const double> r_grid, std::span<const double> log_M) {
  const std::size_t n = r_grid.size();
  if (n < 8) throw DomainError("order_type_from_max_modulus needs at least 8 radii");
  if (log_M.size() != n) throw DomainError("order_type_from_max_modulus: size mismatch");
  if (!(r_grid[0] > 0)) throw DomainError("order_type_from_max_modulus: radii must be positive");
  const double ratio = r_grid[1] / r_grid[0];
  if (!(ratio > 1)) throw DomainError("order_type_from_max_modulus: grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(r_grid[i] / r_grid[i - 1] - ratio) > 1e-9 * ratio) {
      throw DomainError("order_type_from_max_modulus: grid must be geometric");
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(log_M[i] >= log_M[i - 1])) {
      std::ostringstream os;
      os << "log M(r) decreases between r = " << r_grid[i - 1] << " and r = " << r_grid[i]
         << " (evaluation breakdown)";
      throw EvaluationBreakdown(os.str());
    }
  }
  MaxModulusFit out;
  out.first_point = n / 2;
  std::vector<double> x, y;
  for (std::size_t i = out.first_point; i < n; ++i) {
    if (!(log_M[i] > 0)) throw EvaluationBreakdown("log M(r) must be positive on the fitted range");
    x.push_back(std::log(r_grid[i]));
    y.push_back(std::log(log_M[i]));
  }
  out.fit = least_squares(x, y);
  out.order = out.fit.slope;
  double sum = 0.0;
  for (std::size_t i = out.first_point; i < n; ++i) sum += log_M[i] / std::pow(r_grid[i], out.order);
  out.type = sum / static_cast<double>(n - out.first_point);
  return out;
}

MaxModulusFit order_type_from_max_modulus(const std::function<double(double)>& log_max_modulus,
                                          std::span<const double> r_grid, Execution exec) {
  std::vector<double> values(r_grid.size());
  parallel_for(r_grid.size(), exec, [&](std::size_t i) { values[i] = log_max_modulus(r_grid[i]); });
  return order_type_from_max_modulus(r_grid, values);
}

double log_max_modulus_B(const PolySolution& sol, std::size_t N, double r) {
  if (!(r > 0)) throw DomainError("log_max_modulus_B requires r > 0");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kRays; ++k) {
    const std::complex<double> z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / kRays);
    const ComplexPartial m = nevanlinna_evaluate(sol, z, N);
    if (std::abs(m.B) > 0) best = std::max(best, std::log(std::abs(m.B)) + m.log_scale);
  }
  return best;
}

std::vector<double> geometric_grid(double r_min, double r_max, std::size_t points) {
  if (!(r_min > 0) || !(r_max > r_min)) throw DomainError("geometric_grid requires 0 < r_min < r_max");
  if (points < 2) throw DomainError("geometric_grid requires at least two points");
  std::vector<double> out(points);
  const double step = std::log(r_max / r_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = r_min * std::exp(step * static_cast<double>(i));
  out.back() = r_max;
  return out;
}

ExponentEstimate convergence_exponent_from_zeros(std::span<const double> moduli) {
  const std::size_t n = moduli.size();
  if (n < 32) throw DomainError("convergence_exponent_from_zeros needs at least 32 zeros");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(moduli[i] > 0)) throw DomainError("convergence_exponent_from_zeros: moduli must be positive");
    if (i > 0 && moduli[i] < moduli[i - 1]) {
      throw DomainError("convergence_exponent_from_zeros: moduli must be sorted");
    }
  }
  std::vector<double> x, y;
  for (std::size_t k = n / 2; k < n; ++k) {
    x.push_back(std::log(moduli[k]));
    y.push_back(std::log(static_cast<double>(k + 1)));
  }
  const LinearFit f = least_squares(x, y);
  return {f.slope, f.slope_stderr, x.size()};
}

double upper_density(std::span<const double> moduli, double beta) {
  if (!(beta > 1)) throw DomainError("upper_density requires beta > 1");
  if (moduli.empty()) throw DomainError("upper_density: no zeros");
  double best = 0.0;
  for (std::size_t k = moduli.size() / 2; k < moduli.size(); ++k) {
    if (!(moduli[k] > 0)) throw DomainError("upper_density: moduli must be positive");
    best = std::max(best, static_cast<double>(k + 1) / std::pow(moduli[k], 1.0 / beta));
  }
  return best;
}

std::vector<double> sorted_moduli(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v != 0.0) out.push_back(std::abs(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GrowthEstimate estimate_growth(const PolySolution& sol, std::size_t N, double r_max,
                               std::optional<double> density_beta, std::size_t grid, Execution exec) {
  GrowthEstimate out;
  out.N = N;
  out.r_max = r_max;
  const ZeroScan scan = b_zero_scan(sol, N, r_max, grid, exec);
  out.notes = scan.warnings;
  const std::vector<double> moduli = sorted_moduli(scan.zeros);
  out.zero_count = moduli.size();
  const ExponentEstimate e = convergence_exponent_from_zeros(moduli);
  out.convergence_exponent = e.exponent;
  out.exponent_stderr = e.slope_stderr;
  const double beta = density_beta.value_or(1.0 / e.exponent);
  if (beta > 1) {
    out.upper_density = upper_density(moduli, beta);
  } else {
    out.notes.push_back("upper density skipped: density exponent must exceed 1");
  }
  const std::vector<double> radii = geometric_grid(r_max / 1e3, r_max, 16);
  out.max_modulus = order_type_from_max_modulus(
      [&](double r) { return log_max_modulus_B(sol, N, r); }, radii, exec);
  out.order = out.max_modulus.order;
  out.type_at_order = out.max_modulus.type;
  return out;
}

}  // namespace jacobi
