#include "jacobi_lab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi_lab/errors.hpp"

namespace jacobi {

namespace {

constexpr double kPivotFloor = 1e-300;

}  // namespace

TridiagonalView truncation(const JacobiSequence& seq, std::size_t N) {
  if (N < 1 || N > seq.size()) throw DomainError("truncation size must be in [1, sequence length]");
  return {seq.q().first(N), seq.rho().first(N - 1), N};
}

std::size_t sturm_count(const TridiagonalView& t, double x) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t k = 0; k < t.N; ++k) {
    d = (t.diag[k] - x) - (k > 0 ? t.offdiag[k - 1] * t.offdiag[k - 1] / d : 0.0);
    // A vanishing pivot at x means x is an eigenvalue of the leading block;
    // +floor keeps "strictly below" semantics and the sign elsewhere.
    if (std::abs(d) < kPivotFloor) d = d < 0 ? -kPivotFloor : kPivotFloor;
    if (d < 0) ++count;
  }
  return count;
}

std::size_t sturm_count(const JacobiSequence& seq, std::size_t N, double x) {
  return sturm_count(truncation(seq, N), x);
}

std::size_t count_in_window(const TridiagonalView& t, double r) {
  if (r < 0) throw DomainError("count_in_window requires r >= 0");
  const double above = std::nextafter(r, std::numeric_limits<double>::infinity());
  return sturm_count(t, above) - sturm_count(t, -r);
}

double default_tolerance(double a, double b) {
  return 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> eigenvalues_in(const TridiagonalView& t, double a, double b, double tol,
                                   Execution exec) {
  if (!(a < b)) throw DomainError("eigenvalues_in requires a < b");
  if (tol <= 0) tol = default_tolerance(a, b);
  const double upper = std::nextafter(b, std::numeric_limits<double>::infinity());
  const std::size_t below_a = sturm_count(t, a);
  const std::size_t upto_b = sturm_count(t, upper);
  if (upto_b <= below_a) return {};
  const std::size_t count = upto_b - below_a;

  std::vector<double> out(count);
  parallel_for(count, exec, [&](std::size_t i) {
    const std::size_t k = below_a + i;  // k-th eigenvalue, 0-based
    double lo = a, hi = upper;
    // invariant: sturm_count(lo) <= k < sturm_count(hi)
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(t, mid) <= k) lo = mid;
      else hi = mid;
    }
    out[i] = 0.5 * (lo + hi);
  });
  return out;
}

std::vector<double> eigenvalues_in(const JacobiSequence& seq, std::size_t N, double a, double b,
                                   double tol, Execution exec) {
  return eigenvalues_in(truncation(seq, N), a, b, tol, exec);
}

std::pair<double, double> gershgorin_interval(const TridiagonalView& t) {
  const auto [qmin, qmax] = std::minmax_element(t.diag.begin(), t.diag.end());
  const double rmax = t.offdiag.empty() ? 0.0 : *std::max_element(t.offdiag.begin(), t.offdiag.end());
  double lo = *qmin - 2.0 * rmax, hi = *qmax + 2.0 * rmax;
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

TruncatedSpectrum full_spectrum(const JacobiSequence& seq, std::size_t N, double tol, Execution exec) {
  const TridiagonalView t = truncation(seq, N);
  const auto [lo, hi] = gershgorin_interval(t);
  if (tol <= 0) tol = default_tolerance(lo, hi);
  return {N, eigenvalues_in(t, lo, hi, tol, exec), tol};
}

std::size_t counting_function(const TruncatedSpectrum& spectrum, double r) {
  if (r < 0) throw DomainError("counting_function requires r >= 0");
  const auto& ev = spectrum.eigenvalues;
  const auto first = std::lower_bound(ev.begin(), ev.end(), -r);
  const auto last = std::upper_bound(ev.begin(), ev.end(), r);
  return static_cast<std::size_t>(std::distance(first, last));
}

StabilizedCount stabilized_counting(const JacobiSequence& seq, double r, std::span<const std::size_t> Ns) {
  if (Ns.size() < 3) throw DomainError("stabilized_counting needs at least three dimensions");
  if (!std::is_sorted(Ns.begin(), Ns.end()) ||
      std::adjacent_find(Ns.begin(), Ns.end()) != Ns.end()) {
    throw DomainError("stabilized_counting: dimensions must be strictly increasing");
  }
  StabilizedCount out;
  out.Ns.assign(Ns.begin(), Ns.end());
  for (std::size_t N : Ns) out.counts.push_back(count_in_window(truncation(seq, N), r));
  out.stabilized = out.counts[out.counts.size() - 1] == out.counts[out.counts.size() - 2];
  return out;
}

std::vector<double> sort_by_modulus(std::vector<double> values) {
  std::stable_sort(values.begin(), values.end(), [](double a, double b) {
    const double ma = std::abs(a), mb = std::abs(b);
    return ma < mb || (ma == mb && a < b);
  });
  return values;
}

}  // namespace jacobi
