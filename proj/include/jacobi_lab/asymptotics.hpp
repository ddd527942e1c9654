#pragma once

// Power-asymptotic Jacobi parameter families and the elementary quantities
// derived from them (normalized coefficients, characteristic roots, Wouk
// margin, Carleman sums).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacobi_lab/exact.hpp"

namespace jacobi {

struct RemainderModel {
  enum class Kind { None, Deterministic, SeededNoise };
  Kind kind = Kind::None;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

enum class AsymptoticOrder { FirstOrder, SecondOrder };

/// Exact copies of the eight shape parameters, present only when every one of
/// them was supplied as a decimal string. Case boundaries are then decided in
/// rational arithmetic instead of binary64 with a tolerance.
struct ExactShape {
  Rational beta1, beta2, x0, x1, x2, y0, y1, y2;
  std::array<std::string, 8> text;  // original literals, same order
};

///   rho_n = n^beta1 (x0 + x1/n + x2/n^2 + O(...)),
///   q_n   = n^beta2 (y0 + y1/n + y2/n^2 + O(...)).
/// With order == FirstOrder the x2, y2 terms must be zero.
struct PowerAsymptotics {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double x0 = 1.0, x1 = 0.0, x2 = 0.0;
  double y0 = 1.0, y1 = 0.0, y2 = 0.0;
  double epsilon = 1.0;
  RemainderModel remainder{};
  AsymptoticOrder order = AsymptoticOrder::SecondOrder;
  std::optional<ExactShape> exact{};
};

/// Throws DomainError unless x0 > 0, y0 != 0, epsilon > 0, amplitude >= 0 and
/// FirstOrder descriptors carry x2 = y2 = 0. Also checks that `exact`, when
/// present, agrees with the binary64 fields.
void validate(const PowerAsymptotics& params);

/// Relative tolerance used for knife-edge comparisons on binary64 descriptors.
inline constexpr double kTieTolerance = 1e-12;

/// beta1 == beta2 and 2 x0 == |y0| (i.e. lim |q_n|/rho_n = 2), decided exactly
/// when exact data is present, else with |2x0 - |y0|| <= 1e-12 max(2x0, |y0|)
/// and |beta1 - beta2| <= 1e-12 max(|beta1|, |beta2|).
bool is_exceptional(const PowerAsymptotics& params);

/// Returns a copy with every shape parameter (x_i, y_i) multiplied by lambda > 0.
/// Exact data is dropped.
PowerAsymptotics scaled(const PowerAsymptotics& params, double lambda);

class JacobiSequence {
 public:
  JacobiSequence(std::vector<double> rho, std::vector<double> q,
                 std::optional<PowerAsymptotics> source = std::nullopt);

  std::size_t size() const noexcept { return rho_.size(); }
  std::span<const double> rho() const noexcept { return rho_; }
  std::span<const double> q() const noexcept { return q_; }
  double rho(std::size_t n) const { return rho_.at(n); }
  double q(std::size_t n) const { return q_.at(n); }
  const std::optional<PowerAsymptotics>& source() const noexcept { return source_; }
  bool is_external() const noexcept { return !source_.has_value(); }

  /// First n entries, keeping the descriptor reference.
  JacobiSequence prefix(std::size_t n) const;

 private:
  std::vector<double> rho_;
  std::vector<double> q_;
  std::optional<PowerAsymptotics> source_;
};

/// Evaluates the descriptor at n = 0..N-1 with the index-0 guard m = max(n, 1).
JacobiSequence materialize(const PowerAsymptotics& params, std::size_t N);

struct NormalizedCoefficients {
  double c0;  // rho_n / rho_{n+1}
  double c1;  // q_{n+1} / rho_{n+1}
};

NormalizedCoefficients normalized_coefficients(const JacobiSequence& seq, std::size_t n);

/// Both roots of x^2 + c1 x + c0 = 0. Complex-conjugate pair (positive
/// imaginary part first) when c1^2/4 < c0.
std::pair<std::complex<double>, std::complex<double>> characteristic_roots(double c0, double c1);

/// margin[n] = rho[n] + rho[n-1] - |q[n]|, with rho[-1] := 0 at n = 0.
std::vector<double> wouk_margin(const JacobiSequence& seq);

struct WoukCoefficients {
  double z1;
  std::optional<double> z2;  // only for SecondOrder descriptors
};

/// Leading coefficients of rho_n + rho_{n-1} - |q_n| = n^beta (z1/n + z2/n^2 + ...)
/// in the exceptional case. Rejects non-exceptional descriptors.
WoukCoefficients z1_z2(const PowerAsymptotics& params);

/// Number of n in [1, N-2] with rho[n]^2 < rho[n+1] rho[n-1].
std::size_t log_concavity_defect(const JacobiSequence& seq);
/// Same count restricted to n >= first.
std::size_t log_concavity_defect(const JacobiSequence& seq, std::size_t first);

enum class SeriesVerdict { Divergent, Convergent, Inconclusive };

struct CarlemanResult {
  double partial_sum;
  SeriesVerdict verdict;
};

/// sum 1/rho[n]; the verdict comes from the descriptor (divergent iff beta1 <= 1),
/// Inconclusive for external sequences.
CarlemanResult carleman_sum(const JacobiSequence& seq);

const char* to_string(RemainderModel::Kind kind);
const char* to_string(AsymptoticOrder order);
const char* to_string(SeriesVerdict verdict);

}  // namespace jacobi
