#include "jacobi_lab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include "jacobi_lab/errors.hpp"
#include "tie_compare.hpp"

namespace jacobi {

Rational parse_decimal(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern) || (m[2].length() == 0 && m[3].length() == 0)) {
    throw ParseError("not a decimal literal: '" + s + "'");
  }
  using boost::multiprecision::cpp_int;
  const std::string digits = m[2].str() + m[3].str();
  cpp_int mantissa(digits.empty() ? std::string("0") : digits);
  long exponent = -static_cast<long>(m[3].length());
  if (m[4].matched) {
    const long e = std::stol(m[4].str());
    if (std::abs(e) > 4000) throw ParseError("decimal exponent out of range: '" + s + "'");
    exponent += e;
  }
  if (m[1] == "-") mantissa = -mantissa;
  const cpp_int ten_pow = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(std::abs(exponent)));
  return exponent >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
}

void validate(const PowerAsymptotics& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  for (double v : {p.beta1, p.beta2, p.x0, p.x1, p.x2, p.y0, p.y1, p.y2, p.epsilon,
                   p.remainder.amplitude}) {
    if (!finite(v)) throw DomainError("descriptor fields must be finite");
  }
  if (!(p.x0 > 0)) throw DomainError("descriptor requires x0 > 0");
  if (p.y0 == 0) throw DomainError("descriptor requires y0 != 0");
  if (!(p.epsilon > 0)) throw DomainError("descriptor requires epsilon > 0");
  if (p.remainder.amplitude < 0) throw DomainError("remainder amplitude must be nonnegative");
  if (p.order == AsymptoticOrder::FirstOrder && (p.x2 != 0 || p.y2 != 0)) {
    throw DomainError("FirstOrder descriptor must have x2 = y2 = 0");
  }
  if (p.exact) {
    const auto& e = *p.exact;
    const std::array<std::pair<const Rational*, double>, 8> pairs{{{&e.beta1, p.beta1},
                                                                   {&e.beta2, p.beta2},
                                                                   {&e.x0, p.x0},
                                                                   {&e.x1, p.x1},
                                                                   {&e.x2, p.x2},
                                                                   {&e.y0, p.y0},
                                                                   {&e.y1, p.y1},
                                                                   {&e.y2, p.y2}}};
    for (const auto& [r, d] : pairs) {
      const double rd = r->convert_to<double>();
      if (std::abs(rd - d) > 1e-15 * std::max(1.0, std::abs(d))) {
        throw DomainError("exact descriptor data disagrees with binary64 fields");
      }
    }
  }
}

bool is_exceptional(const PowerAsymptotics& params) {
  detail::TieComparator cmp(params);
  return detail::exceptional(cmp);
}

PowerAsymptotics scaled(const PowerAsymptotics& params, double lambda) {
  if (!(lambda > 0)) throw DomainError("scale factor must be positive");
  PowerAsymptotics out = params;
  for (double* v : {&out.x0, &out.x1, &out.x2, &out.y0, &out.y1, &out.y2}) *v *= lambda;
  out.exact.reset();
  return out;
}

JacobiSequence::JacobiSequence(std::vector<double> rho, std::vector<double> q,
                               std::optional<PowerAsymptotics> source)
    : rho_(std::move(rho)), q_(std::move(q)), source_(std::move(source)) {
  if (rho_.size() != q_.size()) throw DomainError("rho and q must have equal length");
  for (std::size_t n = 0; n < rho_.size(); ++n) {
    if (!(rho_[n] > 0) || !std::isfinite(rho_[n])) {
      std::ostringstream os;
      os << "rho[" << n << "] = " << rho_[n] << " is not a positive finite number";
      throw DomainError(os.str());
    }
    if (!std::isfinite(q_[n])) throw DomainError("q must be finite");
  }
}

JacobiSequence JacobiSequence::prefix(std::size_t n) const {
  if (n > size()) throw DomainError("prefix longer than sequence");
  return JacobiSequence(std::vector<double>(rho_.begin(), rho_.begin() + n),
                        std::vector<double>(q_.begin(), q_.begin() + n), source_);
}

namespace {

// Portable uniform draw in [-1, 1]: mt19937_64 output is fully specified by the
// standard, the distribution classes are not.
double unit_symmetric(std::mt19937_64& gen) {
  const std::uint64_t bits = gen() >> 11;
  return 2.0 * (static_cast<double>(bits) * 0x1.0p-53) - 1.0;
}

}  // namespace

JacobiSequence materialize(const PowerAsymptotics& params, std::size_t N) {
  validate(params);
  if (N < 2) throw DomainError("materialize requires N >= 2");
  const bool second = params.order == AsymptoticOrder::SecondOrder;
  const double rem_power = -(second ? 2.0 : 1.0) - params.epsilon;
  std::mt19937_64 gen(params.remainder.seed);

  std::vector<double> rho(N), q(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double m = static_cast<double>(std::max<std::size_t>(n, 1));
    double rem = 0.0;
    switch (params.remainder.kind) {
      case RemainderModel::Kind::None:
        break;
      case RemainderModel::Kind::Deterministic:
        rem = params.remainder.amplitude * std::pow(m, rem_power);
        break;
      case RemainderModel::Kind::SeededNoise:
        rem = unit_symmetric(gen) * params.remainder.amplitude * std::pow(m, rem_power);
        break;
    }
    const double inv = 1.0 / m;
    rho[n] = std::pow(m, params.beta1) * (params.x0 + params.x1 * inv + params.x2 * inv * inv + rem);
    q[n] = std::pow(m, params.beta2) * (params.y0 + params.y1 * inv + params.y2 * inv * inv + rem);
    if (!(rho[n] > 0)) {
      std::ostringstream os;
      os << "materialized rho[" << n << "] = " << rho[n]
         << " is not positive (remainder amplitude too large?)";
      throw DomainError(os.str());
    }
  }
  return JacobiSequence(std::move(rho), std::move(q), params);
}

NormalizedCoefficients normalized_coefficients(const JacobiSequence& seq, std::size_t n) {
  if (n + 1 >= seq.size()) throw DomainError("normalized_coefficients: index out of range");
  const auto rho = seq.rho();
  return {rho[n] / rho[n + 1], seq.q()[n + 1] / rho[n + 1]};
}

std::pair<std::complex<double>, std::complex<double>> characteristic_roots(double c0, double c1) {
  const double half = -0.5 * c1;
  const double disc = half * half - c0;
  if (disc < 0) {
    const double im = std::sqrt(-disc);
    return {{half, im}, {half, -im}};
  }
  // Real roots; take the larger-magnitude one first to avoid cancellation.
  const double big = half + std::copysign(std::sqrt(disc), half);
  if (big == 0) return {{0.0, 0.0}, {0.0, 0.0}};
  const double small = c0 / big;
  return {{big, 0.0}, {small, 0.0}};
}

std::vector<double> wouk_margin(const JacobiSequence& seq) {
  if (seq.size() < 2) throw DomainError("wouk_margin requires N >= 2");
  const auto rho = seq.rho();
  const auto q = seq.q();
  std::vector<double> margin(seq.size());
  margin[0] = rho[0] - std::abs(q[0]);
  for (std::size_t n = 1; n < seq.size(); ++n) margin[n] = rho[n] + rho[n - 1] - std::abs(q[n]);
  return margin;
}

WoukCoefficients z1_z2(const PowerAsymptotics& params) {
  validate(params);
  if (!is_exceptional(params)) {
    throw DomainError("z1_z2 requires the exceptional case beta1 = beta2, 2 x0 = |y0|");
  }
  const detail::Shape<double> s{params.beta1, params.beta2, params.x0, params.x1,
                                params.x2,    params.y0,    params.y1, params.y2};
  WoukCoefficients out{params.x0 * (detail::b_star(s) - params.beta1), std::nullopt};
  if (params.order == AsymptoticOrder::SecondOrder) out.z2 = params.x0 * detail::z2_over_x0(s);
  return out;
}

std::size_t log_concavity_defect(const JacobiSequence& seq, std::size_t first) {
  if (seq.size() < 3) throw DomainError("log_concavity_defect requires N >= 3");
  const auto rho = seq.rho();
  std::size_t count = 0;
  for (std::size_t n = std::max<std::size_t>(first, 1); n + 1 < seq.size(); ++n) {
    if (rho[n] * rho[n] < rho[n + 1] * rho[n - 1]) ++count;
  }
  return count;
}

std::size_t log_concavity_defect(const JacobiSequence& seq) { return log_concavity_defect(seq, 1); }

CarlemanResult carleman_sum(const JacobiSequence& seq) {
  double sum = 0.0;
  for (double r : seq.rho()) sum += 1.0 / r;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  if (seq.source()) {
    detail::TieComparator cmp(*seq.source());
    verdict = cmp.compare(detail::beta1_of, detail::constant<1, 1>, "beta1 = 1") ==
                      detail::Sign::Positive
                  ? SeriesVerdict::Convergent
                  : SeriesVerdict::Divergent;
  }
  return {sum, verdict};
}

const char* to_string(RemainderModel::Kind kind) {
  switch (kind) {
    case RemainderModel::Kind::None: return "None";
    case RemainderModel::Kind::Deterministic: return "Deterministic";
    case RemainderModel::Kind::SeededNoise: return "SeededNoise";
  }
  return "?";
}

const char* to_string(AsymptoticOrder order) {
  return order == AsymptoticOrder::FirstOrder ? "FirstOrder" : "SecondOrder";
}

const char* to_string(SeriesVerdict verdict) {
  switch (verdict) {
    case SeriesVerdict::Divergent: return "Divergent";
    case SeriesVerdict::Convergent: return "Convergent";
    case SeriesVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

}  // namespace jacobi
