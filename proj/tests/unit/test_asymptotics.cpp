#include <cmath>
#include <random>

#include <doctest.h>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/errors.hpp"

using namespace jacobi;

namespace {

PowerAsymptotics shape(double b1, double b2, double x0, double x1, double x2, double y0, double y1,
                       double y2) {
  PowerAsymptotics p;
  p.beta1 = b1;
  p.beta2 = b2;
  p.x0 = x0;
  p.x1 = x1;
  p.x2 = x2;
  p.y0 = y0;
  p.y1 = y1;
  p.y2 = y2;
  return p;
}

JacobiSequence free_sequence(std::size_t N) {
  return JacobiSequence(std::vector<double>(N, 1.0), std::vector<double>(N, 0.0));
}

}  // namespace

TEST_CASE("materialize evaluates the expansion with the index-0 guard") {
  const auto p = shape(2, 0, 1, 2, 1, 1, 0, 0);
  const auto seq = materialize(p, 10);
  CHECK(seq.rho(3) == doctest::Approx(16.0).epsilon(1e-15));
  for (std::size_t n = 1; n < 10; ++n) CHECK(seq.rho(n) == doctest::Approx((n + 1.0) * (n + 1.0)));
  CHECK(seq.rho(0) == doctest::Approx(1 + 2 + 1));
  CHECK(seq.rho(0) == seq.rho(1));
  CHECK(seq.q(0) == 1.0);
  CHECK_FALSE(seq.is_external());
}

TEST_CASE("zero-amplitude deterministic remainder matches no remainder") {
  auto p = shape(1, 0, 1, 0, 0, 1, 0, 0);
  const auto base = materialize(p, 200);
  p.remainder.kind = RemainderModel::Kind::Deterministic;
  p.remainder.amplitude = 0.0;
  const auto same = materialize(p, 200);
  for (std::size_t n = 0; n < 200; ++n) {
    CHECK(base.rho(n) == same.rho(n));
    CHECK(base.q(n) == same.q(n));
  }
}

TEST_CASE("materialize is deterministic under seeded noise") {
  auto p = shape(2, 0, 1, 0, 0, 1, 0, 0);
  p.remainder = {RemainderModel::Kind::SeededNoise, 0.1, 42};
  const auto a = materialize(p, 500);
  const auto b = materialize(p, 500);
  for (std::size_t n = 0; n < 500; ++n) CHECK(a.rho(n) == b.rho(n));
  p.remainder.seed = 43;
  const auto c = materialize(p, 500);
  bool differs = false;
  for (std::size_t n = 0; n < 500; ++n) differs = differs || a.rho(n) != c.rho(n);
  CHECK(differs);
}

TEST_CASE("materialize rejects bad input") {
  CHECK_THROWS_AS(materialize(shape(2, 0, 1, 0, 0, 1, 0, 0), 1), DomainError);
  CHECK_THROWS_AS(materialize(shape(2, 0, -1, 0, 0, 1, 0, 0), 10), DomainError);
  CHECK_THROWS_AS(materialize(shape(2, 0, 1, 0, 0, 0, 0, 0), 10), DomainError);
  CHECK_THROWS_AS(materialize(shape(2, 0, 1, -3, 0, 1, 0, 0), 10), DomainError);
  auto p = shape(2, 0, 1, 0, 0, 1, 0, 0);
  p.remainder = {RemainderModel::Kind::Deterministic, 2.0, 0};
  CHECK_NOTHROW(materialize(p, 10));
  p.remainder.amplitude = -1.0;
  CHECK_THROWS_AS(materialize(p, 10), DomainError);
  auto f = shape(2, 0, 1, 0, 1, 1, 0, 0);
  f.order = AsymptoticOrder::FirstOrder;
  CHECK_THROWS_AS(materialize(f, 10), DomainError);
}

TEST_CASE("second-order expansion is reproduced to a few ulp") {
  const auto p = shape(2.5, 1.0, 1.5, -0.25, 0.75, 2.0, 0.5, -1.0);
  const auto seq = materialize(p, 2000);
  for (std::size_t n = 1; n < 2000; ++n) {
    const double m = static_cast<double>(n);
    const double lead = p.x0 + p.x1 / m + p.x2 / (m * m);
    const double got = seq.rho(n) * std::pow(m, -p.beta1);
    CHECK(std::abs(got - lead) <= 8 * std::numeric_limits<double>::epsilon() * std::abs(lead));
  }
}

TEST_CASE("normalized coefficients") {
  const auto c = normalized_coefficients(free_sequence(5), 2);
  CHECK(c.c0 == 1.0);
  CHECK(c.c1 == 0.0);

  const auto m1 = materialize(shape(2, 0, 1, 2, 1, 1, 0, 0), 10);
  const auto d = normalized_coefficients(m1, 2);
  CHECK(d.c0 == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(d.c1 == doctest::Approx(0.0625).epsilon(1e-15));

  CHECK_THROWS_AS(normalized_coefficients(m1, 9), DomainError);

  const auto p = shape(3, 1, 2, 0, 0, 5, 0, 0);
  const std::size_t n = 200000;
  const auto seq = materialize(p, n + 2);
  const auto t = normalized_coefficients(seq, n);
  CHECK(t.c1 * std::pow(double(n), 2.0) == doctest::Approx(2.5).epsilon(1e-4));
}

TEST_CASE("characteristic roots") {
  auto [a, b] = characteristic_roots(1.0, 0.0);
  CHECK(a.real() == doctest::Approx(0.0));
  CHECK(a.imag() == doctest::Approx(1.0));
  CHECK(b.imag() == doctest::Approx(-1.0));

  // limit of the normalized polynomial when beta1 = beta2, x0 = y0 = 1
  std::tie(a, b) = characteristic_roots(1.0, 1.0);
  CHECK(a.real() == doctest::Approx(-0.5));
  CHECK(a.imag() == doctest::Approx(std::sqrt(0.75)));
  CHECK(b.imag() == doctest::Approx(-std::sqrt(0.75)));

  std::tie(a, b) = characteristic_roots(0.25, -1.0);
  CHECK(a == b);
  CHECK(a.real() == doctest::Approx(0.5));
  CHECK(a.imag() == 0.0);

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double c0 = u(gen), c1 = u(gen);
    const auto [r1, r2] = characteristic_roots(c0, c1);
    const auto prod = r1 * r2, sum = r1 + r2;
    CHECK(std::abs(prod - c0) <= 1e-12 * std::max(1.0, std::abs(c0)));
    CHECK(std::abs(sum + c1) <= 1e-12 * std::max(1.0, std::abs(c1)));
  }
}

TEST_CASE("Wouk margin") {
  const auto m = wouk_margin(free_sequence(50));
  for (std::size_t n = 1; n < m.size(); ++n) CHECK(m[n] == 2.0);

  std::vector<double> rho, q;
  for (int n = 0; n < 6; ++n) {
    rho.push_back(n + 1.0);
    q.push_back(2.0 * (n + 1.0));
  }
  CHECK(wouk_margin(JacobiSequence(rho, q))[2] == -1.0);

  // exceptional model with z1 = 1, beta = 3
  const auto p = shape(3, 3, 1, 2, 0, -2, 0, 0);
  const std::size_t N = 100000;
  const auto w = wouk_margin(materialize(p, N));
  const double n = N - 1.0;
  CHECK(w[N - 1] / std::pow(n, 2.0) == doctest::Approx(z1_z2(p).z1).epsilon(1e-3));
}

TEST_CASE("z1 and z2 of exceptional descriptors") {
  CHECK(z1_z2(shape(3, 3, 1, 2, 0, -2, 0, 0)).z1 == doctest::Approx(1.0));
  CHECK(z1_z2(shape(0, 0, 1, 0, 0, 2, 0, 0)).z1 == doctest::Approx(0.0));
  const auto w = z1_z2(shape(2, 2, 1, 1, 0, -2, 0, 1));
  REQUIRE(w.z2);
  CHECK(*w.z2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(z1_z2(shape(2, 0, 1, 0, 0, 1, 0, 0)), DomainError);

  auto f = shape(3, 3, 1, 2, 0, -2, 0, 0);
  f.order = AsymptoticOrder::FirstOrder;
  CHECK_FALSE(z1_z2(f).z2.has_value());

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.2, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double x0 = pos(gen), beta = pos(gen);
    const auto p = shape(beta, beta, x0, u(gen), u(gen), (i % 2 ? 2 : -2) * x0, u(gen), u(gen));
    const double lambda = pos(gen);
    const auto a = z1_z2(p), b = z1_z2(scaled(p, lambda));
    CHECK(b.z1 == doctest::Approx(lambda * a.z1).epsilon(1e-10));
    CHECK(*b.z2 == doctest::Approx(lambda * *a.z2).epsilon(1e-10));
  }
}

TEST_CASE("log-concavity defect") {
  std::vector<double> sq(10001);
  for (std::size_t n = 0; n < sq.size(); ++n) sq[n] = (n + 1.0) * (n + 1.0);
  CHECK(log_concavity_defect(JacobiSequence(sq, std::vector<double>(sq.size(), 1.0))) == 0);
  // the index-0 guard repeats rho_0 = rho_1, a single defect at n = 1
  CHECK(log_concavity_defect(materialize(shape(2, 0, 1, 2, 1, 1, 0, 0), 10001)) == 1);
  CHECK(log_concavity_defect(materialize(shape(2, 0, 1, 2, 1, 1, 0, 0), 10001), 2) == 0);
  CHECK(log_concavity_defect(JacobiSequence({1, 1, 10}, {0, 0, 0})) == 1);
  std::vector<double> geo(40);
  for (std::size_t n = 0; n < geo.size(); ++n) geo[n] = std::ldexp(1.0, int(n));
  CHECK(log_concavity_defect(JacobiSequence(geo, std::vector<double>(40, 0.0))) == 0);
  CHECK_THROWS_AS(log_concavity_defect(free_sequence(2)), DomainError);
}

TEST_CASE("Carleman sums") {
  const auto p1 = shape(1, 0, 1, 0, 0, 1, 0, 0);
  CHECK(carleman_sum(materialize(p1, 100)).verdict == SeriesVerdict::Divergent);
  const auto p2 = shape(2, 0, 1, 0, 0, 1, 0, 0);
  const auto c = carleman_sum(materialize(p2, 1000));
  CHECK(c.verdict == SeriesVerdict::Convergent);
  CHECK(c.partial_sum > 1.0);
  const auto e = carleman_sum(free_sequence(100));
  CHECK(e.verdict == SeriesVerdict::Inconclusive);
  CHECK(e.partial_sum == doctest::Approx(100.0));
}

TEST_CASE("exceptional detection") {
  CHECK(is_exceptional(shape(3, 3, 1, 0, 0, 2, 0, 0)));
  CHECK(is_exceptional(shape(3, 3, 1, 0, 0, -2, 0, 0)));
  CHECK_FALSE(is_exceptional(shape(3, 3, 1, 0, 0, 2.1, 0, 0)));
  CHECK_FALSE(is_exceptional(shape(3, 2, 1, 0, 0, 2, 0, 0)));
  CHECK(is_exceptional(shape(3, 3, 1, 0, 0, 2 * (1 + 1e-14), 0, 0)));
}
