#include <cmath>

#include <doctest.h>

#include "jacobi_lab/errors.hpp"
#include "jacobi_lab/hamburger.hpp"

using namespace jacobi;

namespace {

PowerAsymptotics shape(double beta, double x0, double x1, double x2, double y0, double y1, double y2) {
  PowerAsymptotics p;
  p.beta1 = p.beta2 = beta;
  p.x0 = x0;
  p.x1 = x1;
  p.x2 = x2;
  p.y0 = y0;
  p.y1 = y1;
  p.y2 = y2;
  return p;
}

}  // namespace

TEST_CASE("orthogonal first step") {
  // P_0 = 1, Q_0 = 0, P_1 = 0, Q_1 = 1/rho_0 when q_0 = 0
  const JacobiSequence seq({4.0, 4.0, 4.0}, {0.0, 0.0, 0.0});
  const auto h = lengths_angles(solve_at_zero(seq), seq);
  CHECK(h.l[0] == 1.0);
  CHECK(h.l[1] == doctest::Approx(1.0 / 16));
  CHECK(h.dphi[0] == doctest::Approx(1.0));
  CHECK(h.l.size() == 4);
  CHECK(h.dphi.size() == 3);
}

TEST_CASE("definitional identity and positivity") {
  PowerAsymptotics p;
  p.beta1 = 2;
  p.x0 = 1;
  p.x1 = 2;
  p.x2 = 1;
  p.y0 = 1;
  const auto seq = materialize(p, 5000);
  const auto h = lengths_angles(solve_at_zero(seq), seq);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t n = 0; n < h.dphi.size(); ++n) {
    CHECK(h.l[n] > 0.0);
    CHECK(h.dphi[n] <= 1.0 + 1e-9);
    const double id = h.dphi[n] * seq.rho(n) * std::sqrt(h.l[n] * h.l[n + 1]);
    CHECK(std::abs(id - 1.0) <= 4 * std::numeric_limits<double>::epsilon());
  }
  for (std::size_t n = 100; n <= 5000; ++n) {
    const double s = h.l[n] * double(n) * double(n);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(lo > 0.0);
  CHECK(hi / lo < 10.0);
}

TEST_CASE("inconsistent input is rejected") {
  const JacobiSequence seq({4.0, 4.0, 4.0}, {0.0, 0.0, 0.0});
  auto sol = solve_at_zero(seq);
  sol.P[1] = 0.0;
  sol.Q[1] = 1e-3;  // breaks the Wronskian: dphi_0 = 1/(4 * 1e-3) > 1
  CHECK_THROWS_AS(lengths_angles(sol, seq), DomainError);
}

TEST_CASE("delta exponents on exact powers") {
  HamburgerData d;
  const std::size_t N = 200;
  for (std::size_t n = 0; n <= N; ++n) d.l.push_back(std::pow(std::max<double>(n, 1), -1.0));
  for (std::size_t n = 0; n < N; ++n) d.dphi.push_back(std::pow(std::max<double>(n, 1), -2.0));
  const auto e = delta_exponents(d, {10, 150});
  CHECK(std::abs(e.delta_l - 1.0) <= 1e-6);
  CHECK(std::abs(e.delta_phi - 2.0) <= 1e-6);
  CHECK(d.delta_l == e.delta_l);
  CHECK_THROWS_AS(delta_exponents(d, {10, 20}), DomainError);
  CHECK_THROWS_AS(delta_exponents(d, {0, 100}), DomainError);
  CHECK_THROWS_AS(delta_exponents(d, {10, 200}), DomainError);
}

TEST_CASE("delta exponents of exceptional lcc models") {
  // case (ii): gamma = (1 - 2 beta)/4 with beta = 3
  const auto p = shape(3, 1, 2, 0, -2, 0, 0);
  const auto seq = materialize(p, 5000);
  auto h = lengths_angles(solve_at_zero(seq), seq);
  const auto e = delta_exponents(h, {100, 4999});
  CHECK(std::abs(e.delta_l - 2.5) <= 0.1);
  CHECK(std::abs(e.delta_phi - 0.5) <= 0.1);
  CHECK(std::abs(e.delta_l + e.delta_phi - 3.0) <= 0.1);

  // case (iii) on the boundary beta = B*
  const auto b = shape(3, 1, 1.5, 2, -2, 0, 0);
  const auto sb = materialize(b, 5000);
  auto hb = lengths_angles(solve_at_zero(sb), sb);
  const auto eb = delta_exponents(hb, {100, 4999});
  CHECK(std::abs(eb.delta_l + eb.delta_phi - 3.0) <= 0.1);
}

TEST_CASE("exceptional order bound") {
  CHECK(order_bound_case2(1.75) == doctest::Approx(2.0 / 3));
  CHECK(order_bound_case2(1.6) == doctest::Approx(1 / 1.2));
  CHECK(order_bound_case2(std::nextafter(2.0, 0.0)) == doctest::Approx(0.5));
  CHECK(1 / 1.6 < order_bound_case2(1.6));
  CHECK_THROWS_AS(order_bound_case2(1.5), DomainError);
  CHECK_THROWS_AS(order_bound_case2(2.0), DomainError);
  for (double beta = 1.51; beta < 2.0; beta += 0.01) CHECK(order_bound_case2(beta) < 1 / (beta - 0.5));
}

TEST_CASE("interval comparison") {
  auto c = interval_comparison_remark(1.75);
  CHECK(c.naive_hi == doctest::Approx(0.8));
  CHECK(c.improved_hi == doctest::Approx(2.0 / 3));
  c = interval_comparison_remark(2.0);
  CHECK(c.naive_hi == doctest::Approx(2.0 / 3));
  CHECK(c.improved_hi == doctest::Approx(0.5));
  c = interval_comparison_remark(3.0);
  CHECK(c.naive_hi == doctest::Approx(0.4));
  CHECK(c.improved_hi == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(interval_comparison_remark(1.5), DomainError);
}
