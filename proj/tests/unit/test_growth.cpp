#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "jacobi_lab/errors.hpp"
#include "jacobi_lab/growth.hpp"
#include "jacobi_lab/spectrum.hpp"

using namespace jacobi;

namespace {

PowerAsymptotics m1_params() {
  PowerAsymptotics p;
  p.beta1 = 2;
  p.x0 = 1;
  p.x1 = 2;
  p.x2 = 1;
  p.y0 = 1;
  return p;
}

struct Fixture {
  JacobiSequence seq = materialize(m1_params(), 2000);
  PolySolution sol = solve_at_zero(seq);
};

const Fixture& m1() {
  static const Fixture f;
  return f;
}

std::complex<double> true_entry(std::complex<double> v, double log_scale) { return v * std::exp(log_scale); }

}  // namespace

TEST_CASE("Nevanlinna matrix at z = 0") {
  const auto& f = m1();
  for (std::size_t N : {1, 10, 2000}) {
    const auto m = nevanlinna_evaluate(f.sol, std::complex<double>(0.0), N);
    CHECK(m.log_scale == 0.0);
    CHECK(m.A == std::complex<double>(0.0));
    CHECK(m.B == std::complex<double>(-1.0));
    CHECK(m.C == std::complex<double>(1.0));
    CHECK(m.D == std::complex<double>(0.0));
    const auto real = nevanlinna_evaluate(f.sol, 0.0, N);
    CHECK(real.B == -1.0);
    CHECK(real.C == 1.0);
  }
}

TEST_CASE("determinant identity at random points") {
  const auto& f = m1();
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> rad(0.0, 10.0), ang(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 20; ++i) {
    const auto z = std::polar(rad(gen), ang(gen));
    const auto m = nevanlinna_evaluate(f.sol, z, 2000);
    CHECK(determinant_defect_relative(m) <= 1e-6);
    CHECK(determinant_defect(m) <= 1e-6);
  }
  // far out the true entries are huge; the scaled residual still holds
  const auto far = nevanlinna_evaluate(f.sol, std::complex<double>(3e5, 2e5), 2000);
  CHECK(far.log_scale > 0.0);
  CHECK(determinant_defect_relative(far) <= 1e-6);
  CHECK(std::isfinite(log_spectral_norm(far)));
}

TEST_CASE("one-step unrolling") {
  const auto& f = m1();
  const std::complex<double> z(0.3, -0.2);
  const auto m = nevanlinna_evaluate(f.sol, z, 40);
  REQUIRE(m.log_scale == 0.0);
  const auto stepped = nevanlinna_step(f.sol, m, z);
  const auto direct = nevanlinna_evaluate(f.sol, z, 41);
  REQUIRE(direct.log_scale == 0.0);
  CHECK(stepped.N == 41);
  for (auto [a, b] : {std::pair{stepped.A, direct.A}, {stepped.B, direct.B}, {stepped.C, direct.C},
                      {stepped.D, direct.D}}) {
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }

  // the real overload agrees with the complex one on the axis
  const auto re = nevanlinna_evaluate(f.sol, 7.5, 2000);
  const auto cx = nevanlinna_evaluate(f.sol, std::complex<double>(7.5, 0.0), 2000);
  CHECK(re.B * std::exp(re.log_scale) ==
        doctest::Approx(true_entry(cx.B, cx.log_scale).real()).epsilon(1e-12));
}

TEST_CASE("zeros of B against truncation counts") {
  const auto& f = m1();
  const auto scan = b_zero_scan(f.sol, 2000, 100.0, 4096, Execution{4});
  CHECK(scan.grid_points > 0);
  for (double z : scan.zeros) CHECK(z != 0.0);
  for (std::size_t i = 1; i < scan.zeros.size(); ++i) CHECK(scan.zeros[i] > scan.zeros[i - 1]);
  const std::vector<std::size_t> Ns{500, 1000, 2000};
  const auto stab = stabilized_counting(f.seq, 100.0, Ns);
  REQUIRE(stab.stabilized);
  const long diff = long(scan.zeros.size()) - long(stab.counts.back());
  CHECK(std::abs(diff) <= 2);

  const auto serial = b_zero_scan(f.sol, 2000, 100.0, 4096, Execution{1});
  CHECK(serial.zeros == scan.zeros);

  for (double z : scan.zeros) {
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const double lo = nevanlinna_evaluate(f.sol, z - h, 2000).B, hi = nevanlinna_evaluate(f.sol, z + h, 2000).B;
    CHECK(std::signbit(lo) != std::signbit(hi));
  }

  CHECK_THROWS_AS(b_zero_scan(f.sol, 2000, 100.0, 32), DomainError);
}

TEST_CASE("majorant product") {
  CHECK(log_majorant(0.0, 1.0, 2.0) == 0.0);
  // log F grows like pi sqrt(r) for g = 1, beta = 2
  const auto grid = geometric_grid(1e2, 1e6, 16);
  const auto fit = order_type_from_max_modulus([](double r) { return log_majorant(r, 1.0, 2.0); }, grid);
  CHECK(fit.order == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::abs(fit.order - 0.5) <= 0.05);
  CHECK_THROWS_AS(log_majorant(1.0, 1.0, 1.0), DomainError);

  const auto& f = m1();
  const auto rs = geometric_grid(1.0, 1e4, 12);
  const auto check = majorant_F(f.sol, m1_params(), rs, 2000, Execution{4});
  CHECK(check.g == doctest::Approx(1.0));
  CHECK(check.samples.size() == rs.size());
  CHECK(std::isfinite(check.sup_gap));
  CHECK(check.sup_gap < 20.0);
  for (const auto& sample : check.samples) CHECK(std::isfinite(sample.log_norm));
  CHECK(check.gap_nonincreasing_tail);

  PowerAsymptotics lpc;
  lpc.beta1 = 0.5;
  CHECK_THROWS_AS(majorant_F(f.sol, lpc, rs, 2000), DomainError);
}

TEST_CASE("coefficient series H") {
  std::vector<double> rho(300), q(300, 0.0);
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = double(k) * double(k);
  rho[0] = 1.0;
  const auto h = coefficient_series_H(JacobiSequence(rho, q), 300);
  CHECK(h[0] == 0.0);
  CHECK(h[1] == 0.0);
  for (std::size_t n = 2; n < 300; ++n) CHECK(h[n] == doctest::Approx(-2.0 * std::lgamma(double(n))).epsilon(1e-12));

  const auto hm = coefficient_series_H(m1().seq, 2000);
  const auto ot = order_type_from_coefficients(hm);
  CHECK(std::abs(ot.order - 0.5) <= 0.02);
  CHECK(std::abs(ot.type - 2.0) <= 0.1);

  // cross-method agreement on H itself
  const auto grid = geometric_grid(1e2, 1e5, 16);
  const auto mm = order_type_from_max_modulus([&](double r) { return log_max_modulus_series(hm, r); }, grid);
  CHECK(std::abs(mm.order - ot.order) <= 0.05);
}

TEST_CASE("order and type of synthetic series") {
  std::vector<double> exp_series(4096), bessel_like(4096);
  for (std::size_t n = 0; n < exp_series.size(); ++n) {
    exp_series[n] = -std::lgamma(n + 1.0);
    bessel_like[n] = -2.0 * std::lgamma(n + 1.0);
  }
  const auto e = order_type_from_coefficients(exp_series);
  CHECK(e.order == doctest::Approx(1.0).epsilon(0.01));
  CHECK(e.type == doctest::Approx(1.0).epsilon(0.01));
  const auto b = order_type_from_coefficients(bessel_like);
  CHECK(b.order == doctest::Approx(0.5).epsilon(0.01));
  CHECK(b.type == doctest::Approx(2.0).epsilon(0.01));

  std::vector<double> growing(128);
  for (std::size_t n = 0; n < growing.size(); ++n) growing[n] = 0.1 * n;
  CHECK_THROWS_AS(order_type_from_coefficients(growing), DomainError);
}

TEST_CASE("order and type from max modulus") {
  const auto grid = geometric_grid(1.0, 1e6, 20);
  std::vector<double> logm;
  for (double r : grid) logm.push_back(2.0 * std::sqrt(r));
  const auto fit = order_type_from_max_modulus(grid, logm);
  CHECK(std::abs(fit.order - 0.5) <= 1e-6);
  CHECK(std::abs(fit.type - 2.0) <= 1e-6);

  auto bad = logm;
  std::swap(bad[15], bad[16]);
  CHECK_THROWS_AS(order_type_from_max_modulus(grid, bad), EvaluationBreakdown);
  CHECK_THROWS_AS(order_type_from_max_modulus(std::vector<double>(grid.begin(), grid.begin() + 5),
                                              std::vector<double>(logm.begin(), logm.begin() + 5)),
                  DomainError);

  const auto& f = m1();
  const auto rb = geometric_grid(1e2, 1e5, 12);
  const auto bfit = order_type_from_max_modulus([&](double r) { return log_max_modulus_B(f.sol, 2000, r); }, rb,
                                                Execution{4});
  CHECK(std::abs(bfit.order - 0.5) <= 0.05);
  CHECK(bfit.type >= 2.0 * 0.9);
  CHECK(bfit.type <= 4.0 * 1.1);
}

TEST_CASE("convergence exponent and density of synthetic zeros") {
  std::vector<double> sq, cube, sq2;
  for (int n = 1; n <= 400; ++n) {
    sq.push_back(double(n) * n);
    cube.push_back(double(n) * n * n);
    sq2.push_back(4.0 * n * n);
  }
  CHECK(convergence_exponent_from_zeros(sq).exponent == doctest::Approx(0.5).epsilon(0.01));
  CHECK(convergence_exponent_from_zeros(cube).exponent == doctest::Approx(1.0 / 3).epsilon(0.01));
  CHECK(upper_density(sq, 2.0) == doctest::Approx(1.0));
  CHECK(upper_density(sq2, 2.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(upper_density(sq, 1.0), DomainError);
  CHECK_THROWS_AS(convergence_exponent_from_zeros(std::vector<double>(sq.begin(), sq.begin() + 10)), DomainError);

  const auto m = sorted_moduli(std::vector<double>{-3.0, 0.0, 1.0, -0.5});
  CHECK(m == std::vector<double>{0.5, 1.0, 3.0});
}

TEST_CASE("grid helper") {
  const auto g = geometric_grid(1.0, 1000.0, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == doctest::Approx(10.0));
  CHECK(g[3] == 1000.0);
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 4), DomainError);
}
