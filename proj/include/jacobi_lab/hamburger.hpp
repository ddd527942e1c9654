#pragma once

// Lengths and angle increments of the Hamburger Hamiltonian attached to a
// Jacobi matrix, their power-decay exponents, and the exceptional-case order
// bounds.

#include <cstddef>
#include <utility>
#include <vector>

#include "jacobi_lab/asymptotics.hpp"
#include "jacobi_lab/fit.hpp"
#include "jacobi_lab/recurrence.hpp"

namespace jacobi {

struct HamburgerData {
  std::vector<double> l;     // P_n^2 + Q_n^2, n = 0..N
  std::vector<double> dphi;  // 1/(rho_n sqrt(l_n l_{n+1})), n = 0..N-1
  double delta_l = 0.0;
  double delta_phi = 0.0;
};

/// Throws DomainError if some dphi exceeds 1 + 1e-9 or some l_n vanishes.
HamburgerData lengths_angles(const PolySolution& sol, const JacobiSequence& seq);

struct DeltaExponents {
  double delta_l = 0.0;    // -(slope of log l_n vs log n)
  double delta_phi = 0.0;  // -(slope of log dphi_n vs log n)
  double delta_l_stderr = 0.0;
  double delta_phi_stderr = 0.0;
  IndexWindow window{};
};

/// Window inside [1, N-1], length >= 16. Also fills data.delta_l / delta_phi.
DeltaExponents delta_exponents(HamburgerData& data, IndexWindow window);

/// 1/(2(beta - 1)) for 3/2 < beta < 2.
double order_bound_case2(double beta);

struct IntervalComparison {
  double naive_hi;     // 1/(beta - 1/2)
  double improved_hi;  // 1/(2(beta - 1)) for beta < 2, 1/beta otherwise
};

/// beta > 3/2.
IntervalComparison interval_comparison_remark(double beta);

}  // namespace jacobi
