#include "jacobi_lab/hamburger.hpp"

#include <cmath>
#include <sstream>

#include "jacobi_lab/errors.hpp"

namespace jacobi {

HamburgerData lengths_angles(const PolySolution& sol, const JacobiSequence& seq) {
  if (sol.P.size() != sol.N + 1 || sol.Q.size() != sol.N + 1) {
    throw DomainError("lengths_angles: malformed solution");
  }
  if (seq.size() < sol.N) throw DomainError("lengths_angles: sequence shorter than solution");
  HamburgerData out;
  out.l.resize(sol.N + 1);
  for (std::size_t n = 0; n <= sol.N; ++n) {
    out.l[n] = sol.P[n] * sol.P[n] + sol.Q[n] * sol.Q[n];
    if (!(out.l[n] > 0)) {
      std::ostringstream os;
      os << "lengths_angles: l[" << n << "] vanishes";
      throw DomainError(os.str());
    }
  }
  out.dphi.resize(sol.N);
  for (std::size_t n = 0; n < sol.N; ++n) {
    out.dphi[n] = 1.0 / (seq.rho(n) * std::sqrt(out.l[n] * out.l[n + 1]));
    if (out.dphi[n] > 1.0 + 1e-9) {
      std::ostringstream os;
      os << "lengths_angles: |sin| increment " << out.dphi[n] << " > 1 at n = " << n
         << " (solution and sequence are inconsistent)";
      throw DomainError(os.str());
    }
  }
  return out;
}

DeltaExponents delta_exponents(HamburgerData& data, IndexWindow window) {
  if (window.first < 1 || window.first > window.last || window.last >= data.dphi.size()) {
    throw DomainError("delta_exponents: window must lie within [1, N-1]");
  }
  if (window.length() < 16) throw DomainError("delta_exponents: window length must be >= 16");
  std::vector<double> x, yl, yp;
  for (std::size_t n = window.first; n <= window.last; ++n) {
    if (!(data.l[n] > 0) || !(data.dphi[n] > 0)) {
      throw DomainError("delta_exponents: non-positive data inside the window");
    }
    x.push_back(std::log(static_cast<double>(n)));
    yl.push_back(std::log(data.l[n]));
    yp.push_back(std::log(data.dphi[n]));
  }
  const LinearFit fl = least_squares(x, yl);
  const LinearFit fp = least_squares(x, yp);
  DeltaExponents out{-fl.slope, -fp.slope, fl.slope_stderr, fp.slope_stderr, window};
  data.delta_l = out.delta_l;
  data.delta_phi = out.delta_phi;
  return out;
}

double order_bound_case2(double beta) {
  if (!(beta > 1.5 && beta < 2.0)) throw DomainError("order_bound_case2 requires 3/2 < beta < 2");
  return 1.0 / (2.0 * (beta - 1.0));
}

IntervalComparison interval_comparison_remark(double beta) {
  if (!(beta > 1.5)) throw DomainError("interval_comparison_remark requires beta > 3/2");
  const double naive = 1.0 / (beta - 0.5);
  const double improved = beta < 2.0 ? order_bound_case2(beta) : 1.0 / beta;
  return {naive, improved};
}

}  // namespace jacobi
