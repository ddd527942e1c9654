#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jacobi_lab/acceptance.hpp"
#include "jacobi_lab/classifier.hpp"
#include "jacobi_lab/errors.hpp"
#include "jacobi_lab/growth.hpp"
#include "jacobi_lab/hamburger.hpp"
#include "jacobi_lab/io.hpp"
#include "jacobi_lab/recurrence.hpp"
#include "jacobi_lab/spectrum.hpp"

namespace py = pybind11;
using namespace jacobi;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw DomainError("expected a one-dimensional array");
  return std::vector<double>(a.data(), a.data() + a.size());
}

Execution jobs(unsigned k) { return Execution{k == 0 ? Execution::hardware().jobs : k}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jacobi matrices with power asymptotics";
  m.attr("__version__") = kToolVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RecurrenceOverflow>(m, "RecurrenceOverflow", PyExc_OverflowError);
  py::register_exception<EvaluationBreakdown>(m, "EvaluationBreakdown", PyExc_ArithmeticError);

  py::enum_<Regime>(m, "Regime")
      .value("LCC", Regime::LCC)
      .value("LPC", Regime::LPC)
      .value("Undetermined", Regime::Undetermined);

  py::class_<PowerAsymptotics>(m, "PowerAsymptotics")
      .def(py::init<>())
      .def_readwrite("beta1", &PowerAsymptotics::beta1)
      .def_readwrite("beta2", &PowerAsymptotics::beta2)
      .def_readwrite("x0", &PowerAsymptotics::x0)
      .def_readwrite("x1", &PowerAsymptotics::x1)
      .def_readwrite("x2", &PowerAsymptotics::x2)
      .def_readwrite("y0", &PowerAsymptotics::y0)
      .def_readwrite("y1", &PowerAsymptotics::y1)
      .def_readwrite("y2", &PowerAsymptotics::y2)
      .def_readwrite("epsilon", &PowerAsymptotics::epsilon)
      .def_property_readonly("exact", [](const PowerAsymptotics& p) { return p.exact.has_value(); })
      .def("to_json", [](const PowerAsymptotics& p) { return to_json(p).dump(); })
      .def("__repr__", [](const PowerAsymptotics& p) { return "PowerAsymptotics(" + to_json(p).dump() + ")"; });

  m.def("parse_descriptor", [](const std::string& text) { return parse_descriptor(text); },
        py::arg("text"), "Descriptor from a JSON document.");
  m.def("is_exceptional", &is_exceptional);

  py::class_<JacobiSequence>(m, "JacobiSequence")
      .def(py::init([](const py::array_t<double, py::array::c_style | py::array::forcecast>& rho,
                       const py::array_t<double, py::array::c_style | py::array::forcecast>& q) {
             return JacobiSequence(to_vector(rho), to_vector(q));
           }),
           py::arg("rho"), py::arg("q"))
      .def("__len__", &JacobiSequence::size)
      .def_property_readonly("rho", [](const JacobiSequence& s) { return to_array(s.rho()); })
      .def_property_readonly("q", [](const JacobiSequence& s) { return to_array(s.q()); })
      .def_property_readonly("is_external", &JacobiSequence::is_external);

  m.def("materialize", &materialize, py::arg("params"), py::arg("N"));

  py::class_<Classification>(m, "Classification")
      .def_readonly("regime", &Classification::regime)
      .def_readonly("case_label", &Classification::case_label)
      .def_property_readonly("predicted_exponent",
                             [](const Classification& c) -> py::object {
                               if (!c.predicted_exponent) return py::none();
                               return py::make_tuple(c.predicted_exponent->lo, c.predicted_exponent->hi);
                             })
      .def_readonly("density_lower", &Classification::density_lower)
      .def_readonly("density_upper", &Classification::density_upper)
      .def_readonly("a_constant", &Classification::a_constant)
      .def_readonly("z1", &Classification::z1)
      .def_readonly("z2", &Classification::z2)
      .def_readonly("d", &Classification::d)
      .def_readonly("notes", &Classification::notes)
      .def_property_readonly("summary", [](const Classification& c) { return summary_line(c); })
      .def("to_json", [](const Classification& c) { return to_json(c).dump(); });

  m.def("classify", &classify, py::arg("params"));
  m.def("classification_report_json",
        [](const PowerAsymptotics& p, std::size_t n) { return to_json(classification_report(p, n)).dump(); },
        py::arg("params"), py::arg("sample_size") = 4096);

  py::class_<PolySolution>(m, "PolySolution")
      .def_readonly("N", &PolySolution::N)
      .def_property_readonly("P", [](const PolySolution& s) { return to_array(s.P); })
      .def_property_readonly("Q", [](const PolySolution& s) { return to_array(s.Q); });

  m.def("solve_at_zero", &solve_at_zero, py::arg("seq"));
  m.def("wronskian_residuals",
        [](const PolySolution& s, const JacobiSequence& q) { return to_array(wronskian_residuals(s, q)); });
  m.def(
      "norm_exponent",
      [](const PolySolution& s, std::size_t first, std::size_t last) {
        const ExponentFit f = norm_exponent(s, {first, last});
        return py::dict(py::arg("slope") = f.slope, py::arg("stderr") = f.slope_stderr,
                        py::arg("r_squared") = f.r_squared);
      },
      py::arg("sol"), py::arg("first"), py::arg("last"));
  m.def("summability_trend", [](const PolySolution& s) {
    return std::string(to_string(square_summability_probe(s).verdict));
  });

  m.def("sturm_count", py::overload_cast<const JacobiSequence&, std::size_t, double>(&sturm_count),
        py::arg("seq"), py::arg("N"), py::arg("x"));
  m.def(
      "eigenvalues_in",
      [](const JacobiSequence& s, std::size_t N, double a, double b, double tol, unsigned k) {
        return to_array(eigenvalues_in(s, N, a, b, tol, jobs(k)));
      },
      py::arg("seq"), py::arg("N"), py::arg("a"), py::arg("b"), py::arg("tol") = 0.0, py::arg("jobs") = 1);
  m.def(
      "full_spectrum",
      [](const JacobiSequence& s, std::size_t N, double tol, unsigned k) {
        return to_array(full_spectrum(s, N, tol, jobs(k)).eigenvalues);
      },
      py::arg("seq"), py::arg("N"), py::arg("tol") = 0.0, py::arg("jobs") = 1);

  m.def(
      "nevanlinna_evaluate",
      [](const PolySolution& s, std::complex<double> z, std::size_t N) {
        const ComplexPartial p = nevanlinna_evaluate(s, z, N);
        return py::make_tuple(p.A, p.B, p.C, p.D, p.log_scale);
      },
      py::arg("sol"), py::arg("z"), py::arg("N"),
      "(A, B, C, D, log_scale); true entries are the scaled ones times exp(log_scale).");
  m.def(
      "b_zero_scan",
      [](const PolySolution& s, std::size_t N, double r, std::size_t grid, unsigned k) {
        return to_array(b_zero_scan(s, N, r, grid, jobs(k)).zeros);
      },
      py::arg("sol"), py::arg("N"), py::arg("r"), py::arg("grid") = 4096, py::arg("jobs") = 1);
  m.def("coefficient_series_H",
        [](const JacobiSequence& s, std::size_t N) { return to_array(coefficient_series_H(s, N)); });
  m.def("order_type_from_coefficients",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& c) {
          const OrderType o = order_type_from_coefficients(to_vector(c));
          return py::make_tuple(o.order, o.type);
        });
  m.def("order_type_from_max_modulus",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& r,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& log_m) {
          const MaxModulusFit f = order_type_from_max_modulus(to_vector(r), to_vector(log_m));
          return py::make_tuple(f.order, f.type);
        });
  m.def("convergence_exponent_from_zeros",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& z) {
          return convergence_exponent_from_zeros(sorted_moduli(to_vector(z))).exponent;
        });
  m.def("upper_density", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& z,
                            double beta) { return upper_density(sorted_moduli(to_vector(z)), beta); });
  m.def("log_majorant", &log_majorant, py::arg("r"), py::arg("g"), py::arg("beta"), py::arg("terms") = 1000000);

  m.def(
      "lengths_angles",
      [](const PolySolution& s, const JacobiSequence& q) {
        const HamburgerData h = lengths_angles(s, q);
        return py::make_tuple(to_array(h.l), to_array(h.dphi));
      },
      py::arg("sol"), py::arg("seq"));
  m.def(
      "delta_exponents",
      [](const PolySolution& s, const JacobiSequence& q, std::size_t first, std::size_t last) {
        HamburgerData h = lengths_angles(s, q);
        const DeltaExponents d = delta_exponents(h, {first, last});
        return py::make_tuple(d.delta_l, d.delta_phi);
      },
      py::arg("sol"), py::arg("seq"), py::arg("first"), py::arg("last"));
  m.def("order_bound_case2", &order_bound_case2);
  m.def("interval_comparison_remark", [](double beta) {
    const IntervalComparison c = interval_comparison_remark(beta);
    return py::make_tuple(c.naive_hi, c.improved_hi);
  });

  m.def(
      "run_acceptance",
      [](std::vector<int> only, unsigned k) {
        AcceptanceOptions o;
        o.only = std::move(only);
        o.exec = jobs(k);
        py::list out;
        for (const auto& r : run_acceptance(o)) {
          out.append(py::dict(py::arg("id") = r.id, py::arg("name") = r.name, py::arg("passed") = r.passed,
                              py::arg("observed") = r.observed, py::arg("expected") = r.expected));
        }
        return out;
      },
      py::arg("only") = std::vector<int>{}, py::arg("jobs") = 0);
}
