#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "theta4/basis_analysis.hpp"
#include "theta4/errors.hpp"
#include "theta4/identities.hpp"
#include "theta4/json_io.hpp"
#include "theta4/suite.hpp"

namespace py = pybind11;
using namespace theta4;

namespace {

// Reports cross the boundary as plain dicts, through the same JSON encoding
// the CLI writes.
py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Characteristic as_char(const std::pair<std::uint32_t, std::uint32_t>& c, int g) {
  return Characteristic(g, c.first, c.second);
}

std::pair<std::uint32_t, std::uint32_t> as_pair(const Characteristic& c) { return {c.a1(), c.a2()}; }

TruncationPolicy truncation(double eps, int max_radius) {
  TruncationPolicy p{eps, max_radius};
  p.validate();
  return p;
}

Json residuals(const std::vector<IdentityResidual>& rs, double tol) {
  double worst = 0.0;
  Json list = Json::array();
  for (const auto& r : rs) {
    worst = std::max(worst, r.rel_residual);
    list.push_back(to_json(r));
  }
  return {{"residuals", list}, {"max_rel_residual", worst}, {"pass", worst < tol}};
}

}  // namespace

PYBIND11_MODULE(_theta4, m) {
  m.doc() = "Theta functions of order four";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<VanishingNullError>(m, "VanishingNullError", base.ptr());

  m.def("even_count", [](int g) { return even_count(g); });

  m.def(
      "characteristics",
      [](int g, bool even_only) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (const auto& c : enumerate_characteristics(g))
          if (!even_only || is_even(c)) out.push_back(as_pair(c));
        return out;
      },
      py::arg("g"), py::arg("even_only") = false,
      "(a1, a2) bitmask pairs in canonical order, most significant bit first.");

  m.def("parity", [](int g, std::pair<std::uint32_t, std::uint32_t> c) {
    return parity(as_char(c, g)).value();
  });
  m.def("weil_pairing", [](int g, std::pair<std::uint32_t, std::uint32_t> a,
                           std::pair<std::uint32_t, std::uint32_t> b) {
    return weil_pairing(as_char(a, g), as_char(b, g)).value();
  });
  m.def("kappa_value", [](int g, std::pair<std::uint32_t, std::uint32_t> c,
                          std::pair<std::uint32_t, std::uint32_t> a) {
    return kappa_value(as_char(c, g), as_char(a, g)).value();
  });

  m.def("mmatrix", [](int g) {
    const SignMatrix s = build_m(g);
    Eigen::MatrixXi out(s.dim(), s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) out(i, j) = s.at(i, j);
    return out;
  });
  m.def("verify_mmatrix", [](int g) { return to_python(to_json(verify_mmatrix(g))); });
  m.def(
      "inversion_coefficients",
      [](int g) {
        const RationalMatrix c = inversion_coefficients(g);
        std::vector<std::vector<std::string>> out(c.dim(), std::vector<std::string>(c.dim()));
        for (std::size_t i = 0; i < c.dim(); ++i)
          for (std::size_t j = 0; j < c.dim(); ++j) out[i][j] = c.at(i, j).get_str();
        return out;
      },
      "Exact entries as strings such as \"-1/2\".");

  m.def(
      "random_tau", [](int g, std::uint64_t seed, double floor) { return random_tau(g, seed, floor).tau(); },
      py::arg("g"), py::arg("seed"), py::arg("floor") = 1.0);

  m.def(
      "theta",
      [](std::pair<std::uint32_t, std::uint32_t> c, const Point& z, const ComplexMatrix& tau, double eps,
         int max_radius) {
        const PeriodMatrix t(tau);
        const ThetaValue v = theta_with_char(as_char(c, t.genus()), z, t, truncation(eps, max_radius));
        return py::make_tuple(v.value, v.error_bound, v.radius);
      },
      py::arg("c"), py::arg("z"), py::arg("tau"), py::arg("eps") = 1e-11, py::arg("max_radius") = 64,
      "theta[c](z, tau) as (value, error_bound, radius).");

  m.def(
      "theta_nulls",
      [](const ComplexMatrix& tau, double null_threshold) {
        return to_python(to_json(theta_nulls(PeriodMatrix(tau)), null_threshold));
      },
      py::arg("tau"), py::arg("null_threshold") = kDefaultNullThreshold);

  m.def(
      "mu",
      [](std::pair<std::uint32_t, std::uint32_t> a, std::pair<std::uint32_t, std::uint32_t> k,
         std::pair<std::uint32_t, std::uint32_t> kp, const ComplexMatrix& tau) {
        const PeriodMatrix t(tau);
        const int g = t.genus();
        return mu(as_char(a, g), as_char(k, g), as_char(kp, g), t);
      },
      py::arg("a"), py::arg("kappa"), py::arg("kappa_prime"), py::arg("tau"));

  m.def(
      "verify_quartic",
      [](const ComplexMatrix& tau, std::size_t samples, std::uint64_t seed, double tol) {
        const PeriodMatrix t(tau);
        return to_python(residuals(verify_quartic(t, sample_points(t, samples, seed)), tol));
      },
      py::arg("tau"), py::arg("samples") = 5, py::arg("seed") = 1, py::arg("tol") = 1e-8);
  m.def(
      "verify_inversion",
      [](const ComplexMatrix& tau, std::size_t samples, std::uint64_t seed, double tol) {
        const PeriodMatrix t(tau);
        return to_python(residuals(verify_inversion(t, sample_points(t, samples, seed)), tol));
      },
      py::arg("tau"), py::arg("samples") = 5, py::arg("seed") = 1, py::arg("tol") = 1e-8);

  m.def(
      "basis_report",
      [](const ComplexMatrix& tau, std::optional<std::pair<std::uint32_t, std::uint32_t>> kappa0,
         double sv_threshold, double null_threshold, std::uint64_t seed) {
        const PeriodMatrix t(tau);
        const Characteristic k0 = kappa0 ? as_char(*kappa0, t.genus()) : Characteristic::zero(t.genus());
        return to_python(to_json(basis_report(t, k0, {}, NumericalRankPolicy{sv_threshold}, null_threshold, seed)));
      },
      py::arg("tau"), py::arg("kappa0") = py::none(), py::arg("sv_threshold") = 1e-7,
      py::arg("null_threshold") = kDefaultNullThreshold, py::arg("seed") = 1);

  m.def(
      "run_suite",
      [](const std::string& corpus_path) {
        const RunReport r = run_suite(load_corpus(corpus_path));
        return py::make_tuple(to_python(to_json(r)), exit_code(r));
      },
      py::arg("corpus"), "Runs a corpus file; returns (report, exit_code).");
}
