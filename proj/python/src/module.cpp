#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fock/constants.hpp"
#include "fock/errors.hpp"
#include "fock/explorer.hpp"
#include "fock/io.hpp"
#include "fock/ratio.hpp"
#include "fock/space.hpp"

namespace py = pybind11;
using namespace fock;

namespace {

HoloPoly poly_from_list(const std::vector<cplx>& coeffs) { return HoloPoly::from_coefficients(coeffs); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Duality ratios in Gaussian-weighted holomorphic L^p spaces";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NotIntegrable>(m, "NotIntegrable", domain.ptr());
  py::register_exception<ZeroFunction>(m, "ZeroFunction", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", PyExc_RuntimeError);
  py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);

  m.attr("SCHEMA") = std::string(io::kSchema);

  py::class_<ExponentPair>(m, "ExponentPair")
      .def(py::init<double>(), py::arg("p"))
      .def_property_readonly("p", &ExponentPair::p)
      .def_property_readonly("p_conj", &ExponentPair::p_conj)
      .def_property_readonly("c_p", &ExponentPair::c_p)
      .def("swapped", &ExponentPair::swapped)
      .def("__repr__", [](const ExponentPair& e) { return "ExponentPair(p=" + io::format_double(e.p()) + ")"; });

  m.def("conjugate_exponent", &conjugate_exponent, py::arg("p"));
  m.def("c_p", &c_p, py::arg("p"));
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("stirling_remainder", &stirling_remainder, py::arg("x"));
  m.def("stirling_remainder_quadrature", &stirling_remainder_quadrature, py::arg("x"));
  m.def("stirling_gap", [](double p, long k) { return stirling_gap(ExponentPair(p), k); }, py::arg("p"),
        py::arg("k"));

  py::class_<HoloPoly>(m, "HoloPoly")
      .def(py::init(&poly_from_list), py::arg("coefficients"),
           "One-variable polynomial sum_k coefficients[k] z^k.")
      .def_property_readonly("degree", &HoloPoly::degree)
      .def("coefficients", &HoloPoly::dense)
      .def("__call__", py::overload_cast<cplx>(&HoloPoly::operator(), py::const_), py::arg("z"))
      .def("to_json", [](const HoloPoly& f) { return io::poly_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::poly_from_json(nlohmann::json::parse(s)); })
      .def(py::self == py::self);

  py::class_<PolarGrid>(m, "PolarGrid")
      .def(py::init([](int n_r, int n_theta, double growth) { return PolarGrid(n_r, n_theta, growth); }),
           py::arg("n_r") = 256, py::arg("n_theta") = 256, py::arg("growth") = 0.0)
      .def_property_readonly("n_r", &PolarGrid::n_r)
      .def_property_readonly("n_theta", &PolarGrid::n_theta)
      .def_property_readonly("cutoff", &PolarGrid::cutoff);

  py::class_<QuadExp>(m, "QuadExp")
      .def(py::init<cplx, cplx, double>(), py::arg("a"), py::arg("c"), py::arg("alpha") = 1.0)
      .def_property_readonly("a", &QuadExp::a)
      .def_property_readonly("c", &QuadExp::c)
      .def_property_readonly("alpha", &QuadExp::alpha)
      .def("__call__", &QuadExp::operator(), py::arg("z"));

  m.def("monomial_norm", [](int k, double p, double alpha) {
    return monomial_norm(MultiIndex::scalar(k), p, FockWeight(alpha));
  }, py::arg("k"), py::arg("p"), py::arg("alpha") = 1.0);
  m.def("poly_norm", [](const HoloPoly& f, double p, double alpha, const PolarGrid& grid) {
    return poly_norm(f, p, FockWeight(alpha), grid);
  }, py::arg("f"), py::arg("p"), py::arg("alpha") = 1.0, py::arg("grid") = PolarGrid());
  m.def("poly_pairing", [](const HoloPoly& f, const HoloPoly& g, double alpha) {
    return poly_pairing(f, g, FockWeight(alpha));
  }, py::arg("f"), py::arg("g"), py::arg("alpha") = 1.0);
  m.def("quadexp_norm", [](const QuadExp& g, double p) { return quadexp_norm(g, p, FockWeight(g.alpha())); },
        py::arg("g"), py::arg("p"));
  m.def("quadexp_pairing", &quadexp_pairing, py::arg("g"), py::arg("h"));
  m.def("projection_eigenvalue", [](int j, double p, double alpha) {
    return projection_eigenvalue(MultiIndex::scalar(j), p, FockWeight(alpha));
  }, py::arg("j"), py::arg("p"), py::arg("alpha") = 1.0);
  m.def("taylor_coeff_bound", [](int j, double p, double alpha) {
    return taylor_coeff_bound(j, p, FockWeight(alpha));
  }, py::arg("j"), py::arg("p"), py::arg("alpha") = 1.0);

  m.def("ratio_general", [](const HoloPoly& f, const HoloPoly& h, double p, double alpha, const PolarGrid& grid) {
    return ratio_general(f, h, p, FockWeight(alpha), grid).value;
  }, py::arg("f"), py::arg("h"), py::arg("p"), py::arg("alpha") = 1.0, py::arg("grid") = PolarGrid());
  m.def("ratio_monomial", [](long k, double p) { return ratio_monomial(k, ExponentPair(p)); }, py::arg("k"),
        py::arg("p"));
  m.def("ratio_monomial_stirling", [](long k, double p) { return ratio_monomial_stirling(k, ExponentPair(p)); },
        py::arg("k"), py::arg("p"));
  m.def("ratio_gaussian", [](const QuadExp& g, const QuadExp& h, double p) {
    return ratio_gaussian(g, h, ExponentPair(p));
  }, py::arg("g"), py::arg("h"), py::arg("p"));
  m.def("gaussian_exponent", &gaussian_exponent, py::arg("x"), py::arg("y"), py::arg("b"), py::arg("c"),
        py::arg("d"));
  m.def("gaussian_critical_point", &gaussian_critical_point, py::arg("b"), py::arg("c"), py::arg("d"));
  m.def("gaussian_hessian", &gaussian_hessian, py::arg("c"), py::arg("d"));

  py::class_<GaussianFamilySup>(m, "GaussianFamilySup")
      .def_readonly("value", &GaussianFamilySup::value)
      .def_readonly("x", &GaussianFamilySup::x)
      .def_readonly("y", &GaussianFamilySup::y)
      .def_readonly("steps", &GaussianFamilySup::steps)
      .def_readonly("spot_check", &GaussianFamilySup::spot_check)
      .def_readonly("not_attained", &GaussianFamilySup::not_attained);
  m.def("gaussian_family_sup", [](double p, double alpha, double tol, unsigned long long seed) {
    return gaussian_family_sup(ExponentPair(p), alpha, tol, seed);
  }, py::arg("p"), py::arg("alpha") = 1.0, py::arg("tol") = 1e-9, py::arg("seed") = 0);

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("p", &SearchConfig::p)
      .def_readwrite("alpha", &SearchConfig::alpha)
      .def_readwrite("degree", &SearchConfig::degree)
      .def_readwrite("restarts", &SearchConfig::restarts)
      .def_readwrite("seed", &SearchConfig::seed)
      .def_readwrite("tol", &SearchConfig::tol)
      .def_readwrite("budget", &SearchConfig::budget)
      .def("validate", &SearchConfig::validate);

  py::class_<SearchReport>(m, "SearchReport")
      .def_readonly("p", &SearchReport::p)
      .def_readonly("best_ratio", &SearchReport::best_ratio)
      .def_readonly("best_f", &SearchReport::best_f)
      .def_readonly("best_h", &SearchReport::best_h)
      .def_readonly("gap_to_sqrt_cp", &SearchReport::gap_to_sqrt_cp)
      .def_readonly("gap_to_cp", &SearchReport::gap_to_cp)
      .def_readonly("evaluations", &SearchReport::evaluations)
      .def_readonly("converged", &SearchReport::converged)
      .def_readonly("best_restart", &SearchReport::best_restart)
      .def("to_json", [](const SearchReport& r) { return io::report_to_json(r).dump(); });
  m.def("maximize_ratio_free", &maximize_ratio_free, py::arg("config"));
  m.def("maximize_ratio_monomial_fixed", &maximize_ratio_monomial_fixed, py::arg("j"), py::arg("config"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("k", &SweepRow::k)
      .def_readonly("ratio", &SweepRow::ratio)
      .def_readonly("gap", &SweepRow::gap);
  m.def("monomial_sweep", [](double p, long kmax) { return monomial_sweep(ExponentPair(p), kmax); },
        py::arg("p"), py::arg("kmax"));

  py::class_<InvariantCounts>(m, "InvariantCounts")
      .def(py::init<>())
      .def_readwrite("random_pairs", &InvariantCounts::random_pairs)
      .def_readwrite("random_polys", &InvariantCounts::random_polys)
      .def_readwrite("gaussian_samples", &InvariantCounts::gaussian_samples)
      .def_readwrite("search_restarts", &InvariantCounts::search_restarts);
  py::class_<InvariantEntry>(m, "InvariantEntry")
      .def_readonly("name", &InvariantEntry::name)
      .def_readonly("samples", &InvariantEntry::samples)
      .def_readonly("worst_margin", &InvariantEntry::worst_margin)
      .def_readonly("passed", &InvariantEntry::passed);
  py::class_<InvariantReport>(m, "InvariantReport")
      .def_readonly("seed", &InvariantReport::seed)
      .def_readonly("entries", &InvariantReport::entries)
      .def("all_passed", &InvariantReport::all_passed);
  m.def("run_invariant_suite", &run_invariant_suite, py::arg("seed") = 0, py::arg("counts") = InvariantCounts());
}
