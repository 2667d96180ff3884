#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>

#include "ctlab/curve.hpp"
#include "ctlab/eisenstein.hpp"
#include "ctlab/errors.hpp"
#include "ctlab/formulas.hpp"
#include "ctlab/ideals.hpp"
#include "ctlab/modular.hpp"
#include "ctlab/report.hpp"
#include "ctlab/verify.hpp"

namespace py = pybind11;
using namespace ctlab;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

PrecisionContext make_ctx(long prec, long tol_exp) {
  PrecisionContext c;
  c.bits = prec;
  c.tol_exp = tol_exp < prec ? tol_exp : prec / 2;
  return c;
}

}  // namespace

PYBIND11_MODULE(_ctlab, m) {
  m.doc() = "theta-trace invariants for x^3 + y^3 = D";
  m.attr("__version__") = kToolVersion;
  py::register_exception<Error>(m, "CtlabError", PyExc_ValueError);

  m.def(
      "compute_S_D",
      [](long D, long prec, long height, std::uint64_t seed, long tol_exp) {
        nlohmann::json j;
        {
          py::gil_scoped_release nogil;
          SDOptions o;
          o.height_bound = height;
          o.enumeration.seed = seed;
          j = to_json(compute_S_D(D, make_ctx(prec, tol_exp), o));
        }
        return to_py(j);
      },
      py::arg("D"), py::arg("prec") = 256, py::arg("height") = 10000, py::arg("seed") = 0, py::arg("tol_exp") = 128);

  m.def(
      "compute_T_D",
      [](long D, long prec, bool radical_modulus) {
        nlohmann::json j;
        {
          py::gil_scoped_release nogil;
          TDOptions o;
          o.radical_modulus = radical_modulus;
          TDReport t = compute_T_D(D, make_ctx(prec, 128), o);
          j = {{"D", t.D},
               {"T_D", format_T(t.T_exact, t.imaginary)},
               {"coefficient", t.T_exact.get_str()},
               {"imaginary", t.imaginary},
               {"b", t.b},
               {"k0", t.k0}};
        }
        return to_py(j);
      },
      py::arg("D"), py::arg("prec") = 256, py::arg("radical_modulus") = false);

  m.def(
      "point_search",
      [](long D, long height) -> std::optional<std::pair<std::string, std::string>> {
        auto p = point_search(D, height);
        if (!p) return std::nullopt;
        return std::make_pair(p->x.get_str(), p->y.get_str());
      },
      py::arg("D"), py::arg("height") = 10000, py::call_guard<py::gil_scoped_release>());

  m.def(
      "theta_K",
      [](std::complex<double> z, long prec) {
        PrecisionScope ps(prec);
        PrecisionContext c = make_ctx(prec, 0);
        Complex v = theta_K(Complex(Real(z.real()), Real(z.imag())), c);
        return std::complex<double>(v.re.to_double(), v.im.to_double());
      },
      py::arg("z"), py::arg("prec") = 128);

  m.def("class_group_order", &class_group_order, py::arg("D"));
  m.def("conductor", &conductor, py::arg("D"));
  m.def("tamagawa_numbers", &tamagawa_numbers, py::arg("D"));
  m.def("hecke_ap", &hecke_ap, py::arg("p"), py::arg("D"));
  m.def("ap_point_count", &ap_point_count, py::arg("D"), py::arg("p"));

  m.def(
      "split_prime",
      [](long p) -> std::optional<std::pair<long, long>> {
        SplitResult s = split_prime(p);
        if (s.kind != SplitKind::Split) return std::nullopt;
        return std::make_pair(s.pi.a.get_si(), s.pi.b.get_si());
      },
      py::arg("p"));

  m.def(
      "cubic_symbol",
      [](std::pair<long, long> alpha, std::pair<long, long> beta) {
        return cubic_symbol(EisInt(alpha.first, alpha.second), EisInt(beta.first, beta.second)).exponent;
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "verify",
      [](const std::string& suite, long prec, long tol_exp, std::uint64_t seed, long nmax, std::vector<long> Ds,
         int samples) {
        nlohmann::json j;
        {
          py::gil_scoped_release nogil;
          VerifyOptions o;
          o.bits = prec;
          o.tol_exp = tol_exp < prec ? tol_exp : 0;
          o.seed = seed;
          o.nmax = nmax;
          o.Ds = std::move(Ds);
          o.factorization_samples = samples;
          j = to_json(run_suite(suite, o));
        }
        return to_py(j);
      },
      py::arg("suite") = "all", py::arg("prec") = 256, py::arg("tol_exp") = 128, py::arg("seed") = 20240611,
      py::arg("nmax") = 1000, py::arg("Ds") = std::vector<long>{}, py::arg("samples") = 100);
}
