#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "multiaxial/axes.hpp"
#include "multiaxial/classify.hpp"
#include "multiaxial/errors.hpp"
#include "multiaxial/families.hpp"
#include "multiaxial/fano.hpp"
#include "multiaxial/io.hpp"
#include "multiaxial/report.hpp"
#include "multiaxial/selftest.hpp"
#include "multiaxial/special_fn.hpp"
#include "multiaxial/spin_state.hpp"
#include "multiaxial/sweep.hpp"

namespace py = pybind11;
using namespace multiaxial;

namespace {

// Spins arrive as 1.5, 3, or "3/2".
HalfInteger spin(const py::handle& value) {
  if (py::isinstance<py::str>(value)) return HalfInteger::parse(value.cast<std::string>());
  return HalfInteger::from_double(value.cast<double>());
}

DensityMatrix density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    throw StructuralError("density matrix must be square with dimension at least 2");
  }
  return DensityMatrix(HalfInteger::from_twice(static_cast<int>(rho.rows()) - 1), rho);
}

py::object from_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict tensors_dict(const SphericalTensorSet& t) {
  py::dict out;
  for (int k = 0; k <= t.max_rank(); ++k)
    for (int q = -k; q <= k; ++q) out[py::make_tuple(k, q)] = t(k, q);
  return out;
}

SphericalTensorSet tensors_from(const py::handle& j, const py::dict& entries) {
  SphericalTensorSet t(spin(j));
  for (const auto& [key, value] : entries) {
    const auto kq = key.cast<std::pair<int, int>>();
    if (kq.first < 0 || kq.first > t.max_rank() || std::abs(kq.second) > kq.first) {
      throw StructuralError("tensor index (" + std::to_string(kq.first) + ", " + std::to_string(kq.second) +
                            ") out of range");
    }
    t.rank(kq.first)[kq.second] = value.cast<Complex>();
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiaxial decomposition and classification of spin-j states";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  m.def(
      "clebsch_gordan",
      [](py::handle j1, py::handle m1, py::handle j2, py::handle m2, py::handle J, py::handle M) {
        return clebsch_gordan(spin(j1), spin(m1), spin(j2), spin(m2), spin(J), spin(M));
      },
      py::arg("j1"), py::arg("m1"), py::arg("j2"), py::arg("m2"), py::arg("J"), py::arg("M"));
  m.def(
      "wigner_d",
      [](py::handle j, double alpha, double beta, double gamma) {
        return wigner_d_matrix(spin(j), EulerAngles{alpha, beta, gamma});
      },
      py::arg("j"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      "Rotation matrix in the m-descending basis.");

  m.def("ghz", [](int n) { return pure_to_density(make_ghz(n)).matrix(); }, py::arg("n"));
  m.def("w", [](int n) { return pure_to_density(make_w(n)).matrix(); }, py::arg("n"));
  m.def("bell", [] { return pure_to_density(make_bell()).matrix(); });
  m.def(
      "dicke", [](py::handle j, py::handle mm) { return pure_to_density(make_dicke(spin(j), spin(mm))).matrix(); },
      py::arg("j"), py::arg("m"));
  m.def(
      "coherent",
      [](py::handle j, double theta, double phi) { return pure_to_density(make_coherent(spin(j), theta, phi)).matrix(); },
      py::arg("j"), py::arg("theta"), py::arg("phi"));
  m.def(
      "uniaxial", [](double r1, double theta1, double phi1) { return make_uniaxial(r1, theta1, phi1).matrix(); },
      py::arg("r1"), py::arg("theta1"), py::arg("phi1") = 0.0);
  m.def(
      "biaxial", [](double r2, double theta) { return make_biaxial(r2, theta).matrix(); }, py::arg("r2"),
      py::arg("theta"));
  m.def(
      "triaxial", [](double r1, double r2, double theta) { return make_triaxial(r1, r2, theta).matrix(); },
      py::arg("r1"), py::arg("r2"), py::arg("theta"));
  m.def(
      "pure_density", [](const ComplexVector& amps) {
        if (amps.size() < 2) throw StructuralError("need at least two amplitudes");
        return pure_to_density(PureState::normalized(HalfInteger::from_twice(static_cast<int>(amps.size()) - 1), amps))
            .matrix();
      },
      py::arg("amplitudes"), "Density matrix of a (normalized) amplitude vector, m descending.");

  m.def(
      "rotate",
      [](const ComplexMatrix& rho, double alpha, double beta, double gamma) {
        return rotate_density(density(rho), EulerAngles{alpha, beta, gamma}).matrix();
      },
      py::arg("rho"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
  m.def(
      "extract_tensors", [](const ComplexMatrix& rho) { return tensors_dict(extract_tensors(density(rho))); },
      py::arg("rho"), "Spherical tensor parameters keyed by (k, q).");
  m.def(
      "reconstruct_density",
      [](py::handle j, const py::dict& tensors) { return reconstruct_density(tensors_from(j, tensors)).matrix(); },
      py::arg("j"), py::arg("tensors"), "Inverse of extract_tensors; missing entries are zero, t(0, 0) defaults to 1.");

  m.def(
      "analyze", [](const ComplexMatrix& rho) { return from_json(format_report_json(analyze(density(rho)))); },
      py::arg("rho"), "Full report as a dict.");
  m.def(
      "signature", [](const ComplexMatrix& rho) { return class_signature(density(rho)).str(); }, py::arg("rho"));
  m.def(
      "is_separable",
      [](const ComplexMatrix& rho) -> py::object {
        const auto s = analyze(density(rho)).separability.separable;
        return s ? py::bool_(*s) : py::object(py::none());
      },
      py::arg("rho"), "True/False, or None when no criterion applies.");
  m.def(
      "lu_equivalent",
      [](const ComplexMatrix& a, const ComplexMatrix& b) {
        return from_json(to_json(lu_equivalent(density(a), density(b))).dump());
      },
      py::arg("a"), py::arg("b"));

  m.def("parse_state", [](const std::string& text) { return parse_state(text).rho.matrix(); }, py::arg("text"));
  m.def(
      "format_state", [](const ComplexMatrix& rho) { return format_state(density(rho)); }, py::arg("rho"));

  m.def(
      "sweep",
      [](const std::string& family, const std::string& vary, const std::vector<std::string>& scans,
         const std::map<std::string, double>& fixed, const std::string& report, int threads) {
        SweepOptions opt;
        opt.family = parse_family(family);
        opt.primary = parse_sweep_range(vary);
        for (const auto& s : scans) opt.scans.push_back(parse_sweep_range(s));
        opt.fixed = fixed;
        opt.columns = parse_sweep_columns(report);
        opt.threads = threads;
        py::list rows;
        for (const auto& r : run_sweep(opt)) {
          py::dict row;
          row["kind"] = std::string(row_kind_name(r.kind));
          row["params"] = r.params;
          row["min_eigenvalue"] = r.min_eigenvalue;
          row["ppt_min_eigenvalue"] = r.ppt_min_eigenvalue;
          row["signature"] = r.signature;
          rows.append(row);
        }
        return rows;
      },
      py::arg("family"), py::arg("vary"), py::arg("scans") = std::vector<std::string>{},
      py::arg("fixed") = std::map<std::string, double>{}, py::arg("report") = "psd,ppt,class", py::arg("threads") = 1);

  m.def("selftest", [] {
    py::list out;
    for (const auto& c : run_selftest()) out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });
}
