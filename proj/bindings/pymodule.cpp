// Python bindings: a thin veneer over the C++ engine for interactive use.
// Heavy objects stay in C++; reports cross the boundary as JSON strings or
// plain dicts of scalars.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "seccalc/fcalc.hpp"
#include "seccalc/report.hpp"
#include "seccalc/reprkernel.hpp"
#include "seccalc/verify.hpp"

namespace py = pybind11;
using namespace seccalc;

namespace {

using PyMatrix = std::vector<std::vector<std::complex<double>>>;

CMatrix to_cmatrix(const PyMatrix& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix must be non-empty");
    long n = (long)rows.size();
    long m = (long)rows[0].size();
    CMatrix A(n, m);
    for (long i = 0; i < n; ++i) {
        if ((long)rows[i].size() != m)
            throw std::invalid_argument("matrix rows must have equal length");
        for (long j = 0; j < m; ++j) A(i, j) = rows[i][j];
    }
    return A;
}

PyMatrix from_cmatrix(const CMatrix& A) {
    PyMatrix rows((std::size_t)A.rows());
    for (long i = 0; i < A.rows(); ++i) {
        rows[i].resize((std::size_t)A.cols());
        for (long j = 0; j < A.cols(); ++j) rows[i][j] = A(i, j);
    }
    return rows;
}

py::dict norm_dict(const NormResult& r) {
    py::dict d;
    d["space"] = space_tag_name(r.space_tag);
    d["value"] = r.value;
    d["est_abs_err"] = r.est_abs_err;
    d["nodes"] = r.nodes_used;
    d["truncated"] = r.truncation_flag;
    d["divergent"] = r.divergent;
    return d;
}

NormResult norm_impl(const std::string& fn_key, const std::string& space,
                     double param, double abs_tol) {
    SectorFn f = catalog_lookup(fn_key);
    QuadConfig cfg;
    cfg.abs_tol = abs_tol;
    cfg.rel_tol = abs_tol;
    if (space == "vs") return vs_norm(f.deriv, param, cfg);
    if (space == "ds") return ds_norm(f, param, cfg);
    if (space == "ds-inf") return ds_inf_norm(f, param, cfg);
    if (space == "b") return b_norm(f, cfg);
    if (space == "h1-sector") return h1_sector_norm(f.deriv, param, cfg);
    if (space == "h1-star") return h1_star_norm(f.deriv, param, cfg);
    if (space == "hpsi") return hpsi_norm(f, param, cfg);
    if (space == "epsi") return epsi_norm(f, param, cfg);
    if (space == "hp") return hp_norm(f, cfg);
    throw std::invalid_argument("unknown space: " + space);
}

CalcReport calc_impl(const std::string& fn_key, const std::string& method,
                     const PyMatrix& rows, double param,
                     const std::string& name) {
    SectorFn f = catalog_lookup(fn_key);
    SectorialOp op(to_cmatrix(rows), name);
    if (method == "d") return d_calc(f, op, param);
    if (method == "h-lift") return h_calc_lift(f, op, param);
    if (method == "h-arccot") return h_calc_arccot(f, op, param);
    if (method == "hp") return hp_calc(f, op);
    throw std::invalid_argument("unknown method: " + method);
}

} // namespace

PYBIND11_MODULE(_seccalc, m) {
    m.doc() = "numerical engine for weighted-area and half-plane functional "
              "calculi of sectorial matrices";

    py::class_<NormResult>(m, "NormResult")
        .def_readonly("value", &NormResult::value)
        .def_readonly("est_abs_err", &NormResult::est_abs_err)
        .def_readonly("nodes", &NormResult::nodes_used)
        .def_readonly("truncated", &NormResult::truncation_flag)
        .def_readonly("divergent", &NormResult::divergent)
        .def_property_readonly(
            "space", [](const NormResult& r) {
                return std::string(space_tag_name(r.space_tag));
            })
        .def("__repr__", [](const NormResult& r) {
            return "<NormResult " + std::string(space_tag_name(r.space_tag)) +
                   " value=" + std::to_string(r.value) +
                   (r.divergent ? " divergent" : "") + ">";
        });

    m.def("catalog_eval",
          [](const std::string& fn_key, std::complex<double> z) {
              return catalog_lookup(fn_key).eval(z);
          },
          py::arg("fn"), py::arg("z"),
          "evaluate a catalog function at a point");

    m.def("catalog_deriv",
          [](const std::string& fn_key, std::complex<double> z) {
              return catalog_lookup(fn_key).deriv(z);
          },
          py::arg("fn"), py::arg("z"),
          "evaluate the derivative of a catalog function at a point");

    m.def("norm", &norm_impl, py::arg("fn"), py::arg("space"),
          py::arg("param") = 0.0, py::arg("abs_tol") = 1e-9,
          "compute a function-space norm; param is the weight s or angle psi");
    m.def("norm_info",
          [](const std::string& fn_key, const std::string& space, double param,
             double abs_tol) {
              return norm_dict(norm_impl(fn_key, space, param, abs_tol));
          },
          py::arg("fn"), py::arg("space"), py::arg("param") = 0.0,
          py::arg("abs_tol") = 1e-9, "norm with diagnostics as a dict");

    m.def("reproduce",
          [](const std::string& fn_key, double s,
             const std::vector<std::complex<double>>& pts) {
              SectorFn f = catalog_lookup(fn_key);
              std::vector<cplx> z(pts.begin(), pts.end());
              ReproReport r = reproduce_ds(f, s, z);
              py::dict d;
              d["fn"] = r.fn_key;
              d["s"] = r.s;
              d["max_abs_err"] = r.max_abs_err;
              d["est_quad_err"] = r.est_quad_err;
              d["nodes"] = r.nodes;
              d["ok"] = r.ok;
              return d;
          },
          py::arg("fn"), py::arg("s"), py::arg("points"),
          "rebuild f from its derivative through the weighted area kernel");

    m.def("kernel_identity",
          [](double psi) {
              KernelIdentityReport r = arccot_kernel_identity(psi);
              py::dict d;
              d["psi"] = r.psi;
              d["lhs"] = r.lhs;
              d["rhs"] = r.rhs;
              d["abs_err"] = r.abs_err;
              d["ok"] = r.ok;
              return d;
          },
          py::arg("psi"), "mass identity of the logarithmic edge kernel");

    m.def("calc",
          [](const std::string& fn_key, const std::string& method,
             const PyMatrix& rows, double param, const std::string& name) {
              return from_cmatrix(calc_impl(fn_key, method, rows, param, name).result);
          },
          py::arg("fn"), py::arg("method"), py::arg("matrix"),
          py::arg("param") = 0.0, py::arg("name") = std::string("op"),
          "f(A) as nested lists; method is d, h-lift, h-arccot, or hp");

    m.def("calc_report_json",
          [](const std::string& fn_key, const std::string& method,
             const PyMatrix& rows, double param, const std::string& name) {
              CalcReport r = calc_impl(fn_key, method, rows, param, name);
              SectorialOp op(to_cmatrix(rows), name);
              if (auto oracle = oracle_calc(catalog_lookup(fn_key), op))
                  r.oracle_diff =
                      spectral_norm(CMatrix(r.result - oracle->result));
              return report::dump(report::to_json(r));
          },
          py::arg("fn"), py::arg("method"), py::arg("matrix"),
          py::arg("param") = 0.0, py::arg("name") = std::string("op"),
          "full calculus report (JSON), with the eigendecomposition "
          "cross-check attached when one exists");

    m.def("suite_names", []() { return suite_names(); },
          "names of the verification suites");

    m.def("suite_report_json",
          [](const std::string& name, int threads, std::uint64_t seed) {
              return report::dump(report::to_json(run_suite(name, threads,
                                                            QuadConfig{}, seed)));
          },
          py::arg("name"), py::arg("threads") = 0, py::arg("seed") = 0,
          "run a verification suite and return its report as JSON");

    m.attr("__version__") = "1.0.0";
}
