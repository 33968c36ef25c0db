#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "berrylink/berry.hpp"
#include "berrylink/cli.hpp"
#include "berrylink/fluxlines.hpp"
#include "berrylink/harmonics.hpp"
#include "berrylink/hmap.hpp"
#include "berrylink/manifold.hpp"
#include "berrylink/spectra.hpp"
#include "berrylink/topo.hpp"

namespace py = pybind11;
using namespace berrylink;

namespace {

py::dict invariant_dict(const InvariantResult& r) {
    py::dict d;
    d["raw"] = r.raw;
    d["normalized"] = r.normalized;
    d["rounded"] = r.rounded;
    d["residual"] = r.residual;
    return d;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(j.dump());
}

Polyline3 polyline_from(const std::vector<std::array<double, 3>>& pts) {
    Polyline3 c;
    for (const auto& p : pts) c.pts.emplace_back(p[0], p[1], p[2]);
    if (!c.pts.empty() && (c.pts.front() - c.pts.back()).norm() > 1e-9)
        c.pts.push_back(c.pts.front());
    c.closed = true;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Berry connections, topological invariants, SO(4) harmonics and "
              "magnetic spectra on S^2/S^3";
    m.attr("__version__") = cli::kVersion;

    py::register_exception<ConfigError>(m, "BerrylinkConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "BerrylinkNumericalError", PyExc_RuntimeError);

    // charts
    m.def(
        "s3_embed",
        [](double t, double a, double b) -> Eigen::Vector4d {
            return s3_embed(AngleCoordS3(t, a, b));
        },
        py::arg("t"), py::arg("alpha"), py::arg("beta"),
        "Embed an S^3 chart point into R^4.");
    m.def(
        "stereographic_project",
        [](double t, double a, double b) -> Eigen::Vector3d {
            return stereographic_project(AngleCoordS3(t, a, b));
        },
        py::arg("t"), py::arg("alpha"), py::arg("beta"));

    // maps
    m.def(
        "eval_map_s2",
        [](const std::string& spec, double theta, double phi) -> Eigen::Vector3d {
            return eval_map(MapSpec::parse(spec), AngleCoordS2(theta, phi));
        },
        py::arg("spec"), py::arg("theta"), py::arg("phi"));
    m.def(
        "eval_map_s3",
        [](const std::string& spec, double t, double a, double b) -> Eigen::Vector3d {
            return eval_map(MapSpec::parse(spec), AngleCoordS3(t, a, b));
        },
        py::arg("spec"), py::arg("t"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "pontrjagin_index",
        [](const std::string& spec, int ntheta, int nphi) {
            return pontrjagin_index(MapSpec::parse(spec), GridS2(ntheta, nphi));
        },
        py::arg("spec"), py::arg("ntheta") = 128, py::arg("nphi") = 256);

    // invariants
    m.def(
        "chern_number",
        [](const std::string& spec, int ntheta, int nphi) {
            if (spec == "spin1-identity")
                return invariant_dict(
                    chern_number_plaquette(spin1_identity_field(), 2, ntheta, nphi));
            return invariant_dict(chern_number(MapSpec::parse(spec), GridS2(ntheta, nphi)));
        },
        py::arg("spec"), py::arg("ntheta") = 128, py::arg("nphi") = 256);
    m.def(
        "chern_simons",
        [](const std::string& spec, int nt, int na, int nb) {
            return invariant_dict(
                chern_simons_raw(MapSpec::parse(spec), QuadratureGrid(nt, na, nb)));
        },
        py::arg("spec"), py::arg("nt") = 48, py::arg("na") = 16, py::arg("nb") = 16);

    // berry
    m.def(
        "connection_analytic",
        [](const std::string& spec, double t, double a, double b) {
            const ConnectionS3 c = connection_analytic(MapSpec::parse(spec), AngleCoordS3(t, a, b));
            return py::make_tuple(c.A_t, c.A_alpha, c.A_beta);
        },
        py::arg("spec"), py::arg("t"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "curvature_hopf",
        [](const std::string& spec, double t, double a, double b) {
            const MapSpec ms = MapSpec::parse(spec);
            const AngleCoordS3 p(t, a, b);
            const CurvatureS3 fh = curvature_from_h(ms, p);
            const CurvatureS3 fa = curvature_from_A(ms, p);
            py::dict d;
            d["from_h"] = py::make_tuple(fh.F_ta, fh.F_tb, fh.F_ab);
            d["from_A"] = py::make_tuple(fa.F_ta, fa.F_tb, fa.F_ab);
            return d;
        },
        py::arg("spec"), py::arg("t"), py::arg("alpha"), py::arg("beta"));

    // harmonics
    m.def(
        "harmonic",
        [](int two_j, int m1, int m2) {
            return json_to_py(harmonic_to_json(generate(HarmonicLabel(two_j, m1, m2))));
        },
        py::arg("two_j"), py::arg("m1"), py::arg("m2"),
        "Exact harmonic as {two_j, m1, m2, monomials}, coefficients in 1/pi units.");
    m.def(
        "harmonic_eval",
        [](int two_j, int m1, int m2, double t, double a, double b) {
            return generate(HarmonicLabel(two_j, m1, m2)).eval(AngleCoordS3(t, a, b));
        },
        py::arg("two_j"), py::arg("m1"), py::arg("m2"), py::arg("t"), py::arg("alpha"),
        py::arg("beta"));

    // spectra
    m.def(
        "eigenvalue_lambda",
        [](int two_j, int m1, int m2, int m) {
            const Rational r = eigenvalue_formula(HarmonicLabel(two_j, m1, m2), m);
            py::dict d;
            d["num"] = r.num();
            d["den"] = r.den();
            d["value"] = r.to_double();
            return d;
        },
        py::arg("two_j"), py::arg("m1"), py::arg("m2"), py::arg("m"));
    m.def(
        "spectrum",
        [](int two_j_max, int m, double mass) {
            py::list rows;
            for (const SpectrumEntry& e : spectrum_table(two_j_max, FieldStrength(m, mass))) {
                py::dict d;
                d["two_j"] = e.label.two_j;
                d["m1"] = e.label.m1;
                d["m2"] = e.label.m2;
                d["lambda"] = e.lambda.to_double();
                d["energy"] = e.energy;
                d["level_id"] = e.level_id;
                rows.append(d);
            }
            return rows;
        },
        py::arg("two_j_max"), py::arg("m") = 0, py::arg("mass") = 1.0);
    m.def(
        "residual",
        [](int two_j, int m1, int m2, int m, int nt, int na, int nb) {
            return residual(HarmonicLabel(two_j, m1, m2), FieldStrength(m),
                            QuadratureGrid(nt, na, nb));
        },
        py::arg("two_j"), py::arg("m1"), py::arg("m2"), py::arg("m"), py::arg("nt") = 64,
        py::arg("na") = 8, py::arg("nb") = 8);
    m.def(
        "radial_eigenvalues",
        [](int m1, int m2, int m, int k) {
            return radial_ode_solve(m1, m2, FieldStrength(m), k);
        },
        py::arg("m1"), py::arg("m2"), py::arg("m"), py::arg("k") = 3);

    // flux loops and linking
    m.def(
        "trace_loop",
        [](double t0, double delta0, int samples) {
            const FluxLoop loop = trace_loop(t0, delta0, samples);
            std::vector<std::array<double, 3>> pts;
            for (std::size_t i = 0; i + 1 < loop.line.pts.size(); ++i)
                pts.push_back({loop.line.pts[i].x(), loop.line.pts[i].y(),
                               loop.line.pts[i].z()});
            return pts;
        },
        py::arg("t0"), py::arg("delta0") = 0.0, py::arg("samples") = 512);
    m.def(
        "linking_number",
        [](const std::vector<std::array<double, 3>>& c1,
           const std::vector<std::array<double, 3>>& c2) {
            return linking_number(polyline_from(c1), polyline_from(c2));
        },
        py::arg("curve1"), py::arg("curve2"),
        "Gauss linking number of two closed polylines.");

    // bridge
    m.def(
        "bridge_deviation",
        [](const std::string& surface, double u, double v, double step) {
            SurfacePatch s = (surface == "plane") ? SurfacePatch::flat_plane()
                                                  : SurfacePatch::unit_sphere();
            return riemann_vs_curvature(s, u, v, step);
        },
        py::arg("surface") = "sphere", py::arg("u") = 1.0, py::arg("v") = 0.5,
        py::arg("step") = 1e-5);
}
