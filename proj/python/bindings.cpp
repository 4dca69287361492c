#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lhk/atoms.hpp"
#include "lhk/config.hpp"
#include "lhk/geometry.hpp"
#include "lhk/multipliers.hpp"
#include "lhk/profiles.hpp"
#include "lhk/report.hpp"
#include "lhk/specfun.hpp"
#include "lhk/suites.hpp"
#include "lhk/transform.hpp"
#include "lhk/version.hpp"

namespace py = pybind11;
using namespace lhk;

namespace {

struct PyAtom {
    atoms::Atom atom;
};

quad::GridFunction values_to_function(const quad::PhysicalGrid& g, std::vector<cplx> v) {
    if (v.size() != g.size()) throw std::invalid_argument("values do not match the grid size");
    quad::GridFunction f;
    f.grid = &g;
    f.v = std::move(v);
    return f;
}

quad::SpectralFunction values_to_spectral(const quad::SpectralGrid& g, std::vector<cplx> v) {
    if (v.size() != g.size()) throw std::invalid_argument("values do not match the grid size");
    quad::SpectralFunction f;
    f.grid = &g;
    f.v = std::move(v);
    return f;
}

} // namespace

PYBIND11_MODULE(_lhk, m) {
    m.doc() = "Fourier-Laguerre analysis on the Laguerre hypergroup";
    m.attr("__version__") = kVersion;

    // special functions and geometry
    m.def("laguerre_poly", &specfun::laguerre_poly, py::arg("alpha"), py::arg("m"), py::arg("x"));
    m.def("laguerre_at_zero", &specfun::laguerre_at_zero, py::arg("alpha"), py::arg("m"));
    m.def("laguerre_fn", &specfun::laguerre_fn, py::arg("alpha"), py::arg("m"), py::arg("u"));
    m.def(
        "character",
        [](double alpha, double lam, int mm, double x, double t) {
            return specfun::character(Params(alpha), {lam, mm}, {x, t});
        },
        py::arg("alpha"), py::arg("lam"), py::arg("m"), py::arg("x"), py::arg("t"));
    m.def(
        "character_dlambda",
        [](double alpha, double lam, int mm, double x, double t, int order) {
            return specfun::character_dlambda(Params(alpha), {lam, mm}, {x, t}, order);
        },
        py::arg("alpha"), py::arg("lam"), py::arg("m"), py::arg("x"), py::arg("t"),
        py::arg("order"));
    m.def(
        "homogeneous_norm",
        [](double x, double t) { return geometry::homogeneous_norm({x, t}); }, py::arg("x"),
        py::arg("t"));
    m.def(
        "dual_quasinorm",
        [](double alpha, double lam, int mm) {
            return geometry::dual_quasinorm(Params(alpha), {lam, mm});
        },
        py::arg("alpha"), py::arg("lam"), py::arg("m"));
    m.def(
        "ball_volume", [](double alpha, double r) { return geometry::ball_volume(Params(alpha), r); },
        py::arg("alpha"), py::arg("r"));

    // grids
    py::class_<quad::PhysicalGrid, std::shared_ptr<quad::PhysicalGrid>>(m, "PhysicalGrid")
        .def_readonly("alpha", &quad::PhysicalGrid::alpha)
        .def_readonly("X", &quad::PhysicalGrid::X)
        .def_readonly("T", &quad::PhysicalGrid::T)
        .def_readonly("x", &quad::PhysicalGrid::x)
        .def_readonly("t", &quad::PhysicalGrid::t)
        .def_property_readonly("size", &quad::PhysicalGrid::size)
        .def_readonly("mass_defect", &quad::PhysicalGrid::mass_defect);
    py::class_<quad::SpectralGrid, std::shared_ptr<quad::SpectralGrid>>(m, "SpectralGrid")
        .def_readonly("alpha", &quad::SpectralGrid::alpha)
        .def_readonly("lam", &quad::SpectralGrid::lam)
        .def_readonly("m_max", &quad::SpectralGrid::m_max)
        .def_property_readonly("size", &quad::SpectralGrid::size);

    m.def(
        "physical_grid",
        [](double alpha, double X, double T, int nx, int nt) {
            return std::make_shared<quad::PhysicalGrid>(
                quad::build_physical_grid(alpha, X, T, nx, nt));
        },
        py::arg("alpha"), py::arg("X"), py::arg("T"), py::arg("nx"), py::arg("nt"));
    m.def(
        "spectral_grid",
        [](double alpha, double lambda_min, double lambda_max, int n_lambda, int m_max) {
            return std::make_shared<quad::SpectralGrid>(
                quad::build_spectral_grid(alpha, lambda_min, lambda_max, n_lambda, m_max));
        },
        py::arg("alpha"), py::arg("lambda_min"), py::arg("lambda_max"), py::arg("n_lambda"),
        py::arg("m_max"));

    m.def(
        "sample_profile",
        [](const std::string& name, const quad::PhysicalGrid& g, double r) {
            return profiles::sample(profiles::make_profile(g.alpha, name, r), g).v;
        },
        py::arg("name"), py::arg("grid"), py::arg("r") = 1.0);

    // transforms
    m.def(
        "forward",
        [](const quad::PhysicalGrid& phys, const quad::SpectralGrid& spec,
           std::vector<cplx> values) {
            return transform::forward(phys, spec, values_to_function(phys, std::move(values))).v;
        },
        py::arg("phys"), py::arg("spec"), py::arg("values"));
    m.def(
        "forward_at",
        [](const quad::PhysicalGrid& phys, std::vector<cplx> values, double lam, int mm) {
            return transform::forward_at(phys, values_to_function(phys, std::move(values)),
                                         {lam, mm});
        },
        py::arg("phys"), py::arg("values"), py::arg("lam"), py::arg("m"));
    m.def(
        "inverse",
        [](const quad::SpectralGrid& spec, const quad::PhysicalGrid& phys,
           std::vector<cplx> values) {
            return transform::inverse(spec, phys, values_to_spectral(spec, std::move(values))).v;
        },
        py::arg("spec"), py::arg("phys"), py::arg("values"));
    m.def(
        "plancherel_defect",
        [](const quad::PhysicalGrid& phys, const quad::SpectralGrid& spec,
           std::vector<cplx> fv, std::vector<cplx> Fv) {
            return transform::plancherel_defect(phys, values_to_function(phys, std::move(fv)),
                                                values_to_spectral(spec, std::move(Fv)),
                                                quad::TailMode::radial);
        },
        py::arg("phys"), py::arg("spec"), py::arg("f_values"), py::arg("fhat_values"));

    // atoms
    py::class_<PyAtom>(m, "Atom")
        .def_property_readonly("values", [](const PyAtom& a) { return a.atom.values.v; })
        .def_property_readonly("size_ratio", [](const PyAtom& a) { return a.atom.size_ratio; })
        .def_property_readonly("p_norm", [](const PyAtom& a) { return a.atom.p_norm; })
        .def_property_readonly("max_moment_rel",
                               [](const PyAtom& a) { return a.atom.max_moment_rel; })
        .def_property_readonly("gram_cond", [](const PyAtom& a) { return a.atom.gram_cond; })
        .def("validate", [](const PyAtom& a) {
            auto v = atoms::validate_atom(a.atom);
            py::dict d;
            d["pass"] = v.pass;
            d["support_leakage"] = v.support_leakage;
            d["size_ratio"] = v.size_ratio;
            d["max_moment_rel"] = v.max_moment_rel;
            d["p_norm"] = v.p_norm;
            d["exceptional"] = v.exceptional;
            return d;
        });
    m.def(
        "make_atom",
        [](double alpha, double p, double q, int s, double r, int nx, int nt) {
            atoms::AtomSpec spec{p, q, s, r};
            return PyAtom{atoms::make_atom(profiles::bump_profile(alpha, 6, r), spec, alpha, nx,
                                           nt)};
        },
        py::arg("alpha"), py::arg("p"), py::arg("q"), py::arg("s"), py::arg("r"),
        py::arg("nx") = 160, py::arg("nt") = 160);

    // multipliers
    m.def(
        "apply_multiplier",
        [](const std::string& kind, double s, const quad::PhysicalGrid& phys,
           const quad::SpectralGrid& spec, std::vector<cplx> values) {
            auto M = multipliers::build_multiplier(phys.alpha, kind, s);
            return multipliers::apply_multiplier(M, phys, spec,
                                                 values_to_function(phys, std::move(values)))
                .v;
        },
        py::arg("kind"), py::arg("s"), py::arg("phys"), py::arg("spec"), py::arg("values"));

    // verification suites on a JSON config document
    m.def(
        "verify",
        [](const std::string& which, const std::string& config_json) {
            harness::Config cfg =
                config_json.empty() ? harness::Config{} : harness::parse_config(config_json);
            if (config_json.empty()) cfg.validate();
            cfg.suites = {which};
            py::list out;
            for (const auto& rep : harness::verify_all(cfg))
                out.append(harness::report_to_json(rep));
            return out;
        },
        py::arg("which"), py::arg("config_json") = std::string());
}
