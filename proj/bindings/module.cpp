#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vpatch/evolve.hpp"
#include "vpatch/io.hpp"
#include "vpatch/potential.hpp"
#include "vpatch/probes.hpp"
#include "vpatch/runtime.hpp"
#include "vpatch/sigma.hpp"
#include "vpatch/vstate.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace vpatch {
namespace {

std::vector<cplx> to_vector(std::span<const cplx> s) { return {s.begin(), s.end()}; }

} // namespace

PYBIND11_MODULE(_vpatch, m) {
    m.doc() = "rotating vortex patch laboratory (C++ core)";

    py::register_exception<ContourError>(m, "ContourError", PyExc_RuntimeError);
    py::register_exception<BoundaryAmbiguityError>(m, "BoundaryAmbiguityError",
                                                   PyExc_RuntimeError);
    py::register_exception<SolverDivergenceError>(m, "SolverDivergenceError",
                                                  PyExc_RuntimeError);
    py::register_exception<SingularSystemError>(m, "SingularSystemError",
                                                PyExc_RuntimeError);
    py::register_exception<LemmaViolationError>(m, "LemmaViolationError",
                                                PyExc_RuntimeError);
    py::register_exception<FarFieldDecayError>(m, "FarFieldDecayError", PyExc_RuntimeError);
    py::register_exception<EvolutionBreakdownError>(m, "EvolutionBreakdownError",
                                                    PyExc_RuntimeError);
    py::register_exception<ProbePreconditionError>(m, "ProbePreconditionError",
                                                   PyExc_RuntimeError);

    py::class_<Contour>(m, "Contour")
        .def(py::init([](std::vector<cplx> coefs, int k_min, int nodes) {
                 return Contour(std::move(coefs), k_min, nodes);
             }),
             "coefficients"_a, "k_min"_a, "nodes"_a)
        .def_static("circle", &Contour::circle, "radius"_a, "nodes"_a = 256)
        .def_static("ellipse", &Contour::ellipse, "a"_a, "b"_a, "nodes"_a = 256)
        .def_static(
            "from_nodes",
            [](std::vector<cplx> pts) { return Contour::from_nodes(pts); }, "points"_a)
        .def_static(
            "fit_polyline",
            [](std::vector<cplx> pts, int max_mode, int nodes) {
                return Contour::fit_polyline(pts, max_mode, nodes);
            },
            "points"_a, "max_mode"_a = 0, "nodes"_a = 0)
        .def_static(
            "from_json",
            [](const std::string& text, int nodes) {
                return contour_from_json(json::parse(text), nodes);
            },
            "text"_a, "nodes"_a = 0)
        .def("to_json", [](const Contour& c) { return contour_to_json(c).dump(); })
        .def_property_readonly("max_mode", &Contour::max_mode)
        .def_property_readonly("node_count", &Contour::node_count)
        .def_property_readonly("area", &Contour::signed_area)
        .def_property_readonly("perimeter", &Contour::perimeter)
        .def_property_readonly("diameter", &Contour::diameter)
        .def_property_readonly("barycenter", &Contour::barycenter_cached)
        .def("coefficient", &Contour::coefficient, "k"_a)
        .def("point", &Contour::point, "theta"_a)
        .def("derivative", &Contour::derivative, "theta"_a)
        .def("nodes", [](const Contour& c) { return to_vector(c.node_positions()); })
        .def("node_tangents", [](const Contour& c) { return to_vector(c.node_derivatives()); })
        .def("rotated", &Contour::rotated, "angle"_a)
        .def("translated", &Contour::translated, "shift"_a)
        .def("scaled", &Contour::scaled, "factor"_a)
        .def("with_node_count", &Contour::with_node_count, "nodes"_a)
        .def("recentered", &Contour::recentered)
        .def(
            "contains",
            [](const Contour& c, cplx x, double delta) { return contains(c, x, delta); },
            "x"_a, "delta"_a = -1.0)
        .def("nearest", [](const Contour& c, cplx x) {
            const Projection pr = nearest_boundary_point(c, x);
            return py::make_tuple(c.point(pr.theta), pr.distance);
        });

    py::class_<PolarShape>(m, "PolarShape")
        .def(py::init([](int symmetry, double base_radius, std::vector<double> cosines) {
                 PolarShape s;
                 s.symmetry = symmetry;
                 s.base_radius = base_radius;
                 s.cosines = std::move(cosines);
                 return s;
             }),
             "symmetry"_a, "base_radius"_a = 1.0,
             "cosines"_a = std::vector<double>{})
        .def_readwrite("symmetry", &PolarShape::symmetry)
        .def_readwrite("base_radius", &PolarShape::base_radius)
        .def_readwrite("cosines", &PolarShape::cosines)
        .def("radius", &PolarShape::radius, "theta"_a)
        .def("to_contour", &PolarShape::to_contour, "nodes"_a = 0);

    m.def("hausdorff_distance", &hausdorff_distance, "a"_a, "b"_a);
    m.def("stream_function", &stream_function, "contour"_a, "x"_a);
    m.def("velocity", &velocity, "contour"_a, "x"_a);
    m.def("cauchy_transform", &cauchy_transform, "contour"_a, "x"_a);
    m.def("compute_mu", &compute_mu, "contour"_a, "omega"_a);
    m.def("boundary_stream_values", &boundary_stream_values, "contour"_a);

    py::class_<PatchField>(m, "PatchField")
        .def_readonly("contour", &PatchField::contour)
        .def_readonly("omega", &PatchField::omega)
        .def_readonly("mu", &PatchField::mu);
    m.def("make_patch_field", &make_patch_field, "contour"_a, "omega"_a);
    m.def("relative_stream", &relative_stream, "field"_a, "x"_a);
    m.def(
        "integral_equation_residual",
        [](const PatchField& f, std::vector<cplx> samples) {
            return integral_equation_residual(f, samples);
        },
        "field"_a, "samples"_a);
    m.def(
        "far_field_fit",
        [](const Contour& c, double omega, double base_radius) {
            const FarFieldModel mod = far_field_fit(c, omega, base_radius);
            return py::make_tuple(mod.area, mod.remainder_bound, mod.decay_exponent);
        },
        "contour"_a, "omega"_a, "base_radius"_a = 0.0);

    m.def("boundary_residual", &boundary_residual, "contour"_a, "omega"_a);
    m.def("boundary_residual_sup", &boundary_residual_sup, "contour"_a, "omega"_a);
    m.def("kirchhoff_omega", &kirchhoff_omega, "a"_a, "b"_a);
    m.def("bifurcation_omega", &bifurcation_omega, "m"_a);
    m.def(
        "fit_omega",
        [](const Contour& c, double lo, double hi) {
            const OmegaFit f = fit_omega(c, lo, hi);
            return py::make_tuple(f.omega, f.residual);
        },
        "contour"_a, "lo"_a = 0.0, "hi"_a = 0.5);

    py::class_<VStateProblem>(m, "VStateProblem")
        .def(py::init<>())
        .def_readwrite("shape", &VStateProblem::shape)
        .def_readwrite("omega", &VStateProblem::omega)
        .def_readwrite("omega_free", &VStateProblem::omega_free)
        .def_readwrite("amplitude_pin", &VStateProblem::amplitude_pin)
        .def_readwrite("node_count", &VStateProblem::node_count)
        .def_readwrite("fd_step", &VStateProblem::fd_step);
    py::class_<VStateSolution>(m, "VStateSolution")
        .def_readonly("shape", &VStateSolution::shape)
        .def_readonly("omega", &VStateSolution::omega)
        .def_readonly("residual", &VStateSolution::residual_norm)
        .def_readonly("iterations", &VStateSolution::iterations)
        .def_readonly("branch_parameter", &VStateSolution::branch_parameter);
    m.def("newton_solve", &newton_solve, "problem"_a, "tol"_a = 1e-10, "max_iter"_a = 40);

    py::class_<Branch>(m, "Branch")
        .def_readonly("solutions", &Branch::solutions)
        .def_readonly("aborted", &Branch::aborted)
        .def_readonly("abort_reason", &Branch::abort_reason)
        .def_readonly("failed_amplitude", &Branch::failed_amplitude);
    m.def(
        "continuation",
        [](int symmetry, std::vector<double> amps, int modes, int node_count, double tol) {
            return continuation(symmetry, amps, modes, node_count, tol);
        },
        "symmetry"_a, "amplitudes"_a, "modes"_a = 10, "node_count"_a = 0,
        "tol"_a = 1e-10);
    m.def("linearization_smallest_singular_value", &linearization_smallest_singular_value,
          "problem"_a);

    py::class_<BifurcationScan>(m, "BifurcationScan")
        .def_readonly("omegas", &BifurcationScan::omegas)
        .def_readonly("sigmas", &BifurcationScan::sigmas)
        .def_readonly("estimate", &BifurcationScan::estimate)
        .def_readonly("sigma_at_estimate", &BifurcationScan::sigma_at_estimate);
    m.def("bifurcation_scan", &bifurcation_scan, "symmetry"_a, "lo"_a, "hi"_a, "step"_a,
          "modes"_a = 4, "node_count"_a = 0);

    m.def("critical_alpha", &critical_alpha);
    m.def(
        "interior_sample_grid",
        [](const Contour& c, int target) { return interior_sample_grid(c, target); },
        "contour"_a, "target"_a = 10000);
    m.def(
        "classify_json",
        [](const Contour& c, double alpha, int samples) {
            return sigma_report_to_json(classify(c, alpha, samples)).dump();
        },
        "contour"_a, "alpha"_a, "samples"_a = 10000);

    m.def("default_collar", &default_collar, "contour"_a);
    m.def(
        "phi_sign_probe_json",
        [](const PatchField& f, std::vector<cplx> inside, std::vector<cplx> outside,
           double eps) {
            return probe_report_to_json(phi_sign_probe(f, inside, outside, eps)).dump();
        },
        "field"_a, "interior"_a, "exterior"_a, "eps_strict"_a = 1e-10);
    m.def(
        "g_monotonicity_probe_json",
        [](const PatchField& f, std::vector<double> offsets) {
            return probe_report_to_json(g_monotonicity_probe(f, offsets)).dump();
        },
        "field"_a, "offsets"_a);
    m.def(
        "normal_derivative_bound_probe_json",
        [](const PatchField& f, std::vector<double> offsets, double tol) {
            return probe_report_to_json(normal_derivative_bound_probe(f, offsets, tol))
                .dump();
        },
        "field"_a, "offsets"_a, "tol"_a = 1e-9);
    m.def(
        "moving_plane_probe_json",
        [](const PatchField& f, std::vector<double> lambdas, int grid_n) {
            return probe_report_to_json(moving_plane_probe(f, lambdas, grid_n)).dump();
        },
        "field"_a, "lambdas"_a, "grid_n"_a = 100);
    m.def(
        "radial_symmetry_measure",
        [](const PatchField& f, std::vector<double> radii, int angles, double tol) {
            return radial_symmetry_measure(f, radii, angles, tol);
        },
        "field"_a, "radii"_a, "angles"_a = 64, "tol"_a = 1e-8);
    m.def(
        "half_omega_identity_probe_json",
        [](const PatchField& f, double tol) {
            return probe_report_to_json(half_omega_identity_probe(f, tol)).dump();
        },
        "field"_a, "tol"_a = 1e-8);
    m.def(
        "laplacian_dichotomy_probe_json",
        [](const PatchField& f, int samples, double h, double tol) {
            return probe_report_to_json(laplacian_dichotomy_probe(f, samples, h, tol))
                .dump();
        },
        "field"_a, "samples"_a = 400, "h"_a = 1e-3, "tol"_a = 1e-5);
    m.def("plane_difference", &plane_difference, "field"_a, "lambda_"_a, "x"_a);

    m.def("boundary_velocity", [](const Contour& c) { return boundary_velocity(c); },
          "contour"_a);
    m.def("resample_uniform_arclength", &resample_uniform_arclength, "contour"_a);
    m.def(
        "evolve",
        [](const Contour& c, double dt, int steps, int renode_every, double area_tol) {
            TimeStepConfig cfg;
            cfg.dt = dt;
            cfg.steps = steps;
            cfg.renode_every = renode_every;
            cfg.area_tol = area_tol;
            EvolutionState state{c};
            state = evolve(state, cfg);
            return py::make_tuple(state.contour, state.time);
        },
        "contour"_a, "dt"_a, "steps"_a, "renode_every"_a = 20, "area_tol"_a = 1e-12);
    m.def("rigid_rotation_error", &rigid_rotation_error, "initial"_a, "evolved"_a,
          "omega"_a, "t"_a);

    m.def("set_thread_limit", &set_thread_limit, "n"_a);
    m.def("library_version", &library_version);
}

} // namespace vpatch
