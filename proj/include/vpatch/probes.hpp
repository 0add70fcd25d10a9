#pragma once

#include "vpatch/potential.hpp"
#include "vpatch/sigma.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vpatch {

struct ProbeReport {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    std::vector<cplx> witnesses;
    std::size_t samples = 0;
    std::vector<std::pair<std::string, double>> details;
};

struct ProbePreconditionError : ContourError {
    std::string probe;
    double value;
    ProbePreconditionError(std::string p, const std::string& what, double v)
        : ContourError(p + ": " + what), probe(std::move(p)), value(v) {}
};

// Band around the boundary inside which finite differences and sign checks are
// unreliable at the working resolution.
double default_collar(const Contour& c);

// phi > 0 on the given interior samples and phi < 0 on the exterior ones.
// Requires the field to be a V-state (boundary residual <= 1e-6).
ProbeReport phi_sign_probe(const PatchField& field, std::span<const cplx> interior,
                           std::span<const cplx> exterior, double eps_strict = 1e-10);

// phi strictly decreasing along outward normal rays, sampled at the given offsets.
ProbeReport g_monotonicity_probe(const PatchField& field, std::span<const double> offsets);

// grad(psi) . nu >= -tol along outward normal rays; requires the contour to pass
// the geometric classification at the critical aperture.
ProbeReport normal_derivative_bound_probe(const PatchField& field,
                                          std::span<const double> offsets, double tol = 1e-9);

// Mirror image of x across the vertical line x1 = lambda.
inline cplx reflect_across(double lambda, cplx x) {
    return {2.0 * lambda - x.real(), x.imag()};
}

// phi(reflected) - phi(x); antisymmetric under the reflection and zero on the plane.
double plane_difference(const PatchField& field, double lambda, cplx x);

// For each plane x = lambda: phi(reflected) - phi > 0 beyond the plane, and the
// normal slope of that difference is negative on the plane. Requires omega < 0.
ProbeReport moving_plane_probe(const PatchField& field, std::span<const double> lambdas,
                               int grid_n = 100);

// Max angular standard deviation of phi over the given circles; when the field is
// radial to within tol, additionally insists the circle means decrease outward.
double radial_symmetry_measure(const PatchField& field, std::span<const double> radii,
                               int angles = 64, double tol = 1e-8);

// sup over boundary nodes of |C(z) + conj(z)|, the obstruction to the omega = 1/2
// endpoint identity. Fields whose residual at omega = 1/2 exceeds 1e-6 are marked
// diagnostic-only and cannot pass.
ProbeReport half_omega_identity_probe(const PatchField& field, double tol = 1e-8);

// Five-point Laplacian of phi equals 2 omega - 1 inside and 2 omega outside, away
// from the boundary collar.
ProbeReport laplacian_dichotomy_probe(const PatchField& field, int samples = 400,
                                      double h = 1e-3, double tol = 1e-5);

} // namespace vpatch
