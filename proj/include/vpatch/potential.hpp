#pragma once

#include "vpatch/contour.hpp"

#include <span>
#include <vector>

namespace vpatch {

// Weight of the periodic log-quadrature at angular offset dt,
//   \int_0^{2pi} ln(4 sin^2((t-s)/2)) f(s) ds ~= sum_j R(t - s_j) f(s_j),
// exact for trigonometric polynomials up to degree half_n = N/2.
double log_weight(double dt, int half_n);

// Newtonian stream function of the unit-density patch bounded by c,
// psi(x) = (1/2pi) \iint_D log|x-y| dA(y), reduced to a boundary integral.
// Spectral trapezoid away from the boundary, adaptive panels within five node
// spacings, log-singularity subtraction on the boundary itself.
double stream_function(const Contour& c, cplx x);

// psi evaluated at every quadrature node (log-quadrature path, O(N^2)).
std::vector<double> boundary_stream_values(const Contour& c);

// Induced velocity v = conj(-2i dpsi/dz); on the boundary the kernel's
// removable singularity is filled with its limit along the curve.
cplx velocity(const Contour& c, cplx x);

// Cauchy transform of the patch indicator, (1/pi) \iint_D dA(y)/(y - x) = -4 dpsi/dz.
cplx cauchy_transform(const Contour& c, cplx x);

// Rotating-frame field data: mu is the boundary mean of psi - omega|x|^2/2.
struct PatchField {
    Contour contour;
    double omega;
    double mu;
};

double compute_mu(const Contour& c, double omega);
PatchField make_patch_field(const Contour& c, double omega);

// phi(x) = mu + omega |x|^2 / 2 - psi(x); positive inside an exact V-state, negative outside.
double relative_stream(const PatchField& field, cplx x);

// Sign agreement between phi and the patch failed at a sample point.
struct LemmaViolationError : ContourError {
    cplx witness;
    double phi;
    bool inside;
    LemmaViolationError(cplx w, double p, bool in)
        : ContourError("relative stream sign disagrees with the patch at a sample"),
          witness(w), phi(p), inside(in) {}
};

// Fixed-point defect of the rotating-patch equation over the given samples.
// Verifies sign agreement of phi with the patch at every sample (throws
// LemmaViolationError with a witness otherwise), then measures
// max |phi(x) - (mu_c + omega|x|^2/2 - psi(x))| with mu_c recomputed from the contour.
double integral_equation_residual(const PatchField& field, std::span<const cplx> samples);

struct FarFieldDecayError : ContourError {
    double exponent;
    explicit FarFieldDecayError(double e)
        : ContourError("far-field remainder decays too slowly; is the barycenter at the origin?"),
          exponent(e) {}
};

struct FarFieldModel {
    double area;
    double remainder_bound; // C with |psi - (area/2pi) log|x|| <= C |x|^-2 at the fit radii
    double decay_exponent;
};

// Fits the log-remainder h = psi - (area/2pi) log|x| on circles of radius R, 2R, 4R
// (R defaults to 3x diameter). Throws FarFieldDecayError when the fitted decay
// exponent falls below 1.8.
FarFieldModel far_field_fit(const Contour& c, double omega, double base_radius = 0.0);

} // namespace vpatch
