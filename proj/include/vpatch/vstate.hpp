#pragma once

#include "vpatch/contour.hpp"

#include <span>
#include <string>
#include <vector>

namespace vpatch {

// Node-wise rotating-frame boundary defect (v - omega x_perp) . nu, computed from
// the complex boundary form Re{(omega conj(z) + C(z)/2) tau(z)}.
std::vector<double> boundary_residual(const Contour& c, double omega);
double boundary_residual_sup(const Contour& c, double omega);

// Angular velocity of the steadily rotating ellipse with semi-axes a, b.
double kirchhoff_omega(double a, double b);

struct OmegaFit {
    double omega;
    double residual;
};

// Golden-section minimizer of the residual sup-norm over omega in [lo, hi]. The
// node residuals are affine in omega, so the objective is unimodal.
OmegaFit fit_omega(const Contour& c, double lo = 0.0, double hi = 0.5);

// Angular velocity at which the m-fold branch leaves the disc.
double bifurcation_omega(int m);

struct VStateProblem {
    PolarShape shape;
    double omega = 0.0;
    bool omega_free = false;
    double amplitude_pin = 0.0; // enforced value of the first cosine when omega is free
    int node_count = 0;         // 0 = automatic
    double fd_step = 1e-6;
};

struct VStateSolution {
    PolarShape shape;
    double omega;
    double residual_norm; // sup over nodes
    int iterations;
    double branch_parameter;
};

struct SolverDivergenceError : ContourError {
    double residual;
    int iterations;
    SolverDivergenceError(double r, int it)
        : ContourError("solver failed to converge"), residual(r), iterations(it) {}
};

struct SingularSystemError : ContourError {
    double sigma_ratio;
    explicit SingularSystemError(double s)
        : ContourError("rank-deficient linearization (bifurcation point?)"), sigma_ratio(s) {}
};

// Damped Gauss-Newton on the mode-m sine projections of the boundary residual.
// Unknowns are the cosine amplitudes, plus omega when omega_free (with the first
// amplitude pinned to amplitude_pin). Finite-difference Jacobian, step fd_step;
// damping halves on residual increase down to 2^-10.
VStateSolution newton_solve(const VStateProblem& problem, double tol = 1e-10, int max_iter = 40);

struct Branch {
    std::vector<VStateSolution> solutions;
    bool aborted = false;
    std::string abort_reason;
    double failed_amplitude = 0.0;
};

// Amplitude continuation of the m-fold branch from the disc: for each pinned
// amplitude, solve with omega free, warm-starting from the previous solution.
// Divergence aborts the branch and returns the partial result.
Branch continuation(int symmetry, std::span<const double> amplitudes, int modes = 10,
                    int node_count = 0, double tol = 1e-10);

// Smallest singular value of the finite-difference linearization at problem.shape
// (intended near the disc) with omega fixed; vanishes at bifurcation points.
double linearization_smallest_singular_value(const VStateProblem& problem);

struct BifurcationScan {
    std::vector<double> omegas;
    std::vector<double> sigmas;
    double estimate;
    double sigma_at_estimate;
};

// Sweeps omega over [lo, hi] with the given step and refines the minimizer of the
// smallest singular value by golden section.
BifurcationScan bifurcation_scan(int symmetry, double lo, double hi, double step,
                                 int modes = 4, int node_count = 0);

} // namespace vpatch
