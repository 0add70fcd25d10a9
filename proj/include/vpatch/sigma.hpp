#pragma once

#include "vpatch/contour.hpp"

#include <vector>

namespace vpatch {

// arccos(1/sqrt(5)), the largest aperture for which the sector condition can hold
// on every convex domain.
double critical_alpha();

struct ConditionReport {
    bool pass = false;
    double margin = 0.0;      // signed; see each condition for the convention
    cplx witness_boundary{};  // boundary point realizing the worst margin
    cplx witness_point{};     // offending interior / reflected point, when relevant
    std::size_t excluded = 0; // samples skipped as boundary-ambiguous
};

struct SigmaReport {
    double alpha = 0.0;
    double threshold = 0.0; // cos(alpha)
    double tol_geom = 0.0;
    int boundary_nodes = 0;
    int interior_samples = 0;
    ConditionReport star_shaped;  // x . nu(x) >= 0 about the barycenter
    ConditionReport sector;       // no mass in the backward cone of aperture alpha
    ConditionReport reflection;   // tangent-line reflection of the outer part stays inside
    bool verdict = false;
    bool exclusion_flag = false;
};

// Quasi-uniform grid of interior points, boundary-ambiguous ones dropped.
std::vector<cplx> interior_sample_grid(const Contour& c, int target);

ConditionReport check_star_shaped(const Contour& c);
ConditionReport check_sector(const Contour& c, double alpha, int interior_samples = 10000);
ConditionReport check_reflection(const Contour& c, int interior_samples = 10000);

// Runs all three conditions about the barycenter. Witness points are reported in
// the input frame.
SigmaReport classify(const Contour& c, double alpha, int interior_samples = 10000);

} // namespace vpatch
