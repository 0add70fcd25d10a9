#pragma once

#include "vpatch/contour.hpp"

#include <functional>
#include <vector>

namespace vpatch {

struct TimeStepConfig {
    double dt = 1e-3;
    int steps = 1;
    int renode_every = 20;  // 0 disables resampling
    double area_tol = 1e-12;
};

struct EvolutionState {
    Contour contour;
    double time = 0.0;
    int step_index = 0;
};

struct EvolutionBreakdownError : ContourError {
    EvolutionState last_valid;
    EvolutionBreakdownError(EvolutionState state, const std::string& why)
        : ContourError("evolution breakdown after step " +
                       std::to_string(state.step_index) + ": " + why),
          last_valid(std::move(state)) {}
};

// Self-induced patch velocity at the nodes.
std::vector<cplx> boundary_velocity(const Contour& c);

// Same node count, nodes redistributed to equal arclength.
Contour resample_uniform_arclength(const Contour& c);

// One RK4 step of the node positions; intermediate stages are refit without the
// simplicity sweep, the accepted contour is fully validated.
EvolutionState rk4_step(const EvolutionState& state, double dt);

// Runs cfg.steps RK4 steps. Every cfg.renode_every accepted steps the contour is
// resampled to uniform arclength and rescaled about its barycenter so the area
// matches the initial one to cfg.area_tol. on_step fires after every step.
EvolutionState evolve(EvolutionState state, const TimeStepConfig& cfg,
                      const std::function<void(const EvolutionState&)>& on_step = {});

// Hausdorff distance between the evolved contour and the initial one rotated by
// omega * t about the origin.
double rigid_rotation_error(const Contour& initial, const Contour& evolved, double omega,
                            double t);

} // namespace vpatch
