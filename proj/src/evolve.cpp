#include "vpatch/evolve.hpp"
#include "vpatch/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vpatch {

std::vector<cplx> boundary_velocity(const Contour& c) {
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();
    const std::size_t n = z.size();
    const double cutoff = 1e-13 * c.diameter();
    std::vector<cplx> out(n);
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            cplx acc{0.0, 0.0};
            const cplx zbi = std::conj(z[i]);
            for (std::size_t j = 0; j < n; ++j) {
                const cplx diff = z[j] - z[i];
                if (std::abs(diff) < cutoff)
                    acc += std::conj(dz[j]);
                else
                    acc += (std::conj(z[j]) - zbi) / diff * dz[j];
            }
            out[i] = 0.5 * std::conj(acc) / static_cast<double>(n);
        }
    });
    return out;
}

Contour resample_uniform_arclength(const Contour& c) {
    const int n = static_cast<int>(c.node_count());
    const int m = 8 * n;
    const double h = 2.0 * std::numbers::pi / m;
    std::vector<double> speed(m + 1), s(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) speed[k] = std::abs(c.derivative(h * k));
    for (int k = 0; k < m; ++k) s[k + 1] = s[k] + 0.5 * h * (speed[k] + speed[k + 1]);
    const double total = s[m];

    std::vector<cplx> pts(static_cast<std::size_t>(n));
    int seg = 0;
    for (int i = 0; i < n; ++i) {
        const double target = total * i / n;
        while (seg + 1 < m && s[seg + 1] < target) ++seg;
        const double theta = h * seg + (target - s[seg]) / std::max(speed[seg], 1e-300);
        pts[static_cast<std::size_t>(i)] = c.point(theta);
    }
    return Contour::from_nodes(pts, Validation::full);
}

EvolutionState rk4_step(const EvolutionState& state, double dt) {
    const auto& z0 = state.contour.node_positions();
    const std::size_t n = z0.size();
    try {
        std::vector<cplx> tmp(n);
        const auto k1 = boundary_velocity(state.contour);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z0[i] + 0.5 * dt * k1[i];
        const auto k2 = boundary_velocity(Contour::from_nodes(tmp, Validation::fast));
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z0[i] + 0.5 * dt * k2[i];
        const auto k3 = boundary_velocity(Contour::from_nodes(tmp, Validation::fast));
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z0[i] + dt * k3[i];
        const auto k4 = boundary_velocity(Contour::from_nodes(tmp, Validation::fast));
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = z0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        Contour next = Contour::from_nodes(tmp, Validation::full);
        return {std::move(next), state.time + dt, state.step_index + 1};
    } catch (const ContourError& e) {
        throw EvolutionBreakdownError(state, e.what());
    }
}

EvolutionState evolve(EvolutionState state, const TimeStepConfig& cfg,
                      const std::function<void(const EvolutionState&)>& on_step) {
    if (!(cfg.dt > 0.0)) throw ContourError("dt must be positive");
    if (cfg.steps < 0) throw ContourError("negative step count");
    const double area0 = state.contour.signed_area();
    for (int k = 0; k < cfg.steps; ++k) {
        state = rk4_step(state, cfg.dt);
        if (cfg.renode_every > 0 && state.step_index % cfg.renode_every == 0) {
            Contour r = resample_uniform_arclength(state.contour);
            const double area = r.signed_area();
            if (!(area > 0.0)) throw EvolutionBreakdownError(state, "area collapsed");
            if (std::abs(area - area0) > cfg.area_tol * std::max(1.0, std::abs(area0)))
                r = r.scaled(std::sqrt(area0 / area));
            state.contour = std::move(r);
        }
        if (on_step) on_step(state);
    }
    return state;
}

double rigid_rotation_error(const Contour& initial, const Contour& evolved, double omega,
                            double t) {
    return hausdorff_distance(evolved, initial.rotated(omega * t));
}

} // namespace vpatch
