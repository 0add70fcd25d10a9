#include "vpatch/probes.hpp"
#include "vpatch/runtime.hpp"
#include "vpatch/vstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace vpatch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_vstate(const PatchField& field, const char* probe) {
    const double sup = boundary_residual_sup(field.contour, field.omega);
    if (sup > 1e-6)
        throw ProbePreconditionError(probe, "field is not a V-state", sup);
}

double outer_radius(const Contour& c) {
    double r = 0.0;
    for (const cplx& z : c.node_positions()) r = std::max(r, std::abs(z));
    return r;
}

} // namespace

double default_collar(const Contour& c) { return 5.0 * c.node_spacing(); }

ProbeReport phi_sign_probe(const PatchField& field, std::span<const cplx> interior,
                           std::span<const cplx> exterior, double eps_strict) {
    require_vstate(field, "phi-sign");
    ProbeReport rep;
    rep.name = "phi-sign";
    rep.samples = interior.size() + exterior.size();

    double min_in = std::numeric_limits<double>::infinity();
    double max_ex = -std::numeric_limits<double>::infinity();
    cplx worst_in{}, worst_ex{};
    for (const cplx& x : interior) {
        const double phi = relative_stream(field, x);
        if (phi < min_in) { min_in = phi; worst_in = x; }
    }
    for (const cplx& x : exterior) {
        const double phi = relative_stream(field, x);
        if (phi > max_ex) { max_ex = phi; worst_ex = x; }
    }
    rep.margin = std::min(min_in, -max_ex);
    rep.pass = rep.margin > eps_strict;
    rep.details.emplace_back("interior_min", min_in);
    rep.details.emplace_back("exterior_max", max_ex);
    rep.details.emplace_back("eps_strict", eps_strict);
    if (!rep.pass) {
        if (min_in <= eps_strict) rep.witnesses.push_back(worst_in);
        if (-max_ex <= eps_strict) rep.witnesses.push_back(worst_ex);
    }
    return rep;
}

ProbeReport g_monotonicity_probe(const PatchField& field, std::span<const double> offsets) {
    require_vstate(field, "g-mono");
    if (offsets.size() < 2) throw ContourError("need at least two normal offsets");
    for (std::size_t k = 1; k < offsets.size(); ++k)
        if (!(offsets[k] > offsets[k - 1])) throw ContourError("offsets must increase");

    const Contour& c = field.contour;
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();
    const std::size_t n = z.size();

    ProbeReport rep;
    rep.name = "g-mono";
    rep.samples = n * offsets.size();
    double worst = -std::numeric_limits<double>::infinity();
    cplx worst_pt{};
    std::mutex merge;
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        double local_worst = -std::numeric_limits<double>::infinity();
        cplx local_pt{};
        std::vector<double> g(offsets.size());
        for (std::size_t j = lo; j < hi; ++j) {
            const cplx nu = cplx{0.0, -1.0} * dz[j] / std::abs(dz[j]);
            for (std::size_t k = 0; k < offsets.size(); ++k)
                g[k] = relative_stream(field, z[j] + offsets[k] * nu);
            for (std::size_t k = 1; k < offsets.size(); ++k) {
                const double slope = (g[k] - g[k - 1]) / (offsets[k] - offsets[k - 1]);
                if (slope > local_worst) {
                    local_worst = slope;
                    local_pt = z[j] + offsets[k] * nu;
                }
            }
        }
        std::scoped_lock lock(merge);
        if (local_worst > worst) { worst = local_worst; worst_pt = local_pt; }
    });
    rep.margin = -worst;
    rep.pass = worst < 0.0;
    rep.details.emplace_back("max_slope", worst);
    if (!rep.pass) rep.witnesses.push_back(worst_pt);
    return rep;
}

ProbeReport normal_derivative_bound_probe(const PatchField& field,
                                          std::span<const double> offsets, double tol) {
    const SigmaReport geo = classify(field.contour, critical_alpha());
    if (!geo.verdict) {
        const double m = std::min({geo.star_shaped.margin, geo.sector.margin,
                                   geo.reflection.margin});
        throw ProbePreconditionError("normal-bound", "domain outside the geometric class", m);
    }
    const Contour& c = field.contour;
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();

    ProbeReport rep;
    rep.name = "normal-bound";
    rep.samples = z.size() * offsets.size();
    double worst = std::numeric_limits<double>::infinity();
    cplx worst_pt{};
    std::mutex merge;
    parallel_for(z.size(), [&](std::size_t lo, std::size_t hi) {
        double local_worst = std::numeric_limits<double>::infinity();
        cplx local_pt{};
        for (std::size_t j = lo; j < hi; ++j) {
            const cplx nu = cplx{0.0, -1.0} * dz[j] / std::abs(dz[j]);
            for (double t : offsets) {
                const cplx x = z[j] + t * nu;
                const cplx grad = cplx{0.0, -1.0} * velocity(c, x);
                const double v = dot(grad, nu);
                if (v < local_worst) { local_worst = v; local_pt = x; }
            }
        }
        std::scoped_lock lock(merge);
        if (local_worst < worst) { worst = local_worst; worst_pt = local_pt; }
    });
    rep.margin = worst;
    rep.pass = worst >= -tol;
    rep.details.emplace_back("tol", tol);
    if (!rep.pass) rep.witnesses.push_back(worst_pt);
    return rep;
}

double plane_difference(const PatchField& field, double lambda, cplx x) {
    return relative_stream(field, reflect_across(lambda, x)) - relative_stream(field, x);
}

ProbeReport moving_plane_probe(const PatchField& field, std::span<const double> lambdas,
                               int grid_n) {
    require_vstate(field, "moving-plane");
    if (!(field.omega < 0.0))
        throw ProbePreconditionError("moving-plane", "requires omega < 0", field.omega);
    if (grid_n < 2) throw ContourError("grid too small");

    const double radius = outer_radius(field.contour);
    const double fd = 1e-5 * field.contour.diameter();

    ProbeReport rep;
    rep.name = "moving-plane";
    double min_w = std::numeric_limits<double>::infinity();
    double max_slope = -std::numeric_limits<double>::infinity();
    cplx worst_pt{};
    double worst_lambda = 0.0;

    for (double lambda : lambdas) {
        if (!(lambda > 0.0))
            throw ProbePreconditionError("moving-plane", "plane offsets must be positive", lambda);
        const double xmax = std::max(3.0 * radius, lambda + radius);
        const double half = 1.5 * radius;
        std::mutex merge;
        parallel_for(static_cast<std::size_t>(grid_n), [&](std::size_t lo, std::size_t hi) {
            double local_min = std::numeric_limits<double>::infinity();
            double local_slope = -std::numeric_limits<double>::infinity();
            cplx local_pt{};
            for (std::size_t i = lo; i < hi; ++i) {
                const double x1 = lambda + (i + 0.5) * (xmax - lambda) / grid_n;
                for (int j = 0; j < grid_n; ++j) {
                    const double x2 = -half + (j + 0.5) * (2.0 * half) / grid_n;
                    const cplx x{x1, x2};
                    const cplx xr{2.0 * lambda - x1, x2};
                    const double w = relative_stream(field, xr) - relative_stream(field, x);
                    if (w < local_min) { local_min = w; local_pt = x; }
                }
                const double y = -half + (i + 0.5) * (2.0 * half) / grid_n;
                const double slope = (relative_stream(field, {lambda + fd, y}) -
                                      relative_stream(field, {lambda - fd, y})) /
                                     (2.0 * fd);
                local_slope = std::max(local_slope, slope);
            }
            std::scoped_lock lock(merge);
            if (local_min < min_w) {
                min_w = local_min;
                worst_pt = local_pt;
                worst_lambda = lambda;
            }
            max_slope = std::max(max_slope, local_slope);
        });
        rep.samples += static_cast<std::size_t>(grid_n) * grid_n + grid_n;
    }

    rep.margin = min_w;
    rep.pass = min_w > 0.0 && max_slope < 0.0;
    rep.details.emplace_back("max_plane_slope", max_slope);
    rep.details.emplace_back("worst_lambda", worst_lambda);
    if (!rep.pass) rep.witnesses.push_back(worst_pt);
    return rep;
}

double radial_symmetry_measure(const PatchField& field, std::span<const double> radii,
                               int angles, double tol) {
    if (radii.empty()) throw ContourError("need at least one radius");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0.0)) throw ContourError("radii must be positive");
        if (k > 0 && !(radii[k] > radii[k - 1])) throw ContourError("radii must increase");
    }
    std::vector<double> means(radii.size());
    double measure = 0.0;
    std::vector<double> ring(angles);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        double sum = 0.0;
        for (int a = 0; a < angles; ++a) {
            const double th = two_pi * a / angles;
            ring[a] = relative_stream(field, std::polar(radii[k], th));
            sum += ring[a];
        }
        means[k] = sum / angles;
        double dev2 = 0.0;
        for (int a = 0; a < angles; ++a) {
            const double d = ring[a] - means[k];
            dev2 += d * d;
        }
        measure = std::max(measure, std::sqrt(dev2 / angles));
    }
    if (measure < tol)
        for (std::size_t k = 1; k < means.size(); ++k)
            if (!(means[k] < means[k - 1]))
                throw ContourError("radial profile of phi fails to decrease");
    return measure;
}

ProbeReport half_omega_identity_probe(const PatchField& field, double tol) {
    const Contour& c = field.contour;
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();
    const std::size_t n = z.size();
    const double cutoff = 1e-13 * c.diameter();

    ProbeReport rep;
    rep.name = "half-omega";
    rep.samples = n;

    double worst = 0.0;
    cplx worst_pt{};
    std::mutex merge;
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        double local_worst = -1.0;
        cplx local_pt{};
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
            const cplx cauchy = acc * cplx{0.0, -1.0} / static_cast<double>(n);
            const double v = std::abs(cauchy + zbi);
            if (v > local_worst) { local_worst = v; local_pt = z[i]; }
        }
        std::scoped_lock lock(merge);
        if (local_worst > worst) { worst = local_worst; worst_pt = local_pt; }
    });
    rep.margin = worst;
    rep.witnesses.push_back(worst_pt);

    double mean = 0.0, var = 0.0;
    for (const cplx& p : z) mean += std::norm(p);
    mean /= static_cast<double>(n);
    for (const cplx& p : z) var += (std::norm(p) - mean) * (std::norm(p) - mean);
    rep.details.emplace_back("radius_sq_stddev", std::sqrt(var / static_cast<double>(n)));

    const double residual_half = boundary_residual_sup(c, 0.5);
    rep.details.emplace_back("residual_at_half", residual_half);
    const bool diagnostic = residual_half > 1e-6;
    if (diagnostic) rep.details.emplace_back("diagnostic_only", 1.0);
    rep.pass = !diagnostic && worst <= tol;
    return rep;
}

ProbeReport laplacian_dichotomy_probe(const PatchField& field, int samples, double h,
                                      double tol) {
    const Contour& c = field.contour;
    const double collar = default_collar(c) + 2.0 * h;
    const cplx center = c.barycenter_cached();
    const double radius = outer_radius(c);

    std::vector<cplx> pts;
    std::vector<double> expected;
    for (const cplx& p : interior_sample_grid(c, samples)) {
        if (nearest_boundary_point(c, p).distance >= collar) {
            pts.push_back(p);
            expected.push_back(2.0 * field.omega - 1.0);
        }
    }
    const std::size_t interior_kept = pts.size();
    for (int ir = 0; ir < 12; ++ir) {
        const double r = radius + collar + (0.1 + 0.15 * ir) * radius;
        for (int a = 0; a < 32; ++a) {
            const cplx p = center + std::polar(r, two_pi * a / 32.0);
            if (nearest_boundary_point(c, p).distance >= collar) {
                pts.push_back(p);
                expected.push_back(2.0 * field.omega);
            }
        }
    }

    ProbeReport rep;
    rep.name = "laplacian";
    rep.samples = pts.size();
    double worst = -1.0;
    cplx worst_pt{};
    std::mutex merge;
    parallel_for(pts.size(), [&](std::size_t lo, std::size_t hi) {
        double local_worst = -1.0;
        cplx local_pt{};
        for (std::size_t i = lo; i < hi; ++i) {
            const cplx x = pts[i];
            const double lap = (relative_stream(field, x + cplx{h, 0.0}) +
                                relative_stream(field, x - cplx{h, 0.0}) +
                                relative_stream(field, x + cplx{0.0, h}) +
                                relative_stream(field, x - cplx{0.0, h}) -
                                4.0 * relative_stream(field, x)) /
                               (h * h);
            const double err = std::abs(lap - expected[i]);
            if (err > local_worst) { local_worst = err; local_pt = x; }
        }
        std::scoped_lock lock(merge);
        if (local_worst > worst) { worst = local_worst; worst_pt = local_pt; }
    });
    rep.margin = worst;
    rep.pass = worst <= tol;
    rep.details.emplace_back("h", h);
    rep.details.emplace_back("tol", tol);
    rep.details.emplace_back("interior_kept", static_cast<double>(interior_kept));
    rep.details.emplace_back("exterior_kept", static_cast<double>(pts.size() - interior_kept));
    if (!rep.pass) rep.witnesses.push_back(worst_pt);
    return rep;
}

} // namespace vpatch
