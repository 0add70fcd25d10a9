#include "vpatch/sigma.hpp"
#include "vpatch/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace vpatch {

double critical_alpha() { return std::acos(1.0 / std::sqrt(5.0)); }

namespace {

enum class Side { inside, outside, ambiguous };

// Cheap inside/outside classification: winding number when the point is safely
// away from the nodes, projection sign in the near band.
Side classify_point(const Contour& c, cplx y, double delta, double* distance_out = nullptr) {
    const auto& z = c.node_positions();
    const auto& dz = c.node_derivatives();
    const std::size_t n = z.size();
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) dmin = std::min(dmin, std::abs(z[j] - y));
    if (dmin > 6.0 * c.node_spacing()) {
        double winding = 0.0;
        for (std::size_t j = 0; j < n; ++j) winding += (dz[j] / (z[j] - y)).imag();
        winding /= static_cast<double>(n);
        if (distance_out) *distance_out = dmin; // lower bound is enough far away
        return std::lround(winding) == 1 ? Side::inside : Side::outside;
    }
    const Projection pr = nearest_boundary_point(c, y);
    if (distance_out) *distance_out = pr.distance;
    if (pr.distance <= delta) return Side::ambiguous;
    const BoundaryPoint bp = c.evaluate(pr.theta);
    return dot(y - bp.position, bp.normal) < 0.0 ? Side::inside : Side::outside;
}

} // namespace

std::vector<cplx> interior_sample_grid(const Contour& c, int target) {
    if (target < 1) throw ContourError("sample target must be positive");
    const auto& z = c.node_positions();
    double xmin = z[0].real(), xmax = xmin, ymin = z[0].imag(), ymax = ymin;
    for (const cplx& p : z) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double w = xmax - xmin, h = ymax - ymin;
    const double cell = std::sqrt(w * h / target);
    const int nx = std::max(1, static_cast<int>(std::ceil(w / cell)));
    const int ny = std::max(1, static_cast<int>(std::ceil(h / cell)));
    const double delta = 1e-8 * c.diameter();

    std::vector<cplx> kept;
    kept.reserve(static_cast<std::size_t>(target));
    std::mutex merge;
    parallel_for(static_cast<std::size_t>(nx), [&](std::size_t lo, std::size_t hi) {
        std::vector<cplx> local;
        for (std::size_t i = lo; i < hi; ++i) {
            const double x = xmin + (i + 0.5) * w / nx;
            for (int j = 0; j < ny; ++j) {
                const cplx p{x, ymin + (j + 0.5) * h / ny};
                if (classify_point(c, p, delta) == Side::inside) local.push_back(p);
            }
        }
        std::scoped_lock lock(merge);
        kept.insert(kept.end(), local.begin(), local.end());
    });
    std::sort(kept.begin(), kept.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return kept;
}

ConditionReport check_star_shaped(const Contour& c) {
    const cplx b = area_and_barycenter(c).barycenter;
    const Contour cc = c.recentered();
    const auto& z = cc.node_positions();
    const auto& dz = cc.node_derivatives();
    ConditionReport rep;
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j) {
        const cplx nu = cplx{0.0, -1.0} * dz[j] / std::abs(dz[j]);
        const double v = dot(z[j], nu);
        if (v < rep.margin) {
            rep.margin = v;
            rep.witness_boundary = z[j] + b;
        }
    }
    rep.pass = rep.margin >= -1e-9 * c.diameter();
    return rep;
}

ConditionReport check_sector(const Contour& c, double alpha, int interior_samples) {
    if (!(alpha > 0.0) || alpha > std::numbers::pi / 2)
        throw ContourError("aperture must lie in (0, pi/2]");
    const cplx b = area_and_barycenter(c).barycenter;
    const Contour cc = c.recentered();
    const auto samples = interior_sample_grid(cc, interior_samples);
    const auto& z = cc.node_positions();
    const auto& dz = cc.node_derivatives();
    const double threshold = std::cos(alpha);
    const double tol = 1e-9 * c.diameter();

    ConditionReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    std::mutex merge;
    parallel_for(z.size(), [&](std::size_t lo, std::size_t hi) {
        double local_worst = -std::numeric_limits<double>::infinity();
        cplx local_node{}, local_pt{};
        for (std::size_t j = lo; j < hi; ++j) {
            const cplx nu = cplx{0.0, -1.0} * dz[j] / std::abs(dz[j]);
            for (const cplx& y : samples) {
                const cplx d = y - z[j];
                const double r = std::abs(d);
                if (r < tol) continue;
                const double excess = dot(d, nu) - threshold * r;
                if (excess > local_worst) {
                    local_worst = excess;
                    local_node = z[j];
                    local_pt = y;
                }
            }
        }
        std::scoped_lock lock(merge);
        if (local_worst > worst) {
            worst = local_worst;
            rep.witness_boundary = local_node + b;
            rep.witness_point = local_pt + b;
        }
    });
    rep.margin = worst == 0.0 ? 0.0 : -worst;
    rep.pass = worst <= tol;
    return rep;
}

ConditionReport check_reflection(const Contour& c, int interior_samples) {
    const cplx b = area_and_barycenter(c).barycenter;
    const Contour cc = c.recentered();
    const auto samples = interior_sample_grid(cc, interior_samples);
    const auto& z = cc.node_positions();
    const auto& dz = cc.node_derivatives();
    const double delta = 1e-8 * cc.diameter();
    const double tol = 1e-9 * c.diameter();

    ConditionReport rep;
    double worst = 0.0;
    std::size_t excluded = 0;
    std::mutex merge;
    parallel_for(z.size(), [&](std::size_t lo, std::size_t hi) {
        double local_worst = 0.0;
        std::size_t local_excluded = 0;
        cplx local_node{}, local_pt{};
        for (std::size_t j = lo; j < hi; ++j) {
            const cplx nu = cplx{0.0, -1.0} * dz[j] / std::abs(dz[j]);
            for (const cplx& y : samples) {
                const double s = dot(y - z[j], nu);
                if (s <= 0.0) continue;
                const cplx mirrored = y - 2.0 * s * nu;
                double dist = 0.0;
                switch (classify_point(cc, mirrored, delta, &dist)) {
                case Side::inside: break;
                case Side::ambiguous: ++local_excluded; break;
                case Side::outside:
                    if (dist > local_worst) {
                        local_worst = dist;
                        local_node = z[j];
                        local_pt = mirrored;
                    }
                    break;
                }
            }
        }
        std::scoped_lock lock(merge);
        excluded += local_excluded;
        if (local_worst > worst) {
            worst = local_worst;
            rep.witness_boundary = local_node + b;
            rep.witness_point = local_pt + b;
        }
    });
    rep.margin = worst == 0.0 ? 0.0 : -worst;
    rep.excluded = excluded;
    rep.pass = worst <= tol;
    return rep;
}

SigmaReport classify(const Contour& c, double alpha, int interior_samples) {
    SigmaReport rep;
    rep.alpha = alpha;
    rep.threshold = std::cos(alpha);
    rep.tol_geom = 1e-9 * c.diameter();
    rep.boundary_nodes = static_cast<int>(c.node_count());
    rep.interior_samples =
        static_cast<int>(interior_sample_grid(c.recentered(), interior_samples).size());
    rep.star_shaped = check_star_shaped(c);
    rep.sector = check_sector(c, alpha, interior_samples);
    rep.reflection = check_reflection(c, interior_samples);
    rep.verdict = rep.star_shaped.pass && rep.sector.pass && rep.reflection.pass;
    rep.exclusion_flag = rep.star_shaped.excluded + rep.sector.excluded + rep.reflection.excluded > 0;
    return rep;
}

} // namespace vpatch
