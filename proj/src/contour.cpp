#include "vpatch/contour.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vpatch {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, 2.0 * pi);
    if (t < 0) t += 2.0 * pi;
    return t;
}

// Strict proper-crossing test for the simplicity sweep. Touching counts as a
// crossing: a valid contour keeps node-polygon segments strictly apart.
bool segments_cross(cplx a, cplx b, cplx c, cplx d, double eps) {
    auto orient = [](cplx p, cplx q, cplx r) { return cross(q - p, r - p); };
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
        ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps)))
        return true;
    // near-collinear or touching configurations: fall back to distance
    auto seg_dist = [](cplx p, cplx q, cplx r) {
        cplx d1 = q - p;
        double L2 = std::norm(d1);
        double t = L2 > 0 ? std::clamp(dot(r - p, d1) / L2, 0.0, 1.0) : 0.0;
        return std::abs(r - (p + t * d1));
    };
    double gap = std::min(std::min(seg_dist(a, b, c), seg_dist(a, b, d)),
                          std::min(seg_dist(c, d, a), seg_dist(c, d, b)));
    return gap < eps;
}

} // namespace

Contour::Contour(std::vector<cplx> coefficients, int k_min, int node_count, Validation level) {
    if (coefficients.empty()) throw ContourError("empty coefficient list");
    int k_max = k_min + static_cast<int>(coefficients.size()) - 1;
    kmax_ = std::max(std::abs(k_min), std::abs(k_max));
    coef_.assign(2 * kmax_ + 1, cplx(0.0, 0.0));
    for (int i = 0; i < static_cast<int>(coefficients.size()); ++i) {
        cplx c = coefficients[i];
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ContourError("non-finite coefficient");
        coef_[k_min + i + kmax_] = c;
    }
    if (node_count % 2 != 0) ++node_count;
    if (node_count < 2 * kmax_ + 2)
        throw ContourError("node count too small for the coefficient bandwidth");
    if (node_count < 16) node_count = 16;

    // orientation: reverse the parameter when the signed area is negative
    double coef_area = 0.0, scale = 0.0;
    for (int k = -kmax_; k <= kmax_; ++k) {
        coef_area += k * std::norm(coef_[k + kmax_]);
        scale += std::abs(coef_[k + kmax_]);
    }
    if (std::abs(coef_area) * pi < 1e-14 * scale * scale)
        throw ContourError("degenerate contour: vanishing area");
    if (coef_area < 0) std::reverse(coef_.begin(), coef_.end());

    build_cache(node_count);
    validate(level);
}

cplx Contour::coefficient(int k) const {
    if (k < -kmax_ || k > kmax_) return {0.0, 0.0};
    return coef_[k + kmax_];
}

cplx Contour::point(double theta) const {
    cplx w = std::polar(1.0, theta);
    cplx e = std::polar(1.0, -kmax_ * theta);
    cplx s(0.0, 0.0);
    for (int i = 0; i < 2 * kmax_ + 1; ++i) {
        s += coef_[i] * e;
        e *= w;
    }
    return s;
}

cplx Contour::derivative(double theta) const {
    cplx w = std::polar(1.0, theta);
    cplx e = std::polar(1.0, -kmax_ * theta);
    cplx s(0.0, 0.0);
    for (int i = 0; i < 2 * kmax_ + 1; ++i) {
        int k = i - kmax_;
        s += coef_[i] * cplx(0.0, k) * e;
        e *= w;
    }
    return s;
}

cplx Contour::second_derivative(double theta) const {
    cplx w = std::polar(1.0, theta);
    cplx e = std::polar(1.0, -kmax_ * theta);
    cplx s(0.0, 0.0);
    for (int i = 0; i < 2 * kmax_ + 1; ++i) {
        double k = i - kmax_;
        s += coef_[i] * (-k * k) * e;
        e *= w;
    }
    return s;
}

BoundaryPoint Contour::evaluate(double theta) const {
    cplx z = point(theta);
    cplx dz = derivative(theta);
    double speed = std::abs(dz);
    if (speed < 1e-12 * (perimeter_ / (2.0 * pi)))
        throw ContourError("degenerate tangent");
    cplx tangent = dz / speed;
    return BoundaryPoint{z, tangent, cplx(0.0, -1.0) * tangent, speed};
}

double Contour::node_angle(int j) const { return 2.0 * pi * j / node_count(); }

std::vector<cplx> Contour::sample(int m) const {
    std::vector<cplx> out(m);
    for (int j = 0; j < m; ++j) out[j] = point(2.0 * pi * j / m);
    return out;
}

void Contour::build_cache(int node_count) {
    nodes_.resize(node_count);
    dnodes_.resize(node_count);
    for (int j = 0; j < node_count; ++j) {
        double t = 2.0 * pi * j / node_count;
        nodes_[j] = point(t);
        dnodes_[j] = derivative(t);
    }

    // quadratures on a grid fine enough that the trig-polynomial integrands are exact
    int m = std::max(node_count, 4 * (kmax_ + 2));
    double area = 0.0, per = 0.0;
    cplx first(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
        double t = 2.0 * pi * j / m;
        cplx z = point(t), dz = derivative(t);
        area += cross(z, dz);      // Im[conj(z) z']
        per += std::abs(dz);
        first += std::norm(z) * dz; // for (1/2i) \oint |z|^2 dz
    }
    area_ = pi * area / m;
    perimeter_ = 2.0 * pi * per / m;
    barycenter_ = (2.0 * pi / m) * first / (cplx(0.0, 2.0) * area_);

    double d2 = 0.0;
    int stride = std::max(1, node_count / 512);
    for (int i = 0; i < node_count; i += stride)
        for (int j = i + stride; j < node_count; j += stride)
            d2 = std::max(d2, std::norm(nodes_[i] - nodes_[j]));
    diameter_ = std::sqrt(d2);
}

void Contour::validate(Validation level) {
    if (area_ <= 0) throw ContourError("orientation normalization failed");
    double ref_speed = perimeter_ / (2.0 * pi);
    for (const cplx& dz : dnodes_)
        if (std::abs(dz) < 1e-8 * ref_speed)
            throw ContourError("degenerate tangent at a node");
    if (level == Validation::fast) return;

    int n = node_count();
    double eps = 1e-12 * diameter_;
    for (int i = 0; i < n; ++i) {
        cplx a = nodes_[i], b = nodes_[(i + 1) % n];
        double alo = std::min(a.real(), b.real()), ahi = std::max(a.real(), b.real());
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent around the seam
            cplx c = nodes_[j], d = nodes_[(j + 1) % n];
            if (std::max(c.real(), d.real()) < alo - eps) continue;
            if (std::min(c.real(), d.real()) > ahi + eps) continue;
            if (segments_cross(a, b, c, d, eps))
                throw ContourError("self-intersecting contour");
        }
    }
}

Contour Contour::circle(double radius, int node_count) {
    if (radius <= 0) throw ContourError("radius must be positive");
    return Contour({cplx(radius, 0.0)}, 1, node_count);
}

Contour Contour::ellipse(double a, double b, int node_count) {
    if (a <= 0 || b <= 0) throw ContourError("semi-axes must be positive");
    // z = a cos t + i b sin t = (a+b)/2 e^{it} + (a-b)/2 e^{-it}
    return Contour({cplx((a - b) / 2.0, 0.0), cplx(0.0, 0.0), cplx((a + b) / 2.0, 0.0)},
                   -1, node_count);
}

Contour Contour::from_nodes(std::span<const cplx> pts, Validation level) {
    int n = static_cast<int>(pts.size());
    if (n < 16 || n % 2 != 0) throw ContourError("node interpolation needs an even count >= 16");
    int kmax = n / 2 - 1;
    std::vector<cplx> coef(2 * kmax + 1);
    cplx w0 = std::polar(1.0, -2.0 * pi / n);
    for (int k = -kmax; k <= kmax; ++k) {
        cplx w = std::polar(1.0, -2.0 * pi * k / n);
        cplx e(1.0, 0.0), s(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            s += pts[j] * e;
            e *= w;
        }
        coef[k + kmax] = s / static_cast<double>(n);
    }
    (void)w0;
    return Contour(std::move(coef), -kmax, n, level);
}

Contour Contour::fit_polyline(std::span<const cplx> pts, int max_mode, int node_count) {
    std::vector<cplx> p(pts.begin(), pts.end());
    if (p.size() >= 2 && std::abs(p.front() - p.back()) <
                             1e-12 * (std::abs(p.front()) + std::abs(p.back()) + 1.0))
        p.pop_back(); // tolerate an explicitly closed ring
    int n = static_cast<int>(p.size());
    if (n < 8) throw ContourError("polyline too short to fit");
    if (max_mode <= 0) max_mode = std::min(64, (n - 2) / 2);
    if (2 * max_mode + 1 > n) throw ContourError("polyline underdetermines the requested modes");

    std::vector<double> t(n, 0.0);
    double len = 0.0;
    for (int i = 1; i < n; ++i) {
        len += std::abs(p[i] - p[i - 1]);
        t[i] = len;
    }
    len += std::abs(p[0] - p[n - 1]);
    if (len <= 0) throw ContourError("degenerate polyline");
    for (double& ti : t) ti *= 2.0 * pi / len;

    Eigen::MatrixXcd V(n, 2 * max_mode + 1);
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
        rhs(i) = p[i];
        for (int k = -max_mode; k <= max_mode; ++k)
            V(i, k + max_mode) = std::polar(1.0, k * t[i]);
    }
    Eigen::VectorXcd c = V.colPivHouseholderQr().solve(rhs);
    std::vector<cplx> coef(2 * max_mode + 1);
    for (int k = -max_mode; k <= max_mode; ++k) coef[k + max_mode] = c(k + max_mode);
    if (node_count <= 0) node_count = std::max(256, 4 * (max_mode + 1));
    return Contour(std::move(coef), -max_mode, node_count);
}

Contour Contour::rotated(double angle) const {
    std::vector<cplx> c = coef_;
    cplx r = std::polar(1.0, angle);
    for (auto& ck : c) ck *= r;
    return Contour(std::move(c), -kmax_, node_count(), Validation::fast);
}

Contour Contour::translated(cplx shift) const {
    std::vector<cplx> c = coef_;
    c[kmax_] += shift;
    return Contour(std::move(c), -kmax_, node_count(), Validation::fast);
}

Contour Contour::scaled(double factor) const {
    if (factor <= 0) throw ContourError("scale factor must be positive");
    std::vector<cplx> c = coef_;
    cplx b = barycenter_;
    for (auto& ck : c) ck *= factor;
    c[kmax_] += b * (1.0 - factor);
    return Contour(std::move(c), -kmax_, node_count(), Validation::fast);
}

Contour Contour::with_node_count(int n) const {
    return Contour(coef_, -kmax_, n, Validation::fast);
}

Contour Contour::recentered() const { return translated(-barycenter_); }

AreaBarycenter area_and_barycenter(const Contour& c) {
    double area = c.signed_area();
    if (area <= 0) throw ContourError("nonpositive area"); // construction forbids this
    return {area, c.barycenter_cached()};
}

Projection nearest_boundary_point(const Contour& c, cplx x) {
    auto nodes = c.node_positions();
    int n = static_cast<int>(nodes.size());
    double h = 2.0 * pi / n;

    // all local minima of the node distances, best few refined
    std::vector<std::pair<double, int>> cand;
    for (int j = 0; j < n; ++j) {
        double d = std::abs(nodes[j] - x);
        double dp = std::abs(nodes[(j + n - 1) % n] - x);
        double dn = std::abs(nodes[(j + 1) % n] - x);
        if (d <= dp && d <= dn) cand.push_back({d, j});
    }
    std::sort(cand.begin(), cand.end());
    if (cand.size() > 4) cand.resize(4);

    double best_t = 0.0, best_d = std::numeric_limits<double>::max();
    for (auto [d0, j] : cand) {
        double lo = (j - 1) * h, hi = (j + 1) * h;
        // golden-section narrowing, then Newton polish on d/dt |z-x|^2
        double a = lo, b = hi;
        const double gr = 0.6180339887498949;
        double t1 = b - gr * (b - a), t2 = a + gr * (b - a);
        double f1 = std::norm(c.point(t1) - x), f2 = std::norm(c.point(t2) - x);
        for (int it = 0; it < 24; ++it) {
            if (f1 < f2) {
                b = t2; t2 = t1; f2 = f1;
                t1 = b - gr * (b - a);
                f1 = std::norm(c.point(t1) - x);
            } else {
                a = t1; t1 = t2; f1 = f2;
                t2 = a + gr * (b - a);
                f2 = std::norm(c.point(t2) - x);
            }
        }
        double t = 0.5 * (a + b);
        for (int it = 0; it < 8; ++it) {
            cplx z = c.point(t), dz = c.derivative(t), ddz = c.second_derivative(t);
            double F = dot(z - x, dz);
            double dF = std::norm(dz) + dot(z - x, ddz);
            if (dF <= 0) break;
            double step = F / dF;
            t -= step;
            t = std::clamp(t, lo, hi);
            if (std::abs(step) < 1e-15) break;
        }
        double d = std::abs(c.point(t) - x);
        if (d < best_d) {
            best_d = d;
            best_t = wrap_angle(t);
        }
    }
    return {best_t, best_d};
}

bool contains(const Contour& c, cplx x, double delta) {
    if (delta < 0) delta = 1e-8 * c.diameter();
    Projection pr = nearest_boundary_point(c, x);
    if (pr.distance <= delta) throw BoundaryAmbiguityError(x, pr.distance);

    if (pr.distance > 5.0 * c.node_spacing()) {
        // spectral quadrature of the Cauchy index
        auto nodes = c.node_positions();
        auto dnodes = c.node_derivatives();
        int n = static_cast<int>(nodes.size());
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += (dnodes[j] / (nodes[j] - x)).imag();
        long w = std::lround(s / n);
        return w == 1;
    }
    // close to the boundary the winding quadrature degrades; the projected
    // foot point decides the side instead
    BoundaryPoint bp = c.evaluate(pr.theta);
    return dot(x - bp.position, bp.normal) < 0.0;
}

ReflectionFrame tangent_line_frame(const Contour& c, double theta) {
    BoundaryPoint bp = c.evaluate(theta);
    return ReflectionFrame{bp.position, bp.normal};
}

namespace {

double directed_hausdorff(const Contour& a, const Contour& b) {
    int m = 8 * std::max({a.node_count(), b.node_count(), 128});
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
        cplx p = a.point(2.0 * pi * j / m);
        worst = std::max(worst, nearest_boundary_point(b, p).distance);
    }
    return worst;
}

} // namespace

double hausdorff_distance(const Contour& a, const Contour& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double PolarShape::radius(double theta) const {
    double r = base_radius;
    for (std::size_t j = 0; j < cosines.size(); ++j)
        r += cosines[j] * std::cos((j + 1) * symmetry * theta);
    return r;
}

Contour PolarShape::to_contour(int node_count) const {
    if (symmetry < 1) throw ContourError("symmetry order must be >= 1");
    int J = static_cast<int>(cosines.size());
    int kmax = symmetry * J + 1;
    for (int j = 0; j < 720; ++j)
        if (radius(2.0 * pi * j / 720.0) <= 0)
            throw ContourError("polar radius must stay positive");

    // r(t) e^{it}: cos(j m t) e^{it} splits into e^{i(1 +/- jm)t}/2
    std::vector<cplx> coef(2 * kmax + 1, cplx(0.0, 0.0));
    coef[1 + kmax] = cplx(base_radius, 0.0);
    for (int j = 1; j <= J; ++j) {
        double half = 0.5 * cosines[j - 1];
        coef[1 + j * symmetry + kmax] += half;
        coef[1 - j * symmetry + kmax] += half;
    }
    if (node_count <= 0) node_count = std::max(256, 8 * (kmax + 1));
    return Contour(std::move(coef), -kmax, node_count);
}

} // namespace vpatch
