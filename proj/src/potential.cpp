#include "vpatch/potential.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vpatch {

// weights of the periodic log-quadrature
//   \int_0^{2pi} ln(4 sin^2((t - s)/2)) f(s) ds  ~=  sum_j R_j(t) f(s_j),
// s_j = 2 pi j / N, exact for trigonometric polynomials up to degree N/2.
double log_weight(double dt, int half_n) {
    double s = 0.0;
    for (int m = 1; m < half_n; ++m) s += std::cos(m * dt) / m;
    s *= -2.0 * std::numbers::pi / half_n;
    s -= std::numbers::pi / (static_cast<double>(half_n) * half_n) * std::cos(half_n * dt);
    return s;
}

namespace {

constexpr double pi = std::numbers::pi;

using gk = boost::math::quadrature::gauss_kronrod<double, 31>;

double adaptive(const std::function<double(double)>& f, double a, double b) {
    // depth must stay bounded: near-singular kernels push the error estimate into
    // roundoff noise, and an unreachable tolerance would cascade the bisection
    return gk::integrate(f, a, b, 10, 1e-12);
}

std::vector<double> log_weight_table(int n) {
    // node-to-node differences are circulant
    std::vector<double> R(n);
    int half = n / 2;
    for (int d = 0; d < n; ++d) R[d] = log_weight(2.0 * pi * d / n, half);
    return R;
}

// flux weight (y - x) . nu ds = -Im[(z - x) conj(z')] dtheta
double flux_weight(cplx z, cplx dz, cplx x) { return -((z - x) * std::conj(dz)).imag(); }

// psi at a boundary point z(t) via singularity subtraction of the log kernel
double stream_on_boundary(const Contour& c, double t) {
    auto nodes = c.node_positions();
    auto dnodes = c.node_derivatives();
    int n = static_cast<int>(nodes.size());
    cplx x = c.point(t);
    double speed_t = std::abs(c.derivative(t));

    double smooth = 0.0, singular = 0.0;
    for (int j = 0; j < n; ++j) {
        double tj = 2.0 * pi * j / n;
        double w = flux_weight(nodes[j], dnodes[j], x);
        double half_chord = 2.0 * std::abs(std::sin(0.5 * (t - tj)));
        double a;
        double d = std::abs(nodes[j] - x);
        if (half_chord < 1e-12 || d < 1e-14 * c.diameter())
            a = 2.0 * std::log(speed_t); // removable: |z(t)-z(s)| / (2|sin((t-s)/2)|) -> |z'(t)|
        else
            a = 2.0 * std::log(d / half_chord);
        smooth += (a - 1.0) * w;
        singular += log_weight(t - tj, n / 2) * w;
    }
    return (2.0 * pi / n * smooth + singular) / (8.0 * pi);
}

double stream_adaptive(const Contour& c, cplx x, double t_star) {
    auto f = [&](double s) {
        cplx z = c.point(s), dz = c.derivative(s);
        return (2.0 * std::log(std::abs(z - x)) - 1.0) * flux_weight(z, dz, x);
    };
    // the integrand peaks at the projection parameter: make it a panel endpoint
    double v = adaptive(f, t_star, t_star + pi) + adaptive(f, t_star + pi, t_star + 2.0 * pi);
    return v / (8.0 * pi);
}

// (1/2pi i) \oint (conj(z) - conj(xi)) / (xi - z) dxi  =  4 dpsi/dz
cplx gradient_kernel_integral(const Contour& c, cplx z) {
    Projection pr = nearest_boundary_point(c, z);
    double near_band = 5.0 * c.node_spacing();
    auto nodes = c.node_positions();
    auto dnodes = c.node_derivatives();
    int n = static_cast<int>(nodes.size());

    if (pr.distance <= 1e-12 * c.diameter() || pr.distance > near_band) {
        cplx zb = std::conj(z);
        cplx s(0.0, 0.0);
        double eps = 1e-13 * c.diameter();
        for (int j = 0; j < n; ++j) {
            cplx diff = nodes[j] - z;
            if (std::abs(diff) < eps)
                s += -std::conj(dnodes[j]); // limit of the kernel along the curve
            else
                s += (zb - std::conj(nodes[j])) / diff * dnodes[j];
        }
        return s / cplx(0.0, static_cast<double>(n));
    }

    cplx zb = std::conj(z);
    auto fre = [&](double s) {
        cplx zs = c.point(s), dzs = c.derivative(s);
        return (((zb - std::conj(zs)) / (zs - z)) * dzs).real();
    };
    auto fim = [&](double s) {
        cplx zs = c.point(s), dzs = c.derivative(s);
        return (((zb - std::conj(zs)) / (zs - z)) * dzs).imag();
    };
    double t0 = pr.theta;
    cplx I(adaptive(fre, t0, t0 + pi) + adaptive(fre, t0 + pi, t0 + 2.0 * pi),
           adaptive(fim, t0, t0 + pi) + adaptive(fim, t0 + pi, t0 + 2.0 * pi));
    return I / cplx(0.0, 2.0 * pi);
}

} // namespace

double stream_function(const Contour& c, cplx x) {
    Projection pr = nearest_boundary_point(c, x);
    if (pr.distance <= 1e-12 * c.diameter()) return stream_on_boundary(c, pr.theta);
    if (pr.distance <= 5.0 * c.node_spacing()) return stream_adaptive(c, x, pr.theta);

    auto nodes = c.node_positions();
    auto dnodes = c.node_derivatives();
    int n = static_cast<int>(nodes.size());
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        double d = std::abs(nodes[j] - x);
        s += (2.0 * std::log(d) - 1.0) * flux_weight(nodes[j], dnodes[j], x);
    }
    return s / (4.0 * n);
}

std::vector<double> boundary_stream_values(const Contour& c) {
    auto nodes = c.node_positions();
    auto dnodes = c.node_derivatives();
    int n = static_cast<int>(nodes.size());
    std::vector<double> R = log_weight_table(n);
    std::vector<double> speeds(n);
    for (int j = 0; j < n; ++j) speeds[j] = std::abs(dnodes[j]);

    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        cplx x = nodes[i];
        double smooth = 0.0, singular = 0.0;
        for (int j = 0; j < n; ++j) {
            double w = flux_weight(nodes[j], dnodes[j], x);
            double a;
            if (j == i) {
                a = 2.0 * std::log(speeds[i]);
            } else {
                double half_chord = 2.0 * std::abs(std::sin(pi * (i - j) / n));
                a = 2.0 * std::log(std::abs(nodes[j] - x) / half_chord);
            }
            int d = i - j;
            if (d < 0) d += n;
            smooth += (a - 1.0) * w;
            singular += R[d] * w;
        }
        out[i] = (2.0 * pi / n * smooth + singular) / (8.0 * pi);
    }
    return out;
}

cplx velocity(const Contour& c, cplx x) {
    cplx I = gradient_kernel_integral(c, x); // 4 dpsi/dz
    return std::conj(cplx(0.0, -0.5) * I);
}

cplx cauchy_transform(const Contour& c, cplx x) { return -gradient_kernel_integral(c, x); }

double compute_mu(const Contour& c, double omega) {
    std::vector<double> psi = boundary_stream_values(c);
    auto nodes = c.node_positions();
    auto dnodes = c.node_derivatives();
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        double w = std::abs(dnodes[j]);
        num += (psi[j] - 0.5 * omega * std::norm(nodes[j])) * w;
        den += w;
    }
    return num / den;
}

PatchField make_patch_field(const Contour& c, double omega) {
    return PatchField{c, omega, compute_mu(c, omega)};
}

double relative_stream(const PatchField& field, cplx x) {
    return field.mu + 0.5 * field.omega * std::norm(x) - stream_function(field.contour, x);
}

double integral_equation_residual(const PatchField& field, std::span<const cplx> samples) {
    const Contour& c = field.contour;
    double mu_c = compute_mu(c, field.omega);
    double worst = 0.0;
    for (cplx y : samples) {
        double psi = stream_function(c, y);
        double phi = field.mu + 0.5 * field.omega * std::norm(y) - psi;
        bool inside = contains(c, y);
        if ((phi > 0.0) != inside) throw LemmaViolationError(y, phi, inside);
        double rhs = mu_c + 0.5 * field.omega * std::norm(y) - psi;
        worst = std::max(worst, std::abs(phi - rhs));
    }
    return worst;
}

FarFieldModel far_field_fit(const Contour& c, double /*omega*/, double base_radius) {
    double R = base_radius > 0 ? base_radius : 3.0 * c.diameter();
    double A = area_and_barycenter(c).area;
    auto ring_max = [&](double r) {
        double m = 0.0;
        for (int j = 0; j < 64; ++j) {
            cplx x = std::polar(r, 2.0 * pi * j / 64.0);
            double h = stream_function(c, x) - A / (2.0 * pi) * std::log(r);
            m = std::max(m, std::abs(h));
        }
        return m;
    };
    double m0 = ring_max(R), m1 = ring_max(2.0 * R), m2 = ring_max(4.0 * R);
    double floor = 1e-13 * std::max(1.0, A / (2.0 * pi) * std::abs(std::log(R)));
    if (m0 < floor && m1 < floor && m2 < floor)
        return {A, 0.0, std::numeric_limits<double>::infinity()};
    double exponent = std::log(m0 / m2) / std::log(4.0);
    if (!(exponent >= 1.8)) throw FarFieldDecayError(exponent);
    return {A, m0 * R * R, exponent};
}

} // namespace vpatch
