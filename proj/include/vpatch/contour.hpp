#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpatch {

using cplx = std::complex<double>;

inline double dot(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct ContourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// contains() refuses points closer to the boundary than the caller's tolerance.
struct BoundaryAmbiguityError : ContourError {
    cplx query;
    double distance;
    BoundaryAmbiguityError(cplx q, double d)
        : ContourError("point is within tolerance of the boundary"), query(q), distance(d) {}
};

struct BoundaryPoint {
    cplx position;
    cplx tangent; // unit
    cplx normal;  // unit outward, = -i * tangent
    double speed; // |z'(theta)|
};

struct AreaBarycenter {
    double area;
    cplx barycenter;
};

struct Projection {
    double theta;
    double distance;
};

enum class Validation { full, fast }; // fast skips the O(N^2) simplicity sweep (hot loops)

// Closed curve as a truncated complex Fourier series z(theta) = sum c_k e^{ik theta},
// k in [-K, K], carrying its quadrature node count. Immutable; construction
// normalizes orientation to counterclockwise and validates the curve.
class Contour {
public:
    Contour(std::vector<cplx> coefficients, int k_min, int node_count,
            Validation level = Validation::full);

    static Contour circle(double radius, int node_count = 256);
    static Contour ellipse(double a, double b, int node_count = 256);
    // Trigonometric interpolation through equally-spaced samples of a closed curve.
    static Contour from_nodes(std::span<const cplx> pts, Validation level = Validation::fast);
    // Least-squares Fourier fit of an ordered closed polyline (chord-length parameter).
    static Contour fit_polyline(std::span<const cplx> pts, int max_mode = 0, int node_count = 0);

    int max_mode() const { return kmax_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    cplx coefficient(int k) const; // 0 outside [-K, K]
    const std::vector<cplx>& coefficients() const { return coef_; } // index 0 <-> k = -K

    cplx point(double theta) const;
    cplx derivative(double theta) const;
    cplx second_derivative(double theta) const;
    BoundaryPoint evaluate(double theta) const;

    std::span<const cplx> node_positions() const { return nodes_; }
    std::span<const cplx> node_derivatives() const { return dnodes_; }
    double node_angle(int j) const;

    double perimeter() const { return perimeter_; }
    double diameter() const { return diameter_; }
    double node_spacing() const { return perimeter_ / node_count(); }
    double signed_area() const { return area_; }
    cplx barycenter_cached() const { return barycenter_; }

    Contour rotated(double angle) const;
    Contour translated(cplx shift) const;
    Contour scaled(double factor) const;       // about the barycenter
    Contour with_node_count(int node_count) const;
    Contour recentered() const;                // barycenter to origin

    std::vector<cplx> sample(int m) const; // m equispaced points in parameter

private:
    std::vector<cplx> coef_;
    int kmax_;
    std::vector<cplx> nodes_, dnodes_;
    double area_, perimeter_, diameter_;
    cplx barycenter_;

    void build_cache(int node_count);
    void validate(Validation level);
};

// Signed area and barycenter by boundary quadrature (trapezoid rule is spectral here).
AreaBarycenter area_and_barycenter(const Contour& c);

// Globally nearest boundary point (node scan + Newton refinement of |z(theta)-x|^2).
Projection nearest_boundary_point(const Contour& c, cplx x);

// Winding-number membership; throws BoundaryAmbiguityError within delta of the boundary.
// delta < 0 selects the default 1e-8 * diameter.
bool contains(const Contour& c, cplx x, double delta = -1.0);

struct ReflectionFrame {
    cplx base;
    cplx normal; // unit
    cplx reflect(cplx x) const { return x - 2.0 * dot(x - base, normal) * normal; }
};

ReflectionFrame tangent_line_frame(const Contour& c, double theta);

// Symmetric Hausdorff distance between the two curves (dense samples, each
// refined by projection onto the other curve).
double hausdorff_distance(const Contour& a, const Contour& b);

// r(theta) = base_radius + sum_j cosines[j-1] * cos(j * symmetry * theta);
// the m-fold symmetric star-shaped ansatz used by the solvers.
struct PolarShape {
    int symmetry = 1;
    double base_radius = 1.0;
    std::vector<double> cosines;

    Contour to_contour(int node_count = 0) const; // 0 = automatic
    double radius(double theta) const;
};

} // namespace vpatch
