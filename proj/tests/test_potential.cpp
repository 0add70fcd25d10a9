#include "doctest.h"
#include "oracle.hpp"

#include <vpatch/contour.hpp>
#include <vpatch/potential.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace vpatch;
using oracle::pi;

TEST_CASE("disc stream function matches the radial formula everywhere") {
    const Contour c = Contour::circle(1.0, 256);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const cplx x = std::polar(oracle::uniform(0.02, 3.0), oracle::uniform(0.0, 2.0 * pi));
        worst = std::max(worst, std::abs(stream_function(c, x) - oracle::disc_stream(x)));
    }
    CHECK(worst < 1e-12);
    // pinned values
    CHECK(stream_function(c, cplx{0.0, 0.0}) == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(stream_function(c, cplx{2.0, 0.0}) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-13));
    CHECK(std::abs(stream_function(c, cplx{1.0, 0.0})) < 1e-12);
}

TEST_CASE("disc velocity and Cauchy transform match closed forms") {
    const Contour c = Contour::circle(1.0, 256);
    double werr_v = 0.0, werr_C = 0.0;
    for (int k = 0; k < 500; ++k) {
        const cplx x = std::polar(oracle::uniform(0.05, 3.0), oracle::uniform(0.0, 2.0 * pi));
        if (std::abs(std::abs(x) - 1.0) < 0.02) continue;
        werr_v = std::max(werr_v, std::abs(velocity(c, x) - oracle::disc_velocity(x)));
        werr_C = std::max(werr_C, std::abs(cauchy_transform(c, x) - oracle::disc_cauchy(x)));
    }
    CHECK(werr_v < 1e-12);
    CHECK(werr_C < 1e-12);
}

TEST_CASE("ellipse interior fields are linear in position") {
    const double a = 2.0, b = 1.0;
    const Contour c = Contour::ellipse(a, b, 256);
    for (int k = 0; k < 200; ++k) {
        const double t = oracle::uniform(0.0, 2.0 * pi);
        const double r = oracle::uniform(0.05, 0.9);
        const cplx x = r * oracle::ellipse_point(a, b, t);
        CHECK(std::abs(velocity(c, x) - oracle::ellipse_velocity_in(a, b, x)) < 5e-12);
        CHECK(std::abs(cauchy_transform(c, x) - oracle::ellipse_cauchy_in(a, b, x)) < 5e-12);
    }
}

TEST_CASE("ellipse exterior Cauchy transform against area quadrature") {
    const Contour c = Contour::ellipse(2.0, 1.0, 256);
    for (cplx z : {cplx{2.5, 0.3}, cplx{0.0, 1.8}, cplx{-3.0, -1.0}}) {
        const cplx want = oracle::ellipse_cauchy_out(2.0, 1.0, z);
        CHECK(std::abs(cauchy_transform(c, z) - want) < 1e-9);
    }
    // pinned: C + conj(z) at (2,0) has modulus 2/3
    const cplx C2 = cauchy_transform(c, cplx{2.0, 0.0});
    CHECK(std::abs(C2 + cplx{2.0, 0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("velocity is the perpendicular gradient of the stream function") {
    const Contour c = PolarShape{3, 1.0, {0.12}}.to_contour(256);
    const double h = 1e-5;
    for (cplx x : {cplx{0.3, 0.2}, cplx{-0.4, 0.5}, cplx{1.8, 1.2}, cplx{0.0, -2.1}}) {
        const double px = (stream_function(c, x + h) - stream_function(c, x - h)) / (2.0 * h);
        const double py =
            (stream_function(c, x + cplx{0.0, h}) - stream_function(c, x - cplx{0.0, h})) / (2.0 * h);
        const cplx v = velocity(c, x);
        CHECK(v.real() == doctest::Approx(-py).epsilon(1e-6));
        CHECK(v.imag() == doctest::Approx(px).epsilon(1e-6));
    }
}

TEST_CASE("five point Laplacian of psi sees the patch indicator") {
    const Contour c = Contour::ellipse(1.5, 1.0, 256);
    const double h = 1e-3;
    auto lap = [&](cplx x) {
        return (stream_function(c, x + h) + stream_function(c, x - h) +
                stream_function(c, x + cplx{0.0, h}) + stream_function(c, x - cplx{0.0, h}) -
                4.0 * stream_function(c, x)) /
               (h * h);
    };
    for (cplx x : {cplx{0.2, 0.1}, cplx{-0.6, 0.3}, cplx{0.9, -0.2}})
        CHECK(lap(x) == doctest::Approx(1.0).epsilon(1e-6));
    for (cplx x : {cplx{2.5, 0.4}, cplx{0.0, 2.0}, cplx{-1.9, -1.5}})
        CHECK(std::abs(lap(x)) < 1e-6);
}

TEST_CASE("boundary stream values agree with off-curve evaluation") {
    const Contour c = PolarShape{2, 1.0, {0.2}}.to_contour(256);
    const auto vals = boundary_stream_values(c);
    const auto& z = c.node_positions();
    REQUIRE(vals.size() == z.size());
    // psi is continuous across the boundary; compare against a point pushed
    // slightly inside along the normal
    for (std::size_t j = 0; j < z.size(); j += 17) {
        const auto bp = c.evaluate(c.node_angle(static_cast<int>(j)));
        const double in = stream_function(c, bp.position - 1e-6 * bp.normal);
        CHECK(vals[j] == doctest::Approx(in).epsilon(5e-6));
    }
}

TEST_CASE("log kernel quadrature reproduces Fourier integrals") {
    // int_0^2pi ln(4 sin^2(tau/2)) cos(k tau) dtau = -2pi/k, 0 for k = 0
    const int n = 128, half = n / 2;
    for (int k : {1, 2, 5, 11}) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double tau = 2.0 * pi * j / n;
            acc += log_weight(tau, half) * std::cos(k * tau);
        }
        CHECK(acc == doctest::Approx(-2.0 * pi / k).epsilon(1e-12));
    }
    double zero = 0.0;
    for (int j = 0; j < n; ++j) zero += log_weight(2.0 * pi * j / n, half);
    CHECK(std::abs(zero) < 1e-12);
}

TEST_CASE("relative stream and mu on the disc") {
    const Contour c = Contour::circle(1.0, 256);
    for (double om : {-1.0, -0.25, 0.0, 0.5})
        CHECK(compute_mu(c, om) == doctest::Approx(oracle::disc_mu(om)).epsilon(1e-12));

    const PatchField f = make_patch_field(c, -1.0);
    CHECK(f.mu == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(relative_stream(f, cplx{0.0, 0.0}) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(relative_stream(f, cplx{2.0, 0.0}) ==
          doctest::Approx(0.5 - 2.0 - 0.5 * std::log(2.0)).epsilon(1e-12));
    // rotation invariance
    for (double t : {0.3, 1.8, 4.4})
        CHECK(relative_stream(f, std::polar(0.7, t)) ==
              doctest::Approx(relative_stream(f, cplx{0.7, 0.0})).epsilon(1e-12));
}

TEST_CASE("integral equation residual detects a shifted mu") {
    const Contour c = Contour::circle(1.0, 256);
    const std::vector<cplx> samples{cplx{0.3, 0.1}, cplx{-0.5, 0.4}, cplx{1.5, 0.2}};

    PatchField f = make_patch_field(c, -1.0);
    CHECK(integral_equation_residual(f, samples) < 1e-12);

    PatchField shifted = f;
    shifted.mu += 0.1;
    CHECK(integral_equation_residual(shifted, samples) == doctest::Approx(0.1).epsilon(1e-10));

    // a large negative mu flips the sign of phi inside
    PatchField broken = f;
    broken.mu -= 10.0;
    CHECK_THROWS_AS((void)integral_equation_residual(broken, samples), LemmaViolationError);
}

TEST_CASE("far field of the disc is a pure logarithm") {
    const Contour c = Contour::circle(1.0, 256);
    const auto m = far_field_fit(c, 0.0);
    CHECK(m.area == doctest::Approx(pi).epsilon(1e-12));
    CHECK(m.remainder_bound == 0.0);
}

TEST_CASE("far field of the ellipse decays quadratically") {
    const Contour c = Contour::ellipse(2.0, 1.0, 256);
    const auto m = far_field_fit(c, 0.0);
    CHECK(m.area == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(m.decay_exponent == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("uncentered contour fails the far field fit") {
    const Contour c = Contour::circle(1.0, 256).translated(cplx{1.0, 0.0});
    CHECK_THROWS_AS((void)far_field_fit(c, 0.0), FarFieldDecayError);
}
