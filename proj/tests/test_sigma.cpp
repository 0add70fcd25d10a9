#include "doctest.h"
#include "oracle.hpp"

#include <vpatch/contour.hpp>
#include <vpatch/sigma.hpp>

#include <cmath>

using namespace vpatch;

TEST_CASE("critical angle") {
    CHECK(critical_alpha() == doctest::Approx(std::acos(1.0 / std::sqrt(5.0))).epsilon(1e-15));
    CHECK(std::cos(critical_alpha()) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("interior samples are inside and deterministic") {
    const Contour c = PolarShape{2, 1.0, {0.3}}.to_contour(256);
    const auto s1 = interior_sample_grid(c, 5000);
    const auto s2 = interior_sample_grid(c, 5000);
    REQUIRE(s1.size() > 1000);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == s2[i]);
    for (std::size_t i = 0; i < s1.size(); i += 97) CHECK(contains(c, s1[i]));
}

TEST_CASE("disc is accepted at the critical angle") {
    const auto rep = classify(Contour::circle(1.0, 256), critical_alpha());
    CHECK(rep.verdict);
    CHECK(rep.star_shaped.pass);
    CHECK(rep.star_shaped.margin == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.sector.pass);
    CHECK(rep.sector.margin > 0.0);
    CHECK(rep.reflection.pass);
    CHECK(!rep.exclusion_flag);
}

TEST_CASE("translated ellipse is accepted (conditions recentre internally)") {
    const Contour c = Contour::ellipse(2.0, 1.0, 256).translated(cplx{3.0, -1.0});
    const auto rep = classify(c, critical_alpha());
    CHECK(rep.verdict);
    CHECK(rep.star_shaped.pass);
    CHECK(rep.sector.pass);
    CHECK(rep.reflection.pass);
}

TEST_CASE("peanut fails the sector and reflection conditions with witnesses") {
    const Contour c = PolarShape{2, 1.0, {0.6}}.to_contour(256);
    const auto rep = classify(c, critical_alpha());
    CHECK(!rep.verdict);
    CHECK(rep.star_shaped.pass); // the peanut is still star shaped
    CHECK(!rep.sector.pass);
    CHECK(rep.sector.margin < 0.0);
    CHECK(!rep.reflection.pass);
    CHECK(rep.reflection.margin < 0.0);
    // witnesses point at real offending geometry: recompute the cone inequality
    // at the reported pair
    const auto pr = nearest_boundary_point(c, rep.sector.witness_boundary);
    const auto bp = c.evaluate(pr.theta);
    const cplx d = rep.sector.witness_point - bp.position;
    const double excess = dot(bp.normal, d) - std::cos(critical_alpha()) * std::abs(d);
    CHECK(excess == doctest::Approx(-rep.sector.margin).epsilon(1e-6));
    CHECK(excess > 0.0);
    // and the reflection witness is a mirrored point genuinely outside the patch
    CHECK(!contains(c, rep.reflection.witness_point));
}

TEST_CASE("verdicts are stable under refinement") {
    const double alpha = critical_alpha();
    for (int n : {256, 512}) {
        const int samples = n == 256 ? 10000 : 20000;
        CHECK(classify(Contour::circle(1.0, n), alpha, samples).verdict);
        CHECK(classify(Contour::ellipse(2.0, 1.0, n), alpha, samples).verdict);
        const auto p = classify(PolarShape{2, 1.0, {0.6}}.to_contour(n), alpha, samples);
        CHECK(!p.verdict);
        CHECK(p.star_shaped.pass);
        CHECK(!p.sector.pass);
        CHECK(!p.reflection.pass);
    }
}

TEST_CASE("a bent crescent is not star shaped about its barycenter") {
    // b(t) = (1 + 0.25 sin t) e^{2.2 i cos t}
    std::vector<cplx> pts;
    for (int i = 0; i < 512; ++i) {
        const double t = 2.0 * oracle::pi * i / 512;
        pts.push_back(std::polar(1.0 + 0.25 * std::sin(t), 2.2 * std::cos(t)));
    }
    const Contour c = Contour::fit_polyline(pts, 64, 512);
    const auto rep = classify(c, critical_alpha());
    CHECK(!rep.star_shaped.pass);
    CHECK(rep.star_shaped.margin < -0.5);
    CHECK(!rep.verdict);
}

TEST_CASE("widening the aperture tightens the sector margin") {
    // convex shapes hold no mass in any outward cone, so they pass at every
    // aperture, but the worst-case slack shrinks as the cone widens
    const Contour c = Contour::ellipse(1.5, 1.0, 256);
    const auto narrow = check_sector(c, 0.3);
    const auto mid = check_sector(c, 0.9);
    const auto wide = check_sector(c, 1.4);
    CHECK(narrow.pass);
    CHECK(mid.pass);
    CHECK(wide.pass);
    CHECK(narrow.margin > mid.margin);
    CHECK(mid.margin > wide.margin);

    const Contour thin = Contour::ellipse(3.0, 1.0, 256);
    CHECK(check_sector(thin, 1.4).pass);
}

TEST_CASE("the aperture decides the peanut's sector verdict") {
    // the opposite lobe sits about one radian off the waist normal, so a narrow
    // cone misses it and a wide one catches it
    const Contour c = PolarShape{2, 1.0, {0.6}}.to_contour(256);
    const auto narrow = check_sector(c, 0.3);
    const auto wide = check_sector(c, critical_alpha());
    CHECK(narrow.pass);
    CHECK(narrow.margin > 0.0);
    CHECK(!wide.pass);
    CHECK(wide.margin < -0.3);
}
