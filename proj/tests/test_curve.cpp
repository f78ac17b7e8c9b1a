#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "symplab/errors.hpp"
#include "symplab/support_curve.hpp"

using namespace symplab;

namespace {
constexpr double kPi = PI;
}

TEST_CASE("support evaluation matches hand values for a single harmonic") {
    const SupportCurve c = oracles::perturbed_curve(0.05);  // p = 1 + 0.05 cos 4a

    SupportEval e = eval_support(c, 0.0);
    CHECK(e.p == doctest::Approx(1.05).epsilon(1e-14));
    CHECK(std::abs(e.dp) < 1e-14);
    CHECK(e.ddp == doctest::Approx(-0.8).epsilon(1e-14));
    CHECK(std::abs(e.dddp) < 1e-13);

    e = eval_support(c, kPi / 8.0);
    CHECK(e.p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.dp == doctest::Approx(-0.2).epsilon(1e-13));
    CHECK(std::abs(e.ddp) < 1e-13);
    CHECK(e.dddp == doctest::Approx(3.2).epsilon(1e-13));

    CHECK(radius_of_curvature(c, 0.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(radius_of_curvature(c, kPi / 4.0) == doctest::Approx(1.75).epsilon(1e-13));
}

TEST_CASE("circle geometry is exact") {
    const SupportCurve c = oracles::circle_curve(1.0);
    const Vec2 g0 = eval_point(c, 0.0);
    CHECK(g0.x == doctest::Approx(1.0));
    CHECK(std::abs(g0.y) < 1e-15);
    const Vec2 t0 = eval_tangent(c, 0.0);
    CHECK(std::abs(t0.x) < 1e-15);
    CHECK(t0.y == doctest::Approx(1.0));
    const Vec2 s0 = eval_second(c, 0.0);
    CHECK(s0.x == doctest::Approx(-1.0));
    CHECK(std::abs(s0.y) < 1e-15);

    const Vec2 g1 = eval_point(c, kPi / 2.0);
    CHECK(std::abs(g1.x) < 1e-15);
    CHECK(g1.y == doctest::Approx(1.0));
}

TEST_CASE("structural identities hold along a generic curve") {
    const SupportCurve c = oracles::wiggly_curve();
    auto gen = oracles::rng(11);
    for (int i = 0; i < 64; ++i) {
        const double a = oracles::uniform(gen, 0.0, TWO_PI);
        const SupportEval e = eval_support(c, a);
        const Vec2 g = eval_point(c, a);
        const Vec2 t = eval_tangent(c, a);
        // tangent is parallel to e_alpha and the support value is <gamma, n>
        CHECK(std::abs(cross(t, tangent_dir(a))) < 1e-12);
        CHECK(std::abs(dot(g, normal_dir(a)) - e.p) < 1e-12);
        // gamma' magnitude equals the curvature radius
        CHECK(norm(t) == doctest::Approx(std::abs(radius_of_curvature(c, a))).epsilon(1e-12));
        // central symmetry: gamma(a + pi) = -gamma(a)
        const Vec2 anti = eval_point(c, a + kPi);
        CHECK(std::abs(anti.x + g.x) < 1e-12);
        CHECK(std::abs(anti.y + g.y) < 1e-12);
    }
}

TEST_CASE("second derivative agrees with finite differences of the tangent") {
    const SupportCurve c = oracles::wiggly_curve();
    const double h = 1e-4;
    for (double a : {0.3, 1.1, 2.9, 4.4, 6.0}) {
        const Vec2 fd = (1.0 / (2.0 * h)) * (eval_tangent(c, a + h) - eval_tangent(c, a - h));
        const Vec2 ex = eval_second(c, a);
        CHECK(std::abs(fd.x - ex.x) < 1e-6);
        CHECK(std::abs(fd.y - ex.y) < 1e-6);
    }
}

TEST_CASE("area and perimeter: circle, perturbed table, Parseval cross-check") {
    CHECK(area(oracles::circle_curve(1.0)) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(area(oracles::circle_curve(2.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK(perimeter(oracles::circle_curve(2.0)) == doctest::Approx(4.0 * kPi).epsilon(1e-13));

    const double eps = 0.05;
    const SupportCurve pert = oracles::perturbed_curve(eps);
    // A = pi - (15/2) eps^2 pi for p = 1 + eps cos 4a; L stays 2 pi
    CHECK(area(pert) == doctest::Approx(kPi - 7.5 * eps * eps * kPi).epsilon(1e-13));
    CHECK(perimeter(pert) == doctest::Approx(TWO_PI).epsilon(1e-13));

    const SupportCurve w = oracles::wiggly_curve();
    CHECK(area(w) == doctest::Approx(oracles::parseval_area(w)).epsilon(1e-12));
}

TEST_CASE("validation accepts convex tables and rejects the documented failures") {
    CHECK(validate(oracles::circle_curve(1.0)).pass);
    CHECK(validate(oracles::perturbed_curve(0.05)).pass);
    CHECK(validate(oracles::wiggly_curve()).pass);

    // p = 1 + 0.1 cos 4a has rho(0) = 1 - 1.5 = -0.5: not strongly convex
    SupportCurve bad = oracles::perturbed_curve(0.1);
    const ValidationReport r = validate(bad);
    CHECK(!r.pass);
    CHECK(r.min_rho == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(r.failure.find("convex") != std::string::npos);
    CHECK_THROWS_AS(require_valid(bad), const ValidationFailure&);

    // symmetric flag with an odd harmonic present
    SupportCurve odd;
    odd.a0 = 1.0;
    odd.cos_k = {0.0, 0.02};  // k = 3
    odd.sin_k = {0.0, 0.0};
    odd.symmetric = true;
    const ValidationReport ro = validate(odd);
    CHECK(!ro.pass);
    CHECK(!ro.symmetry_ok);

    // the same table is fine when declared non-symmetric
    odd.symmetric = false;
    CHECK(validate(odd).pass);
}

TEST_CASE("projection round-trips a finite series and flags defects") {
    const SupportCurve src = oracles::wiggly_curve();
    const int n = 256;
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = eval_support(src, TWO_PI * j / n).p;

    const SupportCurve back = project_support_samples(samples, true, 8, 1e-10);
    CHECK(back.a0 == doctest::Approx(src.a0).epsilon(1e-13));
    for (size_t i = 0; i < src.cos_k.size(); ++i) {
        CHECK(std::abs(back.cos_k[i] - src.cos_k[i]) < 1e-12);
        CHECK(std::abs(back.sin_k[i] - src.sin_k[i]) < 1e-12);
    }

    // first harmonic = translation: must be rejected
    std::vector<double> shifted(n);
    for (int j = 0; j < n; ++j) shifted[j] = 1.0 + 0.1 * std::cos(TWO_PI * j / n);
    CHECK_THROWS_AS(project_support_samples(shifted, false, 8, 1e-10),
                    const ProjectionFailure&);

    // odd harmonic in a declared-symmetric table
    std::vector<double> oddly(n);
    for (int j = 0; j < n; ++j) oddly[j] = 1.0 + 0.05 * std::cos(3.0 * TWO_PI * j / n);
    CHECK_THROWS_AS(project_support_samples(oddly, true, 8, 1e-10),
                    const ProjectionFailure&);

    // truncation too aggressive for the requested tolerance
    std::vector<double> rich(n);
    for (int j = 0; j < n; ++j) {
        const double a = TWO_PI * j / n;
        rich[j] = 1.0 + 0.01 * std::cos(6.0 * a);
    }
    CHECK_THROWS_AS(project_support_samples(rich, true, 4, 1e-10),
                    const ProjectionFailure&);

    CHECK_THROWS_AS(project_support_samples({1.0, 1.0, 1.0}, true, 8, 1e-10),
                    const ConfigError&);
}

TEST_CASE("ellipse construction reproduces the support function") {
    const SupportCurve e = ellipse_curve(2.0, 1.0);
    CHECK(eval_support(e, 0.0).p == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(eval_support(e, kPi / 2.0).p == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(area(e) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(validate(e).pass);

    const SupportCurve rot = ellipse_curve(2.0, 1.0, kPi / 6.0);
    CHECK(eval_support(rot, kPi / 6.0).p == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(eval_support(rot, kPi / 6.0 + kPi / 2.0).p == doctest::Approx(1.0).epsilon(1e-10));

    // a circle projects to the bare constant term
    const SupportCurve cc = ellipse_curve(1.5, 1.5);
    CHECK(cc.a0 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(cc.max_harmonic() <= 1);

    CHECK_THROWS_AS(ellipse_curve(2.0, -1.0), const ConfigError&);
    // ratio 5 has a slow tail: 64 harmonics cannot reach 1e-10
    CHECK_THROWS_AS(ellipse_curve(5.0, 1.0, 0.0, 64, 1e-10), const ProjectionFailure&);
    CHECK(validate(ellipse_curve(5.0, 1.0, 0.0, 192, 1e-10)).pass);
}

TEST_CASE("affine images: identity, axis scaling, normalizing map, area scaling") {
    const SupportCurve w = oracles::wiggly_curve();

    const SupportCurve same = apply_affine(w, AffineMap::identity());
    for (double a : {0.0, 0.7, 2.2, 5.1})
        CHECK(eval_support(same, a).p == doctest::Approx(eval_support(w, a).p).epsilon(1e-12));

    // diag(2,1) sends the unit circle to the (2,1) ellipse
    const SupportCurve img = apply_affine(oracles::circle_curve(1.0), AffineMap::scaling(2.0, 1.0));
    const SupportCurve ell = ellipse_curve(2.0, 1.0);
    for (double a : {0.0, 0.5, 1.3, 2.8, 4.0})
        CHECK(eval_support(img, a).p == doctest::Approx(eval_support(ell, a).p).epsilon(1e-9));

    // the normalizing map with a = 1/sqrt(2) rounds the (2,1) ellipse into the
    // circle of radius sqrt(2)
    const SupportCurve round =
        apply_affine(ell, AffineMap::normalizer(1.0 / std::sqrt(2.0), 0.0));
    double worst = 0.0;
    for (int i = 0; i < 256; ++i)
        worst = std::max(worst,
                         std::abs(radius_of_curvature(round, TWO_PI * i / 256.0) - std::sqrt(2.0)));
    CHECK(worst < 1e-6);

    // enclosed area scales by |det M|
    const AffineMap m{1.4, 0.3, -0.2, 0.9};
    const SupportCurve mw = apply_affine(w, m);
    CHECK(area(mw) == doctest::Approx(std::abs(m.det()) * area(w)).epsilon(1e-10));

    CHECK_THROWS_AS(apply_affine(w, AffineMap{1.0, 0.0, 0.0, 0.0}), const ConfigError&);
}
