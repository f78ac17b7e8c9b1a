#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "symplab/errors.hpp"
#include "symplab/normalize.hpp"

using namespace symplab;

TEST_CASE("circle and fourth-harmonic tables already have zero second moment") {
    const NormalizationResult rc = normalize(oracles::circle_curve(1.0));
    CHECK(rc.converged);
    CHECK(rc.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rc.sigma == doctest::Approx(0.0));
    CHECK(rc.iterations == 0);

    const NormalizationResult rp = normalize(oracles::perturbed_curve(0.05));
    CHECK(rp.converged);
    CHECK(rp.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rp.iterations == 0);
}

TEST_CASE("the (2,1) ellipse normalizes to the squeeze 1/sqrt(2) with no tilt") {
    const SupportCurve e = ellipse_curve(2.0, 1.0);
    const NormalizationResult r = normalize(e);
    CHECK(r.converged);
    CHECK(std::abs(r.a - 1.0 / std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(r.sigma) < 1e-8);
    CHECK(std::abs(r.residual_c2) < 1e-10);
    CHECK(std::abs(r.residual_s2) < 1e-10);

    // the normalized table is the circle of radius sqrt(2)
    const SupportCurve nc = normalized_curve(e, r);
    double worst = 0.0;
    for (int i = 0; i < 512; ++i)
        worst = std::max(worst, std::abs(radius_of_curvature(nc, TWO_PI * i / 512.0) -
                                         std::sqrt(2.0)));
    CHECK(worst < 1e-6);

    // unit-determinant normalization preserves the enclosed area
    CHECK(area(nc) == doctest::Approx(area(e)).epsilon(1e-10));
    CHECK(isoperimetric_deficit(nc) < 1e-8);

    // a second pass finds nothing left to do (loose moment tolerance makes the
    // identity tie-break decisive)
    const NormalizationResult again = normalize(nc, 1e-8);
    CHECK(again.converged);
    CHECK(again.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(again.sigma == doctest::Approx(0.0));
}

TEST_CASE("rotated ellipses report their tilt") {
    const NormalizationResult r6 = normalize(ellipse_curve(2.0, 1.0, PI / 6.0));
    CHECK(r6.converged);
    CHECK(std::abs(r6.a - 1.0 / std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(r6.sigma - PI / 6.0) < 1e-8);

    const NormalizationResult r4 = normalize(ellipse_curve(2.0, 1.0, 0.4));
    CHECK(std::abs(r4.a - 1.0 / std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(r4.sigma - 0.4) < 1e-8);

    // swapping the axes folds onto the canonical representative
    const NormalizationResult swapped = normalize(ellipse_curve(1.0, 2.0));
    CHECK(swapped.converged);
    CHECK(std::abs(swapped.a - std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(swapped.sigma) < 1e-8);

    const NormalizationResult r51 = normalize(ellipse_curve(5.0, 1.0, 0.0, 192));
    CHECK(r51.converged);
    CHECK(std::abs(r51.a - 1.0 / std::sqrt(5.0)) < 1e-7);
    CHECK(std::abs(r51.sigma) < 1e-7);
}

TEST_CASE("normalization refuses asymmetric or invalid tables and reports stalls") {
    SupportCurve odd;
    odd.a0 = 1.0;
    odd.cos_k = {0.0, 0.02};
    odd.symmetric = false;
    CHECK_THROWS_AS(normalize(odd), const SymmetryRequired&);

    CHECK_THROWS_AS(normalize(oracles::perturbed_curve(0.1)), const ValidationFailure&);

    // zero Newton budget on a table whose initial guess cannot be exact
    CHECK_THROWS_AS(normalize(oracles::wiggly_curve(), 1e-10, 0), const NoConvergence&);
}

TEST_CASE("isoperimetric deficit: zero for circles, fixed value for the test table") {
    CHECK(std::abs(isoperimetric_deficit(oracles::circle_curve(1.0))) < 1e-10);
    CHECK(std::abs(isoperimetric_deficit(oracles::circle_curve(2.0))) < 1e-10);

    const double eps = 0.05;
    const double expect = 30.0 * eps * eps * PI * PI;  // L^2 - 4 pi A for p = 1 + eps cos 4a
    CHECK(isoperimetric_deficit(oracles::perturbed_curve(eps)) ==
          doctest::Approx(expect).epsilon(1e-10));
    CHECK(expect == doctest::Approx(0.075 * PI * PI).epsilon(1e-14));

    // the deficit is nonnegative on every valid table
    CHECK(isoperimetric_deficit(oracles::wiggly_curve()) > -1e-12);
    CHECK(isoperimetric_deficit(ellipse_curve(2.0, 1.0)) > 0.1);
}
