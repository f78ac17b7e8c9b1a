#pragma once

#include <string>
#include <vector>

#include "symplab/geometry.hpp"

namespace symplab {

// Table boundary described by its support function, indexed by the tangent
// angle alpha:
//
//   p(alpha) = a0 + sum_{k >= 2} ( cos_k[k-2] cos(k alpha) + sin_k[k-2] sin(k alpha) )
//
// The k = 1 harmonic is excluded by construction (it only translates the
// curve); for a centrally symmetric table every odd harmonic vanishes. The
// boundary point, tangent and curvature are recovered from p:
//
//   gamma(alpha)  = p'(alpha) e_alpha + p(alpha) n_alpha
//   gamma'(alpha) = rho(alpha) e_alpha,        rho = p'' + p > 0
//
// with e_alpha = (-sin, cos) and n_alpha = (cos, sin).
struct SupportCurve {
    double a0 = 1.0;
    std::vector<double> cos_k;  // harmonic k = index + 2
    std::vector<double> sin_k;
    bool symmetric = true;

    int max_harmonic() const {
        const std::size_t n = cos_k.size() > sin_k.size() ? cos_k.size() : sin_k.size();
        return n == 0 ? 0 : static_cast<int>(n) + 1;
    }
};

struct SupportEval {
    double p, dp, ddp, dddp;
};

SupportEval eval_support(const SupportCurve& c, double alpha);

Vec2 eval_point(const SupportCurve& c, double alpha);    // gamma
Vec2 eval_tangent(const SupportCurve& c, double alpha);  // gamma' = rho e_alpha
Vec2 eval_second(const SupportCurve& c, double alpha);   // gamma''
double radius_of_curvature(const SupportCurve& c, double alpha);  // rho = p'' + p

// Area (1/2 integral of p rho) and perimeter (integral of rho), by full-period
// trapezoid quadrature; exact to roundoff for a finite series. nodes = 0 picks
// enough nodes for exactness.
double area(const SupportCurve& c, int nodes = 0);
double perimeter(const SupportCurve& c, int nodes = 0);

struct ValidationReport {
    bool pass = false;
    double min_p = 0.0;
    double argmin_p = 0.0;
    double min_rho = 0.0;
    double argmin_rho = 0.0;
    // Lipschitz safety margins: the grid minimum certifies positivity only
    // down to margin = (derivative bound) * h / 2.
    double margin_p = 0.0;
    double margin_rho = 0.0;
    bool symmetry_ok = true;
    int grid_n = 0;
    std::string failure;  // empty when pass
};

// Positivity of p and rho on a uniform grid plus the Lipschitz margin, and
// absence of odd harmonics when the symmetric flag is set.
ValidationReport validate(const SupportCurve& c, int grid_n = 4096);

// throws ValidationFailure when validate() fails
void require_valid(const SupportCurve& c, int grid_n = 4096);

// Project uniform full-period samples of a support function onto the
// truncated basis. Checks that the first harmonic is absent (the body must be
// pinned at the origin), zeroes odd harmonics when symmetric, and fails with
// ProjectionFailure if the residual on the sample grid exceeds tail_tol.
SupportCurve project_support_samples(const std::vector<double>& samples, bool symmetric,
                                     int max_harmonic, double tail_tol);

// Ellipse with semi-axes (a, b) and the long axis rotated by `rotation`:
// p(alpha) = sqrt(a^2 cos^2(alpha - rotation) + b^2 sin^2(alpha - rotation)),
// projected onto the Fourier basis. Throws ProjectionFailure when
// max_harmonic is too small for tail_tol.
SupportCurve ellipse_curve(double a, double b, double rotation = 0.0,
                           int max_harmonic = 64, double tail_tol = 1e-10);

// Support curve of the linear image M D, via the support-function transform
// h(u) = |M^T u| p(angle(M^T u)) followed by reprojection. max_harmonic = 0
// keeps max(64, source harmonic count). The image is validated.
SupportCurve apply_affine(const SupportCurve& c, const AffineMap& m,
                          int max_harmonic = 0, double tail_tol = 1e-10);

}  // namespace symplab
