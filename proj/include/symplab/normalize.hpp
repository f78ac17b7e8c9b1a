#pragma once

#include "symplab/support_curve.hpp"

namespace symplab {

struct NormalizationResult {
    double a = 1.0;
    double sigma = 0.0;
    // remaining second-harmonic moments of the image support function:
    // \int p cos(2 psi) d psi and \int p sin(2 psi) d psi
    double residual_c2 = 0.0;
    double residual_s2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Find the area-preserving map diag(a, 1/a) ∘ R(-sigma) that kills both
// second harmonics of the image support function. Damped Newton (factor 1/2
// on residual increase) with a finite-difference Jacobian (relative step
// 1e-6); the image support function always goes through apply_affine.
// The result is canonical: sigma in [0, pi/2), using the exact symmetry
// (a, sigma) ~ (1/a, sigma - pi/2). Throws NoConvergence after max_iter.
NormalizationResult normalize(const SupportCurve& c, double tol = 1e-10, int max_iter = 50);

SupportCurve normalized_curve(const SupportCurve& c, const NormalizationResult& n,
                              int max_harmonic = 0, double tail_tol = 1e-10);

// L^2 - 4 pi A; nonnegative, zero exactly for circles
double isoperimetric_deficit(const SupportCurve& c);

}  // namespace symplab
