#pragma once

#include <vector>

#include "symplab/support_curve.hpp"

namespace symplab {

// Lifted phase-space coordinates: a pair of consecutive chord vertices
// (t1, t2) with 0 < t2 - t1 < pi.
struct PhasePoint {
    double t1 = 0.0;
    double t2 = 0.0;
};

// Inputs closer than this to the phase-space boundary are rejected before any
// root-finding.
inline constexpr double kPhaseMargin = 1e-9;

// One step of the chord map: the next vertex t3 in (t2, t2 + pi) is the root
// of f(s) = det(e_{t2}, gamma(s) - gamma(t1)), which is strictly increasing
// there (f' = rho(s) sin(s - t2)). Bracketed bisection down to width 1e-3,
// then Newton safeguarded by the bracket, until |f| < tol.
PhasePoint billiard_map(const SupportCurve& c, PhasePoint pp, double tol = 1e-12);

// Inverse step: the previous vertex t0 in (t1 - pi, t1) solving
// det(e_{t1}, gamma(t2) - gamma(t0)) = 0.
PhasePoint billiard_map_inverse(const SupportCurve& c, PhasePoint pp, double tol = 1e-12);

struct Orbit {
    // lifted parameters t_0 < t_1 < ... < t_{N+1} for N map steps
    std::vector<double> samples;
    // chord-condition residual at each interior vertex (zero at both ends)
    std::vector<double> residuals;
};

Orbit iterate(const SupportCurve& c, PhasePoint start, int steps, double tol = 1e-12);

struct RotationEstimate {
    double value = 0.0;
    double error_bound = 0.0;  // 1 / steps
    int steps = 0;
};

// Birkhoff quotient (t_N - t_0) / (2 pi N).
RotationEstimate rotation_number(const SupportCurve& c, PhasePoint start, int steps,
                                 double tol = 1e-12);

// Conjugate-direction map: the unique beta in (alpha, alpha + pi) whose
// tangent direction is parallel to gamma(alpha). det(e_beta, gamma(alpha)) is
// a pure sinusoid in beta, so the root is explicit; the postcondition
// |det| < tol * max(1, |gamma|) is still checked.
double conjugate_map(const SupportCurve& c, double alpha, double tol = 1e-12);

struct ConjugateMapSamples {
    std::vector<double> alpha;
    std::vector<double> phi;
    // pairing defect |det(e_alpha, gamma(phi))| / |gamma(phi)| per node
    std::vector<double> defect;
};

// Sample phi on a uniform grid; checks strict monotonicity of the lift and
// the half-period identity phi(alpha + pi) = phi(alpha) + pi.
ConjugateMapSamples delta_curve(const SupportCurve& c, int grid_n = 256,
                                double tol = 1e-12, int jobs = 1);

// max over the grid of the pairing defect; zero exactly when the conjugate
// pairing is an involution of diameters (circles and ellipses)
double radon_defect(const SupportCurve& c, int grid_n = 256, double tol = 1e-12,
                    int jobs = 1);

struct FourPeriodicReport {
    std::vector<double> lifts;   // t0 .. t5 (four map steps from (alpha, phi(alpha)))
    double lift_defect = 0.0;    // max(|t4 - t0 - 2pi|, |t5 - t1 - 2pi|)
    double antipode_defect = 0.0;  // max(|gamma(t2) + gamma(t0)|, |gamma(t3) + gamma(t1)|)
};

// Runs four map steps from (alpha, phi(alpha)) and reports how far the orbit
// is from a closed parallelogram.
FourPeriodicReport verify_four_periodic(const SupportCurve& c, double alpha,
                                        double tol = 1e-12);

}  // namespace symplab
