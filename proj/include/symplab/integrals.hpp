#pragma once

#include "symplab/dynamics.hpp"

namespace symplab {

// Second partials of the generating function L(t1, t2) = det(gamma(t1), gamma(t2)):
//   l11 = det(gamma''(t1), gamma(t2))
//   l12 = det(gamma'(t1), gamma'(t2)) = rho(t1) rho(t2) sin(t2 - t1)   (the twist)
//   l22 = det(gamma(t1), gamma''(t2))
struct GeneratingPartials {
    double l11, l12, l22;
};

GeneratingPartials generating_partials(const SupportCurve& c, double t1, double t2);

// (l11 + 2 l12 + l22) * l12 — vanishes identically on the circle
double rigidity_integrand(const SupportCurve& c, double t1, double t2);

enum class Region {
    GammaDelta,      // t in [0, 2pi), t <= s <= phi(t)
    DeltaGammaStar,  // t in [0, 2pi), phi(t) <= s <= t + pi
    HalfSquare,      // [0, pi]^2
};

struct IntegralReport {
    Region region = Region::HalfSquare;
    double value = 0.0;
    double doubling_delta = 0.0;  // |value(2n) - value(n)|
    int nodes = 0;                // finer resolution actually used
};

// Integral of the rigidity integrand over the region. The phi-bounded regions
// require the pairing defect below radon_tol (RadonHypothesisFailed
// otherwise). Outer direction: full-period trapezoid; inner direction:
// 64-node Gauss-Legendre panels. The value is recomputed with doubled nodes;
// QuadratureNotConverged if the change exceeds quad_tol.
IntegralReport region_integral(const SupportCurve& c, Region region, int nodes = 256,
                               double quad_tol = 1e-8, double map_tol = 1e-12,
                               double radon_tol = 1e-8, int jobs = 1);

// Closed form of the same quantity (times 4) for symmetric curves:
//   F = -2 A \int rho^2 + (\int rho^2)^2 - (\int rho^2 cos 2a)^2 - (\int rho^2 sin 2a)^2
// with full-period integrals.
double closed_form_functional(const SupportCurve& c, int nodes = 0);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // |lhs - rhs| / max(1, |lhs|, |rhs|)
};

// ∬_{[0,pi]^2} (l11 + l22) l12 = -A \int_0^pi rho^2       (symmetric curves)
IdentityCheck area_energy_identity(const SupportCurve& c, int nodes = 256);

// 2 ∬_{[0,pi]^2} l12^2 = (\int_0^pi rho^2)^2 - (\int_0^pi rho^2 cos 2a)^2
//                        - (\int_0^pi rho^2 sin 2a)^2
IdentityCheck twist_energy_identity(const SupportCurve& c, int nodes = 256);

struct RegionAgreement {
    IntegralReport gamma_delta;
    IntegralReport delta_gammastar;
    IntegralReport half_square;
    double max_pairwise = 0.0;
};

// All three regions (requires the conjugate pairing within radon_tol) and the
// largest pairwise difference.
RegionAgreement region_agreement(const SupportCurve& c, int nodes = 256,
                                 double quad_tol = 1e-8, double map_tol = 1e-12,
                                 double radon_tol = 1e-8, int jobs = 1);

// min of the twist l12 over a uniform grid of the phase space with the given
// margin to the boundary
double twist_minimum(const SupportCurve& c, int grid_n = 100, double margin = 0.05);

}  // namespace symplab
