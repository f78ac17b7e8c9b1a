#include "symplab/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symplab/errors.hpp"
#include "symplab/quadrature.hpp"

namespace symplab {

namespace {

// Second-harmonic moments (\int p cos 2psi, \int p sin 2psi) of the image of
// the table under diag(a, 1/a) R(-sigma). The image goes through the same
// affine-transport path as every other transformed curve; mid-iteration
// images may be fairly eccentric, so the projection tolerance is relaxed
// relative to the final transport in normalized_curve.
struct Moments {
    double c2, s2;
};

Moments image_moments(const SupportCurve& c, double a, double sigma) {
    const SupportCurve img = apply_affine(c, AffineMap::normalizer(a, sigma),
                                          std::max(64, c.max_harmonic()), 1e-6);
    const int n = std::max(1024, 8 * (img.max_harmonic() + 2));
    const double mc = trapezoid_periodic(
        [&](double t) { return eval_support(img, t).p * std::cos(2.0 * t); }, 0.0, TWO_PI,
        n);
    const double ms = trapezoid_periodic(
        [&](double t) { return eval_support(img, t).p * std::sin(2.0 * t); }, 0.0, TWO_PI,
        n);
    return {mc, ms};
}

// sqrt(min p / max p): equals the exact squeeze parameter for ellipses
double support_extremum_ratio(const SupportCurve& c) {
    const int n = 2048;
    double pmin = std::numeric_limits<double>::infinity();
    double pmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = eval_support(c, TWO_PI * i / n).p;
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }
    return std::sqrt(pmin / pmax);
}

}  // namespace

NormalizationResult normalize(const SupportCurve& c, double tol, int max_iter) {
    require_valid(c);
    if (!c.symmetric)
        throw SymmetryRequired("normalize requires a centrally symmetric table");

    NormalizationResult res;
    const Moments at_id = image_moments(c, 1.0, 0.0);
    res.residual_c2 = at_id.c2;
    res.residual_s2 = at_id.s2;
    if (std::hypot(at_id.c2, at_id.s2) < tol) {
        res.converged = true;
        return res;
    }

    double a = support_extremum_ratio(c);
    double sigma = 0.5 * std::atan2(at_id.s2, at_id.c2);

    Moments m = image_moments(c, a, sigma);
    double err = std::hypot(m.c2, m.s2);
    int it = 0;
    for (; it < max_iter && err >= tol; ++it) {
        const double ha = 1e-6 * a;
        const double hs = 1e-6;
        const Moments ma = image_moments(c, a + ha, sigma);
        const Moments ms = image_moments(c, a, sigma + hs);
        const double j11 = (ma.c2 - m.c2) / ha, j12 = (ms.c2 - m.c2) / hs;
        const double j21 = (ma.s2 - m.s2) / ha, j22 = (ms.s2 - m.s2) / hs;
        const double det = j11 * j22 - j12 * j21;
        if (!(std::abs(det) > 1e-14))
            throw NoConvergence("normalization Jacobian is singular");
        const double da = (-m.c2 * j22 + m.s2 * j12) / det;
        const double dsg = (-j11 * m.s2 + j21 * m.c2) / det;

        double lambda = 1.0;
        for (;;) {
            double a_try = a + lambda * da;
            double sigma_try = sigma + lambda * dsg;
            if (a_try > 1e-3) {
                const Moments mt = image_moments(c, a_try, sigma_try);
                const double err_try = std::hypot(mt.c2, mt.s2);
                if (err_try < err || lambda < 1.0 / 1024.0) {
                    a = a_try;
                    sigma = sigma_try;
                    m = mt;
                    err = err_try;
                    break;
                }
            }
            lambda *= 0.5;
            if (lambda < 1e-12)
                throw NoConvergence("normalization step collapsed without progress");
        }
    }
    if (err >= tol)
        throw NoConvergence("normalization did not reach tolerance " + std::to_string(tol) +
                            " in " + std::to_string(max_iter) + " iterations");

    // canonical representative: fold sigma into [0, pi/2) with the exact
    // symmetry (a, sigma) ~ (1/a, sigma - pi/2)
    sigma -= PI * std::floor(sigma / PI);
    if (sigma >= 0.5 * PI) {
        sigma -= 0.5 * PI;
        a = 1.0 / a;
    }
    // cosmetic snap for solutions a hair under the fold boundary; kept only
    // if the snapped parameters still satisfy the tolerance. The squeeze
    // a <= 1 is preferred when both representatives solve.
    if (sigma > 0.0 && std::min(sigma, 0.5 * PI - sigma) < 1e-9) {
        for (double a_snap : {std::min(a, 1.0 / a), std::max(a, 1.0 / a)}) {
            const Moments msnap = image_moments(c, a_snap, 0.0);
            if (std::hypot(msnap.c2, msnap.s2) < tol) {
                a = a_snap;
                sigma = 0.0;
                m = msnap;
                break;
            }
        }
    }

    res.a = a;
    res.sigma = sigma;
    res.residual_c2 = m.c2;
    res.residual_s2 = m.s2;
    res.iterations = it;
    res.converged = true;
    return res;
}

SupportCurve normalized_curve(const SupportCurve& c, const NormalizationResult& n,
                              int max_harmonic, double tail_tol) {
    return apply_affine(c, AffineMap::normalizer(n.a, n.sigma), max_harmonic, tail_tol);
}

double isoperimetric_deficit(const SupportCurve& c) {
    const double len = perimeter(c);
    return len * len - 4.0 * PI * area(c);
}

}  // namespace symplab
