#include "symplab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"

namespace symplab {

namespace {

void check_gap(double gap) {
    if (!(gap > kPhaseMargin) || !(gap < PI - kPhaseMargin))
        throw DegeneratePhasePoint("phase point too close to the boundary: gap = " +
                                   std::to_string(gap));
}

// Root of a strictly increasing f on (lo, hi) with f(lo) < 0 < f(hi):
// bisection down to width 1e-3, then Newton kept inside the shrinking
// bracket, until |f| < tol.
template <class F, class DF>
double bracketed_root(F&& f, DF&& df, double lo, double hi, double flo, double fhi,
                      double tol) {
    (void)flo;
    (void)fhi;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        (fm < 0.0 ? lo : hi) = mid;
    }
    double s = 0.5 * (lo + hi);
    double fs = f(s);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fs) < tol) return s;
        (fs < 0.0 ? lo : hi) = s;
        const double d = df(s);
        double snext = d > 0.0 ? s - fs / d : 0.5 * (lo + hi);
        if (!(snext > lo) || !(snext < hi)) snext = 0.5 * (lo + hi);
        s = snext;
        fs = f(s);
    }
    throw NoConvergence("chord root did not reach tolerance " + std::to_string(tol));
}

}  // namespace

PhasePoint billiard_map(const SupportCurve& c, PhasePoint pp, double tol) {
    check_gap(pp.t2 - pp.t1);
    const Vec2 e2 = tangent_dir(pp.t2);
    const Vec2 g1 = eval_point(c, pp.t1);
    auto f = [&](double s) { return cross(e2, eval_point(c, s) - g1); };
    auto df = [&](double s) { return cross(e2, eval_tangent(c, s)); };

    const double lo = pp.t2, hi = pp.t2 + PI;
    const double flo = f(lo), fhi = f(hi);
    if (!(flo < 0.0))
        throw BracketFailure("chord condition not bracketed at the current vertex");
    if (!(fhi > 0.0))
        throw BracketFailure(
            "no admissible next vertex below the half period (conjugate boundary)");
    const double t3 = bracketed_root(f, df, lo, hi, flo, fhi, tol);
    return {pp.t2, t3};
}

PhasePoint billiard_map_inverse(const SupportCurve& c, PhasePoint pp, double tol) {
    check_gap(pp.t2 - pp.t1);
    const Vec2 e1 = tangent_dir(pp.t1);
    const Vec2 g2 = eval_point(c, pp.t2);
    // g(s) = det(e_{t1}, gamma(t2) - gamma(s)) is strictly increasing on
    // (t1 - pi, t1): g' = -rho(s) sin(s - t1) > 0 there.
    auto f = [&](double s) { return cross(e1, g2 - eval_point(c, s)); };
    auto df = [&](double s) { return -cross(e1, eval_tangent(c, s)); };

    const double lo = pp.t1 - PI, hi = pp.t1;
    const double flo = f(lo), fhi = f(hi);
    if (!(fhi > 0.0))
        throw BracketFailure("chord condition not bracketed at the current vertex");
    if (!(flo < 0.0))
        throw BracketFailure(
            "no admissible previous vertex above the half period (conjugate boundary)");
    const double t0 = bracketed_root(f, df, lo, hi, flo, fhi, tol);
    return {t0, pp.t1};
}

Orbit iterate(const SupportCurve& c, PhasePoint start, int steps, double tol) {
    if (steps < 0) throw ConfigError("iterate: negative step count");
    Orbit orbit;
    orbit.samples.reserve(steps + 2);
    orbit.samples.push_back(start.t1);
    orbit.samples.push_back(start.t2);
    PhasePoint pp = start;
    for (int i = 0; i < steps; ++i) {
        pp = billiard_map(c, pp, tol);
        orbit.samples.push_back(pp.t2);
    }
    orbit.residuals.assign(orbit.samples.size(), 0.0);
    for (size_t i = 1; i + 1 < orbit.samples.size(); ++i) {
        const Vec2 chord =
            eval_point(c, orbit.samples[i + 1]) - eval_point(c, orbit.samples[i - 1]);
        orbit.residuals[i] = std::abs(cross(tangent_dir(orbit.samples[i]), chord));
    }
    return orbit;
}

RotationEstimate rotation_number(const SupportCurve& c, PhasePoint start, int steps,
                                 double tol) {
    if (steps < 1) throw ConfigError("rotation_number: need at least one step");
    const Orbit orbit = iterate(c, start, steps, tol);
    RotationEstimate est;
    est.steps = steps;
    est.value = (orbit.samples[steps] - orbit.samples[0]) / (TWO_PI * steps);
    est.error_bound = 1.0 / steps;
    return est;
}

double conjugate_map(const SupportCurve& c, double alpha, double tol) {
    if (!c.symmetric)
        throw SymmetryRequired("conjugate_map requires a centrally symmetric table");
    const Vec2 g = eval_point(c, alpha);
    // det(e_beta, g) = -|g| cos(beta - theta): explicit root on (alpha, alpha + pi)
    const double theta = std::atan2(g.y, g.x);
    double beta = theta - 0.5 * PI;
    beta += PI * std::ceil((alpha - beta) / PI);
    if (beta <= alpha) beta += PI;
    if (beta >= alpha + PI) beta -= PI;
    const double defect = std::abs(cross(tangent_dir(beta), g));
    if (!(defect <= tol * std::max(1.0, norm(g))))
        throw NoConvergence("conjugate direction postcondition failed (tolerance " +
                            std::to_string(tol) + " below attainable roundoff?)");
    return beta;
}

ConjugateMapSamples delta_curve(const SupportCurve& c, int grid_n, double tol, int jobs) {
    if (grid_n < 4) throw ConfigError("delta_curve: grid too small");
    ConjugateMapSamples out;
    out.alpha.resize(grid_n);
    out.phi.resize(grid_n);
    out.defect.resize(grid_n);
    std::vector<double> phi_shift(grid_n);
    parallel_for(grid_n, jobs, [&](int i) {
        const double a = TWO_PI * i / grid_n;
        const double b = conjugate_map(c, a, tol);
        out.alpha[i] = a;
        out.phi[i] = b;
        const Vec2 g = eval_point(c, b);
        out.defect[i] = std::abs(cross(tangent_dir(a), g)) / norm(g);
        phi_shift[i] = conjugate_map(c, a + PI, tol);
    });
    for (int i = 0; i + 1 < grid_n; ++i)
        if (!(out.phi[i + 1] > out.phi[i]))
            throw MonotonicityViolation("conjugate map lift is not increasing near alpha = " +
                                        std::to_string(out.alpha[i]));
    if (!(out.phi[0] + TWO_PI > out.phi[grid_n - 1]))
        throw MonotonicityViolation("conjugate map lift does not close up over one period");
    const double shift_tol = std::max(2.0 * tol, 1e-12);
    for (int i = 0; i < grid_n; ++i)
        if (std::abs(phi_shift[i] - out.phi[i] - PI) > shift_tol)
            throw MonotonicityViolation(
                "conjugate map violates the half-period identity near alpha = " +
                std::to_string(out.alpha[i]));
    return out;
}

double radon_defect(const SupportCurve& c, int grid_n, double tol, int jobs) {
    const ConjugateMapSamples samples = delta_curve(c, grid_n, tol, jobs);
    return *std::max_element(samples.defect.begin(), samples.defect.end());
}

FourPeriodicReport verify_four_periodic(const SupportCurve& c, double alpha, double tol) {
    const double beta = conjugate_map(c, alpha, tol);
    const Orbit orbit = iterate(c, {alpha, beta}, 4, tol);
    FourPeriodicReport rep;
    rep.lifts = orbit.samples;
    rep.lift_defect = std::max(std::abs(orbit.samples[4] - orbit.samples[0] - TWO_PI),
                               std::abs(orbit.samples[5] - orbit.samples[1] - TWO_PI));
    rep.antipode_defect =
        std::max(norm(eval_point(c, orbit.samples[2]) + eval_point(c, orbit.samples[0])),
                 norm(eval_point(c, orbit.samples[3]) + eval_point(c, orbit.samples[1])));
    return rep;
}

}  // namespace symplab
