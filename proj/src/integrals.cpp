#include "symplab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"
#include "symplab/quadrature.hpp"

namespace symplab {

namespace {

// gamma and its first two derivatives at one parameter value
struct Jet {
    Vec2 g, dg, ddg;
};

Jet jet_at(const SupportCurve& c, double t) {
    const SupportEval e = eval_support(c, t);
    const double cs = std::cos(t), sn = std::sin(t);
    const double rho = e.ddp + e.p;
    const double w = e.dddp + e.dp;
    Jet j;
    j.g = {-e.dp * sn + e.p * cs, e.dp * cs + e.p * sn};
    j.dg = {-rho * sn, rho * cs};
    j.ddg = {-w * sn - rho * cs, w * cs - rho * sn};
    return j;
}

double integrand(const Jet& a, const Jet& b) {
    const double l11 = cross(a.ddg, b.g);
    const double l12 = cross(a.dg, b.dg);
    const double l22 = cross(a.g, b.ddg);
    return (l11 + 2.0 * l12 + l22) * l12;
}

// Nodes/weights on [0, pi] for one axis of the half-square. Symmetric tables
// make the integrand pi-periodic in each variable separately, so the periodic
// trapezoid rule is spectrally exact; otherwise fall back to Gauss-Legendre
// panels with roughly the requested node count.
struct AxisRule {
    std::vector<double> t, w;
};

AxisRule halfsquare_axis(bool symmetric, int n) {
    AxisRule r;
    if (symmetric) {
        const double h = PI / n;
        r.t.resize(n);
        r.w.assign(n, h);
        for (int i = 0; i < n; ++i) r.t[i] = h * i;
        return r;
    }
    const int panels = std::max(1, n / 64);
    const QuadRule& gl = gauss_legendre(64);
    const double h = PI / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double a = h * pnl;
        for (int q = 0; q < 64; ++q) {
            r.t.push_back(a + 0.5 * h * (gl.nodes[q] + 1.0));
            r.w.push_back(0.5 * h * gl.weights[q]);
        }
    }
    return r;
}

double halfsquare_value(const SupportCurve& c, int n, int jobs) {
    const AxisRule axis = halfsquare_axis(c.symmetric, n);
    const int m = static_cast<int>(axis.t.size());
    std::vector<Jet> jets(m);
    parallel_for(m, jobs, [&](int i) { jets[i] = jet_at(c, axis.t[i]); });
    std::vector<double> rows(m);
    parallel_for(m, jobs, [&](int i) {
        KahanSum row;
        for (int j = 0; j < m; ++j) row.add(axis.w[j] * integrand(jets[i], jets[j]));
        rows[i] = axis.w[i] * row.value();
    });
    KahanSum total;
    for (double r : rows) total.add(r);
    return total.value();
}

double phi_region_value(const SupportCurve& c, Region region, int n, double map_tol,
                        int jobs) {
    const double h = TWO_PI / n;
    std::vector<double> rows(n);
    parallel_for(n, jobs, [&](int i) {
        const double t = h * i;
        const Jet outer = jet_at(c, t);
        const double phi = conjugate_map(c, t, map_tol);
        const double lo = region == Region::GammaDelta ? t : phi;
        const double hi = region == Region::GammaDelta ? phi : t + PI;
        rows[i] = h * gl_panels([&](double s) { return integrand(outer, jet_at(c, s)); },
                                lo, hi, 64, PI / 4.0);
    });
    KahanSum total;
    for (double r : rows) total.add(r);
    return total.value();
}

int identity_axis_nodes(const SupportCurve& c, int nodes) {
    // spectral exactness needs the node count above the integrand bandwidth
    return std::max(nodes, 4 * (c.max_harmonic() + 2));
}

void require_symmetric(const SupportCurve& c, const char* what) {
    if (!c.symmetric)
        throw SymmetryRequired(std::string(what) + " requires a centrally symmetric table");
}

}  // namespace

GeneratingPartials generating_partials(const SupportCurve& c, double t1, double t2) {
    const Jet a = jet_at(c, t1);
    const Jet b = jet_at(c, t2);
    return {cross(a.ddg, b.g), cross(a.dg, b.dg), cross(a.g, b.ddg)};
}

double rigidity_integrand(const SupportCurve& c, double t1, double t2) {
    return integrand(jet_at(c, t1), jet_at(c, t2));
}

IntegralReport region_integral(const SupportCurve& c, Region region, int nodes,
                               double quad_tol, double map_tol, double radon_tol,
                               int jobs) {
    if (nodes < 8) throw ConfigError("region_integral: too few nodes");
    if (region != Region::HalfSquare) {
        const double defect = radon_defect(c, std::max(256, nodes), map_tol, jobs);
        if (!(defect <= radon_tol))
            throw RadonHypothesisFailed(
                "conjugate pairing defect " + std::to_string(defect) +
                " exceeds tolerance; the phi-bounded regions are not well defined");
    }
    auto value_at = [&](int n) {
        return region == Region::HalfSquare ? halfsquare_value(c, n, jobs)
                                            : phi_region_value(c, region, n, map_tol, jobs);
    };
    const double coarse = value_at(nodes);
    const double fine = value_at(2 * nodes);
    IntegralReport rep;
    rep.region = region;
    rep.value = fine;
    rep.doubling_delta = std::abs(fine - coarse);
    rep.nodes = 2 * nodes;
    if (!(rep.doubling_delta <= quad_tol))
        throw QuadratureNotConverged("region integral moved by " +
                                     std::to_string(rep.doubling_delta) +
                                     " under node doubling (tolerance " +
                                     std::to_string(quad_tol) + ")");
    return rep;
}

double closed_form_functional(const SupportCurve& c, int nodes) {
    require_symmetric(c, "closed_form_functional");
    const int n =
        nodes > 0 ? nodes : std::max(1024, 8 * (c.max_harmonic() + 2));
    auto rho = [&](double t) {
        const SupportEval e = eval_support(c, t);
        return e.ddp + e.p;
    };
    const double u =
        trapezoid_periodic([&](double t) { const double r = rho(t); return r * r; }, 0.0,
                           TWO_PI, n);
    const double c2 = trapezoid_periodic(
        [&](double t) { const double r = rho(t); return r * r * std::cos(2.0 * t); }, 0.0,
        TWO_PI, n);
    const double s2 = trapezoid_periodic(
        [&](double t) { const double r = rho(t); return r * r * std::sin(2.0 * t); }, 0.0,
        TWO_PI, n);
    const double a = area(c);
    return -2.0 * a * u + u * u - c2 * c2 - s2 * s2;
}

IdentityCheck area_energy_identity(const SupportCurve& c, int nodes) {
    require_symmetric(c, "area_energy_identity");
    const int n = identity_axis_nodes(c, nodes);
    const double h = PI / n;
    std::vector<Jet> jets(n);
    for (int i = 0; i < n; ++i) jets[i] = jet_at(c, h * i);
    KahanSum lhs_sum;
    for (int i = 0; i < n; ++i) {
        KahanSum row;
        for (int j = 0; j < n; ++j) {
            const double l11 = cross(jets[i].ddg, jets[j].g);
            const double l12 = cross(jets[i].dg, jets[j].dg);
            const double l22 = cross(jets[i].g, jets[j].ddg);
            row.add((l11 + l22) * l12);
        }
        lhs_sum.add(h * h * row.value());
    }
    const double energy_half = trapezoid_periodic(
        [&](double t) {
            const SupportEval e = eval_support(c, t);
            const double r = e.ddp + e.p;
            return r * r;
        },
        0.0, PI, n);
    IdentityCheck chk;
    chk.lhs = lhs_sum.value();
    chk.rhs = -area(c) * energy_half;
    chk.residual = std::abs(chk.lhs - chk.rhs) /
                   std::max({1.0, std::abs(chk.lhs), std::abs(chk.rhs)});
    return chk;
}

IdentityCheck twist_energy_identity(const SupportCurve& c, int nodes) {
    require_symmetric(c, "twist_energy_identity");
    const int n = identity_axis_nodes(c, nodes);
    const double h = PI / n;
    std::vector<Jet> jets(n);
    for (int i = 0; i < n; ++i) jets[i] = jet_at(c, h * i);
    KahanSum lhs_sum;
    for (int i = 0; i < n; ++i) {
        KahanSum row;
        for (int j = 0; j < n; ++j) {
            const double l12 = cross(jets[i].dg, jets[j].dg);
            row.add(l12 * l12);
        }
        lhs_sum.add(h * h * row.value());
    }
    auto half_integral = [&](auto&& f) { return trapezoid_periodic(f, 0.0, PI, n); };
    const double u = half_integral([&](double t) {
        const SupportEval e = eval_support(c, t);
        const double r = e.ddp + e.p;
        return r * r;
    });
    const double c2 = half_integral([&](double t) {
        const SupportEval e = eval_support(c, t);
        const double r = e.ddp + e.p;
        return r * r * std::cos(2.0 * t);
    });
    const double s2 = half_integral([&](double t) {
        const SupportEval e = eval_support(c, t);
        const double r = e.ddp + e.p;
        return r * r * std::sin(2.0 * t);
    });
    IdentityCheck chk;
    chk.lhs = 2.0 * lhs_sum.value();
    chk.rhs = u * u - c2 * c2 - s2 * s2;
    chk.residual = std::abs(chk.lhs - chk.rhs) /
                   std::max({1.0, std::abs(chk.lhs), std::abs(chk.rhs)});
    return chk;
}

RegionAgreement region_agreement(const SupportCurve& c, int nodes, double quad_tol,
                                 double map_tol, double radon_tol, int jobs) {
    RegionAgreement agr;
    agr.gamma_delta =
        region_integral(c, Region::GammaDelta, nodes, quad_tol, map_tol, radon_tol, jobs);
    agr.delta_gammastar = region_integral(c, Region::DeltaGammaStar, nodes, quad_tol,
                                          map_tol, radon_tol, jobs);
    agr.half_square =
        region_integral(c, Region::HalfSquare, nodes, quad_tol, map_tol, radon_tol, jobs);
    const double v1 = agr.gamma_delta.value;
    const double v2 = agr.delta_gammastar.value;
    const double v3 = agr.half_square.value;
    agr.max_pairwise =
        std::max({std::abs(v1 - v2), std::abs(v1 - v3), std::abs(v2 - v3)});
    return agr;
}

double twist_minimum(const SupportCurve& c, int grid_n, double margin) {
    if (grid_n < 2) throw ConfigError("twist_minimum: grid too small");
    if (!(margin > 0.0) || !(margin < 0.5 * PI))
        throw ConfigError("twist_minimum: margin must lie in (0, pi/2)");
    std::vector<Vec2> tang(grid_n);
    for (int i = 0; i < grid_n; ++i) tang[i] = eval_tangent(c, TWO_PI * i / grid_n);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_n; ++i) {
        const double t1 = TWO_PI * i / grid_n;
        for (int j = 0; j < grid_n; ++j) {
            const double gap = margin + (PI - 2.0 * margin) * j / (grid_n - 1);
            best = std::min(best, cross(tang[i], eval_tangent(c, t1 + gap)));
        }
    }
    return best;
}

}  // namespace symplab
