#include "symplab/support_curve.hpp"

#include <algorithm>
#include <cmath>

#include "symplab/errors.hpp"
#include "symplab/quadrature.hpp"

namespace symplab {

SupportEval eval_support(const SupportCurve& c, double alpha) {
    SupportEval e{c.a0, 0.0, 0.0, 0.0};
    const size_t terms = std::max(c.cos_k.size(), c.sin_k.size());
    if (terms == 0) return e;
    const double c1 = std::cos(alpha), s1 = std::sin(alpha);
    // (ck, sk) = (cos k alpha, sin k alpha), advanced by complex rotation
    double ck = c1 * c1 - s1 * s1;
    double sk = 2.0 * s1 * c1;
    for (size_t i = 0; i < terms; ++i) {
        const double k = static_cast<double>(i + 2);
        const double a = i < c.cos_k.size() ? c.cos_k[i] : 0.0;
        const double b = i < c.sin_k.size() ? c.sin_k[i] : 0.0;
        const double base = a * ck + b * sk;
        const double conj = -a * sk + b * ck;
        e.p += base;
        e.dp += k * conj;
        e.ddp -= k * k * base;
        e.dddp -= k * k * k * conj;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return e;
}

Vec2 eval_point(const SupportCurve& c, double alpha) {
    const SupportEval e = eval_support(c, alpha);
    const double sn = std::sin(alpha), cs = std::cos(alpha);
    return {-e.dp * sn + e.p * cs, e.dp * cs + e.p * sn};
}

Vec2 eval_tangent(const SupportCurve& c, double alpha) {
    const SupportEval e = eval_support(c, alpha);
    const double rho = e.ddp + e.p;
    return {-rho * std::sin(alpha), rho * std::cos(alpha)};
}

Vec2 eval_second(const SupportCurve& c, double alpha) {
    const SupportEval e = eval_support(c, alpha);
    const double rho = e.ddp + e.p;
    const double w = e.dddp + e.dp;
    const double sn = std::sin(alpha), cs = std::cos(alpha);
    // w e_alpha + rho J e_alpha with J e_alpha = (-cos, -sin)
    return {-w * sn - rho * cs, w * cs - rho * sn};
}

double radius_of_curvature(const SupportCurve& c, double alpha) {
    const SupportEval e = eval_support(c, alpha);
    return e.ddp + e.p;
}

namespace {

int auto_nodes(const SupportCurve& c, int requested) {
    if (requested > 0) return requested;
    // exact for products of two series (bandwidth 2 (K+1))
    return std::max(512, 8 * (c.max_harmonic() + 2));
}

}  // namespace

double area(const SupportCurve& c, int nodes) {
    const int n = auto_nodes(c, nodes);
    return 0.5 * trapezoid_periodic(
                     [&](double a) {
                         const SupportEval e = eval_support(c, a);
                         return e.p * (e.ddp + e.p);
                     },
                     0.0, TWO_PI, n);
}

double perimeter(const SupportCurve& c, int nodes) {
    const int n = auto_nodes(c, nodes);
    return trapezoid_periodic([&](double a) { return radius_of_curvature(c, a); }, 0.0,
                              TWO_PI, n);
}

ValidationReport validate(const SupportCurve& c, int grid_n) {
    ValidationReport r;
    r.grid_n = grid_n;
    r.min_p = c.a0;
    r.min_rho = c.a0;

    // derivative bounds from the coefficient norms
    double lip_p = 0.0, lip_rho = 0.0;
    for (size_t i = 0; i < c.cos_k.size(); ++i) {
        const double k = static_cast<double>(i + 2);
        const double sk = i < c.sin_k.size() ? c.sin_k[i] : 0.0;
        const double amp = std::hypot(c.cos_k[i], sk);
        lip_p += k * amp;
        lip_rho += k * std::abs(1.0 - k * k) * amp;
    }
    const double h = TWO_PI / grid_n;
    r.margin_p = 0.5 * h * lip_p;
    r.margin_rho = 0.5 * h * lip_rho;

    bool first = true;
    for (int i = 0; i < grid_n; ++i) {
        const double a = i * h;
        const SupportEval e = eval_support(c, a);
        const double rho = e.ddp + e.p;
        if (first || e.p < r.min_p) {
            r.min_p = e.p;
            r.argmin_p = a;
        }
        if (first || rho < r.min_rho) {
            r.min_rho = rho;
            r.argmin_rho = a;
        }
        first = false;
    }

    r.symmetry_ok = true;
    if (c.symmetric) {
        const double tol = 1e-12 * std::max(1.0, std::abs(c.a0));
        const size_t terms = std::max(c.cos_k.size(), c.sin_k.size());
        for (size_t i = 0; i < terms; ++i) {
            const double ck = i < c.cos_k.size() ? c.cos_k[i] : 0.0;
            const double sk = i < c.sin_k.size() ? c.sin_k[i] : 0.0;
            if ((i + 2) % 2 == 1 && (std::abs(ck) > tol || std::abs(sk) > tol)) {
                r.symmetry_ok = false;
                break;
            }
        }
    }

    if (!(r.min_p - r.margin_p > 0.0))
        r.failure = "support function is not positive (table does not contain the origin)";
    else if (!(r.min_rho - r.margin_rho > 0.0))
        r.failure = "curvature radius is not positive (table is not strongly convex)";
    else if (!r.symmetry_ok)
        r.failure = "symmetric flag set but odd harmonics are present";
    r.pass = r.failure.empty();
    return r;
}

void require_valid(const SupportCurve& c, int grid_n) {
    const ValidationReport r = validate(c, grid_n);
    if (!r.pass) throw ValidationFailure(r.failure);
}

SupportCurve project_support_samples(const std::vector<double>& samples, bool symmetric,
                                     int max_harmonic, double tail_tol) {
    const int n = static_cast<int>(samples.size());
    if (max_harmonic < 0) throw ConfigError("projection: max_harmonic must be >= 0");
    if (n < std::max(8, 2 * max_harmonic + 2))
        throw ConfigError("projection: too few samples for the requested harmonic count");

    SupportCurve out;
    out.symmetric = symmetric;
    {
        KahanSum acc;
        for (double v : samples) acc.add(v);
        out.a0 = acc.value() / n;
    }
    const double scale = std::max(1.0, std::abs(out.a0));

    // first harmonic: must be absent (it encodes a translation)
    double c1 = 0.0, s1 = 0.0;
    {
        KahanSum ac, as;
        for (int j = 0; j < n; ++j) {
            const double a = TWO_PI * j / n;
            ac.add(samples[j] * std::cos(a));
            as.add(samples[j] * std::sin(a));
        }
        c1 = 2.0 * ac.value() / n;
        s1 = 2.0 * as.value() / n;
    }
    if (std::hypot(c1, s1) > std::max(tail_tol, 1e-12) * scale)
        throw ProjectionFailure(
            "projection: first harmonic present; the table is not pinned at the origin");

    out.cos_k.assign(std::max(0, max_harmonic - 1), 0.0);
    out.sin_k.assign(std::max(0, max_harmonic - 1), 0.0);
    for (int k = 2; k <= max_harmonic; ++k) {
        KahanSum ac, as;
        for (int j = 0; j < n; ++j) {
            const double a = std::fmod(static_cast<double>(k) * j, static_cast<double>(n)) *
                             (TWO_PI / n);
            ac.add(samples[j] * std::cos(a));
            as.add(samples[j] * std::sin(a));
        }
        double ck = 2.0 * ac.value() / n;
        double sk = 2.0 * as.value() / n;
        if (symmetric && k % 2 == 1) {
            if (std::hypot(ck, sk) > std::max(tail_tol, 1e-12) * scale)
                throw ProjectionFailure("projection: odd harmonic present in a symmetric table");
            ck = sk = 0.0;
        }
        out.cos_k[k - 2] = ck;
        out.sin_k[k - 2] = sk;
    }

    // drop a negligible tail so trivial series stay trivial
    const double trim = 1e-15 * scale;
    while (!out.cos_k.empty() && std::abs(out.cos_k.back()) < trim &&
           std::abs(out.sin_k.back()) < trim) {
        out.cos_k.pop_back();
        out.sin_k.pop_back();
    }

    // residual on the sample grid measures the discarded tail plus aliasing
    double resid = 0.0;
    for (int j = 0; j < n; ++j) {
        const double a = TWO_PI * j / n;
        resid = std::max(resid, std::abs(eval_support(out, a).p - samples[j]));
    }
    if (resid > tail_tol * scale)
        throw ProjectionFailure("projection: residual " + std::to_string(resid) +
                                " above tolerance; increase max_harmonic");
    return out;
}

SupportCurve ellipse_curve(double a, double b, double rotation, int max_harmonic,
                           double tail_tol) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("ellipse_curve: semi-axes must be positive");
    const int n = std::max(256, 8 * max_harmonic);
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) {
        const double t = TWO_PI * j / n - rotation;
        const double cs = std::cos(t), sn = std::sin(t);
        samples[j] = std::sqrt(a * a * cs * cs + b * b * sn * sn);
    }
    return project_support_samples(samples, true, max_harmonic, tail_tol);
}

SupportCurve apply_affine(const SupportCurve& c, const AffineMap& m, int max_harmonic,
                          double tail_tol) {
    if (std::abs(m.det()) < 1e-12) throw ConfigError("apply_affine: map is singular");
    const int harmonics = max_harmonic > 0 ? max_harmonic : std::max(64, c.max_harmonic());
    const int n = std::max(256, 8 * harmonics);
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) {
        const double psi = TWO_PI * j / n;
        const Vec2 v = m.apply_transpose(normal_dir(psi));
        const double r = norm(v);
        samples[j] = r * eval_support(c, std::atan2(v.y, v.x)).p;
    }
    SupportCurve out = project_support_samples(samples, c.symmetric, harmonics, tail_tol);
    require_valid(out);
    return out;
}

}  // namespace symplab
