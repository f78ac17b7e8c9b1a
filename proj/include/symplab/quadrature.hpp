#pragma once

#include <cmath>
#include <vector>

namespace symplab {

// Gauss-Legendre rule on [-1, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached n-point Gauss-Legendre rule (Newton iteration on the Legendre
// recurrence). Thread-safe; warm the cache before fanning out workers if
// the node count is new.
const QuadRule& gauss_legendre(int n);

// Compensated accumulator; summation order is fixed by the caller, so results
// are independent of the number of worker threads.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// One full period of a periodic integrand with n uniform nodes; spectrally
// accurate, and exact (to roundoff) for trigonometric polynomials of degree
// below n.
template <class F>
double trapezoid_periodic(F&& f, double t0, double period, int n) {
    const double h = period / n;
    KahanSum acc;
    for (int i = 0; i < n; ++i) acc.add(f(t0 + i * h));
    return acc.value() * h;
}

// Gauss-Legendre panels over [a, b]: nodes_per_panel each, panels no longer
// than max_panel.
template <class F>
double gl_panels(F&& f, double a, double b, int nodes_per_panel, double max_panel) {
    if (!(b > a)) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    const QuadRule& rule = gauss_legendre(nodes_per_panel);
    const double len = (b - a) / panels;
    KahanSum acc;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * len;
        const double mid = lo + 0.5 * len;
        const double half = 0.5 * len;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
    return acc.value() * 0.5 * len;
}

}  // namespace symplab
