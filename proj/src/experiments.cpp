#include "symplab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symplab/errors.hpp"
#include "symplab/parallel.hpp"

namespace symplab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConsistentWithEllipse: return "consistent_with_ellipse";
        case Verdict::HypothesesFail: return "hypotheses_fail";
        case Verdict::InequalityViolated: return "inequality_violated";
    }
    return "unknown";
}

RigidityReport rigidity_report(const SupportCurve& c, const ReportConfig& cfg) {
    RigidityReport rep;
    rep.validation = validate(c, cfg.validate_grid);
    if (!rep.validation.pass)
        throw ValidationFailure("table failed validation: " + rep.validation.failure);
    if (!c.symmetric)
        throw SymmetryRequired("rigidity_report requires a centrally symmetric table");

    rep.area = area(c);
    rep.perimeter = perimeter(c);
    rep.deficit = isoperimetric_deficit(c);
    rep.radon = radon_defect(c, cfg.grid_n, cfg.tol.map, cfg.jobs);
    rep.radon_ok = rep.radon <= cfg.tol.radon;

    if (rep.radon_ok) {
        const RegionAgreement agr = region_agreement(c, cfg.nodes, cfg.tol.quad,
                                                     cfg.tol.map, cfg.tol.radon, cfg.jobs);
        rep.region_gamma_delta = agr.gamma_delta;
        rep.region_delta_gammastar = agr.delta_gammastar;
        rep.region_half_square = agr.half_square;
        if (agr.max_pairwise > cfg.tol.quad)
            rep.annotations.push_back("region integrals disagree by " +
                                      std::to_string(agr.max_pairwise));
    } else {
        rep.annotations.push_back(
            "conjugate pairing defect above threshold; skipping the region integrals");
        rep.region_half_square =
            region_integral(c, Region::HalfSquare, cfg.nodes, cfg.tol.quad, cfg.tol.map,
                            cfg.tol.radon, cfg.jobs);
    }
    rep.closed_form = closed_form_functional(c);

    try {
        rep.normalization = normalize(c, cfg.tol.normalize, cfg.max_iter);
        rep.has_normalization = true;
        const SupportCurve normed =
            normalized_curve(c, rep.normalization, 0, cfg.tol.projection);
        rep.closed_form_normalized = closed_form_functional(normed);
        rep.deficit_normalized = isoperimetric_deficit(normed);
    } catch (const NoConvergence& e) {
        rep.annotations.push_back(std::string("normalization failed: ") + e.what());
    }

    const bool flat = std::abs(rep.closed_form_normalized) <= cfg.tol.fclosed;
    const bool round = rep.deficit_normalized < cfg.tol.deficit;
    if (!rep.radon_ok) {
        rep.verdict = Verdict::HypothesesFail;
    } else if (rep.closed_form > cfg.tol.fclosed) {
        rep.verdict = Verdict::InequalityViolated;
        rep.annotations.push_back("closed-form functional is positive");
    } else if (rep.has_normalization && rep.normalization.converged && flat && round) {
        rep.verdict = Verdict::ConsistentWithEllipse;
    } else {
        rep.verdict = Verdict::HypothesesFail;
        if (rep.has_normalization && !round)
            rep.annotations.push_back("normalized table keeps a positive deficit");
    }
    return rep;
}

FoliationProbe foliation_probe(const SupportCurve& c, double t0, int seed_count,
                               double gap_lo, double gap_hi, int steps, double tol,
                               int jobs) {
    if (seed_count < 2) throw ConfigError("foliation_probe: need at least two seeds");
    if (!(gap_lo > kPhaseMargin) || !(gap_hi < PI - kPhaseMargin) || !(gap_lo < gap_hi))
        throw ConfigError("foliation_probe: gap window outside the phase strip");
    if (steps < 16) throw ConfigError("foliation_probe: too few steps");

    FoliationProbe probe;
    probe.t0 = t0;
    probe.seeds.resize(seed_count);
    parallel_for(seed_count, jobs, [&](int i) {
        ProbeSeed seed;
        seed.gap0 = gap_lo + (gap_hi - gap_lo) * i / (seed_count - 1);
        const Orbit orbit = iterate(c, {t0, t0 + seed.gap0}, steps, tol);
        seed.rotation.steps = steps;
        seed.rotation.value = (orbit.samples[steps] - orbit.samples[0]) / (TWO_PI * steps);
        seed.rotation.error_bound = 1.0 / steps;
        // sliding-window quotients over the tail of the orbit
        const int window = std::max(8, steps / 4);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int k = 0; k + window <= steps; ++k) {
            const double q =
                (orbit.samples[k + window] - orbit.samples[k]) / (TWO_PI * window);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        seed.dispersion = hi - lo;
        probe.seeds[i] = seed;
    });
    probe.monotone = true;
    for (int i = 0; i + 1 < seed_count; ++i) {
        const double allowance =
            probe.seeds[i].rotation.error_bound + probe.seeds[i + 1].rotation.error_bound;
        if (probe.seeds[i + 1].rotation.value < probe.seeds[i].rotation.value - allowance)
            probe.monotone = false;
    }
    probe.dispersion = 0.0;
    for (const ProbeSeed& s : probe.seeds)
        probe.dispersion = std::max(probe.dispersion, s.dispersion);
    return probe;
}

PhasePortrait phase_portrait(const SupportCurve& c, const std::vector<PhasePoint>& seeds,
                             int steps, double tol, double radon_tol, int grid_n,
                             int jobs) {
    PhasePortrait portrait;
    portrait.series.resize(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), jobs, [&](int i) {
        const Orbit orbit = iterate(c, seeds[i], steps, tol);
        PortraitSeries series;
        series.label = "orbit" + std::to_string(i);
        series.points.reserve(steps + 1);
        for (size_t k = 0; k + 1 < orbit.samples.size(); ++k)
            series.points.push_back({wrap_angle(orbit.samples[k]),
                                     orbit.samples[k + 1] - orbit.samples[k]});
        portrait.series[i] = std::move(series);
    });
    if (c.symmetric) {
        const ConjugateMapSamples smp = delta_curve(c, grid_n, tol, jobs);
        const double defect = *std::max_element(smp.defect.begin(), smp.defect.end());
        if (defect <= radon_tol) {
            PortraitSeries series;
            series.label = "delta";
            series.points.reserve(smp.alpha.size());
            for (size_t k = 0; k < smp.alpha.size(); ++k)
                series.points.push_back({smp.alpha[k], smp.phi[k] - smp.alpha[k]});
            portrait.series.push_back(std::move(series));
        }
    }
    return portrait;
}

}  // namespace symplab
