#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symplab/integrals.hpp"
#include "symplab/normalize.hpp"

namespace symplab {

enum class Verdict {
    ConsistentWithEllipse,
    HypothesesFail,
    InequalityViolated,
};

std::string to_string(Verdict v);

struct Tolerances {
    double map = 1e-12;        // chord-root residual
    double radon = 1e-8;       // pairing-defect threshold
    double quad = 1e-8;        // node-doubling convergence
    double identity = 1e-6;    // identity residual threshold (reporting)
    double fclosed = 1e-6;     // functional sign / normalized-functional threshold
    double normalize = 1e-10;  // second-harmonic residual
    double deficit = 1e-8;     // normalized isoperimetric deficit threshold
    double projection = 1e-10; // Fourier tail
};

struct ReportConfig {
    Tolerances tol;
    int nodes = 256;        // quadrature base resolution
    int grid_n = 256;       // conjugate-map / defect grid
    int validate_grid = 4096;
    int max_iter = 50;      // normalization Newton
    int jobs = 1;
};

struct RigidityReport {
    ValidationReport validation;
    double area = 0.0;
    double perimeter = 0.0;
    double deficit = 0.0;
    double radon = 0.0;
    bool radon_ok = false;
    // phi-bounded regions are only present when the pairing defect passes
    std::optional<IntegralReport> region_gamma_delta;
    std::optional<IntegralReport> region_delta_gammastar;
    std::optional<IntegralReport> region_half_square;
    double closed_form = 0.0;
    bool has_normalization = false;
    NormalizationResult normalization;
    double closed_form_normalized = 0.0;
    double deficit_normalized = 0.0;
    Verdict verdict = Verdict::HypothesesFail;
    std::vector<std::string> annotations;
};

// Full diagnostic battery: validation, pairing defect, region integrals,
// closed-form functional, normalization, normalized functional and deficit,
// and the final verdict.
RigidityReport rigidity_report(const SupportCurve& c, const ReportConfig& cfg = {});

struct ProbeSeed {
    double gap0 = 0.0;  // initial s - t on the transversal
    RotationEstimate rotation;
    double dispersion = 0.0;  // max deviation of sliding-window quotients
};

struct FoliationProbe {
    double t0 = 0.0;
    std::vector<ProbeSeed> seeds;
    bool monotone = false;  // estimates non-decreasing within error bounds
    double dispersion = 0.0;  // max over seeds
};

FoliationProbe foliation_probe(const SupportCurve& c, double t0 = 0.0, int seed_count = 33,
                               double gap_lo = 0.1, double gap_hi = PI - 0.1,
                               int steps = 512, double tol = 1e-12, int jobs = 1);

struct PortraitSeries {
    std::string label;
    std::vector<Vec2> points;  // (t mod 2pi, gap)
};

struct PhasePortrait {
    std::vector<PortraitSeries> series;
};

// Orbits of the given seeds in (t mod 2pi, s - t) coordinates; when the
// pairing defect passes radon_tol, the conjugate graph is appended as a
// series labeled "delta".
PhasePortrait phase_portrait(const SupportCurve& c, const std::vector<PhasePoint>& seeds,
                             int steps = 256, double tol = 1e-12, double radon_tol = 1e-8,
                             int grid_n = 256, int jobs = 1);

}  // namespace symplab
