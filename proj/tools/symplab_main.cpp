#include <cmath>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symplab/errors.hpp"
#include "symplab/experiments.hpp"
#include "symplab/io.hpp"

namespace {

using namespace symplab;

struct Common {
    std::string curve_path;
    std::vector<std::string> tol_pairs;
    std::string out_path;
    int nodes = 256;
    int grid_n = 256;
    int jobs = 1;
};

void add_common(CLI::App* sub, Common& c, bool needs_nodes = false) {
    sub->add_option("--curve", c.curve_path, "curve spec file (JSON)")->required();
    sub->add_option("--tol", c.tol_pairs,
                    "named tolerance, e.g. --tol map=1e-12 (map, radon, quad, identity, "
                    "fclosed, normalize, deficit, projection)");
    sub->add_option("--out", c.out_path, "also write the result to this file");
    sub->add_option("--jobs", c.jobs, "max concurrent workers")->check(CLI::Range(1, 256));
    if (needs_nodes) {
        sub->add_option("--nodes", c.nodes, "quadrature base resolution")
            ->check(CLI::Range(8, 1 << 16));
        sub->add_option("--grid", c.grid_n, "conjugate-map grid size")
            ->check(CLI::Range(8, 1 << 20));
    }
}

Tolerances parse_tolerances(const std::vector<std::string>& pairs) {
    Tolerances tol;
    for (const std::string& pair : pairs) {
        const size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--tol expects name=value, got \"" + pair + "\"");
        const std::string name = pair.substr(0, eq);
        double value = 0.0;
        try {
            size_t used = 0;
            value = std::stod(pair.substr(eq + 1), &used);
            if (used != pair.size() - eq - 1) throw std::invalid_argument(pair);
        } catch (const std::exception&) {
            throw ConfigError("--tol " + name + ": bad numeric value");
        }
        if (!(value > 0.0)) throw ConfigError("--tol " + name + ": tolerance must be > 0");
        if (name == "map") tol.map = value;
        else if (name == "radon") tol.radon = value;
        else if (name == "quad") tol.quad = value;
        else if (name == "identity") tol.identity = value;
        else if (name == "fclosed") tol.fclosed = value;
        else if (name == "normalize") tol.normalize = value;
        else if (name == "deficit") tol.deficit = value;
        else if (name == "projection") tol.projection = value;
        else throw ConfigError("--tol: unknown tolerance name \"" + name + "\"");
    }
    return tol;
}

void emit(const Common& c, const std::string& text) {
    std::cout << text;
    if (!c.out_path.empty()) write_text_file(c.out_path, text);
}

SupportCurve load_valid(const Common& c) {
    SupportCurve curve = load_curve(c.curve_path);
    require_valid(curve);
    return curve;
}

int run(CLI::App& app, int argc, char** argv) {
    app.require_subcommand(1);

    // validate
    auto common_validate = std::make_shared<Common>();
    CLI::App* sub = app.add_subcommand("validate", "check positivity, convexity, symmetry");
    add_common(sub, *common_validate);
    sub->callback([common_validate] {
        const SupportCurve curve = load_curve(common_validate->curve_path);
        const ValidationReport rep = validate(curve);
        emit(*common_validate, validation_json(rep));
        if (!rep.pass) throw ValidationFailure(rep.failure);
    });

    // map
    auto common_map = std::make_shared<Common>();
    auto map_t1 = std::make_shared<double>(0.0);
    auto map_t2 = std::make_shared<double>(0.0);
    auto map_inverse = std::make_shared<bool>(false);
    sub = app.add_subcommand("map", "apply the billiard map to one phase point");
    add_common(sub, *common_map);
    sub->add_option("--t1", *map_t1, "first lifted parameter")->required();
    sub->add_option("--t2", *map_t2, "second lifted parameter")->required();
    sub->add_flag("--inverse", *map_inverse, "apply the inverse map");
    sub->callback([common_map, map_t1, map_t2, map_inverse] {
        const SupportCurve curve = load_valid(*common_map);
        const Tolerances tol = parse_tolerances(common_map->tol_pairs);
        const PhasePoint in{*map_t1, *map_t2};
        const PhasePoint out = *map_inverse ? billiard_map_inverse(curve, in, tol.map)
                                            : billiard_map(curve, in, tol.map);
        const double resid =
            *map_inverse
                ? std::abs(cross(tangent_dir(out.t2),
                                 eval_point(curve, in.t2) - eval_point(curve, out.t1)))
                : std::abs(cross(tangent_dir(in.t2),
                                 eval_point(curve, out.t2) - eval_point(curve, in.t1)));
        JsonWriter w;
        w.begin_object();
        w.key("t1").value(out.t1);
        w.key("t2").value(out.t2);
        w.key("residual").value(resid);
        w.end_object();
        emit(*common_map, w.str() + "\n");
    });

    // orbit
    auto common_orbit = std::make_shared<Common>();
    auto orbit_t1 = std::make_shared<double>(0.0);
    auto orbit_t2 = std::make_shared<double>(0.0);
    auto orbit_steps = std::make_shared<int>(100);
    sub = app.add_subcommand("orbit", "iterate the map and emit a CSV orbit");
    add_common(sub, *common_orbit);
    sub->add_option("--t1", *orbit_t1)->required();
    sub->add_option("--t2", *orbit_t2)->required();
    sub->add_option("--steps", *orbit_steps, "number of map applications")
        ->check(CLI::Range(0, 1 << 24));
    sub->callback([common_orbit, orbit_t1, orbit_t2, orbit_steps] {
        const SupportCurve curve = load_valid(*common_orbit);
        const Tolerances tol = parse_tolerances(common_orbit->tol_pairs);
        const Orbit orbit = iterate(curve, {*orbit_t1, *orbit_t2}, *orbit_steps, tol.map);
        emit(*common_orbit, orbit_csv(curve, orbit));
    });

    // rotation
    auto common_rot = std::make_shared<Common>();
    auto rot_t1 = std::make_shared<double>(0.0);
    auto rot_t2 = std::make_shared<double>(0.0);
    auto rot_steps = std::make_shared<int>(512);
    sub = app.add_subcommand("rotation", "Birkhoff rotation-number estimate");
    add_common(sub, *common_rot);
    sub->add_option("--t1", *rot_t1)->required();
    sub->add_option("--t2", *rot_t2)->required();
    sub->add_option("--iters,--steps", *rot_steps, "orbit length")
        ->check(CLI::Range(1, 1 << 24));
    sub->callback([common_rot, rot_t1, rot_t2, rot_steps] {
        const SupportCurve curve = load_valid(*common_rot);
        const Tolerances tol = parse_tolerances(common_rot->tol_pairs);
        const RotationEstimate est =
            rotation_number(curve, {*rot_t1, *rot_t2}, *rot_steps, tol.map);
        JsonWriter w;
        w.begin_object();
        w.key("value").value(est.value);
        w.key("error_bound").value(est.error_bound);
        w.key("steps").value(est.steps);
        w.end_object();
        emit(*common_rot, w.str() + "\n");
    });

    // conjugate
    auto common_conj = std::make_shared<Common>();
    auto conj_alpha = std::make_shared<double>(0.0);
    auto conj_single = std::make_shared<bool>(false);
    sub = app.add_subcommand("conjugate",
                             "conjugate-direction map: CSV over a grid, or one angle");
    add_common(sub, *common_conj, true);
    sub->add_option("--alpha", *conj_alpha, "evaluate at a single angle (JSON)")
        ->each([conj_single](const std::string&) { *conj_single = true; });
    sub->callback([common_conj, conj_alpha, conj_single] {
        const SupportCurve curve = load_valid(*common_conj);
        const Tolerances tol = parse_tolerances(common_conj->tol_pairs);
        if (*conj_single) {
            const double phi = conjugate_map(curve, *conj_alpha, tol.map);
            const Vec2 g = eval_point(curve, phi);
            JsonWriter w;
            w.begin_object();
            w.key("alpha").value(*conj_alpha);
            w.key("phi").value(phi);
            w.key("defect").value(std::abs(cross(tangent_dir(*conj_alpha), g)) / norm(g));
            w.end_object();
            emit(*common_conj, w.str() + "\n");
        } else {
            const ConjugateMapSamples smp =
                delta_curve(curve, common_conj->grid_n, tol.map, common_conj->jobs);
            emit(*common_conj, conjugate_csv(smp));
        }
    });

    // radon
    auto common_radon = std::make_shared<Common>();
    sub = app.add_subcommand("radon", "scale-invariant pairing defect of the table");
    add_common(sub, *common_radon, true);
    sub->callback([common_radon] {
        const SupportCurve curve = load_valid(*common_radon);
        const Tolerances tol = parse_tolerances(common_radon->tol_pairs);
        const double defect =
            radon_defect(curve, common_radon->grid_n, tol.map, common_radon->jobs);
        JsonWriter w;
        w.begin_object();
        w.key("grid_n").value(common_radon->grid_n);
        w.key("defect").value(defect);
        w.key("pass").value(defect <= tol.radon);
        w.key("tolerance").value(tol.radon);
        w.end_object();
        emit(*common_radon, w.str() + "\n");
    });

    // integrals
    auto common_int = std::make_shared<Common>();
    auto int_region = std::make_shared<std::string>();
    sub = app.add_subcommand("integrals",
                             "region quadratures of the rigidity integrand");
    add_common(sub, *common_int, true);
    sub->add_option("--region", *int_region, "one region only")
        ->check(CLI::IsMember({"gamma-delta", "delta-gammastar", "half-square"}));
    sub->callback([common_int, int_region] {
        const SupportCurve curve = load_valid(*common_int);
        const Tolerances tol = parse_tolerances(common_int->tol_pairs);
        if (!int_region->empty()) {
            const Region region = *int_region == "gamma-delta" ? Region::GammaDelta
                                  : *int_region == "delta-gammastar"
                                      ? Region::DeltaGammaStar
                                      : Region::HalfSquare;
            const IntegralReport rep =
                region_integral(curve, region, common_int->nodes, tol.quad, tol.map,
                                tol.radon, common_int->jobs);
            JsonWriter w;
            w.begin_object();
            w.key("region").value(*int_region);
            w.key("value").value(rep.value);
            w.key("doubling_delta").value(rep.doubling_delta);
            w.key("nodes").value(rep.nodes);
            w.end_object();
            emit(*common_int, w.str() + "\n");
            return;
        }
        const RegionAgreement agr = region_agreement(
            curve, common_int->nodes, tol.quad, tol.map, tol.radon, common_int->jobs);
        const double fclosed = closed_form_functional(curve);
        JsonWriter w;
        w.begin_object();
        w.key("gamma_delta").value(agr.gamma_delta.value);
        w.key("delta_gammastar").value(agr.delta_gammastar.value);
        w.key("half_square").value(agr.half_square.value);
        w.key("max_pairwise").value(agr.max_pairwise);
        w.key("closed_form").value(fclosed);
        w.key("doubling_deltas").begin_array();
        w.value(agr.gamma_delta.doubling_delta);
        w.value(agr.delta_gammastar.doubling_delta);
        w.value(agr.half_square.doubling_delta);
        w.end_array();
        w.key("nodes").value(agr.half_square.nodes);
        w.key("tolerances").begin_object();
        w.key("quad").value(tol.quad);
        w.key("radon").value(tol.radon);
        w.key("map").value(tol.map);
        w.end_object();
        w.end_object();
        emit(*common_int, w.str() + "\n");
    });

    // identities
    auto common_id = std::make_shared<Common>();
    sub = app.add_subcommand("identities",
                             "area-energy and twist-energy identities, region agreement");
    add_common(sub, *common_id, true);
    sub->callback([common_id] {
        const SupportCurve curve = load_valid(*common_id);
        const Tolerances tol = parse_tolerances(common_id->tol_pairs);
        const IdentityCheck ia = area_energy_identity(curve, common_id->nodes);
        const IdentityCheck ib = twist_energy_identity(curve, common_id->nodes);
        JsonWriter w;
        w.begin_object();
        w.key("intA").begin_object();
        w.key("lhs").value(ia.lhs);
        w.key("rhs").value(ia.rhs);
        w.key("residual").value(ia.residual);
        w.end_object();
        w.key("intB").begin_object();
        w.key("lhs").value(ib.lhs);
        w.key("rhs").value(ib.rhs);
        w.key("residual").value(ib.residual);
        w.end_object();
        w.key("lemma1");
        bool lemma1_ok = true;
        std::string lemma1_note;
        try {
            const RegionAgreement agr = region_agreement(
                curve, common_id->nodes, tol.quad, tol.map, tol.radon, common_id->jobs);
            w.begin_object();
            w.key("gamma_delta").value(agr.gamma_delta.value);
            w.key("delta_gammastar").value(agr.delta_gammastar.value);
            w.key("half_square").value(agr.half_square.value);
            w.key("max_pairwise").value(agr.max_pairwise);
            w.end_object();
        } catch (const RadonHypothesisFailed& e) {
            lemma1_ok = false;
            lemma1_note = e.what();
            w.null();
        }
        w.key("pass").value(ia.residual < tol.identity && ib.residual < tol.identity);
        if (!lemma1_ok) w.key("lemma1_skipped").value(lemma1_note);
        w.end_object();
        emit(*common_id, w.str() + "\n");
    });

    // normalize
    auto common_norm = std::make_shared<Common>();
    auto norm_iters = std::make_shared<int>(50);
    auto norm_save = std::make_shared<std::string>();
    sub = app.add_subcommand("normalize",
                             "second-harmonic-killing affine normalization");
    add_common(sub, *common_norm);
    sub->add_option("--iters", *norm_iters, "Newton iteration cap")->check(CLI::Range(1, 1000));
    sub->add_option("--save-curve", *norm_save, "write the normalized curve spec here");
    sub->callback([common_norm, norm_iters, norm_save] {
        const SupportCurve curve = load_valid(*common_norm);
        const Tolerances tol = parse_tolerances(common_norm->tol_pairs);
        const NormalizationResult res = normalize(curve, tol.normalize, *norm_iters);
        const SupportCurve normed = normalized_curve(curve, res, 0, tol.projection);
        emit(*common_norm, normalization_json(res, normed));
        if (!norm_save->empty()) save_curve(normed, *norm_save);
    });

    // deficit
    auto common_def = std::make_shared<Common>();
    sub = app.add_subcommand("deficit", "isoperimetric deficit L^2 - 4 pi A");
    add_common(sub, *common_def);
    sub->callback([common_def] {
        const SupportCurve curve = load_valid(*common_def);
        JsonWriter w;
        w.begin_object();
        w.key("area").value(area(curve));
        w.key("perimeter").value(perimeter(curve));
        w.key("deficit").value(isoperimetric_deficit(curve));
        w.end_object();
        emit(*common_def, w.str() + "\n");
    });

    // report
    auto common_rep = std::make_shared<Common>();
    auto rep_iters = std::make_shared<int>(50);
    sub = app.add_subcommand("report", "full rigidity diagnostic with verdict");
    add_common(sub, *common_rep, true);
    sub->add_option("--iters", *rep_iters, "normalization iteration cap")
        ->check(CLI::Range(1, 1000));
    sub->callback([common_rep, rep_iters] {
        const SupportCurve curve = load_curve(common_rep->curve_path);
        ReportConfig cfg;
        cfg.tol = parse_tolerances(common_rep->tol_pairs);
        cfg.nodes = common_rep->nodes;
        cfg.grid_n = common_rep->grid_n;
        cfg.max_iter = *rep_iters;
        cfg.jobs = common_rep->jobs;
        const RigidityReport rep = rigidity_report(curve, cfg);
        emit(*common_rep, rigidity_report_json(rep));
    });

    // probe
    auto common_probe = std::make_shared<Common>();
    auto probe_t0 = std::make_shared<double>(0.0);
    auto probe_seeds = std::make_shared<int>(33);
    auto probe_steps = std::make_shared<int>(512);
    auto probe_lo = std::make_shared<double>(0.1);
    auto probe_hi = std::make_shared<double>(PI - 0.1);
    sub = app.add_subcommand("probe", "rotation numbers along a transversal");
    add_common(sub, *common_probe);
    sub->add_option("--t0", *probe_t0, "transversal base parameter");
    sub->add_option("--seeds", *probe_seeds, "seed count")->check(CLI::Range(2, 1 << 16));
    sub->add_option("--iters,--steps", *probe_steps, "orbit length per seed")
        ->check(CLI::Range(16, 1 << 24));
    sub->add_option("--gap-lo", *probe_lo, "smallest initial gap");
    sub->add_option("--gap-hi", *probe_hi, "largest initial gap");
    sub->callback([common_probe, probe_t0, probe_seeds, probe_steps, probe_lo, probe_hi] {
        const SupportCurve curve = load_valid(*common_probe);
        const Tolerances tol = parse_tolerances(common_probe->tol_pairs);
        const FoliationProbe probe =
            foliation_probe(curve, *probe_t0, *probe_seeds, *probe_lo, *probe_hi,
                            *probe_steps, tol.map, common_probe->jobs);
        emit(*common_probe, probe_csv(probe));
    });

    // portrait
    auto common_port = std::make_shared<Common>();
    auto port_seeds = std::make_shared<std::vector<std::string>>();
    auto port_steps = std::make_shared<int>(256);
    sub = app.add_subcommand("portrait", "phase-portrait point clouds (t mod 2pi, gap)");
    add_common(sub, *common_port, true);
    sub->add_option("--seed", *port_seeds, "phase point t1:t2 (repeatable)");
    sub->add_option("--iters,--steps", *port_steps, "orbit length per seed")
        ->check(CLI::Range(1, 1 << 24));
    sub->callback([common_port, port_seeds, port_steps] {
        const SupportCurve curve = load_valid(*common_port);
        const Tolerances tol = parse_tolerances(common_port->tol_pairs);
        std::vector<PhasePoint> seeds;
        if (port_seeds->empty()) {
            for (int i = 1; i <= 8; ++i)
                seeds.push_back({0.0, 0.3 + (PI - 0.6) * (i - 1) / 7.0});
        }
        for (const std::string& s : *port_seeds) {
            const size_t colon = s.find(':');
            if (colon == std::string::npos)
                throw ConfigError("--seed expects t1:t2, got \"" + s + "\"");
            try {
                seeds.push_back(
                    {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))});
            } catch (const std::exception&) {
                throw ConfigError("--seed: bad numeric value in \"" + s + "\"");
            }
        }
        const PhasePortrait portrait =
            phase_portrait(curve, seeds, *port_steps, tol.map, tol.radon,
                           common_port->grid_n, common_port->jobs);
        emit(*common_port, portrait_csv(portrait));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for planar symplectic billiards"};
    try {
        return run(app, argc, argv);
    } catch (const symplab::Error& e) {
        std::cerr << symplab::error_json(e.kind(), e.what());
        return e.is_hypothesis_failure() ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << symplab::error_json("internal", e.what());
        return 2;
    }
}
