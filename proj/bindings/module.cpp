#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symplab/errors.hpp"
#include "symplab/experiments.hpp"
#include "symplab/io.hpp"

namespace py = pybind11;
using namespace symplab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical laboratory for planar symplectic billiards";

    const auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x"),
             py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + format_double(v.x) + ", " + format_double(v.y) + ")";
        });

    py::class_<AffineMap>(m, "AffineMap")
        .def(py::init<>())
        .def(py::init([](double m11, double m12, double m21, double m22) {
                 return AffineMap{m11, m12, m21, m22};
             }),
             py::arg("m11"), py::arg("m12"), py::arg("m21"), py::arg("m22"))
        .def_readwrite("m11", &AffineMap::m11)
        .def_readwrite("m12", &AffineMap::m12)
        .def_readwrite("m21", &AffineMap::m21)
        .def_readwrite("m22", &AffineMap::m22)
        .def("apply", &AffineMap::apply)
        .def("det", &AffineMap::det)
        .def("compose", &AffineMap::compose)
        .def_static("identity", &AffineMap::identity)
        .def_static("rotation", &AffineMap::rotation, py::arg("angle"))
        .def_static("scaling", &AffineMap::scaling, py::arg("sx"), py::arg("sy"))
        .def_static("normalizer", &AffineMap::normalizer, py::arg("a"), py::arg("sigma"));

    py::class_<SupportCurve>(m, "SupportCurve")
        .def(py::init<>())
        .def_readwrite("a0", &SupportCurve::a0)
        .def_readwrite("cos_k", &SupportCurve::cos_k)
        .def_readwrite("sin_k", &SupportCurve::sin_k)
        .def_readwrite("symmetric", &SupportCurve::symmetric)
        .def("max_harmonic", &SupportCurve::max_harmonic);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("pass_", &ValidationReport::pass)
        .def_readonly("min_p", &ValidationReport::min_p)
        .def_readonly("argmin_p", &ValidationReport::argmin_p)
        .def_readonly("min_rho", &ValidationReport::min_rho)
        .def_readonly("argmin_rho", &ValidationReport::argmin_rho)
        .def_readonly("margin_p", &ValidationReport::margin_p)
        .def_readonly("margin_rho", &ValidationReport::margin_rho)
        .def_readonly("symmetry_ok", &ValidationReport::symmetry_ok)
        .def_readonly("grid_n", &ValidationReport::grid_n)
        .def_readonly("failure", &ValidationReport::failure);

    m.def("eval_support",
          [](const SupportCurve& c, double alpha) {
              const SupportEval e = eval_support(c, alpha);
              return py::make_tuple(e.p, e.dp, e.ddp, e.dddp);
          },
          py::arg("curve"), py::arg("alpha"));
    m.def("eval_point", &eval_point, py::arg("curve"), py::arg("alpha"));
    m.def("eval_tangent", &eval_tangent, py::arg("curve"), py::arg("alpha"));
    m.def("eval_second", &eval_second, py::arg("curve"), py::arg("alpha"));
    m.def("radius_of_curvature", &radius_of_curvature, py::arg("curve"), py::arg("alpha"));
    m.def("area", &area, py::arg("curve"), py::arg("nodes") = 0);
    m.def("perimeter", &perimeter, py::arg("curve"), py::arg("nodes") = 0);
    m.def("validate", &validate, py::arg("curve"), py::arg("grid_n") = 4096);
    m.def("ellipse_curve", &ellipse_curve, py::arg("a"), py::arg("b"),
          py::arg("rotation") = 0.0, py::arg("max_harmonic") = 64,
          py::arg("tail_tol") = 1e-10);
    m.def("apply_affine", &apply_affine, py::arg("curve"), py::arg("map"),
          py::arg("max_harmonic") = 0, py::arg("tail_tol") = 1e-10);

    py::class_<PhasePoint>(m, "PhasePoint")
        .def(py::init<>())
        .def(py::init([](double t1, double t2) { return PhasePoint{t1, t2}; }),
             py::arg("t1"), py::arg("t2"))
        .def_readwrite("t1", &PhasePoint::t1)
        .def_readwrite("t2", &PhasePoint::t2)
        .def("__repr__", [](const PhasePoint& p) {
            return "PhasePoint(" + format_double(p.t1) + ", " + format_double(p.t2) + ")";
        });

    py::class_<Orbit>(m, "Orbit")
        .def_readonly("samples", &Orbit::samples)
        .def_readonly("residuals", &Orbit::residuals);

    py::class_<RotationEstimate>(m, "RotationEstimate")
        .def_readonly("value", &RotationEstimate::value)
        .def_readonly("error_bound", &RotationEstimate::error_bound)
        .def_readonly("steps", &RotationEstimate::steps);

    py::class_<ConjugateMapSamples>(m, "ConjugateMapSamples")
        .def_readonly("alpha", &ConjugateMapSamples::alpha)
        .def_readonly("phi", &ConjugateMapSamples::phi)
        .def_readonly("defect", &ConjugateMapSamples::defect);

    py::class_<FourPeriodicReport>(m, "FourPeriodicReport")
        .def_readonly("lifts", &FourPeriodicReport::lifts)
        .def_readonly("lift_defect", &FourPeriodicReport::lift_defect)
        .def_readonly("antipode_defect", &FourPeriodicReport::antipode_defect);

    m.def("billiard_map", &billiard_map, py::arg("curve"), py::arg("point"),
          py::arg("tol") = 1e-12);
    m.def("billiard_map_inverse", &billiard_map_inverse, py::arg("curve"),
          py::arg("point"), py::arg("tol") = 1e-12);
    m.def("iterate", &iterate, py::arg("curve"), py::arg("start"), py::arg("steps"),
          py::arg("tol") = 1e-12);
    m.def("rotation_number", &rotation_number, py::arg("curve"), py::arg("start"),
          py::arg("steps"), py::arg("tol") = 1e-12);
    m.def("conjugate_map", &conjugate_map, py::arg("curve"), py::arg("alpha"),
          py::arg("tol") = 1e-12);
    m.def("delta_curve", &delta_curve, py::arg("curve"), py::arg("grid_n") = 256,
          py::arg("tol") = 1e-12, py::arg("jobs") = 1);
    m.def("radon_defect", &radon_defect, py::arg("curve"), py::arg("grid_n") = 256,
          py::arg("tol") = 1e-12, py::arg("jobs") = 1);
    m.def("verify_four_periodic", &verify_four_periodic, py::arg("curve"),
          py::arg("alpha"), py::arg("tol") = 1e-12);

    py::enum_<Region>(m, "Region")
        .value("GammaDelta", Region::GammaDelta)
        .value("DeltaGammaStar", Region::DeltaGammaStar)
        .value("HalfSquare", Region::HalfSquare);

    py::class_<IntegralReport>(m, "IntegralReport")
        .def_readonly("region", &IntegralReport::region)
        .def_readonly("value", &IntegralReport::value)
        .def_readonly("doubling_delta", &IntegralReport::doubling_delta)
        .def_readonly("nodes", &IntegralReport::nodes);

    py::class_<IdentityCheck>(m, "IdentityCheck")
        .def_readonly("lhs", &IdentityCheck::lhs)
        .def_readonly("rhs", &IdentityCheck::rhs)
        .def_readonly("residual", &IdentityCheck::residual);

    py::class_<RegionAgreement>(m, "RegionAgreement")
        .def_readonly("gamma_delta", &RegionAgreement::gamma_delta)
        .def_readonly("delta_gammastar", &RegionAgreement::delta_gammastar)
        .def_readonly("half_square", &RegionAgreement::half_square)
        .def_readonly("max_pairwise", &RegionAgreement::max_pairwise);

    m.def("generating_partials",
          [](const SupportCurve& c, double t1, double t2) {
              const GeneratingPartials g = generating_partials(c, t1, t2);
              return py::make_tuple(g.l11, g.l12, g.l22);
          },
          py::arg("curve"), py::arg("t1"), py::arg("t2"));
    m.def("rigidity_integrand", &rigidity_integrand, py::arg("curve"), py::arg("t1"),
          py::arg("t2"));
    m.def("region_integral", &region_integral, py::arg("curve"), py::arg("region"),
          py::arg("nodes") = 256, py::arg("quad_tol") = 1e-8, py::arg("map_tol") = 1e-12,
          py::arg("radon_tol") = 1e-8, py::arg("jobs") = 1);
    m.def("closed_form_functional", &closed_form_functional, py::arg("curve"),
          py::arg("nodes") = 0);
    m.def("area_energy_identity", &area_energy_identity, py::arg("curve"),
          py::arg("nodes") = 256);
    m.def("twist_energy_identity", &twist_energy_identity, py::arg("curve"),
          py::arg("nodes") = 256);
    m.def("region_agreement", &region_agreement, py::arg("curve"), py::arg("nodes") = 256,
          py::arg("quad_tol") = 1e-8, py::arg("map_tol") = 1e-12,
          py::arg("radon_tol") = 1e-8, py::arg("jobs") = 1);
    m.def("twist_minimum", &twist_minimum, py::arg("curve"), py::arg("grid_n") = 100,
          py::arg("margin") = 0.05);

    py::class_<NormalizationResult>(m, "NormalizationResult")
        .def_readonly("a", &NormalizationResult::a)
        .def_readonly("sigma", &NormalizationResult::sigma)
        .def_readonly("residual_c2", &NormalizationResult::residual_c2)
        .def_readonly("residual_s2", &NormalizationResult::residual_s2)
        .def_readonly("iterations", &NormalizationResult::iterations)
        .def_readonly("converged", &NormalizationResult::converged);

    m.def("normalize", &normalize, py::arg("curve"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 50);
    m.def("normalized_curve", &normalized_curve, py::arg("curve"), py::arg("result"),
          py::arg("max_harmonic") = 0, py::arg("tail_tol") = 1e-10);
    m.def("isoperimetric_deficit", &isoperimetric_deficit, py::arg("curve"));

    py::enum_<Verdict>(m, "Verdict")
        .value("ConsistentWithEllipse", Verdict::ConsistentWithEllipse)
        .value("HypothesesFail", Verdict::HypothesesFail)
        .value("InequalityViolated", Verdict::InequalityViolated);

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("map", &Tolerances::map)
        .def_readwrite("radon", &Tolerances::radon)
        .def_readwrite("quad", &Tolerances::quad)
        .def_readwrite("identity", &Tolerances::identity)
        .def_readwrite("fclosed", &Tolerances::fclosed)
        .def_readwrite("normalize", &Tolerances::normalize)
        .def_readwrite("deficit", &Tolerances::deficit)
        .def_readwrite("projection", &Tolerances::projection);

    py::class_<ReportConfig>(m, "ReportConfig")
        .def(py::init<>())
        .def_readwrite("tol", &ReportConfig::tol)
        .def_readwrite("nodes", &ReportConfig::nodes)
        .def_readwrite("grid_n", &ReportConfig::grid_n)
        .def_readwrite("validate_grid", &ReportConfig::validate_grid)
        .def_readwrite("max_iter", &ReportConfig::max_iter)
        .def_readwrite("jobs", &ReportConfig::jobs);

    py::class_<RigidityReport>(m, "RigidityReport")
        .def_readonly("validation", &RigidityReport::validation)
        .def_readonly("area", &RigidityReport::area)
        .def_readonly("perimeter", &RigidityReport::perimeter)
        .def_readonly("deficit", &RigidityReport::deficit)
        .def_readonly("radon", &RigidityReport::radon)
        .def_readonly("radon_ok", &RigidityReport::radon_ok)
        .def_readonly("region_gamma_delta", &RigidityReport::region_gamma_delta)
        .def_readonly("region_delta_gammastar", &RigidityReport::region_delta_gammastar)
        .def_readonly("region_half_square", &RigidityReport::region_half_square)
        .def_readonly("closed_form", &RigidityReport::closed_form)
        .def_readonly("has_normalization", &RigidityReport::has_normalization)
        .def_readonly("normalization", &RigidityReport::normalization)
        .def_readonly("closed_form_normalized", &RigidityReport::closed_form_normalized)
        .def_readonly("deficit_normalized", &RigidityReport::deficit_normalized)
        .def_readonly("verdict", &RigidityReport::verdict)
        .def_readonly("annotations", &RigidityReport::annotations);

    m.def("rigidity_report", &rigidity_report, py::arg("curve"),
          py::arg("config") = ReportConfig{});

    py::class_<ProbeSeed>(m, "ProbeSeed")
        .def_readonly("gap0", &ProbeSeed::gap0)
        .def_readonly("rotation", &ProbeSeed::rotation)
        .def_readonly("dispersion", &ProbeSeed::dispersion);

    py::class_<FoliationProbe>(m, "FoliationProbe")
        .def_readonly("t0", &FoliationProbe::t0)
        .def_readonly("seeds", &FoliationProbe::seeds)
        .def_readonly("monotone", &FoliationProbe::monotone)
        .def_readonly("dispersion", &FoliationProbe::dispersion);

    m.def("foliation_probe", &foliation_probe, py::arg("curve"), py::arg("t0") = 0.0,
          py::arg("seed_count") = 33, py::arg("gap_lo") = 0.1,
          py::arg("gap_hi") = PI - 0.1, py::arg("steps") = 512, py::arg("tol") = 1e-12,
          py::arg("jobs") = 1);

    py::class_<PortraitSeries>(m, "PortraitSeries")
        .def_readonly("label", &PortraitSeries::label)
        .def_readonly("points", &PortraitSeries::points);

    py::class_<PhasePortrait>(m, "PhasePortrait")
        .def_readonly("series", &PhasePortrait::series);

    m.def("phase_portrait", &phase_portrait, py::arg("curve"), py::arg("seeds"),
          py::arg("steps") = 256, py::arg("tol") = 1e-12, py::arg("radon_tol") = 1e-8,
          py::arg("grid_n") = 256, py::arg("jobs") = 1);

    m.def("to_string", [](Verdict v) { return to_string(v); }, py::arg("verdict"));
    m.def("load_curve", &load_curve, py::arg("path"));
    m.def("save_curve", &save_curve, py::arg("curve"), py::arg("path"));
    m.def("curve_from_json_text", &curve_from_json_text, py::arg("text"));
    m.def("curve_to_json_text", &curve_to_json_text, py::arg("curve"));
    m.def("rigidity_report_json", &rigidity_report_json, py::arg("report"));
}
