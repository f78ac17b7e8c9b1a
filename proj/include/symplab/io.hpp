#pragma once

#include <string>
#include <vector>

#include "symplab/experiments.hpp"

namespace symplab {

// 17 significant digits, round-trip exact
std::string format_double(double v);

// Minimal ordered JSON writer. Keys keep insertion order and numbers are
// emitted with 17 significant digits, so identical runs produce identical
// bytes.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const char* v);
    JsonWriter& value(const std::string& v);
    JsonWriter& null();
    const std::string& str() const { return out_; }

private:
    void separate();
    std::string out_;
    std::vector<bool> first_;
    bool pending_key_ = false;
};

// Curve spec files:
//   {"type": "fourier", "a0": ..., "cos": {"4": ...}, "sin": {...}, "symmetric": true}
//   {"type": "ellipse", "a": ..., "b": ..., "rotation": ...,
//    "max_harmonic": 64, "tail_tol": 1e-10}   (last two optional)
SupportCurve curve_from_json_text(const std::string& text);
SupportCurve load_curve(const std::string& path);
std::string curve_to_json_text(const SupportCurve& c);
void save_curve(const SupportCurve& c, const std::string& path);

// CSV datasets (header + one row per record, numbers at 17 digits)
std::string orbit_csv(const SupportCurve& c, const Orbit& orbit);                 // step,t_lifted,x,y,residual
std::string conjugate_csv(const ConjugateMapSamples& samples);                    // alpha,phi,defect
std::string probe_csv(const FoliationProbe& probe);                               // index,gap0,rotation,error_bound,dispersion
std::string portrait_csv(const PhasePortrait& portrait);                          // series,step,t,gap

// JSON documents
std::string validation_json(const ValidationReport& r);
std::string rigidity_report_json(const RigidityReport& r);
std::string normalization_json(const NormalizationResult& n, const SupportCurve& normalized);
std::string error_json(const std::string& kind, const std::string& message);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace symplab
