#include "symplab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "symplab/errors.hpp"

namespace symplab {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

}  // namespace

void JsonWriter::separate() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    first_.pop_back();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    first_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separate();
    out_ += '"';
    out_ += escape_json(k);
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(const std::string& v) {
    separate();
    out_ += '"';
    out_ += escape_json(v);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    out_ += "null";
    return *this;
}

namespace {

using nlohmann::json;

double need_number(const json& j, const char* k) {
    if (!j.contains(k) || !j[k].is_number())
        throw ConfigError(std::string("curve file: missing numeric field \"") + k + "\"");
    return j[k].get<double>();
}

SupportCurve fourier_from_json(const json& j) {
    SupportCurve c;
    c.a0 = need_number(j, "a0");
    if (!j.contains("symmetric") || !j["symmetric"].is_boolean())
        throw ConfigError("curve file: missing boolean field \"symmetric\"");
    c.symmetric = j["symmetric"].get<bool>();

    std::map<int, double> cos_m, sin_m;
    auto read_block = [&](const char* name, std::map<int, double>& dst) {
        if (!j.contains(name)) return;
        if (!j[name].is_object())
            throw ConfigError(std::string("curve file: \"") + name +
                              "\" must map harmonic index to coefficient");
        for (auto it = j[name].begin(); it != j[name].end(); ++it) {
            int k = 0;
            try {
                size_t used = 0;
                k = std::stoi(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument(it.key());
            } catch (const std::exception&) {
                throw ConfigError(std::string("curve file: bad harmonic index \"") +
                                  it.key() + "\"");
            }
            if (k < 2 || k > 512)
                throw ConfigError("curve file: harmonic index " + std::to_string(k) +
                                  " outside [2, 512]");
            if (!it.value().is_number())
                throw ConfigError("curve file: coefficient of harmonic " +
                                  std::to_string(k) + " is not a number");
            dst[k] = it.value().get<double>();
        }
    };
    read_block("cos", cos_m);
    read_block("sin", sin_m);

    int kmax = 1;
    if (!cos_m.empty()) kmax = std::max(kmax, cos_m.rbegin()->first);
    if (!sin_m.empty()) kmax = std::max(kmax, sin_m.rbegin()->first);
    if (kmax >= 2) {
        c.cos_k.assign(kmax - 1, 0.0);
        c.sin_k.assign(kmax - 1, 0.0);
        for (const auto& [k, v] : cos_m) c.cos_k[k - 2] = v;
        for (const auto& [k, v] : sin_m) c.sin_k[k - 2] = v;
    }
    return c;
}

}  // namespace

SupportCurve curve_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("curve file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("curve file: expected an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    if (type == "fourier") return fourier_from_json(j);
    if (type == "ellipse") {
        const double a = need_number(j, "a");
        const double b = need_number(j, "b");
        const double rot = j.contains("rotation") ? need_number(j, "rotation") : 0.0;
        int kmax = 64;
        if (j.contains("max_harmonic")) {
            if (!j["max_harmonic"].is_number_integer())
                throw ConfigError("curve file: \"max_harmonic\" must be an integer");
            kmax = j["max_harmonic"].get<int>();
        }
        const double tail =
            j.contains("tail_tol") ? need_number(j, "tail_tol") : 1e-10;
        return ellipse_curve(a, b, rot, kmax, tail);
    }
    throw ConfigError("curve file: unknown type \"" + type + "\"");
}

SupportCurve load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open curve file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return curve_from_json_text(ss.str());
}

namespace {

void write_curve(JsonWriter& w, const SupportCurve& c) {
    w.begin_object();
    w.key("type").value("fourier");
    w.key("a0").value(c.a0);
    w.key("cos").begin_object();
    for (size_t i = 0; i < c.cos_k.size(); ++i)
        if (c.cos_k[i] != 0.0) w.key(std::to_string(i + 2)).value(c.cos_k[i]);
    w.end_object();
    w.key("sin").begin_object();
    for (size_t i = 0; i < c.sin_k.size(); ++i)
        if (c.sin_k[i] != 0.0) w.key(std::to_string(i + 2)).value(c.sin_k[i]);
    w.end_object();
    w.key("symmetric").value(c.symmetric);
    w.end_object();
}

void write_integral(JsonWriter& w, const IntegralReport& r) {
    w.begin_object();
    w.key("value").value(r.value);
    w.key("doubling_delta").value(r.doubling_delta);
    w.key("nodes").value(r.nodes);
    w.end_object();
}

void write_validation(JsonWriter& w, const ValidationReport& r) {
    w.begin_object();
    w.key("pass").value(r.pass);
    w.key("min_p").value(r.min_p);
    w.key("argmin_p").value(r.argmin_p);
    w.key("min_rho").value(r.min_rho);
    w.key("argmin_rho").value(r.argmin_rho);
    w.key("margin_p").value(r.margin_p);
    w.key("margin_rho").value(r.margin_rho);
    w.key("symmetry_ok").value(r.symmetry_ok);
    w.key("grid_n").value(r.grid_n);
    w.key("failure").value(r.failure);
    w.end_object();
}

void write_normalization(JsonWriter& w, const NormalizationResult& n) {
    w.begin_object();
    w.key("a").value(n.a);
    w.key("sigma").value(n.sigma);
    w.key("residual_c2").value(n.residual_c2);
    w.key("residual_s2").value(n.residual_s2);
    w.key("iterations").value(n.iterations);
    w.key("converged").value(n.converged);
    w.end_object();
}

}  // namespace

std::string curve_to_json_text(const SupportCurve& c) {
    JsonWriter w;
    write_curve(w, c);
    return w.str() + "\n";
}

void save_curve(const SupportCurve& c, const std::string& path) {
    write_text_file(path, curve_to_json_text(c));
}

std::string orbit_csv(const SupportCurve& c, const Orbit& orbit) {
    std::string out = "step,t_lifted,x,y,residual\n";
    for (size_t i = 0; i < orbit.samples.size(); ++i) {
        const Vec2 g = eval_point(c, orbit.samples[i]);
        out += std::to_string(i);
        out += ',';
        out += format_double(orbit.samples[i]);
        out += ',';
        out += format_double(g.x);
        out += ',';
        out += format_double(g.y);
        out += ',';
        out += format_double(orbit.residuals[i]);
        out += '\n';
    }
    return out;
}

std::string conjugate_csv(const ConjugateMapSamples& samples) {
    std::string out = "alpha,phi,defect\n";
    for (size_t i = 0; i < samples.alpha.size(); ++i) {
        out += format_double(samples.alpha[i]);
        out += ',';
        out += format_double(samples.phi[i]);
        out += ',';
        out += format_double(samples.defect[i]);
        out += '\n';
    }
    return out;
}

std::string probe_csv(const FoliationProbe& probe) {
    std::string out = "index,gap0,rotation,error_bound,dispersion\n";
    for (size_t i = 0; i < probe.seeds.size(); ++i) {
        const ProbeSeed& s = probe.seeds[i];
        out += std::to_string(i);
        out += ',';
        out += format_double(s.gap0);
        out += ',';
        out += format_double(s.rotation.value);
        out += ',';
        out += format_double(s.rotation.error_bound);
        out += ',';
        out += format_double(s.dispersion);
        out += '\n';
    }
    return out;
}

std::string portrait_csv(const PhasePortrait& portrait) {
    std::string out = "series,step,t,gap\n";
    for (const PortraitSeries& series : portrait.series) {
        for (size_t k = 0; k < series.points.size(); ++k) {
            out += series.label;
            out += ',';
            out += std::to_string(k);
            out += ',';
            out += format_double(series.points[k].x);
            out += ',';
            out += format_double(series.points[k].y);
            out += '\n';
        }
    }
    return out;
}

std::string validation_json(const ValidationReport& r) {
    JsonWriter w;
    write_validation(w, r);
    return w.str() + "\n";
}

std::string rigidity_report_json(const RigidityReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("validation");
    write_validation(w, r.validation);
    w.key("area").value(r.area);
    w.key("perimeter").value(r.perimeter);
    w.key("deficit").value(r.deficit);
    w.key("radon_defect").value(r.radon);
    w.key("radon_ok").value(r.radon_ok);
    w.key("regions").begin_object();
    w.key("gamma_delta");
    if (r.region_gamma_delta) write_integral(w, *r.region_gamma_delta);
    else w.null();
    w.key("delta_gammastar");
    if (r.region_delta_gammastar) write_integral(w, *r.region_delta_gammastar);
    else w.null();
    w.key("half_square");
    if (r.region_half_square) write_integral(w, *r.region_half_square);
    else w.null();
    w.end_object();
    w.key("closed_form").value(r.closed_form);
    w.key("normalization");
    if (r.has_normalization) write_normalization(w, r.normalization);
    else w.null();
    w.key("closed_form_normalized").value(r.closed_form_normalized);
    w.key("deficit_normalized").value(r.deficit_normalized);
    w.key("verdict").value(to_string(r.verdict));
    w.key("annotations").begin_array();
    for (const std::string& a : r.annotations) w.value(a);
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string normalization_json(const NormalizationResult& n,
                               const SupportCurve& normalized) {
    JsonWriter w;
    w.begin_object();
    w.key("a").value(n.a);
    w.key("sigma").value(n.sigma);
    w.key("residual_c2").value(n.residual_c2);
    w.key("residual_s2").value(n.residual_s2);
    w.key("iterations").value(n.iterations);
    w.key("converged").value(n.converged);
    w.key("normalized_curve");
    write_curve(w, normalized);
    w.end_object();
    return w.str() + "\n";
}

std::string error_json(const std::string& kind, const std::string& message) {
    JsonWriter w;
    w.begin_object();
    w.key("error").begin_object();
    w.key("kind").value(kind);
    w.key("message").value(message);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << text;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

}  // namespace symplab
