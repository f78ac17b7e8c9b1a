#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "symplab/geometry.hpp"

#ifdef _WIN32
#error "the CLI tests assume a POSIX shell"
#endif
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int status = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("symplab_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

CliResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(SYMPLAB_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    CliResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

std::string circle_path() {
    static const std::string p =
        write_file("circle.json", R"({"type":"fourier","a0":1.0,"symmetric":true})")
            .string();
    return p;
}

std::string e21_path() {
    static const std::string p =
        write_file("e21.json", R"({"type":"ellipse","a":2.0,"b":1.0})").string();
    return p;
}

std::string perturbed_path() {
    static const std::string p =
        write_file("perturbed.json",
                   R"({"type":"fourier","a0":1.0,"cos":{"4":0.05},"symmetric":true})")
            .string();
    return p;
}

}  // namespace

TEST_CASE("cli validate: pass and fail paths with matching exit codes") {
    const CliResult ok = run_cli("validate --curve " + circle_path());
    CHECK(ok.status == 0);
    const json j = json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["min_p"].get<double>() == doctest::Approx(1.0));

    const std::string bad =
        write_file("bad.json",
                   R"({"type":"fourier","a0":1.0,"cos":{"4":0.1},"symmetric":true})")
            .string();
    const CliResult fail = run_cli("validate --curve " + bad);
    CHECK(fail.status == 1);
    const json jf = json::parse(fail.out);
    CHECK(jf["pass"] == false);
    const json je = json::parse(fail.err);
    CHECK(je.contains("error"));
}

TEST_CASE("cli map reproduces the circle reflection law") {
    const CliResult r =
        run_cli("map --curve " + circle_path() + " --t1 0 --t2 1.0471975511965976");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["t1"].get<double>() == doctest::Approx(symplab::PI / 3.0));
    CHECK(j["t2"].get<double>() == doctest::Approx(2.0 * symplab::PI / 3.0).epsilon(1e-10));
    CHECK(j["residual"].get<double>() < 1e-12);

    const CliResult inv = run_cli("map --curve " + circle_path() +
                                  " --t1 1.0471975511965976 --t2 2.0943951023931953 "
                                  "--inverse");
    REQUIRE(inv.status == 0);
    const json ji = json::parse(inv.out);
    CHECK(std::abs(ji["t1"].get<double>()) < 1e-10);
}

TEST_CASE("cli orbit emits the documented CSV columns") {
    const CliResult r = run_cli("orbit --curve " + circle_path() +
                                " --t1 0 --t2 1.5707963267948966 --steps 4");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("step,t_lifted,x,y,residual\n", 0) == 0);
    // header + seed pair + 4 mapped vertices
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 7);
}

TEST_CASE("cli rotation and conjugate agree with the circle closed forms") {
    const CliResult rot = run_cli("rotation --curve " + circle_path() +
                                  " --t1 0 --t2 1.5707963267948966 --steps 64");
    REQUIRE(rot.status == 0);
    const json jr = json::parse(rot.out);
    CHECK(jr["value"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));

    const CliResult conj =
        run_cli("conjugate --curve " + circle_path() + " --alpha 0.25");
    REQUIRE(conj.status == 0);
    const json jc = json::parse(conj.out);
    CHECK(jc["phi"].get<double>() ==
          doctest::Approx(0.25 + symplab::PI / 2.0).epsilon(1e-12));

    const CliResult grid = run_cli("conjugate --curve " + circle_path() + " --grid 16");
    REQUIRE(grid.status == 0);
    CHECK(grid.out.rfind("alpha,phi,defect\n", 0) == 0);
}

TEST_CASE("cli radon reports the defect without failing the run") {
    const CliResult ok = run_cli("radon --curve " + e21_path());
    REQUIRE(ok.status == 0);
    const json j = json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["defect"].get<double>() < 1e-8);

    const CliResult pert = run_cli("radon --curve " + perturbed_path());
    REQUIRE(pert.status == 0);
    const json jp = json::parse(pert.out);
    CHECK(jp["pass"] == false);
    CHECK(jp["defect"].get<double>() > 1e-4);
}

TEST_CASE("cli identities on the circle pin the two reference constants") {
    const CliResult r = run_cli("identities --curve " + circle_path());
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    const double pi2 = symplab::PI * symplab::PI;
    CHECK(j["intA"]["lhs"].get<double>() == doctest::Approx(-pi2).epsilon(1e-10));
    CHECK(j["intA"]["rhs"].get<double>() == doctest::Approx(-pi2).epsilon(1e-10));
    CHECK(j["intB"]["lhs"].get<double>() == doctest::Approx(pi2).epsilon(1e-10));
    CHECK(j["pass"] == true);
    CHECK(j["lemma1"]["max_pairwise"].get<double>() < 1e-10);
}

TEST_CASE("cli identities degrade gracefully when the pairing fails") {
    const CliResult r = run_cli("identities --curve " + perturbed_path());
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["lemma1"].is_null());
    CHECK(j.contains("lemma1_skipped"));
    CHECK(j["pass"] == true);
}

TEST_CASE("cli integrals: single phi-bounded region fails on a non-Radon table") {
    const CliResult r = run_cli("integrals --curve " + perturbed_path() +
                                " --region gamma-delta");
    CHECK(r.status == 1);
    const json je = json::parse(r.err);
    CHECK(je["error"]["kind"] == "RadonHypothesisFailed");

    const CliResult half = run_cli("integrals --curve " + perturbed_path() +
                                   " --region half-square");
    CHECK(half.status == 0);
    const json jh = json::parse(half.out);
    CHECK(jh["value"].get<double>() > 0.0);
}

TEST_CASE("cli integrals full document on the (2,1) ellipse") {
    const CliResult r = run_cli("integrals --curve " + e21_path() + " --jobs 2");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    const double ref = -27.0 * symplab::PI * symplab::PI / 16.0;
    CHECK(j["half_square"].get<double>() == doctest::Approx(ref).epsilon(1e-8));
    CHECK(j["max_pairwise"].get<double>() < 1e-6);
    CHECK(j["closed_form"].get<double>() ==
          doctest::Approx(4.0 * ref).epsilon(1e-8));
    for (const auto& d : j["doubling_deltas"]) CHECK(d.get<double>() < 1e-8);
}

TEST_CASE("cli normalize writes a reloadable curve spec") {
    const fs::path saved = work_dir() / "normalized.json";
    const CliResult r = run_cli("normalize --curve " + e21_path() + " --save-curve " +
                                saved.string());
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["a"].get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(std::abs(j["sigma"].get<double>()) < 1e-8);
    CHECK(j["converged"] == true);
    CHECK(j["normalized_curve"]["type"] == "fourier");

    const CliResult revalidate = run_cli("validate --curve " + saved.string());
    CHECK(revalidate.status == 0);

    const CliResult again = run_cli("normalize --curve " + saved.string() +
                                    " --tol normalize=1e-8");
    REQUIRE(again.status == 0);
    const json j2 = json::parse(again.out);
    CHECK(j2["a"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cli deficit and report") {
    const CliResult d = run_cli("deficit --curve " + perturbed_path());
    REQUIRE(d.status == 0);
    const json jd = json::parse(d.out);
    CHECK(jd["deficit"].get<double>() ==
          doctest::Approx(0.075 * symplab::PI * symplab::PI).epsilon(1e-10));

    const CliResult r = run_cli("report --curve " + e21_path() + " --jobs 2");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "consistent_with_ellipse");
    CHECK(j["radon_ok"] == true);
    CHECK(!j["regions"]["gamma_delta"].is_null());
    CHECK(j["normalization"]["a"].get<double>() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(j["deficit_normalized"].get<double>() < 1e-8);

    const CliResult p = run_cli("report --curve " + perturbed_path() + " --jobs 2");
    REQUIRE(p.status == 0);
    const json jp = json::parse(p.out);
    CHECK(jp["verdict"] == "hypotheses_fail");
    CHECK(jp["radon_ok"] == false);
    CHECK(jp["regions"]["gamma_delta"].is_null());
    CHECK(!jp["regions"]["half_square"].is_null());
    CHECK(jp["closed_form"].get<double>() ==
          doctest::Approx(1.5375 * symplab::PI * symplab::PI).epsilon(1e-8));
}

TEST_CASE("cli output is byte-deterministic, including across --jobs") {
    const std::string args = "report --curve " + e21_path() + " --nodes 128 --grid 128";
    const CliResult a = run_cli(args + " --jobs 1");
    const CliResult b = run_cli(args + " --jobs 1");
    const CliResult c = run_cli(args + " --jobs 4");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    // --out writes exactly what stdout carries
    const fs::path outfile = work_dir() / "report.json";
    const CliResult d = run_cli(args + " --jobs 2 --out " + outfile.string());
    REQUIRE(d.status == 0);
    CHECK(slurp(outfile) == a.out);
}

TEST_CASE("cli probe and portrait emit their CSV schemas") {
    const CliResult probe = run_cli("probe --curve " + circle_path() +
                                    " --seeds 5 --steps 64");
    REQUIRE(probe.status == 0);
    CHECK(probe.out.rfind("index,gap0,rotation,error_bound,dispersion\n", 0) == 0);

    const CliResult por = run_cli("portrait --curve " + circle_path() +
                                  " --seed 0:1.2 --steps 32");
    REQUIRE(por.status == 0);
    CHECK(por.out.rfind("series,step,t,gap\n", 0) == 0);
    CHECK(por.out.find("delta") != std::string::npos);
}

TEST_CASE("cli error handling: config errors exit 2 with a structured message") {
    const std::string garbage = write_file("garbage.json", "{nope").string();
    const CliResult g = run_cli("validate --curve " + garbage);
    CHECK(g.status == 2);
    const json je = json::parse(g.err);
    CHECK(je["error"]["kind"] == "ConfigError");

    const CliResult missing = run_cli("validate");
    CHECK(missing.status == 2);

    const CliResult badtol =
        run_cli("report --curve " + circle_path() + " --tol bogus=1");
    CHECK(badtol.status == 2);

    const CliResult negtol =
        run_cli("report --curve " + circle_path() + " --tol quad=-1");
    CHECK(negtol.status == 2);

    const CliResult nosub = run_cli("");
    CHECK(nosub.status == 2);
}
