#include <doctest.h>

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace gkz;
namespace fs = std::filesystem;

namespace {

const std::string data = GKZ_DATA_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gkz_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::vector<std::string> lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::size_t count_files(const fs::path& dir, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename().string().rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("instance parsing") {
    const auto inst = cli::parse_instance(R"({"n": 1, "A": [[2], [1]], "c": [["1/3", "-1/2"]], "z": [[1, 0], [-2, 0.5]],
                                             "options": {"seed": 9, "lambda_ladder": [10], "tol_quad": 1e-8}})");
    CHECK(inst.config.size() == 2);
    REQUIRE(inst.c.is_exact());
    CHECK(inst.c.exact_component(0)->im == Rational(-1, 2));
    CHECK(inst.z[1] == cplx(-2, 0.5));
    CHECK(inst.options.seed == 9);
    CHECK(inst.options.lambda_ladder == std::vector<double>{10});
    CHECK(inst.options.quadrature.tolerance == 1e-8);

    CHECK(cli::parse_instance(R"({"n": 1, "A": [[1], [-1]], "c": ["0.25"], "z": [[1, 0], [1, 0]]})").c.exact_component(0)->re ==
          Rational(1, 4));
    CHECK_FALSE(cli::parse_instance(R"({"n": 1, "A": [[1], [-1]], "c": [0.25], "z": [[1, 0], [1, 0]]})").c.is_exact());
}

TEST_CASE("parse errors carry line and column") {
    try {
        cli::parse_instance("{\n  \"n\": 1,\n  \"A\": [[1], [-1]\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"n": 1, "A": [[1], [-1]], "c": ["x"], "z": [[1, 0], [1, 0]]})"),
                         doctest::Contains("c[0]"), ParseError);
    CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"n": 1, "A": [[1], [-1]], "c": ["1"], "z": [[1, 0]]})"),
                         doctest::Contains("'z'"), ParseError);
    CHECK_THROWS_WITH_AS(cli::parse_instance(R"({"n": 1, "A": [[1], [-1]], "c": ["1"], "z": [[1, 0], [1, 0]], "options": {"bogus": 1}})"),
                         doctest::Contains("options.bogus"), ParseError);
    CHECK_THROWS_AS(cli::parse_instance(R"({"n": 1, "A": [[2], [4]], "c": ["1"], "z": [[1, 0], [1, 0]]})"), InvalidConfiguration);
}

TEST_CASE("analyze exit codes") {
    const auto dir = scratch("analyze");
    const auto bessel = run({"analyze", data + "/bessel.json"});
    CHECK(bessel.code == 0);
    const auto j = nlohmann::json::parse(bessel.out);
    CHECK(j["polytope"]["normalized_volume"] == 2);
    CHECK(j["status"] == "full");

    CHECK(run({"analyze", data + "/airy.json", "--out", (dir / "airy.json").string()}).code == 2);
    CHECK(fs::exists(dir / "airy.json"));
    CHECK(run({"analyze", data + "/airy_resonant.json", "--lambda-ladder", ""}).code == 2);

    std::ofstream(dir / "bad.json") << "{\"n\": 1,\n \"A\": [[1] [-1]]}";
    const auto bad = run({"analyze", (dir / "bad.json").string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);

    CHECK(run({"analyze", (dir / "missing.json").string()}).code == 1);
    CHECK(run({"analyze", data + "/bessel.json", "--lambda-ladder", "20,x"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("analyze flags reach the report") {
    const auto r = run({"analyze", data + "/bessel.json", "--seed", "42", "--tol-quad", "1e-10", "--lambda-ladder", "25,50",
                        "--json-indent", "-1", "--threads", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find('\n') == r.out.size() - 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["provenance"]["seed"] == 42);
    CHECK(j["provenance"]["tolerances"]["quadrature"] == 1e-10);
    CHECK(j["asymptotics"][0]["ladder"].size() == 2);
}

TEST_CASE("sector guard through the command line") {
    const auto guarded = run({"analyze", data + "/bessel.json", "--lambda-ladder", "20", "--sector-delta", "0"});
    CHECK(guarded.code == 2);
    CHECK(guarded.out.find("HypothesisViolation") != std::string::npos);
    CHECK(run({"analyze", data + "/bessel.json", "--lambda-ladder", "20", "--sector-delta", "0", "--force"}).code == 0);
}

TEST_CASE("round trip: exact-layer integers survive the JSON") {
    const auto text = run({"analyze", data + "/airy.json", "--lambda-ladder", ""}).out;
    const auto j = nlohmann::json::parse(text);
    const auto inst = cli::load_instance(data + "/airy.json");
    const auto P = build_delta(inst.config);
    CHECK(j["polytope"]["normalized_volume"].get<std::int64_t>() == to_int64(normalized_volume(P)));
    REQUIRE(j["polytope"]["facets"].size() == P.facets().size());
    for (std::size_t k = 0; k < P.facets().size(); ++k) {
        const auto& f = j["polytope"]["facets"][k];
        CHECK(f["pole_order"].get<std::int64_t>() == to_int64(P.facets()[k].pole_order));
        CHECK(f["face_volume"].get<std::int64_t>() == to_int64(P.facets()[k].face_volume));
        CHECK(to_int_vector(f["kappa"].get<std::vector<std::int64_t>>()) == P.facets()[k].kappa);
    }
    for (std::size_t k = 0; k < P.vertices().size(); ++k)
        CHECK(to_int_vector(j["polytope"]["vertices"][k].get<std::vector<std::int64_t>>()) == P.vertices()[k]);
}

TEST_CASE("cycles writes one CSV per cycle") {
    const auto b = scratch("cycles_bessel");
    CHECK(run({"cycles", data + "/bessel.json", "--out", b.string()}).code == 0);
    CHECK(count_files(b, "thimble_") == 2);
    const auto rows = lines(b / "thimble_0.csv");
    CHECK(rows.front() == "ray,phi,s,re_x1,im_x1,re_l1,im_l1,re_h,im_h");
    CHECK(rows.size() > 10);

    const auto a = scratch("cycles_airy");
    CHECK(run({"cycles", data + "/airy.json", "--out", a.string()}).code == 0);
    CHECK(count_files(a, "cycle_") == 3);
    CHECK(lines(a / "cycle_0.csv").front() == "s,re_x1,im_x1,re_l1,im_l1,re_h,im_h");
    CHECK(lines(a / "sectors.csv").size() == 4);

    const auto t = scratch("cycles_triangle");
    CHECK(run({"cycles", data + "/triangle.json", "--out", t.string()}).code == 0);
    CHECK(count_files(t, "thimble_") == 3);
    CHECK(lines(t / "thimble_2.csv").front() == "ray,phi,s,re_x1,im_x1,re_x2,im_x2,re_l1,im_l1,re_l2,im_l2,re_h,im_h");

    CHECK(run({"cycles", data + "/airy_resonant.json", "--out", scratch("cycles_resonant").string()}).code == 2);
}

TEST_CASE("stokes angle tables") {
    const auto b = scratch("stokes_bessel");
    const auto r = run({"stokes", data + "/bessel.json", "--out", b.string()});
    CHECK(r.code == 0);
    const auto angles = lines(b / "stokes_angles.csv");
    REQUIRE(angles.size() == 3);
    CHECK(std::stod(angles[1].substr(angles[1].rfind(',') + 1)) == doctest::Approx(std::numbers::pi / 2));
    CHECK(std::stod(angles[2].substr(angles[2].rfind(',') + 1)) == doctest::Approx(3 * std::numbers::pi / 2));
    CHECK(lines(b / "dominance.csv").size() == 361);

    const auto t = scratch("stokes_triangle");
    CHECK(run({"stokes", data + "/triangle.json", "--out", t.string()}).code == 0);
    CHECK(lines(t / "stokes_angles.csv").size() == 7);

    const auto s = scratch("stokes_single");
    const auto single = run({"stokes", data + "/single_point.json", "--out", s.string()});
    CHECK(single.code == 0);
    CHECK(single.out.empty());
    CHECK(lines(s / "stokes_angles.csv").size() == 1);
}
