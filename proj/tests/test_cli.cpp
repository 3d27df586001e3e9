#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ldl/io.hpp"

// end-to-end checks driving the built binary (path injected by CMake)

namespace {

using json = ldl::io::json;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(LDL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string dir() {
    static std::string d = [] {
        std::string tmpl = "/tmp/ldl_cli_XXXXXX";
        char buf[64];
        snprintf(buf, sizeof buf, "%s", tmpl.c_str());
        REQUIRE(mkdtemp(buf) != nullptr);
        return std::string(buf);
    }();
    return d;
}

std::string write_file(const std::string& name, const std::string& content) {
    std::string path = dir() + "/" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

const char* kScenario = R"({"parties":2,"inputs":[2,2],"outcomes":[2,2]})";
const char* kBounds11 =
    R"({"per_party":[{"eta_min":1,"eta_max":1},{"eta_min":1,"eta_max":1}]})";
const char* kEffs1 =
    R"({"per_input":[{"x":[1,1],"eta":1},{"x":[1,2],"eta":1},{"x":[2,1],"eta":1},{"x":[2,2],"eta":1}]})";
const char* kPrBox = R"({"scenario":{"parties":2,"inputs":[2,2],"outcomes":[2,2]},
  "kind":"postselected","entries":[
  {"x":[1,1],"a":[1,1],"p":"1/2"},{"x":[1,1],"a":[2,2],"p":"1/2"},
  {"x":[1,2],"a":[1,1],"p":"1/2"},{"x":[1,2],"a":[2,2],"p":"1/2"},
  {"x":[2,1],"a":[1,1],"p":"1/2"},{"x":[2,1],"a":[2,2],"p":"1/2"},
  {"x":[2,2],"a":[1,2],"p":"1/2"},{"x":[2,2],"a":[2,1],"p":"1/2"}]})";

}  // namespace

TEST_CASE("vertices: CHSH scenario with bounds (1,1) yields a 16-entry file") {
    std::string sc = write_file("scenario.json", kScenario);
    std::string b = write_file("b11.json", kBounds11);
    auto res = run("vertices --scenario " + sc + " --bounds " + b + " --exact");
    REQUIRE(res.exit_code == 0);
    json parsed = json::parse(res.out);
    CHECK(parsed.size() == 16);
    auto tables = ldl::io::parse_vertex_list(parsed);
    CHECK(tables.size() == 16);
    for (const auto& t : tables) CHECK(ldl::validate(t, ldl::Rat(0)).valid);
}

TEST_CASE("membership: PR box at bounds (1,1) is NonMember with a certificate") {
    std::string t = write_file("pr.json", kPrBox);
    std::string b = write_file("b11.json", kBounds11);
    std::string e = write_file("e1.json", kEffs1);
    auto res = run("membership --target " + t + " --effs " + e + " --bounds " + b + " --exact");
    REQUIRE(res.exit_code == 0);  // NonMember is still a successful run
    json v = json::parse(res.out);
    CHECK(v["member"] == false);
    CHECK(v["exact_certificate"] == true);
    auto cert = ldl::io::parse_certificate(v["certificate"]);
    CHECK(cert.violation > 0);
}

TEST_CASE("hardy piped into eq5 reports a violation") {
    auto res = run("hardy --tau 0.5 | " + std::string(LDL_CLI_PATH) +
                   " eq5 --eta-min 0.001 --eta-max 1");
    REQUIRE(res.exit_code == 0);
    json v = json::parse(res.out);
    CHECK(v["violated"] == true);
    CHECK(v["lhs"].get<double>() > 0);
}

TEST_CASE("byte-identical reruns in exact mode") {
    std::string sc = write_file("scenario.json", kScenario);
    std::string b = write_file("b11.json", kBounds11);
    std::string t = write_file("pr.json", kPrBox);
    std::string e = write_file("e1.json", kEffs1);
    auto v1 = run("vertices --scenario " + sc + " --bounds " + b + " --exact");
    auto v2 = run("vertices --scenario " + sc + " --bounds " + b + " --exact");
    CHECK(v1.out == v2.out);
    auto m1 = run("membership --target " + t + " --effs " + e + " --bounds " + b + " --exact");
    auto m2 = run("membership --target " + t + " --effs " + e + " --bounds " + b + " --exact");
    CHECK(m1.out == m2.out);
}

TEST_CASE("correlation outputs round-trip: parse then re-emit is identical") {
    auto hardy = run("hardy --tau 0.25");
    REQUIRE(hardy.exit_code == 0);
    json parsed = json::parse(hardy.out);
    auto table = ldl::io::parse_postselected_correlation(parsed);
    json re = ldl::io::emit_correlation(table.convert<double>());
    CHECK(re.dump(2) == parsed.dump(2));

    // vertex list round-trip, exact values
    std::string sc = write_file("scenario.json", kScenario);
    std::string bsplit = write_file(
        "bsplit.json",
        R"({"per_party":[{"eta_min":"1/3","eta_max":"2/3"},{"eta_min":"1/3","eta_max":"2/3"}]})");
    auto verts = run("vertices --scenario " + sc + " --bounds " + bsplit + " --exact");
    json vparsed = json::parse(verts.out);
    auto tables = ldl::io::parse_vertex_list(vparsed);
    json varr = json::array();
    for (const auto& t : tables)
        varr.push_back(ldl::io::emit_correlation(t, ldl::io::NumericMode::Exact));
    CHECK(varr.dump(2) == vparsed.dump(2));
}

TEST_CASE("scheme at eta=1 reproduces its input exactly") {
    std::string t = write_file("pr.json", kPrBox);
    std::string la = write_file("la.json", R"({"distributions":[["1/2","1/2"],["1/2","1/2"]]})");
    auto res = run("scheme --input " + t + " --eta 1 --assign 1/3 --local-a " + la +
                   " --local-b " + la + " --exact");
    REQUIRE(res.exit_code == 0);
    auto out = ldl::io::parse_postselected_correlation(json::parse(res.out));
    auto in = ldl::io::parse_postselected_correlation(json::parse(kPrBox));
    for (std::size_t i = 0; i < in.data().size(); ++i) CHECK(out.data()[i] == in.data()[i]);
}

TEST_CASE("eq5-region CSV has the documented columns") {
    std::string t = write_file("pr.json", kPrBox);
    auto res = run("eq5-region --target " + t + " --grid 5");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.rfind("eta_min,eta_max,lhs,violated\n", 0) == 0);
    int lines = 0;
    for (char c : res.out)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 5 * 6 / 2);
    CHECK(res.out.find(',') != std::string::npos);
    CHECK(res.out.find(';') == std::string::npos);  // no locale surprises
}

TEST_CASE("validate flags an unnormalized table but exits 0") {
    std::string bad = write_file("bad.json", R"({"scenario":{"parties":2,"inputs":[2,2],
      "outcomes":[2,2]},"kind":"postselected","entries":[{"x":[1,1],"a":[1,1],"p":0.9}]})");
    auto res = run("validate --input " + bad);
    REQUIRE(res.exit_code == 0);
    json v = json::parse(res.out);
    CHECK(v["valid"] == false);
}

TEST_CASE("exit codes: usage 1, infeasibility 2, caps 3") {
    CHECK(run("no-such-subcommand").exit_code == 1);
    CHECK(run("membership --target /nonexistent.json --effs x --bounds y").exit_code == 1);

    // inconsistent efficiencies: effs 1/2 unreachable under bounds (1,1)
    std::string t = write_file("pr.json", kPrBox);
    std::string b = write_file("b11.json", kBounds11);
    std::string ehalf = write_file(
        "ehalf.json",
        R"({"per_input":[{"x":[1,1],"eta":0.5},{"x":[1,2],"eta":0.5},{"x":[2,1],"eta":0.5},{"x":[2,2],"eta":0.5}]})");
    CHECK(run("membership --target " + t + " --effs " + ehalf + " --bounds " + b + " --exact")
              .exit_code == 2);

    std::string sc = write_file("scenario.json", kScenario);
    std::string bsplit = write_file(
        "bsplit.json",
        R"({"per_party":[{"eta_min":"1/3","eta_max":"2/3"},{"eta_min":"1/3","eta_max":"2/3"}]})");
    CHECK(run("vertices --scenario " + sc + " --bounds " + bsplit + " --cap 10").exit_code == 3);
}

TEST_CASE("mdl-map substitutions match the bridge") {
    auto res = run("mdl-map --l 1/4 --h 1/4 --eta-min 1/2 --eta-max 1 --exact");
    REQUIRE(res.exit_code == 0);
    json v = json::parse(res.out);
    CHECK(v["l"] == "1/16");
    CHECK(v["h"] == "1");
    CHECK(v["mode"] == "per-party");
    auto res2 = run("mdl-map --l 1/4 --h 1/4 --eta-min 1/2 --eta-max 1 --joint --exact");
    json v2 = json::parse(res2.out);
    CHECK(v2["l"] == "1/8");
    CHECK(v2["h"] == "1/2");
}

TEST_CASE("born consumes hardy's state and settings files") {
    std::string st = dir() + "/state.json";
    std::string se = dir() + "/settings.json";
    std::string corr = dir() + "/hardy.json";
    auto res = run("hardy --tau 0.6 --out " + corr + " --state-out " + st + " --settings-out " + se);
    REQUIRE(res.exit_code == 0);
    auto res2 = run("born --state " + st + " --settings " + se);
    REQUIRE(res2.exit_code == 0);
    auto from_born = ldl::io::parse_postselected_correlation(json::parse(res2.out));
    auto from_hardy = ldl::io::parse_postselected_correlation(json::parse(slurp(corr)));
    for (std::size_t i = 0; i < from_born.data().size(); ++i)
        CHECK(ldl::num::to_double(ldl::num::abs_val(
                  ldl::Rat(from_born.data()[i] - from_hardy.data()[i]))) < 1e-15);
}
