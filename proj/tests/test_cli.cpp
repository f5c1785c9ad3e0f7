#include <vector>
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("NBHD_CLI");
    REQUIRE_MESSAGE(p != nullptr, "NBHD_CLI must point at the built tool");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("cli_tmp_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const std::string model_t = R"({"states": ["t1","t2","t3"],
  "neighbourhoods": {"t1": [["t2"]], "t2": [["t2"]], "t3": [[]]}})";
const std::string model_s = R"({"states": ["s"]})";

} // namespace

TEST_CASE("equiv reproduces the published facts for the first example pair") {
    std::string left = write_temp("t.json", model_t);
    std::string right = write_temp("s.json", model_s);
    RunResult r = run("equiv --left " + left + " --right " + right + " --kind all");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["bisimulation"]["pairs"] == json::array());
    CHECK(j["precocongruence"]["pairs"] == json::parse(R"([["t1","s"],["t2","s"]])"));
    CHECK(j["behavioural"]["pairs"] == json::parse(R"([["t1","s"],["t2","s"]])"));
    // Rejected pairs come with re-checkable certificates.
    CHECK(j["behavioural"]["certificates"].size() == 1);
    CHECK(j["behavioural"]["certificates"][0]["pair"] == json::parse(R"(["t3","s"])"));
}

TEST_CASE("examples re-derive their facts") {
    RunResult ex1 = run("examples ex1");
    CHECK(ex1.exit_code == 0);
    json j1 = json::parse(ex1.output);
    CHECK(j1["facts"]["largest_bisimulation"] == json::array());
    CHECK(j1["facts"]["largest_precocongruence"] == json::parse(R"([["t1","s"],["t2","s"]])"));
    CHECK(j1["facts"]["collapse_t1_t2_precongruence"] == true);
    CHECK(j1["facts"]["collapse_t1_t2_precocongruence"] == false);

    RunResult ex2 = run("examples ex2");
    json j2 = json::parse(ex2.output);
    CHECK(j2["facts"]["largest_precocongruence"] == json::array());
    CHECK(j2["facts"]["behavioural_equivalence"] == json::parse(R"([["t1","s"]])"));
}

TEST_CASE("check exits 1 on false and 2 on bad input") {
    std::string left = write_temp("t.json", model_t);
    RunResult good = run("check --model " + left + " --state t3 --formula \"[]false\"");
    CHECK(good.exit_code == 0);
    CHECK(json::parse(good.output)["verdict"] == true);
    RunResult bad = run("check --model " + left + " --state t1 --formula \"[]false\"");
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.output)["verdict"] == false);
    CHECK(run("check --model missing.json --state t1 --formula \"p0\"").exit_code == 2);
    CHECK(run("check --model " + left + " --state zz --formula \"p0\"").exit_code == 2);
    CHECK(run("check --model " + left + " --state t1 --formula \"p0 &\"").exit_code == 2);
}

TEST_CASE("morphism verification") {
    std::string left = write_temp("t.json", model_t);
    std::string target = write_temp("u.json",
        R"({"states": ["u1","u2"], "neighbourhoods": {"u2": [[]]}})");
    std::string good_map = write_temp("f.json", R"({"t1":"u1","t2":"u1","t3":"u2"})");
    std::string bad_map = write_temp("g.json", R"({"t1":"u1","t2":"u1","t3":"u1"})");
    RunResult ok = run("morphism --left " + left + " --right " + target + " --map " + good_map);
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.output)["holds"] == true);
    RunResult fail = run("morphism --left " + left + " --right " + target + " --map " + bad_map);
    CHECK(fail.exit_code == 1);
    json j = json::parse(fail.output);
    CHECK(j["holds"] == false);
    CHECK(j.contains("violation"));
}

TEST_CASE("quotient and minimize") {
    std::string left = write_temp("t.json", model_t);
    std::string rel = write_temp("r.json", R"([["t1","t2"]])");
    RunResult q = run("quotient --model " + left + " --relation " + rel);
    CHECK(q.exit_code == 0);
    json j = json::parse(q.output);
    CHECK(j["model"]["states"] == json::parse(R"(["t1","t3"])"));
    CHECK(j["map"]["t2"] == "t1");

    std::string bad_rel = write_temp("rb.json", R"([["t2","t3"]])");
    CHECK(run("quotient --model " + left + " --relation " + bad_rel).exit_code == 1);

    RunResult m = run("minimize --model " + left);
    CHECK(m.exit_code == 0);
    CHECK(json::parse(m.output)["model"]["states"] == json::parse(R"(["t1","t3"])"));
}

TEST_CASE("ufext and translate") {
    std::string left = write_temp("t.json", model_t);
    RunResult u = run("ufext --model " + left);
    CHECK(u.exit_code == 0);
    json j = json::parse(u.output);
    CHECK(j["model"]["states"] == json::parse(R"(["uf:t1","uf:t2","uf:t3"])"));
    CHECK(j["principal"]["t1"] == "uf:t1");

    RunResult t = run("translate --model " + left);
    CHECK(t.exit_code == 0);
    CHECK(json::parse(t.output)["structure"]["neighbourhoods"] == json::parse(R"(["n0","n1"])"));

    RunResult f = run("translate --formula \"[]p0\"");
    CHECK(f.exit_code == 0);
    CHECK(json::parse(f.output)["fol"] ==
          "Ex u1 ((x N u1 & All y1 ((u1 E y1 <-> P0 y1))))");

    RunResult g = run("translate --formula \"p0\" --var z");
    CHECK(json::parse(g.output)["fol"] == "P0 z");
}

TEST_CASE("decision subcommands and exit codes") {
    RunResult sat = run("sat --formula \"[]p0\"");
    CHECK(sat.exit_code == 0);
    CHECK(json::parse(sat.output)["verdict"] == "SAT");
    CHECK(run("sat --formula \"false\"").exit_code == 1);

    RunResult inval = run("valid --formula \"[]p0 & []p1 -> [](p0 & p1)\"");
    CHECK(inval.exit_code == 1);
    json j = json::parse(inval.output);
    CHECK(j["verdict"] == "INVALID");
    CHECK(j.contains("model"));

    RunResult interp = run("interpolate --left \"[]p0 & p1\" --right \"[]p0 | p2\"");
    CHECK(interp.exit_code == 0);
    CHECK(json::parse(interp.output)["interpolant"] == "[](p0)");
    CHECK(run("interpolate --left \"p0\" --right \"p1\"").exit_code == 1);

    // Exhausting the bound is a resource outcome, not a verdict.
    RunResult bounded =
        run("interpolate --left \"[]p0 & p1\" --right \"[]p0 | p2\" --max-size 1");
    CHECK(bounded.exit_code == 3);
    CHECK(json::parse(bounded.output)["verdict"] == "NOT_FOUND_WITHIN_BOUND");
}

TEST_CASE("pretty output is indented JSON with the same content") {
    RunResult compact = run("examples ex1");
    RunResult pretty = run("examples ex1 --pretty");
    CHECK(pretty.output.find('\n') != std::string::npos);
    CHECK(json::parse(compact.output) == json::parse(pretty.output));
}

TEST_CASE("output is byte-deterministic") {
    std::string left = write_temp("t.json", model_t);
    std::string right = write_temp("s.json", model_s);
    const std::vector<std::string> commands = {
        "examples ex1",
        "examples ex2",
        "equiv --left " + left + " --right " + right + " --kind all",
        "valid --formula \"[]p0 & []p1 -> [](p0 & p1)\"",
        "ufext --model " + left,
        "minimize --model " + left,
    };
    for (const std::string& cmd : commands) {
        RunResult a = run(cmd);
        RunResult b = run(cmd);
        CHECK(a.output == b.output);
        CHECK(a.exit_code == b.exit_code);
    }
    // --jobs must not change results.
    RunResult serial = run("equiv --left " + left + " --right " + right + " --kind all");
    RunResult parallel =
        run("equiv --left " + left + " --right " + right + " --kind all --jobs 4");
    CHECK(serial.output == parallel.output);
}
