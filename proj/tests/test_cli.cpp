#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ssco/io.hpp"

namespace fs = std::filesystem;
using ssco::Json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "ssco");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = ssco::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// A scratch directory removed at the end of the test.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("ssco_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

const std::string kE = SSCO_FIXTURES "/five_bus/E.txt";
const std::string kA = SSCO_FIXTURES "/five_bus/A.txt";
const std::string kOrder = SSCO_FIXTURES "/five_bus/order.json";

bool contains(const std::string& text, const std::string& what) { return text.find(what) != std::string::npos; }

} // namespace

TEST_CASE("analyze reports the five-bus pivots") {
    const Run r = run({"analyze", kE, kA, "--order", kOrder});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "13 pivots; 3 dedicated actuators required"));
    CHECK(contains(r.out, "pivot alternatives: 4 collections"));
    CHECK(contains(r.out, "# ssco 1.0.0 analyze"));
}

TEST_CASE("actuate and sense print the solutions") {
    const Run a = run({"actuate", kE, kA, "--order", kOrder, "--all-alternatives"});
    REQUIRE(a.code == 0);
    for (const char* s : {"{12, 14, 16}", "{13, 14, 16}", "{12, 15, 16}", "{13, 15, 16}"}) CHECK(contains(a.out, s));
    const Run s = run({"sense", kE, kA});
    REQUIRE(s.code == 0);
    CHECK(contains(s.out, "sensing (k = 0): {2, 5, 8} unique"));
}

TEST_CASE("JSON output carries the manifest and 1-based indices") {
    const Run r = run({"sense", kE, kA, "--json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["manifest"]["command"] == "sense");
    CHECK(j["manifest"]["inputs"].size() >= 2);
    CHECK(j["result"]["indices"] == Json::parse("[2, 5, 8]"));
}

TEST_CASE("exit codes") {
    Scratch s;
    CHECK(run({"analyze", s.path("missing.txt"), kA}).code == ssco::cli::kParse);
    const std::string ragged = s.write("ragged.txt", "x 0\nx\n");
    const Run bad = run({"analyze", ragged, ragged});
    CHECK(bad.code == ssco::cli::kParse);
    CHECK(contains(bad.err, "line 2"));

    const std::string small = s.write("small.txt", "x 0\n0 x\n");
    CHECK(run({"analyze", small, kA}).code == ssco::cli::kDimension);

    const std::string cost = s.write("cost.csv", "1,2\n3,4\n");
    CHECK(run({"actuate", kE, kA, "--cost", cost}).code == ssco::cli::kCostDimension);

    CHECK(run({"codesign", kE, kA, "--max-actuators", "1"}).code == ssco::cli::kInfeasible);
    CHECK(run({"frobnicate"}).code == ssco::cli::kParse);
    CHECK(run({"actuate", kE, kA, "--k", "-1"}).code == ssco::cli::kParse);
}

TEST_CASE("verify is reproducible and flags a tampered design") {
    Scratch s;
    const std::string e = s.write("E.txt", "x 0\n0 x\n");
    const std::string a = s.write("A.txt", "* *\n* *\n");
    const Run cd = run({"codesign", e, a, "--json"});
    REQUIRE(cd.code == 0);
    const std::string design = s.write("design.json", cd.out);

    const std::vector<std::string> args{"verify", design, e, a, "--trials", "30", "--seed", "5", "--threads", "1",
                                        "--counterexample-out", s.path("cx.json")};
    const Run v1 = run(args);
    const Run v2 = run(args);
    REQUIRE(v1.code == 0);
    CHECK(v1.out == v2.out);
    CHECK(contains(v1.out, "AllPassed"));
    CHECK_FALSE(fs::exists(s.path("cx.json")));

    Json j = Json::parse(cd.out)["result"];
    j["actuation"]["indices"] = Json::array({1});
    j["information"]["channels"] = Json::array({Json::array({1, 1})});
    const std::string tampered = s.write("tampered.json", j.dump());
    const Run bad = run({"verify", tampered, e, a, "--trials", "30", "--seed", "5", "--threads", "1",
                         "--counterexample-out", s.path("cx.json")});
    CHECK(bad.code == ssco::cli::kVerification);
    REQUIRE(fs::exists(s.path("cx.json")));
    const Run replay = run({"verify", tampered, e, a, "--replay", s.path("cx.json")});
    CHECK(replay.code == ssco::cli::kVerification);
    CHECK(contains(replay.out, "confirmed"));
}

TEST_CASE("codesign writes the information pattern as DOT") {
    Scratch s;
    const Run r = run({"codesign", kE, kA, "--order", kOrder, "--k", "1", "--wb",
                       SSCO_FIXTURES "/five_bus/wb_monotone.csv", "--dot", s.path("info.dot")});
    REQUIRE(r.code == 0);
    std::ifstream in(s.path("info.dot"));
    std::stringstream text;
    text << in.rdbuf();
    CHECK(contains(text.str(), "digraph"));
    CHECK(contains(text.str(), "->"));
}

TEST_CASE("falsify reports the appendix counterexample system") {
    const Run r = run({"falsify", SSCO_FIXTURES "/appendix/zero_E.txt", SSCO_FIXTURES "/appendix/counter_A.txt", "--b",
                       SSCO_FIXTURES "/appendix/counter_B.txt", "--trials", "200", "--threads", "1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "BudgetExhausted"));
    CHECK(contains(r.out, "ramp certificate: Inconclusive"));
}

TEST_CASE("the five-bus design survives every single strike and fails without a channel") {
    Scratch s;
    const Run cd = run({"codesign", kE, kA, "--order", kOrder, "--k", "1", "--wb",
                        SSCO_FIXTURES "/five_bus/wb_monotone.csv", "--json"});
    REQUIRE(cd.code == 0);
    const std::string design = s.write("design.json", cd.out);
    const Run ok = run({"verify", design, kE, kA, "--trials", "200", "--strikes", "all"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "AllPassed"));

    Json j = Json::parse(cd.out)["result"];
    j["information"]["channels"].erase(0);
    j["information"]["mates"].erase(0);
    const std::string tampered = s.write("tampered.json", j.dump());
    const Run bad = run({"verify", tampered, kE, kA, "--trials", "50", "--counterexample-out", s.path("cx.json")});
    CHECK(bad.code == ssco::cli::kVerification);
    CHECK(fs::exists(s.path("cx.json")));
}
