#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ccalg/io.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using nlohmann::json;

namespace {

struct Case {
    std::string name;
    int expected_exit = 0;
    std::string command; // with @BIN@ already substituted
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

std::string golden_dir() { return CCALG_GOLDEN_DIR; }
std::string fixture_dir() { return CCALG_FIXTURE_DIR; }

std::string binary_path() {
    const char* bin = std::getenv("CCALG_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "CCALG_BIN must point at the ccalg binary");
    return bin;
}

std::vector<Case> load_manifest() {
    std::istringstream in(slurp(golden_dir() + "/manifest.txt"));
    std::string bin = "'" + binary_path() + "'";
    std::vector<Case> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Case c;
        ls >> c.name >> c.expected_exit;
        std::getline(ls, c.command);
        size_t at = c.command.find("@BIN@");
        REQUIRE(at != std::string::npos);
        c.command.replace(at, 5, bin);
        while (!c.command.empty() && c.command.front() == ' ') c.command.erase(0, 1);
        cases.push_back(std::move(c));
    }
    REQUIRE(cases.size() > 80);
    return cases;
}

struct RunResult {
    int exit_code = -1;
    std::string out, err;
};

RunResult run_case(const Case& c) {
    std::string outtmp = golden_dir() + "/.tmp_out";
    std::string errtmp = golden_dir() + "/.tmp_err";
    std::string shell =
        "cd '" + fixture_dir() + "' && " + c.command + " >'" + outtmp + "' 2>'" + errtmp + "'";
    int status = std::system(shell.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(outtmp);
    r.err = slurp(errtmp);
    std::remove(outtmp.c_str());
    std::remove(errtmp.c_str());
    return r;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

TEST_CASE("every manifest case reproduces its golden stdout, stderr and exit code") {
    for (const Case& c : load_manifest()) {
        CAPTURE(c.name);
        CAPTURE(c.command);
        RunResult r = run_case(c);
        CHECK(r.exit_code == c.expected_exit);
        CHECK(r.out == slurp(golden_dir() + "/" + c.name + ".out"));
        std::string errfile = golden_dir() + "/" + c.name + ".err";
        if (file_exists(errfile)) {
            CHECK(r.err == slurp(errfile));
        } else {
            CHECK(r.err == "");
        }
    }
}

TEST_CASE("the manifest exercises the full exit-code contract") {
    int pass = 0, mathfail = 0, usage = 0;
    for (const Case& c : load_manifest()) {
        if (c.expected_exit == 0) ++pass;
        if (c.expected_exit == 1) ++mathfail;
        if (c.expected_exit == 2) ++usage;
    }
    CHECK(pass >= 40);
    CHECK(mathfail >= 15);
    CHECK(usage >= 5);
}

TEST_CASE("JSON goldens parse, carry the report envelope, and agree with exit codes") {
    for (const Case& c : load_manifest()) {
        if (!ends_with(c.name, "_json")) continue;
        CAPTURE(c.name);
        json j = json::parse(slurp(golden_dir() + "/" + c.name + ".out"));
        REQUIRE(j.contains("command"));
        REQUIRE(j.contains("ok"));
        CHECK(j["ok"].is_boolean());
        CHECK(j["ok"].get<bool>() == (c.expected_exit == 0));
        if (j.contains("checks")) {
            bool all = true;
            for (const auto& ck : j["checks"]) {
                REQUIRE(ck.contains("name"));
                REQUIRE(ck.contains("ok"));
                if (!ck["ok"].get<bool>()) all = false;
            }
            if (!j.contains("error") && !j.contains("entries") && j["checks"].size() > 0)
                CHECK(all == j["ok"].get<bool>());
        }
        if (!j["ok"].get<bool>())
            CHECK((j.contains("error") || j.contains("checks") || j.contains("files")));
    }
}

TEST_CASE("embedded workspace fragments load back through the JSON reader") {
    int seen = 0;
    for (const Case& c : load_manifest()) {
        if (!ends_with(c.name, "_json")) continue;
        json j = json::parse(slurp(golden_dir() + "/" + c.name + ".out"));
        if (!j.contains("workspace")) continue;
        CAPTURE(c.name);
        ccalg::Workspace w = ccalg::workspace_from_json(j["workspace"], c.name);
        json again = ccalg::workspace_to_json(w);
        ccalg::Workspace w2 = ccalg::workspace_from_json(again, c.name);
        CHECK(ccalg::workspace_to_text(w) == ccalg::workspace_to_text(w2));
        ++seen;
    }
    CHECK(seen >= 15);
}

TEST_CASE("validate JSON reports each file with its three structural checks") {
    json j = json::parse(slurp(golden_dir() + "/validate_a_json.out"));
    REQUIRE(j["files"].is_array());
    REQUIRE(j["files"].size() == 1);
    CHECK(j["files"][0]["file"] == "fix_a.ccalg");
    REQUIRE(j["files"][0]["checks"].size() == 3);
    for (const auto& ck : j["files"][0]["checks"]) CHECK(ck["ok"].get<bool>());

    json bad = json::parse(slurp(golden_dir() + "/validate_bad_json.out"));
    CHECK(bad["ok"].get<bool>() == false);
    bool found_witness = false;
    for (const auto& ck : bad["files"][0]["checks"])
        if (!ck["ok"].get<bool>() && !ck["witness"].get<std::string>().empty()) found_witness = true;
    CHECK(found_witness);
}

TEST_CASE("rigidity JSON carries entries with status and optional witness element") {
    json j = json::parse(slurp(golden_dir() + "/rig_m2_json.out"));
    CHECK(j["witnessed"].get<bool>() == false);
    CHECK(j["dim_cocycles"].get<int>() == 3);
    REQUIRE(j["entries"].size() == 3);
    for (const auto& e : j["entries"]) {
        CHECK(e["status"] == "solved-not-nijenhuis");
        CHECK(!e["p"].is_null());
    }
    json va = json::parse(slurp(golden_dir() + "/rig_a_json.out"));
    for (const auto& e : va["entries"]) {
        CHECK(e["status"] == "unsolved");
        CHECK(e["p"].is_null());
    }
}

TEST_CASE("cohomology JSON dimensions match the frozen values") {
    json a = json::parse(slurp(golden_dir() + "/cohom_a_json.out"));
    CHECK(a["degree"].get<int>() == 0);
    CHECK(a["truncation"].get<int>() == 2);
    CHECK(a["dim_cocycles"].get<int>() == 6);
    CHECK(a["dim_coboundaries_in_window"].get<int>() == 0);
    CHECK(a["dim_quotient"].get<int>() == 6);
    CHECK(a["stabilized"].get<bool>() == false);

    json b = json::parse(slurp(golden_dir() + "/cohom_b_json.out"));
    CHECK(b["dim_cocycles"].get<int>() == 1);
    CHECK(b["dim_quotient"].get<int>() == 1);
    CHECK(b["stabilized"].get<bool>() == true);
}
