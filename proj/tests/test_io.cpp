#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include <ccalg/io.hpp>

using namespace ccalg;

namespace {

std::string fixture(const std::string& name) {
    return std::string(CCALG_FIXTURE_DIR) + "/" + name;
}

bool throws_containing(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
    } catch (const ParseError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("text fixture loads with full contents") {
    Workspace w = load_workspace(fixture("fix_a.ccalg"));
    CHECK(w.has_algebra);
    CHECK(w.has_bimodule);
    CHECK(!w.has_cocycle);
    CHECK(w.rank_of("T") == 2);
    CHECK(w.rank_of("U") == 2);
    CHECK(w.names_of("T") == std::vector<std::string>{"e1", "e2"});
    CHECK(w.names_of("U") == std::vector<std::string>{"u1", "u2"});

    ConformalAlgebra ref = tu::dual_current();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) CHECK(w.algebra.table(i, j, k) == ref.table(i, j, k));

    tu::Fixture A = tu::fixa();
    const NamedMap& R = w.map_named("R");
    CHECK(R.from == "U");
    CHECK(R.to == "T");
    CHECK(R.c == A.R);
    for (const char* name : {"R", "R1", "Rbad", "hadm", "hphi", "hswap"})
        CHECK(w.maps.count(name) == 1);

    const NamedElement& p = w.element_named("p");
    CHECK(p.space == "T");
    CHECK(p.v == tu::basis_element(2, 1));

    CHECK(w.cocycle.is_zero()); // absent block defaults to the zero twist
    CHECK(w.sum().H == Cochain(2, 2, 2));
}

TEST_CASE("twisted fixture carries its cocycle block") {
    Workspace w = load_workspace(fixture("fix_b.ccalg"));
    CHECK(w.has_cocycle);
    CHECK(w.cocycle.value({0, 0})[0] == MPoly::constant(-1, 1));

    tu::Fixture B = tu::fixb();
    SumSpace S = w.sum();
    CHECK(S.H == B.S.H);
    CHECK(S.T.table(0, 0, 0) == B.S.T.table(0, 0, 0));
    CHECK(w.map_named("R").c == B.R);
    CHECK(check_trb(S, w.map_named("R").c).ok);
}

TEST_CASE("text encoding round-trips and is deterministic") {
    for (const char* f : {"fix_a.ccalg", "fix_b.ccalg", "bad_cocycle.ccalg"}) {
        Workspace w = load_workspace(fixture(f));
        std::string t1 = workspace_to_text(w);
        Workspace w2 = parse_workspace(t1, "roundtrip");
        CHECK(workspace_to_text(w2) == t1);
        CHECK(w2.maps.size() == w.maps.size());
        CHECK(w2.elements.size() == w.elements.size());
        CHECK(w2.has_cocycle == w.has_cocycle);
        for (const auto& [name, m] : w.maps) {
            CHECK(w2.map_named(name).c == m.c);
            CHECK(w2.map_named(name).from == m.from);
            CHECK(w2.map_named(name).to == m.to);
        }
        for (const auto& [name, e] : w.elements) CHECK(w2.element_named(name).v == e.v);
    }
}

TEST_CASE("JSON mirror loads identically and round-trips") {
    Workspace wt = load_workspace(fixture("fix_a.ccalg"));
    Workspace wj = load_workspace(fixture("fix_a.json"));
    CHECK(workspace_to_text(wj) == workspace_to_text(wt));

    nlohmann::json j1 = workspace_to_json(wt);
    Workspace w2 = workspace_from_json(j1, "mem");
    CHECK(workspace_to_json(w2) == j1);

    // the string decoder sniffs a leading '{' and routes to the JSON path
    Workspace w3 = parse_workspace(j1.dump(2), "sniffed");
    CHECK(workspace_to_text(w3) == workspace_to_text(wt));
}

TEST_CASE("parse errors carry file and line context") {
    CHECK(throws_containing([&] { load_workspace(fixture("parse_error.ccalg")); },
                            "parse_error.ccalg:3"));
    CHECK(throws_containing([&] { load_workspace(fixture("no_such_file.ccalg")); },
                            "cannot open"));
    // JSON diagnostics name the offending path instead
    CHECK(throws_containing(
        [&] { workspace_from_json(nlohmann::json{{"algebra", 5}}, "mem"); }, "mem: algebra"));

    nlohmann::json base = workspace_to_json(load_workspace(fixture("fix_a.ccalg")));
    nlohmann::json bad1 = base;
    bad1["maps"]["R"]["arity"] = "one";
    CHECK(throws_containing([&] { workspace_from_json(bad1, "m"); }, "'arity' must be an integer"));
    nlohmann::json bad2 = base;
    bad2["maps"]["R"]["from"] = 7;
    CHECK(throws_containing([&] { workspace_from_json(bad2, "m"); }, "'from' must be a string"));
    nlohmann::json bad3 = base;
    bad3["maps"] = 3;
    CHECK(throws_containing([&] { workspace_from_json(bad3, "m"); }, "maps: must be a JSON object"));
}

TEST_CASE("structural mistakes are rejected with specific messages") {
    auto parse = [](const std::string& s) { return parse_workspace(s, "t"); };

    CHECK(throws_containing([&] { parse("algebra\nbasis e\nproduct 1 1 : 1\nend\n"
                                        "algebra\nbasis f\nend\n"); },
                            "algebra defined twice"));
    CHECK(throws_containing([&] { parse("bimodule\nbasis u\nend\n"); },
                            "bimodule requires the algebra block first"));
    CHECK(throws_containing([&] { parse("map R\nfrom U\nto T\narity 1\nend\n"); },
                            "map requires the algebra block first"));
    CHECK(throws_containing([&] { parse("algebra\nbasis e e\nend\n"); },
                            "duplicate basis name"));
    CHECK(throws_containing(
        [&] { parse("algebra\nbasis e\nproduct 1 1 : 1\nproduct 1 1 : 1\nend\n"); },
        "duplicate product line"));
    CHECK(throws_containing([&] { parse("algebra\nbasis e\nproduct 1 1 : 1\n"); },
                            "unterminated"));
    CHECK(throws_containing([&] {
              parse("algebra\nbasis e\nproduct 1 1 : 1\nend\n"
                    "bimodule\nbasis u\nleft 1 1 : 1\nright 1 1 : 1\nend\n"
                    "map R\nfrom U\nto T\narity 1\nvalue 1 : 1\nend\n"
                    "map R\nfrom U\nto T\narity 1\nvalue 1 : 1\nend\n");
          },
          "map 'R' defined twice"));
    // wrong number of polynomial entries for the target rank
    CHECK(throws_containing([&] { parse("algebra\nbasis e1 e2\nproduct 1 1 : 1\nend\n"); },
                            "t:3"));
}

TEST_CASE("workspace lookups throw on missing names") {
    Workspace w = load_workspace(fixture("fix_a.ccalg"));
    CHECK(throws_containing([&] { w.map_named("nope"); }, "no map named 'nope'"));
    CHECK(throws_containing([&] { w.element_named("nope"); }, "no element named 'nope'"));
    CHECK(throws_containing([&] { w.rank_of("X"); }, "unknown space"));
    Workspace empty;
    CHECK(throws_containing([&] { empty.sum(); }, "needs algebra and bimodule"));
}

TEST_CASE("validation separates the three axiom groups") {
    ValidationReport va = validate_workspace(load_workspace(fixture("fix_a.ccalg")));
    CHECK(va.algebra.ok);
    CHECK(va.bimodule.ok);
    CHECK(va.cocycle.ok);
    CHECK(va.ok);

    ValidationReport vb = validate_workspace(load_workspace(fixture("bad_cocycle.ccalg")));
    CHECK(vb.algebra.ok);
    CHECK(vb.bimodule.ok);
    CHECK(!vb.cocycle.ok);
    CHECK(!vb.cocycle.witness.empty());
    CHECK(!vb.ok);
}

TEST_CASE("table rendering helpers") {
    tu::Fixture A = tu::fixa();
    Workspace w = load_workspace(fixture("fix_a.ccalg"));
    std::string txt = cochain_to_text(A.R, "R", w.names_of("U"), w.names_of("T"));
    CHECK(txt.find("R(u1)") != std::string::npos);
    CHECK(txt.find("e2") != std::string::npos);
    CHECK(txt.find("u2") == std::string::npos); // the zero row is suppressed

    nlohmann::json jv = cochain_values_json(A.R);
    REQUIRE(jv.contains("1"));
    CHECK(jv["1"] == nlohmann::json::array({"0", "1"}));
    CHECK(!jv.contains("2"));
}
