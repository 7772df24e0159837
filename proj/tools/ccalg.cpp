// ccalg: exact symbolic checker and calculator for twisted Rota-Baxter
// operators on associative conformal algebras.
//
// Exit codes: 0 = every mathematical assertion of the invoked command holds,
// 1 = a mathematical check failed (including eager workspace validation),
// 2 = input or usage error (bad flags, unreadable files, wrong shapes).

#include <ccalg/deform.hpp>
#include <ccalg/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

using namespace ccalg;
using nlohmann::json;

namespace {

const char* TRB_ANCHOR = "R(u)_λ R(v) = R( u_λ R(v) + R(u)_λ v + H_λ(R(u), R(v)) )";

std::string pf(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string poly_sum(const std::vector<MPoly>& v, const std::vector<std::string>& names) {
    std::string s;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + v[k].str() + ") " + names[k];
    }
    return s.empty() ? "0" : s;
}

json poly_strings(const std::vector<MPoly>& v) {
    json a = json::array();
    for (const MPoly& p : v) a.push_back(p.str());
    return a;
}

// Accumulates the text and JSON forms of one report in a single pass so the
// two encodings can never drift apart.
struct Report {
    std::ostringstream text;
    json j = json::object();
    json checks = json::array();
    bool ok = true;

    void note(const std::string& line) { text << line << "\n"; }
    void raw(const std::string& block) { text << block; }

    void check(const std::string& anchor, const CheckResult& c) {
        text << anchor << ": " << pf(c.ok) << "\n";
        if (!c.ok) text << "  witness: " << c.witness << "\n";
        checks.push_back({{"name", anchor}, {"ok", c.ok}, {"witness", c.witness}});
        ok = ok && c.ok;
    }
};

int finish(Report& r, const std::string& cmd, const std::string& format) {
    r.j["command"] = cmd;
    r.j["ok"] = r.ok;
    if (!r.checks.empty()) r.j["checks"] = r.checks;
    if (format == "json")
        std::cout << r.j.dump(2) << "\n";
    else
        std::cout << r.text.str();
    return r.ok ? 0 : 1;
}

void emit_validation(Report& r, const Workspace& w, const ValidationReport& vr) {
    if (w.has_algebra)
        r.check("associativity of T", vr.algebra);
    else
        r.note("associativity of T: SKIP");
    if (w.has_bimodule)
        r.check("bimodule axioms of U", vr.bimodule);
    else
        r.note("bimodule axioms of U: SKIP");
    if (w.has_algebra && w.has_bimodule)
        r.check("2-cocycle identity for H", vr.cocycle);
    else
        r.note("2-cocycle identity for H: SKIP");
}

// ------------------------------------------------------------ shape guards

const NamedMap& need_map(const Workspace& w, const std::string& name, const std::string& from,
                         const std::string& to, int arity, const std::string& flag) {
    const NamedMap& m = w.map_named(name);
    if (m.from != from || m.to != to || m.c.n != arity)
        throw ParseError(flag + " '" + name + "' must be an arity-" + std::to_string(arity) +
                         " map from " + from + " to " + to);
    return m;
}

const NamedMap& need_ucochain(const Workspace& w, const std::string& name,
                              const std::string& flag) {
    const NamedMap& m = w.map_named(name);
    if (m.from != "U" || m.to != "T" || m.c.n < 1 || m.c.n > 3)
        throw ParseError(flag + " '" + name + "' must be a map from U to T of arity 1 to 3");
    return m;
}

const Element& need_element_T(const Workspace& w, const std::string& name) {
    const NamedElement& e = w.element_named(name);
    if (e.space != "T") throw ParseError("element '" + name + "' must lie in T");
    return e.v;
}

// ------------------------------------------------- embedded result workspace

json ws_json_with(const Workspace& base, const Cochain* twist,
                  std::map<std::string, NamedMap> maps) {
    Workspace out;
    out.algebra = base.algebra;
    out.has_algebra = base.has_algebra;
    out.bimodule = base.bimodule;
    out.has_bimodule = base.has_bimodule;
    out.cocycle = twist ? *twist : base.cocycle;
    out.has_cocycle = out.has_algebra && out.has_bimodule;
    out.maps = std::move(maps);
    return workspace_to_json(out);
}

void print_product_table(Report& r, const ConformalAlgebra& A, const std::string& sep) {
    bool any = false;
    for (int i = 0; i < A.rank; ++i)
        for (int j = 0; j < A.rank; ++j) {
            std::string s = poly_sum(A.S[i][j], A.basis);
            if (s == "0") continue;
            r.note("  " + A.basis[i] + " " + sep + " " + A.basis[j] + " = " + s);
            any = true;
        }
    if (!any) r.note("  (zero table)");
}

void print_action_tables(Report& r, const ConformalBimodule& B) {
    bool any = false;
    for (int i = 0; i < B.over.rank; ++i)
        for (int a = 0; a < B.rank; ++a) {
            std::string s = poly_sum(B.Lact[i][a], B.basis);
            if (s == "0") continue;
            r.note("  l(" + B.over.basis[i] + ", " + B.basis[a] + ") = " + s);
            any = true;
        }
    for (int a = 0; a < B.rank; ++a)
        for (int i = 0; i < B.over.rank; ++i) {
            std::string s = poly_sum(B.Ract[a][i], B.basis);
            if (s == "0") continue;
            r.note("  r(" + B.basis[a] + ", " + B.over.basis[i] + ") = " + s);
            any = true;
        }
    if (!any) r.note("  (zero tables)");
}

std::string indent2(const std::string& block) {
    std::string out;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) out += "  " + line + "\n";
    return out;
}

void emit_equiv(Report& r, const EquivalenceReport& rep) {
    r.check("φ1(q)_μ φ1(r) = 0", rep.algebra_second_order);
    r.check("ψ1(q_μ u) = φ1(q)_{λ+μ} u + q_μ ψ1(u)", rep.module_mixed);
    r.check("φ1(q)_μ ψ1(u) = 0", rep.module_second_order);
    r.check("ψ1(H_μ(q, r)) = H_{λ+μ}(φ1(q), r) + H_μ(q, φ1(r))", rep.twist_mixed);
    r.check("H_{λ+μ}(φ1(q), φ1(r)) = 0", rep.twist_second_order);
    r.check("R1(u) + φ1(R(u)) = R(ψ1(u)) + R1'(u)", rep.operator_first);
    r.check("φ1(R1(u)) = R1'(ψ1(u))", rep.operator_second);
    r.check("R1 - R1' = (d_R p)", rep.difference_coboundary);
}

const char* GAUGE_DEF =
    "φ1(x) = p_λ x - x_{-D-λ} p;  ψ1(u) = p_λ u - u_{-D-λ} p + H_λ(p, R(u)) - H_λ(R(u), p)";

std::string status_str(CocycleStatus s) {
    switch (s) {
    case CocycleStatus::nijenhuis: return "nijenhuis";
    case CocycleStatus::solved_not_nijenhuis: return "solved-not-nijenhuis";
    default: return "unsolved";
    }
}

// ------------------------------------------------------------------ options

struct Opts {
    std::string format = "text";
    bool novalid = false;
    std::vector<std::string> files;
    std::string op, op1, op1p, of, map, elem, mode = "xi", what;
    std::vector<std::string> binary, ternary, series;
    int degree = 1, trunc = 2, order = 3;
};

int cmd_validate(const Opts& o) {
    Report r;
    json jfiles = json::array();
    bool first = true;
    for (const std::string& f : o.files) {
        Workspace w = load_workspace(f);
        ValidationReport vr = validate_workspace(w);
        if (!first) r.note("");
        first = false;
        r.note("workspace: " + f);
        size_t before = r.checks.size();
        emit_validation(r, w, vr);
        json jf = json::object();
        jf["file"] = f;
        json jc = json::array();
        for (size_t i = before; i < r.checks.size(); ++i) jc.push_back(r.checks[i]);
        jf["checks"] = jc;
        jfiles.push_back(jf);
    }
    r.checks = json::array();
    r.j["files"] = jfiles;
    return finish(r, "validate", o.format);
}

int dispatch(const std::string& cmd, const Opts& o) {
    if (cmd == "validate") return cmd_validate(o);

    Workspace w = load_workspace(o.files[0]);
    if (!o.novalid) {
        ValidationReport vr = validate_workspace(w);
        if (!vr.ok) {
            Report r;
            r.note("workspace validation failed: " + o.files[0]);
            emit_validation(r, w, vr);
            r.j["file"] = o.files[0];
            return finish(r, cmd, o.format);
        }
    }

    Report r;

    if (cmd == "bracket") {
        SumSpace S = w.sum();
        if (!o.binary.empty()) {
            const NamedMap& A = need_ucochain(w, o.binary[0], "--binary");
            const NamedMap& B = need_ucochain(w, o.binary[1], "--binary");
            Cochain res = derived_bracket(S, A.c, B.c);
            std::string label = "[[" + o.binary[0] + "," + o.binary[1] + "]]";
            r.note(label + " from the derived-bracket hierarchy of the lifted multiplication "
                           "on T (+)_H U");
            r.raw(cochain_to_text(res, label, w.bimodule.basis, w.algebra.basis));
            r.j["arity"] = res.n;
            r.j["workspace"] = ws_json_with(w, nullptr, {{"result", NamedMap{"U", "T", res}}});
        } else {
            const NamedMap& A = need_ucochain(w, o.ternary[0], "--ternary");
            const NamedMap& B = need_ucochain(w, o.ternary[1], "--ternary");
            const NamedMap& C = need_ucochain(w, o.ternary[2], "--ternary");
            Cochain res = ternary_bracket(S, A.c, B.c, C.c);
            std::string label =
                "[[" + o.ternary[0] + "," + o.ternary[1] + "," + o.ternary[2] + "]]";
            r.note(label + " from the derived-bracket hierarchy of the lifted multiplication "
                           "on T (+)_H U");
            r.raw(cochain_to_text(res, label, w.bimodule.basis, w.algebra.basis));
            r.j["arity"] = res.n;
            r.j["workspace"] = ws_json_with(w, nullptr, {{"result", NamedMap{"U", "T", res}}});
        }
        return finish(r, cmd, o.format);
    }

    if (cmd == "mc-residual") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        Cochain res = mc_residual(S, R.c);
        r.note("mc(" + o.op + ") = (1/2)[[" + o.op + "," + o.op + "]] - (1/6)[[" + o.op + "," +
               o.op + "," + o.op + "]]");
        r.raw(cochain_to_text(res, "mc(" + o.op + ")", w.bimodule.basis, w.algebra.basis));
        r.check("maurer-cartan equation mc(" + o.op + ") = 0",
                first_nonzero_witness(res, w.bimodule.basis, w.algebra.basis,
                                      "maurer-cartan residual"));
        r.j["workspace"] = ws_json_with(w, nullptr, {{"mc", NamedMap{"U", "T", res}}});
        return finish(r, cmd, o.format);
    }

    if (cmd == "dR") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        const NamedMap& g = need_ucochain(w, o.of, "--of");
        Cochain res = d_R(S, R.c, g.c);
        r.note("d_" + o.op + "(" + o.of + ") = [[" + o.op + "," + o.of + "]] - (1/2)[[" + o.op +
               "," + o.op + "," + o.of + "]]");
        r.raw(cochain_to_text(res, "d_" + o.op + "(" + o.of + ")", w.bimodule.basis,
                              w.algebra.basis));
        r.j["arity"] = res.n;
        r.j["workspace"] = ws_json_with(w, nullptr, {{"result", NamedMap{"U", "T", res}}});
        return finish(r, cmd, o.format);
    }

    if (cmd == "check-trb") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        r.check(TRB_ANCHOR, check_trb(S, R.c));
        return finish(r, cmd, o.format);
    }

    if (cmd == "graph-check") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        r.check("graph(R) = { (R(u), u) : u in U } closes under the H-twisted semidirect "
                "product",
                graph_check(S, R.c));
        return finish(r, cmd, o.format);
    }

    if (cmd == "induce") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        if (o.what == "product") {
            ConformalAlgebra A = induced_product(S, R.c);
            r.note("u * v = u_λ R(v) + R(u)_λ v + H_λ(R(u), R(v))");
            print_product_table(r, A, "*");
            Workspace out;
            out.algebra = A;
            out.has_algebra = true;
            r.j["workspace"] = workspace_to_json(out);
        } else {
            ConformalAlgebra A = induced_product(S, R.c);
            ConformalBimodule B = induced_bimodule(S, R.c);
            r.note("l_λ(u, p) = R(u)_λ p - R( u_λ p + H_λ(R(u), p) )");
            r.note("r_λ(p, u) = p_λ R(u) - R( p_λ u + H_λ(p, R(u)) )");
            print_action_tables(r, B);
            Workspace out;
            out.algebra = A;
            out.has_algebra = true;
            out.bimodule = B;
            out.has_bimodule = true;
            out.cocycle = Cochain(2, A.rank, B.rank);
            out.has_cocycle = true;
            r.j["workspace"] = workspace_to_json(out);
        }
        return finish(r, cmd, o.format);
    }

    if (cmd == "twisted-delta") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        const NamedMap& g = need_ucochain(w, o.of, "--of");
        Cochain res = twisted_delta(S, R.c, g.c);
        r.note("differential of " + o.of + " over the algebra and actions induced by " + o.op);
        r.raw(cochain_to_text(res, "(d_" + o.op + " " + o.of + ")", w.bimodule.basis,
                              w.algebra.basis));
        r.j["arity"] = res.n;
        r.j["workspace"] = ws_json_with(w, nullptr, {{"result", NamedMap{"U", "T", res}}});
        return finish(r, cmd, o.format);
    }

    if (cmd == "cohomology") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        CohomologyReport rep = cohomology(S, R.c, o.degree, o.trunc);
        r.note("arity-" + std::to_string(rep.degree) + " cochains of table degree <= " +
               std::to_string(rep.truncation) + " over the structures induced by " + o.op);
        r.note("window degree: " + std::to_string(rep.window));
        r.note("dim cocycles: " + std::to_string(rep.dim_cocycles));
        r.note("dim coboundaries in window: " + std::to_string(rep.dim_coboundaries_in_window));
        r.note("dim quotient: " + std::to_string(rep.dim_quotient));
        r.note(std::string("stabilized at the next truncation: ") +
               (rep.stabilized ? "yes" : "no"));
        r.j["degree"] = rep.degree;
        r.j["truncation"] = rep.truncation;
        r.j["window"] = rep.window;
        r.j["dim_cocycles"] = rep.dim_cocycles;
        r.j["dim_coboundaries_in_window"] = rep.dim_coboundaries_in_window;
        r.j["dim_quotient"] = rep.dim_quotient;
        r.j["stabilized"] = rep.stabilized;
        return finish(r, cmd, o.format);
    }

    if (cmd == "twist-coboundary") {
        SumSpace S = w.sum();
        const NamedMap& h = need_map(w, o.map, "T", "U", 1, "--map");
        TwistReport rep = twist_by_coboundary(S, h.c);
        r.note("H' = H + (d " + o.map + ") for the 1-cochain " + o.map + ": T -> U");
        r.raw(cochain_to_text(rep.twisted, "H'", w.algebra.basis, w.bimodule.basis));
        r.check("2-cocycle identity for H'",
                is_two_cocycle(ComplexCtx{w.algebra, w.bimodule}, rep.twisted));
        r.check("(p, u) -> (p, u + " + o.map + "(p)) carries the H'-twisted semidirect "
                "product to the H-twisted one",
                rep.iso);
        r.j["workspace"] = ws_json_with(w, &rep.twisted, {});
        return finish(r, cmd, o.format);
    }

    if (cmd == "perturb") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        const NamedMap& h = need_map(w, o.map, "T", "U", 1, "--map");
        PerturbMode pm = o.mode == "xi" ? PerturbMode::admissible : PerturbMode::twist;
        PerturbResult pr = perturb_graph(S, R.c, h.c, pm);
        if (pm == PerturbMode::admissible)
            r.note("mode: xi (admissible; d " + o.map + " = 0, K = id + " + o.map + "∘" + o.op +
                   ", twist unchanged)");
        else
            r.note("mode: phi (twist; K = id - " + o.map + "∘" + o.op + ", H' = H + d " +
                   o.map + ")");
        r.note("perturbed operator R' = " + o.op + " ∘ K^{-1}");
        r.raw(cochain_to_text(pr.R2, "R'", w.bimodule.basis, w.algebra.basis));
        if (pm == PerturbMode::twist)
            r.raw(cochain_to_text(pr.H2, "H'", w.algebra.basis, w.bimodule.basis));
        SumSpace S2(w.algebra, w.bimodule, pr.H2);
        r.check(std::string("perturbed pair: ") + TRB_ANCHOR, check_trb(S2, pr.R2));
        if (pm == PerturbMode::admissible)
            r.check("(id + " + o.map + "∘" + o.op +
                        ") intertwines the products induced by R and R'",
                    induced_iso_check(S, R.c, h.c));
        r.j["mode"] = o.mode;
        r.j["workspace"] = ws_json_with(w, &pr.H2, {{"R2", NamedMap{"U", "T", pr.R2}}});
        return finish(r, cmd, o.format);
    }

    if (cmd == "from-inverse") {
        const NamedMap& h = need_map(w, o.map, "T", "U", 1, "--map");
        OperatorPair pair = from_invertible_onecochain(w.algebra, w.bimodule, h.c);
        r.note("R = " + o.map + "^{-1} and H = -(d " + o.map + ") for the invertible "
               "1-cochain " + o.map + ": T -> U");
        r.raw(cochain_to_text(pair.R, "R", w.bimodule.basis, w.algebra.basis));
        r.raw(cochain_to_text(pair.H, "H", w.algebra.basis, w.bimodule.basis));
        SumSpace S2(w.algebra, w.bimodule, pair.H);
        r.check(TRB_ANCHOR, check_trb(S2, pair.R));
        r.j["workspace"] = ws_json_with(w, &pair.H, {{"R", NamedMap{"U", "T", pair.R}}});
        return finish(r, cmd, o.format);
    }

    if (cmd == "deform linear" || cmd == "deform formal") {
        SumSpace S = w.sum();
        DeformationReport rep;
        if (cmd == "deform linear") {
            const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
            const NamedMap& R1 = need_map(w, o.op1, "U", "T", 1, "--op1");
            r.note("family R_t = " + o.op + " + t·" + o.op1);
            rep = check_linear_deformation(S, R.c, R1.c);
        } else {
            std::vector<Cochain> series;
            std::string label;
            for (const std::string& name : o.series) {
                series.push_back(need_map(w, name, "U", "T", 1, "--series").c);
                label += (label.empty() ? "" : ", ") + name;
            }
            r.note("family R_t = sum_i t^i R_i, series (" + label + ")");
            rep = check_formal_deformation(S, series, o.order);
        }
        r.note("order-n condition: sum_{i+j=n} R_i(u)_λ R_j(v) = sum_{i+j=n} R_i( u_λ R_j(v) "
               "+ R_j(u)_λ v ) + sum_{i+j+k=n} R_i( H_λ(R_j(u), R_k(v)) )");
        for (const OrderReport& ord : rep.orders)
            r.check("order " + std::to_string(ord.order), ord.check);
        return finish(r, cmd, o.format);
    }

    if (cmd == "deform equiv") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        const NamedMap& R1 = need_map(w, o.op1, "U", "T", 1, "--op1");
        const NamedMap& R1p = need_map(w, o.op1p, "U", "T", 1, "--op1p");
        const Element& p = need_element_T(w, o.elem);
        r.note(GAUGE_DEF);
        EquivalenceReport rep = check_linear_equivalence(S, R.c, R1.c, R1p.c, p);
        emit_equiv(r, rep);
        r.note("gauge equivalence of " + o.op + " + t·" + o.op1 + " and " + o.op + " + t·" +
               o.op1p + " by " + o.elem + ": " + pf(rep.ok));
        return finish(r, cmd, o.format);
    }

    if (cmd == "nijenhuis") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        const Element& p = need_element_T(w, o.elem);
        NijenhuisReport rep = is_nijenhuis(S, R.c, p);
        r.check("p_μ( l_λ(u, p) - r_λ(p, u) ) = ( l_λ(u, p) - r_λ(p, u) )_{-D-μ} p",
                rep.self_conjugate);
        r.note(std::string("gauge conditions with R1 = (d_R p), R1' = 0, where ") + GAUGE_DEF);
        emit_equiv(r, rep.gauge);
        r.note("self-conjugate (nijenhuis) element " + o.elem + ": " + pf(rep.ok));
        return finish(r, cmd, o.format);
    }

    if (cmd == "rigidity") {
        SumSpace S = w.sum();
        const NamedMap& R = need_map(w, o.op, "U", "T", 1, "--op");
        RigidityReport rep = rigidity_witness(S, R.c, o.trunc);
        r.note("arity-1 cocycles of table degree <= " + std::to_string(rep.truncation) +
               " over the structures induced by " + o.op + ": dim " +
               std::to_string(rep.entries.size()));
        json jentries = json::array();
        int idx = 0;
        std::string first_bad;
        for (const RigidityEntry& e : rep.entries) {
            ++idx;
            r.note("cocycle " + std::to_string(idx) + ":");
            r.raw(indent2(cochain_to_text(e.cocycle, "z", w.bimodule.basis, w.algebra.basis)));
            r.note("  status: " + status_str(e.status));
            json je = json::object();
            je["cocycle"] = cochain_values_json(e.cocycle);
            je["status"] = status_str(e.status);
            if (e.status == CocycleStatus::unsolved) {
                je["p"] = nullptr;
            } else {
                r.note("  p = " + poly_sum(e.p.coeffs, w.algebra.basis));
                je["p"] = poly_strings(e.p.coeffs);
            }
            if (e.status != CocycleStatus::nijenhuis && first_bad.empty())
                first_bad = "cocycle " + std::to_string(idx) + " is " + status_str(e.status);
            jentries.push_back(je);
        }
        CheckResult verdict;
        verdict.ok = rep.witnessed;
        if (!rep.witnessed) verdict.witness = first_bad;
        r.check("every truncated 1-cocycle is d_R of a nijenhuis element", verdict);
        r.j["truncation"] = rep.truncation;
        r.j["dim_cocycles"] = rep.entries.size();
        r.j["entries"] = jentries;
        r.j["witnessed"] = rep.witnessed;
        return finish(r, cmd, o.format);
    }

    throw ParseError("unknown command '" + cmd + "'");
}

} // namespace

int main(int argc, char** argv) {
    if (const char* tc = std::getenv("CCALG_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(tc, &end, 10);
        if (*tc == '\0' || end == nullptr || *end != '\0' || v < 1) {
            std::cerr << "error: CCALG_THREADS must be a positive integer\n";
            return 2;
        }
    }

    CLI::App app{"exact symbolic checks for twisted Rota-Baxter operators on associative "
                 "conformal algebras"};
    app.require_subcommand(1);

    Opts o;
    auto add_common = [&o](CLI::App* s, bool multi) {
        s->add_option("--format", o.format, "report encoding")
            ->check(CLI::IsMember({"text", "json"}));
        s->add_flag("--no-validate", o.novalid, "skip eager workspace validation");
        auto* f = s->add_option("files", o.files, "workspace file(s)")->required();
        if (!multi) f->expected(1);
    };

    CLI::App* validate = app.add_subcommand("validate", "check associativity, the bimodule "
                                                        "axioms, and the 2-cocycle identity");
    add_common(validate, true);

    CLI::App* bracket =
        app.add_subcommand("bracket", "derived brackets of maps U^n -> T");
    auto* bopt = bracket->add_option("--binary", o.binary, "two map names")->expected(2);
    bracket->add_option("--ternary", o.ternary, "three map names")
        ->expected(3)
        ->excludes(bopt);
    add_common(bracket, false);

    CLI::App* mc = app.add_subcommand("mc-residual", "maurer-cartan residual of an operator");
    mc->add_option("--op", o.op, "operator map name")->required();
    add_common(mc, false);

    CLI::App* dr = app.add_subcommand("dR", "differential twisted by an operator");
    dr->add_option("--op", o.op, "operator map name")->required();
    dr->add_option("--of", o.of, "cochain to differentiate")->required();
    add_common(dr, false);

    CLI::App* ct = app.add_subcommand("check-trb", "twisted Rota-Baxter identity");
    ct->add_option("--op", o.op, "operator map name")->required();
    add_common(ct, false);

    CLI::App* gc = app.add_subcommand("graph-check", "graph closure in the twisted "
                                                     "semidirect product");
    gc->add_option("--op", o.op, "operator map name")->required();
    add_common(gc, false);

    CLI::App* ind = app.add_subcommand("induce", "algebra on U / actions on T induced by an "
                                                 "operator");
    ind->add_option("what", o.what, "product | bimodule")
        ->required()
        ->check(CLI::IsMember({"product", "bimodule"}));
    ind->add_option("--op", o.op, "operator map name")->required();
    add_common(ind, false);

    CLI::App* td = app.add_subcommand("twisted-delta", "differential over the induced "
                                                       "structures");
    td->add_option("--op", o.op, "operator map name")->required();
    td->add_option("--of", o.of, "cochain to differentiate")->required();
    add_common(td, false);

    CLI::App* coh = app.add_subcommand("cohomology", "truncated cocycle/coboundary "
                                                     "dimensions");
    coh->add_option("--op", o.op, "operator map name")->required();
    coh->add_option("--degree", o.degree, "cochain arity")->required()->check(CLI::Range(0, 4));
    coh->add_option("--trunc", o.trunc, "max table degree")->required()->check(CLI::Range(0, 8));
    add_common(coh, false);

    CLI::App* tw = app.add_subcommand("twist-coboundary", "shift the twist by a coboundary");
    tw->add_option("--map", o.map, "1-cochain h: T -> U")->required();
    add_common(tw, false);

    CLI::App* pe = app.add_subcommand("perturb", "perturb an operator along a 1-cochain");
    pe->add_option("--op", o.op, "operator map name")->required();
    pe->add_option("--map", o.map, "1-cochain h: T -> U")->required();
    pe->add_option("--mode", o.mode, "xi (admissible) | phi (twist)")
        ->required()
        ->check(CLI::IsMember({"xi", "phi"}));
    add_common(pe, false);

    CLI::App* fi = app.add_subcommand("from-inverse", "operator pair from an invertible "
                                                      "1-cochain");
    fi->add_option("--map", o.map, "invertible 1-cochain h: T -> U")->required();
    add_common(fi, false);

    CLI::App* de = app.add_subcommand("deform", "one-parameter families of operators");
    de->require_subcommand(1);
    CLI::App* dl = de->add_subcommand("linear", "orders 0..3 of R + t R1");
    dl->add_option("--op", o.op, "base operator")->required();
    dl->add_option("--op1", o.op1, "first-order term")->required();
    add_common(dl, false);
    CLI::App* df = de->add_subcommand("formal", "order-by-order family conditions");
    df->add_option("--series", o.series, "comma-separated operator names, powers of t")
        ->required()
        ->delimiter(',');
    df->add_option("--order", o.order, "highest order to check")
        ->required()
        ->check(CLI::Range(0, 8));
    add_common(df, false);
    CLI::App* dq = de->add_subcommand("equiv", "first-order gauge equivalence");
    dq->add_option("--op", o.op, "base operator")->required();
    dq->add_option("--op1", o.op1, "first-order term")->required();
    dq->add_option("--op1p", o.op1p, "gauged first-order term")->required();
    dq->add_option("--element", o.elem, "generating element of T")->required();
    add_common(dq, false);

    CLI::App* nj = app.add_subcommand("nijenhuis", "self-conjugate element test");
    nj->add_option("--op", o.op, "operator map name")->required();
    nj->add_option("--element", o.elem, "candidate element of T")->required();
    add_common(nj, false);

    CLI::App* rg = app.add_subcommand("rigidity", "trivialize every truncated 1-cocycle");
    rg->add_option("--op", o.op, "operator map name")->required();
    rg->add_option("--trunc", o.trunc, "max table degree")->required()->check(CLI::Range(0, 8));
    add_common(rg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string cmd = sub->get_name();
    if (cmd == "deform") cmd += " " + sub->get_subcommands().front()->get_name();
    if (cmd == "bracket" && o.binary.empty() && o.ternary.empty()) {
        std::cerr << "error: bracket needs --binary A B or --ternary A B C\n";
        return 2;
    }

    try {
        return dispatch(cmd, o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        if (o.format == "json") {
            json j = {{"command", cmd}, {"error", e.what()}, {"ok", false}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "error: " << e.what() << "\n";
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
