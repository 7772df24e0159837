#include <ccalg/hochschild.hpp>
#include <ccalg/io.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ccalg {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_indices(const std::vector<int>& idx) {
    std::string s;
    for (size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i] + 1);
    return s;
}

// ------------------------------------------------------------- text decoding

struct TextParser {
    std::string name;
    std::vector<std::pair<int, std::string>> lines; // (line number, stripped content)
    size_t pos = 0;
    Workspace w;

    explicit TextParser(const std::string& content, std::string display_name)
        : name(std::move(display_name)) {
        std::istringstream in(content);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            raw = trim(raw);
            if (!raw.empty()) lines.emplace_back(no, raw);
        }
    }

    [[noreturn]] void fail(int no, const std::string& m) const {
        throw ParseError(name + ":" + std::to_string(no) + ": " + m);
    }

    int index(int no, const std::string& tok, int rank, const std::string& what) const {
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(no, "bad " + what + " index '" + tok + "'");
        int v = 0;
        try {
            v = std::stoi(tok);
        } catch (const std::exception&) {
            fail(no, "bad " + what + " index '" + tok + "'");
        }
        if (v < 1 || v > rank)
            fail(no, what + " index " + tok + " out of range 1.." + std::to_string(rank));
        return v - 1;
    }

    std::vector<MPoly> polys(int no, const std::string& tail, int count, int nl) const {
        std::vector<std::string> parts = split_on(tail, ';');
        if (static_cast<int>(parts.size()) != count)
            fail(no, "expected " + std::to_string(count) + " value component(s), got " +
                         std::to_string(parts.size()));
        std::vector<MPoly> out;
        out.reserve(count);
        for (const std::string& part : parts) {
            try {
                out.push_back(MPoly::parse(trim(part), nl));
            } catch (const std::exception& e) {
                fail(no, "bad polynomial '" + trim(part) + "': " + e.what());
            }
        }
        return out;
    }

    std::vector<std::string> basis_names(int no, const std::vector<std::string>& toks) const {
        if (toks.size() < 2) fail(no, "basis line needs at least one name");
        std::vector<std::string> names(toks.begin() + 1, toks.end());
        std::set<std::string> seen;
        for (const std::string& n : names)
            if (!seen.insert(n).second) fail(no, "duplicate basis name '" + n + "'");
        return names;
    }

    // Split a content line at the first ':' into head tokens and value text.
    struct Stmt {
        int no;
        std::vector<std::string> head;
        std::string tail;
        bool has_value;
    };

    Stmt next(const char* block) {
        if (pos >= lines.size())
            throw ParseError(name + ": unterminated '" + block + "' block (missing 'end')");
        auto [no, text] = lines[pos++];
        size_t colon = text.find(':');
        Stmt s;
        s.no = no;
        s.has_value = colon != std::string::npos;
        s.head = split_ws(s.has_value ? text.substr(0, colon) : text);
        s.tail = s.has_value ? text.substr(colon + 1) : "";
        if (s.head.empty()) fail(no, "missing keyword before ':'");
        return s;
    }

    void parse_algebra(int start_no) {
        if (w.has_algebra) fail(start_no, "algebra defined twice");
        w.has_algebra = true;
        bool saw_basis = false;
        std::set<std::string> assigned;
        for (;;) {
            Stmt s = next("algebra");
            const std::string& kw = s.head[0];
            if (kw == "end") break;
            if (kw == "basis") {
                if (saw_basis) fail(s.no, "basis defined twice");
                w.algebra.basis = basis_names(s.no, s.head);
                w.algebra.rank = static_cast<int>(w.algebra.basis.size());
                w.algebra.S.assign(
                    w.algebra.rank,
                    std::vector<std::vector<MPoly>>(
                        w.algebra.rank, std::vector<MPoly>(w.algebra.rank, MPoly(1))));
                saw_basis = true;
            } else if (kw == "product") {
                if (!saw_basis) fail(s.no, "basis must precede product lines");
                if (!s.has_value || s.head.size() != 3)
                    fail(s.no, "expected 'product i j : values'");
                int i = index(s.no, s.head[1], w.algebra.rank, "algebra");
                int j = index(s.no, s.head[2], w.algebra.rank, "algebra");
                if (!assigned.insert(std::to_string(i) + " " + std::to_string(j)).second)
                    fail(s.no, "duplicate product line");
                w.algebra.S[i][j] = polys(s.no, s.tail, w.algebra.rank, 1);
            } else {
                fail(s.no, "unknown keyword '" + kw + "' in algebra block");
            }
        }
    }

    void parse_bimodule(int start_no) {
        if (w.has_bimodule) fail(start_no, "bimodule defined twice");
        if (!w.has_algebra) fail(start_no, "bimodule requires the algebra block first");
        w.has_bimodule = true;
        w.bimodule.over = w.algebra;
        bool saw_basis = false;
        std::set<std::string> assigned;
        const int rT = w.algebra.rank;
        for (;;) {
            Stmt s = next("bimodule");
            const std::string& kw = s.head[0];
            if (kw == "end") break;
            if (kw == "basis") {
                if (saw_basis) fail(s.no, "basis defined twice");
                w.bimodule.basis = basis_names(s.no, s.head);
                w.bimodule.rank = static_cast<int>(w.bimodule.basis.size());
                const int rU = w.bimodule.rank;
                w.bimodule.Lact.assign(rT, std::vector<std::vector<MPoly>>(
                                               rU, std::vector<MPoly>(rU, MPoly(1))));
                w.bimodule.Ract.assign(rU, std::vector<std::vector<MPoly>>(
                                               rT, std::vector<MPoly>(rU, MPoly(1))));
                saw_basis = true;
            } else if (kw == "left" || kw == "right") {
                if (!saw_basis) fail(s.no, "basis must precede action lines");
                if (!s.has_value || s.head.size() != 3)
                    fail(s.no, "expected '" + kw + " i j : values'");
                const int rU = w.bimodule.rank;
                if (kw == "left") {
                    int i = index(s.no, s.head[1], rT, "algebra");
                    int a = index(s.no, s.head[2], rU, "module");
                    if (!assigned.insert("l " + std::to_string(i) + " " + std::to_string(a))
                             .second)
                        fail(s.no, "duplicate left line");
                    w.bimodule.Lact[i][a] = polys(s.no, s.tail, rU, 1);
                } else {
                    int a = index(s.no, s.head[1], rU, "module");
                    int i = index(s.no, s.head[2], rT, "algebra");
                    if (!assigned.insert("r " + std::to_string(a) + " " + std::to_string(i))
                             .second)
                        fail(s.no, "duplicate right line");
                    w.bimodule.Ract[a][i] = polys(s.no, s.tail, rU, 1);
                }
            } else {
                fail(s.no, "unknown keyword '" + kw + "' in bimodule block");
            }
        }
    }

    void parse_cocycle(int start_no) {
        if (w.has_cocycle) fail(start_no, "cocycle defined twice");
        if (!w.has_algebra || !w.has_bimodule)
            fail(start_no, "cocycle requires algebra and bimodule blocks first");
        w.has_cocycle = true;
        const int rT = w.algebra.rank, rU = w.bimodule.rank;
        w.cocycle = Cochain(2, rT, rU);
        std::set<std::string> assigned;
        for (;;) {
            Stmt s = next("cocycle");
            const std::string& kw = s.head[0];
            if (kw == "end") break;
            if (kw != "value") fail(s.no, "unknown keyword '" + kw + "' in cocycle block");
            if (!s.has_value || s.head.size() != 3) fail(s.no, "expected 'value i j : values'");
            int i = index(s.no, s.head[1], rT, "algebra");
            int j = index(s.no, s.head[2], rT, "algebra");
            if (!assigned.insert(std::to_string(i) + " " + std::to_string(j)).second)
                fail(s.no, "duplicate value line");
            w.cocycle.set_value({i, j}, polys(s.no, s.tail, rU, 1));
        }
    }

    void parse_map(int start_no, const std::string& mname) {
        if (w.maps.count(mname)) fail(start_no, "map '" + mname + "' defined twice");
        if (!w.has_algebra) fail(start_no, "map requires the algebra block first");
        NamedMap m;
        int arity = 1;
        bool frozen = false; // set once the first value line fixes the shape
        std::set<std::string> assigned;
        for (;;) {
            Stmt s = next("map");
            const std::string& kw = s.head[0];
            if (kw == "end") break;
            if (kw == "from" || kw == "to" || kw == "arity") {
                if (frozen) fail(s.no, "'" + kw + "' must precede value lines");
                if (s.head.size() != 2) fail(s.no, "expected '" + kw + " <value>'");
                if (kw == "arity") {
                    try {
                        arity = std::stoi(s.head[1]);
                    } catch (const std::exception&) {
                        fail(s.no, "bad arity '" + s.head[1] + "'");
                    }
                    if (arity < 0 || arity > 4) fail(s.no, "arity must be between 0 and 4");
                } else {
                    if (s.head[1] != "T" && s.head[1] != "U")
                        fail(s.no, "unknown space '" + s.head[1] + "' (use T or U)");
                    if (s.head[1] == "U" && !w.has_bimodule)
                        fail(s.no, "space U requires the bimodule block first");
                    (kw == "from" ? m.from : m.to) = s.head[1];
                }
            } else if (kw == "value") {
                if (!frozen) {
                    if ((m.from == "U" || m.to == "U") && !w.has_bimodule)
                        fail(s.no, "space U requires the bimodule block first");
                    m.c = Cochain(arity, w.rank_of(m.from), w.rank_of(m.to));
                    frozen = true;
                }
                if (!s.has_value || static_cast<int>(s.head.size()) != 1 + arity)
                    fail(s.no, "expected 'value " + std::string(arity ? "i... " : "") +
                                   ": values' with " + std::to_string(arity) + " index(es)");
                std::vector<int> key;
                for (int t = 0; t < arity; ++t)
                    key.push_back(index(s.no, s.head[1 + t], m.c.src_rank, "argument"));
                if (!assigned.insert(join_indices(key)).second)
                    fail(s.no, "duplicate value line");
                m.c.set_value(key, polys(s.no, s.tail, m.c.tgt_rank, std::max(arity - 1, 0)));
            } else {
                fail(s.no, "unknown keyword '" + kw + "' in map block");
            }
        }
        if (!frozen) {
            if ((m.from == "U" || m.to == "U") && !w.has_bimodule)
                fail(start_no, "space U requires the bimodule block first");
            m.c = Cochain(arity, w.rank_of(m.from), w.rank_of(m.to));
        }
        w.maps.emplace(mname, std::move(m));
    }

    void parse_element(int start_no, const std::string& ename) {
        if (w.elements.count(ename)) fail(start_no, "element '" + ename + "' defined twice");
        if (!w.has_algebra) fail(start_no, "element requires the algebra block first");
        NamedElement e;
        bool has_value = false;
        for (;;) {
            Stmt s = next("element");
            const std::string& kw = s.head[0];
            if (kw == "end") break;
            if (kw == "in") {
                if (has_value) fail(s.no, "'in' must precede the value line");
                if (s.head.size() != 2 || (s.head[1] != "T" && s.head[1] != "U"))
                    fail(s.no, "expected 'in T' or 'in U'");
                if (s.head[1] == "U" && !w.has_bimodule)
                    fail(s.no, "space U requires the bimodule block first");
                e.space = s.head[1];
            } else if (kw == "value") {
                if (has_value) fail(s.no, "duplicate value line");
                if (!s.has_value || s.head.size() != 1) fail(s.no, "expected 'value : values'");
                if (e.space == "U" && !w.has_bimodule)
                    fail(s.no, "space U requires the bimodule block first");
                e.v = LambdaVec(w.rank_of(e.space), 0);
                e.v.coeffs = polys(s.no, s.tail, w.rank_of(e.space), 0);
                has_value = true;
            } else {
                fail(s.no, "unknown keyword '" + kw + "' in element block");
            }
        }
        if (!has_value) e.v = LambdaVec(w.rank_of(e.space), 0);
        w.elements.emplace(ename, std::move(e));
    }

    Workspace run() {
        while (pos < lines.size()) {
            auto [no, text] = lines[pos++];
            std::vector<std::string> toks = split_ws(text);
            const std::string& kw = toks[0];
            if (kw == "algebra" && toks.size() == 1) {
                parse_algebra(no);
            } else if (kw == "bimodule" && toks.size() == 1) {
                parse_bimodule(no);
            } else if (kw == "cocycle" && toks.size() == 1) {
                parse_cocycle(no);
            } else if (kw == "map" && toks.size() == 2) {
                parse_map(no, toks[1]);
            } else if (kw == "element" && toks.size() == 2) {
                parse_element(no, toks[1]);
            } else {
                fail(no, "expected a block header (algebra | bimodule | cocycle | "
                         "map NAME | element NAME), got '" +
                             text + "'");
            }
        }
        if (!w.has_cocycle && w.has_algebra && w.has_bimodule)
            w.cocycle = Cochain(2, w.algebra.rank, w.bimodule.rank);
        return std::move(w);
    }
};

// ------------------------------------------------------------- JSON decoding

using nlohmann::json;

std::vector<int> parse_json_key(const std::string& path, const std::string& key, int arity,
                                int rank) {
    std::vector<std::string> toks = split_ws(key);
    if (static_cast<int>(toks.size()) != arity)
        throw ParseError(path + ": key '" + key + "' must hold " + std::to_string(arity) +
                         " index(es)");
    std::vector<int> out;
    for (const std::string& t : toks) {
        int v = 0;
        try {
            v = std::stoi(t);
        } catch (const std::exception&) {
            throw ParseError(path + ": bad index '" + t + "' in key '" + key + "'");
        }
        if (v < 1 || v > rank)
            throw ParseError(path + ": index " + t + " out of range 1.." +
                             std::to_string(rank));
        out.push_back(v - 1);
    }
    return out;
}

std::vector<MPoly> parse_json_polys(const std::string& path, const json& arr, int count,
                                    int nl) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != count)
        throw ParseError(path + ": expected an array of " + std::to_string(count) +
                         " polynomial string(s)");
    std::vector<MPoly> out;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ParseError(path + ": polynomial entries must be strings");
        try {
            out.push_back(MPoly::parse(v.get<std::string>(), nl));
        } catch (const std::exception& e) {
            throw ParseError(path + ": bad polynomial '" + v.get<std::string>() +
                             "': " + e.what());
        }
    }
    return out;
}

const json& need_json_object(const std::string& path, const json& j) {
    if (!j.is_object()) throw ParseError(path + ": must be a JSON object");
    return j;
}

std::string json_string_field(const std::string& path, const json& j, const std::string& key,
                              const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_string())
        throw ParseError(path + ": '" + key + "' must be a string");
    return j[key].get<std::string>();
}

int json_int_field(const std::string& path, const json& j, const std::string& key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer())
        throw ParseError(path + ": '" + key + "' must be an integer");
    return j[key].get<int>();
}

std::vector<std::string> parse_json_basis(const std::string& path, const json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError(path + ": 'basis' must be a non-empty array of names");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError(path + ": basis names must be strings");
        std::string n = v.get<std::string>();
        if (!seen.insert(n).second) throw ParseError(path + ": duplicate basis name '" + n + "'");
        names.push_back(std::move(n));
    }
    return names;
}

} // namespace

Workspace workspace_from_json(const json& j, const std::string& display_name) {
    if (!j.is_object()) throw ParseError(display_name + ": top level must be a JSON object");
    Workspace w;
    const std::string& dn = display_name;
    if (j.contains("algebra")) {
        const json& a = need_json_object(dn + ": algebra", j["algebra"]);
        w.algebra.basis = parse_json_basis(dn + ": algebra", a.value("basis", json::array()));
        w.algebra.rank = static_cast<int>(w.algebra.basis.size());
        const int rT = w.algebra.rank;
        w.algebra.S.assign(rT, std::vector<std::vector<MPoly>>(
                                   rT, std::vector<MPoly>(rT, MPoly(1))));
        const json jprod = a.value("product", json::object());
        for (const auto& [key, val] : jprod.items()) {
            std::vector<int> idx = parse_json_key(dn + ": algebra.product", key, 2, rT);
            w.algebra.S[idx[0]][idx[1]] = parse_json_polys(dn + ": algebra.product", val, rT, 1);
        }
        w.has_algebra = true;
    }
    if (j.contains("bimodule")) {
        if (!w.has_algebra) throw ParseError(dn + ": bimodule requires an algebra");
        const json& b = need_json_object(dn + ": bimodule", j["bimodule"]);
        w.bimodule.over = w.algebra;
        w.bimodule.basis = parse_json_basis(dn + ": bimodule", b.value("basis", json::array()));
        w.bimodule.rank = static_cast<int>(w.bimodule.basis.size());
        const int rT = w.algebra.rank, rU = w.bimodule.rank;
        w.bimodule.Lact.assign(rT, std::vector<std::vector<MPoly>>(
                                       rU, std::vector<MPoly>(rU, MPoly(1))));
        w.bimodule.Ract.assign(rU, std::vector<std::vector<MPoly>>(
                                       rT, std::vector<MPoly>(rU, MPoly(1))));
        const json jleft = b.value("left", json::object());
        for (const auto& [key, val] : jleft.items()) {
            std::vector<std::string> toks = split_ws(key);
            if (toks.size() != 2) throw ParseError(dn + ": bimodule.left keys need 2 indices");
            int i = parse_json_key(dn + ": bimodule.left", toks[0], 1, rT)[0];
            int u = parse_json_key(dn + ": bimodule.left", toks[1], 1, rU)[0];
            w.bimodule.Lact[i][u] = parse_json_polys(dn + ": bimodule.left", val, rU, 1);
        }
        const json jright = b.value("right", json::object());
        for (const auto& [key, val] : jright.items()) {
            std::vector<std::string> toks = split_ws(key);
            if (toks.size() != 2) throw ParseError(dn + ": bimodule.right keys need 2 indices");
            int u = parse_json_key(dn + ": bimodule.right", toks[0], 1, rU)[0];
            int i = parse_json_key(dn + ": bimodule.right", toks[1], 1, rT)[0];
            w.bimodule.Ract[u][i] = parse_json_polys(dn + ": bimodule.right", val, rU, 1);
        }
        w.has_bimodule = true;
    }
    if (w.has_algebra && w.has_bimodule)
        w.cocycle = Cochain(2, w.algebra.rank, w.bimodule.rank);
    if (j.contains("cocycle")) {
        if (!w.has_bimodule) throw ParseError(dn + ": cocycle requires algebra and bimodule");
        const int rT = w.algebra.rank, rU = w.bimodule.rank;
        for (const auto& [key, val] : need_json_object(dn + ": cocycle", j["cocycle"]).items()) {
            std::vector<int> idx = parse_json_key(dn + ": cocycle", key, 2, rT);
            w.cocycle.set_value(idx, parse_json_polys(dn + ": cocycle", val, rU, 1));
        }
        w.has_cocycle = true;
    }
    const json jmaps =
        j.contains("maps") ? need_json_object(dn + ": maps", j["maps"]) : json::object();
    for (const auto& [mname, mjv] : jmaps.items()) {
        if (!w.has_algebra) throw ParseError(dn + ": maps require an algebra");
        const json& mj = need_json_object(dn + ": maps." + mname, mjv);
        NamedMap m;
        m.from = json_string_field(dn + ": maps." + mname, mj, "from", "U");
        m.to = json_string_field(dn + ": maps." + mname, mj, "to", "T");
        const int arity = json_int_field(dn + ": maps." + mname, mj, "arity", 1);
        for (const std::string& sp : {m.from, m.to}) {
            if (sp != "T" && sp != "U")
                throw ParseError(dn + ": maps." + mname + ": unknown space '" + sp + "'");
            if (sp == "U" && !w.has_bimodule)
                throw ParseError(dn + ": maps." + mname + ": space U requires a bimodule");
        }
        if (arity < 0 || arity > 4)
            throw ParseError(dn + ": maps." + mname + ": arity must be between 0 and 4");
        m.c = Cochain(arity, w.rank_of(m.from), w.rank_of(m.to));
        const json jvals = mj.value("values", json::object());
        for (const auto& [key, val] : jvals.items()) {
            std::vector<int> idx =
                parse_json_key(dn + ": maps." + mname, key, arity, m.c.src_rank);
            m.c.set_value(idx, parse_json_polys(dn + ": maps." + mname, val, m.c.tgt_rank,
                                                std::max(arity - 1, 0)));
        }
        w.maps.emplace(mname, std::move(m));
    }
    const json jelems =
        j.contains("elements") ? need_json_object(dn + ": elements", j["elements"]) : json::object();
    for (const auto& [ename, ejv] : jelems.items()) {
        if (!w.has_algebra) throw ParseError(dn + ": elements require an algebra");
        const json& ej = need_json_object(dn + ": elements." + ename, ejv);
        NamedElement e;
        e.space = json_string_field(dn + ": elements." + ename, ej, "in", "T");
        if (e.space != "T" && e.space != "U")
            throw ParseError(dn + ": elements." + ename + ": unknown space '" + e.space + "'");
        if (e.space == "U" && !w.has_bimodule)
            throw ParseError(dn + ": elements." + ename + ": space U requires a bimodule");
        e.v = LambdaVec(w.rank_of(e.space), 0);
        if (ej.contains("value"))
            e.v.coeffs = parse_json_polys(dn + ": elements." + ename, ej["value"],
                                          w.rank_of(e.space), 0);
        w.elements.emplace(ename, std::move(e));
    }
    return w;
}

Workspace parse_workspace(const std::string& content, const std::string& display_name) {
    size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        json j;
        try {
            j = json::parse(content);
        } catch (const json::exception& e) {
            throw ParseError(display_name + ": " + e.what());
        }
        try {
            return workspace_from_json(j, display_name);
        } catch (const json::exception& e) {
            throw ParseError(display_name + ": " + e.what());
        }
    }
    TextParser p(content, display_name);
    return p.run();
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_workspace(buf.str(), path);
}

// ------------------------------------------------------------------ encoding

int Workspace::rank_of(const std::string& space) const {
    if (space == "T") return algebra.rank;
    if (space == "U") return bimodule.rank;
    throw ParseError("unknown space '" + space + "' (use T or U)");
}

const std::vector<std::string>& Workspace::names_of(const std::string& space) const {
    if (space == "T") return algebra.basis;
    if (space == "U") return bimodule.basis;
    throw ParseError("unknown space '" + space + "' (use T or U)");
}

SumSpace Workspace::sum() const {
    if (!has_algebra || !has_bimodule)
        throw ParseError("workspace needs algebra and bimodule blocks");
    return SumSpace(algebra, bimodule, cocycle);
}

const NamedMap& Workspace::map_named(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw ParseError("no map named '" + name + "' in workspace");
    return it->second;
}

const NamedElement& Workspace::element_named(const std::string& name) const {
    auto it = elements.find(name);
    if (it == elements.end()) throw ParseError("no element named '" + name + "' in workspace");
    return it->second;
}

namespace {

bool all_zero(const std::vector<MPoly>& v) {
    for (const MPoly& p : v)
        if (!p.is_zero()) return false;
    return true;
}

std::string poly_list(const std::vector<MPoly>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " ; " : "") + v[i].str();
    return s;
}

json poly_array(const std::vector<MPoly>& v) {
    json a = json::array();
    for (const MPoly& p : v) a.push_back(p.str());
    return a;
}

} // namespace

std::string workspace_to_text(const Workspace& w) {
    std::ostringstream out;
    if (w.has_algebra) {
        out << "algebra\n";
        out << "basis";
        for (const std::string& n : w.algebra.basis) out << " " << n;
        out << "\n";
        for (int i = 0; i < w.algebra.rank; ++i)
            for (int j = 0; j < w.algebra.rank; ++j)
                if (!all_zero(w.algebra.S[i][j]))
                    out << "product " << i + 1 << " " << j + 1 << " : "
                        << poly_list(w.algebra.S[i][j]) << "\n";
        out << "end\n";
    }
    if (w.has_bimodule) {
        out << "\nbimodule\n";
        out << "basis";
        for (const std::string& n : w.bimodule.basis) out << " " << n;
        out << "\n";
        for (int i = 0; i < w.algebra.rank; ++i)
            for (int a = 0; a < w.bimodule.rank; ++a)
                if (!all_zero(w.bimodule.Lact[i][a]))
                    out << "left " << i + 1 << " " << a + 1 << " : "
                        << poly_list(w.bimodule.Lact[i][a]) << "\n";
        for (int a = 0; a < w.bimodule.rank; ++a)
            for (int i = 0; i < w.algebra.rank; ++i)
                if (!all_zero(w.bimodule.Ract[a][i]))
                    out << "right " << a + 1 << " " << i + 1 << " : "
                        << poly_list(w.bimodule.Ract[a][i]) << "\n";
        out << "end\n";
    }
    if (w.has_cocycle) {
        out << "\ncocycle\n";
        for (const auto& [key, val] : w.cocycle.table)
            out << "value " << key[0] + 1 << " " << key[1] + 1 << " : " << poly_list(val)
                << "\n";
        out << "end\n";
    }
    for (const auto& [name, m] : w.maps) {
        out << "\nmap " << name << "\n";
        out << "from " << m.from << "\n";
        out << "to " << m.to << "\n";
        out << "arity " << m.c.n << "\n";
        for (const auto& [key, val] : m.c.table) {
            out << "value";
            for (int k : key) out << " " << k + 1;
            out << " : " << poly_list(val) << "\n";
        }
        out << "end\n";
    }
    for (const auto& [name, e] : w.elements) {
        out << "\nelement " << name << "\n";
        out << "in " << e.space << "\n";
        out << "value : " << poly_list(e.v.coeffs) << "\n";
        out << "end\n";
    }
    return out.str();
}

json cochain_values_json(const Cochain& c) {
    json values = json::object();
    for (const auto& [key, val] : c.table) {
        std::string k;
        for (size_t i = 0; i < key.size(); ++i) k += (i ? " " : "") + std::to_string(key[i] + 1);
        values[k] = poly_array(val);
    }
    return values;
}

json workspace_to_json(const Workspace& w) {
    json j = json::object();
    if (w.has_algebra) {
        json a = json::object();
        a["basis"] = w.algebra.basis;
        json prod = json::object();
        for (int i = 0; i < w.algebra.rank; ++i)
            for (int k = 0; k < w.algebra.rank; ++k)
                if (!all_zero(w.algebra.S[i][k]))
                    prod[std::to_string(i + 1) + " " + std::to_string(k + 1)] =
                        poly_array(w.algebra.S[i][k]);
        a["product"] = prod;
        j["algebra"] = a;
    }
    if (w.has_bimodule) {
        json b = json::object();
        b["basis"] = w.bimodule.basis;
        json left = json::object(), right = json::object();
        for (int i = 0; i < w.algebra.rank; ++i)
            for (int a = 0; a < w.bimodule.rank; ++a)
                if (!all_zero(w.bimodule.Lact[i][a]))
                    left[std::to_string(i + 1) + " " + std::to_string(a + 1)] =
                        poly_array(w.bimodule.Lact[i][a]);
        for (int a = 0; a < w.bimodule.rank; ++a)
            for (int i = 0; i < w.algebra.rank; ++i)
                if (!all_zero(w.bimodule.Ract[a][i]))
                    right[std::to_string(a + 1) + " " + std::to_string(i + 1)] =
                        poly_array(w.bimodule.Ract[a][i]);
        b["left"] = left;
        b["right"] = right;
        j["bimodule"] = b;
    }
    if (w.has_cocycle) j["cocycle"] = cochain_values_json(w.cocycle);
    if (!w.maps.empty()) {
        json ms = json::object();
        for (const auto& [name, m] : w.maps) {
            json mj = json::object();
            mj["from"] = m.from;
            mj["to"] = m.to;
            mj["arity"] = m.c.n;
            mj["values"] = cochain_values_json(m.c);
            ms[name] = mj;
        }
        j["maps"] = ms;
    }
    if (!w.elements.empty()) {
        json es = json::object();
        for (const auto& [name, e] : w.elements) {
            json ej = json::object();
            ej["in"] = e.space;
            ej["value"] = poly_array(e.v.coeffs);
            es[name] = ej;
        }
        j["elements"] = es;
    }
    return j;
}

std::string cochain_to_text(const Cochain& c, const std::string& name,
                            const std::vector<std::string>& src_names,
                            const std::vector<std::string>& tgt_names) {
    std::ostringstream out;
    bool any = false;
    for (const auto& [key, val] : c.table) {
        std::string args;
        for (size_t i = 0; i < key.size(); ++i) args += (i ? "," : "") + src_names[key[i]];
        std::string sum;
        for (int k = 0; k < c.tgt_rank; ++k) {
            if (val[k].is_zero()) continue;
            if (!sum.empty()) sum += " + ";
            sum += "(" + val[k].str() + ") " + tgt_names[k];
        }
        if (sum.empty()) continue;
        out << name << "(" << args << ") = " << sum << "\n";
        any = true;
    }
    if (!any) out << name << " = 0\n";
    return out.str();
}

ValidationReport validate_workspace(const Workspace& w) {
    ValidationReport r;
    if (w.has_algebra) r.algebra = check_associativity(w.algebra);
    if (w.has_bimodule) r.bimodule = check_bimodule(w.bimodule);
    if (w.has_algebra && w.has_bimodule)
        r.cocycle = is_two_cocycle(ComplexCtx{w.algebra, w.bimodule}, w.cocycle);
    r.ok = r.algebra.ok && r.bimodule.ok && r.cocycle.ok;
    return r;
}

} // namespace ccalg
