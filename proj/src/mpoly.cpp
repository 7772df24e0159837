#include <ccalg/mpoly.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ccalg {

// ------------------------------------------------------------- construction

MPoly MPoly::constant(const Rat& c, int nl) {
    MPoly p(nl);
    if (c != 0) p.terms_[Expo(nl + 1, 0)] = c;
    return p;
}

MPoly MPoly::var_D(int nl) {
    MPoly p(nl);
    Expo e(nl + 1, 0);
    e[0] = 1;
    p.terms_[e] = 1;
    return p;
}

MPoly MPoly::var_L(int i, int nl) {
    if (i < 1 || i > nl) throw std::invalid_argument("MPoly::var_L: index out of range");
    MPoly p(nl);
    Expo e(nl + 1, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
}

MPoly MPoly::monomial(const Rat& c, const Expo& e) {
    if (e.empty()) throw std::invalid_argument("MPoly::monomial: empty exponent vector");
    MPoly p(static_cast<int>(e.size()) - 1);
    if (c != 0) p.terms_[e] = c;
    return p;
}

// ------------------------------------------------------------------ queries

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const Expo& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat MPoly::constant_term() const {
    auto it = terms_.find(Expo(nl_ + 1, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

int MPoly::total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        best = std::max(best, d);
    }
    return best;
}

int MPoly::degree_in(int v) const {
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[v]);
    return best;
}

bool MPoly::operator<(const MPoly& o) const {
    if (nl_ != o.nl_) return nl_ < o.nl_;
    return terms_ < o.terms_;
}

// --------------------------------------------------------------- arithmetic

void MPoly::add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MPoly::check_compat(const MPoly& o) const {
    if (nl_ != o.nl_)
        throw std::invalid_argument("MPoly: mixing polynomials over different variable sets");
}

MPoly MPoly::operator-() const {
    MPoly r(nl_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    check_compat(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    check_compat(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const { MPoly r = *this; r += o; return r; }
MPoly MPoly::operator-(const MPoly& o) const { MPoly r = *this; r -= o; return r; }

MPoly MPoly::operator*(const MPoly& o) const {
    check_compat(o);
    MPoly r(nl_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Expo e(nl_ + 1);
            for (int v = 0; v <= nl_; ++v) e[v] = e1[v] + e2[v];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MPoly MPoly::operator*(const Rat& c) const {
    MPoly r(nl_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
    MPoly acc = constant(1, nl_);
    MPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// ------------------------------------------------------------- substitution

MPoly MPoly::subst_L(int i, const MPoly& r) const {
    if (i < 1 || i > nl_) throw std::invalid_argument("MPoly::subst_L: index out of range");
    check_compat(r);
    // Group terms by the exponent of L_i, then Horner-expand powers of r.
    int top = degree_in(i);
    std::vector<MPoly> by_deg(top + 1, MPoly(nl_));
    for (const auto& [e, c] : terms_) {
        Expo rest = e;
        int k = rest[i];
        rest[i] = 0;
        by_deg[k].add_term(rest, c);
    }
    MPoly acc = by_deg[top];
    for (int k = top - 1; k >= 0; --k) acc = acc * r + by_deg[k];
    return acc;
}

MPoly MPoly::subst_D(const MPoly& r) const {
    check_compat(r);
    int top = degree_in(0);
    std::vector<MPoly> by_deg(top + 1, MPoly(nl_));
    for (const auto& [e, c] : terms_) {
        Expo rest = e;
        int k = rest[0];
        rest[0] = 0;
        by_deg[k].add_term(rest, c);
    }
    MPoly acc = by_deg[top];
    for (int k = top - 1; k >= 0; --k) acc = acc * r + by_deg[k];
    return acc;
}

MPoly MPoly::shift_D(const MPoly& s) const {
    return subst_D(var_D(nl_) + s);
}

MPoly MPoly::extend_vars(int new_nl) const {
    if (new_nl < nl_) throw std::invalid_argument("MPoly::extend_vars: shrinking variable set");
    MPoly r(new_nl);
    for (const auto& [e, c] : terms_) {
        Expo w(new_nl + 1, 0);
        std::copy(e.begin(), e.end(), w.begin());
        r.terms_[w] = c;
    }
    return r;
}

MPoly MPoly::truncate_vars(int new_nl) const {
    if (new_nl > nl_) throw std::invalid_argument("MPoly::truncate_vars: growing variable set");
    MPoly r(new_nl);
    for (const auto& [e, c] : terms_) {
        for (int v = new_nl + 1; v <= nl_; ++v)
            if (e[v] != 0)
                throw std::invalid_argument("MPoly::truncate_vars: dropped variable occurs");
        Expo w(e.begin(), e.begin() + new_nl + 1);
        r.terms_[w] = c;
    }
    return r;
}

Rat MPoly::eval(const Rat& d, const std::vector<Rat>& ls) const {
    if (static_cast<int>(ls.size()) != nl_)
        throw std::invalid_argument("MPoly::eval: wrong number of L values");
    auto ipow = [](const Rat& b, int e) {
        Rat acc = 1;
        for (int k = 0; k < e; ++k) acc *= b;
        return acc;
    };
    Rat total = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c * ipow(d, e[0]);
        for (int v = 1; v <= nl_; ++v) t *= ipow(ls[v - 1], e[v]);
        total += t;
    }
    return total;
}

// ----------------------------------------------------------------- printing

namespace {

// Descending degree-lexicographic order with D major, then L1, L2, ...
bool deglex_greater(const MPoly::Expo& a, const MPoly::Expo& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    return a > b;
}

std::string monomial_str(const MPoly::Expo& e) {
    std::string s;
    auto piece = [&](const std::string& name, int exp) {
        if (exp == 0) return;
        if (!s.empty()) s += " * ";
        s += name;
        if (exp > 1) s += "^" + std::to_string(exp);
    };
    piece("D", e[0]);
    for (size_t v = 1; v < e.size(); ++v) piece("L" + std::to_string(v), e[static_cast<int>(v)]);
    return s;
}

} // namespace

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Expo, Rat>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(),
              [](const auto& x, const auto& y) { return deglex_greater(x.first, y.first); });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        Rat a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono = monomial_str(e);
        if (mono.empty()) {
            out += rat_to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += rat_to_string(a) + " * " + mono;
        }
    }
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(i) +
                                    ": " + what + " in \"" + s + "\"");
    }

    Int integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected digits");
        return Int(s.substr(start, i - start));
    }

    // num or num/den
    Rat rational() {
        Int num = integer();
        skip_ws();
        if (i < s.size() && s[i] == '/') {
            ++i;
            Int den = integer();
            if (den == 0) fail("zero denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    int exponent() {
        if (eat('^')) {
            Int e = integer();
            if (e < 0 || e > 4096) fail("exponent out of range");
            return static_cast<int>(e);
        }
        return 1;
    }
};

} // namespace

MPoly MPoly::parse(const std::string& text, int nl) {
    Cursor c{text};
    MPoly result(nl);
    if (c.done()) c.fail("empty polynomial");
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        if (c.eat('+')) {
            // explicit leading/joining plus
        } else if (c.eat('-')) {
            sign = -1;
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        // a term: factors joined by '*'; each factor is a rational or a variable power
        Rat coeff = sign;
        Expo expo(nl + 1, 0);
        bool any_factor = false;
        for (;;) {
            char p = c.peek();
            if (std::isdigit(static_cast<unsigned char>(p))) {
                coeff *= c.rational();
                any_factor = true;
            } else if (p == 'D') {
                ++c.i;
                expo[0] += c.exponent();
                any_factor = true;
            } else if (p == 'L') {
                ++c.i;
                Int idx = c.integer();
                if (idx < 1 || idx > nl) c.fail("L-variable index out of range");
                expo[static_cast<int>(idx)] += c.exponent();
                any_factor = true;
            } else {
                c.fail("expected a coefficient or variable");
            }
            if (!c.eat('*')) break;
        }
        if (!any_factor) c.fail("empty term");
        result.add_term(expo, coeff);
        first = false;
    }
    return result;
}

} // namespace ccalg
