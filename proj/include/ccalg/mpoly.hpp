#pragma once

// ============================================================================
// MPoly: exact multivariate polynomials over the rationals in the variable D
// (the module generator, written ∂ in the math) and L1..Ln (lambda slots).
//
// Representation: a canonical term map keyed by exponent vectors
// (exps[0] = D exponent, exps[1..nl] = L1..Lnl exponents) with no zero
// coefficients stored, so operator== is structural equality.
// ============================================================================

#include <ccalg/rat.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccalg {

class MPoly {
public:
    // Exponent vector: index 0 is D, indices 1..nl are L1..Lnl.
    using Expo = std::vector<int>;
    using TermMap = std::map<Expo, Rat>;

    MPoly() : nl_(0) {}
    explicit MPoly(int nl) : nl_(nl) {
        if (nl < 0) throw std::invalid_argument("MPoly: negative variable count");
    }

    static MPoly zero(int nl) { return MPoly(nl); }
    static MPoly constant(const Rat& c, int nl);
    static MPoly var_D(int nl);
    // 1-based: var_L(1, nl) is L1.
    static MPoly var_L(int i, int nl);
    static MPoly monomial(const Rat& c, const Expo& e);

    int nl() const { return nl_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant term (zero if absent).
    Rat constant_term() const;
    const TermMap& terms() const { return terms_; }

    // Total degree across all variables; -1 for the zero polynomial.
    int total_degree() const;
    // Largest exponent of variable v (0 = D, i = Li); 0 if absent.
    int degree_in(int v) const;
    bool depends_on(int v) const { return degree_in(v) > 0; }

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }
    MPoly operator*(const Rat& c) const;
    bool operator==(const MPoly& o) const { return nl_ == o.nl_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }
    // Total order (for use as container key): variable count, then term map.
    bool operator<(const MPoly& o) const;

    MPoly pow(int e) const;

    // Substitute L_i (1-based) by the polynomial r (same variable set).
    MPoly subst_L(int i, const MPoly& r) const;
    // Substitute D by the polynomial r.
    MPoly subst_D(const MPoly& r) const;
    // D -> D + s ("shift" along the module action).
    MPoly shift_D(const MPoly& s) const;
    // Reinterpret in a wider variable set (new_nl >= nl); values unchanged.
    MPoly extend_vars(int new_nl) const;
    // Drop trailing L-variables the polynomial does not depend on.
    // Throws if any dropped variable actually occurs.
    MPoly truncate_vars(int new_nl) const;

    // Evaluate at D = d, Li = ls[i-1] (ls.size() == nl).
    Rat eval(const Rat& d, const std::vector<Rat>& ls) const;

    // Canonical text form: terms in descending deglex order (D before L1 < L2
    // < ...), e.g. "D^2 + 2 * D * L1 + L1^2" or "-1/2 * L2".
    std::string str() const;
    // Whitespace-insensitive parser of the same grammar.
    static MPoly parse(const std::string& text, int nl);

private:
    int nl_;
    TermMap terms_;

    void add_term(const Expo& e, const Rat& c);
    void check_compat(const MPoly& o) const;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

} // namespace ccalg
