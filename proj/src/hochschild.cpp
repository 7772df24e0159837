#include <ccalg/hochschild.hpp>

#include <stdexcept>

namespace ccalg {

// -------------------------------------------------------------------- Cochain

bool Cochain::is_zero() const {
    for (const auto& [args, v] : table)
        for (const auto& c : v)
            if (!c.is_zero()) return false;
    return true;
}

std::vector<MPoly> Cochain::value(const std::vector<int>& args) const {
    auto it = table.find(args);
    if (it != table.end()) return it->second;
    return std::vector<MPoly>(tgt_rank, MPoly(nl()));
}

void Cochain::set_value(const std::vector<int>& args, std::vector<MPoly> v) {
    if (static_cast<int>(args.size()) != n)
        throw std::invalid_argument("Cochain::set_value: wrong tuple size");
    if (static_cast<int>(v.size()) != tgt_rank)
        throw std::invalid_argument("Cochain::set_value: wrong value rank");
    bool zero = true;
    for (const auto& c : v)
        if (!c.is_zero()) { zero = false; break; }
    if (zero) {
        table.erase(args);
    } else {
        table[args] = std::move(v);
    }
}

void Cochain::add_value(const std::vector<int>& args, const std::vector<MPoly>& v) {
    std::vector<MPoly> cur = value(args);
    for (size_t k = 0; k < cur.size(); ++k) cur[k] += v[k];
    set_value(args, std::move(cur));
}

Cochain Cochain::from_element(const Element& v, int src_rank) {
    if (v.nl() != 0)
        throw std::invalid_argument("Cochain::from_element: element must depend on D only");
    Cochain f(0, src_rank, v.rank());
    f.set_value({}, v.coeffs);
    return f;
}

Element Cochain::as_element() const {
    if (n != 0) throw std::invalid_argument("Cochain::as_element: arity is not 0");
    Element v(tgt_rank, 0);
    v.coeffs = value({});
    return v;
}

Cochain Cochain::identity(int rank) {
    Cochain f(1, rank, rank);
    for (int a = 0; a < rank; ++a) {
        std::vector<MPoly> v(rank, MPoly(0));
        v[a] = MPoly::constant(1, 0);
        f.set_value({a}, v);
    }
    return f;
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (n != o.n || src_rank != o.src_rank || tgt_rank != o.tgt_rank)
        throw std::invalid_argument("Cochain: shape mismatch in addition");
    Cochain r = *this;
    for (const auto& [args, v] : o.table) r.add_value(args, v);
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& [args, v] : r.table)
        for (auto& c : v) c = -c;
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator*(const Rat& c) const {
    Cochain r(n, src_rank, tgt_rank);
    if (c == 0) return r;
    r.table = table;
    for (auto& [args, v] : r.table)
        for (auto& x : v) x = x * c;
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    if (n != o.n || src_rank != o.src_rank || tgt_rank != o.tgt_rank) return false;
    return (*this - o).is_zero();
}

int Cochain::max_entry_degree() const {
    int g = 0;
    for (const auto& [args, v] : table)
        for (const auto& c : v) g = std::max(g, c.total_degree());
    return g;
}

// ----------------------------------------------------------------- evaluation

namespace {

// Move the table variables L1..L{cnt} of `p` up to L{base+1}..L{base+cnt},
// widening to `width` variables.
MPoly relabel_above(const MPoly& p, int base, int width) {
    MPoly r(width);
    for (const auto& [e, c] : p.terms()) {
        MPoly::Expo w(width + 1, 0);
        w[0] = e[0];
        for (size_t v = 1; v < e.size(); ++v) w[base + static_cast<int>(v)] = e[v];
        r += MPoly::monomial(c, w);
    }
    return r;
}

} // namespace

LambdaVec evaluate(const Cochain& f, const std::vector<LambdaVec>& args,
                   const std::vector<MPoly>& forms, int ambient_nl) {
    const int n = f.n;
    if (static_cast<int>(args.size()) != n)
        throw std::invalid_argument("evaluate: wrong argument count");
    if (static_cast<int>(forms.size()) != (n > 0 ? n - 1 : 0))
        throw std::invalid_argument("evaluate: wrong subscript count");
    for (const auto& s : forms) {
        if (s.nl() != ambient_nl || s.depends_on(0))
            throw std::invalid_argument("evaluate: bad subscript form");
    }
    for (const auto& a : args)
        if (a.rank() != f.src_rank || a.nl() != ambient_nl)
            throw std::invalid_argument("evaluate: bad argument vector");

    LambdaVec out(f.tgt_rank, ambient_nl);
    if (n == 0) {
        std::vector<MPoly> v = f.value({});
        for (int k = 0; k < f.tgt_rank; ++k) out.coeffs[k] = v[k].extend_vars(ambient_nl);
        return out;
    }

    MPoly sum_forms(ambient_nl);
    for (const auto& s : forms) sum_forms += s;
    const MPoly last_shift = MPoly::var_D(ambient_nl) + sum_forms;
    const int width = ambient_nl + (n - 1);

    for (const auto& [tuple, val] : f.table) {
        MPoly factor = MPoly::constant(1, ambient_nl);
        bool dead = false;
        for (int j = 0; j < n; ++j) {
            const MPoly& c = args[j].coeffs[tuple[j]];
            if (c.is_zero()) { dead = true; break; }
            MPoly cj = (j < n - 1) ? c.subst_D(-forms[j]) : c.subst_D(last_shift);
            if (cj.is_zero()) { dead = true; break; }
            factor *= cj;
        }
        if (dead || factor.is_zero()) continue;
        for (int k = 0; k < f.tgt_rank; ++k) {
            if (val[k].is_zero()) continue;
            MPoly tv = relabel_above(val[k], ambient_nl, width);
            for (int j = 0; j < n - 1; ++j)
                tv = tv.subst_L(ambient_nl + j + 1, forms[j].extend_vars(width));
            out.coeffs[k] += factor * tv.truncate_vars(ambient_nl);
        }
    }
    return out;
}

LambdaVec evaluate(const Cochain& f, const std::vector<LambdaVec>& args, int var_base,
                   int ambient_nl) {
    std::vector<MPoly> forms;
    for (int j = 0; j < (f.n > 0 ? f.n - 1 : 0); ++j)
        forms.push_back(MPoly::var_L(var_base + j, ambient_nl));
    return evaluate(f, args, forms, ambient_nl);
}

// --------------------------------------------------------------- differential

Cochain hochschild_delta(const ComplexCtx& ctx, const Cochain& f) {
    const int rs = ctx.alg.rank;
    const int rt = ctx.coeff.rank;
    if (f.src_rank != rs || f.tgt_rank != rt)
        throw std::invalid_argument("hochschild_delta: cochain does not live on this complex");
    const int n = f.n;
    Cochain out(n + 1, rs, rt);

    if (n == 0) {
        const Element v = f.as_element();
        for (int i = 0; i < rs; ++i) {
            // Left term at the output constraint (subscript -> -D), right term
            // at the empty subscript sum (-> 0).
            LambdaVec l = left_action(ctx.coeff, LambdaVec::unit(rs, i, 1), v.extend_vars(1),
                                      MPoly::var_L(1, 1));
            LambdaVec lv(rt, 0);
            for (int k = 0; k < rt; ++k)
                lv.coeffs[k] = l.coeffs[k].subst_L(1, -MPoly::var_D(1)).truncate_vars(0);
            LambdaVec rv =
                right_action(ctx.coeff, v, LambdaVec::unit(rs, i, 0), MPoly::constant(0, 0));
            out.add_value({i}, (lv - rv).coeffs);
        }
        return out;
    }

    const int nl = n; // ambient: the n explicit subscripts of the result
    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> cur(n + 1, 0);
        for (;;) {
            tuples.push_back(cur);
            int pos = n;
            while (pos >= 0 && ++cur[pos] == rs) cur[pos--] = 0;
            if (pos < 0) break;
        }
        if (rs == 0) tuples.clear();
    }

    for (const auto& tuple : tuples) {
        LambdaVec acc(rt, nl);

        // Left-action term.
        {
            std::vector<LambdaVec> as;
            std::vector<MPoly> fs;
            for (int j = 1; j <= n; ++j) as.push_back(LambdaVec::unit(rs, tuple[j], nl));
            for (int j = 2; j <= n; ++j) fs.push_back(MPoly::var_L(j, nl));
            LambdaVec inner = evaluate(f, as, fs, nl);
            acc += left_action(ctx.coeff, LambdaVec::unit(rs, tuple[0], nl), inner,
                               MPoly::var_L(1, nl));
        }

        // Insertion terms.
        for (int j = 1; j <= n; ++j) {
            std::vector<LambdaVec> as;
            std::vector<MPoly> fs;
            for (int s = 1; s <= n + 1; ++s) {
                if (s == j) {
                    as.push_back(lambda_product(ctx.alg, LambdaVec::unit(rs, tuple[j - 1], nl),
                                                LambdaVec::unit(rs, tuple[j], nl),
                                                MPoly::var_L(j, nl)));
                    ++s; // consumed two inputs
                } else {
                    as.push_back(LambdaVec::unit(rs, tuple[s - 1], nl));
                }
            }
            for (int s = 1; s <= n - 1; ++s) {
                if (s == j) {
                    fs.push_back(MPoly::var_L(j, nl) + MPoly::var_L(j + 1, nl));
                } else if (s < j) {
                    fs.push_back(MPoly::var_L(s, nl));
                } else {
                    fs.push_back(MPoly::var_L(s + 1, nl));
                }
            }
            LambdaVec term = evaluate(f, as, fs, nl);
            if (j % 2 == 1) {
                acc -= term;
            } else {
                acc += term;
            }
        }

        // Right-action term.
        {
            std::vector<LambdaVec> as;
            std::vector<MPoly> fs;
            for (int j = 0; j < n; ++j) as.push_back(LambdaVec::unit(rs, tuple[j], nl));
            for (int j = 1; j <= n - 1; ++j) fs.push_back(MPoly::var_L(j, nl));
            LambdaVec inner = evaluate(f, as, fs, nl);
            MPoly total(nl);
            for (int j = 1; j <= n; ++j) total += MPoly::var_L(j, nl);
            LambdaVec term =
                right_action(ctx.coeff, inner, LambdaVec::unit(rs, tuple[n], nl), total);
            if ((n + 1) % 2 == 1) {
                acc -= term;
            } else {
                acc += term;
            }
        }

        out.add_value(tuple, acc.coeffs);
    }
    return out;
}

CheckResult first_nonzero_witness(const Cochain& residual,
                                  const std::vector<std::string>& src_names,
                                  const std::vector<std::string>& tgt_names,
                                  const std::string& what) {
    for (const auto& [args, v] : residual.table) {
        for (int k = 0; k < residual.tgt_rank; ++k) {
            if (v[k].is_zero()) continue;
            std::string w = what + " fails at (";
            for (size_t s = 0; s < args.size(); ++s) w += (s ? "," : "") + src_names[args[s]];
            w += "); residual coefficient of " + tgt_names[k] + " = " + v[k].str();
            return {false, w};
        }
    }
    return {};
}

CheckResult is_two_cocycle(const ComplexCtx& ctx, const Cochain& H) {
    if (H.n != 2) throw std::invalid_argument("is_two_cocycle: arity must be 2");
    return first_nonzero_witness(hochschild_delta(ctx, H), ctx.alg.basis, ctx.coeff.basis,
                                 "cocycle condition");
}

// ---------------------------------------------------------------- composition

Cochain compose_at(const Cochain& f, const Cochain& g, int i) {
    const int m = f.n, n = g.n;
    if (i < 1 || i > m) throw std::invalid_argument("compose_at: slot out of range");
    if (g.tgt_rank != f.src_rank)
        throw std::invalid_argument("compose_at: inner target does not feed outer source");
    if (n > 0 && g.src_rank != f.src_rank)
        throw std::invalid_argument("compose_at: mixed argument spaces are not supported");

    const int M = m + n - 1;
    const int E = M > 0 ? M - 1 : 0;
    const bool need_temp = (n == 0 && i == m);
    const int W = E + (need_temp ? 1 : 0);
    const int rs = f.src_rank;

    Cochain out(M, rs, f.tgt_rank);

    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> cur(M, 0);
        if (M == 0) {
            tuples.push_back({});
        } else if (rs > 0) {
            for (;;) {
                tuples.push_back(cur);
                int pos = M - 1;
                while (pos >= 0 && ++cur[pos] == rs) cur[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }

    for (const auto& tuple : tuples) {
        // Inner evaluation: g applied to its block of the tuple.
        LambdaVec inner(g.tgt_rank, W);
        {
            std::vector<LambdaVec> as;
            std::vector<MPoly> fs;
            for (int s = 0; s < n; ++s) as.push_back(LambdaVec::unit(rs, tuple[i - 1 + s], W));
            for (int s = 0; s < n - 1; ++s) fs.push_back(MPoly::var_L(i + s, W));
            inner = evaluate(g, as, fs, W);
        }

        // Outer arguments and subscript forms.
        std::vector<LambdaVec> as;
        std::vector<MPoly> fs;
        for (int j = 1; j <= m; ++j) {
            if (j < i) {
                as.push_back(LambdaVec::unit(rs, tuple[j - 1], W));
            } else if (j == i) {
                as.push_back(inner);
            } else {
                as.push_back(LambdaVec::unit(rs, tuple[j + n - 2], W));
            }
        }
        for (int j = 1; j <= m - 1; ++j) {
            if (j < i) {
                // When the inner factor has arity 0 at the last slot, index
                // m-1 equals W and names the scratch subscript resolved below.
                fs.push_back(MPoly::var_L(j, W));
            } else if (j == i) {
                MPoly s(W);
                for (int t = 0; t < n; ++t) s += MPoly::var_L(i + t, W);
                fs.push_back(s);
            } else {
                fs.push_back(MPoly::var_L(j + n - 1, W));
            }
        }

        LambdaVec val = evaluate(f, as, fs, W);

        if (need_temp) {
            MPoly target = -MPoly::var_D(W);
            for (int k = 1; k <= E; ++k) target -= MPoly::var_L(k, W);
            for (auto& c : val.coeffs) c = c.subst_L(W, target).truncate_vars(E);
        }
        out.add_value(tuple, val.coeffs);
    }
    return out;
}

Cochain circle_product(const Cochain& f, const Cochain& g) {
    const int m = f.n, n = g.n;
    Cochain out(m + n - 1, f.src_rank, f.tgt_rank);
    for (int i = 1; i <= m; ++i) {
        Cochain term = compose_at(f, g, i);
        if (((i - 1) * (n - 1)) & 1) {
            out = out - term;
        } else {
            out = out + term;
        }
    }
    return out;
}

Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g) {
    const int m = f.n, n = g.n;
    Cochain fg = circle_product(f, g);
    Cochain gf = circle_product(g, f);
    if (((m - 1) * (n - 1)) & 1) return fg + gf;
    return fg - gf;
}

// ------------------------------------------------------------------ semidirect

ConformalAlgebra semidirect_twisted(const ConformalAlgebra& T, const ConformalBimodule& U,
                                    const Cochain& H) {
    if (H.n != 2 || H.src_rank != T.rank || H.tgt_rank != U.rank)
        throw std::invalid_argument("semidirect_twisted: H must be an arity-2 cochain T -> U");
    const int rT = T.rank, rU = U.rank, rW = rT + rU;
    ConformalAlgebra W;
    W.rank = rW;
    W.basis = T.basis;
    W.basis.insert(W.basis.end(), U.basis.begin(), U.basis.end());
    W.S.assign(rW, std::vector<std::vector<MPoly>>(rW, std::vector<MPoly>(rW, MPoly(1))));
    for (int i = 0; i < rT; ++i)
        for (int j = 0; j < rT; ++j) {
            for (int k = 0; k < rT; ++k) W.S[i][j][k] = T.S[i][j][k];
            std::vector<MPoly> h = H.value({i, j});
            for (int b = 0; b < rU; ++b) W.S[i][j][rT + b] = h[b];
        }
    for (int i = 0; i < rT; ++i)
        for (int a = 0; a < rU; ++a)
            for (int b = 0; b < rU; ++b) W.S[i][rT + a][rT + b] = U.Lact[i][a][b];
    for (int a = 0; a < rU; ++a)
        for (int j = 0; j < rT; ++j)
            for (int b = 0; b < rU; ++b) W.S[rT + a][j][rT + b] = U.Ract[a][j][b];
    return W;
}

} // namespace ccalg
