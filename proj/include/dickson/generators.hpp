#ifndef DICKSON_GENERATORS_HPP
#define DICKSON_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "steenrod.hpp"

namespace dickson {

/// Index set of a Mui class M_{n;s_1..s_m}: 0 <= s_1 < ... < s_m <= n-1.
struct MuiIndex {
    std::vector<int> s;

    MuiIndex() = default;
    explicit MuiIndex(std::vector<int> s_) : s(std::move(s_)) { validate_raw(); }

    void validate(int n) const {
        validate_raw();
        if (s.empty() || static_cast<int>(s.size()) > n || s.back() > n - 1)
            throw std::invalid_argument("MuiIndex out of range for rank n");
    }

    bool operator==(const MuiIndex&) const = default;
    auto operator<=>(const MuiIndex& o) const { return s <=> o.s; }

private:
    void validate_raw() const {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0) throw std::invalid_argument("MuiIndex: negative entry");
            if (i > 0 && s[i] <= s[i - 1])
                throw std::invalid_argument("MuiIndex: entries must strictly increase");
        }
    }
};

/// All nonempty MuiIndex values for rank n.
inline std::vector<MuiIndex> all_mui_indices(int n) {
    std::vector<MuiIndex> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        MuiIndex S;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) S.s.push_back(i);
        out.push_back(std::move(S));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Determinant with m exterior rows (all equal to (x_1..x_n)) followed by
/// y-power rows y_j^{p^t}; expanded over permutations with integer
/// coefficients, then divided by m! over the integers and reduced mod p.
inline Polynomial mui_determinant(const AlgebraContext& ctx, int m,
                                  const std::vector<int>& ypowers) {
    const int n = ctx.n;
    if (m + static_cast<int>(ypowers.size()) != n)
        throw std::invalid_argument("mui_determinant: row count mismatch");
    std::map<Monomial, long long, MonomialLess> acc;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long long fact_m = 1;
    for (int t = 2; t <= m; ++t) fact_m *= t;
    do {
        // permutation sign
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        int sgn = (inv & 1) ? -1 : 1;
        // exterior part: x_{perm[0]} ... x_{perm[m-1]} in row order
        std::vector<int> ext_order;
        for (int r = 0; r < m; ++r) ext_order.push_back(perm[r] + 1);
        std::uint32_t mask = 0;
        int esign = sort_ext_sign(ext_order, mask);
        if (esign == 0) continue; // cannot happen: perm entries distinct
        Monomial mono;
        mono.ext = mask;
        mono.exp.assign(n, 0);
        for (int r = m; r < n; ++r) {
            long long q = 1;
            for (int t = 0; t < ypowers[r - m]; ++t) q *= ctx.p;
            mono.exp[perm[r]] += q;
        }
        acc[mono] += sgn * esign;
    } while (std::next_permutation(perm.begin(), perm.end()));

    Polynomial result(ctx);
    for (const auto& [mono, c] : acc) {
        if (c % fact_m != 0)
            throw std::runtime_error("mui_determinant: coefficient not divisible by m!");
        result.add_term(mono, c / fact_m);
    }
    return result;
}

} // namespace detail

/// M_{n;s_1..s_m}: m rows of x's, then the y-power rows with the s_i-th
/// powers omitted; prefactor 1/m! handled by integer-lift expansion.
inline Polynomial build_mui(const AlgebraContext& ctx, const MuiIndex& S) {
    if (ctx.char2()) throw std::invalid_argument("Mui classes need odd p");
    S.validate(ctx.n);
    std::vector<int> ypowers;
    for (int t = 0; t < ctx.n; ++t)
        if (std::find(S.s.begin(), S.s.end(), t) == S.s.end()) ypowers.push_back(t);
    return detail::mui_determinant(ctx, static_cast<int>(S.s.size()), ypowers);
}

/// L_n = det(y_j^{p^{i-1}}).
inline Polynomial build_L(const AlgebraContext& ctx) {
    if (ctx.char2()) throw std::invalid_argument("L_n needs odd p");
    std::vector<int> ypowers(ctx.n);
    std::iota(ypowers.begin(), ypowers.end(), 0);
    return detail::mui_determinant(ctx, 0, ypowers);
}

/// Generating set of GL_n(F_p): adjacent transpositions, one
/// transvection y_1 -> y_1 + y_2, and a primitive scalar (odd p).
inline std::vector<std::vector<std::vector<int>>> gl_generators(const AlgebraContext& ctx) {
    const int n = ctx.n;
    std::vector<std::vector<std::vector<int>>> gens;
    auto identity = [&] {
        std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) A[i][i] = 1;
        return A;
    };
    for (int i = 0; i + 1 < n; ++i) {
        auto A = identity();
        std::swap(A[i], A[i + 1]);
        gens.push_back(A);
    }
    if (n >= 2) {
        auto A = identity();
        A[0][1] = 1; // y1 -> y1 + y2
        gens.push_back(A);
    }
    if (!ctx.char2()) {
        auto A = identity();
        A[0][0] = primitive_root(ctx.p);
        gens.push_back(A);
    }
    return gens;
}

inline bool check_invariance(const Polynomial& f) {
    for (const auto& A : gl_generators(f.context()))
        if (!(linear_substitute(f, A) == f)) return false;
    return true;
}

/// |d_{n,i}|: 2(p^n - p^{n-i}) for odd p, 2^n - 2^{n-i} at p=2.
inline long long dickson_degree(const AlgebraContext& ctx, int i) {
    long long pn = pow_ll(ctx.p, ctx.n);
    long long pni = pow_ll(ctx.p, ctx.n - i);
    return ctx.char2() ? pn - pni : 2 * (pn - pni);
}

/// The Dickson generators with signs pinned so the generator-level
/// action formulas hold verbatim:
///   P^{p^{n-i-1}}(d_{n,i}) = d_{n,i+1}   (i < n)
///   P^{p^{n-1}}(d_{n,n})   = -d_{n,n} d_{n,1}
struct DicksonGenerators {
    AlgebraContext ctx;
    std::vector<Polynomial> d; // d[i-1] = d_{n,i}
    Polynomial L;              // L_n (odd p); zero polynomial at p=2
    std::vector<int> signs;    // chosen scalar per generator

    const Polynomial& gen(int i) const { return d.at(i - 1); }
};

inline DicksonGenerators build_dickson(const AlgebraContext& ctx) {
    const int n = ctx.n;
    const int p = ctx.p;
    long long pn = pow_ll(p, n);
    if (pn > 81)
        throw std::invalid_argument("build_dickson: p^n too large to enumerate (cap 81)");

    // orbit product prod_{v in F_p^n} (X - lambda_v), coefficients in P[y]
    std::vector<Polynomial> coeff; // coeff[k] multiplies X^k
    coeff.push_back(Polynomial::constant(ctx, 1));
    std::vector<int> v(n, 0);
    for (long long idx = 0; idx < pn; ++idx) {
        Polynomial lam(ctx);
        Monomial m0;
        m0.exp.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            Monomial m = m0;
            m.exp[i] = 1;
            lam.add_term(m, v[i]);
        }
        // multiply running product by (X - lam)
        std::vector<Polynomial> next(coeff.size() + 1, Polynomial::zero(ctx));
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            next[k + 1] += coeff[k];
            next[k] -= lam * coeff[k];
        }
        coeff = std::move(next);
        // increment v in base p
        for (int i = 0; i < n; ++i) {
            if (++v[i] < p) break;
            v[i] = 0;
        }
    }

    std::vector<Polynomial> cand; // cand[i-1] = +/- d_{n,i}
    for (int i = 1; i <= n; ++i)
        cand.push_back(coeff[pow_ll(p, n - i)]);

    // pin signs against the generator action table
    long long combos = 1;
    for (int i = 0; i < n; ++i) combos *= (p - 1);
    for (long long code = 0; code < combos; ++code) {
        std::vector<int> s(n);
        long long c = code;
        for (int i = 0; i < n; ++i) {
            s[i] = 1 + static_cast<int>(c % (p - 1));
            c /= (p - 1);
        }
        std::vector<Polynomial> d;
        for (int i = 0; i < n; ++i) d.push_back(cand[i].scaled(s[i]));
        bool ok = true;
        for (int i = 1; i < n && ok; ++i)
            ok = apply_power_op(pow_ll(p, n - i - 1), d[i - 1]) == d[i];
        if (ok)
            ok = apply_power_op(pow_ll(p, n - 1), d[n - 1]) == (d[n - 1] * d[0]).scaled(-1);
        if (ok) {
            DicksonGenerators g{ctx, std::move(d),
                                ctx.char2() ? Polynomial::zero(ctx) : build_L(ctx),
                                std::move(s)};
            return g;
        }
    }
    throw std::runtime_error("build_dickson: no sign normalization satisfies the action table");
}

/// M_{n;S} L_n^{p-2}.
inline Polynomial mui_class(const DicksonGenerators& g, const MuiIndex& S) {
    return build_mui(g.ctx, S) * power(g.L, g.ctx.p - 2);
}

/// A scalar multiple of a monomial in the Dickson generators, with an
/// optional Mui factor M_{n;S} L_n^{p-2}.
struct DicksonWord {
    std::vector<long long> K; // exponents of d_{n,1}..d_{n,n}
    std::optional<MuiIndex> mui;
    int coeff = 1;

    bool operator==(const DicksonWord&) const = default;
};

inline long long word_degree(const DicksonGenerators& g, const DicksonWord& w) {
    long long deg = 0;
    for (int i = 1; i <= g.ctx.n; ++i) deg += w.K[i - 1] * dickson_degree(g.ctx, i);
    if (w.mui) {
        long long sum = 0;
        for (int s : w.mui->s) sum += pow_ll(g.ctx.p, s);
        deg += static_cast<long long>(w.mui->s.size()) +
               2 * ((pow_ll(g.ctx.p, g.ctx.n) - 1) - sum);
    }
    return deg;
}

inline Polynomial evaluate(const DicksonGenerators& g, const DicksonWord& w) {
    if (static_cast<int>(w.K.size()) != g.ctx.n)
        throw std::invalid_argument("DicksonWord: exponent vector length mismatch");
    Polynomial r = Polynomial::constant(g.ctx, w.coeff);
    if (w.mui) {
        if (g.ctx.char2()) throw std::invalid_argument("Mui factor at p=2");
        r *= mui_class(g, *w.mui);
    }
    for (int i = 1; i <= g.ctx.n; ++i)
        if (w.K[i - 1] > 0) r *= power(g.gen(i), w.K[i - 1]);
    return r;
}

// ---------------------------------------------------------------------------
// Dickson-word text grammar: `d[n,i]^e` factors joined by `*`, optional
// Mui factor `M[n;s1,s2,...]` (implicitly carrying L_n^{p-2}), optional
// integer coefficient.  Example: `M[3;0,2]*d[3,1]^2*d[3,3]^5`.
// ---------------------------------------------------------------------------

inline std::string to_string(const AlgebraContext& ctx, const DicksonWord& w) {
    std::vector<std::string> factors;
    if (w.mui) {
        std::string s = "M[" + std::to_string(ctx.n) + ";";
        for (std::size_t i = 0; i < w.mui->s.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(w.mui->s[i]);
        }
        s += "]";
        factors.push_back(s);
    }
    for (int i = 1; i <= ctx.n; ++i) {
        if (w.K[i - 1] == 0) continue;
        std::string s = "d[" + std::to_string(ctx.n) + "," + std::to_string(i) + "]";
        if (w.K[i - 1] != 1) s += "^" + std::to_string(w.K[i - 1]);
        factors.push_back(s);
    }
    std::string joined;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) joined += "*";
        joined += factors[i];
    }
    if (factors.empty()) return std::to_string(w.coeff);
    if (w.coeff != 1) return std::to_string(w.coeff) + "*" + joined;
    return joined;
}

inline DicksonWord parse_dickson_word(const AlgebraContext& ctx, const std::string& text) {
    detail::ParseCursor cur{text};
    DicksonWord w;
    w.K.assign(ctx.n, 0);
    long long coeff = 1;
    bool any = false;
    while (true) {
        char c = cur.peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            coeff *= cur.integer();
            any = true;
        } else if (c == 'd') {
            ++cur.pos;
            if (cur.peek() != '[') cur.fail("expected '[' after d");
            ++cur.pos;
            long long nn = cur.integer();
            if (cur.peek() != ',') cur.fail("expected ',' in d[n,i]");
            ++cur.pos;
            long long i = cur.integer();
            if (cur.peek() != ']') cur.fail("expected ']' in d[n,i]");
            ++cur.pos;
            if (nn != ctx.n) cur.fail("rank mismatch in d[n,i]");
            if (i < 1 || i > ctx.n) cur.fail("generator index out of range");
            long long e = 1;
            if (cur.peek() == '^') { ++cur.pos; e = cur.integer(); }
            if (e < 0) cur.fail("negative exponent");
            w.K[i - 1] += e;
            any = true;
        } else if (c == 'M') {
            ++cur.pos;
            if (cur.peek() != '[') cur.fail("expected '[' after M");
            ++cur.pos;
            long long nn = cur.integer();
            if (nn != ctx.n) cur.fail("rank mismatch in M[n;...]");
            if (cur.peek() != ';') cur.fail("expected ';' in M[n;...]");
            ++cur.pos;
            std::vector<int> s;
            while (true) {
                s.push_back(static_cast<int>(cur.integer()));
                if (cur.peek() == ',') { ++cur.pos; continue; }
                break;
            }
            if (cur.peek() != ']') cur.fail("expected ']' in M[n;...]");
            ++cur.pos;
            if (w.mui) cur.fail("repeated Mui factor (squares to zero)");
            MuiIndex S(std::move(s));
            S.validate(ctx.n);
            if (ctx.char2()) cur.fail("Mui factor at p=2");
            w.mui = std::move(S);
            any = true;
        } else {
            cur.fail("expected factor");
        }
        if (cur.peek() == '*') { ++cur.pos; continue; }
        break;
    }
    if (!cur.eof()) cur.fail("trailing input");
    if (!any) cur.fail("empty word");
    w.coeff = fp_norm(coeff, ctx.p);
    return w;
}

// ---------------------------------------------------------------------------
// express_in_dickson: unique expansion of a homogeneous invariant in the
// Mui basis {d^K} u {M_{n;S} L^{p-2} d^K}, by a graded linear solve.
// ---------------------------------------------------------------------------

namespace detail {

inline void enumerate_exponents(const DicksonGenerators& g, long long target, int i,
                                std::vector<long long>& K,
                                std::vector<std::vector<long long>>& out) {
    const int n = g.ctx.n;
    if (i == n) {
        if (target == 0) out.push_back(K);
        return;
    }
    long long w = dickson_degree(g.ctx, i + 1);
    if (i == n - 1) {
        if (target % w == 0) {
            K[i] = target / w;
            out.push_back(K);
            K[i] = 0;
        }
        return;
    }
    for (long long k = 0; k * w <= target; ++k) {
        K[i] = k;
        enumerate_exponents(g, target - k * w, i + 1, K, out);
    }
    K[i] = 0;
}

} // namespace detail

/// All Mui-basis words of the given degree.
inline std::vector<DicksonWord> basis_words(const DicksonGenerators& g, long long degree) {
    std::vector<DicksonWord> out;
    const int n = g.ctx.n;
    std::vector<long long> K(n, 0);
    std::vector<std::vector<long long>> Ks;
    detail::enumerate_exponents(g, degree, 0, K, Ks);
    for (auto& k : Ks) out.push_back(DicksonWord{std::move(k), std::nullopt, 1});
    if (!g.ctx.char2()) {
        for (const MuiIndex& S : all_mui_indices(n)) {
            DicksonWord probe{std::vector<long long>(n, 0), S, 1};
            long long mdeg = word_degree(g, probe);
            if (mdeg > degree) continue;
            Ks.clear();
            detail::enumerate_exponents(g, degree - mdeg, 0, K, Ks);
            for (auto& k : Ks) out.push_back(DicksonWord{std::move(k), S, 1});
        }
    }
    return out;
}

/// Expand f over the Mui basis.  Throws when f is not homogeneous
/// GL_n-invariant or not in the span.
inline std::vector<DicksonWord> express_in_dickson(const DicksonGenerators& g,
                                                   const Polynomial& f) {
    if (f.is_zero()) return {};
    auto deg = f.homogeneous_degree();
    if (!deg) throw std::invalid_argument("express_in_dickson: mixed degrees");

    std::vector<DicksonWord> basis = basis_words(g, *deg);
    std::vector<Polynomial> evals;
    for (const auto& w : basis) evals.push_back(evaluate(g, w));

    // column index over occurring monomials
    std::map<Monomial, int, MonomialLess> rows;
    auto note = [&](const Polynomial& h) {
        for (const auto& [m, c] : h.terms())
            if (!rows.count(m)) rows.emplace(m, static_cast<int>(rows.size()));
    };
    note(f);
    for (const auto& e : evals) note(e);

    const int p = g.ctx.p;
    const int nrows = static_cast<int>(rows.size());
    const int ncols = static_cast<int>(basis.size());
    std::vector<std::vector<int>> A(nrows, std::vector<int>(ncols + 1, 0));
    for (int j = 0; j < ncols; ++j)
        for (const auto& [m, c] : evals[j].terms()) A[rows[m]][j] = c;
    for (const auto& [m, c] : f.terms()) A[rows[m]][ncols] = c;

    // Gaussian elimination; the Mui basis is linearly independent, so a
    // consistent system has a unique solution.
    std::vector<int> pivot_col(nrows, -1);
    int rank = 0;
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int piv = -1;
        for (int r = rank; r < nrows; ++r)
            if (A[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(A[rank], A[piv]);
        int inv = fp_inv(A[rank][col], p);
        for (int c = col; c <= ncols; ++c) A[rank][c] = fp_mul(A[rank][c], inv, p);
        for (int r = 0; r < nrows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            int factor = A[r][col];
            for (int c = col; c <= ncols; ++c)
                A[r][c] = fp_sub(A[r][c], fp_mul(factor, A[rank][c], p), p);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (int r = rank; r < nrows; ++r)
        if (A[r][ncols] != 0)
            throw std::invalid_argument("express_in_dickson: not in D_n"
                                        " (inconsistent system)");
    std::vector<int> x(ncols, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = A[r][ncols];

    std::vector<DicksonWord> result;
    Polynomial rebuilt = Polynomial::zero(g.ctx);
    for (int j = 0; j < ncols; ++j) {
        if (x[j] == 0) continue;
        DicksonWord w = basis[j];
        w.coeff = x[j];
        rebuilt += evals[j].scaled(x[j]);
        result.push_back(std::move(w));
    }
    if (!(rebuilt == f))
        throw std::invalid_argument("express_in_dickson: not in D_n");
    return result;
}

} // namespace dickson

#endif
