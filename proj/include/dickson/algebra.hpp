#ifndef DICKSON_ALGEBRA_HPP
#define DICKSON_ALGEBRA_HPP

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fp.hpp"

namespace dickson {

/// The ambient ring E(x_1,...,x_n) (x) P[y_1,...,y_n] over F_p.
/// For p odd: |x_i| = 1, |y_i| = 2.  For p = 2 there are no exterior
/// generators and |y_i| = 1.
struct AlgebraContext {
    int p = 2;
    int n = 1;

    AlgebraContext() = default;
    AlgebraContext(int p_, int n_) : p(p_), n(n_) {
        if (!is_prime(p)) throw std::invalid_argument("AlgebraContext: p must be prime");
        if (n < 1 || n > 30) throw std::invalid_argument("AlgebraContext: rank out of range");
    }

    bool char2() const { return p == 2; }
    bool operator==(const AlgebraContext&) const = default;
};

inline void require_same_context(const AlgebraContext& a, const AlgebraContext& b) {
    if (!(a == b))
        throw std::invalid_argument("context mismatch: operands live in different algebras");
}

/// One monomial: an exterior factor (bitmask, bit i-1 <-> x_i, kept
/// order-normalized ascending) and y-exponents.
struct Monomial {
    std::uint32_t ext = 0;
    std::vector<long long> exp;

    bool operator==(const Monomial&) const = default;

    long long degree(const AlgebraContext& ctx) const {
        long long s = 0;
        for (long long e : exp) s += e;
        if (ctx.char2()) return s;
        return std::popcount(ext) + 2 * s;
    }
};

/// Canonical order: lexicographic on (ext as ascending index list, exp).
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.ext != b.ext) {
            std::uint32_t x = a.ext, y = b.ext;
            while (x && y) {
                int i = std::countr_zero(x), j = std::countr_zero(y);
                if (i != j) return i < j;
                x &= x - 1;
                y &= y - 1;
            }
            return x == 0;
        }
        return a.exp < b.exp;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = m.ext;
        for (long long e : m.exp) h = h * 1000003u + static_cast<std::size_t>(e) + 0x9e3779b9u;
        return h;
    }
};

/// Koszul sign for merging two disjoint ascending exterior lists:
/// (-1)^{#inversions in concat(a, b)}.
inline int koszul_sign(std::uint32_t a, std::uint32_t b) {
    int inv = 0;
    std::uint32_t bb = b;
    while (bb) {
        int j = std::countr_zero(bb);
        // factors of a that must move past x_{j+1}
        inv += std::popcount(a >> (j + 1));
        bb &= bb - 1;
    }
    return (inv & 1) ? -1 : 1;
}

/// Sign of sorting an exterior index sequence given in written order;
/// returns 0 if an index repeats.
inline int sort_ext_sign(const std::vector<int>& idx, std::uint32_t& mask_out) {
    int inv = 0;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::uint32_t bit = 1u << (idx[i] - 1);
        if (mask & bit) return 0;
        // earlier factors with larger index
        for (std::size_t j = 0; j < i; ++j)
            if (idx[j] > idx[i]) ++inv;
        mask |= bit;
    }
    mask_out = mask;
    return (inv & 1) ? -1 : 1;
}

/// Sparse polynomial: canonical association Monomial -> nonzero scalar.
class Polynomial {
public:
    using TermMap = std::map<Monomial, int, MonomialLess>;

    Polynomial() = default;
    explicit Polynomial(const AlgebraContext& ctx) : ctx_(ctx) {}

    static Polynomial zero(const AlgebraContext& ctx) { return Polynomial(ctx); }

    static Polynomial constant(const AlgebraContext& ctx, long long c) {
        Polynomial f(ctx);
        int cc = fp_norm(c, ctx.p);
        if (cc != 0) {
            Monomial m;
            m.exp.assign(ctx.n, 0);
            f.terms_.emplace(std::move(m), cc);
        }
        return f;
    }

    static Polynomial variable_y(const AlgebraContext& ctx, int i, long long e = 1) {
        if (i < 1 || i > ctx.n) throw std::invalid_argument("y index out of range");
        Polynomial f(ctx);
        Monomial m;
        m.exp.assign(ctx.n, 0);
        m.exp[i - 1] = e;
        f.terms_.emplace(std::move(m), 1);
        return f;
    }

    static Polynomial variable_x(const AlgebraContext& ctx, int i) {
        if (ctx.char2()) throw std::invalid_argument("no exterior generators at p=2");
        if (i < 1 || i > ctx.n) throw std::invalid_argument("x index out of range");
        Polynomial f(ctx);
        Monomial m;
        m.ext = 1u << (i - 1);
        m.exp.assign(ctx.n, 0);
        f.terms_.emplace(std::move(m), 1);
        return f;
    }

    const AlgebraContext& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, long long c) {
        if (ctx_.char2() && m.ext != 0)
            throw std::invalid_argument("exterior factor in p=2 mode");
        int cc = fp_norm(c, ctx_.p);
        if (cc == 0) return;
        auto [it, inserted] = terms_.emplace(m, cc);
        if (!inserted) {
            it->second = fp_add(it->second, cc, ctx_.p);
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Common degree of all terms, or nullopt when zero / mixed degrees.
    std::optional<long long> homogeneous_degree() const {
        std::optional<long long> d;
        for (const auto& [m, c] : terms_) {
            long long md = m.degree(ctx_);
            if (!d) d = md;
            else if (*d != md) return std::nullopt;
        }
        return d;
    }

    bool operator==(const Polynomial& o) const {
        return ctx_ == o.ctx_ && terms_ == o.terms_;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_context(ctx_, o.ctx_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        require_same_context(ctx_, o.ctx_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }

    Polynomial scaled(long long c) const {
        Polynomial r(ctx_);
        int cc = fp_norm(c, ctx_.p);
        if (cc == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, fp_mul(k, cc, ctx_.p));
        return r;
    }

    friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
        require_same_context(f.ctx_, g.ctx_);
        const AlgebraContext& ctx = f.ctx_;
        std::unordered_map<Monomial, int, MonomialHash> acc;
        acc.reserve(f.terms_.size() + g.terms_.size());
        for (const auto& [ma, ca] : f.terms_) {
            for (const auto& [mb, cb] : g.terms_) {
                if (ma.ext & mb.ext) continue; // x_i^2 = 0
                int sign = koszul_sign(ma.ext, mb.ext);
                Monomial m;
                m.ext = ma.ext | mb.ext;
                m.exp.resize(ctx.n);
                for (int i = 0; i < ctx.n; ++i) m.exp[i] = ma.exp[i] + mb.exp[i];
                int c = fp_mul(ca, cb, ctx.p);
                if (sign < 0) c = fp_sub(0, c, ctx.p);
                int& slot = acc[std::move(m)];
                slot = fp_add(slot, c, ctx.p);
            }
        }
        Polynomial r(ctx);
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.emplace(m, c);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }

    bool has_exterior_content() const {
        for (const auto& [m, c] : terms_)
            if (m.ext != 0) return true;
        return false;
    }

    /// f^{p^j} for purely polynomial f: raise exponents, coefficients
    /// are fixed by Fermat.
    Polynomial frobenius(int j) const {
        if (has_exterior_content())
            throw std::invalid_argument("frobenius: exterior content");
        long long q = 1;
        for (int t = 0; t < j; ++t) q *= ctx_.p;
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            for (auto& e : mm.exp) e *= q;
            r.terms_.emplace(std::move(mm), c);
        }
        return r;
    }

private:
    AlgebraContext ctx_;
    TermMap terms_;
};

/// power(f, 0) = 1.  Pure polynomials use base-p splitting so that
/// p-th powers cost a Frobenius; exterior content falls back to
/// repeated multiplication.
inline Polynomial power(const Polynomial& f, long long e) {
    if (e < 0) throw std::invalid_argument("power: negative exponent");
    const AlgebraContext& ctx = f.context();
    if (e == 0) return Polynomial::constant(ctx, 1);
    if (!f.has_exterior_content()) {
        Polynomial result = Polynomial::constant(ctx, 1);
        Polynomial base = f; // f^{p^j}
        long long rem = e;
        while (rem > 0) {
            int digit = static_cast<int>(rem % ctx.p);
            for (int t = 0; t < digit; ++t) result *= base;
            rem /= ctx.p;
            if (rem > 0) base = base.frobenius(1);
        }
        return result;
    }
    Polynomial result = Polynomial::constant(ctx, 1);
    for (long long t = 0; t < e; ++t) result *= f;
    return result;
}

/// y_i -> sum_j A[i][j] y_j, x_i -> sum_j A[i][j] x_j, extended
/// multiplicatively.  A must be invertible over F_p.
inline Polynomial linear_substitute(const Polynomial& f,
                                    const std::vector<std::vector<int>>& A) {
    const AlgebraContext& ctx = f.context();
    const int n = ctx.n;
    if (static_cast<int>(A.size()) != n)
        throw std::invalid_argument("linear_substitute: matrix size mismatch");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("linear_substitute: matrix size mismatch");

    // invertibility check by elimination mod p
    {
        std::vector<std::vector<int>> M = A;
        int rank = 0;
        for (int col = 0; col < n && rank < n; ++col) {
            int piv = -1;
            for (int r = rank; r < n; ++r)
                if (fp_norm(M[r][col], ctx.p) != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(M[rank], M[piv]);
            int inv = fp_inv(M[rank][col], ctx.p);
            for (int c = 0; c < n; ++c) M[rank][c] = fp_mul(fp_norm(M[rank][c], ctx.p), inv, ctx.p);
            for (int r = 0; r < n; ++r) {
                if (r == rank) continue;
                int factor = fp_norm(M[r][col], ctx.p);
                if (factor == 0) continue;
                for (int c = 0; c < n; ++c)
                    M[r][c] = fp_sub(fp_norm(M[r][c], ctx.p), fp_mul(factor, M[rank][c], ctx.p), ctx.p);
            }
            ++rank;
        }
        if (rank < n) throw std::invalid_argument("linear_substitute: singular matrix");
    }

    std::vector<Polynomial> yimg, ximg;
    for (int i = 0; i < n; ++i) {
        Polynomial yi(ctx);
        Monomial m0;
        m0.exp.assign(n, 0);
        for (int j = 0; j < n; ++j) {
            Monomial m = m0;
            m.exp[j] = 1;
            yi.add_term(m, A[i][j]);
        }
        yimg.push_back(yi);
        if (!ctx.char2()) {
            Polynomial xi(ctx);
            for (int j = 0; j < n; ++j) {
                Monomial m = m0;
                m.ext = 1u << j;
                xi.add_term(m, A[i][j]);
            }
            ximg.push_back(xi);
        }
    }

    Polynomial result(ctx);
    for (const auto& [m, c] : f.terms()) {
        Polynomial term = Polynomial::constant(ctx, c);
        std::uint32_t ext = m.ext;
        while (ext) {
            int i = std::countr_zero(ext);
            term *= ximg[i];
            ext &= ext - 1;
        }
        for (int i = 0; i < n; ++i)
            if (m.exp[i] > 0) term *= power(yimg[i], m.exp[i]);
        result += term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Text grammar: terms joined by '+', term = [coeff*]factor(*factor)*,
// factor = x<i> | y<i>[^e].  Example: "2*x1*y2^3 + y1^4".
// ---------------------------------------------------------------------------

inline std::string to_string(const Polynomial& f) {
    if (f.is_zero()) return "0";
    const AlgebraContext& ctx = f.context();
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out << " + ";
        first = false;
        std::vector<std::string> factors;
        std::uint32_t ext = m.ext;
        while (ext) {
            int i = std::countr_zero(ext);
            factors.push_back("x" + std::to_string(i + 1));
            ext &= ext - 1;
        }
        for (int i = 0; i < ctx.n; ++i) {
            if (m.exp[i] == 0) continue;
            std::string s = "y" + std::to_string(i + 1);
            if (m.exp[i] != 1) s += "^" + std::to_string(m.exp[i]);
            factors.push_back(s);
        }
        if (factors.empty()) {
            out << c;
            continue;
        }
        std::string joined;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) joined += "*";
            joined += factors[i];
        }
        if (c != 1) out << c << "*";
        out << joined;
    }
    return out.str();
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) {
    return os << to_string(f);
}

namespace detail {

struct ParseCursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() { skip_ws(); return pos >= s.size(); }
    char peek() { skip_ws(); return pos < s.size() ? s[pos] : '\0'; }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }
    long long integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("expected integer");
        return std::stoll(s.substr(start, pos - start));
    }
};

} // namespace detail

inline Polynomial parse_polynomial(const AlgebraContext& ctx, const std::string& text) {
    detail::ParseCursor cur{text};
    Polynomial result(ctx);
    if (cur.eof()) cur.fail("empty polynomial");
    bool negate_first = false;
    if (cur.peek() == '-') { ++cur.pos; negate_first = true; }
    bool first_term = true;
    while (true) {
        // one term
        long long coeff = negate_first && first_term ? -1 : 1;
        std::vector<int> ext_order;
        std::vector<long long> exp(ctx.n, 0);
        bool any_factor = false;
        while (true) {
            char c = cur.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= cur.integer();
                any_factor = true;
            } else if (c == 'x') {
                ++cur.pos;
                long long i = cur.integer();
                if (ctx.char2()) cur.fail("exterior generator x" + std::to_string(i) + " at p=2");
                if (i < 1 || i > ctx.n) cur.fail("x index out of range");
                ext_order.push_back(static_cast<int>(i));
                any_factor = true;
            } else if (c == 'y') {
                ++cur.pos;
                long long i = cur.integer();
                if (i < 1 || i > ctx.n) cur.fail("y index out of range");
                long long e = 1;
                if (cur.peek() == '^') { ++cur.pos; e = cur.integer(); }
                if (e < 0) cur.fail("negative exponent");
                exp[i - 1] += e;
                any_factor = true;
            } else {
                cur.fail("expected factor");
            }
            if (cur.peek() == '*') { ++cur.pos; continue; }
            break;
        }
        if (!any_factor) cur.fail("empty term");
        std::uint32_t mask = 0;
        int sign = sort_ext_sign(ext_order, mask);
        if (sign != 0) {
            Monomial m;
            m.ext = mask;
            m.exp = std::move(exp);
            result.add_term(m, coeff * sign);
        }
        first_term = false;
        char c = cur.peek();
        if (c == '+') { ++cur.pos; negate_first = false; continue; }
        if (c == '-') { ++cur.pos; negate_first = true; first_term = true; continue; }
        if (c == '\0') break;
        cur.fail("unexpected character '" + std::string(1, c) + "'");
    }
    return result;
}

} // namespace dickson

#endif
