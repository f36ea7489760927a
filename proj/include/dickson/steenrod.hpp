#ifndef DICKSON_STEENROD_HPP
#define DICKSON_STEENROD_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"

namespace dickson {

struct AtomicOp {
    enum Kind { Bockstein, Power };
    Kind kind = Power;
    long long k = 0; // exponent of P^k / Sq^k; unused for Bockstein

    bool operator==(const AtomicOp&) const = default;
};

/// Iterated block P(c,j): j power operations P^{p^c}, P^{p^{c-1}}, ...,
/// P^{p^{c-j+1}}, largest applied first.
struct Block {
    int c = 0;
    int j = 0;
    bool operator==(const Block&) const = default;
};

/// A word of atomic operations.  `ops` is stored in application order
/// (front applied first).  When `blocks` is non-empty it expands exactly
/// to `ops`.
struct OpWord {
    std::vector<AtomicOp> ops;
    std::vector<Block> blocks;

    bool operator==(const OpWord&) const = default;
};

inline long long op_degree(const AtomicOp& op, int p) {
    if (op.kind == AtomicOp::Bockstein) return 1;
    return p == 2 ? op.k : 2 * op.k * (p - 1);
}

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (1LL << 61) / b) throw std::overflow_error("p^c overflows");
        r *= b;
    }
    return r;
}

/// P^k (odd p) / Sq^k (p=2), extended from generators by the Cartan
/// formula.  On a monomial this is the convolution over the y-factors:
/// P^a(y_i^e) = C(e,a) y_i^{e+(p-1)a}, exterior factors absorb nothing.
inline Polynomial apply_power_op(long long k, const Polynomial& f) {
    if (k < 0) throw std::invalid_argument("apply_power_op: negative exponent");
    if (k == 0) return f;
    const AlgebraContext& ctx = f.context();
    const int p = ctx.p;
    const long long pm1 = p - 1;

    // a-values with C(e,a) != 0 mod p, per distinct exponent
    std::unordered_map<long long, std::vector<long long>> valid;
    auto valid_for = [&](long long e) -> const std::vector<long long>& {
        auto it = valid.find(e);
        if (it != valid.end()) return it->second;
        std::vector<long long> v;
        long long cap = std::min(e, k);
        for (long long a = 0; a <= cap; ++a)
            if (binom_mod_p(e, a, p) != 0) v.push_back(a);
        return valid.emplace(e, std::move(v)).first->second;
    };

    std::unordered_map<Monomial, int, MonomialHash> acc;
    std::vector<long long> chosen(ctx.n, 0);
    for (const auto& [m, c] : f.terms()) {
        // quick reject: sum of available absorption
        long long total = 0;
        for (long long e : m.exp) total += e;
        if (total < k) continue;

        auto rec = [&](auto&& self, int i, long long rem, int coeff) -> void {
            if (i == ctx.n) {
                if (rem != 0) return;
                Monomial mm = m;
                for (int t = 0; t < ctx.n; ++t) mm.exp[t] += pm1 * chosen[t];
                int& slot = acc[std::move(mm)];
                slot = fp_add(slot, coeff, p);
                return;
            }
            for (long long a : valid_for(m.exp[i])) {
                if (a > rem) break;
                int b = binom_mod_p(m.exp[i], a, p);
                chosen[i] = a;
                self(self, i + 1, rem - a, fp_mul(coeff, b, p));
            }
            chosen[i] = 0;
        };
        rec(rec, 0, k, c);
    }

    Polynomial r(ctx);
    for (auto& [m, c] : acc)
        if (c != 0) r.add_term(m, c);
    return r;
}

/// Bockstein: beta x_i = y_i, beta y_i = 0, graded derivation.
/// At p=2 this is Sq^1.
inline Polynomial apply_bockstein(const Polynomial& f) {
    const AlgebraContext& ctx = f.context();
    if (ctx.char2()) return apply_power_op(1, f);
    Polynomial r(ctx);
    for (const auto& [m, c] : f.terms()) {
        std::uint32_t ext = m.ext;
        int t = 0; // position of the factor beta lands on
        while (ext) {
            int i = std::countr_zero(ext);
            Monomial mm = m;
            mm.ext &= ~(1u << i);
            mm.exp[i] += 1;
            r.add_term(mm, (t & 1) ? -c : c);
            ext &= ext - 1;
            ++t;
        }
    }
    return r;
}

inline Polynomial apply_op(const AtomicOp& op, const Polynomial& f) {
    if (op.kind == AtomicOp::Bockstein) return apply_bockstein(f);
    return apply_power_op(op.k, f);
}

/// P(c,j): applies P^{p^c} first, then P^{p^{c-1}}, ..., P^{p^{c-j+1}}.
inline Polynomial apply_iterated(int c, int j, const Polynomial& f) {
    if (j < 1 || j > c + 1)
        throw std::invalid_argument("apply_iterated: need 1 <= j <= c+1");
    Polynomial r = f;
    for (int t = 0; t < j; ++t) {
        if (r.is_zero()) break;
        r = apply_power_op(pow_ll(f.context().p, c - t), r);
    }
    return r;
}

inline std::vector<AtomicOp> expand_block(const Block& b, int p) {
    std::vector<AtomicOp> ops;
    for (int t = 0; t < b.j; ++t)
        ops.push_back({AtomicOp::Power, pow_ll(p, b.c - t)});
    return ops;
}

inline OpWord word_from_blocks(const std::vector<Block>& blocks, int p) {
    OpWord w;
    w.blocks = blocks;
    for (const Block& b : blocks) {
        if (b.j < 1 || b.j > b.c + 1)
            throw std::invalid_argument("block (c,j) out of range");
        auto ops = expand_block(b, p);
        w.ops.insert(w.ops.end(), ops.begin(), ops.end());
    }
    return w;
}

inline Polynomial apply_word(const OpWord& w, const Polynomial& f) {
    Polynomial r = f;
    for (const AtomicOp& op : w.ops) {
        if (r.is_zero()) break;
        r = apply_op(op, r);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text grammar: `Sq^8`, `P^9`, `b`; words are whitespace-separated in
// application-last order ("Sq^2 Sq^4 Sq^8" applies Sq^8 first).
// Iterated blocks print as `Sq(2^6,3)` / `P(3^2,1)`.
// ---------------------------------------------------------------------------

inline std::string to_string(const OpWord& w, int p) {
    const std::string name = p == 2 ? "Sq" : "P";
    std::ostringstream out;
    if (!w.blocks.empty()) {
        for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it) {
            if (it != w.blocks.rbegin()) out << " ";
            out << name << "(" << p << "^" << it->c << "," << it->j << ")";
        }
        return out.str();
    }
    for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) {
        if (it != w.ops.rbegin()) out << " ";
        if (it->kind == AtomicOp::Bockstein) out << "b";
        else out << name << "^" << it->k;
    }
    return out.str();
}

inline OpWord parse_op_word(int p, const std::string& text) {
    const std::string name = p == 2 ? "Sq" : "P";
    std::istringstream in(text);
    std::string tok;
    std::vector<AtomicOp> display_ops; // display order, application-last first
    std::vector<Block> display_blocks;
    bool only_blocks = true;
    bool any = false;
    while (in >> tok) {
        any = true;
        if (tok == "b") {
            display_ops.push_back({AtomicOp::Bockstein, 0});
            only_blocks = false;
            continue;
        }
        if (tok.rfind(name, 0) != 0)
            throw std::invalid_argument("parse error in op word, token '" + tok +
                                        "': expected '" + name + "' at p=" + std::to_string(p));
        std::string rest = tok.substr(name.size());
        if (!rest.empty() && rest[0] == '^') {
            display_ops.push_back({AtomicOp::Power, std::stoll(rest.substr(1))});
            only_blocks = false;
        } else if (!rest.empty() && rest[0] == '(') {
            // name(base^c,j)
            std::size_t caret = rest.find('^');
            std::size_t comma = rest.find(',');
            std::size_t close = rest.find(')');
            if (caret == std::string::npos || comma == std::string::npos ||
                close == std::string::npos || !(caret < comma && comma < close))
                throw std::invalid_argument("parse error in block token '" + tok + "'");
            long long base = std::stoll(rest.substr(1, caret - 1));
            if (base != p)
                throw std::invalid_argument("block base " + std::to_string(base) +
                                            " does not match p=" + std::to_string(p));
            Block b;
            b.c = std::stoi(rest.substr(caret + 1, comma - caret - 1));
            b.j = std::stoi(rest.substr(comma + 1, close - comma - 1));
            display_blocks.push_back(b);
        } else {
            throw std::invalid_argument("parse error in op word, token '" + tok + "'");
        }
    }
    if (!any) return OpWord{};
    if (only_blocks && !display_blocks.empty()) {
        std::vector<Block> blocks(display_blocks.rbegin(), display_blocks.rend());
        return word_from_blocks(blocks, p);
    }
    if (!display_blocks.empty()) {
        // mixed word: expand blocks in place, keep flat form only
        std::vector<AtomicOp> flat;
        std::size_t bi = 0, oi = 0;
        std::istringstream in3(text);
        std::string t2;
        while (in3 >> t2) {
            if (t2.find('(') != std::string::npos) {
                auto ops = expand_block(display_blocks[bi++], p);
                flat.insert(flat.end(), ops.rbegin(), ops.rend());
            } else {
                flat.push_back(display_ops[oi++]);
            }
        }
        OpWord w;
        w.ops.assign(flat.rbegin(), flat.rend());
        return w;
    }
    OpWord w;
    w.ops.assign(display_ops.rbegin(), display_ops.rend());
    return w;
}

} // namespace dickson

#endif
