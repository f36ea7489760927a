#ifndef DICKSON_REDUCTION_HPP
#define DICKSON_REDUCTION_HPP

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "generators.hpp"

namespace dickson {

/// The lowest-p-adic-term statistics of an exponent vector:
///   J_i = a_i p^{m(k(i))}, the lowest nonzero term of k(i) (0 if k(i)=0),
///   minJ = min { m(k(n))+n-1 } u { m(k(i))+n-i-1 : i<n, a_i != 0 },
///   iJ   = max of the n-i's and/or n attaining minJ.
struct ExponentStats {
    std::vector<long long> J;
    int minJ = 0;
    int iJ = 0;
};

inline ExponentStats padic_stats(int p, const std::vector<long long>& K) {
    const int n = static_cast<int>(K.size());
    bool all_zero = true;
    for (long long k : K)
        if (k != 0) { all_zero = false; break; }
    if (all_zero) throw std::invalid_argument("padic_stats: zero exponent vector");

    ExponentStats st;
    st.J.resize(n);
    std::vector<PadicTerm> terms(n);
    for (int i = 0; i < n; ++i) {
        terms[i] = lowest_padic_term(K[i], p);
        st.J[i] = terms[i].a == 0 ? 0
                                  : static_cast<long long>(terms[i].a) * pow_ll(p, terms[i].m);
    }
    bool have = false;
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (terms[i - 1].a == 0) continue;
        int val = (i == n) ? terms[i - 1].m + n - 1 : terms[i - 1].m + n - i - 1;
        if (!have || val < best) { have = true; best = val; }
    }
    st.minJ = best;
    int sel = 0;
    for (int i = 1; i <= n; ++i) {
        if (terms[i - 1].a == 0) continue;
        int val = (i == n) ? terms[i - 1].m + n - 1 : terms[i - 1].m + n - i - 1;
        if (val != best) continue;
        int candidate = (i == n) ? n : n - i;
        sel = std::max(sel, candidate);
    }
    st.iJ = sel;
    return st;
}

/// One recorded rewriting step.  Polynomial steps carry a block (c,j);
/// the optional exterior prefix carries its operation word instead.
struct ReductionStep {
    DicksonWord in;
    std::optional<ExponentStats> stats;
    std::optional<Block> block;
    std::optional<OpWord> exterior;
    DicksonWord out;
    int unit = 1;
};

struct ReductionTrace {
    DicksonWord input;
    std::vector<ReductionStep> steps;
    OpWord gamma; // flat ops always; blocks filled when purely polynomial
    long long m = 0;
    int u = 1;

    std::vector<Block> blocks() const {
        std::vector<Block> out;
        for (const auto& s : steps)
            if (s.block) out.push_back(*s.block);
        return out;
    }
};

inline int proportionality_unit(const Polynomial& value, const Polynomial& target) {
    if (value.is_zero() || target.is_zero())
        throw std::runtime_error("proportionality_unit: zero polynomial");
    const int p = value.context().p;
    const auto& vt = *value.terms().begin();
    const auto& tt = *target.terms().begin();
    int u = fp_mul(vt.second, fp_inv(tt.second, p), p);
    if (!(value == target.scaled(u)))
        throw std::runtime_error("proportionality_unit: not a scalar multiple");
    return u;
}

class ReductionEngine {
public:
    explicit ReductionEngine(DicksonGenerators gens, long long exterior_unit_cap = 2000)
        : gens_(std::move(gens)), exterior_unit_cap_(exterior_unit_cap) {}

    const DicksonGenerators& gens() const { return gens_; }
    const AlgebraContext& context() const { return gens_.ctx; }

    /// One rewriting step on a purely polynomial word:
    ///   iJ = n:  k(n) += p^{m(k(n))}
    ///   iJ < n:  k(n) += p^{m(k(i0))}, k(i0) -= p^{m(k(i0))}, i0 = n-iJ
    /// Returns the applied block (minJ, iJ), the new word (unit folded
    /// into its coefficient), and the unit of this step.
    std::tuple<Block, DicksonWord, int> reduce_step(const DicksonWord& w) const {
        if (w.mui)
            throw std::invalid_argument("reduce_step: word carries a Mui factor; "
                                        "use the exterior path");
        const int n = context().n;
        const int p = context().p;
        ExponentStats st = padic_stats(p, w.K);
        Block block{st.minJ, st.iJ};
        DicksonWord out = w;
        int unit;
        if (st.iJ == n) {
            PadicTerm t = lowest_padic_term(w.K[n - 1], p);
            out.K[n - 1] += pow_ll(p, t.m);
            unit = block_unit(n, t.a);
        } else {
            int i0 = n - st.iJ;
            PadicTerm t = lowest_padic_term(w.K[i0 - 1], p);
            long long q = pow_ll(p, t.m);
            out.K[n - 1] += q;
            out.K[i0 - 1] -= q;
            unit = block_unit(i0, t.a);
        }
        out.coeff = fp_mul(out.coeff, unit, p);
        return {block, out, unit};
    }

    /// The full reduction P(Gamma,K): iterate reduce_step (after an
    /// exterior prefix when a Mui factor is present) until the word is
    /// u * d_{n,n}^{p^m}.
    ReductionTrace reduce_full(const DicksonWord& w) const {
        const int n = context().n;
        const int p = context().p;
        if (w.coeff == 0)
            throw std::invalid_argument("reduce_full: zero word");

        ReductionTrace trace;
        trace.input = w;
        DicksonWord cur = w;

        if (cur.mui) {
            OpWord ext = exterior_word(*cur.mui);
            ReductionStep step;
            step.in = cur;
            step.exterior = ext;
            DicksonWord out = cur;
            out.mui.reset();
            out.K[n - 1] += 1;
            int unit = exterior_step_unit(cur, ext, out);
            out.coeff = fp_mul(cur.coeff, unit, p);
            step.unit = unit;
            step.out = out;
            trace.steps.push_back(step);
            trace.gamma.ops.insert(trace.gamma.ops.end(), ext.ops.begin(), ext.ops.end());
            cur = out;
        }

        bool k_zero = true;
        long long maxexp = 2;
        for (long long k : cur.K) {
            maxexp = std::max(maxexp, k + 2);
            if (k != 0) k_zero = false;
        }
        if (k_zero)
            throw std::invalid_argument("reduce_full: nothing to reduce (K = 0)");
        int logp = 0;
        for (long long v = 1; v < maxexp; v *= p) ++logp;
        const long long step_bound = 10LL * n * logp + 64;

        long long count = 0;
        while (!is_reduced(cur)) {
            if (++count > step_bound)
                throw std::runtime_error("reduce_full: step bound exceeded "
                                         "(non-termination guard)");
            ReductionStep step;
            step.in = cur;
            step.stats = padic_stats(p, cur.K);
            auto [block, out, unit] = reduce_step(cur);
            step.block = block;
            step.out = out;
            step.unit = unit;
            trace.steps.push_back(step);
            auto ops = expand_block(block, p);
            trace.gamma.ops.insert(trace.gamma.ops.end(), ops.begin(), ops.end());
            cur = out;
        }
        if (!w.mui) trace.gamma.blocks = trace.blocks();
        PadicTerm t = lowest_padic_term(cur.K[n - 1], p);
        trace.m = t.m;
        trace.u = cur.coeff;
        return trace;
    }

    /// The exterior word P(B(M)) for M = M_{n;S} L_n^{p-2}, built from
    /// the support (t_1,...,t_{n-l}) of S in {0,...,n-1}.
    OpWord exterior_word(const MuiIndex& S) const {
        const AlgebraContext& ctx = context();
        if (ctx.char2())
            throw std::invalid_argument("exterior_word: no exterior theory at p=2");
        S.validate(ctx.n);
        const int n = ctx.n;
        const int l = static_cast<int>(S.s.size());
        std::vector<int> t; // complement, ascending
        for (int v = 0; v < n; ++v)
            if (std::find(S.s.begin(), S.s.end(), v) == S.s.end()) t.push_back(v);

        OpWord w;
        // power blocks, k = n-l down to 1, exponents p^{t_k}..p^{l+k-2}
        for (int k = n - l; k >= 1; --k)
            for (int e = t[k - 1]; e <= l + k - 2; ++e)
                w.ops.push_back({AtomicOp::Power, pow_ll(ctx.p, e)});
        // Bockstein blocks, b = l down to 1: beta, then P^{p^0}..P^{p^{b-2}}
        for (int b = l; b >= 1; --b) {
            w.ops.push_back({AtomicOp::Bockstein, 0});
            for (int e = 0; e <= b - 2; ++e)
                w.ops.push_back({AtomicOp::Power, pow_ll(ctx.p, e)});
        }
        return w;
    }

    struct Witness {
        ReductionTrace first;
        ReductionTrace second;
        long long l = 0;
    };

    /// Reduce both monomials and equalize the targets by further
    /// top-raising steps, reaching the common power d_{n,n}^{p^l}.
    Witness common_power_witness(const std::vector<long long>& K1,
                                 const std::vector<long long>& K2) const {
        Witness wit;
        wit.first = reduce_full(DicksonWord{K1, std::nullopt, 1});
        wit.second = reduce_full(DicksonWord{K2, std::nullopt, 1});
        wit.l = std::max(wit.first.m, wit.second.m);
        raise_to(wit.first, wit.l);
        raise_to(wit.second, wit.l);
        return wit;
    }

private:
    DicksonGenerators gens_;
    long long exterior_unit_cap_;
    mutable std::map<std::pair<int, int>, int> unit_cache_;

    bool is_reduced(const DicksonWord& w) const {
        const int n = context().n;
        for (int i = 0; i + 1 < n; ++i)
            if (w.K[i] != 0) return false;
        long long k = w.K[n - 1];
        if (k <= 0) return false;
        PadicTerm t = lowest_padic_term(k, context().p);
        return t.a == 1 && pow_ll(context().p, t.m) == k;
    }

    /// Unit of one block on the bare digit power: for i0 < n the block
    /// P(n-i0-1, n-i0) sends d_{n,i0}^a to u d_{n,n} d_{n,i0}^{a-1}; for
    /// i0 = n the block P(n-1, n) sends d_{n,n}^a to u d_{n,n}^{a+1}.
    /// Frobenius strips the p^m factor, so the unit is independent of m.
    int block_unit(int i0, int a) const {
        auto key = std::make_pair(i0, a);
        auto it = unit_cache_.find(key);
        if (it != unit_cache_.end()) return it->second;
        const int n = context().n;
        Polynomial value(context()), target(context());
        if (i0 == n) {
            value = apply_iterated(n - 1, n, power(gens_.gen(n), a));
            target = power(gens_.gen(n), a + 1);
        } else {
            value = apply_iterated(n - i0 - 1, n - i0, power(gens_.gen(i0), a));
            target = gens_.gen(n) * power(gens_.gen(i0), a - 1);
        }
        int u = proportionality_unit(value, target);
        unit_cache_.emplace(key, u);
        return u;
    }

    /// Unit of the exterior prefix.  Computed with the full carrier when
    /// the degree is small enough, otherwise from the Mui class alone.
    int exterior_step_unit(const DicksonWord& in, const OpWord& ext,
                           const DicksonWord& out) const {
        DicksonWord in1 = in;
        in1.coeff = 1;
        DicksonWord out1 = out;
        out1.coeff = 1;
        if (word_degree(gens_, in1) <= exterior_unit_cap_) {
            Polynomial value = apply_word(ext, evaluate(gens_, in1));
            return proportionality_unit(value, evaluate(gens_, out1));
        }
        DicksonWord bare{std::vector<long long>(context().n, 0), in.mui, 1};
        Polynomial value = apply_word(ext, evaluate(gens_, bare));
        return proportionality_unit(value, gens_.gen(context().n));
    }

    void raise_to(ReductionTrace& trace, long long target) const {
        const int n = context().n;
        const int p = context().p;
        DicksonWord cur{std::vector<long long>(n, 0), std::nullopt, trace.u};
        cur.K[n - 1] = pow_ll(p, static_cast<int>(trace.m));
        while (trace.m < target || !is_reduced(cur)) {
            ReductionStep step;
            step.in = cur;
            step.stats = padic_stats(p, cur.K);
            auto [block, out, unit] = reduce_step(cur);
            step.block = block;
            step.out = out;
            step.unit = unit;
            trace.steps.push_back(step);
            auto ops = expand_block(block, p);
            trace.gamma.ops.insert(trace.gamma.ops.end(), ops.begin(), ops.end());
            if (!trace.input.mui) trace.gamma.blocks.push_back(block);
            cur = out;
            if (is_reduced(cur)) {
                PadicTerm t = lowest_padic_term(cur.K[n - 1], p);
                trace.m = t.m;
            }
        }
        trace.u = cur.coeff;
    }
};

/// Replay a trace in the full polynomial ring and check every step,
/// including units.  Ground-truth certification of the symbolic rewriter.
inline bool verify_trace_oracle(const ReductionEngine& engine, const ReductionTrace& trace,
                                std::string* why = nullptr) {
    const DicksonGenerators& g = engine.gens();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ReductionStep& s = trace.steps[i];
        Polynomial fin = evaluate(g, s.in);
        Polynomial expected;
        if (s.exterior) {
            expected = apply_word(*s.exterior, fin);
        } else if (s.block) {
            expected = apply_iterated(s.block->c, s.block->j, fin);
        } else {
            if (why) *why = "step " + std::to_string(i) + " has no operation";
            return false;
        }
        if (!(expected == evaluate(g, s.out))) {
            if (why) *why = "step " + std::to_string(i) + ": symbolic output disagrees "
                            "with the polynomial ring";
            return false;
        }
    }
    return true;
}

} // namespace dickson

#endif
