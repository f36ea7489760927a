// Command-line front end: apply operations, print generators, run
// reductions with traces, certify atomicity, Dyer-Lashof stats.
// Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "dickson/atomicity.hpp"
#include "dickson/dyer_lashof.hpp"
#include "dickson/trace_json.hpp"

namespace {

using namespace dickson;

std::vector<long long> parse_vector(const std::string& text) {
    std::vector<long long> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) { out.push_back(std::stoll(cur)); cur.clear(); }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stoll(cur));
    return out;
}

/// Try to print a polynomial as a combination of Dickson words; single
/// scalar-multiple words are matched directly, small degrees fall back
/// to the full basis solve.
std::string in_dickson_terms(const DicksonGenerators& g, const Polynomial& f) {
    if (f.is_zero()) return "0";
    auto deg = f.homogeneous_degree();
    if (!deg) return "";
    for (const DicksonWord& w : basis_words(g, *deg)) {
        Polynomial e = evaluate(g, w);
        if (e.term_count() != f.term_count() || e.is_zero()) continue;
        int u = fp_mul(f.terms().begin()->second,
                       fp_inv(e.terms().begin()->second, g.ctx.p), g.ctx.p);
        if (e.scaled(u) == f) {
            DicksonWord scaled = w;
            scaled.coeff = u;
            return to_string(g.ctx, scaled);
        }
    }
    if (*deg > 160) return "";
    try {
        auto words = express_in_dickson(g, f);
        std::string out;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) out += " + ";
            out += to_string(g.ctx, words[i]);
        }
        return out;
    } catch (const std::exception&) {
        return "";
    }
}

int cmd_apply(int p, int n, const std::string& ops, const std::string& input, bool as_json) {
    AlgebraContext ctx(p, n);
    OpWord w = parse_op_word(p, ops);
    Polynomial f(ctx);
    bool word_input = false;
    try {
        DicksonGenerators g = build_dickson(ctx);
        DicksonWord dw = parse_dickson_word(ctx, input);
        f = evaluate(g, dw);
        word_input = true;
        Polynomial r = apply_word(w, f);
        std::string pretty = in_dickson_terms(g, r);
        if (as_json) {
            json j;
            j["input"] = input;
            j["ops"] = ops;
            j["result"] = pretty.empty() ? to_string(r) : pretty;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (pretty.empty() ? to_string(r) : pretty) << "\n";
        }
        return 0;
    } catch (const std::invalid_argument&) {
        if (word_input) throw;
    }
    f = parse_polynomial(ctx, input);
    Polynomial r = apply_word(w, f);
    if (as_json) {
        json j;
        j["input"] = input;
        j["ops"] = ops;
        j["result"] = to_string(r);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_string(r) << "\n";
    }
    return 0;
}

int cmd_gens(int p, int n, bool mui, bool as_json) {
    AlgebraContext ctx(p, n);
    DicksonGenerators g = build_dickson(ctx);
    json j;
    for (int i = 1; i <= n; ++i) {
        std::string name = "d[" + std::to_string(n) + "," + std::to_string(i) + "]";
        if (as_json) j[name] = to_string(g.gen(i));
        else std::cout << name << " = " << to_string(g.gen(i)) << "\n";
    }
    if (mui && !ctx.char2()) {
        if (as_json) j["L"] = to_string(g.L);
        else std::cout << "L = " << to_string(g.L) << "\n";
        for (const MuiIndex& S : all_mui_indices(n)) {
            DicksonWord w{std::vector<long long>(n, 0), S, 1};
            std::string name = to_string(ctx, w);
            if (as_json) j[name] = to_string(mui_class(g, S));
            else std::cout << name << " = " << to_string(mui_class(g, S)) << "\n";
        }
    }
    if (as_json) std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_reduce(int p, int n, const std::string& word, bool trace, bool oracle, bool as_json) {
    AlgebraContext ctx(p, n);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(std::move(g));
    DicksonWord w = parse_dickson_word(ctx, word);
    ReductionTrace tr = eng.reduce_full(w);
    bool oracle_ok = true;
    std::string why;
    if (oracle) oracle_ok = verify_trace_oracle(eng, tr, &why);
    if (as_json) {
        json j = trace_to_json(eng, tr);
        if (oracle) j["oracle"] = oracle_ok ? "PASS" : ("FAIL: " + why);
        if (!trace) j.erase("steps");
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "gamma: " << to_string(tr.gamma, p) << "\n";
        std::cout << "m: " << tr.m << "\nu: " << tr.u << "\n";
        DicksonWord target{std::vector<long long>(n, 0), std::nullopt, tr.u};
        target.K[n - 1] = pow_ll(p, static_cast<int>(tr.m));
        std::cout << "result: " << to_string(ctx, target) << "\n";
        if (trace) {
            for (std::size_t i = 0; i < tr.steps.size(); ++i) {
                const ReductionStep& s = tr.steps[i];
                std::cout << "  step " << i << ": " << to_string(ctx, s.in) << " --";
                if (s.block)
                    std::cout << (p == 2 ? "Sq(" : "P(") << p << "^" << s.block->c << ","
                              << s.block->j << ")";
                if (s.exterior) std::cout << "[" << to_string(*s.exterior, p) << "]";
                std::cout << "--> " << to_string(ctx, s.out) << "  (unit " << s.unit << ")\n";
            }
        }
        if (oracle) std::cout << "oracle: " << (oracle_ok ? "PASS" : "FAIL: " + why) << "\n";
    }
    return oracle_ok ? 0 : 1;
}

int cmd_witness(int p, int n, const std::string& k1, const std::string& k2, bool as_json) {
    AlgebraContext ctx(p, n);
    ReductionEngine eng(build_dickson(ctx));
    auto K1 = parse_vector(k1);
    auto K2 = parse_vector(k2);
    if (static_cast<int>(K1.size()) != n || static_cast<int>(K2.size()) != n)
        throw CLI::ValidationError("--k1/--k2 must have n entries");
    IndecompReport rep = indecomposability_witness(eng, K1, K2);
    if (as_json) {
        std::cout << indecomp_report_to_json(eng, rep).dump(2) << "\n";
    } else {
        std::cout << "gamma1: " << rep.gamma1 << "\n";
        std::cout << "gamma2: " << rep.gamma2 << "\n";
        std::cout << "l: " << rep.l << "\ntarget: " << rep.target << "\n";
        std::cout << "units: " << rep.u1 << ", " << rep.u2 << "\n";
    }
    return 0;
}

int cmd_atomic(const std::string& domain, int p, int n, long long bound, bool ring_maps,
               bool as_json) {
    ModuleDomain dom = parse_domain(domain);
    if (dom == ModuleDomain::Triangular) {
        TriangularRecord rec = triangular_counterexample(bound > 0 ? bound : 8);
        if (as_json) {
            std::cout << triangular_record_to_json(rec).dump(2) << "\n";
        } else {
            std::cout << "Sq^1 h1 = h1^2 (not h2): "
                      << (rec.sq1_h1_is_h1_squared && rec.sq1_h1_differs_from_h2 ? "yes" : "NO")
                      << "\n";
            std::cout << "kernel witness: " << rec.kernel_witness << " (degree "
                      << rec.kernel_degree << ")\n";
            std::cout << (rec.ok() ? "PASS" : "FAIL") << "\n";
        }
        return rec.ok() ? 0 : 1;
    }
    GradedModule mod(dom, AlgebraContext(p, n), bound);
    AtomicOptions opt;
    opt.ring_maps = ring_maps;
    AtomicReport rep = atomic_check(mod, opt);
    if (as_json) {
        std::cout << atomic_report_to_json(rep).dump(2) << "\n";
    } else {
        std::cout << "domain " << rep.domain << " p=" << rep.p << " n=" << rep.n
                  << " bound=" << rep.bound << "\n";
        std::cout << "generator: " << rep.generator << " (degree " << rep.lowest_degree
                  << ")\n";
        std::cout << "solutions checked: " << rep.solutions_checked
                  << " (nullity " << rep.nullity << ")\n";
        std::cout << (rep.pass ? "PASS" : "FAIL: " + rep.witness) << "\n";
    }
    return rep.pass ? 0 : 1;
}

int cmd_dl(int p, const std::string& seq, bool as_json) {
    DLSequence s = parse_dl_sequence(p, seq);
    DLStats st = sequence_stats(s);
    if (as_json) {
        json j;
        j["sequence"] = to_string(s);
        j["p"] = p;
        j["degree"] = st.degree;
        if (st.excess) j["excess"] = *st.excess;
        else j["excess"] = "infinity";
        j["length"] = st.length;
        j["admissible"] = st.admissible;
        j["nonneg_excess"] = st.nonneg_excess;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "degree: " << st.degree << "\n";
        std::cout << "excess: ";
        if (st.excess) std::cout << *st.excess;
        else std::cout << "infinity";
        std::cout << "\nlength: " << st.length << "\n";
        std::cout << "admissible: " << (st.admissible ? "yes" : "no") << "\n";
        std::cout << "non-negative partial excess: " << (st.nonneg_excess ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

int cmd_selftest() {
    int fails = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) ++fails;
    };

    {
        AlgebraContext ctx(2, 3);
        DicksonGenerators g = build_dickson(ctx);
        ReductionEngine eng(g);
        auto tr = eng.reduce_full(DicksonWord{{12, 24, 6}, std::nullopt, 1});
        std::vector<Block> want{{3, 3}, {3, 2}, {3, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 3}};
        check("reduction blocks for K=(12,24,6)", tr.blocks() == want);
        check("K=(12,24,6) lands on d[3,3]^64 with unit 1", tr.m == 6 && tr.u == 1);
        std::string why;
        check("trace certified in the polynomial ring", verify_trace_oracle(eng, tr, &why));
        auto tr2 = eng.reduce_full(DicksonWord{{20, 0, 22}, std::nullopt, 1});
        std::vector<Block> want2{{3, 3}, {3, 2}, {4, 3}, {5, 2}, {6, 3}};
        check("reduction blocks for K=(20,0,22)", tr2.blocks() == want2);
        check("first word annihilates the second monomial",
              apply_word(tr.gamma, evaluate(g, DicksonWord{{20, 0, 22}, std::nullopt, 1}))
                  .is_zero());
    }
    {
        AlgebraContext ctx(3, 2);
        DicksonGenerators g = build_dickson(ctx);
        check("P^1 d[2,1] = d[2,2] at p=3", apply_power_op(1, g.gen(1)) == g.gen(2));
        check("beta M[2;0] = d[2,2]",
              apply_bockstein(mui_class(g, MuiIndex({0}))) == g.gen(2));
    }
    check("triangular counterexample", triangular_counterexample().ok());
    std::cout << (fails == 0 ? "selftest PASS" : "selftest FAIL") << "\n";
    return fails == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steenrod operations on Dickson algebras: exact symbolic toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of text");

    int p = 2, n = 2;
    long long bound = 0;
    std::string ops, input, word, k1, k2, domain, seq;
    bool trace = false, oracle = false, mui = false, ring_maps = false;

    auto* a = app.add_subcommand("apply", "apply an operation word to a polynomial or Dickson word");
    a->add_option("--p", p, "prime")->required();
    a->add_option("--n", n, "rank")->required();
    a->add_option("--ops", ops, "operation word, application-last first")->required();
    a->add_option("--input", input, "polynomial or Dickson word")->required();

    auto* gcmd = app.add_subcommand("gens", "print the Dickson generators");
    gcmd->add_option("--p", p, "prime")->required();
    gcmd->add_option("--n", n, "rank")->required();
    gcmd->add_flag("--mui", mui, "also print L and the exterior classes");

    auto* r = app.add_subcommand("reduce", "reduce a Dickson word to a power of d[n,n]");
    r->add_option("--p", p, "prime")->required();
    r->add_option("--n", n, "rank")->required();
    r->add_option("--word", word, "Dickson word")->required();
    r->add_flag("--trace", trace, "print every step");
    r->add_flag("--oracle", oracle, "replay the trace in the polynomial ring");

    auto* wcmd = app.add_subcommand("witness", "common-power certificate for two monomials");
    wcmd->add_option("--p", p, "prime")->required();
    wcmd->add_option("--n", n, "rank")->required();
    wcmd->add_option("--k1", k1, "first exponent vector, comma-separated")->required();
    wcmd->add_option("--k2", k2, "second exponent vector, comma-separated")->required();

    auto* at = app.add_subcommand("atomic", "atomicity certification / counterexample");
    at->add_option("--domain", domain, "classical|extended|sd|ideal|triangular")->required();
    at->add_option("--p", p, "prime");
    at->add_option("--n", n, "rank");
    at->add_option("--bound", bound, "degree bound");
    at->add_flag("--ring-maps", ring_maps, "restrict to multiplicative maps");

    auto* dl = app.add_subcommand("dl", "Dyer-Lashof sequence statistics");
    dl->add_option("--p", p, "prime");
    dl->add_option("--seq", seq, "sequence, e.g. Q^{(2,1)}")->required();

    app.add_subcommand("selftest", "run the built-in fixture suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("apply")) return cmd_apply(p, n, ops, input, as_json);
        if (app.got_subcommand("gens")) return cmd_gens(p, n, mui, as_json);
        if (app.got_subcommand("reduce")) return cmd_reduce(p, n, word, trace, oracle, as_json);
        if (app.got_subcommand("witness")) return cmd_witness(p, n, k1, k2, as_json);
        if (app.got_subcommand("atomic")) {
            if (bound == 0) bound = (domain == "triangular") ? 8 : 40;
            return cmd_atomic(domain, p, n, bound, ring_maps, as_json);
        }
        if (app.got_subcommand("dl")) return cmd_dl(p, seq, as_json);
        if (app.got_subcommand("selftest")) return cmd_selftest();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
