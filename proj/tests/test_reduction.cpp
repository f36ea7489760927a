#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dickson/reduction.hpp"
#include "dickson/trace_json.hpp"

using namespace dickson;

TEST_CASE("lowest p-adic statistics") {
    SECTION("first fixture") {
        ExponentStats st = padic_stats(2, {12, 24, 6});
        CHECK(st.J == std::vector<long long>{4, 8, 2});
        CHECK(st.minJ == 3);
        CHECK(st.iJ == 3);
    }
    SECTION("second fixture") {
        ExponentStats st = padic_stats(2, {12, 24, 8});
        CHECK(st.minJ == 3);
        CHECK(st.iJ == 2);
    }
    SECTION("only the top exponent contributes") {
        ExponentStats st = padic_stats(2, {0, 0, 1});
        CHECK(st.J == std::vector<long long>{0, 0, 1});
        CHECK(st.minJ == 2);
        CHECK(st.iJ == 3);
    }
    SECTION("zero vector rejected") {
        CHECK_THROWS_AS(padic_stats(2, {0, 0, 0}), std::invalid_argument);
    }
}

TEST_CASE("single rewriting step") {
    AlgebraContext ctx(2, 3);
    ReductionEngine eng(build_dickson(ctx));

    SECTION("lowest digit moves to the top exponent") {
        auto [block, out, unit] = eng.reduce_step(DicksonWord{{12, 24, 6}, std::nullopt, 1});
        CHECK(block == Block{3, 3});
        CHECK(out.K == std::vector<long long>{12, 24, 8});
        CHECK(unit == 1);
    }
    SECTION("digit transferred from position one") {
        auto [block, out, unit] = eng.reduce_step(DicksonWord{{12, 24, 8}, std::nullopt, 1});
        CHECK(block == Block{3, 2});
        CHECK(out.K == std::vector<long long>{8, 24, 12});
    }
    SECTION("top-raising case") {
        auto [block, out, unit] = eng.reduce_step(DicksonWord{{0, 0, 3}, std::nullopt, 1});
        CHECK(block == Block{2, 3});
        CHECK(out.K == std::vector<long long>{0, 0, 4});
    }
    SECTION("words with an exterior factor are refused") {
        AlgebraContext c3(3, 3);
        ReductionEngine e3(build_dickson(c3));
        CHECK_THROWS_AS(e3.reduce_step(DicksonWord{{0, 0, 1}, MuiIndex({0}), 1}),
                        std::invalid_argument);
    }
}

TEST_CASE("full reduction fixtures") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);

    SECTION("K=(12,24,6)") {
        auto tr = eng.reduce_full(DicksonWord{{12, 24, 6}, std::nullopt, 1});
        std::vector<Block> want{{3, 3}, {3, 2}, {3, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 3}};
        CHECK(tr.blocks() == want);
        CHECK(tr.gamma.blocks == want);
        CHECK(tr.m == 6);
        CHECK(tr.u == 1);
        CHECK(tr.steps[0].out.K == std::vector<long long>{12, 24, 8});
        std::string why;
        CHECK(verify_trace_oracle(eng, tr, &why));
        CHECK(to_string(tr.gamma, 2) ==
              "Sq(2^6,3) Sq(2^4,1) Sq(2^4,2) Sq(2^4,3) Sq(2^3,1) Sq(2^3,2) Sq(2^3,3)");
    }
    SECTION("K=(20,0,22) and cross-annihilation") {
        auto tr = eng.reduce_full(DicksonWord{{20, 0, 22}, std::nullopt, 1});
        std::vector<Block> want{{3, 3}, {3, 2}, {4, 3}, {5, 2}, {6, 3}};
        CHECK(tr.blocks() == want);
        CHECK(tr.m == 6);
        CHECK(tr.u == 1);
        auto trA = eng.reduce_full(DicksonWord{{12, 24, 6}, std::nullopt, 1});
        CHECK(apply_word(trA.gamma, evaluate(g, DicksonWord{{20, 0, 22}, std::nullopt, 1}))
                  .is_zero());
    }
    SECTION("already reduced") {
        auto tr = eng.reduce_full(DicksonWord{{0, 0, 4}, std::nullopt, 1});
        CHECK(tr.steps.empty());
        CHECK(tr.gamma.ops.empty());
        CHECK(tr.m == 2);
        CHECK(tr.u == 1);
    }
    SECTION("zero exponent vector rejected") {
        CHECK_THROWS_AS(eng.reduce_full(DicksonWord{{0, 0, 0}, std::nullopt, 1}),
                        std::invalid_argument);
    }
}

TEST_CASE("degree bookkeeping along a trace") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);
    auto tr = eng.reduce_full(DicksonWord{{12, 24, 6}, std::nullopt, 1});
    for (const auto& s : tr.steps) {
        long long added = 0;
        REQUIRE(s.block);
        for (const AtomicOp& op : expand_block(*s.block, 2)) added += op_degree(op, 2);
        CHECK(word_degree(g, s.out) == word_degree(g, s.in) + added);
    }
}

TEST_CASE("exterior words") {
    AlgebraContext ctx(3, 2);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);

    SECTION("one-index words") {
        OpWord w0 = eng.exterior_word(MuiIndex({0}));
        REQUIRE(w0.ops.size() == 1);
        CHECK(w0.ops[0].kind == AtomicOp::Bockstein);
        CHECK(apply_word(w0, mui_class(g, MuiIndex({0}))) == g.gen(2));

        OpWord w1 = eng.exterior_word(MuiIndex({1}));
        REQUIRE(w1.ops.size() == 2);
        CHECK(w1.ops[0] == AtomicOp{AtomicOp::Power, 1});
        CHECK(w1.ops[1].kind == AtomicOp::Bockstein);
        CHECK(apply_word(w1, mui_class(g, MuiIndex({0}))).is_zero());
    }
    SECTION("full initial segment gives the pure bockstein part") {
        OpWord w = eng.exterior_word(MuiIndex({0, 1}));
        Polynomial v = apply_word(w, mui_class(g, MuiIndex({0, 1})));
        CHECK(v == g.gen(2).scaled(-1)); // unit times d_{2,2}
    }
    SECTION("p=2 has no exterior theory") {
        AlgebraContext c2(2, 2);
        ReductionEngine e2(build_dickson(c2));
        CHECK_THROWS_AS(e2.exterior_word(MuiIndex({0})), std::invalid_argument);
    }
}

TEST_CASE("full reduction with an exterior prefix") {
    AlgebraContext ctx(3, 2);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);
    for (const MuiIndex& S : all_mui_indices(2)) {
        DicksonWord w{{1, 1}, S, 1};
        auto tr = eng.reduce_full(w);
        REQUIRE(tr.steps.size() >= 2);
        CHECK(tr.steps[0].exterior.has_value());
        CHECK_FALSE(tr.steps[0].out.mui);
        std::string why;
        INFO(why);
        CHECK(verify_trace_oracle(eng, tr, &why));
        // final word really is u * d_{2,2}^{p^m}
        Polynomial final_target = power(g.gen(2), pow_ll(3, (int)tr.m)).scaled(tr.u);
        CHECK(apply_word(tr.gamma, evaluate(g, w)) == final_target);
    }
}

TEST_CASE("common power witness") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);

    SECTION("equal inputs give equal traces") {
        auto wit = eng.common_power_witness({12, 24, 6}, {12, 24, 6});
        CHECK(wit.l == 6);
        CHECK(wit.first.gamma == wit.second.gamma);
    }
    SECTION("raising equalizes different exponents") {
        auto wit = eng.common_power_witness({0, 0, 2}, {0, 0, 4});
        CHECK(wit.l == 2);
        // one extra raising pass on the first trace
        CHECK(wit.first.steps.size() == wit.second.steps.size() + 1);
        std::string why;
        CHECK(verify_trace_oracle(eng, wit.first, &why));
        CHECK(verify_trace_oracle(eng, wit.second, &why));
        Polynomial t1 = apply_word(wit.first.gamma, evaluate(g, DicksonWord{{0, 0, 2}, std::nullopt, 1}));
        Polynomial t2 = apply_word(wit.second.gamma, evaluate(g, DicksonWord{{0, 0, 4}, std::nullopt, 1}));
        CHECK(t1 == t2);
        CHECK(t1 == power(g.gen(3), 4));
    }
    SECTION("the two fixture monomials") {
        auto wit = eng.common_power_witness({12, 24, 6}, {20, 0, 22});
        CHECK(wit.l == 6);
    }
}

TEST_CASE("termination and monotonicity on a sweep") {
    std::mt19937 rng(41);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        AlgebraContext ctx(p, n);
        DicksonGenerators g = build_dickson(ctx);
        ReductionEngine eng(g);
        long long cap = pow_ll(p, 3);
        for (long long a = 0; a < cap; ++a) {
            for (long long b = 0; b < cap; ++b) {
                if (a == 0 && b == 0) continue;
                auto tr = eng.reduce_full(DicksonWord{{a, b}, std::nullopt, 1});
                for (const auto& s : tr.steps) {
                    REQUIRE(s.out.K[n - 1] > s.in.K[n - 1]);
                    for (int i = 0; i + 1 < n; ++i) REQUIRE(s.out.K[i] <= s.in.K[i]);
                }
                if (rng() % 20 == 0) {
                    std::string why;
                    INFO("K=(" << a << "," << b << "): " << why);
                    REQUIRE(verify_trace_oracle(eng, tr, &why));
                }
            }
        }
    }
}

TEST_CASE("trace serialization round-trip") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    ReductionEngine eng(g);
    auto tr = eng.reduce_full(DicksonWord{{12, 24, 6}, std::nullopt, 1});
    json j = trace_to_json(eng, tr);
    ReductionTrace back = trace_from_json(ctx, j);
    CHECK(trace_to_json(eng, back) == j);
    CHECK(back.gamma == tr.gamma);
    CHECK(back.m == tr.m);
    CHECK(back.u == tr.u);

    AlgebraContext c3(3, 2);
    DicksonGenerators g3 = build_dickson(c3);
    ReductionEngine e3(g3);
    auto tr3 = e3.reduce_full(DicksonWord{{2, 1}, MuiIndex({0, 1}), 1});
    json j3 = trace_to_json(e3, tr3);
    CHECK(trace_to_json(e3, trace_from_json(c3, j3)) == j3);
    CHECK_THROWS_AS(trace_from_json(ctx, j3), std::invalid_argument);
}

TEST_CASE("proportionality units") {
    AlgebraContext ctx(3, 2);
    Polynomial f = parse_polynomial(ctx, "y1^2 + y2^2");
    CHECK(proportionality_unit(f.scaled(2), f) == 2);
    CHECK_THROWS_AS(proportionality_unit(f, parse_polynomial(ctx, "y1^2")),
                    std::runtime_error);
    CHECK_THROWS_AS(proportionality_unit(Polynomial::zero(ctx), f), std::runtime_error);
}
