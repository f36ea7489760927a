#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dickson/generators.hpp"
#include "dickson/steenrod.hpp"

using namespace dickson;

namespace {

Polynomial random_poly(std::mt19937& rng, const AlgebraContext& ctx, int max_terms = 4,
                       int max_exp = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(1, ctx.p - 1);
    std::uniform_int_distribution<long long> expd(0, max_exp);
    std::uniform_int_distribution<int> extbit(0, 3);
    Polynomial f(ctx);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        m.exp.resize(ctx.n);
        for (int j = 0; j < ctx.n; ++j) m.exp[j] = expd(rng);
        if (!ctx.char2())
            for (int j = 0; j < ctx.n; ++j)
                if (extbit(rng) == 0) m.ext |= 1u << j;
        f.add_term(m, coeff(rng));
    }
    return f;
}

} // namespace

TEST_CASE("power operation on generators") {
    AlgebraContext c2(2, 2);
    Polynomial y1y2 = Polynomial::variable_y(c2, 1) * Polynomial::variable_y(c2, 2);
    CHECK(apply_power_op(1, y1y2) == parse_polynomial(c2, "y1^2*y2 + y1*y2^2"));

    AlgebraContext c3(3, 2);
    // P^a y^e = C(e,a) y^{e+(p-1)a}
    CHECK(apply_power_op(1, Polynomial::variable_y(c3, 1)) ==
          Polynomial::variable_y(c3, 1, 3));
    CHECK(apply_power_op(2, Polynomial::variable_y(c3, 1)).is_zero());
    // exterior classes absorb nothing
    CHECK(apply_power_op(1, Polynomial::variable_x(c3, 1)).is_zero());
    CHECK(apply_power_op(0, y1y2) == y1y2);
}

TEST_CASE("generator action table cases") {
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
        AlgebraContext ctx(p, n);
        DicksonGenerators g = build_dickson(ctx);
        for (int i = 1; i < n; ++i)
            CHECK(apply_power_op(pow_ll(p, n - i - 1), g.gen(i)) == g.gen(i + 1));
        CHECK(apply_power_op(pow_ll(p, n - 1), g.gen(n)) == (g.gen(n) * g.gen(1)).scaled(-1));
    }
}

TEST_CASE("bockstein") {
    AlgebraContext ctx(3, 2);
    Polynomial x1 = Polynomial::variable_x(ctx, 1);
    Polynomial x2 = Polynomial::variable_x(ctx, 2);
    CHECK(apply_bockstein(x1) == Polynomial::variable_y(ctx, 1));
    CHECK(apply_bockstein(x1 * x2) == parse_polynomial(ctx, "y1*x2 - x1*y2"));

    std::mt19937 rng(17);
    int cases = 0;
    for (int p : {2, 3, 5}) {
        AlgebraContext c(p, 3);
        for (int i = 0; i < 180; ++i) {
            Polynomial f = random_poly(rng, c);
            REQUIRE(apply_bockstein(apply_bockstein(f)).is_zero());
            ++cases;
        }
    }
    CHECK(cases >= 500);
}

TEST_CASE("cartan identity, randomized") {
    std::mt19937 rng(19);
    int cases = 0;
    for (int p : {2, 3}) {
        AlgebraContext ctx(p, 2);
        for (int i = 0; i < 260; ++i) {
            Polynomial f = random_poly(rng, ctx, 3, 4);
            Polynomial g = random_poly(rng, ctx, 3, 4);
            long long k = 1 + i % 5;
            Polynomial lhs = apply_power_op(k, f * g);
            Polynomial rhs(ctx);
            for (long long a = 0; a <= k; ++a)
                rhs += apply_power_op(a, f) * apply_power_op(k - a, g);
            REQUIRE(lhs == rhs);
            ++cases;
        }
    }
    CHECK(cases >= 500);
}

TEST_CASE("bockstein is a derivation, randomized") {
    std::mt19937 rng(23);
    for (int p : {3, 5}) {
        AlgebraContext ctx(p, 3);
        for (int i = 0; i < 150; ++i) {
            Polynomial f = random_poly(rng, ctx, 3, 3);
            Polynomial g = random_poly(rng, ctx, 3, 3);
            // beta(fg) = beta(f) g + (-1)^{|f|} f beta(g), per homogeneous part;
            // checked on homogeneous draws only
            auto df = f.homogeneous_degree();
            if (!df) continue;
            int sign = (*df % 2) ? -1 : 1;
            Polynomial rhs = apply_bockstein(f) * g + (f * apply_bockstein(g)).scaled(sign);
            REQUIRE(apply_bockstein(f * g) == rhs);
        }
    }
}

TEST_CASE("unstability bounds, randomized") {
    std::mt19937 rng(29);
    int cases = 0;
    for (int p : {2, 3}) {
        AlgebraContext ctx(p, 2);
        for (int i = 0; i < 480; ++i) {
            Polynomial f = random_poly(rng, ctx, 3, 4);
            auto d = f.homogeneous_degree();
            if (!d || f.has_exterior_content()) continue;
            long long half = ctx.char2() ? *d : *d / 2;
            // top operation is the p-th power, everything above vanishes
            REQUIRE(apply_power_op(half, f) == power(f, ctx.p));
            REQUIRE(apply_power_op(half + 1 + i % 3, f).is_zero());
            cases += 2;
        }
    }
    CHECK(cases >= 500);
}

TEST_CASE("iterated blocks") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    Polynomial dK = evaluate(g, DicksonWord{{12, 24, 6}, std::nullopt, 1});
    Polynomial want = evaluate(g, DicksonWord{{12, 24, 8}, std::nullopt, 1});
    CHECK(apply_iterated(3, 3, dK) == want);

    Polynomial f = Polynomial::variable_y(ctx, 1, 4);
    CHECK(apply_iterated(2, 1, f) == apply_power_op(4, f));
    CHECK_THROWS_AS(apply_iterated(2, 4, f), std::invalid_argument);
    CHECK_THROWS_AS(apply_iterated(2, 0, f), std::invalid_argument);
}

TEST_CASE("beta after a block separates the one-index exterior classes") {
    AlgebraContext ctx(3, 3);
    DicksonGenerators g = build_dickson(ctx);
    for (int i = 0; i < 3; ++i) {
        Polynomial M = mui_class(g, MuiIndex({i}));
        for (int t = 0; t < 3; ++t) {
            Polynomial v = t == 0 ? M : apply_iterated(t - 1, t, M);
            v = apply_bockstein(v);
            if (t == i) CHECK(v == g.gen(3));
            else CHECK(v.is_zero());
        }
    }
}

TEST_CASE("operation words") {
    AlgebraContext ctx(2, 3);
    DicksonGenerators g = build_dickson(ctx);
    Polynomial dK = evaluate(g, DicksonWord{{12, 24, 6}, std::nullopt, 1});

    SECTION("empty word is the identity") {
        CHECK(apply_word(OpWord{}, dK) == dK);
    }
    SECTION("the seven-block word reaches the top power") {
        std::vector<Block> blocks{{3, 3}, {3, 2}, {3, 1}, {4, 3}, {4, 2}, {4, 1}, {6, 3}};
        OpWord w = word_from_blocks(blocks, 2);
        Polynomial want = power(g.gen(3), 64);
        CHECK(apply_word(w, dK) == want);
        Polynomial other = evaluate(g, DicksonWord{{20, 0, 22}, std::nullopt, 1});
        CHECK(apply_word(w, other).is_zero());
    }
}

TEST_CASE("operation word grammar") {
    OpWord w = parse_op_word(2, "Sq^2 Sq^4 Sq^8");
    REQUIRE(w.ops.size() == 3);
    CHECK(w.ops[0].k == 8); // rightmost applied first
    CHECK(w.ops[2].k == 2);
    CHECK(to_string(w, 2) == "Sq^2 Sq^4 Sq^8");

    OpWord b = parse_op_word(2, "Sq(2^3,3)");
    REQUIRE(b.blocks.size() == 1);
    CHECK(b.blocks[0] == Block{3, 3});
    REQUIRE(b.ops.size() == 3);
    CHECK(b.ops[0].k == 8);
    CHECK(to_string(b, 2) == "Sq(2^3,3)");

    OpWord odd = parse_op_word(3, "b P^3 b P^1");
    REQUIRE(odd.ops.size() == 4);
    CHECK(odd.ops[0].kind == AtomicOp::Power);
    CHECK(odd.ops[1].kind == AtomicOp::Bockstein);
    CHECK(to_string(odd, 3) == "b P^3 b P^1");

    CHECK_THROWS_AS(parse_op_word(2, "P^3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_op_word(3, "Sq^2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_op_word(2, "Sq(3^2,1)"), std::invalid_argument);

    // a mixed word expands its blocks in place, largest exponent first
    OpWord mixed = parse_op_word(3, "b P(3^1,2)");
    REQUIRE(mixed.ops.size() == 3);
    CHECK(mixed.ops[0].k == 3);
    CHECK(mixed.ops[1].k == 1);
    CHECK(mixed.ops[2].kind == AtomicOp::Bockstein);
}

TEST_CASE("operation degrees") {
    CHECK(op_degree(AtomicOp{AtomicOp::Power, 4}, 2) == 4);
    CHECK(op_degree(AtomicOp{AtomicOp::Power, 4}, 3) == 16);
    CHECK(op_degree(AtomicOp{AtomicOp::Bockstein, 0}, 3) == 1);

    std::mt19937 rng(31);
    for (int p : {2, 3}) {
        AlgebraContext ctx(p, 2);
        for (int i = 0; i < 100; ++i) {
            Polynomial f = random_poly(rng, ctx, 3, 4);
            auto d = f.homogeneous_degree();
            if (!d) continue;
            AtomicOp op{AtomicOp::Power, 1 + (long long)(rng() % 4)};
            Polynomial v = apply_op(op, f);
            if (!v.is_zero())
                REQUIRE(v.homogeneous_degree() == *d + op_degree(op, p));
        }
    }
}
