#include <catch2/catch_amalgamated.hpp>

#include "dickson/atomicity.hpp"
#include "dickson/trace_json.hpp"

using namespace dickson;

TEST_CASE("domain names") {
    for (const char* s : {"classical", "extended", "sd", "ideal", "triangular"})
        CHECK(domain_name(parse_domain(s)) == s);
    CHECK_THROWS_AS(parse_domain("dickson"), std::invalid_argument);
}

TEST_CASE("graded module construction rules") {
    CHECK_THROWS_AS(GradedModule(ModuleDomain::Extended, AlgebraContext(2, 2), 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedModule(ModuleDomain::SD, AlgebraContext(3, 3), 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedModule(ModuleDomain::Ideal, AlgebraContext(3, 3), 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedModule(ModuleDomain::Triangular, AlgebraContext(3, 2), 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(GradedModule(ModuleDomain::Classical, AlgebraContext(2, 2), 0),
                    std::invalid_argument);
}

TEST_CASE("classical module over p=2, n=2") {
    AlgebraContext ctx(2, 2);
    GradedModule mod(ModuleDomain::Classical, ctx, 12);
    CHECK(mod.lowest_degree() == 2);
    CHECK(mod.dim(2) == 1);  // d1
    CHECK(mod.dim(3) == 1);  // d2
    CHECK(mod.dim(6) == 2);  // d1^3, d2^2
    CHECK(mod.dim(1) == 0);
    CHECK(mod.word_string(mod.lowest_generator()) == "d[2,1]");

    // coordinates are exact and reject non-members
    Polynomial f = mod.basis_poly(6, 0) + mod.basis_poly(6, 1);
    auto x = mod.coords(f, 6);
    REQUIRE(x);
    CHECK(*x == std::vector<int>{1, 1});
    CHECK_FALSE(mod.coords(Polynomial::variable_y(ctx, 1, 6), 6).has_value());
    CHECK(mod.coords(Polynomial::zero(ctx), 6) == std::vector<int>(2, 0));
}

TEST_CASE("the solution space contains the identity") {
    AlgebraContext ctx(2, 2);
    GradedModule mod(ModuleDomain::Classical, ctx, 12);
    Polynomial g0 = mod.eval_word(mod.lowest_generator());
    EndoSystem sys = alinear_solve(mod, {make_constraint(mod, g0, g0)});
    REQUIRE(sys.feasible);
    // some point of the affine solution space is the identity map
    const int nullity = static_cast<int>(sys.nullspace.size());
    REQUIRE(nullity <= 12);
    bool found = false;
    std::vector<int> t(nullity, 0);
    for (long long code = 0; code < (1LL << nullity) && !found; ++code) {
        for (int i = 0; i < nullity; ++i) t[i] = static_cast<int>((code >> i) & 1);
        GradedEndo e = sys.assemble(sys.combine(t, 2));
        bool is_id = true;
        for (long long d = 1; d <= 12 && is_id; ++d)
            for (int i = 0; i < mod.dim(d) && is_id; ++i)
                is_id = endo_apply(mod, e, mod.basis_poly(d, i)) == mod.basis_poly(d, i);
        found = is_id;
    }
    CHECK(found);
}

TEST_CASE("endomorphisms commute with the operations") {
    AlgebraContext ctx(3, 2);
    GradedModule mod(ModuleDomain::Extended, ctx, 24);
    Polynomial g0 = mod.eval_word(mod.lowest_generator());
    EndoSystem sys = alinear_solve(mod, {make_constraint(mod, g0, g0)});
    REQUIRE(sys.feasible);
    GradedEndo e = sys.assemble(sys.particular);
    for (long long d = 1; d <= mod.bound(); ++d) {
        for (int i = 0; i < mod.dim(d); ++i) {
            for (const AtomicOp& op : mod.ops_from(d)) {
                Polynomial b = mod.basis_poly(d, i);
                CHECK(endo_apply(mod, e, apply_op(op, b)) == apply_op(op, endo_apply(mod, e, b)));
            }
        }
    }
}

TEST_CASE("atomicity of the certified domains") {
    SECTION("classical p=2") {
        GradedModule mod(ModuleDomain::Classical, AlgebraContext(2, 2), 12);
        AtomicReport rep = atomic_check(mod);
        CHECK(rep.pass);
        CHECK(rep.lowest_degree == 2);
        CHECK(rep.generator == "d[2,1]");
        CHECK(rep.solutions_checked >= 1);
    }
    SECTION("classical p=3") {
        GradedModule mod(ModuleDomain::Classical, AlgebraContext(3, 2), 28);
        CHECK(atomic_check(mod).pass);
    }
    SECTION("extended p=3") {
        GradedModule mod(ModuleDomain::Extended, AlgebraContext(3, 2), 40);
        AtomicReport rep = atomic_check(mod);
        CHECK(rep.pass);
        CHECK(rep.generator == "M[2;0,1]");
    }
    SECTION("sd and ideal at n=2") {
        CHECK(atomic_check(GradedModule(ModuleDomain::SD, AlgebraContext(3, 2), 40)).pass);
        CHECK(atomic_check(GradedModule(ModuleDomain::Ideal, AlgebraContext(3, 2), 40)).pass);
    }
    SECTION("triangular domain is refused") {
        GradedModule mod(ModuleDomain::Triangular, AlgebraContext(2, 2), 8);
        CHECK_THROWS_AS(atomic_check(mod), std::invalid_argument);
    }
}

TEST_CASE("triangular counterexample") {
    TriangularRecord rec = triangular_counterexample();
    CHECK(rec.sq1_h1_is_h1_squared);
    CHECK(rec.sq1_h1_differs_from_h2);
    CHECK(rec.sq1_h2_is_second_dickson);
    CHECK(rec.d21_is_h2_plus_h1_squared);
    CHECK(rec.map_found);
    CHECK(rec.kernel_maps_to_zero);
    CHECK(rec.kernel_degree == 2);
    CHECK(rec.kernel_witness == "h2+h1^2");
    CHECK(rec.ok());

    json j = triangular_record_to_json(rec);
    CHECK(j.at("verdict") == "PASS");
}

TEST_CASE("triangular module by hand") {
    AlgebraContext ctx(2, 2);
    GradedModule mod(ModuleDomain::Triangular, ctx, 8);
    Polynomial h1 = mod.eval_word(DicksonWord{{1, 0}, std::nullopt, 1});
    Polynomial h2 = mod.eval_word(DicksonWord{{0, 1}, std::nullopt, 1});
    DicksonGenerators g = build_dickson(ctx);
    CHECK(apply_power_op(1, h1) == h1 * h1);
    CHECK_FALSE(apply_power_op(1, h1) == h2);
    CHECK(apply_power_op(1, h2) == g.gen(2));
    CHECK(mod.dim(1) == 1);
    CHECK(mod.dim(2) == 2); // h1^2, h2
    CHECK(mod.word_string(DicksonWord{{2, 1}, std::nullopt, 1}) == "h1^2*h2");
}

TEST_CASE("indecomposability certificates") {
    AlgebraContext ctx(2, 2);
    ReductionEngine eng(build_dickson(ctx));

    SECTION("a word against itself") {
        IndecompReport rep = indecomposability_witness(eng, {1, 1}, {1, 1});
        CHECK(rep.gamma1 == rep.gamma2);
        CHECK(rep.witness.first.gamma == rep.witness.second.gamma);
    }
    SECTION("the two generators reach a common target") {
        IndecompReport rep = indecomposability_witness(eng, {1, 0}, {0, 1});
        CHECK(rep.l == std::max(rep.witness.first.m, rep.witness.second.m));
        Polynomial target = power(eng.gens().gen(2), pow_ll(2, (int)rep.l));
        Polynomial t1 = apply_word(rep.witness.first.gamma,
                                   evaluate(eng.gens(), DicksonWord{{1, 0}, std::nullopt, 1}));
        Polynomial t2 = apply_word(rep.witness.second.gamma,
                                   evaluate(eng.gens(), DicksonWord{{0, 1}, std::nullopt, 1}));
        CHECK(t1 == target.scaled(rep.u1));
        CHECK(t2 == target.scaled(rep.u2));
        CHECK(rep.u1 != 0);
        CHECK(rep.u2 != 0);
        CHECK(rep.target == to_string(ctx, DicksonWord{{0, pow_ll(2, (int)rep.l)},
                                                       std::nullopt, 1}));
        std::string why;
        CHECK(verify_trace_oracle(eng, rep.witness.first, &why));
        CHECK(verify_trace_oracle(eng, rep.witness.second, &why));

        json j = indecomp_report_to_json(eng, rep);
        CHECK(j.at("target") == rep.target);
        CHECK(trace_to_json(eng, trace_from_json(ctx, j.at("trace1"))) == j.at("trace1"));
    }
}

TEST_CASE("atomic report serialization") {
    GradedModule mod(ModuleDomain::Classical, AlgebraContext(2, 2), 12);
    AtomicReport rep = atomic_check(mod);
    json j = atomic_report_to_json(rep);
    CHECK(j.at("domain") == "classical");
    CHECK(j.at("verdict") == "PASS");
    CHECK(j.at("basis_sizes").at("6") == 2);
    CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("ring map filter accepts the identity") {
    GradedModule mod(ModuleDomain::Classical, AlgebraContext(2, 2), 8);
    EndoSystem sys = alinear_solve(
        mod, {make_constraint(mod, mod.eval_word(mod.lowest_generator()),
                              mod.eval_word(mod.lowest_generator()))});
    REQUIRE(sys.feasible);
    CHECK(ring_map_ok(mod, sys.assemble(sys.particular)));
    AtomicOptions opt;
    opt.ring_maps = true;
    AtomicReport rep = atomic_check(mod, opt);
    CHECK(rep.pass);
    CHECK(rep.solutions_checked >= 1);
}
