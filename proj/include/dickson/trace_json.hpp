#ifndef DICKSON_TRACE_JSON_HPP
#define DICKSON_TRACE_JSON_HPP

#include <string>

#include <json.hpp>

#include "atomicity.hpp"
#include "reduction.hpp"

namespace dickson {

using json = nlohmann::ordered_json;

/// Per-step record {step, K_in, J, minJ, iJ, block, K_out, unit, degree};
/// an exterior prefix step carries its operation word instead of a block.
inline json trace_to_json(const ReductionEngine& engine, const ReductionTrace& trace) {
    const AlgebraContext& ctx = engine.context();
    json j;
    j["p"] = ctx.p;
    j["n"] = ctx.n;
    j["input"] = to_string(ctx, trace.input);
    j["steps"] = json::array();
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ReductionStep& s = trace.steps[i];
        json js;
        js["step"] = i;
        js["in"] = to_string(ctx, s.in);
        js["K_in"] = s.in.K;
        if (s.stats) {
            js["J"] = s.stats->J;
            js["minJ"] = s.stats->minJ;
            js["iJ"] = s.stats->iJ;
        }
        if (s.block) js["block"] = {s.block->c, s.block->j};
        if (s.exterior) js["exterior"] = to_string(*s.exterior, ctx.p);
        js["out"] = to_string(ctx, s.out);
        js["K_out"] = s.out.K;
        js["unit"] = s.unit;
        js["degree"] = word_degree(engine.gens(), s.in);
        j["steps"].push_back(std::move(js));
    }
    j["gamma"] = to_string(trace.gamma, ctx.p);
    j["m"] = trace.m;
    j["u"] = trace.u;
    return j;
}

inline ReductionTrace trace_from_json(const AlgebraContext& ctx, const json& j) {
    if (j.at("p").get<int>() != ctx.p || j.at("n").get<int>() != ctx.n)
        throw std::invalid_argument("trace_from_json: (p,n) mismatch");
    ReductionTrace trace;
    trace.input = parse_dickson_word(ctx, j.at("input").get<std::string>());
    for (const json& js : j.at("steps")) {
        ReductionStep s;
        s.in = parse_dickson_word(ctx, js.at("in").get<std::string>());
        if (js.contains("J")) {
            ExponentStats st;
            st.J = js.at("J").get<std::vector<long long>>();
            st.minJ = js.at("minJ").get<int>();
            st.iJ = js.at("iJ").get<int>();
            s.stats = st;
        }
        if (js.contains("block")) {
            Block b;
            b.c = js.at("block").at(0).get<int>();
            b.j = js.at("block").at(1).get<int>();
            s.block = b;
        }
        if (js.contains("exterior"))
            s.exterior = parse_op_word(ctx.p, js.at("exterior").get<std::string>());
        s.out = parse_dickson_word(ctx, js.at("out").get<std::string>());
        s.unit = js.at("unit").get<int>();
        trace.steps.push_back(std::move(s));
    }
    trace.gamma = parse_op_word(ctx.p, j.at("gamma").get<std::string>());
    trace.m = j.at("m").get<long long>();
    trace.u = j.at("u").get<int>();
    return trace;
}

inline json atomic_report_to_json(const AtomicReport& r) {
    json j;
    j["domain"] = r.domain;
    j["p"] = r.p;
    j["n"] = r.n;
    j["bound"] = r.bound;
    json sizes = json::object();
    for (const auto& [d, k] : r.basis_sizes) sizes[std::to_string(d)] = k;
    j["basis_sizes"] = std::move(sizes);
    j["lowest_degree"] = r.lowest_degree;
    j["generator"] = r.generator;
    j["nullity"] = r.nullity;
    j["solutions_checked"] = r.solutions_checked;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

inline json triangular_record_to_json(const TriangularRecord& r) {
    json j;
    j["sq1_h1_is_h1_squared"] = r.sq1_h1_is_h1_squared;
    j["sq1_h1_differs_from_h2"] = r.sq1_h1_differs_from_h2;
    j["sq1_h2_is_second_dickson"] = r.sq1_h2_is_second_dickson;
    j["d21_is_h2_plus_h1_squared"] = r.d21_is_h2_plus_h1_squared;
    j["map_found"] = r.map_found;
    j["kernel_maps_to_zero"] = r.kernel_maps_to_zero;
    j["kernel_degree"] = r.kernel_degree;
    j["kernel_witness"] = r.kernel_witness;
    j["verdict"] = r.ok() ? "PASS" : "FAIL";
    return j;
}

inline json indecomp_report_to_json(const ReductionEngine& engine, const IndecompReport& r) {
    json j;
    j["p"] = engine.context().p;
    j["n"] = engine.context().n;
    j["K1"] = r.K1;
    j["K2"] = r.K2;
    j["gamma1"] = r.gamma1;
    j["gamma2"] = r.gamma2;
    j["u1"] = r.u1;
    j["u2"] = r.u2;
    j["l"] = r.l;
    j["target"] = r.target;
    j["trace1"] = trace_to_json(engine, r.witness.first);
    j["trace2"] = trace_to_json(engine, r.witness.second);
    return j;
}

} // namespace dickson

#endif
