#ifndef DICKSON_DYER_LASHOF_HPP
#define DICKSON_DYER_LASHOF_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fp.hpp"

namespace dickson {

/// A Dyer-Lashof sequence (I,eps) = ((i_k,...,i_1),(e_k,...,e_1)); i_k is
/// the outermost (leftmost) operation.  At p=2 all e_j = 0.
struct DLSequence {
    std::vector<long long> I;  // (i_k, ..., i_1)
    std::vector<int> eps;      // (e_k, ..., e_1); may be empty meaning all 0
    int p = 2;
};

struct DLStats {
    long long degree = 0;
    std::optional<long long> excess; // nullopt = infinity (empty I)
    long long length = 0;
    bool admissible = true;
    bool nonneg_excess = true; // all partial excesses non-negative
};

inline DLStats sequence_stats(const DLSequence& s) {
    if (!is_prime(s.p)) throw std::invalid_argument("sequence_stats: p must be prime");
    std::vector<int> eps = s.eps;
    if (eps.empty()) eps.assign(s.I.size(), 0);
    if (eps.size() != s.I.size())
        throw std::invalid_argument("sequence_stats: length mismatch between I and eps");
    for (int e : eps)
        if (e != 0 && e != 1) throw std::invalid_argument("sequence_stats: eps bits must be 0/1");
    if (s.p == 2)
        for (int e : eps)
            if (e != 0) throw std::invalid_argument("sequence_stats: eps must vanish at p=2");

    const long long k = static_cast<long long>(s.I.size());
    DLStats st;
    st.length = k;

    // |Q^{I,eps}| = 2(p-1) sum i_t - sum e_t   [sum i_t at p=2]
    auto degree_of = [&](long long len) {
        long long si = 0, se = 0;
        for (long long t = 0; t < len; ++t) { si += s.I[t]; se += eps[t]; }
        return s.p == 2 ? si : 2 * (s.p - 1) * si - se;
    };
    st.degree = degree_of(k);

    // exc = i_k - e_k - 2(p-1) sum_{1}^{k-1} i_t  [i_k - sum tail at p=2];
    // I is stored outermost-first, so the "tail" is I[1..].
    auto excess_of = [&](long long start) -> std::optional<long long> {
        if (start >= k) return std::nullopt; // empty sequence: infinity
        long long tail = 0;
        for (long long t = start + 1; t < k; ++t) tail += s.I[t];
        if (s.p == 2) return s.I[start] - tail;
        return s.I[start] - eps[start] - 2 * (s.p - 1) * tail;
    };
    st.excess = excess_of(0);

    // admissible: p i_j - e_j >= i_{j-1} for 2 <= j <= k; in the stored
    // (outermost-first) order that is p I[t] - eps[t] >= I[t-1] read from
    // the inner end, i.e. for consecutive entries I[t], I[t+1]:
    // p I[t] - eps[t] >= I[t+1].
    for (long long t = 0; t + 1 < k; ++t)
        if (s.p * s.I[t] - eps[t] < s.I[t + 1]) { st.admissible = false; break; }

    for (long long t = 0; t < k; ++t) {
        auto e = excess_of(t);
        if (e && *e < 0) { st.nonneg_excess = false; break; }
    }
    return st;
}

/// Text form: Q^{(i_k,...,i_1)} or Q^{(i_k,...,i_1);(e_k,...,e_1)}.
inline std::string to_string(const DLSequence& s) {
    std::ostringstream out;
    out << "Q^{(";
    for (std::size_t t = 0; t < s.I.size(); ++t) {
        if (t) out << ",";
        out << s.I[t];
    }
    out << ")";
    bool any_eps = false;
    for (int e : s.eps) any_eps |= (e != 0);
    if (any_eps) {
        out << ";(";
        for (std::size_t t = 0; t < s.eps.size(); ++t) {
            if (t) out << ",";
            out << s.eps[t];
        }
        out << ")";
    }
    out << "}";
    return out.str();
}

inline DLSequence parse_dl_sequence(int p, const std::string& text) {
    DLSequence s;
    s.p = p;
    std::size_t pos = text.find("Q^{(");
    if (pos == std::string::npos)
        throw std::invalid_argument("parse error: expected Q^{(...)}");
    std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("parse error: missing ')'");
    std::string ilist = text.substr(pos + 4, close - pos - 4);
    if (!ilist.empty()) {
        std::istringstream in(ilist);
        std::string tok;
        while (std::getline(in, tok, ',')) s.I.push_back(std::stoll(tok));
    }
    std::size_t semi = text.find(";(", close);
    if (semi != std::string::npos) {
        std::size_t close2 = text.find(')', semi);
        if (close2 == std::string::npos) throw std::invalid_argument("parse error: missing ')'");
        std::string elist = text.substr(semi + 2, close2 - semi - 2);
        std::istringstream in(elist);
        std::string tok;
        while (std::getline(in, tok, ',')) s.eps.push_back(std::stoi(tok));
    }
    return s;
}

} // namespace dickson

#endif
