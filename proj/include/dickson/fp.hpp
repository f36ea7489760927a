#ifndef DICKSON_FP_HPP
#define DICKSON_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dickson {

// Arithmetic in Z/pZ with representatives in {0,...,p-1}.

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline int fp_norm(long long a, int p) {
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int fp_add(int a, int b, int p) { return (a + b) % p; }
inline int fp_sub(int a, int b, int p) { return (a - b + p) % p; }
inline int fp_mul(int a, int b, int p) {
    return static_cast<int>((static_cast<long long>(a) * b) % p);
}

inline int fp_pow(int a, long long e, int p) {
    int r = 1 % p;
    int b = fp_norm(a, p);
    while (e > 0) {
        if (e & 1) r = fp_mul(r, b, p);
        b = fp_mul(b, b, p);
        e >>= 1;
    }
    return r;
}

inline int fp_inv(int a, int p) {
    a = fp_norm(a, p);
    if (a == 0) throw std::invalid_argument("fp_inv: zero is not invertible");
    return fp_pow(a, p - 2, p);
}

// Binomial coefficient mod p by Lucas' theorem.
inline int binom_mod_p(long long n, long long k, int p) {
    if (k < 0 || k > n) return 0;
    int result = 1;
    while (n > 0 || k > 0) {
        int nd = static_cast<int>(n % p);
        int kd = static_cast<int>(k % p);
        if (kd > nd) return 0;
        // C(nd, kd) for digits < p
        int c = 1;
        for (int i = 0; i < kd; ++i)
            c = fp_mul(c, fp_mul(nd - i, fp_inv(i + 1, p), p), p);
        result = fp_mul(result, c, p);
        n /= p;
        k /= p;
    }
    return result;
}

// Smallest primitive root mod p (p an odd prime).
inline int primitive_root(int p) {
    std::vector<int> factors;
    int m = p - 1;
    for (int q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            factors.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) factors.push_back(m);
    for (int g = 2; g < p; ++g) {
        bool ok = true;
        for (int q : factors)
            if (fp_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: none found for p=" + std::to_string(p));
}

// Lowest nonzero p-adic term of k: returns (a, m) with a*p^m the lowest term.
// a = 0 when k = 0.
struct PadicTerm {
    int a = 0;
    int m = 0;
};

inline PadicTerm lowest_padic_term(long long k, int p) {
    PadicTerm t;
    if (k == 0) return t;
    while (k % p == 0) { k /= p; ++t.m; }
    t.a = static_cast<int>(k % p);
    return t;
}

} // namespace dickson

#endif
