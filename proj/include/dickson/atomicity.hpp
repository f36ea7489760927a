#ifndef DICKSON_ATOMICITY_HPP
#define DICKSON_ATOMICITY_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reduction.hpp"

namespace dickson {

/// The graded F_p-modules whose degree-0 A-endomorphisms are examined.
/// Triangular is P[h1,h2] with h1 = y1, h2 = y2^2 + y2 y1 at p=2, n=2
/// (the invariants of the upper-triangular subgroup).
enum class ModuleDomain { Classical, Extended, SD, Ideal, Triangular };

inline std::string domain_name(ModuleDomain d) {
    switch (d) {
        case ModuleDomain::Classical: return "classical";
        case ModuleDomain::Extended: return "extended";
        case ModuleDomain::SD: return "sd";
        case ModuleDomain::Ideal: return "ideal";
        case ModuleDomain::Triangular: return "triangular";
    }
    throw std::logic_error("domain_name: unknown domain");
}

inline ModuleDomain parse_domain(const std::string& s) {
    if (s == "classical") return ModuleDomain::Classical;
    if (s == "extended") return ModuleDomain::Extended;
    if (s == "sd") return ModuleDomain::SD;
    if (s == "ideal") return ModuleDomain::Ideal;
    if (s == "triangular") return ModuleDomain::Triangular;
    throw std::invalid_argument("unknown domain '" + s + "'");
}

/// A degree-graded module with an explicit monomial basis per degree
/// (1..bound) and exact coordinates over F_p.
class GradedModule {
public:
    GradedModule(ModuleDomain dom, const AlgebraContext& ctx, long long bound)
        : dom_(dom), ctx_(ctx), bound_(bound) {
        if (bound < 1) throw std::invalid_argument("GradedModule: bound must be positive");
        if (dom == ModuleDomain::Triangular) {
            if (!ctx.char2() || ctx.n != 2)
                throw std::invalid_argument("triangular module needs p=2, n=2");
            h1_ = Polynomial::variable_y(ctx, 1);
            h2_ = Polynomial::variable_y(ctx, 2, 2) +
                  Polynomial::variable_y(ctx, 2) * Polynomial::variable_y(ctx, 1);
        } else {
            if ((dom == ModuleDomain::Extended || dom == ModuleDomain::SD ||
                 dom == ModuleDomain::Ideal) &&
                ctx.char2())
                throw std::invalid_argument("exterior-carrying module needs odd p");
            if ((dom == ModuleDomain::SD || dom == ModuleDomain::Ideal) && ctx.n != 2)
                throw std::invalid_argument("sd/ideal modules are certified at n=2 only");
            gens_ = build_dickson(ctx);
        }
        basis_.resize(bound_ + 1);
        evals_.resize(bound_ + 1);
        for (long long d = 1; d <= bound_; ++d) {
            basis_[d] = build_basis(d);
            for (const auto& w : basis_[d]) evals_[d].push_back(eval_word(w));
        }
    }

    ModuleDomain domain() const { return dom_; }
    const AlgebraContext& context() const { return ctx_; }
    long long bound() const { return bound_; }
    const DicksonGenerators& gens() const {
        if (dom_ == ModuleDomain::Triangular)
            throw std::logic_error("triangular module has no Dickson generators");
        return *gens_;
    }

    int dim(long long d) const {
        if (d < 1 || d > bound_) return 0;
        return static_cast<int>(basis_[d].size());
    }
    const std::vector<DicksonWord>& basis(long long d) const { return basis_.at(d); }
    const Polynomial& basis_poly(long long d, int i) const { return evals_.at(d).at(i); }

    long long lowest_degree() const {
        for (long long d = 1; d <= bound_; ++d)
            if (dim(d) > 0) return d;
        throw std::logic_error("GradedModule: empty within the bound");
    }

    /// The distinguished lowest-degree generator the atomicity statements
    /// pin a scalar on.
    DicksonWord lowest_generator() const {
        const int n = ctx_.n;
        DicksonWord w{std::vector<long long>(n, 0), std::nullopt, 1};
        switch (dom_) {
            case ModuleDomain::Classical: w.K[0] = 1; break;
            case ModuleDomain::Extended: {
                std::vector<int> all(n);
                for (int i = 0; i < n; ++i) all[i] = i;
                w.mui = MuiIndex(std::move(all));
                break;
            }
            case ModuleDomain::SD: w.mui = MuiIndex({n - 2, n - 1}); break;
            case ModuleDomain::Ideal: w.mui = MuiIndex({0, n - 1}); break;
            case ModuleDomain::Triangular: w.K[0] = 1; break;
        }
        return w;
    }

    Polynomial eval_word(const DicksonWord& w) const {
        if (dom_ == ModuleDomain::Triangular) {
            Polynomial r = Polynomial::constant(ctx_, w.coeff);
            if (w.K[0] > 0) r *= power(h1_, w.K[0]);
            if (w.K[1] > 0) r *= power(h2_, w.K[1]);
            return r;
        }
        return evaluate(*gens_, w);
    }

    std::string word_string(const DicksonWord& w) const {
        if (dom_ != ModuleDomain::Triangular) return to_string(ctx_, w);
        std::vector<std::string> factors;
        for (int i = 0; i < 2; ++i) {
            if (w.K[i] == 0) continue;
            std::string s = "h" + std::to_string(i + 1);
            if (w.K[i] != 1) s += "^" + std::to_string(w.K[i]);
            factors.push_back(s);
        }
        std::string joined;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) joined += "*";
            joined += factors[i];
        }
        if (factors.empty()) return std::to_string(w.coeff);
        if (w.coeff != 1) return std::to_string(w.coeff) + "*" + joined;
        return joined;
    }

    /// Coordinates of a homogeneous f in the degree-d basis; nullopt when
    /// f is outside the span.
    std::optional<std::vector<int>> coords(const Polynomial& f, long long d) const {
        const int k = dim(d);
        std::vector<int> x(k, 0);
        if (f.is_zero()) return x;
        auto fd = f.homogeneous_degree();
        if (!fd || *fd != d) return std::nullopt;
        if (k == 0) return std::nullopt;

        std::map<Monomial, int, MonomialLess> rows;
        auto note = [&](const Polynomial& h) {
            for (const auto& [m, c] : h.terms())
                if (!rows.count(m)) rows.emplace(m, static_cast<int>(rows.size()));
        };
        note(f);
        for (const auto& e : evals_[d]) note(e);
        const int p = ctx_.p;
        const int nrows = static_cast<int>(rows.size());
        std::vector<std::vector<int>> A(nrows, std::vector<int>(k + 1, 0));
        for (int j = 0; j < k; ++j)
            for (const auto& [m, c] : evals_[d][j].terms()) A[rows.at(m)][j] = c;
        for (const auto& [m, c] : f.terms()) A[rows.at(m)][k] = c;

        int rank = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < k && rank < nrows; ++col) {
            int piv = -1;
            for (int r = rank; r < nrows; ++r)
                if (A[r][col] != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(A[rank], A[piv]);
            int inv = fp_inv(A[rank][col], p);
            for (int c = col; c <= k; ++c) A[rank][c] = fp_mul(A[rank][c], inv, p);
            for (int r = 0; r < nrows; ++r) {
                if (r == rank || A[r][col] == 0) continue;
                int factor = A[r][col];
                for (int c = col; c <= k; ++c)
                    A[r][c] = fp_sub(A[r][c], fp_mul(factor, A[rank][c], p), p);
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (int r = rank; r < nrows; ++r)
            if (A[r][k] != 0) return std::nullopt;
        for (int r = 0; r < rank; ++r) x[pivot_col[r]] = A[r][k];
        // the basis is independent, so the solution is unique; confirm
        Polynomial rebuilt(ctx_);
        for (int j = 0; j < k; ++j)
            if (x[j] != 0) rebuilt += evals_[d][j].scaled(x[j]);
        if (!(rebuilt == f)) return std::nullopt;
        return x;
    }

    /// The atomic operations with image degree still within the bound.
    std::vector<AtomicOp> ops_from(long long d) const {
        std::vector<AtomicOp> ops;
        if (!ctx_.char2() && d + 1 <= bound_) ops.push_back({AtomicOp::Bockstein, 0});
        const long long unit = ctx_.char2() ? 1 : 2 * (ctx_.p - 1);
        for (long long k = 1; d + k * unit <= bound_; ++k)
            ops.push_back({AtomicOp::Power, k});
        return ops;
    }

private:
    ModuleDomain dom_;
    AlgebraContext ctx_;
    long long bound_;
    std::optional<DicksonGenerators> gens_;
    Polynomial h1_, h2_;
    std::vector<std::vector<DicksonWord>> basis_;
    std::vector<std::vector<Polynomial>> evals_;

    std::vector<DicksonWord> build_basis(long long d) const {
        std::vector<DicksonWord> out;
        if (dom_ == ModuleDomain::Triangular) {
            for (long long b = 0; 2 * b <= d; ++b)
                out.push_back(DicksonWord{{d - 2 * b, b}, std::nullopt, 1});
            return out;
        }
        for (auto& w : basis_words(*gens_, d)) {
            switch (dom_) {
                case ModuleDomain::Classical:
                    if (w.mui) continue;
                    break;
                case ModuleDomain::Extended:
                case ModuleDomain::SD:
                    // at n=2 the SD span coincides with the extended span:
                    // the product of the two one-index classes is the
                    // two-index class times d_{n,1}
                    break;
                case ModuleDomain::Ideal:
                    if (!w.mui && w.K[ctx_.n - 1] == 0) continue;
                    break;
                case ModuleDomain::Triangular: break;
            }
            out.push_back(std::move(w));
        }
        return out;
    }
};

/// A degree-0 endomorphism as one matrix per degree on the module basis.
struct GradedEndo {
    std::map<long long, std::vector<std::vector<int>>> maps;
};

/// The affine solution space of the commutation + constraint system:
/// every solution is particular + span(nullspace), flattened over the
/// per-degree layout.
struct EndoSystem {
    bool feasible = false;
    std::vector<long long> degrees;                 // degrees with dim > 0
    std::map<long long, std::pair<int, int>> layout; // degree -> (offset, dim)
    int nvars = 0;
    std::vector<int> particular;
    std::vector<std::vector<int>> nullspace;

    GradedEndo assemble(const std::vector<int>& flat) const {
        GradedEndo e;
        for (const auto& [d, od] : layout) {
            auto [off, k] = od;
            std::vector<std::vector<int>> M(k, std::vector<int>(k, 0));
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) M[r][c] = flat[off + r * k + c];
            e.maps.emplace(d, std::move(M));
        }
        return e;
    }

    std::vector<int> combine(const std::vector<int>& t, int p) const {
        std::vector<int> flat = particular;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            for (int v = 0; v < nvars; ++v)
                flat[v] = fp_add(flat[v], fp_mul(t[i], nullspace[i][v], p), p);
        }
        return flat;
    }
};

/// A pinned value f(element) = image on one degree.
struct EndoConstraint {
    long long degree = 0;
    std::vector<int> element;
    std::vector<int> image;
};

inline EndoConstraint make_constraint(const GradedModule& mod, const Polynomial& element,
                                      const Polynomial& image) {
    auto d = element.homogeneous_degree();
    if (!d) throw std::invalid_argument("make_constraint: element not homogeneous");
    auto ec = mod.coords(element, *d);
    if (!ec) throw std::invalid_argument("make_constraint: element outside the module");
    auto ic = mod.coords(image, *d);
    if (!ic) throw std::invalid_argument("make_constraint: image outside the module");
    return EndoConstraint{*d, std::move(*ec), std::move(*ic)};
}

/// Solve for all degree-0 maps commuting with the Steenrod operations
/// inside the bound and satisfying the constraints.
inline EndoSystem alinear_solve(const GradedModule& mod,
                                const std::vector<EndoConstraint>& constraints) {
    const int p = mod.context().p;
    EndoSystem sys;
    for (long long d = 1; d <= mod.bound(); ++d) {
        int k = mod.dim(d);
        if (k == 0) continue;
        sys.degrees.push_back(d);
        sys.layout.emplace(d, std::make_pair(sys.nvars, k));
        sys.nvars += k * k;
    }
    auto var = [&](long long d, int r, int c) {
        auto [off, k] = sys.layout.at(d);
        return off + r * k + c;
    };

    std::vector<std::vector<int>> rows; // each of size nvars + 1
    auto new_row = [&]() -> std::vector<int>& {
        rows.emplace_back(sys.nvars + 1, 0);
        return rows.back();
    };

    // commutation: F_{d'} A = A F_d for the matrix A of each operation
    for (long long d : sys.degrees) {
        const int k = mod.dim(d);
        for (const AtomicOp& op : mod.ops_from(d)) {
            long long d2 = d + op_degree(op, p);
            const int k2 = mod.dim(d2);
            std::vector<std::vector<int>> A(std::max(k2, 1), std::vector<int>(k, 0));
            bool nonzero = false;
            for (int c = 0; c < k; ++c) {
                Polynomial img = apply_op(op, mod.basis_poly(d, c));
                if (img.is_zero()) continue;
                auto col = mod.coords(img, d2);
                if (!col)
                    throw std::logic_error("alinear_solve: operation leaves the module "
                                           "span at degree " + std::to_string(d2));
                for (int r = 0; r < k2; ++r) {
                    A[r][c] = (*col)[r];
                    nonzero |= (*col)[r] != 0;
                }
            }
            if (k2 == 0 || !nonzero) continue;
            for (int r = 0; r < k2; ++r) {
                for (int c = 0; c < k; ++c) {
                    std::vector<int> row(sys.nvars + 1, 0);
                    bool any = false;
                    for (int t = 0; t < k2; ++t)
                        if (A[t][c] != 0) {
                            int v = var(d2, r, t);
                            row[v] = fp_add(row[v], A[t][c], p);
                            any = true;
                        }
                    for (int t = 0; t < k; ++t)
                        if (A[r][t] != 0) {
                            int v = var(d, t, c);
                            row[v] = fp_sub(row[v], A[r][t], p);
                            any = true;
                        }
                    if (any) rows.push_back(std::move(row));
                }
            }
        }
    }

    // pinned values: sum_c F[r][c] element[c] = image[r]
    for (const EndoConstraint& ec : constraints) {
        const int k = mod.dim(ec.degree);
        if (k == 0) {
            bool img_zero = true;
            for (int v : ec.image) img_zero &= (v == 0);
            if (!img_zero) return sys; // infeasible, empty degree
            continue;
        }
        if (static_cast<int>(ec.element.size()) != k ||
            static_cast<int>(ec.image.size()) != k)
            throw std::invalid_argument("alinear_solve: constraint size mismatch");
        for (int r = 0; r < k; ++r) {
            auto& row = new_row();
            for (int c = 0; c < k; ++c)
                if (ec.element[c] != 0) row[var(ec.degree, r, c)] = ec.element[c];
            row[sys.nvars] = ec.image[r];
        }
    }

    // Gaussian elimination over F_p
    const int m = static_cast<int>(rows.size());
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < sys.nvars && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = fp_inv(rows[rank][col], p);
        for (int c = col; c <= sys.nvars; ++c)
            rows[rank][c] = fp_mul(rows[rank][c], inv, p);
        for (int r = 0; r < m; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            int factor = rows[r][col];
            for (int c = col; c <= sys.nvars; ++c)
                rows[r][c] = fp_sub(rows[r][c], fp_mul(factor, rows[rank][c], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int r = rank; r < m; ++r)
        if (rows[r][sys.nvars] != 0) return sys; // inconsistent

    sys.feasible = true;
    sys.particular.assign(sys.nvars, 0);
    std::vector<bool> is_pivot(sys.nvars, false);
    for (int r = 0; r < rank; ++r) {
        is_pivot[pivot_col[r]] = true;
        sys.particular[pivot_col[r]] = rows[r][sys.nvars];
    }
    for (int col = 0; col < sys.nvars; ++col) {
        if (is_pivot[col]) continue;
        std::vector<int> v(sys.nvars, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r)
            v[pivot_col[r]] = fp_sub(0, rows[r][col], p);
        sys.nullspace.push_back(std::move(v));
    }
    return sys;
}

/// Apply an endomorphism to a homogeneous element of the module.
inline Polynomial endo_apply(const GradedModule& mod, const GradedEndo& e,
                             const Polynomial& f) {
    if (f.is_zero()) return f;
    auto d = f.homogeneous_degree();
    if (!d) throw std::invalid_argument("endo_apply: not homogeneous");
    auto x = mod.coords(f, *d);
    if (!x) throw std::invalid_argument("endo_apply: element outside the module");
    auto it = e.maps.find(*d);
    if (it == e.maps.end()) {
        bool zero = true;
        for (int v : *x) zero &= (v == 0);
        if (zero) return Polynomial::zero(mod.context());
        throw std::invalid_argument("endo_apply: degree not represented");
    }
    const auto& M = it->second;
    const int p = mod.context().p;
    const int k = mod.dim(*d);
    Polynomial r(mod.context());
    for (int row = 0; row < k; ++row) {
        int acc = 0;
        for (int c = 0; c < k; ++c) acc = fp_add(acc, fp_mul(M[row][c], (*x)[c], p), p);
        if (acc != 0) r += mod.basis_poly(*d, row).scaled(acc);
    }
    return r;
}

namespace detail {

/// Nonzero kernel vector of a square matrix mod p, or empty when invertible.
inline std::vector<int> kernel_vector(std::vector<std::vector<int>> M, int p) {
    const int k = static_cast<int>(M.size());
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < k && rank < k; ++col) {
        int piv = -1;
        for (int r = rank; r < k; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        int inv = fp_inv(M[rank][col], p);
        for (int c = col; c < k; ++c) M[rank][c] = fp_mul(M[rank][c], inv, p);
        for (int r = 0; r < k; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            int factor = M[r][col];
            for (int c = col; c < k; ++c)
                M[r][c] = fp_sub(M[r][c], fp_mul(factor, M[rank][c], p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank == k) return {};
    std::vector<bool> is_pivot(k, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int freec = 0;
    while (is_pivot[freec]) ++freec;
    std::vector<int> v(k, 0);
    v[freec] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = fp_sub(0, M[r][freec], p);
    return v;
}

} // namespace detail

struct AtomicOptions {
    long long enumeration_cap = 200000;
    bool ring_maps = false; // additionally require multiplicativity
};

struct AtomicReport {
    std::string domain;
    int p = 0;
    int n = 0;
    long long bound = 0;
    std::vector<std::pair<long long, int>> basis_sizes; // (degree, dim), dim > 0
    long long lowest_degree = 0;
    std::string generator;
    int nullity = 0;
    long long solutions_checked = 0;
    bool pass = false;
    std::string witness; // empty on PASS
};

inline bool ring_map_ok(const GradedModule& mod, const GradedEndo& e);

/// Check, exhaustively over the solution space of "A-linear, f = id on
/// the lowest-degree generator", that every solution is invertible in
/// each degree up to the bound.  Scalar multiples cover the remaining
/// lowest-degree values lambda != 0.
inline AtomicReport atomic_check(const GradedModule& mod, const AtomicOptions& opt = {}) {
    if (mod.domain() == ModuleDomain::Triangular)
        throw std::invalid_argument("atomic_check: the triangular module is the "
                                    "counterexample, not a certified domain");
    const int p = mod.context().p;
    AtomicReport rep;
    rep.domain = domain_name(mod.domain());
    rep.p = p;
    rep.n = mod.context().n;
    rep.bound = mod.bound();
    for (long long d = 1; d <= mod.bound(); ++d)
        if (mod.dim(d) > 0) rep.basis_sizes.emplace_back(d, mod.dim(d));
    rep.lowest_degree = mod.lowest_degree();

    DicksonWord g0 = mod.lowest_generator();
    rep.generator = mod.word_string(g0);
    Polynomial g0p = mod.eval_word(g0);
    if (g0p.homogeneous_degree() != rep.lowest_degree)
        throw std::logic_error("atomic_check: generator degree disagrees with the "
                               "lowest basis degree");

    EndoSystem sys = alinear_solve(mod, {make_constraint(mod, g0p, g0p)});
    if (!sys.feasible) {
        rep.pass = false;
        rep.witness = "no A-linear map fixes the lowest-degree generator "
                      "(the identity should)";
        return rep;
    }
    rep.nullity = static_cast<int>(sys.nullspace.size());

    long long total = 1;
    for (int i = 0; i < rep.nullity; ++i) {
        total *= p;
        if (total > opt.enumeration_cap)
            throw std::runtime_error("atomic_check: solution space too large to "
                                     "enumerate (p^" + std::to_string(rep.nullity) +
                                     " points); raise the cap or lower the bound");
    }

    std::vector<int> t(rep.nullity, 0);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < rep.nullity; ++i) { t[i] = static_cast<int>(c % p); c /= p; }
        GradedEndo e = sys.assemble(sys.combine(t, p));
        if (opt.ring_maps && !ring_map_ok(mod, e)) continue;
        ++rep.solutions_checked;
        for (const auto& [d, M] : e.maps) {
            auto ker = detail::kernel_vector(M, p);
            if (ker.empty()) continue;
            std::ostringstream w;
            w << "solution " << code << " has kernel in degree " << d << ": ";
            bool first = true;
            for (std::size_t i = 0; i < ker.size(); ++i) {
                if (ker[i] == 0) continue;
                if (!first) w << " + ";
                first = false;
                if (ker[i] != 1) w << ker[i] << "*";
                w << mod.word_string(mod.basis(d)[i]);
            }
            rep.pass = false;
            rep.witness = w.str();
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

/// Multiplicativity filter used by the ring-map reading.
inline bool ring_map_ok(const GradedModule& mod, const GradedEndo& e) {
    for (long long d1 = 1; d1 <= mod.bound(); ++d1) {
        for (int i = 0; i < mod.dim(d1); ++i) {
            for (long long d2 = d1; d1 + d2 <= mod.bound(); ++d2) {
                for (int j = 0; j < mod.dim(d2); ++j) {
                    Polynomial prod = mod.basis_poly(d1, i) * mod.basis_poly(d2, j);
                    Polynomial lhs = endo_apply(mod, e, prod);
                    Polynomial rhs = endo_apply(mod, e, mod.basis_poly(d1, i)) *
                                     endo_apply(mod, e, mod.basis_poly(d2, j));
                    if (!(lhs == rhs)) return false;
                }
            }
        }
    }
    return true;
}

/// The upper-triangular invariants P[h1, h2] at p=2: A-linear degree-0
/// maps need not be determined by the lowest degree.  Produces the map
/// with f(h1) = h1, f(d_{2,1}) = 0 and its kernel witness h2 + h1^2.
struct TriangularRecord {
    bool sq1_h1_is_h1_squared = false;
    bool sq1_h1_differs_from_h2 = false;
    bool sq1_h2_is_second_dickson = false;
    bool d21_is_h2_plus_h1_squared = false;
    bool map_found = false;
    bool kernel_maps_to_zero = false;
    long long kernel_degree = 0;
    std::string kernel_witness;

    bool ok() const {
        return sq1_h1_is_h1_squared && sq1_h1_differs_from_h2 &&
               sq1_h2_is_second_dickson && d21_is_h2_plus_h1_squared && map_found &&
               kernel_maps_to_zero;
    }
};

inline TriangularRecord triangular_counterexample(long long bound = 8) {
    AlgebraContext ctx(2, 2);
    GradedModule mod(ModuleDomain::Triangular, ctx, bound);
    Polynomial h1 = mod.eval_word(DicksonWord{{1, 0}, std::nullopt, 1});
    Polynomial h2 = mod.eval_word(DicksonWord{{0, 1}, std::nullopt, 1});
    DicksonGenerators g = build_dickson(ctx);

    TriangularRecord rec;
    rec.sq1_h1_is_h1_squared = apply_power_op(1, h1) == h1 * h1;
    rec.sq1_h1_differs_from_h2 = !(apply_power_op(1, h1) == h2);
    rec.sq1_h2_is_second_dickson = apply_power_op(1, h2) == g.gen(2);
    Polynomial d21 = h2 + h1 * h1;
    rec.d21_is_h2_plus_h1_squared = d21 == g.gen(1);

    EndoSystem sys = alinear_solve(mod, {make_constraint(mod, h1, h1),
                                         make_constraint(mod, d21, Polynomial::zero(ctx))});
    rec.map_found = sys.feasible;
    if (sys.feasible) {
        GradedEndo e = sys.assemble(sys.particular);
        rec.kernel_maps_to_zero = endo_apply(mod, e, d21).is_zero();
        rec.kernel_degree = 2;
        rec.kernel_witness = "h2+h1^2";
    }
    return rec;
}

/// Certificate that two Dickson monomials map to the same power of
/// d_{n,n}, so they cannot lie in complementary direct summands.
struct IndecompReport {
    std::vector<long long> K1, K2;
    std::string gamma1, gamma2;
    int u1 = 1, u2 = 1;
    long long l = 0;
    std::string target;
    ReductionEngine::Witness witness;
};

inline IndecompReport indecomposability_witness(const ReductionEngine& engine,
                                                const std::vector<long long>& K1,
                                                const std::vector<long long>& K2) {
    const AlgebraContext& ctx = engine.context();
    IndecompReport rep;
    rep.K1 = K1;
    rep.K2 = K2;
    rep.witness = engine.common_power_witness(K1, K2);
    rep.gamma1 = to_string(rep.witness.first.gamma, ctx.p);
    rep.gamma2 = to_string(rep.witness.second.gamma, ctx.p);
    rep.u1 = rep.witness.first.u;
    rep.u2 = rep.witness.second.u;
    rep.l = rep.witness.l;
    DicksonWord tw{std::vector<long long>(ctx.n, 0), std::nullopt, 1};
    tw.K[ctx.n - 1] = pow_ll(ctx.p, static_cast<int>(rep.l));
    rep.target = to_string(ctx, tw);
    return rep;
}

} // namespace dickson

#endif
