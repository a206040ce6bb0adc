#pragma once

// Representation spheres S^V: cellular Mackey chain complexes, their homology,
// the closed-form answer assembled from derived functors, and the cross-check
// between the two computation paths.
//
// V reduces to (m, n2, a) with n2 = 2n. The cell structure for m + nλ has one
// fixed cell in dimension m and one free cell in each dimension m+1..m+n2;
// writing B for the underlying level, a free cell contributes the induced
// functor (B, B^p) with diagonal restriction, fold transfer, and cyclic
// shift. Differentials on the underlying level use the twisted shift
// t·sh⁻¹, matching the identification ∇′(x₀,…,x_{p−1}) = Σ tⁱxᵢ. Negative n2
// uses the dual cell structure, with restriction-type d⁰ and inverse twists.

#include <cpslice/box.hpp>
#include <cpslice/derived.hpp>
#include <cpslice/rep.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpslice {

struct MackeyChainComplex {
    int lo = 0;
    std::vector<CpMackey> terms;   // terms[i] sits in degree lo + i
    std::vector<MackeyHom> diffs;  // diffs[i]: terms[i+1] -> terms[i]
};

inline void validate_complex(const MackeyChainComplex& c) {
    if (c.terms.empty()) throw std::invalid_argument("chain complex: no terms");
    if (c.diffs.size() + 1 != c.terms.size())
        throw std::invalid_argument("chain complex: differential count mismatch");
    for (const auto& t : c.terms) validate_mackey(t);
    for (const auto& d : c.diffs) mackey_hom_check(d, "chain differential");
    for (size_t i = 0; i + 1 < c.diffs.size(); ++i)
        if (!mackey_hom_is_zero(mackey_compose(c.diffs[i], c.diffs[i + 1])))
            throw std::invalid_argument("chain complex: d∘d nonzero at index " +
                                        std::to_string(i));
}

// induced Mackey functor of one free cell: fixed level B, underlying p copies
inline CpMackey free_cell_term(int p, const CpModule& b) {
    int g = b.group.gens;
    CpMackey t;
    t.p = p;
    t.fixed = b.group;
    FgAbGroup u;
    u.gens = p * g;
    IntMatrix rels(p * g, p * b.group.rels.cols);
    for (int blk = 0; blk < p; ++blk)
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < b.group.rels.cols; ++j)
                rels.at(blk * g + i, blk * b.group.rels.cols + j) = b.group.rels.at(i, j);
    u.rels = std::move(rels);
    t.underlying = std::move(u);

    IntMatrix res(p * g, g), tr(g, p * g), sh(p * g, p * g);
    for (int blk = 0; blk < p; ++blk)
        for (int i = 0; i < g; ++i) {
            res.at(blk * g + i, i) = 1;
            tr.at(i, blk * g + i) = 1;
        }
    for (int blk = 0; blk < p; ++blk) {
        int src = (blk + p - 1) % p;  // shift: block j receives block j-1
        for (int i = 0; i < g; ++i) sh.at(blk * g + i, src * g + i) = 1;
    }
    t.res = std::move(res);
    t.tr = std::move(tr);
    t.weyl = std::move(sh);
    validate_mackey(t);
    return t;
}

namespace detail {

// block matrix on p copies of B: block (j, (j+step) mod p) += w
inline void add_shifted_block(IntMatrix& m, int p, int g, int step, const IntMatrix& w,
                              bool subtract = false) {
    for (int j = 0; j < p; ++j) {
        int col = ((j + step) % p + p) % p;
        for (int r = 0; r < g; ++r)
            for (int c = 0; c < g; ++c) {
                Int& slot = m.at(j * g + r, col * g + c);
                if (subtract)
                    slot -= w.at(r, c);
                else
                    slot += w.at(r, c);
            }
    }
}

inline std::vector<IntMatrix> weyl_powers(int p, const IntMatrix& w) {
    std::vector<IntMatrix> pw;
    pw.push_back(IntMatrix::identity(w.rows));
    for (int i = 1; i < p; ++i) pw.push_back(pw.back().mul(w));
    return pw;
}

}  // namespace detail

// one builder for both signs; n2 = 0 gives the single-term complex
inline MackeyChainComplex cellular_complex(int m, int n2, const CpMackey& coeff) {
    const int p = coeff.p;
    const int g = coeff.underlying.gens;
    const IntMatrix& w = coeff.weyl;
    auto pw = detail::weyl_powers(p, w);
    IntMatrix winv = pw[p - 1];  // w^{p-1} = w^{-1} modulo relations
    auto pwinv = detail::weyl_powers(p, winv);
    IntMatrix norm(g, g);
    for (int i = 0; i < p; ++i) norm = norm.add(pw[i]);

    MackeyChainComplex c;
    c.lo = std::min(m, m + n2);
    if (n2 == 0) {
        c.terms.push_back(coeff);
        return c;
    }
    CpMackey free_term = free_cell_term(p, underlying_module(coeff));
    int len = n2 > 0 ? n2 : -n2;

    if (n2 > 0) {
        c.terms.push_back(coeff);
        for (int i = 0; i < len; ++i) c.terms.push_back(free_term);
        for (int kappa = 1; kappa <= len; ++kappa) {
            MackeyHom d;
            d.src = c.terms[kappa];
            d.dst = c.terms[kappa - 1];
            if (kappa == 1) {
                d.on_fixed = coeff.tr;
                IntMatrix nab(g, p * g);  // block i = w^i
                for (int i = 0; i < p; ++i)
                    for (int r = 0; r < g; ++r)
                        for (int cc = 0; cc < g; ++cc) nab.at(r, i * g + cc) = pw[i].at(r, cc);
                d.on_under = std::move(nab);
            } else if (kappa % 2 == 0) {
                d.on_fixed = IntMatrix::identity(g).sub(w);
                IntMatrix u = IntMatrix::identity(p * g);
                detail::add_shifted_block(u, p, g, 1, w, true);  // 1 - t·sh⁻¹
                d.on_under = std::move(u);
            } else {
                d.on_fixed = norm;
                IntMatrix u(p * g, p * g);
                for (int i = 0; i < p; ++i) detail::add_shifted_block(u, p, g, i, pw[i]);
                d.on_under = std::move(u);
            }
            c.diffs.push_back(std::move(d));
        }
    } else {
        for (int i = 0; i < len; ++i) c.terms.push_back(free_term);
        c.terms.push_back(coeff);
        // diffs[i]: terms[i+1] -> terms[i]; source offset = n2 + i + 1
        for (int i = 0; i < len; ++i) {
            int kappa = n2 + i + 1;  // source degree offset from m
            MackeyHom d;
            d.src = c.terms[i + 1];
            d.dst = c.terms[i];
            if (kappa == 0) {
                d.on_fixed = coeff.res;
                IntMatrix dp(p * g, g);  // block i = w^{-i}
                for (int bi = 0; bi < p; ++bi)
                    for (int r = 0; r < g; ++r)
                        for (int cc = 0; cc < g; ++cc)
                            dp.at(bi * g + r, cc) = pwinv[bi].at(r, cc);
                d.on_under = std::move(dp);
            } else if ((-kappa) % 2 == 1) {
                d.on_fixed = IntMatrix::identity(g).sub(winv);
                IntMatrix u = IntMatrix::identity(p * g);
                detail::add_shifted_block(u, p, g, -1, winv, true);  // 1 - t⁻¹·sh
                d.on_under = std::move(u);
            } else {
                d.on_fixed = norm;
                IntMatrix u(p * g, p * g);
                for (int i2 = 0; i2 < p; ++i2) detail::add_shifted_block(u, p, g, -i2, pwinv[i2]);
                d.on_under = std::move(u);
            }
            c.diffs.push_back(std::move(d));
        }
    }
    return c;
}

inline CpMackey complex_homology_at(const MackeyChainComplex& c, int index) {
    const CpMackey& t = c.terms[index];
    size_t i = static_cast<size_t>(index);
    auto level_sq = [&](const FgAbGroup& amb, bool fixed_level) {
        IntMatrix zlat = IntMatrix::identity(amb.gens);
        if (i > 0) {
            const MackeyHom& out = c.diffs[i - 1];
            GroupHom f(amb, fixed_level ? out.dst.fixed : out.dst.underlying,
                       fixed_level ? out.on_fixed : out.on_under);
            zlat = kernel_sq(f).lattice;
        }
        IntMatrix den(amb.gens, 0);
        if (i < c.diffs.size()) {
            const MackeyHom& in = c.diffs[i];
            den = fixed_level ? in.on_fixed : in.on_under;
        }
        return subquotient(amb, zlat, den);
    };
    CpMackey h = mackey_from_level_sqs(t, level_sq(t.fixed, true), level_sq(t.underlying, false));
    validate_mackey(h);
    return h;
}

inline GradedMackey complex_homology(const MackeyChainComplex& c) {
    GradedMackey out;
    for (size_t i = 0; i < c.terms.size(); ++i)
        out[c.lo + static_cast<int>(i)] = complex_homology_at(c, static_cast<int>(i));
    return out;
}

inline GradedMackey homology_of_sphere(const ReducedRep& r, const CpMackey& coeff) {
    GradedMackey h = complex_homology(cellular_complex(r.m, r.n2, coeff));
    if (r.a != 1) {
        long ainv = unit_inverse_mod(r.p, r.a);
        for (auto& [deg, val] : h) val = twist(val, ainv);
    }
    return h;
}

inline GradedMackey homology_of_sphere(const VirtualRep& v, const CpMackey& coeff) {
    if (v.p != coeff.p) throw std::invalid_argument("sphere: prime mismatch");
    return homology_of_sphere(reduce_rep(v), coeff);
}

/* ---- closed form ---- */

enum class RowKind {
    Unit,
    CokerTr,
    KerTrOrbits,
    KerN,
    CokerN,
    TopF,
    KerR,
    CokerRFixed,
    BottomO,
    KerTrMinus,
    KerNMinus,
    CokerRMinus,
    CokerNMinus,
};

inline std::vector<std::pair<int, RowKind>> closed_form_rows(int m, int n2) {
    std::vector<std::pair<int, RowKind>> rows;
    if (n2 == 0) {
        rows.emplace_back(m, RowKind::Unit);
        return rows;
    }
    if (n2 > 0) {
        for (int k = 0; k <= n2; ++k) {
            RowKind kind;
            if (k == 0)
                kind = RowKind::CokerTr;
            else if (k == 1)
                kind = k == n2 ? RowKind::KerTrMinus : RowKind::KerTrOrbits;
            else if (k % 2 == 1)
                kind = k == n2 ? RowKind::KerNMinus : RowKind::KerN;
            else
                kind = k == n2 ? RowKind::TopF : RowKind::CokerN;
            rows.emplace_back(m + k, kind);
        }
    } else {
        for (int k = n2; k <= 0; ++k) {
            RowKind kind;
            if (k == 0)
                kind = RowKind::KerR;
            else if (k == -1)
                kind = k == n2 ? RowKind::CokerRMinus : RowKind::CokerRFixed;
            else if ((-k) % 2 == 1)
                kind = k == n2 ? RowKind::CokerNMinus : RowKind::CokerN;
            else
                kind = k == n2 ? RowKind::BottomO : RowKind::KerN;
            rows.emplace_back(m + k, kind);
        }
    }
    return rows;
}

inline Derived row_derived_kind(RowKind k) {
    switch (k) {
        case RowKind::CokerTr: return Derived::CokerTr;
        case RowKind::KerTrOrbits: return Derived::KerTrOrbits;
        case RowKind::KerN: return Derived::KerN;
        case RowKind::CokerN: return Derived::CokerN;
        case RowKind::TopF: return Derived::FixedF;
        case RowKind::KerR: return Derived::KerR;
        case RowKind::CokerRFixed: return Derived::CokerRFixed;
        case RowKind::BottomO: return Derived::OrbitO;
        case RowKind::KerTrMinus: return Derived::KerTrMinus;
        case RowKind::KerNMinus: return Derived::KerNMinus;
        case RowKind::CokerRMinus: return Derived::CokerRMinus;
        case RowKind::CokerNMinus: return Derived::CokerNMinus;
        case RowKind::Unit: break;
    }
    throw std::invalid_argument("row has no single derived functor");
}

inline CpMackey row_value(RowKind k, const CpMackey& coeff, long a) {
    if (k == RowKind::Unit) return a == 1 ? coeff : twist(coeff, unit_inverse_mod(coeff.p, a));
    return derived(row_derived_kind(k), coeff);
}

inline GradedMackey closed_form_homology(const ReducedRep& r, const CpMackey& coeff) {
    GradedMackey out;
    for (auto& [deg, kind] : closed_form_rows(r.m, r.n2))
        out[deg] = row_value(kind, coeff, r.a);
    return out;
}

/* ---- comparison of the two paths ---- */

inline void strip_trivial(GradedMackey& h) {
    for (auto it = h.begin(); it != h.end();)
        if (it->second.fixed.is_trivial() && it->second.underlying.is_trivial())
            it = h.erase(it);
        else
            ++it;
}

struct CrosscheckReport {
    bool ok = true;
    std::string detail;
};

inline CrosscheckReport crosscheck_sphere(const VirtualRep& v, const CpMackey& coeff) {
    ReducedRep r = reduce_rep(v);
    GradedMackey chain = homology_of_sphere(r, coeff);
    GradedMackey closed = closed_form_homology(r, coeff);
    CrosscheckReport rep;
    std::map<int, bool> degrees;
    for (auto& kv : chain) degrees[kv.first] = true;
    for (auto& kv : closed) degrees[kv.first] = true;
    CpMackey zero = zero_mackey(coeff.p);
    for (auto& [d, x] : degrees) {
        const CpMackey& a = chain.count(d) ? chain.at(d) : zero;
        const CpMackey& b = closed.count(d) ? closed.at(d) : zero;
        if (!mackey_same_shape(a, b)) {
            rep.ok = false;
            rep.detail += "degree " + std::to_string(d) + ": chain (" + to_string(a.fixed.rels) +
                          ") vs closed form (" + to_string(b.fixed.rels) + "); ";
        }
    }
    return rep;
}

inline GradedMackey suspension_homotopy(int d, int n_lambda, const CpMackey& coeff) {
    VirtualRep v;
    v.p = coeff.p;
    v.trivial = d;
    if (coeff.p == 2)
        v.sigma = 2 * n_lambda;
    else if (n_lambda != 0)
        v.lambda[1] = n_lambda;
    return homology_of_sphere(v, coeff);
}

}  // namespace cpslice
