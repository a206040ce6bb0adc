#pragma once

#include <map>
#include <string>
#include <vector>

#include "abelian.hpp"

namespace cpslice {

/* Mackey functor for the cyclic group of prime order p.
   fixed = value at C_p/C_p, underlying = value at C_p/e.
   res: fixed -> underlying, tr: underlying -> fixed, weyl: underlying -> underlying.
   Matrices act on generator columns. */
struct CpMackey {
    int p = 2;
    FgAbGroup fixed, underlying;
    IntMatrix res, tr, weyl;
};

inline IntMatrix norm_matrix(const CpMackey& m) {
    IntMatrix n(m.underlying.gens, m.underlying.gens);
    IntMatrix pow = IntMatrix::identity(m.underlying.gens);
    for (int i = 0; i < m.p; i++) {
        n = n.add(pow);
        pow = m.weyl.mul(pow);
    }
    return n;
}

inline GroupHom res_hom(const CpMackey& m) { return GroupHom(m.fixed, m.underlying, m.res); }
inline GroupHom tr_hom(const CpMackey& m) { return GroupHom(m.underlying, m.fixed, m.tr); }
inline GroupHom weyl_hom(const CpMackey& m) { return GroupHom(m.underlying, m.underlying, m.weyl); }
inline GroupHom norm_hom(const CpMackey& m) {
    return GroupHom(m.underlying, m.underlying, norm_matrix(m));
}

/* axiom 1: weyl^p = 1; axiom 2: (weyl - 1) res = 0; axiom 3: tr (weyl - 1) = 0;
   axiom 4: res tr = sum of weyl powers */
inline std::vector<std::string> mackey_axiom_failures(const CpMackey& m) {
    std::vector<std::string> out;
    auto check_wd = [&](const FgAbGroup& s, const FgAbGroup& d, const IntMatrix& map,
                        const char* name) {
        if (map.rows != d.gens || map.cols != s.gens) {
            out.push_back(std::string(name) + ": shape mismatch");
            return false;
        }
        if (!solve_integer(d.rels, map.mul(s.rels))) {
            out.push_back(std::string(name) + ": not well defined");
            return false;
        }
        return true;
    };
    bool ok = true;
    ok &= check_wd(m.fixed, m.underlying, m.res, "res");
    ok &= check_wd(m.underlying, m.fixed, m.tr, "tr");
    ok &= check_wd(m.underlying, m.underlying, m.weyl, "weyl");
    if (!ok) return out;

    const IntMatrix& rb = m.underlying.rels;
    const IntMatrix& ra = m.fixed.rels;
    IntMatrix wp = IntMatrix::identity(m.underlying.gens);
    for (int i = 0; i < m.p; i++) wp = m.weyl.mul(wp);
    if (!solve_integer(rb, wp.sub(IntMatrix::identity(m.underlying.gens))))
        out.push_back("axiom 1: weyl^p != 1");
    IntMatrix wm1 = m.weyl.sub(IntMatrix::identity(m.underlying.gens));
    if (!solve_integer(rb, wm1.mul(m.res))) out.push_back("axiom 2: (weyl - 1) res != 0");
    if (!solve_integer(ra, m.tr.mul(wm1))) out.push_back("axiom 3: tr (weyl - 1) != 0");
    if (!solve_integer(rb, m.res.mul(m.tr).sub(norm_matrix(m))))
        out.push_back("axiom 4: res tr != norm");
    return out;
}

inline void validate_mackey(const CpMackey& m) {
    auto fails = mackey_axiom_failures(m);
    if (!fails.empty()) {
        std::string msg = "invalid Mackey functor:";
        for (const auto& f : fails) msg += " [" + f + "]";
        throw std::invalid_argument(msg);
    }
}

/* ---- basic constructors ---- */

inline CpMackey zero_mackey(int p) {
    return CpMackey{p, FgAbGroup{0, IntMatrix(0, 0)}, FgAbGroup{0, IntMatrix(0, 0)},
                    IntMatrix(0, 0), IntMatrix(0, 0), IntMatrix(0, 0)};
}

inline CpMackey constant_mackey(int p, const FgAbGroup& g) {
    CpMackey m{p, g, g, IntMatrix::identity(g.gens),
               IntMatrix::identity(g.gens).scaled(p), IntMatrix::identity(g.gens)};
    validate_mackey(m);
    return m;
}

inline CpMackey coconstant_mackey(int p, const FgAbGroup& g) {
    CpMackey m{p, g, g, IntMatrix::identity(g.gens).scaled(p),
               IntMatrix::identity(g.gens), IntMatrix::identity(g.gens)};
    validate_mackey(m);
    return m;
}

inline CpMackey hat_mackey(int p, const FgAbGroup& g) {
    CpMackey m{p, g, FgAbGroup{0, IntMatrix(0, 0)}, IntMatrix(0, g.gens), IntMatrix(g.gens, 0),
               IntMatrix(0, 0)};
    validate_mackey(m);
    return m;
}

/* generators: the two orbits; res reads the underlying point count, tr is the free orbit */
inline CpMackey burnside_twisted(int p, long a) {
    CpMackey m;
    m.p = p;
    m.fixed = free_abelian(2);
    m.underlying = free_abelian(1);
    m.res = IntMatrix(1, 2);
    m.res.at(0, 0) = a;
    m.res.at(0, 1) = p;
    m.tr = IntMatrix(2, 1);
    m.tr.at(1, 0) = 1;
    m.weyl = IntMatrix::identity(1);
    validate_mackey(m);
    return m;
}

inline CpMackey burnside(int p) { return burnside_twisted(p, 1); }

/* ---- modules over Z[C_p] and the fixed point / orbit functors ---- */

struct CpModule {
    FgAbGroup group;
    IntMatrix weyl;
};

inline CpModule regular_module(int p) {
    IntMatrix t(p, p);
    for (int i = 0; i < p; i++) t.at((i + 1) % p, i) = 1;
    return CpModule{free_abelian(p), t};
}

inline CpModule trivial_module(const FgAbGroup& g) {
    return CpModule{g, IntMatrix::identity(g.gens)};
}

inline CpModule underlying_module(const CpMackey& m) { return CpModule{m.underlying, m.weyl}; }

inline SubquotientGroup fixed_points_sq(const CpModule& mod) {
    IntMatrix wm1 = mod.weyl.sub(IntMatrix::identity(mod.group.gens));
    return kernel_sq(GroupHom(mod.group, mod.group, wm1));
}

inline SubquotientGroup orbits_sq(const CpModule& mod) {
    IntMatrix wm1 = mod.weyl.sub(IntMatrix::identity(mod.group.gens));
    return cokernel_sq(GroupHom(mod.group, mod.group, wm1));
}

inline IntMatrix module_norm_matrix(int p, const CpModule& mod) {
    IntMatrix n(mod.group.gens, mod.group.gens);
    IntMatrix pow = IntMatrix::identity(mod.group.gens);
    for (int i = 0; i < p; i++) {
        n = n.add(pow);
        pow = mod.weyl.mul(pow);
    }
    return n;
}

inline CpMackey fixed_point_mackey(int p, const CpModule& mod) {
    SubquotientGroup fix = fixed_points_sq(mod);
    GroupHom tr = induced_hom(module_norm_matrix(p, mod), full_sq(mod.group), fix);
    CpMackey m{p, fix.group, mod.group, fix.lattice, tr.map, mod.weyl};
    validate_mackey(m);
    return m;
}

inline CpMackey orbit_mackey(int p, const CpModule& mod) {
    SubquotientGroup orb = orbits_sq(mod);
    CpMackey m{p, orb.group, mod.group, module_norm_matrix(p, mod),
               IntMatrix::identity(mod.group.gens), mod.weyl};
    validate_mackey(m);
    return m;
}

inline CpMackey direct_sum(const CpMackey& a, const CpMackey& b) {
    if (a.p != b.p) throw std::invalid_argument("direct_sum: prime mismatch");
    CpMackey m;
    m.p = a.p;
    m.fixed = FgAbGroup{a.fixed.gens + b.fixed.gens, block_diag(a.fixed.rels, b.fixed.rels)};
    m.underlying = FgAbGroup{a.underlying.gens + b.underlying.gens,
                             block_diag(a.underlying.rels, b.underlying.rels)};
    m.res = block_diag(a.res, b.res);
    m.tr = block_diag(a.tr, b.tr);
    m.weyl = block_diag(a.weyl, b.weyl);
    return m;
}

/* ---- maps of Mackey functors ---- */

struct MackeyHom {
    CpMackey src, dst;
    IntMatrix on_fixed, on_under;
};

inline bool mackey_hom_valid(const MackeyHom& h) {
    if (h.src.p != h.dst.p) return false;
    if (h.on_fixed.rows != h.dst.fixed.gens || h.on_fixed.cols != h.src.fixed.gens) return false;
    if (h.on_under.rows != h.dst.underlying.gens || h.on_under.cols != h.src.underlying.gens)
        return false;
    if (!solve_integer(h.dst.fixed.rels, h.on_fixed.mul(h.src.fixed.rels))) return false;
    if (!solve_integer(h.dst.underlying.rels, h.on_under.mul(h.src.underlying.rels))) return false;
    const IntMatrix& rb = h.dst.underlying.rels;
    const IntMatrix& ra = h.dst.fixed.rels;
    if (!solve_integer(rb, h.on_under.mul(h.src.res).sub(h.dst.res.mul(h.on_fixed)))) return false;
    if (!solve_integer(ra, h.on_fixed.mul(h.src.tr).sub(h.dst.tr.mul(h.on_under)))) return false;
    if (!solve_integer(rb, h.on_under.mul(h.src.weyl).sub(h.dst.weyl.mul(h.on_under))))
        return false;
    return true;
}

inline void mackey_hom_check(const MackeyHom& h, const char* what) {
    if (!mackey_hom_valid(h))
        throw std::runtime_error(std::string("invalid Mackey map constructed: ") + what);
}

inline MackeyHom norm_map(int p, const CpModule& mod) {
    CpMackey o = orbit_mackey(p, mod), f = fixed_point_mackey(p, mod);
    GroupHom top = induced_hom(module_norm_matrix(p, mod), orbits_sq(mod), fixed_points_sq(mod));
    MackeyHom h{o, f, top.map, IntMatrix::identity(mod.group.gens)};
    mackey_hom_check(h, "norm map");
    return h;
}

inline MackeyHom mackey_sum_hom(const MackeyHom& a, const MackeyHom& b) {
    MackeyHom h{direct_sum(a.src, b.src), direct_sum(a.dst, b.dst),
                block_diag(a.on_fixed, b.on_fixed), block_diag(a.on_under, b.on_under)};
    return h;
}

inline MackeyHom mackey_identity(const CpMackey& m) {
    return MackeyHom{m, m, IntMatrix::identity(m.fixed.gens),
                     IntMatrix::identity(m.underlying.gens)};
}

inline MackeyHom mackey_compose(const MackeyHom& g, const MackeyHom& f) {
    return MackeyHom{f.src, g.dst, g.on_fixed.mul(f.on_fixed), g.on_under.mul(f.on_under)};
}

inline bool mackey_hom_is_zero(const MackeyHom& h) {
    return solve_integer(h.dst.fixed.rels, h.on_fixed).has_value() &&
           solve_integer(h.dst.underlying.rels, h.on_under).has_value();
}

struct MackeySub {
    CpMackey value;
    MackeyHom incl;
    SubquotientGroup fixed_sq, under_sq;
};

struct MackeyQuot {
    CpMackey value;
    MackeyHom proj;
    SubquotientGroup fixed_sq, under_sq;
};

/* assemble a Mackey functor from level subquotients of another one, inducing all maps */
inline CpMackey mackey_from_level_sqs(const CpMackey& m, const SubquotientGroup& fx,
                                      const SubquotientGroup& un) {
    CpMackey v;
    v.p = m.p;
    v.fixed = fx.group;
    v.underlying = un.group;
    v.res = induced_hom(m.res, fx, un).map;
    v.tr = induced_hom(m.tr, un, fx).map;
    v.weyl = induced_hom(m.weyl, un, un).map;
    validate_mackey(v);
    return v;
}

inline MackeySub mackey_kernel(const MackeyHom& h) {
    SubquotientGroup fx = kernel_sq(GroupHom(h.src.fixed, h.dst.fixed, h.on_fixed));
    SubquotientGroup un = kernel_sq(GroupHom(h.src.underlying, h.dst.underlying, h.on_under));
    CpMackey v = mackey_from_level_sqs(h.src, fx, un);
    MackeyHom incl{v, h.src, fx.lattice, un.lattice};
    mackey_hom_check(incl, "kernel inclusion");
    return MackeySub{v, incl, fx, un};
}

inline MackeyQuot mackey_cokernel(const MackeyHom& h) {
    SubquotientGroup fx = cokernel_sq(GroupHom(h.src.fixed, h.dst.fixed, h.on_fixed));
    SubquotientGroup un = cokernel_sq(GroupHom(h.src.underlying, h.dst.underlying, h.on_under));
    CpMackey v = mackey_from_level_sqs(h.dst, fx, un);
    MackeyHom proj{h.dst, v, IntMatrix::identity(h.dst.fixed.gens),
                   IntMatrix::identity(h.dst.underlying.gens)};
    mackey_hom_check(proj, "cokernel projection");
    return MackeyQuot{v, proj, fx, un};
}

inline MackeySub mackey_image(const MackeyHom& h) {
    SubquotientGroup fx = image_sq(GroupHom(h.src.fixed, h.dst.fixed, h.on_fixed));
    SubquotientGroup un = image_sq(GroupHom(h.src.underlying, h.dst.underlying, h.on_under));
    CpMackey v = mackey_from_level_sqs(h.dst, fx, un);
    MackeyHom incl{v, h.dst, fx.lattice, un.lattice};
    mackey_hom_check(incl, "image inclusion");
    return MackeySub{v, incl, fx, un};
}

/* ---- short exact sequences ---- */

struct MackeySES {
    CpMackey sub, mid, quot;
    MackeyHom incl;  // sub -> mid
    MackeyHom proj;  // mid -> quot
};

/* span(im f) = span(ker g) inside g's source, both levels */
inline bool exact_at(const GroupHom& f, const GroupHom& g) {
    IntMatrix im_lat = column_lattice_basis(f.map.hstack(f.dst.rels));
    IntMatrix ker_lat = kernel_sq(g).lattice;
    IntMatrix im_span = im_lat.hstack(f.dst.rels);
    IntMatrix ker_span = ker_lat.hstack(f.dst.rels);
    return solve_integer(ker_span, im_lat).has_value() &&
           solve_integer(im_span, ker_lat).has_value();
}

inline bool verify_ses(const MackeySES& s) {
    if (!mackey_hom_valid(s.incl) || !mackey_hom_valid(s.proj)) return false;
    GroupHom fa(s.sub.fixed, s.mid.fixed, s.incl.on_fixed);
    GroupHom fb(s.sub.underlying, s.mid.underlying, s.incl.on_under);
    GroupHom ga(s.mid.fixed, s.quot.fixed, s.proj.on_fixed);
    GroupHom gb(s.mid.underlying, s.quot.underlying, s.proj.on_under);
    if (!kernel_sq(fa).group.is_trivial() || !kernel_sq(fb).group.is_trivial()) return false;
    if (!cokernel_sq(ga).group.is_trivial() || !cokernel_sq(gb).group.is_trivial()) return false;
    return exact_at(fa, ga) && exact_at(fb, gb);
}

inline MackeySES ses_from_projection(const MackeyHom& proj) {
    MackeySub k = mackey_kernel(proj);
    return MackeySES{k.value, proj.src, proj.dst, k.incl, proj};
}

inline MackeySES ses_from_inclusion(const MackeyHom& incl) {
    MackeyQuot q = mackey_cokernel(incl);
    return MackeySES{incl.src, incl.dst, q.value, incl, q.proj};
}

/* ---- comparison ---- */

inline bool levelwise_iso(const CpMackey& a, const CpMackey& b) {
    return groups_isomorphic(a.fixed, b.fixed) && groups_isomorphic(a.underlying, b.underlying);
}

/* iso-invariant fingerprint from the structure maps alone */
inline std::vector<FgAbGroup::Canon> mackey_profile(const CpMackey& m) {
    std::vector<FgAbGroup::Canon> out;
    out.push_back(m.fixed.canonical_form());
    out.push_back(m.underlying.canonical_form());
    auto push3 = [&](const GroupHom& f) {
        out.push_back(kernel_sq(f).group.canonical_form());
        out.push_back(image_sq(f).group.canonical_form());
        out.push_back(cokernel_sq(f).group.canonical_form());
    };
    push3(res_hom(m));
    push3(tr_hom(m));
    push3(norm_hom(m));
    IntMatrix wm1 = m.weyl.sub(IntMatrix::identity(m.underlying.gens));
    push3(GroupHom(m.underlying, m.underlying, wm1));
    push3(GroupHom(m.fixed, m.fixed, m.tr.mul(m.res)));
    return out;
}

inline bool mackey_same_shape(const CpMackey& a, const CpMackey& b) {
    return levelwise_iso(a, b) && mackey_profile(a) == mackey_profile(b);
}

using GradedMackey = std::map<int, CpMackey>;

/* change of generators making both levels minimal, with the witnessing isos */
struct MackeySimplified {
    CpMackey value;
    MackeyHom to, from;  // to: input -> value, from: value -> input
};

namespace detail {

struct LevelBasis {
    FgAbGroup group;
    IntMatrix fwd, bwd;  // fwd*bwd = id exactly, bwd*fwd = id mod input rels
};

inline LevelBasis minimal_basis(const FgAbGroup& g) {
    SmithDecomposition s = smith_normal_form(g.rels);
    int rank = snf_rank(s);
    std::vector<int> keep;
    for (int i = 0; i < rank; i++)
        if (s.D.at(i, i) != 1) keep.push_back(i);
    int torsion = static_cast<int>(keep.size());
    for (int i = rank; i < g.gens; i++) keep.push_back(i);
    int k = static_cast<int>(keep.size());

    LevelBasis out;
    out.fwd = IntMatrix(k, g.gens);
    out.bwd = IntMatrix(g.gens, k);
    IntMatrix rels(k, torsion);
    for (int r = 0; r < k; r++) {
        for (int j = 0; j < g.gens; j++) out.fwd.at(r, j) = s.U.at(keep[r], j);
        for (int i = 0; i < g.gens; i++) out.bwd.at(i, r) = s.Uinv.at(i, keep[r]);
        if (r < torsion) rels.at(r, r) = s.D.at(keep[r], keep[r]);
    }
    out.group = FgAbGroup{k, rels};
    return out;
}

}  // namespace detail

inline MackeySimplified simplify_presentation(const CpMackey& m) {
    detail::LevelBasis fa = detail::minimal_basis(m.fixed);
    detail::LevelBasis fb = detail::minimal_basis(m.underlying);
    CpMackey v{m.p,
               fa.group,
               fb.group,
               fb.fwd.mul(m.res).mul(fa.bwd),
               fa.fwd.mul(m.tr).mul(fb.bwd),
               fb.fwd.mul(m.weyl).mul(fb.bwd)};
    validate_mackey(v);
    MackeySimplified out{v, MackeyHom{m, v, fa.fwd, fb.fwd}, MackeyHom{v, m, fa.bwd, fb.bwd}};
    mackey_hom_check(out.to, "simplification forward");
    mackey_hom_check(out.from, "simplification backward");
    return out;
}

enum class IsoResult { Yes, No, Unknown };

namespace detail {

/* coefficient rows for P * Phi * Q stacked column-major into a linear system */
inline void add_product_term(IntMatrix& sys, int row0, int var0, const IntMatrix& p,
                             const IntMatrix& q, int sign) {
    int r = p.cols, m = p.rows, n = q.cols;
    for (int j = 0; j < n; j++)
        for (int i = 0; i < m; i++)
            for (int u = 0; u < r; u++)
                for (int v = 0; v < q.rows; v++)
                    sys.at(row0 + j * m + i, var0 + v * r + u) += sign * p.at(i, u) * q.at(v, j);
}

inline void add_mod_block(IntMatrix& sys, int row0, int var0, const IntMatrix& rels, int ncols) {
    for (int j = 0; j < ncols; j++)
        for (int c = 0; c < rels.cols; c++)
            for (int i = 0; i < rels.rows; i++)
                sys.at(row0 + j * rels.rows + i, var0 + j * rels.cols + c) = rels.at(i, c);
}

}  // namespace detail

/* lattice of commuting pairs (phi_fixed, phi_under) from m to n, as stacked columns */
inline IntMatrix commuting_pair_lattice(const CpMackey& m, const CpMackey& n) {
    int aM = m.fixed.gens, aN = n.fixed.gens, bM = m.underlying.gens, bN = n.underlying.gens;
    int va = aN * aM, vb = bN * bM;
    struct Block { int rows; const IntMatrix* rels; };
    // constraint blocks: wd_A, wd_B, res, tr, weyl
    std::vector<int> row_counts = {aN * m.fixed.rels.cols, bN * m.underlying.rels.cols,
                                   bN * aM, aN * bM, bN * bM};
    std::vector<const IntMatrix*> mods = {&n.fixed.rels, &n.underlying.rels, &n.underlying.rels,
                                          &n.fixed.rels, &n.underlying.rels};
    std::vector<int> mod_cols = {m.fixed.rels.cols, m.underlying.rels.cols, aM, bM, bM};
    int total_rows = 0, aux = 0;
    for (size_t i = 0; i < row_counts.size(); i++) {
        total_rows += row_counts[i];
        aux += mods[i]->cols * mod_cols[i];
    }
    IntMatrix sys(total_rows, va + vb + aux);
    int row = 0, aux0 = va + vb;
    // wd_A: phiA * rels_AM = 0 mod rels_AN
    detail::add_product_term(sys, row, 0, IntMatrix::identity(aN), m.fixed.rels, 1);
    detail::add_mod_block(sys, row, aux0, n.fixed.rels, m.fixed.rels.cols);
    row += row_counts[0]; aux0 += n.fixed.rels.cols * mod_cols[0];
    // wd_B
    detail::add_product_term(sys, row, va, IntMatrix::identity(bN), m.underlying.rels, 1);
    detail::add_mod_block(sys, row, aux0, n.underlying.rels, m.underlying.rels.cols);
    row += row_counts[1]; aux0 += n.underlying.rels.cols * mod_cols[1];
    // phiB * res_M - res_N * phiA = 0 mod rels_BN
    detail::add_product_term(sys, row, va, IntMatrix::identity(bN), m.res, 1);
    detail::add_product_term(sys, row, 0, n.res, IntMatrix::identity(aM), -1);
    detail::add_mod_block(sys, row, aux0, n.underlying.rels, aM);
    row += row_counts[2]; aux0 += n.underlying.rels.cols * aM;
    // phiA * tr_M - tr_N * phiB = 0 mod rels_AN
    detail::add_product_term(sys, row, 0, IntMatrix::identity(aN), m.tr, 1);
    detail::add_product_term(sys, row, va, n.tr, IntMatrix::identity(bM), -1);
    detail::add_mod_block(sys, row, aux0, n.fixed.rels, bM);
    row += row_counts[3]; aux0 += n.fixed.rels.cols * bM;
    // phiB * weyl_M - weyl_N * phiB = 0 mod rels_BN
    detail::add_product_term(sys, row, va, IntMatrix::identity(bN), m.weyl, 1);
    detail::add_product_term(sys, row, va, n.weyl, IntMatrix::identity(bM), -1);
    detail::add_mod_block(sys, row, aux0, n.underlying.rels, bM);

    IntMatrix ker = kernel_basis(sys).take_rows(0, va + vb);
    return column_lattice_basis(ker);
}

inline bool hom_is_iso(const GroupHom& f) {
    return kernel_sq(f).group.is_trivial() && cokernel_sq(f).group.is_trivial();
}

/* bounded search for a structure-respecting isomorphism; Unknown is always safe */
inline IsoResult iso_search(const CpMackey& min, const CpMackey& nin, int budget = 400) {
    if (min.p != nin.p) return IsoResult::No;
    if (!levelwise_iso(min, nin)) return IsoResult::No;
    if (mackey_profile(min) != mackey_profile(nin)) return IsoResult::No;

    // search between minimal presentations; an iso there transports back
    CpMackey m = simplify_presentation(min).value;
    CpMackey n = simplify_presentation(nin).value;

    int aM = m.fixed.gens, aN = n.fixed.gens, bM = m.underlying.gens, bN = n.underlying.gens;
    int va = aN * aM;
    IntMatrix basis = commuting_pair_lattice(m, n);
    int d = basis.cols;
    if (d == 0) {
        bool trivial = m.fixed.is_trivial() && m.underlying.is_trivial();
        return trivial ? IsoResult::Yes : IsoResult::Unknown;
    }

    auto try_vec = [&](const IntMatrix& v) -> bool {
        IntMatrix fa = hom_from_vec(v.take_rows(0, va), aN, aM);
        IntMatrix fb = hom_from_vec(v.take_rows(va, v.rows - va), bN, bM);
        MackeyHom h{m, n, fa, fb};
        if (!mackey_hom_valid(h)) return false;
        return hom_is_iso(GroupHom(m.fixed, n.fixed, fa)) &&
               hom_is_iso(GroupHom(m.underlying, n.underlying, fb));
    };

    int tried = 0;
    // single basis vectors and signed pairs first
    for (int i = 0; i < d && tried < budget; i++, tried++) {
        if (try_vec(basis.col(i))) return IsoResult::Yes;
    }
    for (int i = 0; i < d && tried < budget; i++)
        for (int j = i + 1; j < d && tried < budget; j++)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    if (tried++ >= budget) break;
                    IntMatrix v = basis.col(i).scaled(si).add(basis.col(j).scaled(sj));
                    if (try_vec(v)) return IsoResult::Yes;
                }
    // deterministic pseudo-random combinations
    unsigned long long state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return (long)(state % 5) - 2;
    };
    while (tried++ < budget) {
        IntMatrix v(basis.rows, 1);
        for (int j = 0; j < d; j++) {
            long c = next();
            if (c == 0) continue;
            for (int i = 0; i < basis.rows; i++) v.at(i, 0) += c * basis.at(i, j);
        }
        if (try_vec(v)) return IsoResult::Yes;
    }
    return IsoResult::Unknown;
}

}  // namespace cpslice
