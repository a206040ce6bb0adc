#pragma once

#include <cpslice/mackey.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace cpslice {

/* Subquotient constructions attached to a Mackey functor.  Hats vanish on the
 * underlying level; the Minus variants (p = 2 only) carry the sign-twisted
 * underlying level.  Every value keeps an anchored subquotient view of its
 * fixed level so maps between constructions over the same input can be induced
 * by ambient matrices.
 */
enum class Derived {
    FixedF,
    OrbitO,
    KerN,
    CokerN,
    ImN,
    KerR,
    CokerRFixed,
    ImR,
    KerTrOrbits,
    CokerTr,
    ImTr,
    Triangle,
    Nabla,
    KerTrMinus,
    KerNMinus,
    CokerRMinus,
    CokerNMinus,
};

inline bool derived_is_signed(Derived k) {
    return k == Derived::KerTrMinus || k == Derived::KerNMinus || k == Derived::CokerRMinus ||
           k == Derived::CokerNMinus;
}

enum class DerivedAmbient { Fixed, Underlying };
enum class DerivedUnder { Full, FullSigned, Zero };

struct DerivedPart {
    CpMackey value;
    DerivedAmbient ambient;  // which level of the input the fixed level sits over
    SubquotientGroup top;
    DerivedUnder under;
};

namespace detail {

/* columns spanning {x : map x lies in the span of dst_rels}; always contains
 * the source relations, so subquotient solves stay exact */
inline IntMatrix preimage_lattice(const IntMatrix& map, const IntMatrix& dst_rels) {
    IntMatrix ker = kernel_basis(map.hstack(dst_rels));
    return column_lattice_basis(ker.take_rows(0, map.cols));
}

inline IntMatrix sq_reduce_columns(const SubquotientGroup& s, const IntMatrix& cols) {
    IntMatrix out(s.lattice.cols, cols.cols);
    for (int j = 0; j < cols.cols; j++) {
        IntMatrix r = s.reduce(cols.col(j));
        for (int i = 0; i < out.rows; i++) out.at(i, j) = r.at(i, 0);
    }
    return out;
}

}  // namespace detail

inline DerivedPart derived_part(Derived k, const CpMackey& m) {
    if (derived_is_signed(k) && m.p != 2)
        throw std::invalid_argument("sign-twisted construction needs p = 2");

    const FgAbGroup& a = m.fixed;
    const FgAbGroup& b = m.underlying;
    int bg = b.gens;
    IntMatrix ib = IntMatrix::identity(bg);
    IntMatrix n = norm_matrix(m);
    IntMatrix wm1 = m.weyl.sub(ib);
    IntMatrix omw = ib.sub(m.weyl);
    IntMatrix none_b(bg, 0), none_a(a.gens, 0);

    auto hat_of = [&](SubquotientGroup sq, DerivedAmbient amb) {
        CpMackey v = hat_mackey(m.p, sq.group);
        return DerivedPart{std::move(v), amb, std::move(sq), DerivedUnder::Zero};
    };
    auto full_of = [&](SubquotientGroup sq, DerivedAmbient amb, const IntMatrix& res,
                       const IntMatrix& tr, bool sign) {
        CpMackey v{m.p, sq.group, b, res, tr, sign ? m.weyl.scaled(-1) : m.weyl};
        validate_mackey(v);
        return DerivedPart{std::move(v), amb, std::move(sq),
                           sign ? DerivedUnder::FullSigned : DerivedUnder::Full};
    };

    switch (k) {
    case Derived::FixedF: {
        SubquotientGroup sq = subquotient(b, detail::preimage_lattice(wm1, b.rels), none_b);
        IntMatrix res = sq.lattice, tr = detail::sq_reduce_columns(sq, n);
        return full_of(std::move(sq), DerivedAmbient::Underlying, res, tr, false);
    }
    case Derived::OrbitO: {
        SubquotientGroup sq = subquotient(b, ib, wm1);
        IntMatrix tr = detail::sq_reduce_columns(sq, ib);
        return full_of(std::move(sq), DerivedAmbient::Underlying, n, tr, false);
    }
    case Derived::ImN: {
        SubquotientGroup sq = subquotient(b, column_lattice_basis(n.hstack(b.rels)), none_b);
        IntMatrix res = sq.lattice, tr = detail::sq_reduce_columns(sq, n);
        return full_of(std::move(sq), DerivedAmbient::Underlying, res, tr, false);
    }
    case Derived::ImR: {
        SubquotientGroup sq = subquotient(b, column_lattice_basis(m.res.hstack(b.rels)), none_b);
        IntMatrix res = sq.lattice, tr = detail::sq_reduce_columns(sq, n);
        return full_of(std::move(sq), DerivedAmbient::Underlying, res, tr, false);
    }
    case Derived::ImTr: {
        SubquotientGroup sq = subquotient(a, column_lattice_basis(m.tr.hstack(a.rels)), none_a);
        IntMatrix res = m.res.mul(sq.lattice), tr = detail::sq_reduce_columns(sq, m.tr);
        return full_of(std::move(sq), DerivedAmbient::Fixed, res, tr, false);
    }
    case Derived::KerN:
        return hat_of(subquotient(b, detail::preimage_lattice(n, b.rels), wm1),
                      DerivedAmbient::Underlying);
    case Derived::CokerN:
        return hat_of(subquotient(b, detail::preimage_lattice(wm1, b.rels), n),
                      DerivedAmbient::Underlying);
    case Derived::KerR: return hat_of(kernel_sq(res_hom(m)), DerivedAmbient::Fixed);
    case Derived::CokerRFixed:
        return hat_of(subquotient(b, detail::preimage_lattice(wm1, b.rels), m.res),
                      DerivedAmbient::Underlying);
    case Derived::KerTrOrbits:
        return hat_of(subquotient(b, detail::preimage_lattice(m.tr, a.rels), wm1),
                      DerivedAmbient::Underlying);
    case Derived::CokerTr: return hat_of(cokernel_sq(tr_hom(m)), DerivedAmbient::Fixed);
    case Derived::Triangle:
        return hat_of(subquotient(b, column_lattice_basis(m.res.hstack(b.rels)), n),
                      DerivedAmbient::Underlying);
    case Derived::Nabla: {
        IntMatrix carried = m.tr.mul(detail::preimage_lattice(n, b.rels));
        return hat_of(subquotient(a, column_lattice_basis(carried.hstack(a.rels)), none_a),
                      DerivedAmbient::Fixed);
    }
    case Derived::KerTrMinus: {
        SubquotientGroup sq = subquotient(b, detail::preimage_lattice(m.tr, a.rels), none_b);
        IntMatrix res = sq.lattice, tr = detail::sq_reduce_columns(sq, omw);
        return full_of(std::move(sq), DerivedAmbient::Underlying, res, tr, true);
    }
    case Derived::KerNMinus: {
        SubquotientGroup sq = subquotient(b, detail::preimage_lattice(n, b.rels), none_b);
        IntMatrix res = sq.lattice, tr = detail::sq_reduce_columns(sq, omw);
        return full_of(std::move(sq), DerivedAmbient::Underlying, res, tr, true);
    }
    case Derived::CokerRMinus: {
        SubquotientGroup sq = subquotient(b, ib, m.res);
        IntMatrix tr = detail::sq_reduce_columns(sq, ib);
        return full_of(std::move(sq), DerivedAmbient::Underlying, omw, tr, true);
    }
    case Derived::CokerNMinus: {
        SubquotientGroup sq = subquotient(b, ib, n);
        IntMatrix tr = detail::sq_reduce_columns(sq, ib);
        return full_of(std::move(sq), DerivedAmbient::Underlying, omw, tr, true);
    }
    }
    throw std::logic_error("unreachable derived kind");
}

inline CpMackey derived(Derived k, const CpMackey& m) { return derived_part(k, m).value; }

/* the map a construction induces on a map of Mackey functors */
inline MackeyHom derived_hom(Derived k, const MackeyHom& f) {
    DerivedPart ps = derived_part(k, f.src);
    DerivedPart pd = derived_part(k, f.dst);
    const IntMatrix& amb = ps.ambient == DerivedAmbient::Fixed ? f.on_fixed : f.on_under;
    IntMatrix top = detail::sq_reduce_columns(pd.top, amb.mul(ps.top.lattice));
    IntMatrix under = ps.under == DerivedUnder::Zero ? IntMatrix(0, 0) : f.on_under;
    MackeyHom out{ps.value, pd.value, top, under};
    mackey_hom_check(out, "induced map of a derived construction");
    return out;
}

inline MackeyHom norm_map(const CpMackey& m) { return norm_map(m.p, underlying_module(m)); }

/* 0 -> ker(res)^ -> M -> F(M) -> (fixed points / res)^ -> 0 */
inline std::vector<MackeyHom> sequence_res(const CpMackey& m) {
    DerivedPart kr = derived_part(Derived::KerR, m);
    DerivedPart ff = derived_part(Derived::FixedF, m);
    DerivedPart cr = derived_part(Derived::CokerRFixed, m);
    int bg = m.underlying.gens;

    MackeyHom incl{kr.value, m, kr.top.lattice, IntMatrix(bg, 0)};
    MackeyHom unit{m, ff.value, detail::sq_reduce_columns(ff.top, m.res),
                   IntMatrix::identity(bg)};
    MackeyHom proj{ff.value, cr.value, detail::sq_reduce_columns(cr.top, ff.top.lattice),
                   IntMatrix(0, bg)};
    mackey_hom_check(incl, "res kernel inclusion");
    mackey_hom_check(unit, "map to fixed point functor");
    mackey_hom_check(proj, "projection onto res cokernel");
    return {incl, unit, proj};
}

/* 0 -> ker(orbit transfer)^ -> O(M) -> M -> coker(tr)^ -> 0 */
inline std::vector<MackeyHom> sequence_tr(const CpMackey& m) {
    DerivedPart kt = derived_part(Derived::KerTrOrbits, m);
    DerivedPart oo = derived_part(Derived::OrbitO, m);
    DerivedPart ct = derived_part(Derived::CokerTr, m);
    int bg = m.underlying.gens;

    MackeyHom incl{kt.value, oo.value, detail::sq_reduce_columns(oo.top, kt.top.lattice),
                   IntMatrix(bg, 0)};
    MackeyHom counit{oo.value, m, m.tr.mul(oo.top.lattice), IntMatrix::identity(bg)};
    MackeyHom proj{m, ct.value,
                   detail::sq_reduce_columns(ct.top, IntMatrix::identity(m.fixed.gens)),
                   IntMatrix(0, bg)};
    mackey_hom_check(incl, "orbit transfer kernel inclusion");
    mackey_hom_check(counit, "map from orbit functor");
    mackey_hom_check(proj, "projection onto tr cokernel");
    return {incl, counit, proj};
}

/* the six term sequence of hats
 * 0 -> kerTrOrbits -> kerN -> kerR -> cokerTr -> cokerN -> cokerRFixed -> 0 */
inline std::vector<MackeyHom> sequence_six(const CpMackey& m) {
    DerivedPart kt = derived_part(Derived::KerTrOrbits, m);
    DerivedPart kn = derived_part(Derived::KerN, m);
    DerivedPart kr = derived_part(Derived::KerR, m);
    DerivedPart ct = derived_part(Derived::CokerTr, m);
    DerivedPart cn = derived_part(Derived::CokerN, m);
    DerivedPart cr = derived_part(Derived::CokerRFixed, m);

    auto hat_map = [&](const DerivedPart& s, const DerivedPart& d, const IntMatrix& via,
                       const char* what) {
        MackeyHom h{s.value, d.value, detail::sq_reduce_columns(d.top, via.mul(s.top.lattice)),
                    IntMatrix(0, 0)};
        mackey_hom_check(h, what);
        return h;
    };
    IntMatrix ib = IntMatrix::identity(m.underlying.gens);
    IntMatrix ia = IntMatrix::identity(m.fixed.gens);
    return {hat_map(kt, kn, ib, "kerTrOrbits into kerN"),
            hat_map(kn, kr, m.tr, "kerN into kerR via tr"),
            hat_map(kr, ct, ia, "kerR into cokerTr"),
            hat_map(ct, cn, m.res, "cokerTr into cokerN via res"),
            hat_map(cn, cr, ib, "cokerN onto cokerRFixed")};
}

/* maps compose left to right; checks injectivity at the head, exactness at
 * every middle object, surjectivity at the tail, on both levels */
inline bool exact_sequence_valid(const std::vector<MackeyHom>& seq) {
    if (seq.empty()) return true;
    for (const MackeyHom& h : seq)
        if (!mackey_hom_valid(h)) return false;
    auto fixed_of = [](const MackeyHom& h) {
        return GroupHom(h.src.fixed, h.dst.fixed, h.on_fixed);
    };
    auto under_of = [](const MackeyHom& h) {
        return GroupHom(h.src.underlying, h.dst.underlying, h.on_under);
    };
    if (!kernel_sq(fixed_of(seq.front())).group.is_trivial()) return false;
    if (!kernel_sq(under_of(seq.front())).group.is_trivial()) return false;
    for (size_t i = 0; i + 1 < seq.size(); i++) {
        if (!exact_at(fixed_of(seq[i]), fixed_of(seq[i + 1]))) return false;
        if (!exact_at(under_of(seq[i]), under_of(seq[i + 1]))) return false;
    }
    if (!cokernel_sq(fixed_of(seq.back())).group.is_trivial()) return false;
    if (!cokernel_sq(under_of(seq.back())).group.is_trivial()) return false;
    return true;
}

}  // namespace cpslice
