#pragma once

#include "derived.hpp"
#include "sphere.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpslice {

/* Slice and coslice towers for Σ^V HM.  The controlling quantity is
 * r = (p-1)m - 2n where V reduces to m + nλ; its sign picks the direction and
 * k = ceil(r/p) (resp. -ceil(-r/p)) counts the fibers (resp. cofibers).
 *
 * r > 0, tower of fibrations ending in an (m+2n)-slice:
 *   Σ^V HM -> Σ^V H im(R) -> X_2 -> ... -> X_k -> *
 *   X_{2i+2} = Σ^{V-2i+iλ} HF(M),  X_{2i+1} = Σ^{V-2i+iλ} H im(N)   (i >= 1)
 *   fibers  ker(R)^ @ m,  coker(R)^ @ m-1,  then ker(N)^ / coker(N)^
 *   at m-i for i even / odd.
 *
 * r < 0, the mirror under the opposite parity convention:
 *   * -> X^k -> ... -> X^{-2} -> Σ^V H im(tr) -> Σ^V HM
 *   X^{2i-2} = Σ^{V-2i+iλ} HO(M),  X^{2i-1} = Σ^{V-2i+iλ} H im(N)   (i <= -1)
 *   cofibers coker(tr)^ @ m,  ker(tr)^ @ m+1,  then coker(N)^ / ker(N)^
 *   at m-i for i even / odd.
 *
 * Towers are plain data: descriptor lists plus certificates, checked after the
 * fact by tower_consistency_check and by the chart verifier downstream.
 */

struct SliceParams {
    int r = 0;
    int k = 0;
};

inline SliceParams slice_parameters(const ReducedRep& v) {
    SliceParams s;
    s.r = (v.p - 1) * v.m - v.n2;
    if (s.r > 0)
        s.k = (s.r + v.p - 1) / v.p;
    else if (s.r < 0)
        s.k = -((-s.r + v.p - 1) / v.p);
    return s;
}

struct SliceDescriptor {
    int t = 0;       // slice dimension (p*d for hats, m+2n for stages)
    int d = 0;       // trivial suspension
    int lambda2 = 0; // twice the λ-power, so p = 2 half powers stay integral
    CpMackey coefficient;
    std::string symbol;
    std::optional<Derived> kind; // set when coefficient = derived(kind, M)
};

enum class TowerDirection { Slice, Coslice };
enum class StageForm { Default, ForceF, ForceO };

struct TowerStage {
    SliceDescriptor stage;
    bool has_fiber = false;
    SliceDescriptor fiber; // fiber (slice) or cofiber (coslice) attached over the stage
};

struct SliceTower {
    int p = 2;
    int m = 0, n2 = 0;
    int r = 0, k = 0;
    TowerDirection direction = TowerDirection::Slice;
    int lo = 0, hi = 0; // slice range of Σ^V HM
    std::vector<TowerStage> stages;

    int fiber_count() const {
        int c = 0;
        for (const auto& s : stages) c += s.has_fiber ? 1 : 0;
        return c;
    }
};

inline bool mackey_is_zero(const CpMackey& m) {
    return m.fixed.is_trivial() && m.underlying.is_trivial();
}

inline bool res_injective(const CpMackey& m) {
    return derived(Derived::KerR, m).fixed.is_trivial();
}

inline bool tr_surjective(const CpMackey& m) {
    return derived(Derived::CokerTr, m).fixed.is_trivial();
}

namespace detail {

inline SliceDescriptor hat_fiber(const CpMackey& m, Derived kind, int d, const char* symbol) {
    SliceDescriptor f;
    f.t = m.p * d;
    f.d = d;
    f.lambda2 = 0;
    f.coefficient = derived(kind, m);
    f.symbol = symbol;
    f.kind = kind;
    return f;
}

inline SliceDescriptor stage_desc(const CpMackey& m, std::optional<Derived> kind, int d,
                                  int lambda2, int dim, const char* symbol) {
    SliceDescriptor s;
    s.t = dim;
    s.d = d;
    s.lambda2 = lambda2;
    s.coefficient = kind ? derived(*kind, m) : m;
    s.symbol = symbol;
    s.kind = kind;
    return s;
}

/* Σ^λ HO(M) = Σ^2 HF(M) lets every F stage trade for an O stage and back */
inline void apply_stage_form(SliceDescriptor& s, const CpMackey& m, StageForm form) {
    if (form == StageForm::ForceO && s.kind == Derived::FixedF) {
        s.d -= 2;
        s.lambda2 += 2;
        s.kind = Derived::OrbitO;
        s.coefficient = derived(Derived::OrbitO, m);
        s.symbol = "O";
    } else if (form == StageForm::ForceF && s.kind == Derived::OrbitO) {
        s.d += 2;
        s.lambda2 -= 2;
        s.kind = Derived::FixedF;
        s.coefficient = derived(Derived::FixedF, m);
        s.symbol = "F";
    }
}

} // namespace detail

inline SliceTower theorem_tower(const VirtualRep& v, const CpMackey& m,
                                StageForm form = StageForm::Default) {
    if (v.p != m.p) throw std::invalid_argument("representation and coefficient prime differ");
    ReducedRep rr = reduce_rep(v);
    SliceParams sp = slice_parameters(rr);
    SliceTower t;
    t.p = v.p;
    t.m = rr.m;
    t.n2 = rr.n2;
    t.r = sp.r;
    t.k = sp.k;
    const int dim = rr.m + rr.n2;

    if (sp.r == 0) {
        t.direction = TowerDirection::Slice;
        t.lo = t.hi = dim;
        TowerStage st;
        st.stage = detail::stage_desc(m, std::nullopt, rr.m, rr.n2, dim, "M");
        t.stages.push_back(st);
        return t;
    }

    if (sp.r > 0) {
        t.direction = TowerDirection::Slice;
        t.lo = dim;
        t.hi = v.p * rr.m;
        for (int j = 0; j <= sp.k; ++j) {
            TowerStage st;
            if (j == 0)
                st.stage = detail::stage_desc(m, std::nullopt, rr.m, rr.n2, dim, "M");
            else if (j == 1)
                st.stage = detail::stage_desc(m, Derived::ImR, rr.m, rr.n2, dim, "imR");
            else if (j % 2 == 0)
                st.stage =
                    detail::stage_desc(m, Derived::FixedF, rr.m - (j - 2), rr.n2 + (j - 2), dim, "F");
            else
                st.stage =
                    detail::stage_desc(m, Derived::ImN, rr.m - (j - 1), rr.n2 + (j - 1), dim, "imN");
            detail::apply_stage_form(st.stage, m, form);
            if (j < sp.k) {
                st.has_fiber = true;
                if (j == 0)
                    st.fiber = detail::hat_fiber(m, Derived::KerR, rr.m, "kerR");
                else if (j == 1)
                    st.fiber = detail::hat_fiber(m, Derived::CokerRFixed, rr.m - 1, "cokerR");
                else if (j % 2 == 0)
                    st.fiber = detail::hat_fiber(m, Derived::KerN, rr.m - j, "kerN");
                else
                    st.fiber = detail::hat_fiber(m, Derived::CokerN, rr.m - j, "cokerN");
            }
            t.stages.push_back(st);
        }
        return t;
    }

    t.direction = TowerDirection::Coslice;
    t.lo = v.p * rr.m;
    t.hi = dim;
    for (int j = 0; j >= sp.k; --j) {
        TowerStage st;
        if (j == 0)
            st.stage = detail::stage_desc(m, std::nullopt, rr.m, rr.n2, dim, "M");
        else if (j == -1)
            st.stage = detail::stage_desc(m, Derived::ImTr, rr.m, rr.n2, dim, "imTr");
        else if (j % 2 == 0)
            st.stage =
                detail::stage_desc(m, Derived::OrbitO, rr.m - (j + 2), rr.n2 + (j + 2), dim, "O");
        else
            st.stage =
                detail::stage_desc(m, Derived::ImN, rr.m - (j + 1), rr.n2 + (j + 1), dim, "imN");
        detail::apply_stage_form(st.stage, m, form);
        if (j > sp.k) {
            st.has_fiber = true;
            if (j == 0)
                st.fiber = detail::hat_fiber(m, Derived::CokerTr, rr.m, "cokerTr");
            else if (j == -1)
                st.fiber = detail::hat_fiber(m, Derived::KerTrOrbits, rr.m + 1, "kerTr");
            else if (j % 2 == 0)
                st.fiber = detail::hat_fiber(m, Derived::CokerN, rr.m - j, "cokerN");
            else
                st.fiber = detail::hat_fiber(m, Derived::KerN, rr.m - j, "kerN");
        }
        t.stages.push_back(st);
    }
    return t;
}

inline SliceTower slice_tower(const VirtualRep& v, const CpMackey& m,
                              StageForm form = StageForm::Default) {
    return theorem_tower(v, m, form);
}

inline SliceTower coslice_tower(const VirtualRep& v, const CpMackey& m,
                                StageForm form = StageForm::Default) {
    return theorem_tower(v, m, form);
}

/* ---- single-slice recognition ---- */

struct SingleSliceResult {
    bool single = false;
    int t = 0;
    std::string certificate;
};

namespace detail {

inline SingleSliceResult count_tower_slices(const SliceTower& t,
                                            const std::vector<bool>& fiber_nonzero,
                                            bool terminal_nonzero) {
    SingleSliceResult out;
    int dim = t.m + t.n2;
    int count = terminal_nonzero ? 1 : 0;
    int lone_t = dim;
    for (size_t i = 0; i < fiber_nonzero.size(); ++i)
        if (fiber_nonzero[i]) {
            ++count;
            size_t seen = 0;
            for (const auto& st : t.stages)
                if (st.has_fiber && seen++ == i) lone_t = st.fiber.t;
        }
    if (count > 1) {
        out.single = false;
        out.certificate = "tower has " + std::to_string(count) + " nonzero slices";
        return out;
    }
    out.single = true;
    if (count == 0) {
        out.t = dim;
        out.certificate = "zero spectrum";
    } else if (terminal_nonzero) {
        out.t = dim;
        out.certificate = "all tower fibers vanish";
    } else {
        out.t = lone_t;
        out.certificate = "single nonzero tower fiber";
    }
    return out;
}

} // namespace detail

inline SingleSliceResult is_single_slice(const VirtualRep& v, const CpMackey& m) {
    ReducedRep rr = reduce_rep(v);
    SliceParams sp = slice_parameters(rr);
    int dim = rr.m + rr.n2;
    if (sp.r == 0) return {true, dim, "r = 0"};
    if (sp.r > 0 && sp.r <= v.p && res_injective(m))
        return {true, dim, "restriction injective and r in [0, p]"};
    if (sp.r < 0 && sp.r >= -v.p && tr_surjective(m))
        return {true, dim, "transfer surjective and r in [-p, 0]"};
    SliceTower t = theorem_tower(v, m);
    std::vector<bool> fibers;
    bool terminal = false;
    for (const auto& st : t.stages) {
        if (st.has_fiber)
            fibers.push_back(!mackey_is_zero(st.fiber.coefficient));
        else
            terminal = !mackey_is_zero(st.stage.coefficient);
    }
    return detail::count_tower_slices(t, fibers, terminal);
}

/* ---- stable evaluation along a truncation tower ---- */

/* A compatible pair M_N -> M_{N+1}; a derived piece counts as zero when the
 * transition map it induces vanishes, matching the colimit value. */
struct StablePair {
    CpMackey small, big;
    MackeyHom step;
};

inline StablePair qz_truncation_pair(int p, int level, bool coconstant) {
    Int q = 1;
    for (int i = 0; i < level; ++i) q *= p;
    FgAbGroup gs = cyclic_group(q), gb = cyclic_group(q * p);
    CpMackey s = coconstant ? coconstant_mackey(p, gs) : constant_mackey(p, gs);
    CpMackey b = coconstant ? coconstant_mackey(p, gb) : constant_mackey(p, gb);
    IntMatrix mp = IntMatrix::identity(1).scaled(p);
    MackeyHom step{s, b, mp, mp};
    mackey_hom_check(step, "truncation transition");
    return {s, b, step};
}

inline bool stably_nonzero(Derived kind, const StablePair& pair) {
    return !mackey_hom_is_zero(derived_hom(kind, pair.step));
}

inline SingleSliceResult is_single_slice_stable(const VirtualRep& v, const StablePair& pair) {
    ReducedRep rr = reduce_rep(v);
    SliceParams sp = slice_parameters(rr);
    if (sp.r == 0) return {true, rr.m + rr.n2, "r = 0"};
    SliceTower t = theorem_tower(v, pair.small);
    std::vector<bool> fibers;
    bool terminal = false;
    for (const auto& st : t.stages) {
        if (st.has_fiber)
            fibers.push_back(stably_nonzero(*st.fiber.kind, pair));
        else
            terminal = st.stage.kind ? stably_nonzero(*st.stage.kind, pair)
                                     : !mackey_hom_is_zero(pair.step);
    }
    SingleSliceResult out = detail::count_tower_slices(t, fibers, terminal);
    if (out.single) out.certificate += " (stable in the truncation level)";
    return out;
}

/* ---- consistency audit ---- */

inline CrosscheckReport tower_consistency_check(const SliceTower& t, const VirtualRep& v,
                                                const CpMackey& m) {
    CrosscheckReport rep;
    auto fail = [&rep](const std::string& s) {
        rep.ok = false;
        rep.detail += s + "; ";
    };
    ReducedRep rr = reduce_rep(v);
    SliceParams sp = slice_parameters(rr);
    const int dim = rr.m + rr.n2;
    if (t.r != sp.r || t.k != sp.k) fail("stored (r, k) disagree with the representation");
    size_t want_stages = sp.k >= 0 ? sp.k + 1 : -sp.k + 1;
    if (t.stages.size() != want_stages) fail("stage count");
    int want_fibers = sp.k >= 0 ? sp.k : -sp.k;
    if (t.fiber_count() != want_fibers) fail("fiber count");
    if (sp.r > 0 && (t.lo != dim || t.hi != v.p * rr.m)) fail("slice range");
    if (sp.r < 0 && (t.lo != v.p * rr.m || t.hi != dim)) fail("slice range");
    if (sp.r == 0 && (t.lo != dim || t.hi != dim)) fail("slice range");

    int prev_t = 0;
    bool have_prev = false;
    for (size_t i = 0; i < t.stages.size(); ++i) {
        const TowerStage& st = t.stages[i];
        if (st.stage.d + st.stage.lambda2 != dim) fail("stage suspension dimension");
        if (st.stage.t != dim) fail("stage slice dimension label");
        bool terminal = i + 1 == t.stages.size();
        if (st.has_fiber == terminal) fail("fiber attached to the wrong stage");
        if (!st.has_fiber) continue;
        const SliceDescriptor& f = st.fiber;
        if (f.t != t.p * f.d) fail("hat fiber dimension is not p times its suspension");
        if (!f.coefficient.underlying.is_trivial()) fail("fiber coefficient is not a hat");
        if (!f.kind || !mackey_same_shape(f.coefficient, derived(*f.kind, m)))
            fail("fiber coefficient does not match its construction");
        if (have_prev) {
            if (t.direction == TowerDirection::Slice && f.t >= prev_t)
                fail("slice fiber dimensions must strictly decrease");
            if (t.direction == TowerDirection::Coslice && f.t <= prev_t)
                fail("coslice cofiber dimensions must strictly increase");
        }
        if (f.t < std::min(t.lo, t.hi) || f.t > std::max(t.lo, t.hi))
            fail("fiber dimension outside the slice range");
        prev_t = f.t;
        have_prev = true;
    }

    /* hats have trivial underlying homotopy, so along the tower the underlying
     * level of Σ^V HM must agree degreewise with the terminal stage */
    const TowerStage& last = t.stages.back();
    VirtualRep w;
    w.p = v.p;
    w.trivial = last.stage.d;
    if (v.p == 2)
        w.sigma = last.stage.lambda2;
    else if (last.stage.lambda2 != 0) {
        if (last.stage.lambda2 % 2 != 0) fail("odd λ power at an odd prime");
        w.lambda[1] = last.stage.lambda2 / 2;
    }
    GradedMackey total = homology_of_sphere(v, m);
    GradedMackey tail = homology_of_sphere(w, last.stage.coefficient);
    std::map<int, bool> degrees;
    for (auto& kv : total) degrees[kv.first] = true;
    for (auto& kv : tail) degrees[kv.first] = true;
    for (auto& kv : degrees) {
        int q = kv.first;
        FgAbGroup a = total.count(q) ? total.at(q).underlying : FgAbGroup{0, IntMatrix(0, 0)};
        FgAbGroup b = tail.count(q) ? tail.at(q).underlying : FgAbGroup{0, IntMatrix(0, 0)};
        if (!groups_isomorphic(a, b))
            fail("underlying homotopy of the terminal stage differs at degree " +
                 std::to_string(q));
    }
    return rep;
}

} // namespace cpslice
