#pragma once

#include <cpslice/box.hpp>
#include <cpslice/rep.hpp>
#include <cpslice/sphere.hpp>
#include <cpslice/tower.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cpslice {

/* Slice spectral sequence charts for Σ^V HM.
 *
 * The E2 page is read off the tower: one hat class per fiber and one band
 * class per closed-form homology row of the terminal stage, each row collapsed
 * to a symbol over that stage.  Decoration pairs adjacent columns into
 * differentials whose kernel and cokernel are witnessed by an exact sequence,
 * then records every column with two survivors as an extension carrying a
 * two-step filtration witness.  verify_convergence replays the decorated chart
 * against the cellular homology of S^V, which is computed by an independent
 * route.
 */

struct ChartClass {
    int x = 0;
    int s = 0;  // filtration, t = x + s
    int t = 0;
    bool band = false;
    std::string symbol;
    std::optional<RowKind> row;       // band: closed-form row it collapsed from
    std::optional<Derived> term;      // band: terminal stage functor, if any
    std::optional<Derived> hat_kind;  // hat: fiber functor
    CpMackey value;                   // E2 value
    CpMackey einf;                    // surviving value after decoration
    std::string einf_label;
};

struct ChartDifferential {
    int r = 0;
    int source = -1, target = -1;
    std::string source_outcome, target_outcome;
    std::vector<MackeyHom> witness;  // 0 -> ker -> src -> dst -> coker -> 0
    std::optional<std::vector<MackeyHom>> joint;
};

struct ChartExtension {
    std::vector<int> classes;        // higher filtration first
    std::vector<MackeyHom> witness;  // sub -> middle -> quotient, middle = H_x
    std::optional<std::vector<MackeyHom>> joint;
};

struct Chart {
    int p = 2;
    VirtualRep v;
    ReducedRep rep;
    SliceParams params;
    CpMackey coeff;  // rotated module the chart is computed over
    std::optional<Derived> terminal;
    std::string family;
    bool decorated = false;
    std::vector<ChartClass> classes;
    std::vector<ChartDifferential> differentials;
    std::vector<ChartExtension> extensions;
};

namespace detail {

/* Symbol of a closed-form row after collapsing onto the terminal stage; the
 * column picks the stage functor (none = M itself).  A null entry claims the
 * collapsed row vanishes for every coefficient, which e2_page asserts. */
inline std::optional<std::string> collapse_symbol(RowKind rk, const std::optional<Derived>& term,
                                                  int r) {
    int c = 0;
    if (term) {
        switch (*term) {
            case Derived::FixedF: c = 1; break;
            case Derived::OrbitO: c = 2; break;
            case Derived::ImN: c = 3; break;
            case Derived::ImR: c = 4; break;
            case Derived::ImTr: c = 5; break;
            default: throw std::logic_error("chart: unexpected terminal stage functor");
        }
    }
    const char* z = nullptr;
    auto pick = [&](std::array<const char*, 6> row) -> std::optional<std::string> {
        const char* s = row[(size_t)c];
        if (!s) return std::nullopt;
        return std::string(s);
    };
    switch (rk) {
        case RowKind::Unit:
            return pick({"unit", "F", "O", r > 0 ? "R" : "T", "R", "T"});
        case RowKind::CokerTr:
            return pick({"cokerTr", "cokerN", z, z, "triangle", z});
        case RowKind::KerTrOrbits:
            return pick({"kerTr", "kerN", z, "kerN", "kerN", "kerTr"});
        case RowKind::KerN:
            return pick({"kerN", "kerN", "kerN", "kerN", "kerN", "kerN"});
        case RowKind::CokerN:
            return pick({"cokerN", "cokerN", "cokerN", "cokerN", "cokerN", "cokerN"});
        case RowKind::TopF:
            return pick({"F", "F", "F", "F", "F", "F"});
        case RowKind::KerR:
            return pick({"kerR", z, "kerN", z, z, "nabla"});
        case RowKind::CokerRFixed:
            return pick({"cokerR", z, "cokerN", "cokerN", "cokerR", "cokerN"});
        case RowKind::BottomO:
            return pick({"O", "O", "O", "O", "O", "O"});
        case RowKind::KerTrMinus:
            return pick({"M-", "F-", "O-", "F-", "F-", "M-"});
        case RowKind::KerNMinus:
            return pick({"F-", "F-", "F-", "F-", "F-", "F-"});
        case RowKind::CokerRMinus:
            return pick({"M_-", "F_-", "O_-", "O_-", "M_-", "O_-"});
        case RowKind::CokerNMinus:
            return pick({"O_-", "O_-", "O_-", "O_-", "O_-", "O_-"});
    }
    throw std::logic_error("chart: unhandled row kind");
}

/* kernel / cokernel labels for each (source symbol, target symbol) junction */
inline const std::map<std::pair<std::string, std::string>,
                      std::pair<const char*, const char*>>&
junction_catalog() {
    static const std::map<std::pair<std::string, std::string>,
                          std::pair<const char*, const char*>>
        table = {
            {{"kerN", "kerR"}, {"kerTr", "kerR/nabla"}},
            {{"F-", "kerR"}, {"M-", "kerR/nabla"}},
            {{"cokerN", "cokerR"}, {"triangle", "0"}},
            {{"F", "cokerR"}, {"R", "0"}},
            {{"F", "cokerN"}, {"R", "0"}},
            {{"F-", "kerN"}, {"O-", "0"}},
            {{"kerN", "kerN"}, {"0", "0"}},
            {{"cokerN", "cokerN"}, {"0", "0"}},
            {{"kerTr", "kerN"}, {"0", "nabla"}},
            {{"cokerTr", "cokerN"}, {"(kerR+imtr)/imtr", "cokerR"}},
            {{"kerTr", "O"}, {"0", "T"}},
            {{"cokerTr", "O_-"}, {"(kerR+imtr)/imtr", "M_-"}},
            {{"kerN", "O"}, {"0", "T"}},
            {{"cokerN", "O_-"}, {"0", "O-"}},
        };
    return table;
}

/* Anchored view of a chart class: the subquotient presenting its fixed level
 * and, for non-unit band classes, the terminal-stage subquotient it sits in.
 * Everything is expressed over the levels of the chart coefficient, so maps
 * between neighbouring classes are induced by ambient matrices. */
struct ClassSite {
    DerivedPart part;
    std::optional<DerivedPart> carrier;
};

inline ClassSite class_site(const Chart& ch, const ChartClass& c) {
    if (!c.band) return {derived_part(*c.hat_kind, ch.coeff), std::nullopt};
    if (!ch.terminal) throw std::logic_error("chart: band class without a terminal stage");
    DerivedPart carrier = derived_part(*ch.terminal, ch.coeff);
    if (*c.row == RowKind::Unit) return {std::move(carrier), std::nullopt};
    DerivedPart part = derived_part(row_derived_kind(*c.row), carrier.value);
    return {std::move(part), std::move(carrier)};
}

inline DerivedAmbient site_level(const ClassSite& s) {
    if (s.part.ambient == DerivedAmbient::Underlying) return DerivedAmbient::Underlying;
    return s.carrier ? s.carrier->ambient : DerivedAmbient::Fixed;
}

/* columns of the ambient level of the chart coefficient spanning the class */
inline IntMatrix site_columns(const ClassSite& s) {
    if (s.part.ambient == DerivedAmbient::Fixed && s.carrier)
        return s.carrier->top.lattice.mul(s.part.top.lattice);
    return s.part.top.lattice;
}

inline IntMatrix site_reduce(const ClassSite& d, const IntMatrix& cols) {
    if (d.part.ambient == DerivedAmbient::Fixed && d.carrier)
        return sq_reduce_columns(d.part.top, sq_reduce_columns(d.carrier->top, cols));
    return sq_reduce_columns(d.part.top, cols);
}

/* differential between neighbouring columns, induced by the ambient identity
 * with res or tr inserted when the two classes live over different levels */
inline MackeyHom junction_hom(const Chart& ch, const ChartClass& src, const ChartClass& dst) {
    ClassSite s = class_site(ch, src);
    ClassSite d = class_site(ch, dst);
    IntMatrix cols = site_columns(s);
    if (site_level(s) != site_level(d))
        cols = (site_level(s) == DerivedAmbient::Underlying ? ch.coeff.tr : ch.coeff.res).mul(cols);
    if (src.value.underlying.gens > 0 && dst.value.underlying.gens > 0)
        throw std::logic_error("chart: junction between two classes with full underlying level");
    MackeyHom h;
    h.src = src.value;
    h.dst = dst.value;
    h.on_fixed = site_reduce(d, cols);
    h.on_under = IntMatrix(dst.value.underlying.gens, src.value.underlying.gens);
    mackey_hom_check(h, "chart junction");
    return h;
}

inline MackeyHom chart_hom(CpMackey src, CpMackey dst, IntMatrix on_fixed, IntMatrix on_under,
                           const char* what) {
    MackeyHom h;
    h.src = std::move(src);
    h.dst = std::move(dst);
    h.on_fixed = std::move(on_fixed);
    h.on_under = std::move(on_under);
    mackey_hom_check(h, what);
    return h;
}

/* 0 -> kerTr^ -> kerN^ -> kerR^ -> cokerTr^ -> triangle^ -> 0 */
inline std::vector<MackeyHom> joint_positive(const CpMackey& m) {
    std::vector<MackeyHom> six = sequence_six(m);
    DerivedPart ct = derived_part(Derived::CokerTr, m);
    DerivedPart tri = derived_part(Derived::Triangle, m);
    MackeyHom tail = chart_hom(ct.value, tri.value,
                               sq_reduce_columns(tri.top, m.res.mul(ct.top.lattice)),
                               IntMatrix(0, 0), "joint tail");
    return {six[0], six[1], six[2], tail};
}

/* 0 -> nabla^ -> kerR^ -> cokerTr^ -> cokerN^ -> cokerR^ -> 0 */
inline std::vector<MackeyHom> joint_negative(const CpMackey& m) {
    std::vector<MackeyHom> six = sequence_six(m);
    DerivedPart nab = derived_part(Derived::Nabla, m);
    DerivedPart kr = derived_part(Derived::KerR, m);
    MackeyHom head = chart_hom(nab.value, kr.value,
                               sq_reduce_columns(kr.top, nab.top.lattice), IntMatrix(0, 0),
                               "joint head");
    return {head, six[2], six[3], six[4]};
}

/* Short exact witness 0 -> sub -> middle -> quotient -> 0 for a two-survivor
 * column, picked by the kind of the surviving hat.  The middle is the actual
 * homology of S^V in that degree; both ends match the survivors up to
 * presentation even when the paired differential degenerated. */
inline std::vector<MackeyHom> extension_witness(const Chart& ch, const ChartClass& hat) {
    const CpMackey& m = ch.coeff;
    const int bg = m.underlying.gens;
    const IntMatrix ib = IntMatrix::identity(bg);
    if (ch.params.r > 0) {
        switch (*hat.hat_kind) {
            case Derived::KerR: {
                if (ch.rep.n2 == 0) {
                    // 0 -> kerR^ -> M -> imR -> 0
                    DerivedPart ir = derived_part(Derived::ImR, m);
                    MackeyHom f1 = sequence_res(m)[0];
                    MackeyHom f2 = chart_hom(m, ir.value, sq_reduce_columns(ir.top, m.res), ib,
                                             "extension quotient");
                    return {f1, f2};
                }
                // 0 -> kerR/nabla -> cokerTr^ -> triangle^ -> 0
                DerivedPart kr = derived_part(Derived::KerR, m);
                DerivedPart ct = derived_part(Derived::CokerTr, m);
                DerivedPart tri = derived_part(Derived::Triangle, m);
                IntMatrix nab_cols = m.tr.mul(preimage_lattice(norm_matrix(m), m.underlying.rels));
                SubquotientGroup sub = subquotient(m.fixed, kr.top.lattice, nab_cols);
                MackeyHom f1 = chart_hom(hat_mackey(m.p, sub.group), ct.value,
                                         sq_reduce_columns(ct.top, sub.lattice), IntMatrix(0, 0),
                                         "extension sub");
                MackeyHom f2 = chart_hom(ct.value, tri.value,
                                         sq_reduce_columns(tri.top, m.res.mul(ct.top.lattice)),
                                         IntMatrix(0, 0), "extension quotient");
                return {f1, f2};
            }
            case Derived::KerN: {
                // 0 -> kerN^ -> O -> imN -> 0
                DerivedPart kn = derived_part(Derived::KerN, m);
                DerivedPart oo = derived_part(Derived::OrbitO, m);
                DerivedPart imn = derived_part(Derived::ImN, m);
                MackeyHom f1 = chart_hom(kn.value, oo.value,
                                         sq_reduce_columns(oo.top, kn.top.lattice),
                                         IntMatrix(bg, 0), "extension sub");
                MackeyHom f2 = chart_hom(oo.value, imn.value,
                                         sq_reduce_columns(imn.top, norm_matrix(m).mul(oo.top.lattice)),
                                         ib, "extension quotient");
                return {f1, f2};
            }
            case Derived::CokerRFixed: {
                // 0 -> cokerR^ -> M_- -> (F_- or O-) -> 0
                DerivedPart crf = derived_part(Derived::CokerRFixed, m);
                DerivedPart crm = derived_part(Derived::CokerRMinus, m);
                MackeyHom f1 = chart_hom(crf.value, crm.value,
                                         sq_reduce_columns(crm.top, crf.top.lattice),
                                         IntMatrix(bg, 0), "extension sub");
                bool deep = ch.params.k >= 3;
                DerivedPart q = deep ? derived_part(Derived::KerTrMinus, derived(Derived::OrbitO, m))
                                     : derived_part(Derived::CokerRMinus, derived(Derived::FixedF, m));
                MackeyHom f2 = chart_hom(crm.value, q.value,
                                         sq_reduce_columns(q.top, deep ? ib.sub(m.weyl) : ib), ib,
                                         "extension quotient");
                return {f1, f2};
            }
            case Derived::CokerN: {
                // 0 -> cokerN^ -> O_- -> (F_- or O-) -> 0
                DerivedPart cn = derived_part(Derived::CokerN, m);
                DerivedPart cnm = derived_part(Derived::CokerNMinus, m);
                MackeyHom f1 = chart_hom(cn.value, cnm.value,
                                         sq_reduce_columns(cnm.top, cn.top.lattice),
                                         IntMatrix(bg, 0), "extension sub");
                bool deep = ch.params.k >= -ch.rep.n2 + 2;
                DerivedPart q = deep ? derived_part(Derived::KerTrMinus, derived(Derived::OrbitO, m))
                                     : derived_part(Derived::CokerRMinus, derived(Derived::FixedF, m));
                MackeyHom f2 = chart_hom(cnm.value, q.value,
                                         sq_reduce_columns(q.top, deep ? ib.sub(m.weyl) : ib), ib,
                                         "extension quotient");
                return {f1, f2};
            }
            default: break;
        }
        throw std::logic_error("chart: no extension recipe for this column");
    }
    switch (*hat.hat_kind) {
        case Derived::CokerTr: {
            if (ch.rep.n2 == 0) {
                // 0 -> imTr -> M -> cokerTr^ -> 0
                DerivedPart it = derived_part(Derived::ImTr, m);
                MackeyHom f1 = chart_hom(it.value, m, it.top.lattice, ib, "extension sub");
                MackeyHom f2 = sequence_tr(m)[2];
                return {f1, f2};
            }
            // 0 -> nabla^ -> kerR^ -> (kerR+imtr)/imtr -> 0
            DerivedPart nab = derived_part(Derived::Nabla, m);
            DerivedPart kr = derived_part(Derived::KerR, m);
            MackeyHom f1 = chart_hom(nab.value, kr.value,
                                     sq_reduce_columns(kr.top, nab.top.lattice), IntMatrix(0, 0),
                                     "extension sub");
            IntMatrix lat =
                column_lattice_basis(kr.top.lattice.hstack(m.tr).hstack(m.fixed.rels));
            SubquotientGroup q = subquotient(m.fixed, lat, m.tr);
            MackeyHom f2 = chart_hom(kr.value, hat_mackey(m.p, q.group),
                                     sq_reduce_columns(q, kr.top.lattice), IntMatrix(0, 0),
                                     "extension quotient");
            return {f1, f2};
        }
        case Derived::KerTrOrbits: {
            // 0 -> O- -> M- -> kerTr^ -> 0
            DerivedPart om = derived_part(Derived::KerTrMinus, derived(Derived::OrbitO, m));
            DerivedPart ktm = derived_part(Derived::KerTrMinus, m);
            DerivedPart kto = derived_part(Derived::KerTrOrbits, m);
            MackeyHom f1 = chart_hom(om.value, ktm.value,
                                     sq_reduce_columns(ktm.top, om.top.lattice), ib,
                                     "extension sub");
            MackeyHom f2 = chart_hom(ktm.value, kto.value,
                                     sq_reduce_columns(kto.top, ktm.top.lattice),
                                     IntMatrix(0, bg), "extension quotient");
            return {f1, f2};
        }
        case Derived::CokerN: {
            // 0 -> imN -> F -> cokerN^ -> 0
            DerivedPart imn = derived_part(Derived::ImN, m);
            DerivedPart ff = derived_part(Derived::FixedF, m);
            DerivedPart cn = derived_part(Derived::CokerN, m);
            MackeyHom f1 = chart_hom(imn.value, ff.value,
                                     sq_reduce_columns(ff.top, imn.top.lattice), ib,
                                     "extension sub");
            MackeyHom f2 = chart_hom(ff.value, cn.value,
                                     sq_reduce_columns(cn.top, ff.top.lattice), IntMatrix(0, bg),
                                     "extension quotient");
            return {f1, f2};
        }
        case Derived::KerN: {
            // 0 -> O- -> F- -> kerN^ -> 0
            DerivedPart om = derived_part(Derived::KerTrMinus, derived(Derived::OrbitO, m));
            DerivedPart knm = derived_part(Derived::KerNMinus, m);
            DerivedPart kn = derived_part(Derived::KerN, m);
            MackeyHom f1 = chart_hom(om.value, knm.value,
                                     sq_reduce_columns(knm.top, om.top.lattice), ib,
                                     "extension sub");
            MackeyHom f2 = chart_hom(knm.value, kn.value,
                                     sq_reduce_columns(kn.top, knm.top.lattice), IntMatrix(0, bg),
                                     "extension quotient");
            return {f1, f2};
        }
        default: break;
    }
    throw std::logic_error("chart: no extension recipe for this column");
}

}  // namespace detail

inline Chart e2_page(const VirtualRep& v, const CpMackey& coeff) {
    if (v.p != coeff.p)
        throw std::invalid_argument("representation and coefficient prime differ");
    Chart ch;
    ch.p = v.p;
    ch.v = v;
    ch.rep = reduce_rep(v);
    ch.params = slice_parameters(ch.rep);
    ch.coeff = ch.rep.a != 1 ? twist(coeff, unit_inverse_mod(v.p, ch.rep.a)) : coeff;
    SliceTower tw = theorem_tower(v, ch.coeff);
    ch.terminal = tw.stages.back().stage.kind;
    ch.family = "n=" +
                (ch.rep.n2 % 2 == 0 ? std::to_string(ch.rep.n2 / 2)
                                    : std::to_string(ch.rep.n2) + "/2") +
                ", k=" + std::to_string(ch.params.k);

    for (const TowerStage& st : tw.stages) {
        if (!st.has_fiber || mackey_is_zero(st.fiber.coefficient)) continue;
        ChartClass c;
        c.x = st.fiber.d;
        c.t = st.fiber.t;
        c.s = st.fiber.t - st.fiber.d;
        c.band = false;
        c.symbol = st.fiber.symbol;
        c.hat_kind = st.fiber.kind;
        c.value = st.fiber.coefficient;
        c.einf = c.value;
        c.einf_label = c.symbol;
        ch.classes.push_back(std::move(c));
    }

    const SliceDescriptor& term = tw.stages.back().stage;
    const int dim = ch.rep.m + ch.rep.n2;
    for (auto& [deg, rk] : closed_form_rows(term.d, term.lambda2)) {
        CpMackey val = rk == RowKind::Unit ? term.coefficient
                                           : derived(row_derived_kind(rk), term.coefficient);
        std::optional<std::string> sym = detail::collapse_symbol(rk, ch.terminal, ch.params.r);
        if (!sym) {
            if (!mackey_is_zero(val))
                throw std::logic_error("chart: collapsed row should vanish but does not");
            continue;
        }
        if (mackey_is_zero(val)) continue;
        ChartClass c;
        c.x = deg;
        c.t = dim;
        c.s = dim - deg;
        c.band = true;
        c.symbol = *sym;
        c.row = rk;
        c.term = ch.terminal;
        c.value = std::move(val);
        c.einf = c.value;
        c.einf_label = c.symbol;
        ch.classes.push_back(std::move(c));
    }

    std::sort(ch.classes.begin(), ch.classes.end(), [](const ChartClass& a, const ChartClass& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.s != b.s) return a.s < b.s;
        return a.band < b.band;
    });
    return ch;
}

inline void decorate(Chart& ch) {
    if (ch.decorated) return;
    ch.decorated = true;
    if (ch.params.r == 0) return;

    std::map<int, int> hat_at, band_at;
    for (size_t i = 0; i < ch.classes.size(); ++i) {
        if (ch.classes[i].band)
            band_at[ch.classes[i].x] = (int)i;
        else
            hat_at[ch.classes[i].x] = (int)i;
    }

    std::optional<std::vector<MackeyHom>> joint;
    if (ch.params.r > 0 && ch.params.k == 1 && ch.rep.n2 >= 2)
        joint = detail::joint_positive(ch.coeff);
    else if (ch.params.r < 0 && ch.params.k == -1 && ch.rep.n2 <= -2)
        joint = detail::joint_negative(ch.coeff);
    if (joint && !exact_sequence_valid(*joint))
        throw std::logic_error("chart: joint sequence is not exact");

    for (auto& [x, hid] : hat_at) {
        int sid, tid;
        if (ch.params.r > 0) {
            auto it = band_at.find(x + 1);
            if (it == band_at.end()) continue;
            sid = it->second;  // band falls onto the hat below
            tid = hid;
        } else {
            auto it = band_at.find(x - 1);
            if (it == band_at.end()) continue;
            sid = hid;  // hat falls onto the band below
            tid = it->second;
        }
        const ChartClass& src = ch.classes[sid];
        const ChartClass& dst = ch.classes[tid];
        auto rule = detail::junction_catalog().find({src.symbol, dst.symbol});
        if (rule == detail::junction_catalog().end())
            throw std::logic_error("chart: no junction rule for (" + src.symbol + ", " +
                                   dst.symbol + ")");
        int page = dst.s - src.s;
        if (page < 2) throw std::logic_error("chart: differential below page 2");
        MackeyHom h = detail::junction_hom(ch, src, dst);
        MackeySub ker = mackey_kernel(h);
        MackeyQuot cok = mackey_cokernel(h);
        ChartDifferential d;
        d.r = page;
        d.source = sid;
        d.target = tid;
        d.source_outcome = rule->second.first;
        d.target_outcome = rule->second.second;
        d.witness = {ker.incl, h, cok.proj};
        d.joint = joint;
        ch.classes[sid].einf = ker.value;
        ch.classes[sid].einf_label = d.source_outcome;
        ch.classes[tid].einf = cok.value;
        ch.classes[tid].einf_label = d.target_outcome;
        ch.differentials.push_back(std::move(d));
    }

    std::map<int, std::vector<int>> survivors;
    for (size_t i = 0; i < ch.classes.size(); ++i)
        if (!mackey_is_zero(ch.classes[i].einf)) survivors[ch.classes[i].x].push_back((int)i);
    for (auto& [x, ids] : survivors) {
        if (ids.size() < 2) continue;
        std::sort(ids.begin(), ids.end(),
                  [&](int a, int b) { return ch.classes[a].s > ch.classes[b].s; });
        ChartExtension e;
        e.classes = ids;
        e.joint = joint;
        if (ids.size() == 2) {
            const ChartClass& a = ch.classes[ids[0]];
            const ChartClass& b = ch.classes[ids[1]];
            if (a.band == b.band)
                throw std::logic_error("chart: extension column is not a hat/band pair");
            e.witness = detail::extension_witness(ch, a.band ? b : a);
            if (!exact_sequence_valid(e.witness))
                throw std::logic_error("chart: extension witness is not exact");
        }
        ch.extensions.push_back(std::move(e));
    }
}

inline Chart e_infty(Chart ch) {
    decorate(ch);
    return ch;
}

/* whether the class survives a coefficient transition, used to stabilize
 * truncated duals before mirror comparisons */
inline bool class_transition_nonzero(const ChartClass& c, const MackeyHom& step) {
    MackeyHom h = step;
    if (c.band) {
        if (c.term) h = derived_hom(*c.term, h);
        if (c.row && *c.row != RowKind::Unit) h = derived_hom(row_derived_kind(*c.row), h);
    } else {
        h = derived_hom(*c.hat_kind, h);
    }
    return !mackey_hom_is_zero(h);
}

/* representative value of every chart symbol over a fixed coefficient */
inline std::map<std::string, CpMackey> simplify_symbols(const CpMackey& m) {
    std::map<std::string, CpMackey> out;
    auto put = [&](const char* s, const CpMackey& v) { out[s] = simplify_presentation(v).value; };
    put("unit", m);
    put("F", derived(Derived::FixedF, m));
    put("O", derived(Derived::OrbitO, m));
    put("R", derived(Derived::ImR, m));
    put("T", derived(Derived::ImTr, m));
    put("kerN", derived(Derived::KerN, m));
    put("cokerN", derived(Derived::CokerN, m));
    put("kerR", derived(Derived::KerR, m));
    put("cokerR", derived(Derived::CokerRFixed, m));
    put("kerTr", derived(Derived::KerTrOrbits, m));
    put("cokerTr", derived(Derived::CokerTr, m));
    put("triangle", derived(Derived::Triangle, m));
    put("nabla", derived(Derived::Nabla, m));
    if (m.p == 2) {
        put("M-", derived(Derived::KerTrMinus, m));
        put("F-", derived(Derived::KerNMinus, m));
        put("O-", derived(Derived::KerTrMinus, derived(Derived::OrbitO, m)));
        put("M_-", derived(Derived::CokerRMinus, m));
        put("O_-", derived(Derived::CokerRMinus, derived(Derived::OrbitO, m)));
        put("F_-", derived(Derived::CokerRMinus, derived(Derived::FixedF, m)));
    }
    return out;
}

inline std::string dual_symbol(const std::string& s) {
    static const std::map<std::string, std::string> pairs = {
        {"unit", "unit"}, {"F", "O"},        {"O", "F"},        {"R", "T"},
        {"T", "R"},       {"kerR", "cokerTr"}, {"cokerTr", "kerR"}, {"cokerR", "kerTr"},
        {"kerTr", "cokerR"}, {"kerN", "cokerN"}, {"cokerN", "kerN"}, {"triangle", "nabla"},
        {"nabla", "triangle"}, {"M-", "M_-"},  {"M_-", "M-"},     {"F-", "O_-"},
        {"O_-", "F-"},    {"O-", "F_-"},     {"F_-", "O-"},
    };
    auto it = pairs.find(s);
    if (it == pairs.end()) throw std::invalid_argument("dual_symbol: unknown symbol " + s);
    return it->second;
}

/* Replays the decorated chart against the cellular homology of S^V over the
 * given coefficient (the chart's own rotation is reapplied internally).  Every
 * differential witness, every joint sequence, and every surviving column is
 * compared degree by degree. */
inline CrosscheckReport verify_convergence(const Chart& chart, const CpMackey& coeff) {
    CrosscheckReport rep;
    Chart ch = chart;
    decorate(ch);
    GradedMackey h = homology_of_sphere(ch.rep, coeff);
    CpMackey zero = zero_mackey(ch.p);

    auto fail = [&](int x, const std::string& what) {
        rep.ok = false;
        rep.detail += "degree " + std::to_string(x) + ": " + what + "; ";
    };

    for (const ChartDifferential& d : ch.differentials) {
        const ChartClass& s = ch.classes[(size_t)d.source];
        const ChartClass& t = ch.classes[(size_t)d.target];
        if (t.x != s.x - 1) fail(s.x, "differential does not drop x by one");
        if (d.r < 2) fail(s.x, "differential below page 2");
        if (d.r != t.s - s.s) fail(s.x, "differential page disagrees with filtration jump");
        if (d.witness.size() != 3 || !exact_sequence_valid(d.witness))
            fail(s.x, "differential witness is not exact");
        if (d.joint && !exact_sequence_valid(*d.joint)) fail(s.x, "joint sequence is not exact");
    }

    std::map<int, std::vector<int>> survivors;
    for (size_t i = 0; i < ch.classes.size(); ++i)
        if (!mackey_is_zero(ch.classes[i].einf)) survivors[ch.classes[i].x].push_back((int)i);

    std::set<int> degrees;
    for (auto& [x, v] : h)
        if (!mackey_is_zero(v)) degrees.insert(x);
    for (auto& [x, ids] : survivors) {
        (void)ids;
        degrees.insert(x);
    }

    for (int x : degrees) {
        const CpMackey& hx = h.count(x) ? h.at(x) : zero;
        auto it = survivors.find(x);
        size_t n = it == survivors.end() ? 0 : it->second.size();
        if (n == 0) {
            if (!mackey_is_zero(hx)) fail(x, "homology present but no class survives");
            continue;
        }
        if (n == 1) {
            if (!mackey_same_shape(ch.classes[(size_t)it->second[0]].einf, hx))
                fail(x, "survivor does not match homology");
            continue;
        }
        if (n > 2) {
            rep.detail += "degree " + std::to_string(x) + ": inspect, more than two survivors; ";
            continue;
        }
        const ChartExtension* ext = nullptr;
        for (const ChartExtension& e : ch.extensions)
            if (std::set<int>(e.classes.begin(), e.classes.end()) ==
                std::set<int>(it->second.begin(), it->second.end())) {
                ext = &e;
                break;
            }
        if (!ext) {
            fail(x, "two survivors but no extension recorded");
            continue;
        }
        if (ext->classes.size() != 2 ||
            ch.classes[(size_t)ext->classes[0]].s <= ch.classes[(size_t)ext->classes[1]].s) {
            fail(x, "extension classes are not ordered by filtration");
            continue;
        }
        if (ext->witness.size() != 2) {
            fail(x, "extension is missing its two-step witness");
            continue;
        }
        if (!exact_sequence_valid(ext->witness)) {
            fail(x, "extension witness is not exact");
            continue;
        }
        if (!mackey_same_shape(ext->witness[0].dst, hx))
            fail(x, "extension middle does not match homology");
        if (!mackey_same_shape(ext->witness[0].src, ch.classes[(size_t)ext->classes[0]].einf))
            fail(x, "extension submodule does not match the top survivor");
        if (!mackey_same_shape(ext->witness[1].dst, ch.classes[(size_t)ext->classes[1]].einf))
            fail(x, "extension quotient does not match the bottom survivor");
        if (ext->joint && !exact_sequence_valid(*ext->joint))
            fail(x, "joint sequence is not exact");
    }
    return rep;
}

}  // namespace cpslice
