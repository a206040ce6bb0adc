#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "snf.hpp"

namespace cpslice {

/* finitely generated abelian group Z^gens / colspan(rels); columns of rels are relators */
struct FgAbGroup {
    int gens = 0;
    IntMatrix rels;  // gens x r

    struct Canon {
        int free_rank = 0;
        std::vector<Int> torsion;  // entries > 1, each divides the next
        bool operator==(const Canon&) const = default;
    };

    FgAbGroup() : rels(0, 0) {}
    FgAbGroup(int g, IntMatrix r) : gens(g), rels(std::move(r)) {
        if (rels.rows == 0 && rels.cols == 0) rels = IntMatrix(gens, 0);
        if (rels.rows != gens) throw std::invalid_argument("group: relator height != generator count");
    }

    const Canon& canonical_form() const {
        if (!canon_) {
            SmithDecomposition s = smith_normal_form(rels);
            Canon c;
            int rank = snf_rank(s);
            c.free_rank = gens - rank;
            for (int i = 0; i < rank; i++)
                if (s.D.at(i, i) > 1) c.torsion.push_back(s.D.at(i, i));
            canon_ = std::move(c);
        }
        return *canon_;
    }

    bool is_trivial() const {
        const Canon& c = canonical_form();
        return c.free_rank == 0 && c.torsion.empty();
    }

    std::optional<Int> order() const {
        const Canon& c = canonical_form();
        if (c.free_rank > 0) return std::nullopt;
        Int n = 1;
        for (const Int& d : c.torsion) n *= d;
        return n;
    }

   private:
    mutable std::optional<Canon> canon_;
};

inline FgAbGroup free_abelian(int n) { return FgAbGroup{n, IntMatrix(n, 0)}; }

inline FgAbGroup cyclic_group(const Int& d) {
    IntMatrix r(1, 1);
    r.at(0, 0) = d;
    return FgAbGroup{1, r};
}

inline bool groups_isomorphic(const FgAbGroup& a, const FgAbGroup& b) {
    return a.canonical_form() == b.canonical_form();
}

/* v lies in colspan(rels)? */
inline bool element_is_zero(const FgAbGroup& g, const IntMatrix& v) {
    return solve_integer(g.rels, v).has_value();
}

/* homomorphism given on generators; column j of map = image of source generator j */
struct GroupHom {
    FgAbGroup src, dst;
    IntMatrix map;  // dst.gens x src.gens

    GroupHom(FgAbGroup s, FgAbGroup d, IntMatrix m)
        : src(std::move(s)), dst(std::move(d)), map(std::move(m)) {
        if (map.rows != dst.gens || map.cols != src.gens)
            throw std::invalid_argument("hom: matrix shape mismatch");
        if (!solve_integer(dst.rels, map.mul(src.rels)))
            throw std::invalid_argument("hom: not well defined (relator escapes target relations)");
    }
};

inline GroupHom zero_hom(const FgAbGroup& src, const FgAbGroup& dst) {
    return GroupHom(src, dst, IntMatrix(dst.gens, src.gens));
}

inline GroupHom identity_hom(const FgAbGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.gens));
}

inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
    return GroupHom(f.src, g.dst, g.map.mul(f.map));
}

inline bool homs_equal(const GroupHom& f, const GroupHom& g) {
    if (f.src.gens != g.src.gens || f.dst.gens != g.dst.gens) return false;
    return solve_integer(f.dst.rels, f.map.sub(g.map)).has_value();
}

inline bool hom_is_zero(const GroupHom& f) {
    return solve_integer(f.dst.rels, f.map).has_value();
}

/* lattice of matrices F with F * rels(src) inside colspan(rels(dst)); columns of the
   result are vec(F) stacked column-major, reshape with hom_from_vec */
inline IntMatrix hom_lattice(const FgAbGroup& src, const FgAbGroup& dst) {
    int m = dst.gens, n = src.gens, s = src.rels.cols, t = dst.rels.cols;
    if (s == 0 || m == 0) {
        return IntMatrix::identity(m * n);  // unconstrained
    }
    IntMatrix a(m * s, m * n + t * s);
    for (int j = 0; j < s; j++)
        for (int k = 0; k < n; k++)
            for (int i = 0; i < m; i++) a.at(j * m + i, k * m + i) = src.rels.at(k, j);
    for (int j = 0; j < s; j++)
        for (int c = 0; c < t; c++)
            for (int i = 0; i < m; i++) a.at(j * m + i, m * n + j * t + c) = dst.rels.at(i, c);
    IntMatrix ker = kernel_basis(a);
    // keep the F block, drop auxiliary coordinates, then rebase the lattice
    IntMatrix proj = ker.take_rows(0, m * n);
    return column_lattice_basis(proj);
}

inline IntMatrix hom_from_vec(const IntMatrix& v, int rows, int cols) {
    IntMatrix f(rows, cols);
    for (int k = 0; k < cols; k++)
        for (int i = 0; i < rows; i++) f.at(i, k) = v.at(k * rows + i, 0);
    return f;
}

inline GroupHom random_hom(const FgAbGroup& src, const FgAbGroup& dst,
                           const std::function<Int()>& pick) {
    IntMatrix basis = hom_lattice(src, dst);
    IntMatrix v(basis.rows, 1);
    for (int j = 0; j < basis.cols; j++) {
        Int c = pick();
        for (int i = 0; i < basis.rows; i++) v.at(i, 0) += c * basis.at(i, j);
    }
    return GroupHom(src, dst, hom_from_vec(v, dst.gens, src.gens));
}

struct SubgroupResult {
    FgAbGroup group;
    GroupHom incl;  // group -> ambient
    SubgroupResult(FgAbGroup g, GroupHom i) : group(std::move(g)), incl(std::move(i)) {}
};

struct QuotientResult {
    FgAbGroup group;
    GroupHom proj;  // ambient -> group
    QuotientResult(FgAbGroup g, GroupHom p) : group(std::move(g)), proj(std::move(p)) {}
};

/* subgroup of ambient presented by a sublattice (containing the relations) modulo
   a denominator sublattice; lift/reduce are the explicit witnesses */
struct SubquotientGroup {
    FgAbGroup ambient;
    IntMatrix lattice;      // ambient.gens x k, numerator lattice basis
    IntMatrix denominator;  // ambient.gens x m, inside lattice span
    FgAbGroup group;        // k generators, denominator expressed in lattice coords

    SubquotientGroup(FgAbGroup amb, IntMatrix lat, IntMatrix den)
        : ambient(std::move(amb)), lattice(std::move(lat)), denominator(std::move(den)),
          group(make_group(ambient, lattice, denominator)) {}

    IntMatrix lift(const IntMatrix& coords) const { return lattice.mul(coords); }

    IntMatrix reduce(const IntMatrix& ambient_vec) const {
        auto x = solve_integer(lattice.hstack(denominator).hstack(ambient.rels), ambient_vec);
        if (!x) throw std::runtime_error("subquotient: vector not in numerator span");
        return x->take_rows(0, lattice.cols);
    }

   private:
    static FgAbGroup make_group(const FgAbGroup& amb, const IntMatrix& lat, const IntMatrix& den) {
        IntMatrix all_den = den.hstack(amb.rels);
        auto rels = solve_integer(lat, all_den);
        if (!rels) throw std::runtime_error("subquotient: denominator escapes numerator lattice");
        return FgAbGroup{lat.cols, *rels};
    }
};

inline SubquotientGroup subquotient(const FgAbGroup& ambient, const IntMatrix& lattice,
                                    const IntMatrix& denominator) {
    return SubquotientGroup(ambient, lattice, denominator);
}

/* subquotient views of kernel/image/cokernel, for inducing further maps */
inline SubquotientGroup kernel_sq(const GroupHom& f) {
    IntMatrix aug = f.map.hstack(f.dst.rels);
    IntMatrix lat = column_lattice_basis(kernel_basis(aug).take_rows(0, f.src.gens));
    return SubquotientGroup(f.src, lat, IntMatrix(f.src.gens, 0));
}

inline SubquotientGroup image_sq(const GroupHom& f) {
    IntMatrix lat = column_lattice_basis(f.map.hstack(f.dst.rels));
    return SubquotientGroup(f.dst, lat, IntMatrix(f.dst.gens, 0));
}

inline SubquotientGroup cokernel_sq(const GroupHom& f) {
    return SubquotientGroup(f.dst, IntMatrix::identity(f.dst.gens), f.map);
}

inline SubquotientGroup full_sq(const FgAbGroup& g) {
    return SubquotientGroup(g, IntMatrix::identity(g.gens), IntMatrix(g.gens, 0));
}

/* {x in src : f(x) = 0}, with inclusion into src */
inline SubgroupResult kernel(const GroupHom& f) {
    IntMatrix aug = f.map.hstack(f.dst.rels);
    IntMatrix ker = kernel_basis(aug).take_rows(0, f.src.gens);
    IntMatrix lat = column_lattice_basis(ker);
    auto rels = solve_integer(lat, f.src.rels);
    if (!rels) throw std::runtime_error("kernel: relations escape kernel lattice");
    FgAbGroup k{lat.cols, *rels};
    return SubgroupResult(k, GroupHom(k, f.src, lat));
}

/* image as a subgroup of dst, plus the corestricted surjection src -> image */
struct ImageResult {
    FgAbGroup group;
    GroupHom incl;    // image -> dst
    GroupHom corestrict;  // src -> image
    ImageResult(FgAbGroup g, GroupHom i, GroupHom c)
        : group(std::move(g)), incl(std::move(i)), corestrict(std::move(c)) {}
};

inline ImageResult image_full(const GroupHom& f) {
    IntMatrix lat = column_lattice_basis(f.map.hstack(f.dst.rels));
    auto rels = solve_integer(lat, f.dst.rels);
    if (!rels) throw std::runtime_error("image: target relations escape image lattice");
    FgAbGroup im{lat.cols, *rels};
    auto core = solve_integer(lat, f.map);
    if (!core) throw std::runtime_error("image: generators do not land in image lattice");
    return ImageResult(im, GroupHom(im, f.dst, lat), GroupHom(f.src, im, *core));
}

inline SubgroupResult image(const GroupHom& f) {
    ImageResult r = image_full(f);
    return SubgroupResult(r.group, r.incl);
}

inline QuotientResult cokernel(const GroupHom& f) {
    FgAbGroup q{f.dst.gens, f.dst.rels.hstack(f.map)};
    return QuotientResult(q, GroupHom(f.dst, q, IntMatrix::identity(f.dst.gens)));
}

/* map between subquotients of (possibly different) ambients induced by an ambient matrix */
inline GroupHom induced_hom(const IntMatrix& ambient_map, const SubquotientGroup& from,
                            const SubquotientGroup& to) {
    IntMatrix target_span = to.lattice.hstack(to.denominator).hstack(to.ambient.rels);
    auto coords = solve_integer(target_span, ambient_map.mul(from.lattice));
    if (!coords)
        throw std::runtime_error("induced_hom: image of numerator escapes target numerator");
    IntMatrix m = coords->take_rows(0, to.lattice.cols);
    return GroupHom(from.group, to.group, m);  // ctor re-checks denominators map compatibly
}

struct GroupChainComplex {
    std::vector<FgAbGroup> terms;          // ascending degree 0..len-1
    std::vector<GroupHom> diffs;           // diffs[i] : terms[i+1] -> terms[i]

    bool validate() const {
        for (size_t i = 0; i + 1 < diffs.size(); i++)
            if (!hom_is_zero(compose(diffs[i], diffs[i + 1]))) return false;
        return true;
    }

    SubquotientGroup homology(int i) const {
        const FgAbGroup& c = terms[i];
        IntMatrix cycles;
        if (i >= 1) {
            const GroupHom& out = diffs[i - 1];
            IntMatrix aug = out.map.hstack(out.dst.rels);
            cycles = column_lattice_basis(kernel_basis(aug).take_rows(0, c.gens));
        } else {
            cycles = IntMatrix::identity(c.gens);
        }
        IntMatrix boundaries(c.gens, 0);
        if (i + 1 < (int)terms.size()) boundaries = diffs[i].map;
        return SubquotientGroup(c, cycles, boundaries);
    }
};

}  // namespace cpslice
