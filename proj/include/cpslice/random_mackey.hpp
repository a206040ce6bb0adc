#pragma once

#include <cpslice/mackey.hpp>

#include <random>

namespace cpslice {

/* Seeded generator of valid C_p Mackey functors with at most three generators
 * per level.  Strategy: pick a small Z[C_p]-module B, then assemble
 *
 *   fixed = A0 (+) B/(t-1),   tr = (0, proj),   res = (f, norm)
 *
 * with f any map from the free summand A0 into B^{C_p}.  Every such choice
 * satisfies the axioms, so no rejection sampling is needed.  A fraction of
 * seeds returns a named functor instead to keep the easy shapes in the mix.
 */

namespace detail {

inline CpModule random_underlying(int p, std::mt19937_64& rng, int max_gens) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    Int pp = Int(p) * p;

    std::vector<int> menu = {0, 1, 2};  // Z, Z/p^j, Z (+) Z/p
    if (p == 2) {
        menu.push_back(3);  // sign on Z
        menu.push_back(4);  // sign on Z/4
    }
    if (max_gens >= 2) {
        menu.push_back(5);              // unipotent pair mod p^2
        if (p <= 3) menu.push_back(6);  // regular Z[C_p] needs p gens
        if (p == 3) menu.push_back(7);  // companion matrix of 1+x+x^2
        if (p <= 3 && p <= max_gens) menu.push_back(8);  // regular with relator orbit
    }

    switch (menu[static_cast<size_t>(pick(static_cast<int>(menu.size())))]) {
    case 0: return trivial_module(free_abelian(1));
    case 1: {
        Int d = p;
        int j = pick(3);
        for (int i = 0; i < j; i++) d *= p;
        return trivial_module(cyclic_group(d));
    }
    case 2: {
        IntMatrix r(2, 1);
        r.at(1, 0) = p;
        return trivial_module(FgAbGroup{2, r});
    }
    case 3: return CpModule{free_abelian(1), from_rows({{-1}})};
    case 4: return CpModule{cyclic_group(4), from_rows({{-1}})};
    case 5: {
        IntMatrix r(2, 2);
        r.at(0, 0) = pp;
        r.at(1, 1) = pp;
        return CpModule{FgAbGroup{2, r}, from_rows({{1, p}, {0, 1}})};
    }
    case 6: return regular_module(p);
    case 7: return CpModule{free_abelian(2), from_rows({{0, -1}, {1, -1}})};
    default: {
        CpModule reg = regular_module(p);
        IntMatrix rel(p, 1);
        bool nonzero = false;
        while (!nonzero) {
            for (int i = 0; i < p; i++) {
                rel.at(i, 0) = pick(5) - 2;
                if (rel.at(i, 0) != 0) nonzero = true;
            }
        }
        IntMatrix rels(p, p);  // the orbit of rel under the shift
        for (int j = 0; j < p; j++)
            for (int i = 0; i < p; i++) rels.at((i + j) % p, j) = rel.at(i, 0);
        return CpModule{FgAbGroup{p, rels}, reg.weyl};
    }
    }
}

}  // namespace detail

inline CpMackey random_mackey(int p, unsigned seed) {
    std::mt19937_64 rng(1000003ULL * seed + static_cast<unsigned>(p));
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    if (pick(6) == 0) {
        switch (pick(5)) {
        case 0: return burnside(p);
        case 1: return constant_mackey(p, cyclic_group(Int(p) * p));
        case 2: return coconstant_mackey(p, cyclic_group(p));
        case 3: return hat_mackey(p, cyclic_group(Int(p) * p));
        default: return burnside_twisted(p, 1 + pick(p - 1));
        }
    }

    CpModule b = detail::random_underlying(p, rng, 3);
    SubquotientGroup fix = fixed_points_sq(b);
    SubquotientGroup orb = orbits_sq(b);

    int a0 = (b.group.gens < 3) ? pick(4) : 0;  // 0 none, else a hat generator
    FgAbGroup a0g = a0 == 0   ? FgAbGroup{0, IntMatrix(0, 0)}
                    : a0 == 1 ? free_abelian(1)
                    : a0 == 2 ? cyclic_group(p)
                              : cyclic_group(Int(p) * p);

    CpMackey m;
    m.p = p;
    m.underlying = b.group;
    m.weyl = b.weyl;
    m.fixed = FgAbGroup{a0g.gens + orb.group.gens, block_diag(a0g.rels, orb.group.rels)};

    IntMatrix f(b.group.gens, a0g.gens);
    if (a0g.gens > 0 && fix.group.gens > 0) {
        GroupHom h = random_hom(a0g, fix.group, [&]() { return Int(pick(7) - 3); });
        f = fix.lattice.mul(h.map);
    }
    m.res = f.hstack(module_norm_matrix(p, b));
    m.tr = IntMatrix(a0g.gens, b.group.gens).vstack(IntMatrix::identity(b.group.gens));

    validate_mackey(m);
    return m;
}

}  // namespace cpslice
