#include <cpslice/random_mackey.hpp>
#include <cpslice/sphere.hpp>

#include <gtest/gtest.h>

using namespace cpslice;

namespace {

FgAbGroup::Canon canon(int fr, std::vector<long> tors) {
    FgAbGroup::Canon c;
    c.free_rank = fr;
    for (long t : tors) c.torsion.push_back(t);
    return c;
}

void expect_levels(const CpMackey& m, const FgAbGroup::Canon& fix, const FgAbGroup::Canon& und,
                   const std::string& what) {
    EXPECT_EQ(m.fixed.canonical_form(), fix) << what << " fixed";
    EXPECT_EQ(m.underlying.canonical_form(), und) << what << " underlying";
}

bool trivial_functor(const CpMackey& m) {
    return m.fixed.is_trivial() && m.underlying.is_trivial();
}

}  // namespace

TEST(Sphere, FreeTermValid) {
    for (int p : {2, 3, 5})
        for (int seed : {1, 2, 3}) {
            CpMackey m = random_mackey(p, seed);
            CpMackey t = free_cell_term(p, underlying_module(m));
            EXPECT_NO_THROW(validate_mackey(t));
            EXPECT_EQ(t.underlying.gens, p * m.underlying.gens);
        }
}

TEST(Sphere, ComplexValidates) {
    struct Case {
        int p, m, n2;
    };
    for (Case c : {Case{3, 0, 4}, Case{3, 1, 2}, Case{2, 0, 1}, Case{2, 0, 3}, Case{3, 0, -2},
                   Case{5, -1, -4}, Case{2, 0, -3}, Case{2, 2, 0}}) {
        for (int seed : {4, 9}) {
            CpMackey m = random_mackey(c.p, seed);
            MackeyChainComplex cx = cellular_complex(c.m, c.n2, m);
            EXPECT_NO_THROW(validate_complex(cx)) << c.p << " " << c.m << " " << c.n2;
            int len = c.n2 >= 0 ? c.n2 : -c.n2;
            EXPECT_EQ(static_cast<int>(cx.terms.size()), len + 1);
            EXPECT_EQ(cx.lo, std::min(c.m, c.m + c.n2));
        }
    }
}

// V = 2λ at p = 3 with constant ℤ coefficients: degrees 0..4 give
// (hat Z/3, 0, hat Z/3, 0, constant Z)
TEST(Sphere, FrozenLambdaSquaredP3) {
    CpMackey z = constant_mackey(3, free_abelian(1));
    VirtualRep v = parse_rep(3, "λ(1)^2");
    for (const GradedMackey& h : {homology_of_sphere(v, z), closed_form_homology(reduce_rep(v), z)}) {
        expect_levels(h.at(0), canon(0, {3}), canon(0, {}), "deg0");
        EXPECT_TRUE(trivial_functor(h.at(1)));
        expect_levels(h.at(2), canon(0, {3}), canon(0, {}), "deg2");
        EXPECT_TRUE(trivial_functor(h.at(3)));
        expect_levels(h.at(4), canon(1, {}), canon(1, {}), "deg4");
        EXPECT_EQ(iso_search(h.at(4), z), IsoResult::Yes);
        EXPECT_EQ(iso_search(h.at(0), hat_mackey(3, cyclic_group(3))), IsoResult::Yes);
    }
}

// p = 2, V = σ, constant ℤ: degree 0 is hat(Z/2), degree 1 has fixed level 0
// and underlying ℤ with the flip action
TEST(Sphere, FrozenSigmaP2) {
    CpMackey z = constant_mackey(2, free_abelian(1));
    VirtualRep v = parse_rep(2, "σ");
    for (const GradedMackey& h : {homology_of_sphere(v, z), closed_form_homology(reduce_rep(v), z)}) {
        expect_levels(h.at(0), canon(0, {2}), canon(0, {}), "deg0");
        expect_levels(h.at(1), canon(0, {}), canon(1, {}), "deg1");
        CpMackey top = simplify_presentation(h.at(1)).value;
        EXPECT_EQ(top.weyl.at(0, 0), Int(-1));
    }
}

TEST(Sphere, TrivialRepIsIdentity) {
    for (int p : {2, 3}) {
        CpMackey m = random_mackey(p, 7);
        GradedMackey h = homology_of_sphere(VirtualRep{p, 3, {}, 0}, m);
        strip_trivial(h);
        ASSERT_EQ(h.size(), 1u);
        EXPECT_TRUE(mackey_same_shape(h.at(3), m));
    }
}

// S^{-λ} with constant ℤ: everything vanishes except degree -2 = ℤ̲*
TEST(Sphere, FrozenNegativeLambda) {
    CpMackey z = constant_mackey(3, free_abelian(1));
    GradedMackey h = homology_of_sphere(parse_rep(3, "-λ(1)"), z);
    EXPECT_TRUE(trivial_functor(h.at(0)));
    EXPECT_TRUE(trivial_functor(h.at(-1)));
    EXPECT_EQ(iso_search(h.at(-2), coconstant_mackey(3, free_abelian(1))), IsoResult::Yes);
}

// Σ^λ H𝒪(M) ≃ Σ²HF(M) and Σ^{-λ} HF(M) ≃ Σ^{-2}H𝒪(M)
TEST(Sphere, SuspensionExchange) {
    for (int p : {2, 3, 5})
        for (int seed : {11, 12, 13, 14}) {
            CpMackey m = random_mackey(p, seed);
            GradedMackey up = suspension_homotopy(0, 1, derived(Derived::OrbitO, m));
            strip_trivial(up);
            CpMackey f = derived(Derived::FixedF, m);
            if (f.fixed.is_trivial() && f.underlying.is_trivial()) {
                EXPECT_TRUE(up.empty());
            } else {
                ASSERT_EQ(up.size(), 1u) << p << " " << seed;
                EXPECT_TRUE(mackey_same_shape(up.at(2), f)) << p << " " << seed;
            }

            GradedMackey down = suspension_homotopy(0, -1, f);
            strip_trivial(down);
            CpMackey o = derived(Derived::OrbitO, m);
            if (o.fixed.is_trivial() && o.underlying.is_trivial()) {
                EXPECT_TRUE(down.empty());
            } else {
                ASSERT_EQ(down.size(), 1u) << p << " " << seed;
                EXPECT_TRUE(mackey_same_shape(down.at(-2), o)) << p << " " << seed;
            }
        }
}

TEST(Sphere, SuspensionOfHat) {
    CpMackey a = hat_mackey(3, cyclic_group(9));
    GradedMackey h = suspension_homotopy(-2, 0, a);
    strip_trivial(h);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_TRUE(mackey_same_shape(h.at(-2), a));
}

TEST(Sphere, UnderlyingConcentrated) {
    for (int p : {2, 3})
        for (int seed : {21, 22}) {
            CpMackey m = random_mackey(p, seed);
            for (int n2 : {3, -3, 2, -2}) {
                if (p != 2 && n2 % 2) continue;
                VirtualRep v{p, 1, {}, 0};
                if (p == 2)
                    v.sigma = n2;
                else
                    v.lambda[1] = n2 / 2;
                GradedMackey h = homology_of_sphere(v, m);
                for (auto& [deg, val] : h) {
                    if (deg == 1 + n2)
                        EXPECT_TRUE(groups_isomorphic(val.underlying, m.underlying));
                    else
                        EXPECT_TRUE(val.underlying.is_trivial()) << p << " " << n2 << " " << deg;
                }
            }
        }
}

TEST(Sphere, InducedWeylVanishesOnTopKernel) {
    // 1 - t induces the zero endomorphism on the fixed level of the top
    // homology of the S^λ complex
    CpMackey m = random_mackey(3, 31);
    MackeyChainComplex cx = cellular_complex(0, 2, m);
    const CpMackey& t = cx.terms[2];
    IntMatrix wm1 = t.fixed.gens ? cx.diffs[1].on_fixed : IntMatrix(0, 0);
    GroupHom d2(t.fixed, cx.terms[1].fixed, wm1);
    SubquotientGroup z = kernel_sq(d2);
    GroupHom induced = induced_hom(wm1, z, z);
    EXPECT_TRUE(hom_is_zero(induced));
}

TEST(Sphere, CrosscheckGrid) {
    std::vector<CpMackey> coeffs;
    for (int p : {2, 3}) {
        coeffs.clear();
        coeffs.push_back(burnside(p));
        coeffs.push_back(constant_mackey(p, free_abelian(1)));
        coeffs.push_back(coconstant_mackey(p, cyclic_group(p * p)));
        coeffs.push_back(random_mackey(p, 41));
        coeffs.push_back(random_mackey(p, 42));
        for (const CpMackey& m : coeffs)
            for (int tm : {-1, 0, 2})
                for (int n2 = -4; n2 <= 4; ++n2) {
                    if (p != 2 && n2 % 2) continue;
                    VirtualRep v{p, tm, {}, 0};
                    if (p == 2)
                        v.sigma = n2;
                    else if (n2 != 0)
                        v.lambda[1] = n2 / 2;
                    CrosscheckReport r = crosscheck_sphere(v, m);
                    EXPECT_TRUE(r.ok) << "p=" << p << " m=" << tm << " n2=" << n2 << ": "
                                      << r.detail;
                }
    }
}

TEST(Sphere, CrosscheckTwisted) {
    for (int seed : {51, 52}) {
        CpMackey m = random_mackey(5, seed);
        for (const char* rep : {"λ(2)", "1+λ(2)^2", "-λ(2)", "λ(2)-λ(1)"}) {
            CrosscheckReport r = crosscheck_sphere(parse_rep(5, rep), m);
            EXPECT_TRUE(r.ok) << rep << ": " << r.detail;
        }
    }
    EXPECT_EQ(reduce_rep(parse_rep(5, "λ(2)")).a, 2);
}

TEST(Sphere, ZeroCoefficient) {
    GradedMackey h = homology_of_sphere(parse_rep(3, "1+λ(1)"), zero_mackey(3));
    strip_trivial(h);
    EXPECT_TRUE(h.empty());
}

TEST(Sphere, RowTableShape) {
    auto rows = closed_form_rows(2, 4);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::pair<int, RowKind>{2, RowKind::CokerTr}));
    EXPECT_EQ(rows[1], (std::pair<int, RowKind>{3, RowKind::KerTrOrbits}));
    EXPECT_EQ(rows[2], (std::pair<int, RowKind>{4, RowKind::CokerN}));
    EXPECT_EQ(rows[3], (std::pair<int, RowKind>{5, RowKind::KerN}));
    EXPECT_EQ(rows[4], (std::pair<int, RowKind>{6, RowKind::TopF}));

    auto half = closed_form_rows(0, 3);
    ASSERT_EQ(half.size(), 4u);
    EXPECT_EQ(half[3], (std::pair<int, RowKind>{3, RowKind::KerNMinus}));
    EXPECT_EQ(half[1], (std::pair<int, RowKind>{1, RowKind::KerTrOrbits}));

    auto neg = closed_form_rows(0, -4);
    ASSERT_EQ(neg.size(), 5u);
    EXPECT_EQ(neg[0], (std::pair<int, RowKind>{-4, RowKind::BottomO}));
    EXPECT_EQ(neg[1], (std::pair<int, RowKind>{-3, RowKind::CokerN}));
    EXPECT_EQ(neg[2], (std::pair<int, RowKind>{-2, RowKind::KerN}));
    EXPECT_EQ(neg[3], (std::pair<int, RowKind>{-1, RowKind::CokerRFixed}));
    EXPECT_EQ(neg[4], (std::pair<int, RowKind>{0, RowKind::KerR}));

    auto sig = closed_form_rows(1, -1);
    ASSERT_EQ(sig.size(), 2u);
    EXPECT_EQ(sig[0], (std::pair<int, RowKind>{0, RowKind::CokerRMinus}));
    EXPECT_EQ(sig[1], (std::pair<int, RowKind>{1, RowKind::KerR}));

    auto unit = closed_form_rows(-3, 0);
    ASSERT_EQ(unit.size(), 1u);
    EXPECT_EQ(unit[0], (std::pair<int, RowKind>{-3, RowKind::Unit}));
}

// three sigmas: top value has fixed level ker(N) and flipped underlying
TEST(Sphere, HalfTopP2) {
    CpMackey z = constant_mackey(2, free_abelian(1));
    GradedMackey h = homology_of_sphere(parse_rep(2, "σ^3"), z);
    expect_levels(h.at(0), canon(0, {2}), canon(0, {}), "deg0");
    EXPECT_TRUE(trivial_functor(h.at(1)));
    expect_levels(h.at(2), canon(0, {2}), canon(0, {}), "deg2");
    expect_levels(h.at(3), canon(0, {}), canon(1, {}), "deg3");
    EXPECT_EQ(simplify_presentation(h.at(3)).value.weyl.at(0, 0), Int(-1));
}
