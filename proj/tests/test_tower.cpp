#include <cpslice/random_mackey.hpp>
#include <cpslice/tower.hpp>

#include <gtest/gtest.h>

using namespace cpslice;

TEST(Tower, Parameters) {
    SliceParams a = slice_parameters(reduce_rep(parse_rep(2, "6")));
    EXPECT_EQ(a.r, 6);
    EXPECT_EQ(a.k, 3);
    SliceParams b = slice_parameters(reduce_rep(parse_rep(3, "2")));
    EXPECT_EQ(b.r, 4);
    EXPECT_EQ(b.k, 2);
    SliceParams c = slice_parameters(reduce_rep(parse_rep(3, "2+λ(1)^2")));
    EXPECT_EQ(c.r, 0);
    EXPECT_EQ(c.k, 0);
    SliceParams d = slice_parameters(reduce_rep(parse_rep(2, "1+σ")));
    EXPECT_EQ(d.r, 0);
    SliceParams e = slice_parameters(reduce_rep(parse_rep(2, "-7")));
    EXPECT_EQ(e.r, -7);
    EXPECT_EQ(e.k, -4);
    SliceParams f = slice_parameters(reduce_rep(parse_rep(5, "1+λ(2)")));
    EXPECT_EQ(f.r, 2);
    EXPECT_EQ(f.k, 1);
}

TEST(Tower, ConstantZCollapseWindow) {
    for (int p : {2, 3}) {
        CpMackey z = constant_mackey(p, free_abelian(1));
        for (int n = 0; n <= 9; ++n) {
            VirtualRep v{p, n, {}, 0};
            SliceParams sp = slice_parameters(reduce_rep(v));
            SingleSliceResult s = is_single_slice(v, z);
            bool expect = sp.k <= 3;
            EXPECT_EQ(s.single, expect) << "p=" << p << " n=" << n << " k=" << sp.k;
            if (s.single) {
                EXPECT_EQ(s.t, n);
            }
        }
    }
}

TEST(Tower, SigmaSixIsSixSlice) {
    CpMackey z = constant_mackey(2, free_abelian(1));
    SingleSliceResult s = is_single_slice(parse_rep(2, "6"), z);
    EXPECT_TRUE(s.single);
    EXPECT_EQ(s.t, 6);
    SingleSliceResult s8 = is_single_slice(parse_rep(2, "8"), z);
    EXPECT_FALSE(s8.single);
}

TEST(Tower, ConstantZBigTowerShape) {
    // k >= 4: the only surviving fibers are hat(Z/p) at suspensions m-3, m-5, ...
    CpMackey z = constant_mackey(2, free_abelian(1));
    SliceTower t = theorem_tower(parse_rep(2, "10"), z);
    ASSERT_EQ(t.k, 5);
    ASSERT_EQ(t.fiber_count(), 5);
    std::vector<int> nonzero_d;
    for (const auto& st : t.stages)
        if (st.has_fiber && !st.fiber.coefficient.fixed.is_trivial()) {
            nonzero_d.push_back(st.fiber.d);
            EXPECT_EQ(st.fiber.coefficient.fixed.canonical_form().torsion.size(), 1u);
            EXPECT_EQ(st.fiber.coefficient.fixed.canonical_form().torsion[0], Int(2));
            EXPECT_TRUE(st.fiber.coefficient.underlying.is_trivial());
        }
    EXPECT_EQ(nonzero_d, (std::vector<int>{7}));  // only i = 3 inside i < k = 5... i odd >= 3
}

TEST(Tower, StageBookkeeping) {
    for (int p : {2, 3})
        for (int seed : {3, 8}) {
            CpMackey m = random_mackey(p, seed);
            for (const char* rep : {"4", "-4", "3+λ(1)", "-2-λ(1)"}) {
                VirtualRep v = parse_rep(p, rep);
                SliceTower t = theorem_tower(v, m);
                CrosscheckReport r = tower_consistency_check(t, v, m);
                EXPECT_TRUE(r.ok) << "p=" << p << " " << rep << ": " << r.detail;
            }
        }
}

TEST(Tower, PositiveStageCoefficients) {
    CpMackey m = random_mackey(3, 17);
    VirtualRep v = parse_rep(3, "4");  // r = 8, k = 3
    SliceTower t = theorem_tower(v, m);
    ASSERT_EQ(t.stages.size(), 4u);
    EXPECT_EQ(t.stages[0].stage.symbol, "M");
    EXPECT_EQ(t.stages[1].stage.symbol, "imR");
    EXPECT_EQ(t.stages[2].stage.symbol, "F");
    EXPECT_EQ(t.stages[3].stage.symbol, "imN");
    EXPECT_TRUE(mackey_same_shape(t.stages[2].stage.coefficient, derived(Derived::FixedF, m)));
    EXPECT_TRUE(mackey_same_shape(t.stages[3].stage.coefficient, derived(Derived::ImN, m)));
    EXPECT_EQ(t.stages[0].fiber.symbol, "kerR");
    EXPECT_EQ(t.stages[1].fiber.symbol, "cokerR");
    EXPECT_EQ(t.stages[2].fiber.symbol, "kerN");
    EXPECT_FALSE(t.stages[3].has_fiber);
    // suspensions: X_2 = Σ^V HF, X_3 = Σ^{V-2+λ} H im(N)
    EXPECT_EQ(t.stages[2].stage.d, 4);
    EXPECT_EQ(t.stages[2].stage.lambda2, 0);
    EXPECT_EQ(t.stages[3].stage.d, 2);
    EXPECT_EQ(t.stages[3].stage.lambda2, 2);
    for (const auto& st : t.stages) EXPECT_EQ(st.stage.d + st.stage.lambda2, 4);
}

TEST(Tower, NegativeStageCoefficients) {
    CpMackey m = random_mackey(3, 23);
    VirtualRep v = parse_rep(3, "-4");  // r = -8, k = -3
    SliceTower t = theorem_tower(v, m);
    ASSERT_EQ(t.direction, TowerDirection::Coslice);
    ASSERT_EQ(t.stages.size(), 4u);
    EXPECT_EQ(t.stages[0].stage.symbol, "M");
    EXPECT_EQ(t.stages[1].stage.symbol, "imTr");
    EXPECT_EQ(t.stages[2].stage.symbol, "O");
    EXPECT_EQ(t.stages[3].stage.symbol, "imN");
    EXPECT_EQ(t.stages[0].fiber.symbol, "cokerTr");
    EXPECT_EQ(t.stages[1].fiber.symbol, "kerTr");
    EXPECT_EQ(t.stages[2].fiber.symbol, "cokerN");
    EXPECT_FALSE(t.stages[3].has_fiber);
    EXPECT_EQ(t.stages[0].fiber.d, -4);
    EXPECT_EQ(t.stages[1].fiber.d, -3);
    EXPECT_EQ(t.stages[2].fiber.d, -2);
    // X^{-3} = Σ^{V+2-λ} H im(N)
    EXPECT_EQ(t.stages[3].stage.d, -2);
    EXPECT_EQ(t.stages[3].stage.lambda2, -2);
}

TEST(Tower, HatIsAlwaysSingle) {
    for (int p : {2, 3})
        for (int m = -4; m <= 4; ++m) {
            CpMackey a = hat_mackey(p, cyclic_group(p * p));
            SingleSliceResult s = is_single_slice(VirtualRep{p, m, {}, 0}, a);
            EXPECT_TRUE(s.single) << p << " " << m;
            EXPECT_EQ(s.t, p * m) << p << " " << m;
        }
}

TEST(Tower, ResInjectiveCertificate) {
    CpMackey f = derived(Derived::FixedF, random_mackey(3, 29));
    VirtualRep v = parse_rep(3, "2+λ(1)");  // r = 2 in (0, 3]
    SingleSliceResult s = is_single_slice(v, f);
    EXPECT_TRUE(s.single);
    EXPECT_EQ(s.t, 4);
    EXPECT_NE(s.certificate.find("restriction"), std::string::npos);

    CpMackey o = derived(Derived::OrbitO, random_mackey(3, 29));
    VirtualRep w = parse_rep(3, "-2-λ(1)");  // r = -2 in [-3, 0)
    SingleSliceResult sw = is_single_slice(w, o);
    EXPECT_TRUE(sw.single);
    EXPECT_EQ(sw.t, -4);
    EXPECT_NE(sw.certificate.find("transfer"), std::string::npos);
}

TEST(Tower, CoconstantZWindow) {
    CpMackey zs = coconstant_mackey(2, free_abelian(1));
    EXPECT_TRUE(is_single_slice(parse_rep(2, "-4"), zs).single);
    EXPECT_FALSE(is_single_slice(parse_rep(2, "-5"), zs).single);
    EXPECT_FALSE(is_single_slice(parse_rep(2, "-6"), zs).single);
}

TEST(Tower, QZStableWindow) {
    // coconstant Q/Z: transfers surject, the norm cokernel dies in the colimit,
    // and the norm kernel survives; the single-slice window is k in [-3, 0]
    for (int p : {2, 3}) {
        StablePair qz = qz_truncation_pair(p, 5, true);
        for (int n = 0; n >= -8; --n) {
            VirtualRep v{p, n, {}, 0};
            SliceParams sp = slice_parameters(reduce_rep(v));
            SingleSliceResult s = is_single_slice_stable(v, qz);
            EXPECT_EQ(s.single, sp.k >= -3) << "p=" << p << " n=" << n << " k=" << sp.k;
        }
    }
    StablePair qz2 = qz_truncation_pair(2, 6, true);
    SingleSliceResult s = is_single_slice_stable(parse_rep(2, "-6"), qz2);
    EXPECT_TRUE(s.single);
    EXPECT_EQ(s.t, -6);
}

TEST(Tower, OFormRewrite) {
    CpMackey m = random_mackey(3, 31);
    VirtualRep v = parse_rep(3, "4");
    SliceTower t = theorem_tower(v, m, StageForm::ForceO);
    EXPECT_EQ(t.stages[2].stage.symbol, "O");
    EXPECT_EQ(t.stages[2].stage.d, 2);
    EXPECT_EQ(t.stages[2].stage.lambda2, 2);
    EXPECT_TRUE(mackey_same_shape(t.stages[2].stage.coefficient, derived(Derived::OrbitO, m)));
    for (const auto& st : t.stages) EXPECT_EQ(st.stage.d + st.stage.lambda2, 4);
    CrosscheckReport r = tower_consistency_check(t, v, m);
    EXPECT_TRUE(r.ok) << r.detail;
}

TEST(Tower, RZeroSingleStage) {
    CpMackey m = random_mackey(2, 37);
    SliceTower t = theorem_tower(parse_rep(2, "1+σ"), m);
    EXPECT_EQ(t.r, 0);
    ASSERT_EQ(t.stages.size(), 1u);
    EXPECT_FALSE(t.stages[0].has_fiber);
    EXPECT_EQ(t.stages[0].stage.t, 2);
    EXPECT_TRUE(is_single_slice(parse_rep(2, "1+σ"), m).single);
}

TEST(Tower, FiberCountMatchesK) {
    for (int p : {2, 3, 5})
        for (int seed : {41}) {
            CpMackey m = random_mackey(p, seed);
            for (int tm = -4; tm <= 4; ++tm) {
                VirtualRep v{p, tm, {}, 0};
                SliceTower t = theorem_tower(v, m);
                int want = t.k >= 0 ? t.k : -t.k;
                EXPECT_EQ(t.fiber_count(), want) << p << " " << tm;
                CrosscheckReport r = tower_consistency_check(t, v, m);
                EXPECT_TRUE(r.ok) << p << " " << tm << ": " << r.detail;
            }
        }
}
