#include <gtest/gtest.h>
#include <cpslice/abelian.hpp>
#include <random>

using namespace cpslice;

namespace {

FgAbGroup grp(int gens, std::vector<std::vector<long>> relator_cols) {
    IntMatrix rels(gens, (int)relator_cols.size());
    for (int j = 0; j < (int)relator_cols.size(); j++)
        for (int i = 0; i < gens; i++) rels.at(i, j) = relator_cols[j][i];
    return FgAbGroup{gens, rels};
}

std::vector<long> canon_tor(const FgAbGroup& g) {
    std::vector<long> v;
    for (const Int& d : g.canonical_form().torsion) v.push_back(d.get_si());
    return v;
}

}  // namespace

TEST(Abelian, CanonicalForms) {
    FgAbGroup z = free_abelian(1);
    EXPECT_EQ(z.canonical_form().free_rank, 1);
    EXPECT_TRUE(z.canonical_form().torsion.empty());

    FgAbGroup zp = grp(1, {{5}});
    EXPECT_EQ(zp.canonical_form().free_rank, 0);
    EXPECT_EQ(canon_tor(zp), (std::vector<long>{5}));

    FgAbGroup g24 = grp(2, {{2, 0}, {0, 4}});
    EXPECT_EQ(g24.canonical_form().free_rank, 0);
    EXPECT_EQ(canon_tor(g24), (std::vector<long>{2, 4}));

    // unit torsion entries dropped
    FgAbGroup g2 = grp(2, {{1, 0}, {0, 2}});
    EXPECT_EQ(canon_tor(g2), (std::vector<long>{2}));

    // Z^2 / <(2,4)> = Z + Z/2
    FgAbGroup g = grp(2, {{2, 4}});
    EXPECT_EQ(g.canonical_form().free_rank, 1);
    EXPECT_EQ(canon_tor(g), (std::vector<long>{2}));

    EXPECT_TRUE(grp(0, {}).is_trivial());
    EXPECT_TRUE(grp(1, {{1}}).is_trivial());
    EXPECT_FALSE(zp.is_trivial());
}

TEST(Abelian, Order) {
    EXPECT_EQ(grp(2, {{2, 0}, {0, 4}}).order(), std::optional<Int>(8));
    EXPECT_EQ(free_abelian(1).order(), std::nullopt);
    EXPECT_EQ(grp(0, {}).order(), std::optional<Int>(1));
}

TEST(Abelian, Isomorphic) {
    EXPECT_TRUE(groups_isomorphic(grp(2, {{2, 0}, {0, 3}}), grp(1, {{6}})));
    EXPECT_FALSE(groups_isomorphic(grp(2, {{2, 0}, {0, 4}}), grp(1, {{8}})));
    EXPECT_TRUE(groups_isomorphic(free_abelian(2), grp(3, {{1, 1, 1}})));
}

TEST(Abelian, HomWellDefined) {
    FgAbGroup z2 = grp(1, {{2}}), z4 = grp(1, {{4}});
    EXPECT_NO_THROW(GroupHom(z2, z4, from_rows({{2}})));
    EXPECT_THROW(GroupHom(z2, z4, from_rows({{1}})), std::invalid_argument);
    // into free target only the zero map is defined on torsion
    EXPECT_THROW(GroupHom(z2, free_abelian(1), from_rows({{1}})), std::invalid_argument);
    EXPECT_NO_THROW(GroupHom(z2, free_abelian(1), from_rows({{0}})));
}

TEST(Abelian, HomEquality) {
    FgAbGroup z4 = grp(1, {{4}});
    GroupHom f(z4, z4, from_rows({{1}}));
    GroupHom g(z4, z4, from_rows({{5}}));
    EXPECT_TRUE(homs_equal(f, g));
    GroupHom h(z4, z4, from_rows({{2}}));
    EXPECT_FALSE(homs_equal(f, h));
}

TEST(Abelian, KernelImageCokernel) {
    // multiplication by p on Z/p^2: kernel and image both Z/p, cokernel Z/p
    FgAbGroup zp2 = grp(1, {{9}});
    GroupHom mul3(zp2, zp2, from_rows({{3}}));
    SubgroupResult k = kernel(mul3);
    EXPECT_EQ(canon_tor(k.group), (std::vector<long>{3}));
    // inclusion composes to the zero map
    EXPECT_TRUE(homs_equal(compose(mul3, k.incl), zero_hom(k.group, zp2)));

    SubgroupResult im = image(mul3);
    EXPECT_EQ(canon_tor(im.group), (std::vector<long>{3}));
    QuotientResult cok = cokernel(mul3);
    EXPECT_EQ(canon_tor(cok.group), (std::vector<long>{3}));

    // Z -> Z^2, 1 |-> (2,4): kernel 0, cokernel Z + Z/2
    GroupHom f(free_abelian(1), free_abelian(2), from_rows({{2}, {4}}));
    EXPECT_TRUE(kernel(f).group.is_trivial());
    EXPECT_EQ(cokernel(f).group.canonical_form().free_rank, 1);
    EXPECT_EQ(canon_tor(cokernel(f).group), (std::vector<long>{2}));

    // order bookkeeping |ker| * |im| = |G| on a torsion example
    FgAbGroup g = grp(2, {{4, 0}, {0, 6}});
    GroupHom h(g, g, from_rows({{2, 0}, {3, 3}}));
    Int ko = *kernel(h).group.order(), io = *image(h).group.order();
    EXPECT_EQ(ko * io, *g.order());
}

TEST(Abelian, ChainHomology) {
    // C2 --0--> C1 --*2--> C0, all Z: H0 = Z/2, H1 = 0, H2 = Z
    GroupChainComplex c;
    c.terms = {free_abelian(1), free_abelian(1), free_abelian(1)};
    c.diffs = {GroupHom(c.terms[1], c.terms[0], from_rows({{2}})),
               GroupHom(c.terms[2], c.terms[1], from_rows({{0}}))};
    EXPECT_TRUE(c.validate());
    SubquotientGroup h0 = c.homology(0);
    EXPECT_EQ(canon_tor(h0.group), (std::vector<long>{2}));
    SubquotientGroup h1 = c.homology(1);
    EXPECT_TRUE(h1.group.is_trivial());
    SubquotientGroup h2 = c.homology(2);
    EXPECT_EQ(h2.group.canonical_form().free_rank, 1);

    // witness round trip: generators lift to ambient and reduce back to themselves
    for (int j = 0; j < h0.group.gens; j++) {
        IntMatrix lifted = h0.lift(IntMatrix::identity(h0.group.gens).col(j));
        IntMatrix back = h0.reduce(lifted);
        IntMatrix diff = back.sub(IntMatrix::identity(h0.group.gens).col(j));
        EXPECT_TRUE(element_is_zero(h0.group, diff));
    }
}

TEST(Abelian, ChainValidateCatchesBadSquare) {
    GroupChainComplex c;
    c.terms = {free_abelian(1), free_abelian(1), free_abelian(1)};
    c.diffs = {GroupHom(c.terms[1], c.terms[0], from_rows({{2}})),
               GroupHom(c.terms[2], c.terms[1], from_rows({{1}}))};
    EXPECT_FALSE(c.validate());
}

TEST(Abelian, InducedOnSubquotients) {
    // ambient map *1 : Z/8 -> Z/8 restricted to 2Z/8 -> 2Z/8 is the identity of Z/4
    FgAbGroup z8 = grp(1, {{8}});
    SubquotientGroup sq = subquotient(z8, from_rows({{2}}), from_rows({{8}}));
    EXPECT_EQ(canon_tor(sq.group), (std::vector<long>{4}));
    GroupHom ind = induced_hom(IntMatrix::identity(1), sq, sq);
    EXPECT_TRUE(homs_equal(ind, GroupHom(sq.group, sq.group, IntMatrix::identity(sq.group.gens))));

    // multiplication by 2 on Z/8 induces multiplication by 2 on 2Z/8 = Z/4
    GroupHom ind2 = induced_hom(from_rows({{2}}), sq, sq);
    GroupHom dbl(sq.group, sq.group, IntMatrix::identity(sq.group.gens).scaled(2));
    EXPECT_TRUE(homs_equal(ind2, dbl));
}

TEST(Abelian, RandomKernelExactness) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6), relv(0, 8);
    for (int iter = 0; iter < 120; iter++) {
        int n = dim(rng), m = dim(rng);
        IntMatrix rels_s(n, dim(rng)), rels_t(m, dim(rng));
        for (Int& x : rels_s.data) x = relv(rng);
        for (Int& x : rels_t.data) x = relv(rng);
        FgAbGroup src{n, rels_s}, dst{m, rels_t};
        auto pick = [&]() { return Int(entry(rng)); };
        GroupHom f = random_hom(src, dst, pick);

        SubgroupResult k = kernel(f);
        EXPECT_TRUE(homs_equal(compose(f, k.incl), zero_hom(k.group, dst)));
        SubgroupResult im = image(f);
        QuotientResult cok = cokernel(f);
        // image included in dst, projection kills image
        EXPECT_TRUE(homs_equal(compose(cok.proj, im.incl), zero_hom(im.group, cok.group)));
        auto so = src.order(), ko = k.group.order(), io = im.group.order();
        if (so && ko && io) { EXPECT_EQ((*ko) * (*io), *so); }
        int rk_src = src.canonical_form().free_rank;
        EXPECT_EQ(k.group.canonical_form().free_rank + im.group.canonical_form().free_rank, rk_src);
    }
}
