#include <cpslice/render.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace cpslice;

namespace {

CpMackey generic_coefficient(int p) {
    CpMackey g = hat_mackey(p, cyclic_group(p));
    g = direct_sum(g, coconstant_mackey(p, free_abelian(1)));
    g = direct_sum(g, constant_mackey(p, cyclic_group(p * p)));
    g = direct_sum(g, orbit_mackey(p, trivial_module(cyclic_group(p * p))));
    g = direct_sum(g, fixed_point_mackey(p, regular_module(p)));
    return g;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

VirtualRep make_rep(int p, int m, int n2) {
    VirtualRep v;
    v.p = p;
    v.trivial = m;
    if (p == 2)
        v.sigma = n2;
    else if (n2 != 0)
        v.lambda[1] = n2 / 2;
    return v;
}

}  // namespace

TEST(Render, EmptyChartEmptyGrid) {
    Chart ch;
    std::string svg = emit_svg(ch);
    EXPECT_EQ(count_occurrences(svg, "class=\"cls\""), 0);
    EXPECT_EQ(count_occurrences(svg, "class=\"dif\""), 0);
    EXPECT_EQ(count_occurrences(svg, "class=\"ext\""), 0);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    nlohmann::json j = chart_to_json(ch);
    EXPECT_TRUE(j["classes"].empty());
    EXPECT_TRUE(j["differentials"].empty());
    EXPECT_TRUE(j["extensions"].empty());
}

TEST(Render, SpecChartCounts) {
    Chart ch = e2_page(parse_rep(3, "2"), generic_coefficient(3));
    decorate(ch);
    std::string svg = emit_svg(ch);
    EXPECT_EQ(count_occurrences(svg, "class=\"cls\""), 3);
    EXPECT_EQ(count_occurrences(svg, "class=\"dif\""), 1);
    EXPECT_EQ(count_occurrences(svg, "class=\"ext\""), 1);
    EXPECT_EQ(count_occurrences(svg, "marker-end"), 1);
    EXPECT_EQ(svg.find("http"), svg.find("http://www.w3.org/2000/svg"));  // self-contained

    std::string art = emit_ascii(ch);
    EXPECT_NE(art.find("d2: F(2,0) -> cokerR(1,2)"), std::string::npos);
    EXPECT_NE(art.find("ext x=2: kerR(s=4) R(s=0)"), std::string::npos);
}

TEST(Render, JsonSchemaAndRoundTrip) {
    Chart ch = e2_page(parse_rep(3, "2"), generic_coefficient(3));
    decorate(ch);
    nlohmann::json j = chart_to_json(ch);
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["V"], "2");
    ASSERT_EQ(j["classes"].size(), 3u);
    for (const char* key : {"x", "s", "t", "symbol", "group_fixed", "group_underlying"})
        EXPECT_TRUE(j["classes"][0].contains(key)) << key;
    ASSERT_EQ(j["differentials"].size(), 1u);
    EXPECT_EQ(j["differentials"][0]["r"], 2);
    ASSERT_EQ(j["extensions"].size(), 1u);
    EXPECT_EQ(j["extensions"][0].size(), 2u);

    // emitted text re-parses to the same values
    EXPECT_EQ(nlohmann::json::parse(emit_json(ch)), j);

    // einf decorations are reported once decorated
    int killed = 0;
    for (const auto& c : j["classes"])
        if (c["einf_symbol"] == "0") ++killed;
    EXPECT_EQ(killed, 1);
}

TEST(Render, TowerJson) {
    CpMackey m = generic_coefficient(2);
    SliceTower t = theorem_tower(parse_rep(2, "1+σ"), m);
    nlohmann::json j = tower_to_json(t);
    EXPECT_EQ(j["direction"], "slice");
    EXPECT_EQ(j["r"], 0);
    ASSERT_EQ(j["stages"].size(), 1u);
    EXPECT_EQ(j["stages"][0]["t"], 2);
    EXPECT_EQ(j["stages"][0]["suspension"]["d"], 1);
    EXPECT_EQ(j["stages"][0]["suspension"]["lambda"], 0.5);
    EXPECT_EQ(j["stages"][0]["symbol"], "M");
    EXPECT_TRUE(j["stages"][0]["coefficient"].contains("fixed"));

    SliceTower neg = theorem_tower(parse_rep(2, "-7"), m);
    nlohmann::json jn = tower_to_json(neg);
    EXPECT_EQ(jn["direction"], "coslice");
    EXPECT_EQ(jn["slice_range"][0], -14);
    EXPECT_EQ(jn["slice_range"][1], -7);
    int cofibers = 0;
    for (const auto& st : jn["stages"]) cofibers += st.contains("fiber") ? 1 : 0;
    EXPECT_EQ(cofibers, 4);

    std::string art = emit_tower_ascii(neg);
    EXPECT_NE(art.find("coslice tower: r=-7 k=-4"), std::string::npos);
    EXPECT_EQ(count_occurrences(art, "cofiber"), 4);
}

TEST(Render, Deterministic) {
    Chart a = e2_page(parse_rep(3, "2+λ(1)"), generic_coefficient(3));
    Chart b = e2_page(parse_rep(3, "2+λ(1)"), generic_coefficient(3));
    decorate(a);
    decorate(b);
    EXPECT_EQ(emit_json(a), emit_json(b));
    EXPECT_EQ(emit_svg(a), emit_svg(b));
    EXPECT_EQ(emit_ascii(a), emit_ascii(b));
}

// Layout snapshots, one per chart family. Regenerate by running this binary
// with CPSLICE_WRITE_GOLDEN=1; review the diff before committing.
TEST(Render, GoldenSvgPerFamily) {
    struct Family {
        int p, m, n2;
    };
    const std::vector<Family> families = {
        {3, 1, 0},  {3, 2, 0},  {3, 4, 0},  {3, -1, 0}, {3, -2, 0}, {3, -4, 0},
        {3, 1, 2},  {3, 2, 2},  {3, 3, 2},  {3, 0, 2},  {3, -3, 2}, {3, -5, 2},
        {3, -1, -2}, {3, 0, -2}, {3, 3, -2}, {3, -2, -2},
        {3, 3, 4},  {3, -3, -4},
        {2, 4, 1},  {2, -6, -1}, {2, 5, 3},  {2, -5, -3},
    };
    const bool write = std::getenv("CPSLICE_WRITE_GOLDEN") != nullptr;
    for (const Family& f : families) {
        Chart ch = e2_page(make_rep(f.p, f.m, f.n2), generic_coefficient(f.p));
        decorate(ch);
        std::string svg = emit_svg(ch);
        std::string path = std::string(CPSLICE_GOLDEN_DIR) + "/chart_p" + std::to_string(f.p) +
                           "_m" + std::to_string(f.m) + "_l" + std::to_string(f.n2) + ".svg";
        if (write) {
            std::ofstream out(path, std::ios::binary);
            ASSERT_TRUE(out.good()) << path;
            out << svg;
            continue;
        }
        std::ifstream in(path, std::ios::binary);
        ASSERT_TRUE(in.good()) << "missing golden " << path;
        std::stringstream buf;
        buf << in.rdbuf();
        EXPECT_EQ(buf.str(), svg) << path;
    }
}
