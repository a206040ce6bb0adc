#pragma once

// Emitters for towers and charts. JSON is the canonical machine format; SVG
// and ASCII are display renderings of the same data. All three are
// deterministic: equal inputs give byte-equal output.

#include <cpslice/chart.hpp>
#include <cpslice/json_io.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace cpslice {

namespace detail {

inline nlohmann::json lambda_of(int lambda2) {
    if (lambda2 % 2 == 0) return nlohmann::json(lambda2 / 2);
    return nlohmann::json(lambda2 / 2.0);
}

inline nlohmann::json descriptor_to_json(const SliceDescriptor& s) {
    return nlohmann::json{{"t", s.t},
                          {"suspension", {{"d", s.d}, {"lambda", lambda_of(s.lambda2)}}},
                          {"coefficient", mackey_description(s.coefficient)},
                          {"symbol", s.symbol}};
}

}  // namespace detail

inline nlohmann::json tower_to_json(const SliceTower& t) {
    nlohmann::json stages = nlohmann::json::array();
    for (const TowerStage& st : t.stages) {
        nlohmann::json j = detail::descriptor_to_json(st.stage);
        if (st.has_fiber) j["fiber"] = detail::descriptor_to_json(st.fiber);
        stages.push_back(std::move(j));
    }
    return nlohmann::json{{"p", t.p},
                          {"m", t.m},
                          {"lambda", detail::lambda_of(t.n2)},
                          {"r", t.r},
                          {"k", t.k},
                          {"direction", t.direction == TowerDirection::Slice ? "slice" : "coslice"},
                          {"slice_range", {t.lo, t.hi}},
                          {"stages", std::move(stages)}};
}

inline std::string emit_tower_ascii(const SliceTower& t) {
    std::string out = (t.direction == TowerDirection::Slice ? "slice" : "coslice");
    out += " tower: r=" + std::to_string(t.r) + " k=" + std::to_string(t.k) + " slices [" +
           std::to_string(t.lo) + "," + std::to_string(t.hi) + "]\n";
    auto line = [&](const char* head, const SliceDescriptor& s) {
        out += std::string(head) + " t=" + std::to_string(s.t) + "  d=" + std::to_string(s.d);
        if (s.lambda2 != 0) {
            out += "  lambda=" + std::to_string(s.lambda2 / 2);
            if (s.lambda2 % 2 != 0) out += ".5";
        }
        out += "  " + s.symbol + "  [" + group_name(s.coefficient.fixed) + ", " +
               group_name(s.coefficient.underlying) + "]\n";
    };
    for (const TowerStage& st : t.stages) {
        line("stage", st.stage);
        if (st.has_fiber) line(t.direction == TowerDirection::Slice ? "  fiber" : "  cofiber",
                               st.fiber);
    }
    return out;
}

inline nlohmann::json chart_to_json(const Chart& ch) {
    nlohmann::json classes = nlohmann::json::array();
    for (const ChartClass& c : ch.classes) {
        nlohmann::json j{{"x", c.x},
                         {"s", c.s},
                         {"t", c.t},
                         {"symbol", c.symbol},
                         {"group_fixed", group_name(c.value.fixed)},
                         {"group_underlying", group_name(c.value.underlying)}};
        if (ch.decorated) {
            j["einf_symbol"] = c.einf_label;
            j["einf_fixed"] = group_name(c.einf.fixed);
            j["einf_underlying"] = group_name(c.einf.underlying);
        }
        classes.push_back(std::move(j));
    }
    nlohmann::json diffs = nlohmann::json::array();
    for (const ChartDifferential& d : ch.differentials)
        diffs.push_back(nlohmann::json{{"r", d.r},
                                       {"source", d.source},
                                       {"target", d.target},
                                       {"source_outcome", d.source_outcome},
                                       {"target_outcome", d.target_outcome}});
    nlohmann::json exts = nlohmann::json::array();
    for (const ChartExtension& e : ch.extensions) exts.push_back(e.classes);
    return nlohmann::json{{"p", ch.p},
                          {"V", rep_to_string(ch.v)},
                          {"family", ch.family},
                          {"classes", std::move(classes)},
                          {"differentials", std::move(diffs)},
                          {"extensions", std::move(exts)}};
}

inline std::string emit_json(const Chart& ch) { return chart_to_json(ch).dump(2) + "\n"; }

namespace detail {

struct ChartBox {
    int xlo = 0, xhi = 1, slo = 0, shi = 1;
};

inline ChartBox chart_box(const Chart& ch) {
    ChartBox b;
    if (ch.classes.empty()) return b;
    b.xlo = b.xhi = ch.classes[0].x;
    b.slo = b.shi = ch.classes[0].s;
    for (const ChartClass& c : ch.classes) {
        b.xlo = std::min(b.xlo, c.x);
        b.xhi = std::max(b.xhi, c.x);
        b.slo = std::min(b.slo, c.s);
        b.shi = std::max(b.shi, c.s);
    }
    return b;
}

}  // namespace detail

// Self-contained SVG: class labels at integer grid points, differentials as
// arrows (x,s) -> (x-1,s+r), extensions as vertical struct lines. One grid
// unit = `pitch` pixels.
inline std::string emit_svg(const Chart& ch, int pitch = 48) {
    detail::ChartBox b = detail::chart_box(ch);
    const int w = (b.xhi - b.xlo + 2) * pitch;
    const int h = (b.shi - b.slo + 2) * pitch;
    auto px = [&](double x) { return (long)std::lround((x - b.xlo + 1) * pitch); };
    auto py = [&](double s) { return (long)std::lround(h - (s - b.slo + 1) * pitch); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
           std::to_string(h) + "\">\n";
    out += "<style>text{font-family:monospace;font-size:" + std::to_string(pitch / 3) +
           "px}.axis{fill:#666;font-size:" + std::to_string(pitch / 4) +
           "px}.grid{stroke:#ddd;stroke-width:1}.dif{stroke:#c22;stroke-width:2;fill:none}"
           ".ext{stroke:#22c;stroke-width:2}</style>\n";
    out += "<defs><marker id=\"arr\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
           "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c22\"/></marker></defs>\n";

    for (int x = b.xlo; x <= b.xhi; ++x) {
        out += "<line class=\"grid\" x1=\"" + std::to_string(px(x)) + "\" y1=\"" +
               std::to_string(py(b.shi) - pitch / 2) + "\" x2=\"" + std::to_string(px(x)) +
               "\" y2=\"" + std::to_string(py(b.slo) + pitch / 2) + "\"/>\n";
        out += "<text class=\"axis\" text-anchor=\"middle\" x=\"" + std::to_string(px(x)) +
               "\" y=\"" + std::to_string(h - pitch / 8) + "\">" + std::to_string(x) + "</text>\n";
    }
    for (int s = b.slo; s <= b.shi; ++s) {
        out += "<line class=\"grid\" x1=\"" + std::to_string(px(b.xlo) - pitch / 2) + "\" y1=\"" +
               std::to_string(py(s)) + "\" x2=\"" + std::to_string(px(b.xhi) + pitch / 2) +
               "\" y2=\"" + std::to_string(py(s)) + "\"/>\n";
        out += "<text class=\"axis\" x=\"" + std::to_string(pitch / 8) + "\" y=\"" +
               std::to_string(py(s)) + "\">" + std::to_string(s) + "</text>\n";
    }

    for (const ChartExtension& e : ch.extensions) {
        if (e.classes.size() < 2) continue;
        const ChartClass& hi = ch.classes[(size_t)e.classes.front()];
        const ChartClass& lo = ch.classes[(size_t)e.classes.back()];
        out += "<line class=\"ext\" x1=\"" + std::to_string(px(hi.x)) + "\" y1=\"" +
               std::to_string(py(hi.s - 0.25)) + "\" x2=\"" + std::to_string(px(lo.x)) +
               "\" y2=\"" + std::to_string(py(lo.s + 0.25)) + "\"/>\n";
    }
    for (const ChartDifferential& d : ch.differentials) {
        const ChartClass& s = ch.classes[(size_t)d.source];
        const ChartClass& t = ch.classes[(size_t)d.target];
        double dx = t.x - s.x, dy = t.s - s.s;
        double len = std::sqrt(dx * dx + dy * dy);
        double ux = dx / len, uy = dy / len;
        out += "<line class=\"dif\" marker-end=\"url(#arr)\" x1=\"" +
               std::to_string(px(s.x + 0.2 * ux)) + "\" y1=\"" +
               std::to_string(py(s.s + 0.2 * uy)) + "\" x2=\"" +
               std::to_string(px(t.x - 0.3 * ux)) + "\" y2=\"" +
               std::to_string(py(t.s - 0.3 * uy)) + "\"/>\n";
    }
    for (const ChartClass& c : ch.classes) {
        out += "<text class=\"cls\" text-anchor=\"middle\" x=\"" + std::to_string(px(c.x)) +
               "\" y=\"" + std::to_string(py(c.s) + pitch / 8) + "\">" + c.symbol + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

inline std::string emit_ascii(const Chart& ch) {
    std::string out = "p=" + std::to_string(ch.p) + "  V=" + rep_to_string(ch.v) + "  (" +
                      ch.family + ")\n";
    if (ch.classes.empty()) return out;
    detail::ChartBox b = detail::chart_box(ch);

    size_t cell = 1;
    for (const ChartClass& c : ch.classes) cell = std::max(cell, c.symbol.size());
    cell += 2;
    std::set<int> srows;
    for (const ChartClass& c : ch.classes) srows.insert(c.s);

    size_t shead = 0;
    for (int s : srows) shead = std::max(shead, std::to_string(s).size());
    auto pad_left = [](std::string v, size_t w) {
        while (v.size() < w) v.insert(v.begin(), ' ');
        return v;
    };
    auto center = [](std::string v, size_t w) {
        bool left = true;
        while (v.size() < w) {
            v = left ? v + " " : " " + v;
            left = !left;
        }
        return v;
    };

    out += pad_left("s\\x", shead + 3) + "|";
    for (int x = b.xlo; x <= b.xhi; ++x) out += center(std::to_string(x), cell);
    out += "\n";
    for (auto it = srows.rbegin(); it != srows.rend(); ++it) {
        out += pad_left(std::to_string(*it), shead + 3) + "|";
        for (int x = b.xlo; x <= b.xhi; ++x) {
            std::string sym;
            for (const ChartClass& c : ch.classes)
                if (c.x == x && c.s == *it) sym = c.symbol;
            out += center(sym, cell);
        }
        out += "\n";
    }
    for (const ChartDifferential& d : ch.differentials) {
        const ChartClass& s = ch.classes[(size_t)d.source];
        const ChartClass& t = ch.classes[(size_t)d.target];
        out += "d" + std::to_string(d.r) + ": " + s.symbol + "(" + std::to_string(s.x) + "," +
               std::to_string(s.s) + ") -> " + t.symbol + "(" + std::to_string(t.x) + "," +
               std::to_string(t.s) + ")   leaves " + d.source_outcome + " | " + d.target_outcome +
               "\n";
    }
    for (const ChartExtension& e : ch.extensions) {
        out += "ext x=" + std::to_string(ch.classes[(size_t)e.classes[0]].x) + ":";
        for (int id : e.classes)
            out += " " + ch.classes[(size_t)id].einf_label + "(s=" +
                   std::to_string(ch.classes[(size_t)id].s) + ")";
        out += "\n";
    }
    return out;
}

}  // namespace cpslice
