#pragma once

// JSON (de)serialization for Mackey functor presentations and graded output.
//
// Mackey functor file format:
//   { "p": int,
//     "fixed":      { "generators": int, "relations": [[int]] },
//     "underlying": { "generators": int, "relations": [[int]] },
//     "res": [[int]], "tr": [[int]], "weyl": [[int]] }
// Matrices are stored as lists of rows and act on generator coordinate
// columns: res has underlying.generators rows and fixed.generators columns,
// tr the transpose shape, weyl is square on the underlying level. Each
// relation is one vector of length generators; the lists may be empty.

#include <cpslice/mackey.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace cpslice {

namespace detail {

inline nlohmann::json matrix_to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols; ++j) {
            const Int& v = m.at(i, j);
            if (!v.fits_slong_p()) throw std::runtime_error("matrix entry too large for JSON");
            row.push_back(v.get_si());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols,
                                  const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument(what + ": row " + std::to_string(i) + " needs " +
                                        std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            if (!j[i][c].is_number_integer())
                throw std::invalid_argument(what + ": entries must be integers");
            m.at(i, c) = Int(j[i][c].get<long>());
        }
    }
    return m;
}

inline nlohmann::json level_to_json(const FgAbGroup& g) {
    nlohmann::json rels = nlohmann::json::array();
    for (int j = 0; j < g.rels.cols; ++j) {
        nlohmann::json rel = nlohmann::json::array();
        for (int i = 0; i < g.gens; ++i) {
            if (!g.rels.at(i, j).fits_slong_p())
                throw std::runtime_error("relation entry too large for JSON");
            rel.push_back(g.rels.at(i, j).get_si());
        }
        rels.push_back(std::move(rel));
    }
    return nlohmann::json{{"generators", g.gens}, {"relations", std::move(rels)}};
}

inline FgAbGroup level_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.contains("generators") || !j["generators"].is_number_integer())
        throw std::invalid_argument(what + ": missing generator count");
    FgAbGroup g;
    g.gens = j["generators"].get<int>();
    if (g.gens < 0) throw std::invalid_argument(what + ": negative generator count");
    const nlohmann::json& rels = j.contains("relations") ? j["relations"] : nlohmann::json::array();
    int nrels = static_cast<int>(rels.size());
    // transpose: the file stores one relation per entry, the matrix stores
    // relator columns
    IntMatrix r(g.gens, nrels);
    for (int k = 0; k < nrels; ++k) {
        if (!rels[k].is_array() || static_cast<int>(rels[k].size()) != g.gens)
            throw std::invalid_argument(what + ": relation " + std::to_string(k) +
                                        " needs one entry per generator");
        for (int i = 0; i < g.gens; ++i) r.at(i, k) = Int(rels[k][i].get<long>());
    }
    g.rels = std::move(r);
    return g;
}

}  // namespace detail

inline nlohmann::json mackey_to_json(const CpMackey& m) {
    return nlohmann::json{{"p", m.p},
                          {"fixed", detail::level_to_json(m.fixed)},
                          {"underlying", detail::level_to_json(m.underlying)},
                          {"res", detail::matrix_to_json(m.res)},
                          {"tr", detail::matrix_to_json(m.tr)},
                          {"weyl", detail::matrix_to_json(m.weyl)}};
}

inline CpMackey mackey_from_json(const nlohmann::json& j) {
    for (const char* key : {"p", "fixed", "underlying", "res", "tr", "weyl"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("mackey file: missing \"") + key + "\"");
    CpMackey m;
    if (!j["p"].is_number_integer()) throw std::invalid_argument("mackey file: p must be an integer");
    m.p = j["p"].get<int>();
    m.fixed = detail::level_from_json(j["fixed"], "fixed");
    m.underlying = detail::level_from_json(j["underlying"], "underlying");
    m.res = detail::matrix_from_json(j["res"], m.underlying.gens, m.fixed.gens, "res");
    m.tr = detail::matrix_from_json(j["tr"], m.fixed.gens, m.underlying.gens, "tr");
    m.weyl = detail::matrix_from_json(j["weyl"], m.underlying.gens, m.underlying.gens, "weyl");
    auto bad = mackey_axiom_failures(m);
    if (!bad.empty()) {
        std::string msg = "mackey file: axiom violations:";
        for (auto& b : bad) msg += " " + b + ";";
        throw std::invalid_argument(msg);
    }
    return m;
}

// "0", "Z", "Z^3", "Z/4", "Z + Z/2 + Z/2": canonical form, free part first.
inline std::string group_name(const FgAbGroup& g) {
    const auto& c = g.canonical_form();
    std::string out;
    if (c.free_rank == 1)
        out = "Z";
    else if (c.free_rank > 1)
        out = "Z^" + std::to_string(c.free_rank);
    for (const Int& d : c.torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + d.get_str();
    }
    return out.empty() ? "0" : out;
}

// Human-facing canonical description: named level groups plus a minimal
// presentation that parses back with mackey_from_json.
inline nlohmann::json mackey_description(const CpMackey& m) {
    CpMackey s = simplify_presentation(m).value;
    return nlohmann::json{{"fixed", group_name(m.fixed)},
                          {"underlying", group_name(m.underlying)},
                          {"functor", mackey_to_json(s)}};
}

inline nlohmann::json graded_to_json(const GradedMackey& h) {
    nlohmann::json out = nlohmann::json::object();
    for (auto& [deg, m] : h) out[std::to_string(deg)] = mackey_description(m);
    return out;
}

}  // namespace cpslice
