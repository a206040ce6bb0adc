// cpslice: homology of representation spheres, slice towers, and decorated
// slice spectral sequence charts over C_p Mackey functor coefficients.
//
// Coefficients are JSON files (schema in json_io.hpp) or built-in names:
//   Z, Zstar, F_p, Z/<q>, Z/p^<k>, Q/Z, Q/Zstar, burnside, burnside^<a>,
//   random (seeded with --seed).
// Q/Z built-ins are truncations Z/p^N; N comes from --truncation or the
// CPSLICE_QZ_TRUNCATION environment variable (default 6).

#include <cpslice/random_mackey.hpp>
#include <cpslice/render.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace cpslice;

int env_truncation() {
    const char* e = std::getenv("CPSLICE_QZ_TRUNCATION");
    if (!e) return 6;
    char* end = nullptr;
    long n = std::strtol(e, &end, 10);
    if (end == e || *end != '\0' || n < 1 || n > 64)
        throw std::invalid_argument("CPSLICE_QZ_TRUNCATION must be an integer in [1,64]");
    return static_cast<int>(n);
}

constexpr const char* kBuiltins =
    "Z, Zstar, F_p, Z/<q>, Z/p^<k>, Q/Z, Q/Zstar, burnside, burnside^<a>, random";

bool parse_builtin(const std::string& name, int p, int trunc, unsigned seed, CpMackey& out) {
    if (name == "Z") {
        out = constant_mackey(p, free_abelian(1));
    } else if (name == "Zstar") {
        out = coconstant_mackey(p, free_abelian(1));
    } else if (name == "F_p") {
        out = constant_mackey(p, cyclic_group(p));
    } else if (name == "Q/Z") {
        out = qz_truncation_pair(p, trunc, false).small;
    } else if (name == "Q/Zstar") {
        out = qz_truncation_pair(p, trunc, true).small;
    } else if (name == "burnside") {
        out = burnside(p);
    } else if (name.rfind("burnside^", 0) == 0) {
        long a = std::stol(name.substr(9));
        out = burnside_twisted(p, a);
    } else if (name == "random") {
        out = random_mackey(p, seed);
    } else if (name.rfind("Z/", 0) == 0) {
        std::string tail = name.substr(2);
        Int q;
        if (tail == "p" || tail.rfind("p^", 0) == 0) {
            long k = tail == "p" ? 1 : std::stol(tail.substr(2));
            if (k < 1 || k > 64) throw std::invalid_argument("Z/p^k needs k in [1,64]");
            q = 1;
            for (long i = 0; i < k; ++i) q *= p;
        } else {
            q = Int(tail);
            if (q < 2) throw std::invalid_argument("Z/q needs q >= 2");
        }
        out = constant_mackey(p, cyclic_group(q));
    } else {
        return false;
    }
    return true;
}

CpMackey load_coefficient(const std::string& spec, int& p, bool p_given, int trunc,
                          unsigned seed) {
    CpMackey m;
    if (parse_builtin(spec, p, trunc, seed, m)) {
        validate_mackey(m);
        return m;
    }
    std::ifstream in(spec);
    if (!in.good())
        throw std::invalid_argument("coefficient \"" + spec + "\" is neither a built-in (" +
                                    kBuiltins + ") nor a readable file");
    nlohmann::json j = nlohmann::json::parse(in);  // reports the byte position on failure
    m = mackey_from_json(j);
    if (p_given && m.p != p)
        throw std::invalid_argument("-p " + std::to_string(p) +
                                    " disagrees with the coefficient file (p = " +
                                    std::to_string(m.p) + ")");
    p = m.p;
    return m;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string symbol_table_text(const std::map<std::string, CpMackey>& table) {
    size_t w = 0, wf = 0;
    for (auto& [sym, m] : table) {
        w = std::max(w, sym.size());
        wf = std::max(wf, group_name(m.fixed).size());
    }
    std::string out;
    for (auto& [sym, m] : table) {
        std::string line = sym;
        line.append(w - sym.size() + 2, ' ');
        std::string fx = group_name(m.fixed);
        line += fx;
        line.append(wf - fx.size() + 2, ' ');
        line += "| " + group_name(m.underlying) + "\n";
        out += line;
    }
    return out;
}

std::string homology_table_text(const GradedMackey& h) {
    std::string out;
    for (auto& [deg, m] : h)
        out += "H_" + std::to_string(deg) + ": " + group_name(m.fixed) + " | " +
               group_name(m.underlying) + "\n";
    if (out.empty()) out = "0\n";
    return out;
}

VirtualRep cell_rep(int p, int m, int n2) {
    VirtualRep v;
    v.p = p;
    v.trivial = m;
    if (p == 2)
        v.sigma = n2;
    else if (n2 != 0)
        v.lambda[1] = n2 / 2;
    return v;
}

struct SweepOutcome {
    int cells = 0;
    std::vector<std::string> failures;
};

SweepOutcome run_sweep(const CpMackey& coeff, int p, int m_lo, int m_hi, int n_lo, int n_hi) {
    std::vector<std::pair<int, int>> cells;
    int step = p == 2 ? 1 : 2;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int n2 = 2 * n_lo; n2 <= 2 * n_hi; n2 += step) cells.push_back({m, n2});

    SweepOutcome out;
    out.cells = static_cast<int>(cells.size());
    std::mutex mu;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, cells.size() ? cells.size() : 1);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < cells.size(); i += workers) {
                auto [m, n2] = cells[i];
                VirtualRep v = cell_rep(p, m, n2);
                std::string cell = "m=" + std::to_string(m) + " n2=" + std::to_string(n2);
                try {
                    CrosscheckReport a = crosscheck_sphere(v, coeff);
                    Chart ch = e2_page(v, coeff);
                    CrosscheckReport b = verify_convergence(ch, coeff);
                    if (!a.ok || !b.ok) {
                        std::lock_guard<std::mutex> lock(mu);
                        out.failures.push_back(cell + ": " + a.detail + b.detail);
                    }
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(mu);
                    out.failures.push_back(cell + ": exception: " + e.what());
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::sort(out.failures.begin(), out.failures.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slice spectral sequences of representation spheres over C_p Mackey functors"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string coeff, rep_lit, format, out_path;
    int p = 2;
    unsigned seed = 1;
    int trunc = 0;
    int m_lo = -4, m_hi = 4, n_lo = -2, n_hi = 2;

    auto* popt = app.add_option("-p", p, "prime (default 2, or taken from the coefficient file)");
    app.add_option("--coeff", coeff, std::string("coefficient: built-in (") + kBuiltins +
                                         ") or JSON file path")
        ->required();
    app.add_option("--rep", rep_lit, "representation literal, e.g. \"3+λ(1)^2\" or \"-2+σ^3\"");
    app.add_option("--format", format, "output format: json | svg | ascii | table");
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--seed", seed, "seed for the random built-in");
    app.add_option("--truncation", trunc, "truncation level N for the Q/Z built-ins");

    auto* cmd_validate = app.add_subcommand("validate", "check a coefficient against the axioms");
    auto* cmd_derive = app.add_subcommand("derive", "evaluate every chart symbol over a coefficient");
    auto* cmd_homology = app.add_subcommand("homology", "homology of S^V, cross-checked");
    auto* cmd_tower = app.add_subcommand("tower", "slice or coslice tower of Sigma^V HM");
    auto* cmd_chart = app.add_subcommand("chart", "decorated slice spectral sequence chart");
    auto* cmd_verify = app.add_subcommand("verify", "replay a chart against sphere homology");
    auto* cmd_sweep = app.add_subcommand("sweep", "crosscheck + verify over an (m, n) grid");
    cmd_sweep->add_option("--m-lo", m_lo, "lowest trivial part (default -4)");
    cmd_sweep->add_option("--m-hi", m_hi, "highest trivial part (default 4)");
    cmd_sweep->add_option("--n-lo", n_lo, "lowest rotation count n (default -2)");
    cmd_sweep->add_option("--n-hi", n_hi, "highest rotation count n (default 2)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (trunc == 0) trunc = env_truncation();
        if (trunc < 1 || trunc > 64)
            throw std::invalid_argument("--truncation must be in [1,64]");
        CpMackey m = load_coefficient(coeff, p, popt->count() > 0, trunc, seed);

        auto need_rep = [&]() -> VirtualRep {
            if (rep_lit.empty())
                throw std::invalid_argument("this command needs --rep");
            return parse_rep(p, rep_lit);
        };
        auto pick = [&](const char* dflt) -> std::string {
            return format.empty() ? dflt : format;
        };
        auto bad_format = [&]() -> std::invalid_argument {
            return std::invalid_argument("unsupported --format \"" + format +
                                         "\" for this command");
        };

        if (cmd_validate->parsed()) {
            write_out(out_path, mackey_description(m).dump(2) + "\nvalid\n");
            return 0;
        }
        if (cmd_derive->parsed()) {
            auto table = simplify_symbols(m);
            std::string fmt = pick("table");
            if (fmt == "json") {
                nlohmann::json j = nlohmann::json::object();
                for (auto& [sym, val] : table)
                    j[sym] = {{"fixed", group_name(val.fixed)},
                              {"underlying", group_name(val.underlying)}};
                write_out(out_path, j.dump(2) + "\n");
            } else if (fmt == "table" || fmt == "ascii") {
                write_out(out_path, symbol_table_text(table));
            } else {
                throw bad_format();
            }
            return 0;
        }
        if (cmd_homology->parsed()) {
            VirtualRep v = need_rep();
            CrosscheckReport check = crosscheck_sphere(v, m);
            GradedMackey h = homology_of_sphere(v, m);
            strip_trivial(h);
            std::string fmt = pick("json");
            if (fmt == "json")
                write_out(out_path, graded_to_json(h).dump(2) + "\n");
            else if (fmt == "table" || fmt == "ascii")
                write_out(out_path, homology_table_text(h));
            else
                throw bad_format();
            if (!check.ok) {
                std::cerr << "crosscheck FAILED: " << check.detail << "\n";
                return 1;
            }
            return 0;
        }
        if (cmd_tower->parsed()) {
            SliceTower t = theorem_tower(need_rep(), m);
            std::string fmt = pick("json");
            if (fmt == "json")
                write_out(out_path, tower_to_json(t).dump(2) + "\n");
            else if (fmt == "table" || fmt == "ascii")
                write_out(out_path, emit_tower_ascii(t));
            else
                throw bad_format();
            return 0;
        }
        if (cmd_chart->parsed()) {
            Chart ch = e2_page(need_rep(), m);
            decorate(ch);
            std::string fmt = pick("json");
            if (fmt == "json")
                write_out(out_path, emit_json(ch));
            else if (fmt == "svg")
                write_out(out_path, emit_svg(ch));
            else if (fmt == "ascii" || fmt == "table")
                write_out(out_path, emit_ascii(ch));
            else
                throw bad_format();
            return 0;
        }
        if (cmd_verify->parsed()) {
            VirtualRep v = need_rep();
            CrosscheckReport a = crosscheck_sphere(v, m);
            Chart ch = e2_page(v, m);
            CrosscheckReport b = verify_convergence(ch, m);
            std::string text = "homology crosscheck: " + std::string(a.ok ? "pass" : "FAIL ") +
                               a.detail + "\nchart convergence:   " +
                               std::string(b.ok ? "pass" : "FAIL ") + b.detail + "\n";
            write_out(out_path, text);
            return a.ok && b.ok ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            SweepOutcome s = run_sweep(m, p, m_lo, m_hi, n_lo, n_hi);
            std::string text = "sweep p=" + std::to_string(p) + " coeff=" + coeff +
                               ": cells=" + std::to_string(s.cells) +
                               " failures=" + std::to_string(s.failures.size()) + "\n";
            for (const std::string& f : s.failures) text += "  " + f + "\n";
            write_out(out_path, text);
            return s.failures.empty() ? 0 : 1;
        }
        throw std::logic_error("unhandled command");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
