#include "CLI11.hpp"
#include "json.hpp"
#include "zft/apoly.hpp"
#include "zft/nz.hpp"
#include "zft/oracle.hpp"
#include "zft/reduce.hpp"
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("file not found: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

long long to_ll(const zft::Int& v) { return v.convert_to<long long>(); }

json mat_json(const zft::Mat& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& v : r) row.push_back(to_ll(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

void mat_text(std::ostream& os, const std::string& label, const zft::Mat& m) {
    os << label << ":\n";
    for (const auto& r : m) {
        os << " ";
        for (const auto& v : r) os << " " << v;
        os << "\n";
    }
}

std::string mono_str(const std::vector<int>& exps, const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += names[i];
        if (exps[i] != 1) out += "^" + std::to_string(exps[i]);
    }
    return out.empty() ? "1" : out;
}

// "0:1,1:0" -> {(0,1),(1,0)}; first number picks the delta, second the edge
std::vector<std::pair<int, int>> parse_order(const std::string& s) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw InputError("bad --order entry '" + tok + "', want d:e");
        try {
            out.emplace_back(std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1)));
        } catch (const std::exception&) {
            throw InputError("bad --order entry '" + tok + "', want d:e");
        }
    }
    if (out.empty()) throw InputError("--order is empty");
    return out;
}

int run_parse(const zft::Triangulation& tri, bool as_json) {
    auto vals = zft::edge_valences(tri);
    if (as_json) {
        json out;
        out["tets"] = tri.tet_count();
        out["edges"] = json::array();
        for (int e = 0; e < tri.edge_count(); ++e)
            out["edges"].push_back({{"name", tri.edge_names[e]}, {"valence", vals[e]}});
        out["tetrahedra"] = json::array();
        for (const auto& t : tri.tets) {
            json jt;
            jt["index"] = t.index;
            jt["sign"] = t.sign > 0 ? "+" : "-";
            jt["slots"] = json::array();
            for (int s = 0; s < zft::SLOT_COUNT; ++s)
                jt["slots"].push_back(tri.edge_names[t.slots[s]]);
            auto [qx, qz] = zft::tet_quotient_monomials(tri, t.index);
            jt["shape_monomials"] = {{"x", mono_str(qx.exponents, tri.edge_names)},
                                     {"z", mono_str(qz.exponents, tri.edge_names)}};
            out["tetrahedra"].push_back(std::move(jt));
        }
        auto coeffs = [](const zft::HolonomyRow& h) {
            json a = json::array();
            for (const auto& v : h.coeff) a.push_back(to_ll(v));
            return a;
        };
        out["meridian"] = coeffs(tri.meridian);
        out["longitude"] = coeffs(tri.longitude);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "tets: " << tri.tet_count() << "\n";
    for (const auto& t : tri.tets) {
        std::cout << "tet " << t.index << ": sign " << (t.sign > 0 ? '+' : '-') << " slots";
        for (int s = 0; s < zft::SLOT_COUNT; ++s) std::cout << " " << tri.edge_names[t.slots[s]];
        std::cout << "\n";
    }
    for (int e = 0; e < tri.edge_count(); ++e)
        std::cout << "edge " << tri.edge_names[e] << ": valence " << vals[e] << "\n";
    for (const auto& t : tri.tets) {
        auto [qx, qz] = zft::tet_quotient_monomials(tri, t.index);
        std::cout << "tet " << t.index << " shapes: x = " << mono_str(qx.exponents, tri.edge_names)
                  << ", z = " << mono_str(qz.exponents, tri.edge_names) << "\n";
    }
    auto row = [&](const zft::HolonomyRow& h) {
        std::cout << h.name << ":";
        for (const auto& x : h.coeff) std::cout << " " << x;
        std::cout << "\n";
    };
    row(tri.meridian);
    row(tri.longitude);
    return 0;
}

int run_nz(const zft::Triangulation& tri, bool as_json, int samples, double tol, unsigned seed) {
    auto nz = zft::gluing_matrices(tri);
    auto sym = zft::check_symplectic(nz);
    auto red = zft::choose_quad(nz);
    bool cov_ok = false;
    std::string cov_error;
    zft::ChangeOfVariablesReport cov;
    try {
        cov = zft::verify_change_of_variables(tri, samples, tol, seed);
        cov_ok = cov.pass;
    } catch (const zft::PreconditionViolated& e) {
        cov_error = e.what();
    } catch (const zft::SingularSystem& e) {
        cov_error = e.what();
    }
    if (as_json) {
        json out;
        out["edges"] = nz.edges();
        out["tets"] = nz.tets();
        out["A"] = mat_json(nz.A);
        out["B"] = mat_json(nz.B);
        out["C"] = mat_json(nz.C);
        out["Aprime"] = mat_json(nz.Aprime);
        out["Bprime"] = mat_json(nz.Bprime);
        out["symplectic"] = sym.ok;
        out["quad_rotation"] = red.quad.rotation;
        out["dropped_edge_row"] = nz.edge_names[red.dropped_edge_row];
        out["det_Bred"] = red.detBred.str();
        if (cov_error.empty())
            out["change_of_variables"] = {{"samples", cov.samples},
                                          {"max_residual_change", cov.max_residual_change},
                                          {"max_residual_balance", cov.max_residual_balance},
                                          {"pass", cov.pass}};
        else
            out["change_of_variables"] = {{"error", cov_error}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "edges: " << nz.edges() << "  tets: " << nz.tets() << "\n";
        mat_text(std::cout, "A", nz.A);
        mat_text(std::cout, "B", nz.B);
        mat_text(std::cout, "C", nz.C);
        mat_text(std::cout, "A'", nz.Aprime);
        mat_text(std::cout, "B'", nz.Bprime);
        std::cout << "symplectic: " << (sym.ok ? "ok" : "FAILED") << "\n";
        std::cout << "quad rotation:";
        for (int r : red.quad.rotation) std::cout << " " << r;
        std::cout << "\n";
        std::cout << "dropped edge row: " << nz.edge_names[red.dropped_edge_row] << "\n";
        std::cout << "det Bred: " << red.detBred << "\n";
        if (cov_error.empty())
            std::cout << "change of variables: samples=" << cov.samples
                      << " max_residual_change=" << cov.max_residual_change
                      << " max_residual_balance=" << cov.max_residual_balance << " "
                      << (cov.pass ? "pass" : "FAILED") << "\n";
        else
            std::cout << "change of variables: unavailable (" << cov_error << ")\n";
    }
    return (sym.ok && cov_ok) ? 0 : 1;
}

int run_apoly(const zft::Triangulation& tri, bool as_json, bool invert_negative) {
    auto res = zft::apoly_factor(tri, invert_negative);
    if (as_json) {
        json out;
        out["factor"] = res.factor.str();
        out["invert_negative"] = res.invert_negative;
        out["order"] = json::array();
        for (int v : res.order_used) out["order"].push_back(res.factor.ring->name(v));
        out["discarded"] = json::array();
        for (const auto& [p, why] : res.discarded)
            out["discarded"].push_back({{"factor", p.str()}, {"reason", why}});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "factor: " << res.factor.str() << "\n";
        std::cout << "elimination order:";
        for (int v : res.order_used) std::cout << " " << res.factor.ring->name(v);
        std::cout << "\n";
        for (const auto& [p, why] : res.discarded)
            std::cout << "discarded: " << p.str() << " (" << why << ")\n";
    }
    return 0;
}

int run_reduce(const zft::Triangulation& tri, bool as_json, const zft::ReduceOptions& opts) {
    auto rr = zft::reduce_state_integral(tri, opts);
    if (as_json) {
        json out;
        out["gauge_edge"] = tri.edge_names[rr.gauge_edge];
        out["closed_form"] = rr.form.str();
        out["prefactor"] = json::array();
        auto names = zft::holonomy_symbol_names();
        for (const auto& nf : rr.form.prefactor)
            out["prefactor"].push_back({{"base", nf.base.str()}, {"exponent", nf.exponent.str(names)}});
        out["delta_argument"] = rr.form.delta_argument.str();
        out["steps"] = json::array();
        for (const auto& st : rr.steps)
            out["steps"].push_back({{"delta", st.delta_index},
                                    {"var", rr.rring.ring->name(st.var)},
                                    {"value", st.value.str()}});
        out["trace"] = rr.trace;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "gauge edge: " << tri.edge_names[rr.gauge_edge] << "\n";
        std::cout << "closed form: " << rr.form.str() << "\n";
        for (const auto& line : rr.trace) std::cout << line << "\n";
    }
    return 0;
}

int run_verify(const zft::Triangulation& tri, bool as_json, const zft::ReduceOptions& opts,
               bool invert_negative, std::uint64_t seed, int samples, double tol) {
    auto rr = zft::reduce_state_integral(tri, opts);
    auto ap = zft::apoly_factor(tri, invert_negative);
    bool divides =
        zft::delta_divides_factor(rr.form.delta_argument, rr.form.Lvar, rr.form.Mvar, ap);
    auto report = zft::run_oracle(tri, rr, seed, samples, 1e-10, tol);
    bool pass = divides && report.all_pass();
    if (as_json) {
        json out;
        out["closed_form"] = rr.form.str();
        out["delta_argument"] = rr.form.delta_argument.str();
        out["apoly_factor"] = ap.factor.str();
        out["delta_divides_factor"] = divides;
        json checks = json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"max_error", c.max_error},
                              {"samples", c.samples}});
        out["oracle"] = {{"seed", report.seed}, {"checks", std::move(checks)}};
        out["pass"] = pass;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "closed form: " << rr.form.str() << "\n";
        std::cout << "apoly factor: " << ap.factor.str() << "\n";
        std::cout << "delta divides factor: " << (divides ? "yes" : "NO") << "\n";
        for (const auto& c : report.checks)
            std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAILED")
                      << " (max_error=" << c.max_error << ", samples=" << c.samples << ")\n";
        std::cout << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-type state integral toolkit for one-cusped triangulations"};
    app.require_subcommand(1);

    std::string path, format = "text", order_spec;
    std::uint64_t seed = 0;
    int samples = 100, gauge = -1;
    double tol = 1e-8;
    bool invert_negative = true;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", path, "triangulation file")->required();
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto* c_parse = app.add_subcommand("parse", "parse and summarize a triangulation");
    add_common(c_parse);
    auto* c_nz = app.add_subcommand("nz", "gluing matrices, symplectic test, quad choice");
    add_common(c_nz);
    c_nz->add_option("--samples", samples, "change-of-variables sample count");
    c_nz->add_option("--tol", tol, "numeric tolerance");
    c_nz->add_option("--seed", seed, "rng seed");
    auto* c_apoly = app.add_subcommand("apoly", "eliminant factor of the gluing system");
    add_common(c_apoly);
    c_apoly->add_option("--invert-negative", invert_negative,
                        "negate exponents of negatively oriented tetrahedra");
    auto* c_reduce = app.add_subcommand("reduce", "closed form of the edge-type state integral");
    add_common(c_reduce);
    c_reduce->add_option("--gauge", gauge, "edge index fixed by gauge (-1: last)");
    c_reduce->add_option("--order", order_spec, "elimination order d:e,d:e,...");
    auto* c_verify = app.add_subcommand("verify", "reduce, eliminate, and cross-check numerically");
    add_common(c_verify);
    c_verify->add_option("--gauge", gauge, "edge index fixed by gauge (-1: last)");
    c_verify->add_option("--order", order_spec, "elimination order d:e,d:e,...");
    c_verify->add_option("--invert-negative", invert_negative,
                         "negate exponents of negatively oriented tetrahedra");
    c_verify->add_option("--seed", seed, "rng seed");
    c_verify->add_option("--samples", samples, "oracle sample count");
    c_verify->add_option("--tol", tol, "prefactor comparison tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        auto tri = zft::parse_triangulation(slurp(path));
        bool as_json = format == "json";
        zft::ReduceOptions opts;
        opts.gauge_edge = gauge;
        if (!order_spec.empty()) opts.order = parse_order(order_spec);
        if (c_parse->parsed()) return run_parse(tri, as_json);
        if (c_nz->parsed()) return run_nz(tri, as_json, samples, tol, (unsigned)seed);
        if (c_apoly->parsed()) return run_apoly(tri, as_json, invert_negative);
        if (c_reduce->parsed()) return run_reduce(tri, as_json, opts);
        return run_verify(tri, as_json, opts, invert_negative, seed, samples, tol);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zft::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zft::InadmissibleOrder& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
