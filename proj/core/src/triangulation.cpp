#include "zft/triangulation.hpp"
#include <map>
#include <sstream>

namespace zft {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line.substr(0, line.find('#')));
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

Int parse_int(const std::string& t, int ln) {
    try {
        return Int(t);
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + t + "'", ln);
    }
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    auto next = [&]() -> std::vector<std::string> {
        while (std::getline(is, line)) {
            ++ln;
            auto toks = tokenize(line);
            if (!toks.empty()) return toks;
        }
        return {};
    };

    auto toks = next();
    if (toks.size() != 2 || toks[0] != "zft" || toks[1] != "1")
        throw ParseError("expected header 'zft 1'", ln);
    toks = next();
    if (toks.size() != 2 || toks[0] != "tets")
        throw ParseError("expected 'tets N'", ln);
    int n = 0;
    try {
        n = std::stoi(toks[1]);
    } catch (const std::exception&) {
        throw ParseError("bad tetrahedron count '" + toks[1] + "'", ln);
    }
    if (n <= 0) throw ParseError("tetrahedron count must be positive", ln);

    Triangulation tri;
    tri.tets.resize(n);
    std::vector<bool> seen(n, false);
    std::map<std::string, int> edge_ix;

    for (toks = next(); !toks.empty(); toks = next()) {
        if (toks[0] == "tet") {
            if (toks.size() != 2 + 1 + SLOT_COUNT)
                throw ParseError("tet line needs index, sign and 6 edge labels", ln);
            int j = 0;
            try {
                j = std::stoi(toks[1]);
            } catch (const std::exception&) {
                throw ParseError("bad tet index '" + toks[1] + "'", ln);
            }
            if (j < 0 || j >= n) throw ParseError("tet index out of range", ln);
            if (seen[j]) throw ParseError("duplicate tet index", ln);
            seen[j] = true;
            Tetrahedron& t = tri.tets[j];
            t.index = j;
            if (toks[2] == "+") t.sign = +1;
            else if (toks[2] == "-") t.sign = -1;
            else throw ParseError("sign must be '+' or '-'", ln);
            for (int s = 0; s < SLOT_COUNT; ++s) {
                const std::string& name = toks[3 + s];
                auto it = edge_ix.find(name);
                if (it == edge_ix.end()) {
                    it = edge_ix.emplace(name, (int)tri.edge_names.size()).first;
                    tri.edge_names.push_back(name);
                }
                t.slots[s] = it->second;
            }
        } else if (toks[0] == "meridian" || toks[0] == "longitude") {
            HolonomyRow row;
            row.name = toks[0];
            if ((int)toks.size() != 1 + 3 * n)
                throw ParseError(row.name + " row needs exactly " + std::to_string(3 * n) +
                                     " coefficients",
                                 ln);
            for (size_t i = 1; i < toks.size(); ++i) row.coeff.push_back(parse_int(toks[i], ln));
            (row.name == "meridian" ? tri.meridian : tri.longitude) = std::move(row);
        } else {
            throw ParseError("unknown directive '" + toks[0] + "'", ln);
        }
    }

    for (int j = 0; j < n; ++j)
        if (!seen[j]) throw ParseError("missing tet " + std::to_string(j), ln);
    if (tri.meridian.coeff.empty()) throw ParseError("missing meridian row", ln);
    if (tri.longitude.coeff.empty()) throw ParseError("missing longitude row", ln);
    if (tri.edge_count() != n)
        throw ParseError("edge class count " + std::to_string(tri.edge_count()) +
                             " must equal tetrahedron count " + std::to_string(n) +
                             " (one-cusped input required)",
                         ln);
    return tri;
}

std::string serialize_triangulation(const Triangulation& tri) {
    std::ostringstream os;
    os << "zft 1\n";
    os << "tets " << tri.tet_count() << "\n";
    for (const auto& t : tri.tets) {
        os << "tet " << t.index << " " << (t.sign > 0 ? "+" : "-");
        for (int s = 0; s < SLOT_COUNT; ++s) os << " " << tri.edge_names[t.slots[s]];
        os << "\n";
    }
    auto row = [&](const HolonomyRow& r) {
        os << r.name;
        for (const Int& c : r.coeff) os << " " << c;
        os << "\n";
    };
    row(tri.meridian);
    row(tri.longitude);
    return os.str();
}

std::vector<int> edge_valences(const Triangulation& tri) {
    std::vector<int> v(tri.edge_count(), 0);
    for (const auto& t : tri.tets)
        for (int s = 0; s < SLOT_COUNT; ++s) ++v[t.slots[s]];
    return v;
}

std::pair<QuotientMonomial, QuotientMonomial> tet_quotient_monomials(const Triangulation& tri,
                                                                     int j) {
    const auto& sl = tri.tets.at(j).slots;
    QuotientMonomial x, z;
    x.exponents.assign(tri.edge_count(), 0);
    z.exponents.assign(tri.edge_count(), 0);
    // slots: 0=01, 1=02, 2=03, 3=12, 4=13, 5=23
    x.exponents[sl[1]] += 1;
    x.exponents[sl[4]] += 1;
    x.exponents[sl[2]] -= 1;
    x.exponents[sl[3]] -= 1;
    z.exponents[sl[0]] += 1;
    z.exponents[sl[5]] += 1;
    z.exponents[sl[1]] -= 1;
    z.exponents[sl[4]] -= 1;
    return {x, z};
}

}  // namespace zft
