#include "permutocalc/cubical.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permutocalc {

std::string cub_id(const CubCell& c) {
    std::ostringstream os;
    for (int e : c.etas) os << "eta" << e << ".";
    os << c.base;
    return os.str();
}

int CubicalSet::dim(const CubCell& c) const {
    auto it = nd_dim.find(c.base);
    if (it == nd_dim.end()) throw std::invalid_argument("unknown cell: " + c.base);
    return it->second + static_cast<int>(c.etas.size());
}

CubCell CubicalSet::eta(int j, const CubCell& c) const {
    int n = dim(c);
    if (j < 1 || j > n + 1) throw std::invalid_argument("eta index out of range");
    // new op becomes outermost, then bubble rightward to restore the canonical
    // strictly decreasing order using eta_a eta_b = eta_{b+1} eta_a (a <= b)
    std::vector<int> etas = c.etas;
    etas.insert(etas.begin(), j);
    for (size_t i = 0; i + 1 < etas.size(); ++i) {
        if (etas[i] <= etas[i + 1]) {
            int a = etas[i], b = etas[i + 1];
            etas[i] = b + 1;
            etas[i + 1] = a;
        } else {
            break;
        }
    }
    return {c.base, etas};
}

CubCell CubicalSet::face(int eps, int i, const CubCell& c) const {
    if (c.etas.empty()) {
        const auto& table = eps == 0 ? d0 : d1;
        auto it = table.find(c.base);
        if (it == table.end()) throw std::invalid_argument("no face table for " + c.base);
        if (i < 1 || i > static_cast<int>(it->second.size()))
            throw std::invalid_argument("face index out of range");
        return it->second[i - 1];
    }
    int j = c.etas.front();   // outermost degeneracy
    CubCell inner{c.base, {c.etas.begin() + 1, c.etas.end()}};
    if (i == j) return inner;                                   // d_i eta_i = id
    if (i < j) return eta(j - 1, face(eps, i, inner));          // d_i eta_j = eta_{j-1} d_i
    return eta(j, face(eps, i - 1, inner));                     // i > j
}

CubCell CubicalSet::face_set(int eps, const Block& idx, const CubCell& c) const {
    CubCell cur = c;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) cur = face(eps, *it, cur);
    return cur;
}

std::vector<CubCell> CubicalSet::nondegenerate_cells(int d) const {
    std::vector<CubCell> out;
    for (const auto& [name, nd] : nd_dim)
        if (nd == d) out.push_back({name, {}});
    return out;
}

std::vector<CubCell> CubicalSet::cells(int d) const {
    if (d < 0) return {};
    std::vector<CubCell> out = nondegenerate_cells(d);
    for (const auto& c : cells(d - 1))
        for (int j = 1; j <= d; ++j) out.push_back(eta(j, c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::string& CubicalSet::base_point() const {
    for (const auto& [name, nd] : nd_dim)
        if (nd == 0) return name;
    throw std::logic_error("no base point");
}

CubCell CubicalSet::degenerate_point(int d) const {
    CubCell c{base_point(), {}};
    for (int j = 1; j <= d; ++j) c = eta(j, c);
    return c;
}

long CubicalSet::validate(int max_dim) const {
    long checked = 0;
    for (int d = 0; d <= max_dim; ++d) {
        for (const auto& c : cells(d)) {
            int n = dim(c);
            for (int j = 2; j <= n; ++j) {
                for (int i = 1; i < j; ++i) {
                    for (int e1 : {0, 1}) {
                        for (int e2 : {0, 1}) {
                            auto lhs = face(e1, i, face(e2, j, c));
                            auto rhs = face(e2, j - 1, face(e1, i, c));
                            if (!(lhs == rhs))
                                throw std::logic_error("cubical identity failed at " + cub_id(c));
                            ++checked;
                        }
                    }
                }
            }
            for (int j = 1; j <= n + 1; ++j) {
                auto ec = eta(j, c);
                for (int e : {0, 1}) {
                    if (!(face(e, j, ec) == c))
                        throw std::logic_error("eta face identity failed at " + cub_id(c));
                    ++checked;
                }
            }
        }
    }
    if (one_reduced) {
        if (cells(0).size() != 1 || cells(1).size() != 1)
            throw std::logic_error("not one-reduced");
    }
    return checked;
}

CubicalSet fixture_cube2() {
    CubicalSet q;
    q.name = "cube2";
    q.one_reduced = true;
    q.nd_dim = {{"*", 0}, {"c", 2}};
    CubCell deg1{"*", {1}};
    q.d0["c"] = {deg1, deg1};
    q.d1["c"] = {deg1, deg1};
    return q;
}

CubicalSet fixture_synthetic23() {
    CubicalSet q;
    q.name = "synthetic23";
    q.one_reduced = true;
    q.nd_dim = {{"*", 0}, {"x", 2}, {"y", 3}};
    CubCell deg1{"*", {1}};
    CubCell deg2{"*", {2, 1}};
    q.d0["x"] = {deg1, deg1};
    q.d1["x"] = {deg1, deg1};
    q.d0["y"] = {{"x", {}}, deg2, deg2};
    q.d1["y"] = {deg2, {"x", {}}, deg2};
    return q;
}

CubicalSet fixture_by_name(const std::string& name) {
    if (name == "cube2") return fixture_cube2();
    if (name == "synthetic23") return fixture_synthetic23();
    throw std::invalid_argument("unknown fixture: " + name);
}

static CubCell parse_cell_ref(const CubicalSet& q, const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        int d = std::stoi(s.substr(1));
        return q.degenerate_point(d);
    }
    return {s, {}};
}

CubicalSet cubical_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CubicalSet q;
    q.name = j.value("name", "custom");
    q.one_reduced = j.value("one_reduced", true);
    for (auto& [deg, arr] : j.at("cells").items())
        for (auto& nm : arr) q.nd_dim[nm.get<std::string>()] = std::stoi(deg);
    for (const std::string key : {"d0", "d1"}) {
        if (!j.contains(key)) continue;
        for (auto& [nm, arr] : j.at(key).items()) {
            std::vector<CubCell> faces;
            for (auto& ref : arr) faces.push_back(parse_cell_ref(q, ref.get<std::string>()));
            (key == "d0" ? q.d0 : q.d1)[nm] = faces;
        }
    }
    return q;
}

std::string cubical_to_json(const CubicalSet& q) {
    nlohmann::json j;
    j["name"] = q.name;
    j["one_reduced"] = q.one_reduced;
    for (const auto& [nm, d] : q.nd_dim) j["cells"][std::to_string(d)].push_back(nm);
    auto enc = [&](const CubCell& c) -> std::string {
        if (c.degenerate()) return "@" + std::to_string(q.dim(c));
        return c.base;
    };
    for (const auto& [nm, fs] : q.d0)
        for (const auto& c : fs) j["d0"][nm].push_back(enc(c));
    for (const auto& [nm, fs] : q.d1)
        for (const auto& c : fs) j["d1"][nm].push_back(enc(c));
    return j.dump(2);
}

}  // namespace permutocalc
