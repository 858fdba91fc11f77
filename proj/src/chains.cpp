#include "permutocalc/chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace permutocalc {

void Chain::add(const std::string& cell, long long c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(cell, 0);
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

Chain& Chain::operator+=(const Chain& o) {
    for (const auto& [k, v] : o.terms) add(k, v);
    return *this;
}

Chain Chain::scaled(long long c) const {
    Chain out;
    for (const auto& [k, v] : terms) out.add(k, v * c);
    return out;
}

void Chain::reduce(Ring ring) {
    if (ring == Ring::Z2) {
        for (auto it = terms.begin(); it != terms.end();) {
            it->second = ((it->second % 2) + 2) % 2;
            it = it->second == 0 ? terms.erase(it) : std::next(it);
        }
    } else {
        std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    }
}

bool Chain::zero(Ring ring) const {
    Chain c = *this;
    c.reduce(ring);
    return c.terms.empty();
}

long long Chain::max_norm() const {
    long long m = 0;
    for (const auto& [k, v] : terms) m = std::max(m, std::llabs(v));
    return m;
}

void ChainComplex::add_cell(const std::string& cell, int deg) {
    if (degree.count(cell)) return;
    degree[cell] = deg;
    basis[deg].push_back(cell);
}

void ChainComplex::set_boundary(const std::string& cell, Chain b) {
    b.reduce(ring);
    boundary[cell] = std::move(b);
}

Chain ChainComplex::boundary_of(const Chain& c) const {
    Chain out;
    for (const auto& [cell, coeff] : c.terms) {
        auto it = boundary.find(cell);
        if (it == boundary.end()) continue;
        out += it->second.scaled(coeff);
    }
    out.reduce(ring);
    return out;
}

long long ChainComplex::d_squared_residual() const {
    long long worst = 0;
    for (const auto& [cell, b] : boundary) {
        Chain dd = boundary_of(b);
        dd.reduce(ring);
        worst = std::max(worst, dd.max_norm());
    }
    return worst;
}

std::string pface_id(const PermFace& f) { return "P:" + format_partition(f); }

std::string bface_id(const PcubeFace& f) {
    std::ostringstream os;
    os << "B" << f.n << ":";
    for (size_t i = 0; i < f.deleted.size(); ++i) {
        if (i) os << ',';
        os << f.deleted[i];
    }
    os << ';' << format_pcube(f);
    return os.str();
}

std::string cube_id(const CubeFace& c) {
    std::string s = "I:";
    for (int x : c) s += (x == kFree ? '*' : char('0' + x));
    return s;
}

// The multipermutahedral block-split differential on an ordered block list,
// with a global sign; used for both P-faces and the tails of B-faces.
template <typename Emit>
static void block_split_terms(const std::vector<Block>& blocks, int first_tail,
                              int global, Emit&& emit) {
    int pre = 0;
    for (size_t t = first_tail; t < blocks.size(); ++t) {
        const Block& b = blocks[t];
        int sz = static_cast<int>(b.size());
        if (sz >= 2) {
            for (unsigned mask = 1; mask + 1 < (1u << sz); ++mask) {
                Block U, V;
                for (int i = 0; i < sz; ++i) ((mask >> i) & 1 ? U : V).push_back(b[i]);
                int sgn = -((pre + static_cast<int>(U.size()) - 1) % 2 ? -1 : 1) *
                          shuffle_sign(U, V) * global;
                emit(static_cast<int>(t), U, V, sgn);
            }
        }
        pre += sz - 1;
    }
}

std::vector<std::pair<PermFace, int>> boundary_perm_terms(const PermFace& f) {
    std::vector<std::pair<PermFace, int>> out;
    // global flip so that d(12) = (1|2) - (2|1)
    block_split_terms(f.blocks, 0, -1, [&](int t, const Block& U, const Block& V, int sgn) {
        PermFace g;
        for (int i = 0; i < f.num_blocks(); ++i) {
            if (i == t) {
                g.blocks.push_back(U);
                g.blocks.push_back(V);
            } else {
                g.blocks.push_back(f.blocks[i]);
            }
        }
        out.emplace_back(std::move(g), sgn);
    });
    return out;
}

Chain boundary_perm(const PermFace& f) {
    Chain out;
    for (const auto& [g, s] : boundary_perm_terms(f)) out.add(pface_id(g), s);
    return out;
}

std::vector<std::pair<PcubeFace, int>> boundary_pcube_terms(const PcubeFace& f) {
    std::vector<std::pair<PcubeFace, int>> out;
    constexpr int kGlobal = -1;   // orients B_n compatibly with P_n and I^n
    Block hs = f.head_survivors();
    int m = static_cast<int>(hs.size());
    // d_i terms
    for (int i = 1; i <= m; ++i) {
        int sgn = kGlobal * ((i + 1) % 2 ? -1 : 1);
        out.emplace_back(face_op_i(i, f), sgn);
    }
    // d_{A]M} terms over local head splits
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        Block Ml, Al{0};
        for (int i = 0; i < m; ++i) ((mask >> i) & 1 ? Ml : Al).push_back(i + 1);
        int sgn = kGlobal * (static_cast<int>(Al.size()) % 2 ? -1 : 1) * shuffle_sign(Al, Ml);
        out.emplace_back(face_op_am(Al, Ml, f), sgn);
    }
    // fiber differential with the (-1)^m base sign
    int base = (m % 2 ? -1 : 1) * kGlobal;
    block_split_terms(f.blocks, 1, base, [&](int t, const Block& U, const Block& V, int sgn) {
        PcubeFace g{f.n, f.deleted, {}};
        for (int i = 0; i < static_cast<int>(f.blocks.size()); ++i) {
            if (i == t) {
                g.blocks.push_back(U);
                g.blocks.push_back(V);
            } else {
                g.blocks.push_back(f.blocks[i]);
            }
        }
        out.emplace_back(std::move(g), sgn);
    });
    return out;
}

Chain boundary_pcube(const PcubeFace& f) {
    Chain out;
    for (const auto& [g, s] : boundary_pcube_terms(f)) out.add(bface_id(g), s);
    return out;
}

int cube_dim(const CubeFace& c) {
    int d = 0;
    for (int x : c) d += (x == kFree);
    return d;
}

std::vector<std::pair<CubeFace, int>> boundary_cube_terms(const CubeFace& c) {
    std::vector<std::pair<CubeFace, int>> out;
    int i = 0;
    for (size_t pos = 0; pos < c.size(); ++pos) {
        if (c[pos] != kFree) continue;
        ++i;
        int sgn = (i - 1) % 2 ? -1 : 1;
        CubeFace g0 = c, g1 = c;
        g0[pos] = 0;
        g1[pos] = 1;
        out.emplace_back(std::move(g0), sgn);
        out.emplace_back(std::move(g1), -sgn);
    }
    return out;
}

Chain boundary_cube(const CubeFace& c) {
    Chain out;
    for (const auto& [g, s] : boundary_cube_terms(c)) out.add(cube_id(g), s);
    return out;
}

std::vector<CubeFace> cube_faces_all(int n) {
    std::vector<CubeFace> out;
    CubeFace cur(n, 0);
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
        long x = code;
        for (int i = 0; i < n; ++i) {
            int d = x % 3;
            x /= 3;
            cur[i] = d == 2 ? kFree : d;
        }
        out.push_back(cur);
    }
    return out;
}

ChainComplex complex_P(int n, Ring ring) {
    ChainComplex C;
    C.ring = ring;
    for (const auto& f : perm_faces(n)) {
        C.add_cell(pface_id(f), pface_dim(f));
        C.set_boundary(pface_id(f), boundary_perm(f));
    }
    return C;
}

ChainComplex complex_B(int n, Ring ring) {
    ChainComplex C;
    C.ring = ring;
    for (const auto& f : pcube_faces(n)) {
        C.add_cell(bface_id(f), f.dim());
        C.set_boundary(bface_id(f), boundary_pcube(f));
    }
    return C;
}

ChainComplex complex_I(int n, Ring ring) {
    ChainComplex C;
    C.ring = ring;
    for (const auto& c : cube_faces_all(n)) {
        C.add_cell(cube_id(c), cube_dim(c));
        C.set_boundary(cube_id(c), boundary_cube(c));
    }
    return C;
}

std::string tensor_id(const std::string& a, const std::string& b) {
    return a + " (x) " + b;
}

ChainComplex tensor(const ChainComplex& C, const ChainComplex& D) {
    if (C.ring != D.ring) throw std::invalid_argument("tensor: ring mismatch");
    ChainComplex T;
    T.ring = C.ring;
    for (const auto& [da, cellsA] : C.basis) {
        for (const auto& [db, cellsB] : D.basis) {
            for (const auto& a : cellsA) {
                for (const auto& b : cellsB) {
                    T.add_cell(tensor_id(a, b), da + db);
                    Chain bd;
                    if (auto it = C.boundary.find(a); it != C.boundary.end())
                        for (const auto& [a2, ca] : it->second.terms)
                            bd.add(tensor_id(a2, b), ca);
                    long long koszul = da % 2 ? -1 : 1;
                    if (auto it = D.boundary.find(b); it != D.boundary.end())
                        for (const auto& [b2, cb] : it->second.terms)
                            bd.add(tensor_id(a, b2), koszul * cb);
                    T.set_boundary(tensor_id(a, b), std::move(bd));
                }
            }
        }
    }
    return T;
}

long long chain_map_residual(const std::function<Chain(const std::string&)>& F,
                             const ChainComplex& C, const ChainComplex& D,
                             int deg_lo, int deg_hi) {
    long long worst = 0;
    for (const auto& [deg, cells] : C.basis) {
        if (deg < deg_lo || deg > deg_hi) continue;
        for (const auto& cell : cells) {
            Chain lhs = D.boundary_of(F(cell));
            Chain rhs;
            if (auto it = C.boundary.find(cell); it != C.boundary.end())
                for (const auto& [c2, k] : it->second.terms) rhs += F(c2).scaled(k);
            Chain diff = lhs;
            diff += rhs.scaled(-1);
            diff.reduce(C.ring);
            worst = std::max(worst, diff.max_norm());
        }
    }
    return worst;
}

std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<long long> inv;
    size_t r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // find a nonzero pivot of minimal absolute value
        size_t pr = rows, pc = cols;
        long long best = 0;
        for (size_t i = r0; i < rows; ++i)
            for (size_t j = c0; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[r0], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
        bool again = false;
        for (size_t i = r0 + 1; i < rows; ++i) {
            if (m[i][c0] == 0) continue;
            long long q = m[i][c0] / m[r0][c0];
            for (size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
            if (m[i][c0] != 0) again = true;
        }
        for (size_t j = c0 + 1; j < cols; ++j) {
            if (m[r0][j] == 0) continue;
            long long q = m[r0][j] / m[r0][c0];
            for (size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
            if (m[r0][j] != 0) again = true;
        }
        if (again) continue;   // pivot changed; redo this corner
        inv.push_back(std::llabs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    // enforce divisibility of invariant factors
    for (size_t i = 0; i + 1 < inv.size(); ++i) {
        for (size_t j = i + 1; j < inv.size(); ++j) {
            long long a = inv[i], b = inv[j];
            long long g = std::__gcd(a, b);
            long long l = a / g * b;
            inv[i] = g;
            inv[j] = l;
        }
    }
    return inv;
}

std::map<int, HomologyGroup> homology(const ChainComplex& C, int deg_lo, int deg_hi) {
    auto matrix_of = [&](int k) {
        std::vector<std::string> dom = C.basis.count(k) ? C.basis.at(k) : std::vector<std::string>{};
        std::vector<std::string> cod = C.basis.count(k - 1) ? C.basis.at(k - 1) : std::vector<std::string>{};
        std::map<std::string, size_t> idx;
        for (size_t i = 0; i < cod.size(); ++i) idx[cod[i]] = i;
        std::vector<std::vector<long long>> m(cod.size(), std::vector<long long>(dom.size(), 0));
        for (size_t j = 0; j < dom.size(); ++j) {
            auto it = C.boundary.find(dom[j]);
            if (it == C.boundary.end()) continue;
            for (const auto& [cell, coeff] : it->second.terms) {
                auto f = idx.find(cell);
                if (f != idx.end()) m[f->second][j] = coeff;
            }
        }
        return m;
    };
    std::map<int, HomologyGroup> out;
    for (int k = deg_lo; k <= deg_hi; ++k) {
        size_t dim_k = C.basis.count(k) ? C.basis.at(k).size() : 0;
        auto snf_k = smith_normal_form(matrix_of(k));
        auto snf_k1 = smith_normal_form(matrix_of(k + 1));
        size_t rank_k = 0, rank_k1 = 0;
        for (long long v : snf_k)
            if (v != 0) ++rank_k;
        for (long long v : snf_k1)
            if (v != 0) ++rank_k1;
        HomologyGroup g;
        if (C.ring == Ring::Z2) {
            // recompute ranks mod 2
            auto rank2 = [&](std::vector<std::vector<long long>> m) {
                size_t r = 0;
                size_t rows = m.size(), cols = rows ? m[0].size() : 0;
                size_t lead = 0;
                for (size_t j = 0; j < cols && lead < rows; ++j) {
                    size_t piv = lead;
                    while (piv < rows && ((m[piv][j] % 2) + 2) % 2 == 0) ++piv;
                    if (piv == rows) continue;
                    std::swap(m[piv], m[lead]);
                    for (size_t i = 0; i < rows; ++i) {
                        if (i != lead && ((m[i][j] % 2) + 2) % 2 == 1)
                            for (size_t jc = 0; jc < cols; ++jc) m[i][jc] = (m[i][jc] + m[lead][jc]) % 2;
                    }
                    ++lead;
                    ++r;
                }
                return r;
            };
            size_t r_k = rank2(matrix_of(k));
            size_t r_k1 = rank2(matrix_of(k + 1));
            g.betti = static_cast<int>(dim_k - r_k - r_k1);
        } else {
            g.betti = static_cast<int>(dim_k - rank_k - rank_k1);
            for (long long v : snf_k1)
                if (v > 1) g.torsion.push_back(v);
        }
        out[k] = g;
    }
    return out;
}

std::string export_boundary_triplets(const ChainComplex& C, int k) {
    std::ostringstream os;
    if (!C.basis.count(k)) return "";
    std::vector<std::string> cod = C.basis.count(k - 1) ? C.basis.at(k - 1) : std::vector<std::string>{};
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < cod.size(); ++i) idx[cod[i]] = i;
    const auto& dom = C.basis.at(k);
    for (size_t j = 0; j < dom.size(); ++j) {
        auto it = C.boundary.find(dom[j]);
        if (it == C.boundary.end()) continue;
        for (const auto& [cell, coeff] : it->second.terms)
            os << idx.at(cell) << ' ' << j << ' ' << coeff << '\n';
    }
    return os.str();
}

}  // namespace permutocalc
