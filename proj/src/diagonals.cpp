#include "permutocalc/diagonals.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace permutocalc {

std::vector<Block> decreasing_runs(const Word& w) {
    std::vector<Block> runs;
    for (int x : w) {
        if (runs.empty() || x > runs.back().back())
            runs.push_back({x});
        else
            runs.back().push_back(x);
    }
    for (auto& r : runs) std::sort(r.begin(), r.end());
    return runs;
}

std::vector<Block> increasing_runs(const Word& w) {
    std::vector<Block> runs;
    for (int x : w) {
        if (runs.empty() || x < runs.back().back())
            runs.push_back({x});
        else
            runs.back().push_back(x);
    }
    return runs;   // already ascending within runs
}

std::pair<PermFace, PermFace> scp_P(const Word& x) {
    PermFace u{decreasing_runs(x)};
    PermFace v{increasing_runs(x)};
    return {u, v};
}

std::pair<PcubeFace, PcubeFace> scp_B(int n, const PcubeVertex& x) {
    if (x.word.empty()) {
        PcubeFace u = pcube_top(n);
        PcubeFace v{n, iota_set(n), {{0}}};
        return {u, v};
    }
    auto dr = decreasing_runs(x.word);
    auto ir = increasing_runs(x.word);
    PcubeFace u{n, {}, {set_union({0}, x.deleted)}};
    for (auto& r : dr) u.blocks.push_back(r);
    PcubeFace v{n, x.deleted, {set_union({0}, ir[0])}};
    for (size_t i = 1; i < ir.size(); ++i) v.blocks.push_back(ir[i]);
    return {u, v};
}

std::vector<std::vector<Block>> r_orbit(const std::vector<Block>& blocks, bool head0) {
    std::set<std::vector<Block>> cur{blocks};
    int l = static_cast<int>(blocks.size()) - 1;
    for (int i = 0; i < l; ++i) {
        std::set<std::vector<Block>> next;
        for (const auto& p : cur) {
            next.insert(p);
            const Block& A = p[i];
            const Block& B = p[i + 1];
            Block cand;
            for (int x : A)
                if (!(head0 && i == 0 && x == 0) && x > B.back()) cand.push_back(x);
            int cn = static_cast<int>(cand.size());
            for (unsigned mask = 1; mask < (1u << cn); ++mask) {
                Block M;
                for (int j = 0; j < cn; ++j)
                    if ((mask >> j) & 1) M.push_back(cand[j]);
                if (M.size() >= A.size()) continue;   // proper subsets only
                std::vector<Block> q = p;
                q[i] = set_minus(A, M);
                q[i + 1] = set_union(B, M);
                next.insert(std::move(q));
            }
        }
        cur = std::move(next);
    }
    return {cur.begin(), cur.end()};
}

std::vector<std::vector<Block>> l_orbit(const std::vector<Block>& blocks) {
    std::set<std::vector<Block>> cur{blocks};
    int l = static_cast<int>(blocks.size()) - 1;
    for (int j = l; j >= 1; --j) {
        std::set<std::vector<Block>> next;
        for (const auto& p : cur) {
            next.insert(p);
            const Block& A = p[j - 1];
            const Block& B = p[j];
            Block cand;
            for (int x : B)
                if (x > A.back()) cand.push_back(x);
            int cn = static_cast<int>(cand.size());
            for (unsigned mask = 1; mask < (1u << cn); ++mask) {
                Block N;
                for (int t = 0; t < cn; ++t)
                    if ((mask >> t) & 1) N.push_back(cand[t]);
                if (N.size() >= B.size()) continue;
                std::vector<Block> q = p;
                q[j - 1] = set_union(A, N);
                q[j] = set_minus(B, N);
                next.insert(std::move(q));
            }
        }
        cur = std::move(next);
    }
    return {cur.begin(), cur.end()};
}

StreamP orthogonal_stream_P(const Word& x) {
    auto [u0, v0] = scp_P(x);
    StreamP s;
    s.u0 = u0;
    s.v0 = v0;
    for (auto& b : r_orbit(u0.blocks, false)) s.U.push_back({b});
    for (auto& b : l_orbit(v0.blocks)) s.V.push_back({b});
    return s;
}

StreamB orthogonal_stream_B(int n, const PcubeVertex& x) {
    auto [u0, v0] = scp_B(n, x);
    StreamB s;
    s.u0 = u0;
    s.v0 = v0;
    for (auto& b : r_orbit(u0.blocks, true)) s.U.push_back({n, u0.deleted, b});
    for (auto& b : l_orbit(v0.blocks)) s.V.push_back({n, v0.deleted, b});
    return s;
}

int sgn1_of(const std::vector<Block>& blocks) {
    std::vector<int> word;
    for (const auto& b : blocks) word.insert(word.end(), b.begin(), b.end());
    long e1 = eps1_weight(blocks);
    return (e1 % 2 ? -1 : 1) * perm_sign(word);
}

int rsgn_of(const std::vector<Block>& blocks) {
    long sq = 0, tot = 0;
    for (const auto& b : blocks) {
        sq += static_cast<long>(b.size()) * static_cast<long>(b.size());
        tot += static_cast<long>(b.size());
    }
    return ((sq - tot) / 2) % 2 ? -1 : 1;
}

static int binom2_parity_sign(long k) { return (k * (k - 1) / 2) % 2 ? -1 : 1; }

int pair_sign_P(const PermFace& u, const PermFace& v, const PermFace& ux) {
    return binom2_parity_sign(v.num_blocks()) * rsgn_of(ux.blocks) * sgn1_of(u.blocks) *
           sgn1_of(v.blocks) * sgn1_of(ux.blocks);
}

int pair_sign_B(const PcubeFace& u, const PcubeFace& v, const PcubeFace& ux) {
    std::vector<Block> vt = v.blocks;
    for (int x : v.deleted) vt.push_back({x});
    return binom2_parity_sign(static_cast<long>(v.blocks.size())) * rsgn_of(ux.blocks) *
           sgn1_of(u.blocks) * sgn1_of(vt) * sgn1_of(ux.blocks);
}

// ---- top-cell diagonals ------------------------------------------------------

namespace {

template <typename FaceT>
using Terms = std::map<std::pair<FaceT, FaceT>, long long>;

const Terms<PermFace>& top_diag_P(int k) {
    static std::map<int, Terms<PermFace>> memo;
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    Terms<PermFace> out;
    Word base = iota_set(k);
    std::sort(base.begin(), base.end());
    do {
        auto s = orthogonal_stream_P(base);
        for (const auto& u : s.U)
            for (const auto& v : s.V) {
                long long c = pair_sign_P(u, v, s.u0);
                auto key = std::make_pair(u, v);
                out[key] += c;
                if (out[key] == 0) out.erase(key);
            }
    } while (std::next_permutation(base.begin(), base.end()));
    return memo.emplace(k, std::move(out)).first->second;
}

const Terms<PcubeFace>& top_diag_B(int m) {
    static std::map<int, Terms<PcubeFace>> memo;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    Terms<PcubeFace> out;
    for (const auto& x : pcube_vertices(pcube_top(m))) {
        auto s = orthogonal_stream_B(m, x);
        for (const auto& u : s.U)
            for (const auto& v : s.V) {
                long long c = pair_sign_B(u, v, s.u0);
                auto key = std::make_pair(u, v);
                out[key] += c;
                if (out[key] == 0) out.erase(key);
            }
    }
    return memo.emplace(m, std::move(out)).first->second;
}

PermFace relabel_pface(const PermFace& local, const Block& ground) {
    PermFace out;
    for (const auto& b : local.blocks) out.blocks.push_back(index_unmap(ground, b));
    return out;
}

// Lift a local B_m face to global labels: local head labels 1..m map onto the
// head survivors; local deletions join the ambient deleted set.
PcubeFace relabel_bface(const PcubeFace& local, int n, const Block& base_deleted,
                        const Block& head_ground) {
    PcubeFace out{n, base_deleted, {}};
    for (int x : local.deleted) out.deleted = set_union(out.deleted, {head_ground[x - 1]});
    for (size_t i = 0; i < local.blocks.size(); ++i) {
        Block g;
        for (int x : local.blocks[i]) g.push_back(x == 0 ? 0 : head_ground[x - 1]);
        std::sort(g.begin(), g.end());
        out.blocks.push_back(g);
    }
    return out;
}

// Koszul fold of factor diagonals; dims via the supplied functor.
template <typename FaceT, typename DimF>
struct Fold {
    std::vector<std::pair<std::vector<FaceT>, std::vector<FaceT>>> keys;
    std::vector<long long> coeffs;
    DimF dim;

    explicit Fold(DimF d) : dim(d) { keys.push_back({{}, {}}); coeffs.push_back(1); }

    template <typename TermsT>
    void append(const TermsT& factor_terms) {
        decltype(keys) nk;
        std::vector<long long> nc;
        for (size_t i = 0; i < keys.size(); ++i) {
            int dim_rights = 0;
            for (const auto& f : keys[i].second) dim_rights += dim(f);
            for (const auto& [uv, c] : factor_terms) {
                long long sgn = (static_cast<long long>(dim_rights) * dim(uv.first)) % 2 ? -1 : 1;
                auto k = keys[i];
                k.first.push_back(uv.first);
                k.second.push_back(uv.second);
                nk.push_back(std::move(k));
                nc.push_back(coeffs[i] * c * sgn);
            }
        }
        keys = std::move(nk);
        coeffs = std::move(nc);
    }
};

}  // namespace

const std::vector<PTerm>& os_terms_P(int m) {
    static std::map<int, std::vector<PTerm>> memo;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<PTerm> out;
    for (const auto& [uv, c] : top_diag_P(m)) out.push_back({uv.first, uv.second, c});
    return memo.emplace(m, std::move(out)).first->second;
}

const std::vector<BTerm>& os_terms_B(int m) {
    static std::map<int, std::vector<BTerm>> memo;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<BTerm> out;
    for (const auto& [uv, c] : top_diag_B(m)) out.push_back({uv.first, uv.second, c});
    return memo.emplace(m, std::move(out)).first->second;
}

std::vector<PTerm> diagonal_P(const PermFace& f) {
    auto dim = [](const PermFace& g) { return pface_dim(g); };
    Fold<PermFace, decltype(dim)> fold(dim);
    for (const auto& b : f.blocks) {
        Terms<PermFace> local;
        for (const auto& [uv, c] : top_diag_P(static_cast<int>(b.size())))
            local[{relabel_pface(uv.first, b), relabel_pface(uv.second, b)}] = c;
        fold.append(local);
    }
    Terms<PermFace> combined;
    for (size_t i = 0; i < fold.keys.size(); ++i) {
        PermFace L, R;
        for (const auto& g : fold.keys[i].first)
            for (const auto& b : g.blocks) L.blocks.push_back(b);
        for (const auto& g : fold.keys[i].second)
            for (const auto& b : g.blocks) R.blocks.push_back(b);
        auto key = std::make_pair(L, R);
        combined[key] += fold.coeffs[i];
        if (combined[key] == 0) combined.erase(key);
    }
    std::vector<PTerm> out;
    for (const auto& [uv, c] : combined) out.push_back({uv.first, uv.second, c});
    return out;
}

std::vector<BTerm> diagonal_B(const PcubeFace& f) {
    auto s = cell_structure(f);
    // the head part folds first, then the permutahedral tails
    struct Part {
        PcubeFace l, r;
    };
    Terms<PcubeFace> head;
    for (const auto& [uv, c] : top_diag_B(s.base_m))
        head[{relabel_bface(uv.first, f.n, f.deleted, s.head_ground),
              relabel_bface(uv.second, f.n, f.deleted, s.head_ground)}] = c;
    auto dimb = [](const PcubeFace& g) { return g.dim(); };
    // fold over pcube faces directly: represent P-factor faces as appended tails
    std::vector<std::pair<std::vector<std::vector<Block>>, std::vector<std::vector<Block>>>> keys;
    std::vector<long long> coeffs;
    std::vector<std::pair<PcubeFace, PcubeFace>> heads;
    std::vector<long long> hc;
    for (const auto& [uv, c] : head) {
        heads.push_back(uv);
        hc.push_back(c);
    }
    struct Acc {
        PcubeFace L, R;
        long long c;
    };
    // dimension of a partial face built so far: only its own blocks count
    auto partial_dim = [](const PcubeFace& g) {
        int covered = 0;
        for (const auto& b : g.blocks) covered += static_cast<int>(b.size());
        return (covered - 1) - (static_cast<int>(g.blocks.size()) - 1);
    };
    std::vector<Acc> acc;
    for (size_t i = 0; i < heads.size(); ++i) acc.push_back({heads[i].first, heads[i].second, hc[i]});
    for (const auto& ground : s.factor_grounds) {
        Terms<PermFace> local;
        for (const auto& [uv, c] : top_diag_P(static_cast<int>(ground.size())))
            local[{relabel_pface(uv.first, ground), relabel_pface(uv.second, ground)}] = c;
        std::vector<Acc> next;
        for (const auto& a : acc) {
            int dim_r = partial_dim(a.R);
            for (const auto& [uv, c] : local) {
                long long sgn = (static_cast<long long>(dim_r) * pface_dim(uv.first)) % 2 ? -1 : 1;
                Acc b = a;
                for (const auto& blk : uv.first.blocks) b.L.blocks.push_back(blk);
                for (const auto& blk : uv.second.blocks) b.R.blocks.push_back(blk);
                b.c *= c * sgn;
                next.push_back(std::move(b));
            }
        }
        acc = std::move(next);
    }
    Terms<PcubeFace> combined;
    for (const auto& a : acc) {
        auto key = std::make_pair(a.L, a.R);
        combined[key] += a.c;
        if (combined[key] == 0) combined.erase(key);
    }
    std::vector<BTerm> out;
    for (const auto& [uv, c] : combined) out.push_back({uv.first, uv.second, c});
    return out;
}

std::vector<CubeTerm> serre_diagonal(const CubeFace& c) {
    std::vector<int> free;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] == kFree) free.push_back(static_cast<int>(i));
    int n = static_cast<int>(free.size());
    std::vector<CubeTerm> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Block la, lb;
        CubeFace left = c, right = c;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                la.push_back(i + 1);
                right[free[i]] = 1;   // d^1 side
            } else {
                lb.push_back(i + 1);
                left[free[i]] = 0;    // d^0 side
            }
        }
        out.push_back({left, right, shuffle_sign(la, lb)});
    }
    return out;
}

Chain diagonal_P_chain(const PermFace& f) {
    Chain c;
    for (const auto& t : diagonal_P(f)) c.add(tensor_id(pface_id(t.left), pface_id(t.right)), t.coeff);
    return c;
}

Chain diagonal_B_chain(const PcubeFace& f) {
    Chain c;
    for (const auto& t : diagonal_B(f)) c.add(tensor_id(bface_id(t.left), bface_id(t.right)), t.coeff);
    return c;
}

Chain serre_diagonal_chain(const CubeFace& f) {
    Chain c;
    for (const auto& t : serre_diagonal(f)) c.add(tensor_id(cube_id(t.left), cube_id(t.right)), t.coeff);
    return c;
}

// ---- degree-aware pushforwards ----------------------------------------------

namespace {

std::optional<CubeFace> rho_image(const PermFace& f) {
    auto vs = pface_vertices(f);
    int n = pface_n(f);
    CubeFace c(n - 1, kFree);
    std::vector<std::vector<int>> imgs;
    for (const auto& w : vs) imgs.push_back(rho_vertex(w));
    for (int i = 0; i < n - 1; ++i) {
        int v0 = imgs[0][i];
        bool same = std::all_of(imgs.begin(), imgs.end(), [&](const auto& b) { return b[i] == v0; });
        c[i] = same ? v0 : kFree;
    }
    if (cube_dim(c) < pface_dim(f)) return std::nullopt;
    return c;
}

template <typename FaceT, typename ImageF, typename BoundaryF, typename DimF, typename KeyF>
std::optional<CubePush> push_generic(const FaceT& f, ImageF image, BoundaryF bnd, DimF dim,
                                     KeyF key, std::map<std::string, std::optional<CubePush>>& memo) {
    auto k = key(f);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    auto img = image(f);
    if (!img) {
        memo[k] = std::nullopt;
        return std::nullopt;
    }
    if (dim(f) == 0) {
        memo[k] = CubePush{*img, 1};
        return memo[k];
    }
    Chain pushed;
    for (const auto& [g, s] : bnd(f)) {
        auto r = push_generic(g, image, bnd, dim, key, memo);
        if (r) pushed.add(cube_id(r->cell), static_cast<long long>(s) * r->deg);
    }
    Chain want = boundary_cube(*img);
    int eps = 0;
    for (const auto& [cell, coeff] : want.terms) {
        auto it = pushed.terms.find(cell);
        if (it != pushed.terms.end()) {
            eps = static_cast<int>(it->second / coeff);
            break;
        }
    }
    if (eps != 1 && eps != -1) throw std::logic_error("pushforward: no unit degree at " + k);
    Chain diff = pushed;
    diff += want.scaled(-eps);
    if (!diff.zero(Ring::Z)) throw std::logic_error("pushforward: boundary mismatch at " + k);
    memo[k] = CubePush{*img, eps};
    return memo[k];
}

}  // namespace

std::optional<CubePush> rho_pushforward(const PermFace& f) {
    static std::map<std::string, std::optional<CubePush>> memo;
    return push_generic(
        f, [](const PermFace& g) { return rho_image(g); },
        [](const PermFace& g) { return boundary_perm_terms(g); },
        [](const PermFace& g) { return pface_dim(g); },
        [](const PermFace& g) { return pface_id(g); }, memo);
}

std::optional<CubePush> cube_pushforward(const PcubeFace& f) {
    static std::map<std::string, std::optional<CubePush>> memo;
    return push_generic(
        f, [](const PcubeFace& g) { return project_to_cube(g); },
        [](const PcubeFace& g) { return boundary_pcube_terms(g); },
        [](const PcubeFace& g) { return g.dim(); },
        [](const PcubeFace& g) { return bface_id(g); }, memo);
}

}  // namespace permutocalc
