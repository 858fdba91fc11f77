#include "permutocalc/perm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace permutocalc {

int pface_dim(const PermFace& f) { return f.size() - f.num_blocks(); }
int pface_n(const PermFace& f) { return f.size(); }

std::vector<PermFace> perm_faces(int n, std::optional<int> dim) {
    if (n < 1) throw std::invalid_argument("perm_faces: n must be >= 1");
    auto all = ordered_partitions(iota_set(n));
    if (dim) std::erase_if(all, [&](const PermFace& f) { return pface_dim(f) != *dim; });
    return all;
}

std::vector<Word> pface_vertices(const PermFace& f) {
    std::vector<Word> words{{}};
    for (const auto& b : f.blocks) {
        Word p = b;
        std::sort(p.begin(), p.end());
        std::vector<Word> next;
        do {
            for (const auto& w : words) {
                Word nw = w;
                nw.insert(nw.end(), p.begin(), p.end());
                next.push_back(nw);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        words = std::move(next);
    }
    return words;
}

PermFace face_spanning(const std::vector<Word>& words) {
    if (words.empty()) throw std::invalid_argument("face_spanning: no words");
    const Word& first = words[0];
    int n = static_cast<int>(first.size());
    std::vector<int> bps{0};
    for (int k = 1; k < n; ++k) {
        std::set<int> s(first.begin(), first.begin() + k);
        bool common = true;
        for (const auto& w : words) {
            std::set<int> t(w.begin(), w.begin() + k);
            if (t != s) { common = false; break; }
        }
        if (common) bps.push_back(k);
    }
    bps.push_back(n);
    PermFace f;
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        Block b(first.begin() + bps[i], first.begin() + bps[i + 1]);
        std::sort(b.begin(), b.end());
        f.blocks.push_back(b);
    }
    return f;
}

int product_dim(const ProductFace& f) {
    int d = 0;
    for (const auto& g : f.factors) d += pface_dim(g);
    return d;
}

std::string format_product(const ProductFace& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.factors.size(); ++i) {
        if (i) os << "x";
        os << format_partition(f.factors[i]);
    }
    return os.str();
}

std::pair<Word, Word> project_rs_vertex(const Word& v, int r, int s) {
    int n = static_cast<int>(v.size());
    if (r + s != n + 1 || r < 1 || s < 1) throw std::invalid_argument("project_rs: need r+s = n+1");
    Word b, c;
    for (int x : v) {
        if (x <= r) b.push_back(x);
        if (x >= n - s + 1) c.push_back(x - (n - s));
    }
    return {b, c};
}

static FaceImage face_image_from(const std::vector<Word>& imgs, int src_dim) {
    PermFace f = face_spanning(imgs);
    std::set<Word> got(imgs.begin(), imgs.end());
    auto full = pface_vertices(f);
    bool exact = got.size() == full.size();
    return {f, pface_dim(f) < src_dim, exact};
}

static PermFace relabel_into(const PermFace& local, const Block& ground) {
    PermFace out;
    for (const auto& b : local.blocks) out.blocks.push_back(index_unmap(ground, b));
    return out;
}

ProductFace project_rs(const PermFace& f, int r, int s) {
    int n = pface_n(f);
    std::vector<Word> as, bs;
    for (const auto& w : pface_vertices(f)) {
        auto [a, b] = project_rs_vertex(w, r, s);
        as.push_back(a);
        bs.push_back(b);
    }
    PermFace fa = face_spanning(as);
    PermFace fb = relabel_into(face_spanning(bs), range_set(n - s + 1, n));
    ProductFace out{{fa, fb}};
    out.degenerate = pface_dim(fa) + pface_dim(fb) < pface_dim(f);
    return out;
}

std::vector<Word> project_multi_vertex(const Word& v, const std::vector<int>& ns) {
    int n = static_cast<int>(v.size());
    int k = static_cast<int>(ns.size());
    int total = 0;
    for (int x : ns) {
        if (x < 1) throw std::invalid_argument("project_multi: factors must be >= 1");
        total += x;
    }
    if (total != n + k - 1) throw std::invalid_argument("project_multi: arity mismatch");
    if (k == 1) return {v};
    std::vector<Word> parts;
    Word cur = v;
    for (int j = k - 1; j >= 1; --j) {
        int r = 0;
        for (int i = 0; i < j; ++i) r += ns[i];
        r -= (j - 1);
        auto [a, b] = project_rs_vertex(cur, r, ns[j]);
        parts.push_back(b);
        cur = a;
    }
    parts.push_back(cur);
    std::reverse(parts.begin(), parts.end());
    return parts;
}

ProductFace project_multi(const PermFace& f, const std::vector<int>& ns) {
    auto vs = pface_vertices(f);
    std::vector<std::vector<Word>> per(ns.size());
    for (const auto& w : vs) {
        auto parts = project_multi_vertex(w, ns);
        for (size_t i = 0; i < parts.size(); ++i) per[i].push_back(parts[i]);
    }
    ProductFace out;
    int d = 0;
    int start = 1;
    for (size_t i = 0; i < per.size(); ++i) {
        PermFace g = relabel_into(face_spanning(per[i]), range_set(start, start + ns[i] - 1));
        start += ns[i] - 1;   // consecutive windows share one element
        d += pface_dim(g);
        out.factors.push_back(g);
    }
    out.degenerate = d < pface_dim(f);
    return out;
}

std::vector<int> rho_vertex(const Word& v) {
    int n = static_cast<int>(v.size());
    std::vector<int> pos(n + 2, 0);
    for (int i = 0; i < n; ++i) pos[v[i]] = i;
    std::vector<int> bits;
    for (int i = 1; i <= n - 1; ++i) bits.push_back(pos[i] < pos[i + 1] ? 0 : 1);
    return bits;
}

Word gamma_vertex(const std::vector<int>& bits) {
    Word w{1};
    int k = 2;
    for (int b : bits) {
        if (b == 0)
            w.push_back(k);
        else
            w.insert(w.begin(), k);
        ++k;
    }
    return w;
}

std::pair<int, int> h_factor_sizes(const Block& A, const Block& B) {
    int n = std::max(A.empty() ? 0 : A.back(), B.empty() ? 0 : B.back());
    bool nA = std::binary_search(A.begin(), A.end(), n);
    int l = nA ? static_cast<int>(B.size()) : static_cast<int>(A.size());
    return {l, static_cast<int>(A.size() + B.size()) - l};
}

Word h_vertex(const Block& A, const Block& B, const Word& x, const Word& y) {
    int n = std::max(A.back(), B.back());
    bool nA = std::binary_search(A.begin(), A.end(), n);
    const Word& wa_local = nA ? y : x;
    const Word& wb_local = nA ? x : y;
    Word w = index_unmap(A, wa_local);
    Word wb = index_unmap(B, wb_local);
    w.insert(w.end(), wb.begin(), wb.end());
    return w;
}

std::pair<Word, Word> phi_vertex(const Block& A, const Block& B, const Word& v) {
    int n = std::max(A.back(), B.back());
    bool nA = std::binary_search(A.begin(), A.end(), n);
    Word ina, inb;
    for (int c : v) {
        if (std::binary_search(A.begin(), A.end(), c)) ina.push_back(c);
        else inb.push_back(c);
    }
    // relabel the subwords by rank
    auto rel = [](const Block& S, const Word& w) {
        Word out;
        for (int c : w) {
            auto it = std::lower_bound(S.begin(), S.end(), c);
            out.push_back(static_cast<int>(it - S.begin()) + 1);
        }
        return out;
    };
    Word u = nA ? rel(B, inb) : rel(A, ina);
    Word w = nA ? rel(A, ina) : rel(B, inb);
    return {u, w};
}

std::pair<PermFace, PermFace> embed_h(const Block& A, const Block& B) {
    if (A.empty() || B.empty() || !disjoint(A, B))
        throw std::invalid_argument("embed_h: need a 2-block full partition");
    int n = std::max(A.back(), B.back());
    Block all = set_union(A, B);
    if (all != iota_set(n)) throw std::invalid_argument("embed_h: not a full partition");
    bool nA = std::binary_search(A.begin(), A.end(), n);
    // first factor: singletons of the n-block's elements, then the other block
    PermFace first, second;
    if (nA) {
        for (int a : A) first.blocks.push_back({a});
        first.blocks.push_back(B);
        second.blocks.push_back(A);
        for (int b : B) second.blocks.push_back({b});
    } else {
        first.blocks.push_back(A);
        for (int b : B) first.blocks.push_back({b});
        for (int a : A) second.blocks.push_back({a});
        second.blocks.push_back(B);
    }
    return {first, second};
}

Word coface_vertex(const Block& A, const Block& B, const Word& v) {
    int n = static_cast<int>(v.size()) + 1;
    Block all = set_union(A, B);
    if (all != iota_set(n) || !disjoint(A, B))
        throw std::invalid_argument("coface: A|B must partition underline n");
    auto bits = rho_vertex(v);
    auto [l, m] = h_factor_sizes(A, B);
    std::vector<int> xb(bits.begin(), bits.begin() + (l - 1));
    std::vector<int> yb(bits.begin() + (l - 1), bits.end());
    return h_vertex(A, B, gamma_vertex(xb), gamma_vertex(yb));
}

Word codegeneracy_vertex(const Block& A, const Block& B, const Word& v) {
    auto [x, y] = phi_vertex(A, B, v);
    auto bits = rho_vertex(x);
    auto by = rho_vertex(y);
    bits.insert(bits.end(), by.begin(), by.end());
    return gamma_vertex(bits);
}

FaceImage map_face(const PermFace& f, const std::function<Word(const Word&)>& vmap) {
    std::vector<Word> imgs;
    for (const auto& w : pface_vertices(f)) imgs.push_back(vmap(w));
    return face_image_from(imgs, pface_dim(f));
}

FaceImage coface_face(const Block& A, const Block& B, const PermFace& f) {
    return map_face(f, [&](const Word& w) { return coface_vertex(A, B, w); });
}

// ---- multipermutahedral action ---------------------------------------------

std::optional<QSplit> q_split(const Block& A, const Block& B, const std::vector<int>& nd) {
    int n = 1;
    for (int x : nd) n += x;
    int pre = 0;
    for (size_t i = 0; i < nd.size(); ++i) {
        int p_i = 1 + pre;
        int q_i = n - pre - nd[i];
        Block under = iota_set(p_i);
        Block over = range_set(n - q_i + 1, n);
        auto contains = [](const Block& big, const Block& sml) {
            return std::includes(big.begin(), big.end(), sml.begin(), sml.end());
        };
        bool memb = (contains(A, under) || contains(B, under)) &&
                    (contains(A, over) || contains(B, over));
        if (memb) {
            Block Ci = range_set(p_i, p_i + nd[i]);
            Block ca = set_intersect(Ci, A), cb = set_intersect(Ci, B);
            if (!ca.empty() && !cb.empty())
                return QSplit{static_cast<int>(i), translate(ca, -pre), translate(cb, -pre)};
        }
        pre += nd[i];
    }
    return std::nullopt;
}

std::optional<PermFace> act_face(const Block& A, const Block& B, const PermFace& f) {
    std::vector<int> nd;
    for (const auto& b : f.blocks) nd.push_back(static_cast<int>(b.size()) - 1);
    int n = pface_dim(f) + 1;
    if (set_union(A, B) != iota_set(n) || !disjoint(A, B))
        throw std::invalid_argument("act_face: A|B must partition underline{dim+1}");
    auto sp = q_split(A, B, nd);
    if (!sp) return std::nullopt;
    const Block& U = f.blocks[sp->factor];
    Block ga = index_unmap(U, sp->local_a);
    Block gb = index_unmap(U, sp->local_b);
    PermFace g;
    for (int i = 0; i < f.num_blocks(); ++i) {
        if (i == sp->factor) {
            g.blocks.push_back(ga);
            g.blocks.push_back(gb);
        } else {
            g.blocks.push_back(f.blocks[i]);
        }
    }
    return g;
}

KLMNCD decompose_klmncd(const Block& A, const Block& B, int n, int r, int s) {
    if (r + s != n + 1) throw std::invalid_argument("decompose: need r+s = n+1");
    if (q_split(A, B, {r - 1, s - 1}))
        throw std::invalid_argument("decomposition not applicable: A|B is in some Q");
    Block ur = iota_set(r);
    Block os = range_set(n - s + 1, n);
    Block un1 = iota_set(n - 1);
    Block un = iota_set(n);
    bool rA = std::binary_search(A.begin(), A.end(), r);
    bool nA = std::binary_search(A.begin(), A.end(), n);
    Block K, L, M, N, C, D;
    if (rA) {
        K = set_union(set_intersect(ur, A), os);
        L = set_intersect(ur, B);
    } else {
        K = set_intersect(ur, A);
        L = set_union(set_intersect(ur, B), os);
    }
    if (!rA) {
        M = translate(set_intersect(os, A), -1);
        N = set_minus(un1, M);
    } else if (nA) {
        N = translate(set_intersect(os, B), -static_cast<int>(L.size()));
        M = set_minus(un1, N);
    } else {
        M = index_map(set_minus(un, L), A);
        N = set_minus(un1, M);
    }
    if (!rA && !nA) {
        C = index_map(set_minus(un, B), set_intersect(ur, A));
        D = set_minus(un1, C);
    } else if (rA && !nA) {
        C = index_map(set_minus(un, A), set_intersect(os, B));
        D = set_minus(un1, C);
    } else if (!rA && nA) {
        D = index_map(set_minus(un, B), set_intersect(os, A));
        C = set_minus(un1, D);
    } else {
        D = index_map(set_minus(un, A), set_intersect(ur, B));
        C = set_minus(un1, D);
    }
    return {OrderedPartition{{K, L}}, OrderedPartition{{M, N}}, OrderedPartition{{C, D}}};
}

ProductAction product_face_op(const Block& A, const Block& B,
                              const PermFace& a, const PermFace& b) {
    int r = pface_n(a), s = pface_n(b);
    int n = r + s - 1;
    PermFace prod;   // the product cell a x b as the face a | b+r of P_{r+s}
    // operate through the abstract multidegree machinery on local labels
    auto sp = q_split(A, B, {r - 1, s - 1});
    if (!sp) {
        auto d = decompose_klmncd(A, B, n, r, s);
        return {ProductAction::Kind::Degenerate, {}, d.kl, d.mn, d.cd};
    }
    if (sp->factor == 0) {
        auto g = act_face(sp->local_a, sp->local_b, a);
        if (!g) throw std::logic_error("product_face_op: inner split failed");
        return {ProductAction::Kind::Left, ProductFace{{*g, b}}, {}, {}, {}};
    }
    auto g = act_face(sp->local_a, sp->local_b, b);
    if (!g) throw std::logic_error("product_face_op: inner split failed");
    return {ProductAction::Kind::Right, ProductFace{{a, *g}}, {}, {}, {}};
}

std::pair<std::vector<std::pair<Block, Block>>, std::vector<std::pair<Block, Block>>>
factorize_two_ways(const PermFace& p) {
    int k = p.num_blocks() - 1;
    if (k < 1) throw std::invalid_argument("factorize: need at least 2 blocks");
    std::vector<std::pair<Block, Block>> s1, s2;
    PermFace cur = p;
    for (int i = 0; i < k; ++i) {
        Block rest;
        for (int j = 1; j < cur.num_blocks(); ++j) rest = set_union(rest, cur.blocks[j]);
        s1.emplace_back(cur.blocks[0], rest);
        cur = square_op_lower(cur.blocks[0],
                              {cur.blocks.begin() + 1, cur.blocks.end()});
    }
    cur = p;
    for (int i = 0; i < k; ++i) {
        Block rest;
        for (int j = 0; j + 1 < cur.num_blocks(); ++j) rest = set_union(rest, cur.blocks[j]);
        s2.emplace_back(rest, cur.blocks.back());
        cur = square_op_upper(cur.blocks.back(),
                              {cur.blocks.begin(), cur.blocks.end() - 1});
    }
    return {s1, s2};
}

std::optional<PermFace> apply_d_word(const std::vector<std::pair<Block, Block>>& word,
                                     const PermFace& start) {
    PermFace f = start;
    for (const auto& [A, B] : word) {
        auto g = act_face(A, B, f);
        if (!g) return std::nullopt;
        f = *g;
    }
    return f;
}

}  // namespace permutocalc
