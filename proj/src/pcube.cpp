#include "permutocalc/pcube.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permutocalc {

int PcubeFace::dim() const {
    return (n - static_cast<int>(deleted.size())) - num_tails();
}

Block PcubeFace::head_survivors() const {
    Block h;
    for (int x : blocks[0])
        if (x != 0) h.push_back(x);
    return h;
}

bool operator<(const PcubeFace& a, const PcubeFace& b) {
    return std::tie(a.n, a.deleted, a.blocks) < std::tie(b.n, b.deleted, b.blocks);
}

PcubeFace pcube_top(int n) {
    PcubeFace f;
    f.n = n;
    f.blocks.push_back(range_set(0, n));
    return f;
}

static bool valid_pcube(const PcubeFace& f) {
    if (f.blocks.empty()) return false;
    if (f.blocks[0].empty() || f.blocks[0][0] != 0) return false;
    Block cover;
    for (const auto& b : f.blocks) {
        if (b.empty() || !is_sorted_set(b) || !disjoint(cover, b)) return false;
        cover = set_union(cover, b);
    }
    for (size_t i = 1; i < f.blocks.size(); ++i)
        if (f.blocks[i].empty()) return false;
    Block expect = set_minus(range_set(0, f.n), f.deleted);
    return cover == expect && disjoint(f.deleted, cover);
}

std::vector<PcubeFace> pcube_faces(int n, std::optional<int> dim) {
    if (n < 0) throw std::invalid_argument("pcube_faces: n must be >= 0");
    std::vector<PcubeFace> out;
    Block full = iota_set(n);
    for (unsigned dm = 0; dm < (1u << n); ++dm) {
        Block D, surv;
        for (int i = 0; i < n; ++i) ((dm >> i) & 1 ? D : surv).push_back(full[i]);
        int m = static_cast<int>(surv.size());
        for (unsigned hm = 0; hm < (1u << m); ++hm) {
            Block head{0}, rest;
            for (int i = 0; i < m; ++i) ((hm >> i) & 1 ? head : rest).push_back(surv[i]);
            if (rest.empty()) {
                out.push_back({n, D, {head}});
            } else {
                for (const auto& tails : ordered_partitions(rest)) {
                    PcubeFace f{n, D, {head}};
                    for (const auto& b : tails.blocks) f.blocks.push_back(b);
                    out.push_back(f);
                }
            }
        }
    }
    if (dim) std::erase_if(out, [&](const PcubeFace& f) { return f.dim() != *dim; });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PcubeVertex> pcube_vertices(const PcubeFace& f) {
    Block hs = f.head_survivors();
    int m = static_cast<int>(hs.size());
    std::vector<PcubeVertex> out;
    for (unsigned em = 0; em < (1u << m); ++em) {
        Block extra, keep;
        for (int i = 0; i < m; ++i) ((em >> i) & 1 ? extra : keep).push_back(hs[i]);
        Block D = set_union(f.deleted, extra);
        std::vector<Word> words{{}};
        {
            Word p = keep;
            std::vector<Word> next;
            std::sort(p.begin(), p.end());
            if (p.empty()) {
                next = words;
            } else {
                do {
                    for (const auto& w : words) {
                        Word nw = w;
                        nw.insert(nw.end(), p.begin(), p.end());
                        next.push_back(nw);
                    }
                } while (std::next_permutation(p.begin(), p.end()));
            }
            words = std::move(next);
        }
        for (size_t t = 1; t < f.blocks.size(); ++t) {
            Word p = f.blocks[t];
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
        for (const auto& w : words) out.push_back({D, w});
    }
    std::sort(out.begin(), out.end());
    return out;
}

PcubeFace vertex_face(int n, const PcubeVertex& v) {
    PcubeFace f{n, v.deleted, {{0}}};
    for (int x : v.word) f.blocks.push_back({x});
    return f;
}

PcubeFace face_op_i(int i, const PcubeFace& f) {
    Block hs = f.head_survivors();
    if (i < 1 || i > static_cast<int>(hs.size()))
        throw std::invalid_argument("face_op_i: index out of range for the head part");
    int x = hs[i - 1];
    PcubeFace g = f;
    g.deleted = set_union(g.deleted, {x});
    g.blocks[0] = set_minus(g.blocks[0], {x});
    return g;
}

PcubeFace face_op_am(const Block& A, const Block& M, const PcubeFace& f) {
    Block hs = f.head_survivors();
    int m = static_cast<int>(hs.size());
    Block expect = range_set(0, m);
    if (set_union(A, M) != expect || !disjoint(A, M) || M.empty() ||
        A.empty() || A[0] != 0)
        throw std::invalid_argument("face_op_am: A]M must partition {0} u underline{m} with 0 in A");
    Block ground = f.blocks[0];   // includes 0; local label j -> ground[j]
    auto lift = [&](const Block& local) {
        Block out;
        for (int j : local) out.push_back(j == 0 ? 0 : hs[j - 1]);
        std::sort(out.begin(), out.end());
        return out;
    };
    PcubeFace g = f;
    g.blocks[0] = lift(A);
    g.blocks.insert(g.blocks.begin() + 1, lift(M));
    return g;
}

int fiber_grading(const PcubeFace& f) {
    int q = 1;
    for (int t = 1; t < static_cast<int>(f.blocks.size()); ++t)
        q += static_cast<int>(f.blocks[t].size()) - 1;
    return q;
}

std::optional<PcubeFace> face_op_perm(const Block& M1, const Block& M2, const PcubeFace& f) {
    int q = fiber_grading(f);
    if (set_union(M1, M2) != iota_set(q) || !disjoint(M1, M2))
        throw std::invalid_argument("face_op_perm: M1|M2 must partition underline{q}");
    std::vector<int> nd;
    for (int t = 1; t < static_cast<int>(f.blocks.size()); ++t)
        nd.push_back(static_cast<int>(f.blocks[t].size()) - 1);
    auto sp = q_split(M1, M2, nd);
    if (!sp) return std::nullopt;
    const Block& U = f.blocks[sp->factor + 1];
    Block ga = index_unmap(U, sp->local_a);
    Block gb = index_unmap(U, sp->local_b);
    PcubeFace g{f.n, f.deleted, {}};
    for (int i = 0; i < static_cast<int>(f.blocks.size()); ++i) {
        if (i == sp->factor + 1) {
            g.blocks.push_back(ga);
            g.blocks.push_back(gb);
        } else {
            g.blocks.push_back(f.blocks[i]);
        }
    }
    return g;
}

PcubeLabel decompose_label(const PcubeFace& f) {
    Block covered = set_minus(range_set(0, f.n), f.deleted);
    PcubeLabel lbl;
    lbl.deleted_word = f.deleted;
    for (const auto& b : f.blocks) {
        Block loc;
        for (int x : b) {
            auto it = std::lower_bound(covered.begin(), covered.end(), x);
            loc.push_back(static_cast<int>(it - covered.begin()));   // 0 -> 0
        }
        lbl.partition.push_back(loc);
    }
    return lbl;
}

PcubeFace apply_label(int n, const PcubeLabel& lbl) {
    PcubeFace f = pcube_top(n);
    // deletions first, largest local index first: (i_k,...,i_1) ascending means
    // d_{i_1} (the largest) is applied first
    for (auto it = lbl.deleted_word.rbegin(); it != lbl.deleted_word.rend(); ++it)
        f = face_op_i(*it, f);
    // label coordinates refer to the post-deletion frame {0} u underline{n-k}
    Block frame = f.head_survivors();
    auto to_global = [&](const Block& local) {
        Block out;
        for (int j : local) out.push_back(j == 0 ? 0 : frame[j - 1]);
        std::sort(out.begin(), out.end());
        return out;
    };
    // head splits from the last block inward, relabeled into the current head
    int p = static_cast<int>(lbl.partition.size()) - 1;
    for (int t = p; t >= 1; --t) {
        Block A;
        for (int j = 0; j < t; ++j) A = set_union(A, to_global(lbl.partition[j]));
        Block M = to_global(lbl.partition[t]);
        Block hs = f.head_survivors();
        auto to_local = [&](const Block& g) {
            Block out;
            for (int x : g) {
                if (x == 0) { out.push_back(0); continue; }
                out.push_back(static_cast<int>(
                    std::lower_bound(hs.begin(), hs.end(), x) - hs.begin()) + 1);
            }
            return out;
        };
        f = face_op_am(to_local(A), to_local(M), f);
    }
    return f;
}

PcubeFace embed_perm_face(const PermFace& g) {
    PcubeFace f{pface_n(g), {}, {{0}}};
    for (const auto& b : g.blocks) f.blocks.push_back(b);
    return f;
}

std::optional<PermFace> as_perm_face(const PcubeFace& f) {
    if (!f.deleted.empty() || f.blocks[0] != Block{0}) return std::nullopt;
    PermFace g;
    for (size_t t = 1; t < f.blocks.size(); ++t) g.blocks.push_back(f.blocks[t]);
    return g;
}

std::optional<CubeFace> project_to_cube(const PcubeFace& f) {
    for (size_t t = 1; t < f.blocks.size(); ++t)
        if (f.blocks[t].size() >= 2) return std::nullopt;
    CubeFace c(f.n, kFree);
    for (int x : f.deleted) c[x - 1] = 1;
    for (size_t t = 1; t < f.blocks.size(); ++t) c[f.blocks[t][0] - 1] = 0;
    return c;
}

PcubeCellStructure cell_structure(const PcubeFace& f) {
    PcubeCellStructure s;
    s.head_ground = f.head_survivors();
    s.base_m = static_cast<int>(s.head_ground.size());
    for (size_t t = 1; t < f.blocks.size(); ++t) s.factor_grounds.push_back(f.blocks[t]);
    return s;
}

std::string format_pcube(const PcubeFace& f) {
    std::ostringstream os;
    Block hs = f.head_survivors();
    os << format_block(hs.empty() ? Block{0} : hs) << ']';
    for (size_t t = 1; t < f.blocks.size(); ++t) {
        if (t > 1) os << '|';
        os << format_block(f.blocks[t]);
    }
    return os.str();
}

PcubeFace parse_pcube(const std::string& text, int n) {
    std::string body = text;
    Block deleted;
    bool explicit_deleted = false;
    if (auto semi = body.find(';'); semi != std::string::npos) {
        std::string ds = body.substr(0, semi);
        body = body.substr(semi + 1);
        explicit_deleted = true;
        if (!ds.empty()) {
            if (ds.find(',') != std::string::npos) {
                std::istringstream is(ds);
                std::string tok;
                while (std::getline(is, tok, ',')) deleted.push_back(std::stoi(tok));
            } else {
                for (char c : ds) deleted.push_back(c - '0');
            }
            std::sort(deleted.begin(), deleted.end());
        }
    }
    auto br = body.find(']');
    if (br == std::string::npos) throw std::invalid_argument("missing ']' in: " + text);
    std::string head_s = body.substr(0, br);
    std::string tail_s = body.substr(br + 1);
    PcubeFace f;
    f.n = n;
    Block head;
    for (char c : head_s) {
        if (c == ',') continue;
        head.push_back(c - '0');
    }
    if (head_s.find(',') != std::string::npos) {
        head.clear();
        std::istringstream is(head_s);
        std::string tok;
        while (std::getline(is, tok, ',')) head.push_back(std::stoi(tok));
    }
    std::sort(head.begin(), head.end());
    if (head.empty() || head[0] != 0) head.insert(head.begin(), 0);
    f.blocks.push_back(head);
    if (!tail_s.empty()) {
        auto tails = parse_partition(tail_s);
        for (const auto& b : tails.blocks) f.blocks.push_back(b);
    }
    if (explicit_deleted) {
        f.deleted = deleted;
    } else {
        Block cover;
        for (const auto& b : f.blocks) cover = set_union(cover, b);
        f.deleted = set_minus(range_set(0, n), cover);
    }
    if (!valid_pcube(f)) throw std::invalid_argument("invalid permutocube face: " + text);
    return f;
}

}  // namespace permutocalc
