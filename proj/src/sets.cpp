#include "permutocalc/sets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permutocalc {

Block iota_set(int n) {
    Block b(std::max(n, 0));
    std::iota(b.begin(), b.end(), 1);
    return b;
}

Block range_set(int lo, int hi) {
    Block b;
    for (int x = lo; x <= hi; ++x) b.push_back(x);
    return b;
}

bool is_sorted_set(const Block& b) {
    for (size_t i = 1; i < b.size(); ++i)
        if (b[i - 1] >= b[i]) return false;
    return true;
}

bool disjoint(const Block& a, const Block& b) {
    return set_intersect(a, b).empty();
}

Block set_union(const Block& a, const Block& b) {
    Block out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Block set_minus(const Block& a, const Block& b) {
    Block out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Block set_intersect(const Block& a, const Block& b) {
    Block out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Block OrderedPartition::ground() const {
    Block g;
    for (const auto& b : blocks) g = set_union(g, b);
    return g;
}

int OrderedPartition::size() const {
    int s = 0;
    for (const auto& b : blocks) s += static_cast<int>(b.size());
    return s;
}

bool operator<(const OrderedPartition& a, const OrderedPartition& b) {
    return a.blocks < b.blocks;
}

std::vector<OrderedPartition> ordered_partitions(const Block& ground,
                                                 std::optional<int> num_blocks) {
    if (!is_sorted_set(ground)) throw std::invalid_argument("ground set must be sorted, no duplicates");
    std::vector<OrderedPartition> out;
    std::vector<Block> acc;
    auto rec = [&](auto&& self, const Block& rest) -> void {
        if (rest.empty()) {
            if (!acc.empty()) out.push_back({acc});
            return;
        }
        int m = static_cast<int>(rest.size());
        // first block = any nonempty subset of rest
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            Block first, rem;
            for (int i = 0; i < m; ++i)
                ((mask >> i) & 1 ? first : rem).push_back(rest[i]);
            acc.push_back(first);
            self(self, rem);
            acc.pop_back();
        }
    };
    rec(rec, ground);
    if (num_blocks) {
        std::erase_if(out, [&](const OrderedPartition& p) { return p.num_blocks() != *num_blocks; });
    }
    std::sort(out.begin(), out.end(), [](const OrderedPartition& a, const OrderedPartition& b) {
        if (a.num_blocks() != b.num_blocks()) return a.num_blocks() < b.num_blocks();
        return a.blocks < b.blocks;
    });
    return out;
}

int perm_sign(const std::vector<int>& word) {
    int inv = 0;
    for (size_t i = 0; i < word.size(); ++i)
        for (size_t j = i + 1; j < word.size(); ++j)
            if (word[i] > word[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

int shuffle_sign(const Block& left, const Block& right) {
    if (!disjoint(left, right)) throw std::invalid_argument("blocks not disjoint");
    std::vector<int> word(left);
    word.insert(word.end(), right.begin(), right.end());
    return perm_sign(word);
}

int shuffle_sign(const Shuffle& s) { return shuffle_sign(s.left, s.right); }

Block index_map(const Block& M, const Block& A) {
    Block out;
    for (int a : A) {
        auto it = std::lower_bound(M.begin(), M.end(), a);
        if (it == M.end() || *it != a) throw std::invalid_argument("index_map: A not a subset of M");
        out.push_back(static_cast<int>(it - M.begin()) + 1);
    }
    return out;
}

Block index_unmap(const Block& M, const Block& local) {
    Block out;
    for (int i : local) {
        if (i < 1 || i > static_cast<int>(M.size()))
            throw std::invalid_argument("index_unmap: label out of range");
        out.push_back(M[i - 1]);
    }
    return out;
}

Block translate(const Block& M, int z) {
    Block out;
    for (int m : M) {
        if (m + z < 0) throw std::invalid_argument("translate: negative result");
        out.push_back(m + z);
    }
    return out;
}

Block lower_union(const Block& A, const Block& B, const Block& U) {
    if (!disjoint(A, B)) throw std::invalid_argument("lower_union: blocks not disjoint");
    if (A.empty() || B.empty()) return set_union(A, B);
    Block UA = set_minus(U, A);
    Block base = translate(index_map(UA, B), static_cast<int>(A.size()) - 1);
    if (B.front() == UA.front())
        base = set_union(base, iota_set(static_cast<int>(A.size())));
    return base;
}

Block upper_union(const Block& A, const Block& B, const Block& U) {
    if (!disjoint(A, B)) throw std::invalid_argument("upper_union: blocks not disjoint");
    if (A.empty() || B.empty()) return set_union(A, B);
    Block UB = set_minus(U, B);
    Block base = index_map(UB, A);
    if (A.back() == UB.back()) {
        int u = static_cast<int>(U.size());
        base = set_union(base, translate(range_set(u - static_cast<int>(B.size()) + 1, u), -1));
    }
    return base;
}

static Block square_ambient(const Block& A, const std::vector<Block>& Bs) {
    Block U = A;
    for (const auto& b : Bs) {
        if (!disjoint(U, b)) throw std::invalid_argument("square_op: blocks not disjoint");
        U = set_union(U, b);
    }
    return U;
}

OrderedPartition square_op_lower(const Block& A, const std::vector<Block>& Bs) {
    Block U = square_ambient(A, Bs);
    OrderedPartition out;
    for (const auto& b : Bs) out.blocks.push_back(lower_union(A, b, U));
    return out;
}

OrderedPartition square_op_upper(const Block& A, const std::vector<Block>& Bs) {
    Block U = square_ambient(A, Bs);
    OrderedPartition out;
    for (const auto& b : Bs) out.blocks.push_back(upper_union(b, A, U));
    return out;
}

OrderedPartition square_op(const Block& A, const std::vector<Block>& Bs) {
    Block U = square_ambient(A, Bs);
    if (A.empty() || A.back() < U.back()) return square_op_lower(A, Bs);
    return square_op_upper(A, Bs);
}

long eps1_weight(const std::vector<Block>& blocks) {
    long k = static_cast<long>(blocks.size());
    long e = 0;
    for (long j = 0; j < k; ++j) e += (k - 1 - j) * static_cast<long>(blocks[j].size());
    return e;
}

PartitionSigns partition_signs(const OrderedPartition& a) {
    std::vector<int> word;
    long sq = 0, tot = 0;
    for (const auto& b : a.blocks) {
        word.insert(word.end(), b.begin(), b.end());
        sq += static_cast<long>(b.size()) * static_cast<long>(b.size());
        tot += static_cast<long>(b.size());
    }
    int psgn = perm_sign(word);
    long e1 = eps1_weight(a.blocks);
    long p = static_cast<long>(a.blocks.size()) - 1;
    long e2 = e1 + p * (p - 1) / 2;
    int rsgn = ((sq - tot) / 2) % 2 ? -1 : 1;
    return {psgn, (e1 % 2 ? -1 : 1) * psgn, (e2 % 2 ? -1 : 1) * psgn, rsgn};
}

std::string format_block(const Block& b) {
    bool small = std::all_of(b.begin(), b.end(), [](int x) { return x < 10 && x >= 0; });
    std::ostringstream os;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i && !small) os << ',';
        os << b[i];
    }
    return os.str();
}

std::string format_partition(const OrderedPartition& p) {
    bool small = true;
    for (const auto& b : p.blocks)
        for (int x : b)
            if (x >= 10 || x < 0) small = false;
    std::ostringstream os;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        if (i) os << '|';
        const auto& b = p.blocks[i];
        for (size_t j = 0; j < b.size(); ++j) {
            if (j && !small) os << ',';
            os << b[j];
        }
    }
    return os.str();
}

static Block parse_block(const std::string& s) {
    Block b;
    if (s.find(',') != std::string::npos) {
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) b.push_back(std::stoi(tok));
    } else {
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad block: " + s);
            b.push_back(c - '0');
        }
    }
    std::sort(b.begin(), b.end());
    if (!is_sorted_set(b)) throw std::invalid_argument("duplicate element in block: " + s);
    return b;
}

OrderedPartition parse_partition(const std::string& text) {
    OrderedPartition p;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, '|')) {
        if (tok.empty()) throw std::invalid_argument("empty block in: " + text);
        p.blocks.push_back(parse_block(tok));
    }
    if (p.blocks.empty()) throw std::invalid_argument("empty partition");
    Block seen;
    for (const auto& b : p.blocks) {
        if (!disjoint(seen, b)) throw std::invalid_argument("overlapping blocks in: " + text);
        seen = set_union(seen, b);
    }
    return p;
}

long long ordered_bell(int n) {
    std::vector<long long> a(n + 1, 0);
    a[0] = 1;
    std::vector<std::vector<long long>> C(n + 1, std::vector<long long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        C[i][0] = 1;
        for (int j = 1; j <= i; ++j) C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0);
    }
    for (int m = 1; m <= n; ++m) {
        long long s = 0;
        for (int k = 1; k <= m; ++k) s += C[m][k] * a[m - k];
        a[m] = s;
    }
    return a[n];
}

}  // namespace permutocalc
