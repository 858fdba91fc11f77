#pragma once
// The face lattice of P_n, the coface/codegeneracy vertex maps, cellular
// projections, and the structure-relation machinery.

#include "permutocalc/sets.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace permutocalc {

// A face of P_n is a full ordered partition of {1,...,n}.
using PermFace = OrderedPartition;
using Word = std::vector<int>;   // a vertex as a permutation word

int pface_dim(const PermFace& f);
int pface_n(const PermFace& f);

// All faces of P_n (of the given dimension when supplied), canonical order.
std::vector<PermFace> perm_faces(int n, std::optional<int> dim = std::nullopt);

// Vertices of a face, each a word; blocks contribute consecutive segments.
std::vector<Word> pface_vertices(const PermFace& f);

// The minimal face whose vertex set contains all given words.
PermFace face_spanning(const std::vector<Word>& words);

// A product of permutahedral faces, each over its own ground set.
struct ProductFace {
    std::vector<PermFace> factors;
    bool degenerate = false;   // image dimension dropped
    bool operator==(const ProductFace&) const = default;
};
int product_dim(const ProductFace& f);
std::string format_product(const ProductFace& f);

// ---- cellular projections -------------------------------------------------

// Delta_{r,s} on a vertex word of P_n (r + s = n + 1): unshuffle; the second
// factor is relabeled to its local ground set 1..s.
std::pair<Word, Word> project_rs_vertex(const Word& v, int r, int s);

// Delta_{r,s} on a face, with degeneracy flag.
ProductFace project_rs(const PermFace& f, int r, int s);

// Delta_{n_1...n_k} on vertices and faces; sum n_i = n + k - 1.
std::vector<Word> project_multi_vertex(const Word& v, const std::vector<int>& ns);
ProductFace project_multi(const PermFace& f, const std::vector<int>& ns);

// rho_n: vertex of P_n -> cube vertex of I^{n-1} (bit i-1 = 0 iff i precedes i+1).
std::vector<int> rho_vertex(const Word& v);
// gamma_n: cube vertex -> cubical vertex of P_n.
Word gamma_vertex(const std::vector<int>& bits);

// h_{A|B}: local factor vertices -> vertex of the face A|B; the factor over
// the block containing n comes second.
Word h_vertex(const Block& A, const Block& B, const Word& x, const Word& y);
// phi_{A|B}: vertex of P_n -> pair of local factor vertices.
std::pair<Word, Word> phi_vertex(const Block& A, const Block& B, const Word& v);
// Factor ground sizes (l, m) of h_{A|B}/phi_{A|B} per the n-in-A/B convention.
std::pair<int, int> h_factor_sizes(const Block& A, const Block& B);
// The two factor faces of the embedding h_{A|B} (spec: embed_h).
std::pair<PermFace, PermFace> embed_h(const Block& A, const Block& B);

// Singular coface delta_{A|B}: vertex map P_{n-1} -> P_n.
Word coface_vertex(const Block& A, const Block& B, const Word& v);
// Singular codegeneracy beta_{A|B}: vertex map P_n -> P_{n-1}.
Word codegeneracy_vertex(const Block& A, const Block& B, const Word& v);

// Image of a face under a vertex map: the minimal spanning face plus flags.
struct FaceImage {
    PermFace face;
    bool degenerate;   // dim dropped
    bool exact;        // vertex image set is exactly the face's vertex set
};
FaceImage map_face(const PermFace& f, const std::function<Word(const Word&)>& vmap);

// Coface applied to a face (via the vertex maps).
FaceImage coface_face(const Block& A, const Block& B, const PermFace& f);

// ---- multipermutahedral operator action on product cells -------------------

// Q_{p_i,q_i} membership: a face of P_N with k blocks is the product cell of
// multidegree (n_1,...,n_k), n_i = #U_i - 1.  in_Q returns the factor index
// (0-based) whose block A|B splits properly, or nullopt.
struct QSplit {
    int factor;
    Block local_a;   // local labels inside 1..n_i+1
    Block local_b;
};
std::optional<QSplit> q_split(const Block& A, const Block& B, const std::vector<int>& multidegree);

// d_{A|B} acting on a face of P_N viewed as a product cell; A|B a partition of
// underline{dim f + 1}.  Returns nullopt when A|B is in no Q (the operator is
// degenerate on the cellular set).
std::optional<PermFace> act_face(const Block& A, const Block& B, const PermFace& f);

// d_{A|B}(a x b) per the three-branch product formula; the otherwise branch
// reports the (K|L, M|N, C|D) decomposition instead of a face.
struct ProductAction {
    enum class Kind { Left, Right, Degenerate } kind;
    ProductFace result;                                 // Left/Right
    OrderedPartition kl, mn, cd;                        // Degenerate
};
ProductAction product_face_op(const Block& A, const Block& B,
                              const PermFace& a, const PermFace& b);

// The (multip) decomposition d_{A|B} = rho_{C|D} d_{M|N} d_{K|L} for
// A|B not in Q_{*,*} w.r.t. the (r,s) product; throws when A|B is in some Q.
struct KLMNCD {
    OrderedPartition kl, mn, cd;
};
KLMNCD decompose_klmncd(const Block& A, const Block& B, int n, int r, int s);

// Both d-operator words of the two-way factorization theorem, in top-down
// order (first entry is a partition of underline n, applied first to the top
// cell).  Requires at least 2 blocks.
std::pair<std::vector<std::pair<Block, Block>>, std::vector<std::pair<Block, Block>>>
factorize_two_ways(const PermFace& p);

// Apply a d-operator word to a face through act_face; nullopt when any step
// degenerates.
std::optional<PermFace> apply_d_word(const std::vector<std::pair<Block, Block>>& word,
                                     const PermFace& start);

}  // namespace permutocalc
