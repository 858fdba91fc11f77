#pragma once
// The face lattice of the permutocube B_n, its face operators, the canonical
// operator-word decomposition, the permutahedral embedding, and the collapsing
// projection onto the cube.

#include "permutocalc/perm.hpp"
#include "permutocalc/sets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace permutocalc {

// A face of B_n: deleted indices plus a head-block partition of the survivors
// together with 0.  blocks[0] always contains 0.
struct PcubeFace {
    int n = 0;
    Block deleted;                 // subset of 1..n, sorted
    std::vector<Block> blocks;     // blocks[0] is the head

    bool operator==(const PcubeFace&) const = default;
    int dim() const;
    int num_tails() const { return static_cast<int>(blocks.size()) - 1; }
    Block head_survivors() const;  // head without 0
};
bool operator<(const PcubeFace& a, const PcubeFace& b);

PcubeFace pcube_top(int n);

std::vector<PcubeFace> pcube_faces(int n, std::optional<int> dim = std::nullopt);

// Vertices of B_n inside a face: pairs (deleted set, word of survivors).
struct PcubeVertex {
    Block deleted;
    Word word;
    bool operator==(const PcubeVertex&) const = default;
    bool operator<(const PcubeVertex& o) const {
        return std::tie(deleted, word) < std::tie(o.deleted, o.word);
    }
};
std::vector<PcubeVertex> pcube_vertices(const PcubeFace& f);
PcubeFace vertex_face(int n, const PcubeVertex& v);

// ---- face operators ---------------------------------------------------------

// d_i: delete the i-th smallest head survivor (local index, 1-based).
PcubeFace face_op_i(int i, const PcubeFace& f);
// d_{A]M}: split the head; A and M are local labels over {0} u underline{m}
// (m = number of head survivors), 0 in A; M becomes the first tail block.
PcubeFace face_op_am(const Block& A, const Block& M, const PcubeFace& f);
// d_{M1|M2}: permutahedral face operator on the tail part (the multipermutahedral
// fiber); M1|M2 a partition of underline{q}, q = fiber grading.  Returns nullopt
// when the operator is degenerate on the cellular set.
std::optional<PcubeFace> face_op_perm(const Block& M1, const Block& M2, const PcubeFace& f);

// Fiber (tail) grading q: the tail blocks form a multipermutahedral element of
// multidegree (#C_1 - 1, ..., #C_p - 1); q = sum + 1.
int fiber_grading(const PcubeFace& f);

// Canonical operator word d_{A_0]A_1|...|A_p;(i_k,...,i_1)} returning f when
// applied to the top cell.
struct PcubeLabel {
    std::vector<Block> partition;   // relabeled blocks over {0} u underline{n-k}
    Block deleted_word;             // (i_k < ... < i_1) as stored ascending
};
PcubeLabel decompose_label(const PcubeFace& f);
PcubeFace apply_label(int n, const PcubeLabel& lbl);

// P_n -> B_n as the face 0]A_1|...|A_k.
PcubeFace embed_perm_face(const PermFace& g);
// Is the face inside the permutahedral facet 0]underline{n}?  If so, its
// permutahedral partition.
std::optional<PermFace> as_perm_face(const PcubeFace& f);

// Cube face of I^n: entries 0, 1 or free (-1).
using CubeFace = std::vector<int>;
constexpr int kFree = -1;

// Collapsing projection B_n -> I^n: deleted -> 1-side, tail singletons -> 0-side,
// head survivors free; nullopt when the face collapses to lower dimension.
std::optional<CubeFace> project_to_cube(const PcubeFace& f);

// Product structure of a face: the permutocube part over the head and the
// permutahedral tail factors (in local labels), with the ground-set maps.
struct PcubeCellStructure {
    int base_m = 0;                 // the head part is a B_{base_m}
    Block head_ground;              // global labels of head survivors
    std::vector<Block> factor_grounds;   // global labels per tail block
};
PcubeCellStructure cell_structure(const PcubeFace& f);

// Printing ("04]12|3|56", head 0 dropped when the head has other elements;
// deleted indices implicit) and parsing (accepts both head forms and an
// optional explicit "deleted;" prefix).
std::string format_pcube(const PcubeFace& f);
PcubeFace parse_pcube(const std::string& text, int n);

}  // namespace permutocalc
