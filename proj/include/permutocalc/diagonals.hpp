#pragma once
// Orthogonal streams, strong complementary pairs, the R/L shift orbits, the
// pair sign, and the explicit diagonals on permutahedra, permutocubes and
// cubes, together with the orientation-aware pushforwards that certify their
// compatibility.

#include "permutocalc/chains.hpp"
#include "permutocalc/pcube.hpp"
#include "permutocalc/perm.hpp"

#include <optional>
#include <vector>

namespace permutocalc {

// Maximal decreasing / increasing consecutive runs of a word, as sorted blocks.
std::vector<Block> decreasing_runs(const Word& w);
std::vector<Block> increasing_runs(const Word& w);

// Strong complementary pair of a vertex of the top cell.
std::pair<PermFace, PermFace> scp_P(const Word& x);
std::pair<PcubeFace, PcubeFace> scp_B(int n, const PcubeVertex& x);

// One-pass shift orbits: R_{M_{l-1}}...R_{M_0} (each position shifted at most
// once, left to right; 0 never leaves a head block), and the dual L orbit
// (applied right to left).
std::vector<std::vector<Block>> r_orbit(const std::vector<Block>& blocks, bool head0);
std::vector<std::vector<Block>> l_orbit(const std::vector<Block>& blocks);

struct StreamP {
    std::vector<PermFace> U, V;
    PermFace u0, v0;
};
struct StreamB {
    std::vector<PcubeFace> U, V;
    PcubeFace u0, v0;
};
StreamP orthogonal_stream_P(const Word& x);
StreamB orthogonal_stream_B(int n, const PcubeVertex& x);

// sgn(u,v) = (-1)^{C(k_v,2)} rsgn(u_x) sgn1(u) sgn1(v~) sgn1(u_x), where v~
// appends v's deleted indices as trailing ascending singleton blocks.
int pair_sign_P(const PermFace& u, const PermFace& v, const PermFace& ux);
int pair_sign_B(const PcubeFace& u, const PcubeFace& v, const PcubeFace& ux);

template <typename FaceT>
struct DiagonalTerm {
    FaceT left, right;
    long long coeff;
};
using PTerm = DiagonalTerm<PermFace>;
using BTerm = DiagonalTerm<PcubeFace>;
using CubeTerm = DiagonalTerm<CubeFace>;

// Explicit diagonals; proper faces via Koszul products of factor tops through
// the cell structure.  Like terms are combined and zeros dropped.
std::vector<PTerm> diagonal_P(const PermFace& f);
std::vector<BTerm> diagonal_B(const PcubeFace& f);
// Serre diagonal of a cube face.
std::vector<CubeTerm> serre_diagonal(const CubeFace& c);

// Terms as a tensor chain (for chain-map oracles).
Chain diagonal_P_chain(const PermFace& f);
Chain diagonal_B_chain(const PcubeFace& f);
Chain serre_diagonal_chain(const CubeFace& c);

// Orientation-aware cellular pushforwards: the chain maps induced by
// rho: P_n -> I^{n-1} and the cube projection of B_n, with per-face degree +-1
// determined recursively from boundaries.
struct CubePush {
    CubeFace cell;
    int deg;
};
std::optional<CubePush> rho_pushforward(const PermFace& f);
std::optional<CubePush> cube_pushforward(const PcubeFace& f);

// Internal sign helpers (exposed for tests).
int sgn1_of(const std::vector<Block>& blocks);
int rsgn_of(const std::vector<Block>& blocks);

// Signed stream pair lists of the top cells (the diagonals' index sets).
const std::vector<PTerm>& os_terms_P(int m);
const std::vector<BTerm>& os_terms_B(int m);

}  // namespace permutocalc
