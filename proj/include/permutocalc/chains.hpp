#pragma once
// Graded chain complexes with Z or Z_2 coefficients, the cellular boundary
// operators, tensor complexes with Koszul signs, chain-map residuals, and
// homology via integer Smith normal form.

#include "permutocalc/pcube.hpp"
#include "permutocalc/perm.hpp"

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace permutocalc {

enum class Ring { Z, Z2 };

// Finitely supported integer combination of basis cells (string ids).
struct Chain {
    std::map<std::string, long long> terms;

    void add(const std::string& cell, long long c);
    Chain& operator+=(const Chain& o);
    Chain scaled(long long c) const;
    void reduce(Ring ring);          // drop zeros; mod 2 when asked
    bool zero(Ring ring) const;
    long long max_norm() const;
    bool operator==(const Chain&) const = default;
};

struct ChainComplex {
    Ring ring = Ring::Z;
    std::map<int, std::vector<std::string>> basis;            // degree -> cells
    std::unordered_map<std::string, int> degree;
    std::unordered_map<std::string, Chain> boundary;

    void add_cell(const std::string& cell, int deg);
    void set_boundary(const std::string& cell, Chain b);
    Chain boundary_of(const Chain& c) const;
    // Largest |coefficient| in d(d(cell)) over all cells; 0 iff d^2 = 0.
    long long d_squared_residual() const;
};

// Cell ids.
std::string pface_id(const PermFace& f);
std::string bface_id(const PcubeFace& f);
std::string cube_id(const CubeFace& c);

// ---- cellular boundaries ----------------------------------------------------

// Convention: boundary_perm(top of P_2) = (1|2) - (2|1); the fiber-style
// multipermutahedral signs are global-sign-flipped accordingly.
Chain boundary_perm(const PermFace& f);
// Convention: boundary_pcube(top of B_1) = (0]1) - (0]).
Chain boundary_pcube(const PcubeFace& f);
// Convention: the interval boundary is (0) - (1).
Chain boundary_cube(const CubeFace& c);

// Face-level term lists of the same boundaries.
std::vector<std::pair<PermFace, int>> boundary_perm_terms(const PermFace& f);
std::vector<std::pair<PcubeFace, int>> boundary_pcube_terms(const PcubeFace& f);
std::vector<std::pair<CubeFace, int>> boundary_cube_terms(const CubeFace& c);

int cube_dim(const CubeFace& c);
std::vector<CubeFace> cube_faces_all(int n);

// Complete cellular complexes.
ChainComplex complex_P(int n, Ring ring = Ring::Z);
ChainComplex complex_B(int n, Ring ring = Ring::Z);
ChainComplex complex_I(int n, Ring ring = Ring::Z);

// ---- tensor, chain maps, homology -------------------------------------------

std::string tensor_id(const std::string& a, const std::string& b);

// Tensor complex with the Koszul sign on 1 (x) d.
ChainComplex tensor(const ChainComplex& C, const ChainComplex& D);

// Max-norm of dF - Fd over the given degrees of C.
long long chain_map_residual(const std::function<Chain(const std::string&)>& F,
                             const ChainComplex& C, const ChainComplex& D,
                             int deg_lo, int deg_hi);

struct HomologyGroup {
    int betti = 0;
    std::vector<long long> torsion;   // invariant factors > 1
};
// Homology over Z (Smith normal form) or dimension counts over Z_2.
std::map<int, HomologyGroup> homology(const ChainComplex& C, int deg_lo, int deg_hi);

// Smith normal form diagonal of an integer matrix (invariant factors, >= 0).
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m);

// Sparse triplet export of the boundary matrix from degree k to k-1:
// lines "row col coeff" with the bases in canonical order.
std::string export_boundary_triplets(const ChainComplex& C, int k);

}  // namespace permutocalc
