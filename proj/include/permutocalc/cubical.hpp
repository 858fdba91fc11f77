#pragma once
// Finite cubical sets: explicit nondegenerate cells with face tables, formal
// degeneracies in canonical form, the cubical identities, and the two embedded
// test fixtures.

#include "permutocalc/sets.hpp"

#include <map>
#include <string>
#include <vector>

namespace permutocalc {

// A cell of a cubical set: eta_{e_1} ... eta_{e_k](base) with e_1 > ... > e_k
// (canonical form under eta_i eta_j = eta_{j+1} eta_i for i <= j).
struct CubCell {
    std::string base;
    std::vector<int> etas;   // strictly decreasing

    bool operator==(const CubCell&) const = default;
    bool operator<(const CubCell& o) const {
        return std::tie(base, etas) < std::tie(o.base, o.etas);
    }
    bool degenerate() const { return !etas.empty(); }
};
std::string cub_id(const CubCell& c);

struct CubicalSet {
    std::string name;
    std::map<std::string, int> nd_dim;                        // nondegenerate cells
    std::map<std::string, std::vector<CubCell>> d0, d1;       // face tables (index 1..n)
    bool one_reduced = false;

    int dim(const CubCell& c) const;
    CubCell eta(int j, const CubCell& c) const;
    // d^eps_i on an arbitrary cell, via the cubical identities.
    CubCell face(int eps, int i, const CubCell& c) const;
    // iterated faces over a sorted index set, applied largest index first
    CubCell face_set(int eps, const Block& idx, const CubCell& c) const;

    // all cells of the given dimension, degenerate ones included
    std::vector<CubCell> cells(int d) const;
    std::vector<CubCell> nondegenerate_cells(int d) const;
    const std::string& base_point() const;
    CubCell degenerate_point(int d) const;   // eta_d ... eta_1 (point)

    // checks the cubical identities on every cell up to the cap; throws on
    // violation, returns the number of identities checked
    long validate(int max_dim) const;
};

// Fixtures: the cellular 2-sphere-like set (one 0-cell, one 2-cell) and a
// synthetic set with one 2-cell and one 3-cell.
CubicalSet fixture_cube2();
CubicalSet fixture_synthetic23();
CubicalSet fixture_by_name(const std::string& name);

// JSON document {name, cells: {"<degree>": [names]}, d0: {name: [cell...]},
// d1: {...}}; a face entry is a nondegenerate cell name or "@k" for the
// canonical degenerate k-cell over the base point.
CubicalSet cubical_from_json(const std::string& text);
std::string cubical_to_json(const CubicalSet& q);

}  // namespace permutocalc
