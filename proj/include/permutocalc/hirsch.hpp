#pragma once
// Differential graded algebras, the bar construction, the Hirsch operations
// E_{p,q}, the twisting-element condition, and the twisted multiplications on
// tensor products and the acyclic bar construction.

#include "permutocalc/chains.hpp"
#include "permutocalc/cubical.hpp"
#include "permutocalc/omega.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace permutocalc {

// A 1-reduced dga with cohomological grading: basis names with degrees
// (the unit has degree 0, degree 1 is empty), differential of degree +1 and an
// associative product, both given on basis elements as chains.
struct DGAlgebra {
    std::string unit = "1";
    std::map<std::string, int> degree;
    std::map<std::string, Chain> diff;
    std::map<std::pair<std::string, std::string>, Chain> product;

    int top_degree() const;
    std::vector<std::string> basis(int deg) const;    // excluding nothing
    Chain d(const Chain& c) const;
    Chain mul(const Chain& a, const Chain& b) const;
    // d^2 = 0, Leibniz, associativity, unit laws; throws on violation
    void validate() const;
};

// The cochain algebra of a fixture cubical set (normalized cochains with the
// cup product dual to the Serre diagonal).
DGAlgebra cochain_algebra(const CubicalSet& q);
// A commutative truncated polynomial algebra: generator x of degree deg with
// x^trunc = 0 and zero differential.
DGAlgebra truncated_polynomial(int deg, int trunc);

// A bar word [a_1|...|a_n] of basis names of degree >= 2; degree sum(|a_i|-1).
using BarWord = std::vector<std::string>;
std::string bar_id(const BarWord& w);
int bar_degree(const DGAlgebra& A, const BarWord& w);
std::vector<BarWord> bar_words(const DGAlgebra& A, int cap);

// The bar differential (the convention that makes the canonical projection
// BA -> A a twisting cochain with nabla pi = -pi cup pi).
Chain bar_boundary(const DGAlgebra& A, const BarWord& w);
ChainComplex bar_complex(const DGAlgebra& A, int cap, Ring ring = Ring::Z);

// Hirsch operations: E_{p,q} on tuples of basis elements.
struct HirschStructure {
    const DGAlgebra* A = nullptr;
    // table holds only nonzero values for p+q >= 2 entries; E_{1,0} and E_{0,1}
    // are the identity implicitly
    std::map<std::pair<BarWord, BarWord>, Chain> table;

    Chain E(const BarWord& as, const BarWord& bs) const;
};

// The canonical Hirsch structure on the cochains of a fixture, by the explicit
// stream formula over iterated cubical faces.
HirschStructure cubical_hirsch_structure(const CubicalSet& q, const DGAlgebra& A, int cap);
// The trivial (commutative) Hirsch structure: E_{p,q} = 0 for p,q >= 1.
HirschStructure trivial_hirsch_structure(const DGAlgebra& A);

// nabla E + E cup E evaluated on all bar pairs with total degree <= cap;
// returns the largest residual coefficient (0 iff E is a twisting element).
long long twisting_element_residual(const HirschStructure& E, int cap, Ring ring = Ring::Z);

// The E_{1,1} identity: d E(a;b) - E(da;b) + (-1)^{|a|} E(a;db)
//   = (-1)^{|a|} ab - (-1)^{|a|(|b|+1)} ba; returns the largest residual.
long long e11_identity_residual(const HirschStructure& E);

// The product mu_E on BA (the coalgebra-map extension of E).
Chain mu_E(const HirschStructure& E, const BarWord& a, const BarWord& b);
// Chain-map residual of mu_E: BA (x) BA -> BA through the cap.
long long mu_E_chain_map_residual(const HirschStructure& E, int cap);
// Associator of mu_E on bar words through the cap (zero for commutative A with
// trivial E; measured, never asserted in general).
long long mu_E_associator_residual(const HirschStructure& E, int cap);

// ---- the acyclic bar construction with the twisted multiplication ------------

// B(A;A) = A (x) BA with the twisted differential; cells "b0 (x) [a|..]".
struct AcyclicBar {
    const DGAlgebra* A = nullptr;
    const HirschStructure* E = nullptr;

    std::string cell_id(const std::string& b0, const BarWord& w) const;
    std::vector<std::pair<std::string, BarWord>> cells(int cap) const;
    Chain boundary(const std::string& b0, const BarWord& w) const;
    ChainComplex complex(int cap, Ring ring = Ring::Z) const;
    // the twisted multiplication
    Chain mul(const std::string& a0, const BarWord& aw, const std::string& b0,
              const BarWord& bw) const;
    // derivation residual of the twisted multiplication through the cap
    long long derivation_residual(int cap) const;
    long long associator_residual(int cap) const;
};

// The comultiplicative extension of the universal projection BA -> A is an
// algebra map (multiplicativity of the universal twisting cochain); returns
// the largest residual through the cap.
long long universal_projection_multiplicative_residual(const HirschStructure& E, int cap);

// The cochain twisting cochain theta^*: C^*(Omega Q) -> C^{*+1}(Q) is
// multiplicative: its comultiplicative extension intertwines the product dual
// to the omega diagonal with mu_E; checked over Z_2 through the cap.
long long theta_star_multiplicative_residual(const CubicalSet& q, const DGAlgebra& A,
                                             const HirschStructure& E, int cap);

}  // namespace permutocalc
