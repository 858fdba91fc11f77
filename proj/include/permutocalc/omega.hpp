#pragma once
// The monoidal permutahedral set Omega(Q), the identification of its chains
// with the cobar construction, truncating twisting functions, and twisted
// Cartesian products with their twisted chain complexes.

#include "permutocalc/chains.hpp"
#include "permutocalc/cubical.hpp"
#include "permutocalc/diagonals.hpp"

#include <optional>
#include <string>
#include <vector>

namespace permutocalc {

// A monomial of Omega(Q): a word of desuspended cells of Q.  Unit factors
// (1-cells) are absorbed; the empty word is the monoid unit e.
struct OmegaWord {
    std::vector<CubCell> factors;   // each of dimension >= 2 after normalization

    bool operator==(const OmegaWord&) const = default;
    bool operator<(const OmegaWord& o) const { return factors < o.factors; }
};
std::string omega_id(const OmegaWord& w);

// Normalize: absorb unit factors; returns the word and whether any factor is a
// degenerate cell of Q (such words die in the normalized chain complex).
OmegaWord omega_normalize(const CubicalSet& q, std::vector<CubCell> factors, bool* degenerate);

int omega_degree(const CubicalSet& q, const OmegaWord& w);   // sum of (dim - 1)
int omega_grading(const CubicalSet& q, const OmegaWord& w);  // degree + 1

// The face operator d_{A|B} on a word; A|B a partition of underline{grading}.
// Returns nullopt when A|B is in no Q-class (the operator is degenerate) or
// when the resulting word contains a degenerate factor.
std::optional<OmegaWord> omega_face(const CubicalSet& q, const Block& A, const Block& B,
                                    const OmegaWord& w);

// Basis of normalized words with degree <= cap.
std::vector<OmegaWord> omega_words(const CubicalSet& q, int cap);

// The permutahedral-set differential of Omega(Q) on a word (chain level).
Chain omega_boundary(const CubicalSet& q, const OmegaWord& w);

// Chain complex of Omega(Q) through the degree cap.
ChainComplex omega_complex(const CubicalSet& q, int cap, Ring ring = Ring::Z);

// The algebraic cobar construction of (C^square(Q), Serre diagonal), built
// independently; same basis ids.
Chain cobar_boundary(const CubicalSet& q, const OmegaWord& w);
ChainComplex cobar_complex(const CubicalSet& q, int cap, Ring ring = Ring::Z);

// Basis-by-basis equality of the two differentials; on mismatch returns a
// human-readable counterexample report.
std::optional<std::string> verify_cobar_identity(const CubicalSet& q, int cap);

// ---- structural diagonal of Omega(Q) -----------------------------------------

// d_u(w) for a face u of P_m (m = grading of w): the operator word of u applied
// through omega_face; nullopt when some step degenerates.
std::optional<OmegaWord> omega_apply_face_word(const CubicalSet& q, const PermFace& u,
                                               const OmegaWord& w);

// The diagonal of C(Omega Q) via orthogonal streams and the structural face
// operators: Delta(w) = sum sgn(u,v) d_u(w) (x) d_v(w).
Chain omega_diagonal(const CubicalSet& q, const OmegaWord& w);

// The cobar-side diagonal: on generators by the explicit stream formula over
// iterated cubical faces, extended multiplicatively with Koszul signs.
Chain cobar_diagonal(const CubicalSet& q, const OmegaWord& w);
struct OmegaDiagTerm {
    OmegaWord left, right;
    long long coeff;
};
std::vector<OmegaDiagTerm> cobar_diagonal_terms(const CubicalSet& q, const OmegaWord& w);

// E^{p,q} components on a generator: the (p,q)-factor-count part of the
// generator diagonal, as tensor-word chains.
Chain cobar_diagonal_generator_component(const CubicalSet& q, const CubCell& a, int p, int qq);

// ---- truncating twisting functions --------------------------------------------

// The universal twisting function x -> xbar; component evaluation.
OmegaWord universal_twisting(const CubicalSet& q, const CubCell& x);

// Checks the three axioms of a truncating twisting function for theta = the
// universal one, on every cell of Q up to the cap; returns a report on failure.
std::optional<std::string> check_universal_twisting(const CubicalSet& q, int cap);

// ---- twisted Cartesian products ------------------------------------------------

// A cell of Q x_theta Omega(Q) (or of the trivial-monoid product when
// trivial_fiber_degree >= 0 and the word is ignored).
struct TwistedCell {
    CubCell base;
    OmegaWord fiber;
    bool operator==(const TwistedCell&) const = default;
    bool operator<(const TwistedCell& o) const {
        return std::tie(base, fiber) < std::tie(o.base, o.fiber);
    }
};
std::string twisted_id(const TwistedCell& c);

enum class FiberKind { UniversalOmega, TrivialMonoid };

// The five structure operators of the twisted product P(Q) = Q x_{theta_U} Omega(Q).
// Face operators return nullopt when degenerate at the chain level.
struct TwistedProduct {
    const CubicalSet* q;
    FiberKind kind = FiberKind::UniversalOmega;

    int base_degree(const TwistedCell& c) const;
    int fiber_grading(const TwistedCell& c) const;
    int total_degree(const TwistedCell& c) const;
    bool cell_degenerate(const TwistedCell& c) const;

    std::optional<TwistedCell> d_i(int i, const TwistedCell& c) const;
    std::optional<TwistedCell> d_am(const Block& A, const Block& M, const TwistedCell& c) const;
    std::optional<TwistedCell> d_perm(const Block& M1, const Block& M2, const TwistedCell& c) const;
    TwistedCell eta_i(int i, const TwistedCell& c) const;

    // normalized cells with total degree <= cap
    std::vector<TwistedCell> cells(int cap) const;
    // the permutocubical differential d_{p,q}
    Chain boundary(const TwistedCell& c) const;
    ChainComplex complex(int cap, Ring ring = Ring::Z) const;

    // the permutocubical-set diagonal (double stream sum) of a cell
    Chain diagonal(const TwistedCell& c) const;
};

// The algebraic acyclic cobar construction Omega(C;C) = C (x) Omega(C) of
// C = C^square(Q), with the canonical twisted differential; same basis ids as
// TwistedProduct{UniversalOmega}.
ChainComplex acyclic_cobar_complex(const CubicalSet& q, int cap, Ring ring = Ring::Z);
std::optional<std::string> verify_acyclic_cobar_identity(const CubicalSet& q, int cap);

// Checks the four permutocubical face-relation families on the twisted product
// through the total-degree cap; returns a report on the first failure.
std::optional<std::string> check_permutocubical_relations(const TwistedProduct& pq, int cap);

}  // namespace permutocalc
