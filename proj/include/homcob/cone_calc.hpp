#pragma once

// The T^S category over the homotopy category of finite GF(2) chain
// complexes, with T = identity: cone decompositions, certificate-checked
// equivalence, the explicit composition procedure, the monoidal sum, the
// projection functor, and Fredholm index arithmetic.

#include <optional>

#include "chain.hpp"
#include "report.hpp"

namespace homcob {

// One exact triangle T⁻¹X → Y → Ynext → X.  With no certificate the triangle
// is strict: Ynext is literally Cone(u) with the canonical v (inclusion) and
// w (projection).  Otherwise `cert` is a quasi-iso t: Ynext → Cone(u) whose
// induced homology maps commute with v, w.
struct Triangle {
    ChainComplex x, y, ynext;
    BitMatrix u, v, w;  // u: X→Y, v: Y→Ynext, w: Ynext→X
    std::optional<BitMatrix> cert;
};

struct ConeDecomposition {
    std::vector<Triangle> tris;  // tris[0].y must be the zero complex

    int length() const { return (int)tris.size(); }
    const ChainComplex& total() const;  // A = Y_{k+1}
    std::vector<ChainComplex> linearization() const;
    bool is_strict() const;
};

// Build the strict tower: Y₁ = 0, Y_{i+1} = Cone(u_i: X_i → Y_i).
// us[i] has shape dim(Y_{i+1-1}) × dim(X_i); us[0] is the 0 × dim(X₁) map.
ConeDecomposition strict_decomposition(const std::vector<ChainComplex>& xs,
                                       const std::vector<BitMatrix>& us);

// Trivial decomposition of x: length 1, triangle x → 0 → x → x.
ConeDecomposition trivial_decomposition(const ChainComplex& x);

Report check_cone_decomposition(const ConeDecomposition& eta);

// Equivalence via witnesses I₁..I_{k+1} (isomorphisms Y_i → Y′_i); squares
// are required to commute up to chain homotopy (verified by linear solve).
bool check_equivalence(const ConeDecomposition& eta, const ConeDecomposition& etap,
                       const std::vector<BitMatrix>& witnesses);

// Search for equivalence witnesses, square by square (affine solve per step,
// seeded perturbations to reach an invertible solution).
std::optional<std::vector<BitMatrix>> find_equivalence_witnesses(
    const ConeDecomposition& eta, const ConeDecomposition& etap, uint64_t seed = 1,
    int tries = 64);

// A summand Ψ = (φ, a, η): a quasi-iso φ: source → a together with a strict
// cone decomposition η of a; the homotopy-inverse data (φ⁻¹, K) with
// φ⁻¹φ = id + dK + Kd is carried explicitly.
struct TSSummand {
    ChainComplex source;
    BitMatrix phi, phi_inv, kk;
    ConeDecomposition eta;

    const ChainComplex& top() const { return eta.total(); }
};

TSSummand identity_summand(const ChainComplex& x);

struct TSMorphism {
    std::vector<TSSummand> summands;  // one per source-tuple element, in order

    std::vector<ChainComplex> source_tuple() const;
    std::vector<ChainComplex> target_tuple() const;
};

TSMorphism identity_ts(const std::vector<ChainComplex>& tuple);

Report check_ts_morphism(const TSMorphism& m);

// Φ ∘ Φ′ (first Φ′, then Φ): the inner towers are spliced into the outer
// ones line by line, factorized over the blocks of Φ′.
TSMorphism compose_ts(const TSMorphism& phi, const TSMorphism& phip);

// Concatenation (monoidal sum); unit = the void family.
TSMorphism sum_ts(const TSMorphism& a, const TSMorphism& b);

// 𝒫(Ψ) = w_k ∘ φ: source → x_k.
ChainMap project_ts_summand(const TSSummand& s);
// 𝒫 of a morphism = projection of its last summand.
ChainMap project_ts(const TSMorphism& m);

// Summand-level TS equivalence: decompositions equivalent via the witnesses
// and φ′ ≃ I_{k+1} ∘ φ.
bool ts_summand_equivalent(const TSSummand& a, const TSSummand& b,
                           const std::vector<BitMatrix>& witnesses);

// --- Fredholm index arithmetic ---------------------------------------------

struct MorseIndexProfile {
    std::vector<int> entries;  // |p|_{f_1} .. |p|_{f_k}, each 0 or 1
    int exit = 0;              // |p|_{f_{k+1}}
};

// |p|_{f_1} + … + |p|_{f_k} − |p|_{f_{k+1}} − (k−1)
int fredholm_index(const MorseIndexProfile& p);

enum class IndexCase {
    K1Equal,          // k = 1 and the two indices agree (index 0)
    AllOnes,          // every index 1 (index 0)
    SingleZeroEntry,  // exit 0, exactly one entry 0, rest 1 (index 0)
    ExitZeroAllOnes,  // all entries 1, exit 0 (index 1)
    NotRealizable,    // no nonconstant solution has this profile
};

IndexCase classify_index(const MorseIndexProfile& p);

} // namespace homcob
