#pragma once

// Extended multilinear maps and A∞-categories over GF(2): the compositions
// ∘, ⋆, ⊣, the A∞ relation, functors, natural transformations, homotopies,
// and the homology category.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "chain.hpp"
#include "report.hpp"

namespace homcob {

using Obj = int;
using Key = std::vector<Obj>;  // object tuple; length = arity + 1 for hom-type maps

constexpr int kDefaultArityCap = 4;

// An extended multilinear map between hom collections.  A component for key
// (i0,…,ik) consumes inputs in hom(i0,i1) ⊗ … ⊗ hom(i_{k-1},i_k) and outputs
// into a space that depends only on the endpoints (i0, ik) — for a functor
// that space is hom_target(idx(i0), idx(ik)), for the T′ part of a
// pre-natural transformation it is hom_B(F(i0), G(ik)).  Column index of an
// input tuple is mixed-radix with the first input most significant.
struct ExtendedMap {
    int nobj = 0;
    std::vector<int> in_dims;    // nobj*nobj, row-major: source hom dims
    std::vector<int> out_dims;   // nobj*nobj: output space dims per endpoint pair
    std::vector<Obj> index_map;  // object action (identity for μ and T′)
    int arity_cap = kDefaultArityCap;
    std::map<Key, BitMatrix> comp;  // absent keys are zero

    int in_dim(Obj a, Obj b) const { return in_dims[a * nobj + b]; }
    int out_dim(Obj a, Obj b) const { return out_dims[a * nobj + b]; }

    std::vector<int> key_input_dims(const Key& k) const;
    int key_cols(const Key& k) const;

    // Insert/overwrite a component after shape validation.
    void set_component(const Key& k, BitMatrix m);
    // XOR a contribution into a (possibly absent) component.
    void accumulate(const Key& k, int col, const BitVec& v);

    void prune_zeros();
    void truncate(int cap);

    static ExtendedMap zero_like(const ExtendedMap& shape);
};

bool components_equal(const ExtendedMap& a, const ExtendedMap& b);
ExtendedMap component_sum(const ExtendedMap& a, const ExtendedMap& b);

// Mixed extended multilinear map: k−1 category inputs and one module input.
// A component for key (i0,…,i_{k-1}) consumes hom(i0,i1) ⊗ … ⊗
// hom(i_{k-2},i_{k-1}) ⊗ M(i_{k-1}) and outputs into N(i0).
struct MixedExtendedMap {
    int nobj = 0;
    std::vector<int> cat_dims;  // nobj*nobj
    std::vector<int> mod_in;    // per object: dim M(L)
    std::vector<int> mod_out;   // per object: dim N(L)
    int arity_cap = kDefaultArityCap;
    std::map<Key, BitMatrix> comp;

    int cat_dim(Obj a, Obj b) const { return cat_dims[a * nobj + b]; }

    std::vector<int> key_input_dims(const Key& k) const;
    int key_cols(const Key& k) const;

    void set_component(const Key& k, BitMatrix m);
    void accumulate(const Key& k, int col, const BitVec& v);

    void prune_zeros();
    void truncate(int cap);
};

bool components_equal(const MixedExtendedMap& a, const MixedExtendedMap& b);
MixedExtendedMap component_sum(const MixedExtendedMap& a, const MixedExtendedMap& b);

// --- shared multilinear helpers -------------------------------------------

// Mixed-radix odometer over input tuples; returns false when exhausted.
bool next_tuple(const std::vector<int>& dims, std::vector<int>& idx);
int tuple_index(const std::vector<int>& dims, const std::vector<int>& idx);

// Multilinear evaluation of a component matrix on vector arguments.
BitVec eval_multilinear(const BitMatrix& m, const std::vector<int>& dims,
                        const std::vector<BitVec>& args);

// --- compositions ----------------------------------------------------------

// (G∘F): every input block fed through F, block outputs fed to G.
ExtendedMap compose_circle(const ExtendedMap& g, const ExtendedMap& f, int out_cap);
// (G⋆F): one consecutive block fed through F, inserted into one slot of G.
ExtendedMap compose_star(const ExtendedMap& g, const ExtendedMap& f, int out_cap);
// (P⊣Q): Q consumes a suffix of category inputs plus the module input.
MixedExtendedMap compose_mixed(const MixedExtendedMap& p, const MixedExtendedMap& q,
                               int out_cap);
// (Q⋆F): F inserted into the category slots only, never the module slot.
MixedExtendedMap compose_mixed_star(const MixedExtendedMap& q, const ExtendedMap& f,
                                    int out_cap);

// --- A∞-categories ---------------------------------------------------------

struct AInfCategory {
    std::vector<std::string> names;  // object names (unique)
    int nobj = 0;
    std::vector<int> dims;  // nobj*nobj hom dims
    ExtendedMap mu;         // identity index map; in = out = dims
    int arity_cap = kDefaultArityCap;

    int dim(Obj a, Obj b) const { return dims[a * nobj + b]; }
    BitMatrix mu1(Obj a, Obj b) const;  // arity-1 component (zero if absent)
    ChainComplex hom_complex(Obj a, Obj b) const;
    Obj object(const std::string& name) const;  // throws UnknownObject
};

Report check_a_infinity(const AInfCategory& a);

// Functor check: F ⋆ μ^A = μ^B ∘ F on all components up to the cap.
Report check_functor(const ExtendedMap& f, const AInfCategory& a, const AInfCategory& b);

ExtendedMap identity_functor(const AInfCategory& a);

// --- pre-natural transformations ------------------------------------------

struct PreNaturalTransformation {
    std::vector<BitVec> t0;  // per object L: element of hom_B(F(L), G(L))
    ExtendedMap tp;          // T′; out_dims(a,b) = dim_B(F(a), G(b))
};

PreNaturalTransformation zero_transformation(const AInfCategory& a, const AInfCategory& b,
                                             const ExtendedMap& f, const ExtendedMap& g);

// The arity ≥ 1 parts of μ^B applied across (F, T, G): sum over insertions of
// one T-block amid F- and G-blocks.
ExtendedMap mu_ftg(const AInfCategory& b, const ExtendedMap& f,
                   const PreNaturalTransformation& t, const ExtendedMap& g, int out_cap);

// μ₁ in the functor category applied to T: the pair (μ₁^B(T⁰), the naturality
// defect of T′).
PreNaturalTransformation functor_mu1(const AInfCategory& a, const AInfCategory& b,
                                     const ExtendedMap& f, const ExtendedMap& g,
                                     const PreNaturalTransformation& t);

Report check_natural_transformation(const PreNaturalTransformation& t, const ExtendedMap& f,
                                    const ExtendedMap& g, const AInfCategory& a,
                                    const AInfCategory& b);

// Composite transformation (S∘T) for T: F → G and S: G → H.
PreNaturalTransformation compose_pre_natural(const PreNaturalTransformation& s,
                                             const PreNaturalTransformation& t,
                                             const AInfCategory& a, const AInfCategory& b,
                                             const ExtendedMap& f, const ExtendedMap& g,
                                             const ExtendedMap& h);

// F ≃ G via witness T with T⁰ = 0: checks (0, F−G) = μ₁(T).
bool check_homotopic(const ExtendedMap& f, const ExtendedMap& g,
                     const PreNaturalTransformation& t, const AInfCategory& a,
                     const AInfCategory& b);

// --- homology category -----------------------------------------------------

struct HomologyCategory {
    int nobj = 0;
    std::vector<HomologyData> hom;  // nobj*nobj
    // product H(a,b) ⊗ H(b,c) → H(a,c); columns mixed-radix (i most significant)
    std::map<std::tuple<Obj, Obj, Obj>, BitMatrix> product;
    std::vector<std::optional<BitVec>> units;  // detected unit class per object

    const HomologyData& h(Obj a, Obj b) const { return hom[a * nobj + b]; }
    BitVec multiply(Obj a, Obj b, Obj c, const BitVec& x, const BitVec& y) const;
};

HomologyCategory homology_category(const AInfCategory& a);

} // namespace homcob
