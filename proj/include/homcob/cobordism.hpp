#pragma once

// Chain-level cobordism model: snake complexes with their projection /
// inclusion / truncation maps, iterated cone modules attached to a cobordism
// datum, filtration checking, assembly of the induced T^S morphism, and the
// composition-compatibility check.

#include "cone_calc.hpp"
#include "modules.hpp"

namespace homcob {

// --- snake complexes -------------------------------------------------------

struct SnakeComplex {
    ChainComplex base;
    int l = 3;            // odd, >= 3
    ChainComplex total;   // dim l * base.dim; copy j at rows (j-1)*n .. j*n-1
};

// Differential: d(x^(j)) = (dx)^(j) for j even, (dx)^(j) + x^(j-1) + x^(j+1)
// for j odd, with x^(0) = x^(l+1) = 0.
SnakeComplex build_snake(const ChainComplex& base, int l);  // throws EvenL

// c_j: x^(i) -> x if i = j else 0 (j odd); quasi-iso.
ChainMap snake_projection(const SnakeComplex& s, int j);  // throws EvenIndex

// e: x -> sum of x^(i) over odd i; c_j ∘ e = id for every odd j.
ChainMap snake_inclusion(const SnakeComplex& s);

// p: snake at l -> snake at l-2, x^(i) -> x^(i) for i <= l-2, else 0.
ChainMap snake_truncation(const SnakeComplex& s);  // throws LTooSmall

// One-object A∞-category with hom(L,L) = c and μ₁ = d (higher μ = 0).
AInfCategory one_object_category(const ChainComplex& c, const std::string& name = "L");

// c_j and e as (degree-1) functors between the one-object categories of
// total and base.
ExtendedMap snake_projection_functor(const SnakeComplex& s, int j);
ExtendedMap snake_inclusion_functor(const SnakeComplex& s);

// Homotopy witness T (T⁰ = 0, T′(x^(2)) = x) making c₁ ≃ c₃ at l = 3.
PreNaturalTransformation snake_projection_homotopy(const SnakeComplex& s);

// --- cobordism data and iterated cones -------------------------------------

// An abstract cobordism L ⇝ (L₁,…,L_m) over an ambient category whose
// objects serve as the test objects: connecting module morphisms
// φ_j: 𝒴(L_j) → 𝓜_{j-1} for 2 ≤ j ≤ m, and the optional end comparison
// φ_V: 𝒴(L) → 𝓜_m.
struct CobordismDatum {
    AInfCategory amb;
    Obj positive_end = 0;
    std::vector<Obj> negative_ends;      // L_1 .. L_m
    std::vector<ModuleMorphism> phis;    // phis[j-2] = φ_j, j = 2..m
    std::optional<ModuleMorphism> phi_v;
};

struct IteratedCones {
    std::vector<AInfModule> modules;                  // 𝓜₁ .. 𝓜_m
    std::vector<ExactTriangleCertificate> triangles;  // m-1 strict triangles
};

IteratedCones build_iterated_cones(const CobordismDatum& v);

// Filtration levels: per object, a level tag for each module-space generator;
// optionally a word-length tag per hom generator (default 1).
struct FiltrationProfile {
    std::vector<std::vector<int>> module_levels;  // [object][generator]
    std::vector<std::vector<int>> hom_tags;       // [a*nobj+b][generator], may be empty
};

// Levels induced by the iterated-cone block structure of 𝓜_j.
FiltrationProfile cone_filtration(const CobordismDatum& v, int j);

// Upper-triangularity: each action component maps a module input of level s
// into levels <= s, and vanishes when any category input carries a tag
// exceeding 2s + 1.
Report check_filtration(const AInfModule& m, const FiltrationProfile& p);

// The T^S morphism (φ_V(N), 𝓜_m(N), strict objectwise decomposition) at a
// test object N; linearization (CF(N,L₁),…,CF(N,L_m)).
TSMorphism assemble_functor_value(const CobordismDatum& v, Obj n);
// throws MissingEndComparison / NotQuasiIso

// Verify 𝓕̃(V″) ≍ (id + 𝓕̃(V′) + id) ∘ 𝓕̃(V) at test object n, where V′ is
// glued at negative end `slot` (1-based) of V.  Witnesses may be supplied;
// otherwise they are searched for, and MissingWitness is thrown when no
// witness tower can be found.
Report check_composition_compatibility(const CobordismDatum& v, const CobordismDatum& vp,
                                       int slot, const CobordismDatum& vpp, Obj n,
                                       const std::vector<BitMatrix>* witnesses = nullptr,
                                       uint64_t seed = 1);

// 𝓕([V]) as "image of the unity": homology coordinates, in CF(L, L_m), of
// the last-slot projection of φ_V(unit_cycle).
BitVec functor_class_from_unit(const CobordismDatum& v, const BitVec& unit_cycle);
// throws MissingEndComparison / NotACycle

} // namespace homcob
