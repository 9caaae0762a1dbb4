#pragma once

// A∞-modules over an A∞-category: module morphisms, cones, pullback, the
// Yoneda embedding, and exact-triangle verification.

#include "ainf.hpp"

namespace homcob {

struct AInfModule {
    const AInfCategory* base = nullptr;
    std::vector<int> spaces;  // per-object dims of M(L)
    MixedExtendedMap action;  // μ^M: cat = base homs, mod_in = mod_out = spaces

    BitMatrix mu1_at(Obj l) const;      // arity-1 component (zero if absent)
    ChainComplex complex_at(Obj l) const;
};

struct ModuleMorphism {
    AInfModule source;
    AInfModule target;
    MixedExtendedMap nu;  // mod_in = source.spaces, mod_out = target.spaces

    BitMatrix nu1_at(Obj l) const;
    ChainMap chain_map_at(Obj l) const;  // arity-1 part as a chain map
};

Report check_module(const AInfModule& m);
Report check_module_morphism(const ModuleMorphism& nu);

ModuleMorphism identity_module_morphism(const AInfModule& m);
ModuleMorphism zero_module_morphism(const AInfModule& src, const AInfModule& tgt);

// η ⊣ ν for ν: M′ → M″, η: M″ → M‴.
ModuleMorphism compose_module_morphisms(const ModuleMorphism& eta, const ModuleMorphism& nu);

struct ModuleCone {
    AInfModule module;     // Cone(ν)(L) = M′(L) ⊕ M″(L)
    ModuleMorphism inc;    // i: M″ → Cone, b″ ↦ (0, b″)
    ModuleMorphism proj;   // π: Cone → M′, (b′, b″) ↦ b′
};

ModuleCone cone(const ModuleMorphism& nu);

// φ*M over the source category of the functor φ: A′ → A.
AInfModule pullback(const ExtendedMap& phi, const AInfCategory& aprime, const AInfModule& m);

// Yoneda module of L: K ↦ C(K, L), action = μ^A.
AInfModule yoneda_module(const AInfCategory& a, Obj l);

// 𝒴 on morphisms: the module morphism M_{L0} → M_{Lk} determined by fixing the
// basis tail (a1,…,ak) with a_i ∈ C(L_{i-1}, L_i):
//   ν(c1,…,c_{d-1}, b) = μ^A(c1,…,c_{d-1}, b, a1,…,ak).
ModuleMorphism yoneda_morphism(const AInfCategory& a, const Key& objects,
                               const std::vector<int>& basis_tail);

struct ExactTriangleCertificate {
    ModuleMorphism nu;  // M′ → M″
    ModuleMorphism j;   // M″ → C
    ModuleMorphism p;   // C → M′
    ModuleMorphism t;   // witness C → Cone(ν)
};

Report verify_exact_triangle(const ExactTriangleCertificate& cert);

// Homological unitality probe: the detected unit class of H(L,L) acts as the
// identity on H(M(L)) for every object with a unit.
Report module_hu_report(const AInfModule& m, const HomologyCategory& hc);

} // namespace homcob
