#pragma once

// F₂ group presentations for the cobordism group and K₀, and the
// well-definedness check for the induced homomorphism Θ.

#include "cobordism.hpp"

namespace homcob {

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<BitVec> relations;  // each of length generators.size()
};

// dim of F₂^n / span(relations).
int quotient_rank(const GroupPresentation& p);

struct TriangleSpec {
    std::string x, y, z;
};

struct K0Presentation {
    std::vector<std::string> objects;
    std::vector<BitVec> relations;  // x + y + z per declared triangle

    int object(const std::string& name) const;  // throws UnknownObject
};

K0Presentation k0_from_triangles(const std::vector<std::string>& objects,
                                 const std::vector<TriangleSpec>& triangles);

int k0_rank(const K0Presentation& p);

bool in_relation_span(const std::vector<BitVec>& relations, const BitVec& v);

// Each G_cob relation, pushed through object_map (generator index ->
// K₀ object index), must lie in the K₀ relation span.
Report theta_well_defined(const GroupPresentation& gcob, const K0Presentation& k0,
                          const std::vector<int>& object_map);

// For a datum whose 𝓜_m is objectwise acyclic: Σ[L_i] = 0 follows from the
// K₀ presentation extended by the datum's own triangles (auxiliary
// generators for the tower modules, with [𝓜_m] = 0).
Report verify_null_cobordism(const CobordismDatum& v, const K0Presentation& k0);
// throws NotAcyclic, UnknownObject

} // namespace homcob
