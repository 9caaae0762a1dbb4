#include "homcob/k_theory.hpp"

namespace homcob {

int quotient_rank(const GroupPresentation& p) {
    int n = (int)p.generators.size();
    if (p.relations.empty()) return n;
    BitMatrix m((int)p.relations.size(), n);
    for (size_t i = 0; i < p.relations.size(); ++i) m.set_row((int)i, p.relations[i]);
    return n - rank(m);
}

int K0Presentation::object(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return (int)i;
    throw UnknownObject("not a declared K0 object: " + name);
}

K0Presentation k0_from_triangles(const std::vector<std::string>& objects,
                                 const std::vector<TriangleSpec>& triangles) {
    K0Presentation p;
    p.objects = objects;
    for (const TriangleSpec& t : triangles) {
        BitVec r((int)objects.size());
        r.flip(p.object(t.x));
        r.flip(p.object(t.y));
        r.flip(p.object(t.z));
        p.relations.push_back(r);
    }
    return p;
}

int k0_rank(const K0Presentation& p) {
    GroupPresentation g{p.objects, p.relations};
    return quotient_rank(g);
}

bool in_relation_span(const std::vector<BitVec>& relations, const BitVec& v) {
    if (v.is_zero()) return true;
    if (relations.empty()) return false;
    BitMatrix m((int)relations.size(), v.size());
    for (size_t i = 0; i < relations.size(); ++i) m.set_row((int)i, relations[i]);
    return solve(m.transpose(), v).has_value();
}

Report theta_well_defined(const GroupPresentation& gcob, const K0Presentation& k0,
                          const std::vector<int>& object_map) {
    Report rep;
    rep.check = "theta-well-defined";
    if (object_map.size() != gcob.generators.size()) {
        rep.add(false, "object map", "must cover every cobordism-group generator");
        return rep;
    }
    for (size_t i = 0; i < gcob.relations.size(); ++i) {
        BitVec img((int)k0.objects.size());
        for (int g : gcob.relations[i].support()) img.flip(object_map[g]);
        bool ok = in_relation_span(k0.relations, img);
        rep.add(ok, "relation " + std::to_string(i + 1),
                ok ? "" : "image not in the K0 relation span");
    }
    if (gcob.relations.empty()) rep.note("no relations: trivially well-defined");
    return rep;
}

Report verify_null_cobordism(const CobordismDatum& v, const K0Presentation& k0) {
    IteratedCones ic = build_iterated_cones(v);
    const AInfModule& last = ic.modules.back();
    for (Obj n = 0; n < v.amb.nobj; ++n)
        if (homology(last.complex_at(n)).rank != 0)
            throw NotAcyclic("tower top is not acyclic at object " + v.amb.names[n]);

    size_t m = v.negative_ends.size();
    int nk = (int)k0.objects.size();
    int total = nk + (int)m;  // auxiliary generators for the tower modules
    std::vector<BitVec> rel;
    for (const BitVec& r : k0.relations) {
        BitVec e(total);
        for (int g : r.support()) e.set(g);
        rel.push_back(e);
    }
    std::vector<int> ends;
    for (Obj l : v.negative_ends) ends.push_back(k0.object(v.amb.names[l]));
    for (size_t j = 1; j <= m; ++j) {
        BitVec r(total);
        r.flip(nk + (int)j - 1);  // [M_j]
        r.flip(ends[j - 1]);      // [L_j]
        if (j > 1) r.flip(nk + (int)j - 2);
        rel.push_back(r);
    }
    BitVec top(total);  // [M_m] = 0 since the tower top is acyclic
    top.flip(nk + (int)m - 1);
    rel.push_back(top);

    BitVec target(total);
    for (int e : ends) target.flip(e);

    Report rep;
    rep.check = "null-cobordism";
    bool ok = in_relation_span(rel, target);
    rep.add(ok, "sum of end classes vanishes",
            ok ? "" : "sum of [L_i] not forced to zero by the triangles");
    return rep;
}

} // namespace homcob
