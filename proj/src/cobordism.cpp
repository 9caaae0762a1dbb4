#include "homcob/cobordism.hpp"

namespace homcob {

SnakeComplex build_snake(const ChainComplex& base, int l) {
    if (l < 3 || l % 2 == 0) throw EvenL("snake parameter l must be odd and >= 3");
    int n = base.dim;
    BitMatrix d(l * n, l * n);
    for (int j = 1; j <= l; ++j) {
        int off = (j - 1) * n;
        for (int c = 0; c < n; ++c) {
            for (int r = 0; r < n; ++r)
                if (base.d.get(r, c)) d.set(off + r, off + c);
            if (j % 2 == 1) {
                if (j > 1) d.set(off - n + c, off + c);      // x^(j-1)
                if (j < l) d.set(off + n + c, off + c);      // x^(j+1)
            }
        }
    }
    return {base, l, ChainComplex(l * n, d)};
}

ChainMap snake_projection(const SnakeComplex& s, int j) {
    if (j % 2 == 0 || j < 1 || j > s.l)
        throw EvenIndex("snake projection index must be odd and within 1..l");
    int n = s.base.dim;
    BitMatrix f(n, s.l * n);
    for (int i = 0; i < n; ++i) f.set(i, (j - 1) * n + i);
    return ChainMap(s.total, s.base, f);
}

ChainMap snake_inclusion(const SnakeComplex& s) {
    int n = s.base.dim;
    BitMatrix f(s.l * n, n);
    for (int j = 1; j <= s.l; j += 2)
        for (int i = 0; i < n; ++i) f.set((j - 1) * n + i, i);
    return ChainMap(s.base, s.total, f);
}

ChainMap snake_truncation(const SnakeComplex& s) {
    if (s.l < 5) throw LTooSmall("truncation needs l >= 5");
    SnakeComplex t = build_snake(s.base, s.l - 2);
    int n = s.base.dim;
    BitMatrix f((s.l - 2) * n, s.l * n);
    for (int i = 0; i < (s.l - 2) * n; ++i) f.set(i, i);
    return ChainMap(s.total, t.total, f);
}

AInfCategory one_object_category(const ChainComplex& c, const std::string& name) {
    AInfCategory a;
    a.names = {name};
    a.nobj = 1;
    a.dims = {c.dim};
    a.arity_cap = kDefaultArityCap;
    a.mu.nobj = 1;
    a.mu.in_dims = {c.dim};
    a.mu.out_dims = {c.dim};
    a.mu.index_map = {0};
    a.mu.arity_cap = a.arity_cap;
    if (!c.d.is_zero()) a.mu.set_component({0, 0}, c.d);
    return a;
}

namespace {

ExtendedMap degree_one_functor(int src_dim, int tgt_dim, const BitMatrix& f1) {
    ExtendedMap f;
    f.nobj = 1;
    f.in_dims = {src_dim};
    f.out_dims = {tgt_dim};
    f.index_map = {0};
    f.arity_cap = kDefaultArityCap;
    if (!f1.is_zero()) f.set_component({0, 0}, f1);
    return f;
}

} // namespace

ExtendedMap snake_projection_functor(const SnakeComplex& s, int j) {
    return degree_one_functor(s.total.dim, s.base.dim, snake_projection(s, j).f);
}

ExtendedMap snake_inclusion_functor(const SnakeComplex& s) {
    return degree_one_functor(s.base.dim, s.total.dim, snake_inclusion(s).f);
}

PreNaturalTransformation snake_projection_homotopy(const SnakeComplex& s) {
    int n = s.base.dim;
    PreNaturalTransformation t;
    t.t0 = {BitVec(n)};
    BitMatrix m(n, s.l * n);
    for (int i = 0; i < n; ++i) m.set(i, n + i);  // T'(x^(2)) = x
    t.tp.nobj = 1;
    t.tp.in_dims = {s.l * n};
    t.tp.out_dims = {n};
    t.tp.index_map = {0};
    t.tp.arity_cap = kDefaultArityCap;
    t.tp.set_component({0, 0}, m);
    return t;
}

IteratedCones build_iterated_cones(const CobordismDatum& v) {
    size_t m = v.negative_ends.size();
    if (m == 0 || v.phis.size() + 1 != m)
        throw CollectionMismatch("need one connecting morphism per end beyond the first");
    IteratedCones out;
    out.modules.push_back(yoneda_module(v.amb, v.negative_ends[0]));
    for (size_t j = 2; j <= m; ++j) {
        const ModuleMorphism& phi = v.phis[j - 2];
        AInfModule yj = yoneda_module(v.amb, v.negative_ends[j - 1]);
        if (phi.source.spaces != yj.spaces || phi.target.spaces != out.modules.back().spaces)
            throw CollectionMismatch("connecting morphism " + std::to_string(j) +
                                     " does not match its tower position");
        ModuleCone mc = cone(phi);
        ExactTriangleCertificate cert{phi, mc.inc, mc.proj,
                                      identity_module_morphism(mc.module)};
        out.modules.push_back(mc.module);
        out.triangles.push_back(std::move(cert));
    }
    return out;
}

FiltrationProfile cone_filtration(const CobordismDatum& v, int j) {
    if (j < 1 || j > (int)v.negative_ends.size())
        throw UnknownObject("no module at that tower index");
    FiltrationProfile p;
    p.module_levels.resize(v.amb.nobj);
    for (Obj n = 0; n < v.amb.nobj; ++n) {
        // Block order of the iterated cone: Y(L_j), Y(L_{j-1}), ..., Y(L_1).
        for (int i = j; i >= 1; --i) {
            int d = v.amb.dim(n, v.negative_ends[i - 1]);
            p.module_levels[n].insert(p.module_levels[n].end(), d, i);
        }
    }
    return p;
}

Report check_filtration(const AInfModule& m, const FiltrationProfile& p) {
    Report rep;
    rep.check = "filtration";
    const AInfCategory& base = *m.base;
    if ((int)p.module_levels.size() != base.nobj) {
        rep.add(false, "profile", "level table does not cover the object list");
        return rep;
    }
    for (const auto& [key, mat] : m.action.comp) {
        auto dims = m.action.key_input_dims(key);
        int arity = (int)key.size();
        Obj out_obj = key.front();
        Obj mod_obj = key.back();
        std::vector<int> idx(dims.size(), 0);
        bool any = !dims.empty();
        std::string tag = "component arity " + std::to_string(arity);
        bool ok = true;
        std::string why;
        if (any) do {
            int col = tuple_index(dims, idx);
            BitVec outv = mat.col(col);
            if (outv.is_zero()) continue;
            int s = p.module_levels[mod_obj][idx.back()];
            for (int g : outv.support())
                if (p.module_levels[out_obj][g] > s) {
                    ok = false;
                    why = "raises filtration level";
                }
            for (int t = 0; t + 1 < (int)idx.size(); ++t) {
                int pair = key[t] * base.nobj + key[t + 1];
                int tagv = 1;
                if (pair < (int)p.hom_tags.size() && !p.hom_tags[pair].empty())
                    tagv = p.hom_tags[pair][idx[t]];
                if (tagv > 2 * s + 1) {
                    ok = false;
                    why = "nonzero on over-long category input";
                }
            }
        } while (next_tuple(dims, idx));
        if (!ok) rep.add(false, tag, why);
    }
    rep.add(true, "scanned");
    return rep;
}

TSMorphism assemble_functor_value(const CobordismDatum& v, Obj n) {
    if (!v.phi_v) throw MissingEndComparison("datum has no end-comparison morphism");
    IteratedCones ic = build_iterated_cones(v);
    size_t m = v.negative_ends.size();

    std::vector<ChainComplex> xs;
    std::vector<BitMatrix> us;
    for (size_t j = 1; j <= m; ++j) {
        xs.push_back(v.amb.hom_complex(n, v.negative_ends[j - 1]));
        if (j == 1)
            us.push_back(BitMatrix(0, xs[0].dim));
        else
            us.push_back(v.phis[j - 2].nu1_at(n));
    }

    TSSummand s;
    s.source = v.amb.hom_complex(n, v.positive_end);
    s.eta = strict_decomposition(xs, us);
    ChainMap phi(s.source, s.eta.total(), v.phi_v->nu1_at(n));
    phi.require_chain_map();
    if (!is_quasi_iso(phi))
        throw NotQuasiIso("end comparison is not a quasi-isomorphism at this object");
    s.phi = phi.f;
    HomotopyEquivalence he = homotopy_inverse(phi);
    s.phi_inv = he.g;
    s.kk = he.k;

    TSMorphism out;
    out.summands.push_back(std::move(s));
    return out;
}

Report check_composition_compatibility(const CobordismDatum& v, const CobordismDatum& vp,
                                       int slot, const CobordismDatum& vpp, Obj n,
                                       const std::vector<BitMatrix>* witnesses,
                                       uint64_t seed) {
    Report rep;
    rep.check = "composition-compatibility";
    int m = (int)v.negative_ends.size();
    if (slot < 1 || slot > m) {
        rep.add(false, "slot", "gluing position out of range");
        return rep;
    }
    bool glue_ok = vp.positive_end == v.negative_ends[slot - 1];
    std::vector<Obj> expect(v.negative_ends.begin(), v.negative_ends.begin() + slot - 1);
    expect.insert(expect.end(), vp.negative_ends.begin(), vp.negative_ends.end());
    expect.insert(expect.end(), v.negative_ends.begin() + slot, v.negative_ends.end());
    glue_ok = glue_ok && vpp.negative_ends == expect && vpp.positive_end == v.positive_end;
    rep.add(glue_ok, "gluing data");
    if (!glue_ok) return rep;

    TSMorphism fv = assemble_functor_value(v, n);
    TSMorphism fvp = assemble_functor_value(vp, n);
    TSMorphism fvpp = assemble_functor_value(vpp, n);

    TSMorphism fam;
    for (int i = 1; i <= m; ++i) {
        if (i == slot)
            fam.summands.push_back(fvp.summands[0]);
        else
            fam.summands.push_back(
                identity_summand(v.amb.hom_complex(n, v.negative_ends[i - 1])));
    }
    TSMorphism comp = compose_ts(fam, fv);

    const TSSummand& a = comp.summands[0];
    const TSSummand& b = fvpp.summands[0];
    std::vector<BitMatrix> wit;
    if (witnesses) {
        wit = *witnesses;
    } else {
        auto found = find_equivalence_witnesses(a.eta, b.eta, seed);
        if (!found) throw MissingWitness("no equivalence witness tower found");
        wit = *found;
    }
    rep.add(ts_summand_equivalent(a, b, wit), "equivalence");
    return rep;
}

BitVec functor_class_from_unit(const CobordismDatum& v, const BitVec& unit_cycle) {
    if (!v.phi_v) throw MissingEndComparison("datum has no end-comparison morphism");
    Obj l = v.positive_end;
    ChainComplex ll = v.amb.hom_complex(l, l);
    if (unit_cycle.size() != ll.dim || !ll.d.apply(unit_cycle).is_zero())
        throw NotACycle("supplied unit element is not a cycle in hom(L,L)");
    BitVec img = v.phi_v->nu1_at(l).apply(unit_cycle);
    // Last linearization piece = the leading block of the iterated cone.
    Obj lm = v.negative_ends.back();
    ChainComplex tgt = v.amb.hom_complex(l, lm);
    BitVec proj(tgt.dim);
    for (int i = 0; i < tgt.dim; ++i)
        if (img.get(i)) proj.set(i);
    return homology(tgt).coords(proj);
}

} // namespace homcob
