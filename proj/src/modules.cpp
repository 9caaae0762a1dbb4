#include "homcob/modules.hpp"

#include <functional>
#include <sstream>

namespace homcob {

namespace {

std::string key_str(const Key& k) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < k.size(); ++i) os << (i ? " " : "") << k[i];
    os << ")";
    return os.str();
}

MixedExtendedMap mixed_shape(const AInfCategory& base, const std::vector<int>& mod_in,
                             const std::vector<int>& mod_out) {
    MixedExtendedMap m;
    m.nobj = base.nobj;
    m.cat_dims = base.dims;
    m.mod_in = mod_in;
    m.mod_out = mod_out;
    m.arity_cap = base.arity_cap;
    return m;
}

} // namespace

BitMatrix AInfModule::mu1_at(Obj l) const {
    auto it = action.comp.find(Key{l});
    if (it != action.comp.end()) return it->second;
    return BitMatrix(spaces[l], spaces[l]);
}

ChainComplex AInfModule::complex_at(Obj l) const {
    return ChainComplex(spaces[l], mu1_at(l));
}

BitMatrix ModuleMorphism::nu1_at(Obj l) const {
    auto it = nu.comp.find(Key{l});
    if (it != nu.comp.end()) return it->second;
    return BitMatrix(target.spaces[l], source.spaces[l]);
}

ChainMap ModuleMorphism::chain_map_at(Obj l) const {
    return ChainMap(source.complex_at(l), target.complex_at(l), nu1_at(l));
}

Report check_module(const AInfModule& m) {
    Report rep;
    rep.check = "module";
    int cap = 2 * m.action.arity_cap;
    MixedExtendedMap rel = component_sum(compose_mixed(m.action, m.action, cap),
                                         compose_mixed_star(m.action, m.base->mu, cap));
    rel.prune_zeros();
    rep.note("arity cap " + std::to_string(m.action.arity_cap));
    if (rel.comp.empty()) {
        rep.add(true, "(mu_M -| mu_M) + (mu_M * mu_A)", "vanishes");
    } else {
        for (const auto& [k, mat] : rel.comp)
            (void)mat, rep.add(false, "module relation residue at " + key_str(k));
    }
    return rep;
}

Report check_module_morphism(const ModuleMorphism& nu) {
    Report rep;
    rep.check = "module-morphism";
    const AInfModule& mp = nu.source;
    const AInfModule& mpp = nu.target;
    int cap = 2 * nu.nu.arity_cap;
    MixedExtendedMap rel = component_sum(
        component_sum(compose_mixed(mpp.action, nu.nu, cap), compose_mixed(nu.nu, mp.action, cap)),
        compose_mixed_star(nu.nu, mp.base->mu, cap));
    rel.prune_zeros();
    if (rel.comp.empty()) {
        rep.add(true, "(mu'' -| nu) + (nu -| mu') + (nu * mu_A)", "vanishes");
    } else {
        for (const auto& [k, mat] : rel.comp)
            (void)mat, rep.add(false, "morphism relation residue at " + key_str(k));
    }
    return rep;
}

ModuleMorphism identity_module_morphism(const AInfModule& m) {
    ModuleMorphism out{m, m, mixed_shape(*m.base, m.spaces, m.spaces)};
    for (Obj l = 0; l < m.base->nobj; ++l)
        if (m.spaces[l] > 0) out.nu.set_component({l}, BitMatrix::identity(m.spaces[l]));
    return out;
}

ModuleMorphism zero_module_morphism(const AInfModule& src, const AInfModule& tgt) {
    return ModuleMorphism{src, tgt, mixed_shape(*src.base, src.spaces, tgt.spaces)};
}

ModuleMorphism compose_module_morphisms(const ModuleMorphism& eta, const ModuleMorphism& nu) {
    if (eta.source.spaces != nu.target.spaces)
        throw CollectionMismatch("compose_module_morphisms: middle module mismatch");
    ModuleMorphism out{nu.source, eta.target,
                       compose_mixed(eta.nu, nu.nu, nu.nu.arity_cap)};
    return out;
}

ModuleCone cone(const ModuleMorphism& nu) {
    {
        Report r = check_module_morphism(nu);
        if (!r.pass()) throw NotModuleMorphism("cone: input is not a module morphism");
    }
    const AInfModule& mp = nu.source;   // M′
    const AInfModule& mpp = nu.target;  // M″
    const AInfCategory& base = *mp.base;
    AInfModule c;
    c.base = mp.base;
    c.spaces.resize(base.nobj);
    for (Obj l = 0; l < base.nobj; ++l) c.spaces[l] = mp.spaces[l] + mpp.spaces[l];
    c.action = mixed_shape(base, c.spaces, c.spaces);

    // key set = union of the keys of μ′, μ″ and ν
    std::vector<Key> keys;
    for (const auto& [k, m] : mp.action.comp) (void)m, keys.push_back(k);
    for (const auto& [k, m] : mpp.action.comp)
        if (!mp.action.comp.count(k)) (void)m, keys.push_back(k);
    for (const auto& [k, m] : nu.nu.comp)
        if (!mp.action.comp.count(k) && !mpp.action.comp.count(k)) (void)m, keys.push_back(k);

    for (const Key& k : keys) {
        Obj first = k.front(), last = k.back();
        int dpf = mp.spaces[first];
        int dpl = mp.spaces[last], dppl = mpp.spaces[last];
        std::vector<int> cdims = c.action.key_input_dims(k);
        BitMatrix mat(c.spaces[first], c.action.key_cols(k));
        auto mpit = mp.action.comp.find(k);
        auto mppit = mpp.action.comp.find(k);
        auto nuit = nu.nu.comp.find(k);
        std::vector<int> idx(cdims.size(), 0);
        do {
            int col = tuple_index(cdims, idx);
            int b = idx.back();
            std::vector<int> sub = idx;
            if (b < dpl) {  // module input from M′: (μ′(..,b′), ν(..,b′))
                sub.back() = b;
                if (mpit != mp.action.comp.end()) {
                    std::vector<int> sd = mp.action.key_input_dims(k);
                    BitVec v = mpit->second.col(tuple_index(sd, sub));
                    for (int r : v.support()) mat.set(r, col);
                }
                if (nuit != nu.nu.comp.end()) {
                    std::vector<int> sd = nu.nu.key_input_dims(k);
                    BitVec v = nuit->second.col(tuple_index(sd, sub));
                    for (int r : v.support()) mat.set(dpf + r, col);
                }
            } else if (b - dpl < dppl) {  // module input from M″: (0, μ″(..,b″))
                sub.back() = b - dpl;
                if (mppit != mpp.action.comp.end()) {
                    std::vector<int> sd = mpp.action.key_input_dims(k);
                    BitVec v = mppit->second.col(tuple_index(sd, sub));
                    for (int r : v.support()) mat.set(dpf + r, col);
                }
            }
        } while (next_tuple(cdims, idx));
        if (!mat.is_zero()) c.action.set_component(k, std::move(mat));
    }

    ModuleCone out{c, zero_module_morphism(mpp, c), zero_module_morphism(c, mp)};
    for (Obj l = 0; l < base.nobj; ++l) {
        if (mpp.spaces[l] > 0) {
            BitMatrix inc(c.spaces[l], mpp.spaces[l]);
            for (int r = 0; r < mpp.spaces[l]; ++r) inc.set(mp.spaces[l] + r, r);
            out.inc.nu.set_component({l}, std::move(inc));
        }
        if (mp.spaces[l] > 0 && c.spaces[l] > 0) {
            BitMatrix proj(mp.spaces[l], c.spaces[l]);
            for (int r = 0; r < mp.spaces[l]; ++r) proj.set(r, r);
            out.proj.nu.set_component({l}, std::move(proj));
        }
    }
    return out;
}

AInfModule pullback(const ExtendedMap& phi, const AInfCategory& aprime, const AInfModule& m) {
    if (phi.nobj != aprime.nobj || phi.in_dims != aprime.dims)
        throw NotFunctor("pullback: functor source must be A'");
    const AInfCategory& a = *m.base;
    for (Obj x = 0; x < aprime.nobj; ++x)
        for (Obj y = 0; y < aprime.nobj; ++y)
            if (phi.out_dim(x, y) != a.dims[phi.index_map[x] * a.nobj + phi.index_map[y]])
                throw NotFunctor("pullback: functor target must be the module's base");

    AInfModule out;
    out.base = &aprime;
    out.spaces.resize(aprime.nobj);
    for (Obj x = 0; x < aprime.nobj; ++x) out.spaces[x] = m.spaces[phi.index_map[x]];
    out.action = mixed_shape(aprime, out.spaces, out.spaces);
    int cap = out.action.arity_cap;

    for (const auto& [ykey, ymat] : m.action.comp) {
        int r = (int)ykey.size();
        if (r == 1) {
            for (Obj x = 0; x < aprime.nobj; ++x)
                if (phi.index_map[x] == ykey[0] && out.spaces[x] > 0) {
                    for (int cidx = 0; cidx < ymat.cols(); ++cidx) {
                        BitVec v = ymat.col(cidx);
                        if (!v.is_zero()) out.action.accumulate({x}, cidx, v);
                    }
                }
            continue;
        }
        // chains of φ-components covering the r−1 category slots
        std::vector<const Key*> chain(r - 1, nullptr);
        std::function<void(int, int, int)> rec = [&](int slot, int cur, int arity) {
            if (slot == r - 1) {
                Key rkey = *chain[0];
                for (int s = 1; s < r - 1; ++s)
                    rkey.insert(rkey.end(), chain[s]->begin() + 1, chain[s]->end());
                if (arity + 1 > cap) return;
                std::vector<int> rdims = out.action.key_input_dims(rkey);
                std::vector<int> ydims = m.action.key_input_dims(ykey);
                std::vector<int> idx(rdims.size(), 0);
                do {
                    std::vector<BitVec> args;
                    args.reserve(r);
                    int off = 0;
                    for (int s = 0; s < r - 1; ++s) {
                        std::vector<int> bd = phi.key_input_dims(*chain[s]);
                        std::vector<int> bidx(bd.size());
                        for (size_t j = 0; j < bd.size(); ++j) bidx[j] = idx[off + j];
                        off += (int)bd.size();
                        args.push_back(phi.comp.at(*chain[s]).col(tuple_index(bd, bidx)));
                    }
                    args.push_back(BitVec::unit(ydims.back(), idx.back()));
                    BitVec v = eval_multilinear(ymat, ydims, args);
                    if (!v.is_zero()) out.action.accumulate(rkey, tuple_index(rdims, idx), v);
                } while (next_tuple(rdims, idx));
                return;
            }
            for (const auto& [fkey, fmat] : phi.comp) {
                (void)fmat;
                if (phi.index_map[fkey.front()] != ykey[slot]) continue;
                if (phi.index_map[fkey.back()] != ykey[slot + 1]) continue;
                if (cur >= 0 && fkey.front() != cur) continue;
                int na = arity + (int)fkey.size() - 1;
                if (na + 1 > cap + 1) continue;
                chain[slot] = &fkey;
                rec(slot + 1, fkey.back(), na);
            }
        };
        rec(0, -1, 0);
    }
    out.action.prune_zeros();
    return out;
}

AInfModule yoneda_module(const AInfCategory& a, Obj l) {
    AInfModule out;
    out.base = &a;
    out.spaces.resize(a.nobj);
    for (Obj k = 0; k < a.nobj; ++k) out.spaces[k] = a.dim(k, l);
    out.action = mixed_shape(a, out.spaces, out.spaces);
    for (const auto& [mk, mat] : a.mu.comp) {
        if (mk.back() != l || mk.size() < 2) continue;
        Key k(mk.begin(), mk.end() - 1);
        out.action.set_component(k, mat);
    }
    return out;
}

ModuleMorphism yoneda_morphism(const AInfCategory& a, const Key& objects,
                               const std::vector<int>& basis_tail) {
    int karity = (int)basis_tail.size();
    if ((int)objects.size() != karity + 1 || karity < 1)
        throw DimensionError("yoneda_morphism: objects must list L0..Lk");
    AInfModule src = yoneda_module(a, objects.front());
    AInfModule tgt = yoneda_module(a, objects.back());
    ModuleMorphism out{src, tgt, mixed_shape(a, src.spaces, tgt.spaces)};
    for (const auto& [mk, mat] : a.mu.comp) {
        int d = (int)mk.size() - 1 - karity;  // free inputs: c1..c_{d-1}, b
        if (d < 1) continue;
        bool match = true;
        for (int i = 0; i <= karity && match; ++i) match = mk[d + i] == objects[i];
        if (!match) continue;
        Key rkey(mk.begin(), mk.begin() + d);  // (K0..K_{d-1})
        std::vector<int> fdims = a.mu.key_input_dims(mk);
        std::vector<int> rdims = out.nu.key_input_dims(rkey);
        BitMatrix rm(mat.rows(), out.nu.key_cols(rkey));
        std::vector<int> idx(rdims.size(), 0);
        do {
            std::vector<int> full(fdims.size());
            for (int j = 0; j < d; ++j) full[j] = idx[j];
            for (int j = 0; j < karity; ++j) {
                if (basis_tail[j] < 0 || basis_tail[j] >= fdims[d + j])
                    throw DimensionError("yoneda_morphism: basis index out of range");
                full[d + j] = basis_tail[j];
            }
            rm.set_col(tuple_index(rdims, idx), mat.col(tuple_index(fdims, full)));
        } while (next_tuple(rdims, idx));
        if (!rm.is_zero()) {
            auto it = out.nu.comp.find(rkey);
            if (it == out.nu.comp.end())
                out.nu.set_component(rkey, std::move(rm));
            else
                it->second = it->second + rm;
        }
    }
    out.nu.prune_zeros();
    return out;
}

Report verify_exact_triangle(const ExactTriangleCertificate& cert) {
    Report rep;
    rep.check = "exact-triangle";
    Report rnu = check_module_morphism(cert.nu);
    Report rj = check_module_morphism(cert.j);
    Report rp = check_module_morphism(cert.p);
    Report rt = check_module_morphism(cert.t);
    rep.add(rnu.pass(), "nu is a module morphism");
    rep.add(rj.pass(), "j is a module morphism");
    rep.add(rp.pass(), "p is a module morphism");
    rep.add(rt.pass(), "witness t is a module morphism");
    ModuleCone cn = cone(cert.nu);
    if (cert.t.target.spaces != cn.module.spaces) {
        rep.add(false, "witness target", "t must land in Cone(nu)");
        return rep;
    }
    const AInfCategory& base = *cert.nu.source.base;
    for (Obj l = 0; l < base.nobj; ++l) {
        ChainMap t1 = ChainMap(cert.t.source.complex_at(l), cn.module.complex_at(l),
                               cert.t.nu1_at(l));
        if (!t1.is_chain_map()) {
            rep.add(false, "t1 chain map at object " + base.names[l]);
            continue;
        }
        rep.add(is_quasi_iso(t1), "t quasi-iso at object " + base.names[l]);
        // [t]∘[j] = [i] and [π]∘[t] = [p] on homology
        ChainMap j1(cert.j.source.complex_at(l), cert.t.source.complex_at(l), cert.j.nu1_at(l));
        ChainMap i1(cert.j.source.complex_at(l), cn.module.complex_at(l), cn.inc.nu1_at(l));
        ChainMap p1(cert.t.source.complex_at(l), cert.p.target.complex_at(l), cert.p.nu1_at(l));
        ChainMap pi1(cn.module.complex_at(l), cert.nu.source.complex_at(l), cn.proj.nu1_at(l));
        rep.add(induced_on_homology(compose(t1, j1)) == induced_on_homology(i1),
                "[t][j] = [i] at object " + base.names[l]);
        rep.add(induced_on_homology(compose(pi1, t1)) == induced_on_homology(p1),
                "[pi][t] = [p] at object " + base.names[l]);
    }
    return rep;
}

Report module_hu_report(const AInfModule& m, const HomologyCategory& hc) {
    Report rep;
    rep.check = "module-hu";
    const AInfCategory& base = *m.base;
    for (Obj l = 0; l < base.nobj; ++l) {
        if (!hc.units[l]) {
            rep.note("no unit class detected for object " + base.names[l]);
            continue;
        }
        HomologyData hm = homology(m.complex_at(l));
        if (hm.rank == 0) continue;
        BitVec urep = hc.h(l, l).rep_combination(*hc.units[l]);
        Key k{l, l};
        auto it = m.action.comp.find(k);
        bool ok = true;
        for (int i = 0; i < hm.rank && ok; ++i) {
            BitVec out(m.spaces[l]);
            if (it != m.action.comp.end())
                out = eval_multilinear(it->second, m.action.key_input_dims(k),
                                       {urep, hm.representatives[i]});
            ok = hm.coords(out) == BitVec::unit(hm.rank, i);
        }
        rep.add(ok, "unit acts as identity on H(M(" + base.names[l] + "))");
    }
    return rep;
}

} // namespace homcob
