#include "homcob/ainf.hpp"

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

std::string tuple_str(const std::vector<int>& t) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i] + 1;
    os << ")";
    return os.str();
}

} // namespace

// --- ExtendedMap -----------------------------------------------------------

std::vector<int> ExtendedMap::key_input_dims(const Key& k) const {
    if (k.size() < 2) throw DimensionError("ExtendedMap key must have length >= 2");
    std::vector<int> d(k.size() - 1);
    for (size_t j = 0; j + 1 < k.size(); ++j) d[j] = in_dim(k[j], k[j + 1]);
    return d;
}

int ExtendedMap::key_cols(const Key& k) const {
    int n = 1;
    for (int d : key_input_dims(k)) n *= d;
    return n;
}

void ExtendedMap::set_component(const Key& k, BitMatrix m) {
    if (m.rows() != out_dim(k.front(), k.back()) || m.cols() != key_cols(k))
        throw DimensionError("ExtendedMap component shape mismatch for key " + key_str(k));
    comp[k] = std::move(m);
}

void ExtendedMap::accumulate(const Key& k, int col, const BitVec& v) {
    auto it = comp.find(k);
    if (it == comp.end()) {
        BitMatrix m(out_dim(k.front(), k.back()), key_cols(k));
        it = comp.emplace(k, std::move(m)).first;
    }
    it->second.xor_col(col, v);
}

void ExtendedMap::prune_zeros() {
    for (auto it = comp.begin(); it != comp.end();)
        it = it->second.is_zero() ? comp.erase(it) : std::next(it);
}

void ExtendedMap::truncate(int cap) {
    for (auto it = comp.begin(); it != comp.end();)
        it = ((int)it->first.size() - 1 > cap) ? comp.erase(it) : std::next(it);
    arity_cap = cap;
}

ExtendedMap ExtendedMap::zero_like(const ExtendedMap& shape) {
    ExtendedMap z = shape;
    z.comp.clear();
    return z;
}

bool components_equal(const ExtendedMap& a, const ExtendedMap& b) {
    ExtendedMap x = a, y = b;
    x.prune_zeros();
    y.prune_zeros();
    return x.comp == y.comp;
}

ExtendedMap component_sum(const ExtendedMap& a, const ExtendedMap& b) {
    ExtendedMap out = a;
    for (const auto& [k, m] : b.comp) {
        auto it = out.comp.find(k);
        if (it == out.comp.end())
            out.comp.emplace(k, m);
        else
            it->second = it->second + m;
    }
    return out;
}

// --- MixedExtendedMap ------------------------------------------------------

std::vector<int> MixedExtendedMap::key_input_dims(const Key& k) const {
    if (k.empty()) throw DimensionError("MixedExtendedMap key must be nonempty");
    std::vector<int> d(k.size());
    for (size_t j = 0; j + 1 < k.size(); ++j) d[j] = cat_dim(k[j], k[j + 1]);
    d.back() = mod_in[k.back()];
    return d;
}

int MixedExtendedMap::key_cols(const Key& k) const {
    int n = 1;
    for (int d : key_input_dims(k)) n *= d;
    return n;
}

void MixedExtendedMap::set_component(const Key& k, BitMatrix m) {
    if (m.rows() != mod_out[k.front()] || m.cols() != key_cols(k))
        throw DimensionError("MixedExtendedMap component shape mismatch for key " + key_str(k));
    comp[k] = std::move(m);
}

void MixedExtendedMap::accumulate(const Key& k, int col, const BitVec& v) {
    auto it = comp.find(k);
    if (it == comp.end()) {
        BitMatrix m(mod_out[k.front()], key_cols(k));
        it = comp.emplace(k, std::move(m)).first;
    }
    it->second.xor_col(col, v);
}

void MixedExtendedMap::prune_zeros() {
    for (auto it = comp.begin(); it != comp.end();)
        it = it->second.is_zero() ? comp.erase(it) : std::next(it);
}

void MixedExtendedMap::truncate(int cap) {
    for (auto it = comp.begin(); it != comp.end();)
        it = ((int)it->first.size() > cap) ? comp.erase(it) : std::next(it);
    arity_cap = cap;
}

bool components_equal(const MixedExtendedMap& a, const MixedExtendedMap& b) {
    MixedExtendedMap x = a, y = b;
    x.prune_zeros();
    y.prune_zeros();
    return x.comp == y.comp;
}

MixedExtendedMap component_sum(const MixedExtendedMap& a, const MixedExtendedMap& b) {
    MixedExtendedMap out = a;
    for (const auto& [k, m] : b.comp) {
        auto it = out.comp.find(k);
        if (it == out.comp.end())
            out.comp.emplace(k, m);
        else
            it->second = it->second + m;
    }
    return out;
}

// --- multilinear helpers ---------------------------------------------------

bool next_tuple(const std::vector<int>& dims, std::vector<int>& idx) {
    for (int j = (int)dims.size() - 1; j >= 0; --j) {
        if (++idx[j] < dims[j]) return true;
        idx[j] = 0;
    }
    return false;
}

int tuple_index(const std::vector<int>& dims, const std::vector<int>& idx) {
    int n = 0;
    for (size_t j = 0; j < dims.size(); ++j) n = n * dims[j] + idx[j];
    return n;
}

BitVec eval_multilinear(const BitMatrix& m, const std::vector<int>& dims,
                        const std::vector<BitVec>& args) {
    if (args.size() != dims.size()) throw DimensionError("eval_multilinear arity mismatch");
    BitVec out(m.rows());
    std::vector<std::vector<int>> supp(args.size());
    for (size_t j = 0; j < args.size(); ++j) {
        if (args[j].size() != dims[j]) throw DimensionError("eval_multilinear arg size");
        supp[j] = args[j].support();
        if (supp[j].empty()) return out;
    }
    std::vector<int> pos(args.size(), 0), dcnt(args.size());
    for (size_t j = 0; j < args.size(); ++j) dcnt[j] = (int)supp[j].size();
    do {
        std::vector<int> idx(args.size());
        for (size_t j = 0; j < args.size(); ++j) idx[j] = supp[j][pos[j]];
        out ^= m.col(tuple_index(dims, idx));
    } while (next_tuple(dcnt, pos));
    return out;
}

// --- compositions ----------------------------------------------------------

ExtendedMap compose_circle(const ExtendedMap& g, const ExtendedMap& f, int out_cap) {
    // F: C → D, G: D → E; check D-collections line up along F's index map.
    for (Obj a = 0; a < f.nobj; ++a)
        for (Obj b = 0; b < f.nobj; ++b)
            if (f.out_dim(a, b) != g.in_dims[f.index_map[a] * g.nobj + f.index_map[b]])
                throw CollectionMismatch("compose_circle: F output vs G input dims");
    ExtendedMap r;
    r.nobj = f.nobj;
    r.in_dims = f.in_dims;
    r.index_map.resize(f.nobj);
    r.out_dims.assign(f.nobj * f.nobj, 0);
    for (Obj a = 0; a < f.nobj; ++a) r.index_map[a] = g.index_map[f.index_map[a]];
    for (Obj a = 0; a < f.nobj; ++a)
        for (Obj b = 0; b < f.nobj; ++b)
            r.out_dims[a * f.nobj + b] =
                g.out_dims[f.index_map[a] * g.nobj + f.index_map[b]];
    r.arity_cap = out_cap;

    for (const auto& [gkey, gmat] : g.comp) {
        int l = (int)gkey.size() - 1;
        std::vector<const Key*> chain(l, nullptr);
        std::function<void(int, int, int)> rec = [&](int slot, int cur, int arity) {
            if (slot == l) {
                Key rkey = *chain[0];
                for (int s = 1; s < l; ++s)
                    rkey.insert(rkey.end(), chain[s]->begin() + 1, chain[s]->end());
                std::vector<int> rdims = r.key_input_dims(rkey);
                std::vector<int> idx(rdims.size(), 0);
                std::vector<int> fdimcache;  // per-slot dims flattened lazily below
                do {
                    std::vector<BitVec> vs(l);
                    int off = 0;
                    for (int s = 0; s < l; ++s) {
                        std::vector<int> bdims = f.key_input_dims(*chain[s]);
                        std::vector<int> bidx(bdims.size());
                        for (size_t j = 0; j < bdims.size(); ++j) bidx[j] = idx[off + j];
                        off += (int)bdims.size();
                        vs[s] = f.comp.at(*chain[s]).col(tuple_index(bdims, bidx));
                    }
                    BitVec outv = eval_multilinear(gmat, g.key_input_dims(gkey), vs);
                    if (!outv.is_zero()) r.accumulate(rkey, tuple_index(rdims, idx), outv);
                } while (next_tuple(rdims, idx));
                return;
            }
            for (const auto& [fkey, fmat] : f.comp) {
                (void)fmat;
                if (f.index_map[fkey.front()] != gkey[slot]) continue;
                if (f.index_map[fkey.back()] != gkey[slot + 1]) continue;
                if (cur >= 0 && fkey.front() != cur) continue;
                int na = arity + (int)fkey.size() - 1;
                if (na > out_cap) continue;
                chain[slot] = &fkey;
                rec(slot + 1, fkey.back(), na);
            }
        };
        rec(0, -1, 0);
    }
    r.prune_zeros();
    return r;
}

ExtendedMap compose_star(const ExtendedMap& g, const ExtendedMap& f, int out_cap) {
    for (Obj a = 0; a < g.nobj; ++a)
        if (f.index_map.at(a) != a)
            throw CollectionMismatch("compose_star: F must have identity index map");
    if (f.nobj != g.nobj || f.in_dims != g.in_dims || f.out_dims != g.in_dims)
        throw CollectionMismatch("compose_star: F must map G's source collection to itself");
    ExtendedMap r = ExtendedMap::zero_like(g);
    r.arity_cap = out_cap;

    for (const auto& [gkey, gmat] : g.comp) {
        int m = (int)gkey.size() - 1;
        std::vector<int> gdims = g.key_input_dims(gkey);
        for (int i = 1; i <= m; ++i) {
            for (const auto& [fkey, fmat] : f.comp) {
                if (fkey.front() != gkey[i - 1] || fkey.back() != gkey[i]) continue;
                int p = (int)fkey.size() - 1;
                if (m + p - 1 > out_cap) continue;
                Key rkey(gkey.begin(), gkey.begin() + i);
                rkey.insert(rkey.end(), fkey.begin() + 1, fkey.end());
                rkey.insert(rkey.end(), gkey.begin() + i + 1, gkey.end());
                std::vector<int> rdims = r.key_input_dims(rkey);
                std::vector<int> fdims = f.key_input_dims(fkey);
                std::vector<int> idx(rdims.size(), 0);
                do {
                    std::vector<int> bidx(fdims.size());
                    for (int j = 0; j < p; ++j) bidx[j] = idx[i - 1 + j];
                    BitVec v = fmat.col(tuple_index(fdims, bidx));
                    if (!v.is_zero()) {
                        std::vector<int> gidx(m);
                        for (int j = 0; j < i - 1; ++j) gidx[j] = idx[j];
                        for (int j = i; j < m; ++j) gidx[j] = idx[j + p - 1];
                        BitVec acc(gmat.rows());
                        for (int b : v.support()) {
                            gidx[i - 1] = b;
                            acc ^= gmat.col(tuple_index(gdims, gidx));
                        }
                        if (!acc.is_zero()) r.accumulate(rkey, tuple_index(rdims, idx), acc);
                    }
                } while (next_tuple(rdims, idx));
            }
        }
    }
    r.prune_zeros();
    return r;
}

MixedExtendedMap compose_mixed(const MixedExtendedMap& p, const MixedExtendedMap& q,
                               int out_cap) {
    if (p.nobj != q.nobj || p.cat_dims != q.cat_dims || p.mod_in != q.mod_out)
        throw CollectionMismatch("compose_mixed: Q output vs P module input");
    MixedExtendedMap r;
    r.nobj = p.nobj;
    r.cat_dims = p.cat_dims;
    r.mod_in = q.mod_in;
    r.mod_out = p.mod_out;
    r.arity_cap = out_cap;

    for (const auto& [pkey, pmat] : p.comp) {
        int m = (int)pkey.size();
        std::vector<int> pdims = p.key_input_dims(pkey);
        for (const auto& [qkey, qmat] : q.comp) {
            if (qkey.front() != pkey.back()) continue;
            int kr = (int)qkey.size();
            if (m + kr - 1 > out_cap) continue;
            Key rkey(pkey.begin(), pkey.end() - 1);
            rkey.insert(rkey.end(), qkey.begin(), qkey.end());
            std::vector<int> rdims = r.key_input_dims(rkey);
            std::vector<int> qdims = q.key_input_dims(qkey);
            std::vector<int> idx(rdims.size(), 0);
            do {
                std::vector<int> qidx(qdims.size());
                for (int j = 0; j < kr; ++j) qidx[j] = idx[m - 1 + j];
                BitVec v = qmat.col(tuple_index(qdims, qidx));
                if (!v.is_zero()) {
                    std::vector<int> pidx(m);
                    for (int j = 0; j < m - 1; ++j) pidx[j] = idx[j];
                    BitVec acc(pmat.rows());
                    for (int b : v.support()) {
                        pidx[m - 1] = b;
                        acc ^= pmat.col(tuple_index(pdims, pidx));
                    }
                    if (!acc.is_zero()) r.accumulate(rkey, tuple_index(rdims, idx), acc);
                }
            } while (next_tuple(rdims, idx));
        }
    }
    r.prune_zeros();
    return r;
}

MixedExtendedMap compose_mixed_star(const MixedExtendedMap& q, const ExtendedMap& f,
                                    int out_cap) {
    for (Obj a = 0; a < q.nobj; ++a)
        if (f.index_map.at(a) != a)
            throw CollectionMismatch("compose_mixed_star: F must have identity index map");
    if (f.nobj != q.nobj || f.in_dims != q.cat_dims || f.out_dims != q.cat_dims)
        throw CollectionMismatch("compose_mixed_star: F must act on Q's category inputs");
    MixedExtendedMap r = q;
    r.comp.clear();
    r.arity_cap = out_cap;

    for (const auto& [qkey, qmat] : q.comp) {
        int kr = (int)qkey.size();
        std::vector<int> qdims = q.key_input_dims(qkey);
        for (int i = 1; i <= kr - 1; ++i) {  // category slots only
            for (const auto& [fkey, fmat] : f.comp) {
                if (fkey.front() != qkey[i - 1] || fkey.back() != qkey[i]) continue;
                int p = (int)fkey.size() - 1;
                if (kr + p - 1 > out_cap) continue;
                Key rkey(qkey.begin(), qkey.begin() + i);
                rkey.insert(rkey.end(), fkey.begin() + 1, fkey.end());
                rkey.insert(rkey.end(), qkey.begin() + i + 1, qkey.end());
                std::vector<int> rdims = r.key_input_dims(rkey);
                std::vector<int> fdims = f.key_input_dims(fkey);
                std::vector<int> idx(rdims.size(), 0);
                do {
                    std::vector<int> bidx(fdims.size());
                    for (int j = 0; j < p; ++j) bidx[j] = idx[i - 1 + j];
                    BitVec v = fmat.col(tuple_index(fdims, bidx));
                    if (!v.is_zero()) {
                        std::vector<int> qidx(kr);
                        for (int j = 0; j < i - 1; ++j) qidx[j] = idx[j];
                        for (int j = i; j < kr; ++j) qidx[j] = idx[j + p - 1];
                        BitVec acc(qmat.rows());
                        for (int b : v.support()) {
                            qidx[i - 1] = b;
                            acc ^= qmat.col(tuple_index(qdims, qidx));
                        }
                        if (!acc.is_zero()) r.accumulate(rkey, tuple_index(rdims, idx), acc);
                    }
                } while (next_tuple(rdims, idx));
            }
        }
    }
    r.prune_zeros();
    return r;
}

// --- A∞-categories ---------------------------------------------------------

BitMatrix AInfCategory::mu1(Obj a, Obj b) const {
    Key k{a, b};
    auto it = mu.comp.find(k);
    if (it != mu.comp.end()) return it->second;
    return BitMatrix(dim(a, b), dim(a, b));
}

ChainComplex AInfCategory::hom_complex(Obj a, Obj b) const {
    return ChainComplex(dim(a, b), mu1(a, b));
}

Obj AInfCategory::object(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return (Obj)i;
    throw UnknownObject("unknown object '" + name + "'");
}

Report check_a_infinity(const AInfCategory& a) {
    Report rep;
    rep.check = "a-infinity";
    rep.note("arity cap " + std::to_string(a.arity_cap) + "; relation checked to total arity <= " +
             std::to_string(2 * a.arity_cap));
    ExtendedMap s = compose_star(a.mu, a.mu, 2 * a.arity_cap);
    s.prune_zeros();
    if (s.comp.empty()) {
        rep.add(true, "mu*mu", "vanishes on all tuples");
        return rep;
    }
    for (const auto& [key, m] : s.comp) {
        std::vector<int> dims = a.mu.key_input_dims(key);
        std::vector<int> idx(dims.size(), 0);
        do {
            BitVec v = m.col(tuple_index(dims, idx));
            if (!v.is_zero())
                rep.add(false, "mu*mu " + key_str(key),
                        "tuple " + tuple_str(idx) + " -> " + v.to_string());
        } while (next_tuple(dims, idx));
    }
    return rep;
}

ExtendedMap identity_functor(const AInfCategory& a) {
    ExtendedMap f;
    f.nobj = a.nobj;
    f.in_dims = a.dims;
    f.out_dims = a.dims;
    f.index_map.resize(a.nobj);
    for (Obj i = 0; i < a.nobj; ++i) f.index_map[i] = i;
    f.arity_cap = a.arity_cap;
    for (Obj x = 0; x < a.nobj; ++x)
        for (Obj y = 0; y < a.nobj; ++y)
            if (a.dim(x, y) > 0) f.set_component({x, y}, BitMatrix::identity(a.dim(x, y)));
    return f;
}

Report check_functor(const ExtendedMap& f, const AInfCategory& a, const AInfCategory& b) {
    Report rep;
    rep.check = "functor";
    if (f.nobj != a.nobj || f.in_dims != a.dims) {
        rep.add(false, "shape", "functor source collection does not match category A");
        return rep;
    }
    for (Obj x = 0; x < a.nobj; ++x)
        for (Obj y = 0; y < a.nobj; ++y)
            if (f.out_dim(x, y) != b.dims[f.index_map[x] * b.nobj + f.index_map[y]]) {
                rep.add(false, "shape", "functor output dims do not match category B");
                return rep;
            }
    int cap = a.arity_cap;
    ExtendedMap lhs = compose_star(f, a.mu, cap);
    ExtendedMap rhs = compose_circle(b.mu, f, cap);
    ExtendedMap diff = component_sum(lhs, rhs);
    diff.prune_zeros();
    if (diff.comp.empty()) {
        rep.add(true, "F*mu = mu.F", "holds up to arity " + std::to_string(cap));
    } else {
        for (const auto& [key, m] : diff.comp)
            (void)m, rep.add(false, "F*mu != mu.F at " + key_str(key));
    }
    return rep;
}

// --- pre-natural transformations ------------------------------------------

PreNaturalTransformation zero_transformation(const AInfCategory& a, const AInfCategory& b,
                                             const ExtendedMap& f, const ExtendedMap& g) {
    PreNaturalTransformation t;
    t.t0.resize(a.nobj);
    for (Obj l = 0; l < a.nobj; ++l)
        t.t0[l] = BitVec(b.dims[f.index_map[l] * b.nobj + g.index_map[l]]);
    t.tp.nobj = a.nobj;
    t.tp.in_dims = a.dims;
    t.tp.index_map.resize(a.nobj);
    for (Obj i = 0; i < a.nobj; ++i) t.tp.index_map[i] = i;
    t.tp.out_dims.assign(a.nobj * a.nobj, 0);
    for (Obj x = 0; x < a.nobj; ++x)
        for (Obj y = 0; y < a.nobj; ++y)
            t.tp.out_dims[x * a.nobj + y] = b.dims[f.index_map[x] * b.nobj + g.index_map[y]];
    t.tp.arity_cap = a.arity_cap;
    return t;
}

namespace {

// One insertion segment of the ∘⋆∘-type operators: either a fixed per-object
// vector (T0) or a component of an extended map (T').
struct Insertion {
    const PreNaturalTransformation* t;
    const ExtendedMap* left;   // functor governing the segment start image
    const ExtendedMap* right;  // functor governing the segment end image
};

// Shared engine for (μ^B ∘⋆∘ (F,T,G)) and (μ^B ∘⋆∘⋆∘ (F,T,G,S,H)).
// `functors` has size = #insertions + 1; functors[s] fills the μ^B slots
// between insertion s-1 and insertion s.
ExtendedMap mu_insertions(const AInfCategory& b, const std::vector<const ExtendedMap*>& functors,
                          const std::vector<const PreNaturalTransformation*>& inserts,
                          int out_cap) {
    const ExtendedMap& f0 = *functors.front();
    const ExtendedMap& gl = *functors.back();
    int nobj = f0.nobj;
    ExtendedMap r;
    r.nobj = nobj;
    r.in_dims = f0.in_dims;
    r.index_map.resize(nobj);
    for (Obj i = 0; i < nobj; ++i) r.index_map[i] = i;
    r.out_dims.assign(nobj * nobj, 0);
    for (Obj x = 0; x < nobj; ++x)
        for (Obj y = 0; y < nobj; ++y)
            r.out_dims[x * nobj + y] =
                b.dims[f0.index_map[x] * b.nobj + gl.index_map[y]];
    r.arity_cap = out_cap;

    int ni = (int)inserts.size();
    for (const auto& [bkey, bmat] : b.mu.comp) {
        int n = (int)bkey.size() - 1;
        if (n < ni) continue;
        // choose strictly increasing insertion positions q[0] < ... < q[ni-1] in 1..n
        std::vector<int> q(ni);
        std::function<void(int, int)> choose = [&](int s, int from) {
            if (s == ni) {
                // segments: μ^B slots 1..q0-1 (functor 0), slot q0 (insert 0),
                // q0+1..q1-1 (functor 1), ... , q_{ni-1}+1..n (functor ni).
                // Enumerate fillings left to right, carrying the A-object chain.
                struct Step { const Key* key; int kind; int which; Obj t0obj; };
                std::vector<Step> steps;
                std::function<void(int, int, Obj, int)> fill =
                    [&](int slot, int seg, Obj cur, int arity) {
                        if (slot > n) {
                            if (arity < 1 || arity > out_cap) return;
                            // assemble result key and accumulate
                            Key rkey;
                            rkey.push_back(steps.empty() ? cur : -1);
                            // rebuild the path from steps
                            rkey.clear();
                            Obj first = -1;
                            for (const auto& st : steps) {
                                if (st.kind == 2) {  // T0 junction, contributes one object
                                    if (rkey.empty()) rkey.push_back(st.t0obj);
                                    continue;
                                }
                                const Key& k = *st.key;
                                if (rkey.empty())
                                    rkey = k;
                                else
                                    rkey.insert(rkey.end(), k.begin() + 1, k.end());
                            }
                            (void)first;
                            if ((int)rkey.size() != arity + 1) return;  // defensive
                            std::vector<int> rdims = r.key_input_dims(rkey);
                            std::vector<int> bdims = b.mu.key_input_dims(bkey);
                            std::vector<int> idx(rdims.size(), 0);
                            bool any = !rdims.empty();
                            std::vector<int> empty;
                            do {
                                std::vector<BitVec> vs;
                                vs.reserve(n);
                                int off = 0;
                                for (const auto& st : steps) {
                                    if (st.kind == 2) {
                                        vs.push_back(inserts[st.which]->t0[st.t0obj]);
                                        continue;
                                    }
                                    const ExtendedMap* src = st.kind == 0
                                                                 ? functors[st.which]
                                                                 : &inserts[st.which]->tp;
                                    std::vector<int> kd = src->key_input_dims(*st.key);
                                    std::vector<int> bidx(kd.size());
                                    for (size_t j = 0; j < kd.size(); ++j)
                                        bidx[j] = idx[off + j];
                                    off += (int)kd.size();
                                    vs.push_back(src->comp.at(*st.key).col(tuple_index(kd, bidx)));
                                }
                                BitVec outv = eval_multilinear(bmat, bdims, vs);
                                if (!outv.is_zero())
                                    r.accumulate(rkey, tuple_index(rdims, idx), outv);
                            } while (any && next_tuple(rdims, idx));
                            if (!any) { /* arity >= 1 guaranteed above, unreachable */ }
                            return;
                        }
                        bool is_insert = seg < ni && slot == q[seg];
                        if (is_insert) {
                            const PreNaturalTransformation* ins = inserts[seg];
                            const ExtendedMap* lf = functors[seg];
                            const ExtendedMap* rf = functors[seg + 1];
                            // empty insertion: T0 at junction object z
                            for (Obj z = 0; z < nobj; ++z) {
                                if (cur >= 0 && z != cur) continue;
                                if (lf->index_map[z] != bkey[slot - 1]) continue;
                                if (rf->index_map[z] != bkey[slot]) continue;
                                if (ins->t0[z].is_zero()) continue;
                                steps.push_back({nullptr, 2, seg, z});
                                fill(slot + 1, seg + 1, z, arity);
                                steps.pop_back();
                            }
                            // T' component
                            for (const auto& [tkey, tmat] : ins->tp.comp) {
                                (void)tmat;
                                if (cur >= 0 && tkey.front() != cur) continue;
                                if (lf->index_map[tkey.front()] != bkey[slot - 1]) continue;
                                if (rf->index_map[tkey.back()] != bkey[slot]) continue;
                                int na = arity + (int)tkey.size() - 1;
                                if (na > out_cap) continue;
                                steps.push_back({&tkey, 1, seg, -1});
                                fill(slot + 1, seg + 1, tkey.back(), na);
                                steps.pop_back();
                            }
                        } else {
                            const ExtendedMap* fn = functors[seg];
                            for (const auto& [fkey, fmat] : fn->comp) {
                                (void)fmat;
                                if (cur >= 0 && fkey.front() != cur) continue;
                                if (fn->index_map[fkey.front()] != bkey[slot - 1]) continue;
                                if (fn->index_map[fkey.back()] != bkey[slot]) continue;
                                int na = arity + (int)fkey.size() - 1;
                                if (na > out_cap) continue;
                                steps.push_back({&fkey, 0, seg, -1});
                                fill(slot + 1, seg, fkey.back(), na);
                                steps.pop_back();
                            }
                        }
                    };
                fill(1, 0, -1, 0);
                return;
            }
            for (int p = from; p <= n - (ni - 1 - s); ++p) {
                q[s] = p;
                choose(s + 1, p + 1);
            }
        };
        choose(0, 1);
    }
    r.prune_zeros();
    return r;
}

} // namespace

ExtendedMap mu_ftg(const AInfCategory& b, const ExtendedMap& f,
                   const PreNaturalTransformation& t, const ExtendedMap& g, int out_cap) {
    return mu_insertions(b, {&f, &g}, {&t}, out_cap);
}

PreNaturalTransformation functor_mu1(const AInfCategory& a, const AInfCategory& b,
                                     const ExtendedMap& f, const ExtendedMap& g,
                                     const PreNaturalTransformation& t) {
    PreNaturalTransformation out = zero_transformation(a, b, f, g);
    for (Obj l = 0; l < a.nobj; ++l) {
        Obj fl = f.index_map[l], gl = g.index_map[l];
        BitMatrix m1 = b.mu1(fl, gl);
        // μ₁ on hom_B(F(L), G(L)): the square space; component key in B is (fl, gl)
        if (m1.rows() == (int)t.t0[l].size())
            out.t0[l] = m1.apply(t.t0[l]);
    }
    int cap = a.arity_cap;
    ExtendedMap lhs = mu_ftg(b, f, t, g, cap);
    ExtendedMap rhs = compose_star(t.tp, a.mu, cap);
    out.tp = component_sum(lhs, rhs);
    out.tp.prune_zeros();
    return out;
}

Report check_natural_transformation(const PreNaturalTransformation& t, const ExtendedMap& f,
                                    const ExtendedMap& g, const AInfCategory& a,
                                    const AInfCategory& b) {
    Report rep;
    rep.check = "natural-transformation";
    PreNaturalTransformation m1t = functor_mu1(a, b, f, g, t);
    for (Obj l = 0; l < a.nobj; ++l)
        rep.add(m1t.t0[l].is_zero(), "mu1(T0) at object " + a.names[l],
                m1t.t0[l].is_zero() ? "" : "nonzero: " + m1t.t0[l].to_string());
    if (m1t.tp.comp.empty()) {
        rep.add(true, "mu.(F,T,G) + T'*mu", "vanishes");
    } else {
        for (const auto& [key, m] : m1t.tp.comp)
            (void)m, rep.add(false, "naturality residue at " + key_str(key));
    }
    return rep;
}

PreNaturalTransformation compose_pre_natural(const PreNaturalTransformation& s,
                                             const PreNaturalTransformation& t,
                                             const AInfCategory& a, const AInfCategory& b,
                                             const ExtendedMap& f, const ExtendedMap& g,
                                             const ExtendedMap& h) {
    PreNaturalTransformation out = zero_transformation(a, b, f, h);
    // (S∘T)⁰_L = μ₂^B(T⁰_L, S⁰_L)
    for (Obj l = 0; l < a.nobj; ++l) {
        Key k{f.index_map[l], g.index_map[l], h.index_map[l]};
        auto it = b.mu.comp.find(k);
        if (it == b.mu.comp.end()) continue;
        out.t0[l] = eval_multilinear(it->second, b.mu.key_input_dims(k), {t.t0[l], s.t0[l]});
    }
    out.tp = mu_insertions(b, {&f, &g, &h}, {&t, &s}, a.arity_cap);
    return out;
}

bool check_homotopic(const ExtendedMap& f, const ExtendedMap& g,
                     const PreNaturalTransformation& t, const AInfCategory& a,
                     const AInfCategory& b) {
    if (f.index_map != g.index_map)
        throw ObjectActionMismatch("check_homotopic: functors must share object action");
    for (const auto& v : t.t0)
        if (!v.is_zero()) return false;  // homotopies have vanishing 0-part
    PreNaturalTransformation m1t = functor_mu1(a, b, f, g, t);
    ExtendedMap d = component_sum(f, g);  // F − G over GF(2)
    d.truncate(a.arity_cap);
    ExtendedMap lhs = m1t.tp;
    lhs.truncate(a.arity_cap);
    return components_equal(lhs, d);
}

// --- homology category -----------------------------------------------------

BitVec HomologyCategory::multiply(Obj a, Obj b, Obj c, const BitVec& x, const BitVec& y) const {
    auto it = product.find({a, b, c});
    if (it == product.end()) return BitVec(h(a, c).rank);
    std::vector<int> dims{h(a, b).rank, h(b, c).rank};
    return eval_multilinear(it->second, dims, {x, y});
}

HomologyCategory homology_category(const AInfCategory& a) {
    HomologyCategory hc;
    hc.nobj = a.nobj;
    hc.hom.resize(a.nobj * a.nobj);
    for (Obj x = 0; x < a.nobj; ++x)
        for (Obj y = 0; y < a.nobj; ++y)
            hc.hom[x * a.nobj + y] = homology(a.hom_complex(x, y));
    for (Obj x = 0; x < a.nobj; ++x)
        for (Obj y = 0; y < a.nobj; ++y)
            for (Obj z = 0; z < a.nobj; ++z) {
                const HomologyData& hxy = hc.h(x, y);
                const HomologyData& hyz = hc.h(y, z);
                const HomologyData& hxz = hc.h(x, z);
                if (hxy.rank == 0 || hyz.rank == 0 || hxz.rank == 0) continue;
                Key k{x, y, z};
                auto it = a.mu.comp.find(k);
                BitMatrix m(hxz.rank, hxy.rank * hyz.rank);
                for (int i = 0; i < hxy.rank; ++i)
                    for (int j = 0; j < hyz.rank; ++j) {
                        BitVec prod(a.dim(x, z));
                        if (it != a.mu.comp.end())
                            prod = eval_multilinear(it->second, a.mu.key_input_dims(k),
                                                    {hxy.representatives[i],
                                                     hyz.representatives[j]});
                        m.set_col(i * hyz.rank + j, hxz.coords(prod));
                    }
                hc.product[{x, y, z}] = m;
            }
    // unit detection: first class (lexicographic coordinate order) acting as a
    // two-sided identity against every homology basis class
    hc.units.assign(a.nobj, std::nullopt);
    for (Obj l = 0; l < a.nobj; ++l) {
        const HomologyData& hll = hc.h(l, l);
        int total = 1 << hll.rank;  // mask 0 covers the fully acyclic case
        for (int mask = 0; mask < total; ++mask) {
            BitVec u(hll.rank);
            for (int i = 0; i < hll.rank; ++i)
                if ((mask >> i) & 1) u.set(i);
            bool ok = true;
            for (Obj k = 0; k < a.nobj && ok; ++k) {
                const HomologyData& hkl = hc.h(k, l);
                for (int i = 0; i < hkl.rank && ok; ++i)
                    ok = hc.multiply(k, l, l, BitVec::unit(hkl.rank, i), u) ==
                         BitVec::unit(hkl.rank, i);
                const HomologyData& hlk = hc.h(l, k);
                for (int i = 0; i < hlk.rank && ok; ++i)
                    ok = hc.multiply(l, l, k, u, BitVec::unit(hlk.rank, i)) ==
                         BitVec::unit(hlk.rank, i);
            }
            if (ok) {
                hc.units[l] = u;
                break;
            }
        }
    }
    return hc;
}

} // namespace homcob
