#pragma once

// Shared test helpers: seeded random instances and independent brute-force
// oracles for the composition operations.

#include <functional>
#include <random>

#include "homcob/ainf.hpp"
#include "homcob/chain.hpp"

namespace gen {

using namespace homcob;

using Rng = std::mt19937_64;

inline BitMatrix random_matrix(int rows, int cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng() & 1) m.set(r, c);
    return m;
}

inline BitMatrix random_invertible(int n, Rng& rng) {
    for (;;) {
        BitMatrix m = random_matrix(n, n, rng);
        if (is_invertible(m)) return m;
    }
}

// Random d with d*d = 0: a partial pairing in canonical form, conjugated by
// a random change of basis.
inline ChainComplex random_complex(int dim, Rng& rng) {
    if (dim == 0) return ChainComplex::zero();
    BitMatrix d(dim, dim);
    int pairs = dim >= 2 ? (int)(rng() % (dim / 2 + 1)) : 0;
    for (int i = 0; i < pairs; ++i) d.set(2 * i, 2 * i + 1);  // d(e_{2i+1}) = e_{2i}
    BitMatrix p = random_invertible(dim, rng);
    return ChainComplex(dim, p * d * *inverse(p));
}

// Uniform sample from the space of chain maps src -> tgt.
inline BitMatrix random_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                                  Rng& rng) {
    int ns = src.dim, nt = tgt.dim;
    if (ns == 0 || nt == 0) return BitMatrix(nt, ns);
    // Constraint rows: (f d_src + d_tgt f)(r,c) = 0, unknowns f(r,c).
    BitMatrix a(nt * ns, nt * ns);
    for (int r = 0; r < nt; ++r)
        for (int c = 0; c < ns; ++c) {
            int eq = r * ns + c;
            for (int m = 0; m < ns; ++m)
                if (src.d.get(m, c)) a.flip(eq, r * ns + m);
            for (int m = 0; m < nt; ++m)
                if (tgt.d.get(r, m)) a.flip(eq, m * ns + c);
        }
    auto ker = kernel_basis(a);
    BitVec x(nt * ns);
    for (const BitVec& k : ker)
        if (rng() & 1) x ^= k;
    BitMatrix f(nt, ns);
    for (int r = 0; r < nt; ++r)
        for (int c = 0; c < ns; ++c)
            if (x.get(r * ns + c)) f.set(r, c);
    return f;
}

// The dg-category of a family of chain complexes: hom(a,b) = all linear maps
// C_a -> C_b (basis E_{rc}, index r*dim_a + c), mu1 = [d,-], mu2 = reverse
// composition.
inline AInfCategory dg_category(const std::vector<ChainComplex>& cs, int cap = 3) {
    AInfCategory cat;
    int n = (int)cs.size();
    cat.nobj = n;
    cat.arity_cap = cap;
    for (int i = 0; i < n; ++i) cat.names.push_back("C" + std::to_string(i + 1));
    cat.dims.assign(n * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) cat.dims[a * n + b] = cs[a].dim * cs[b].dim;
    cat.mu.nobj = n;
    cat.mu.in_dims = cat.dims;
    cat.mu.out_dims = cat.dims;
    cat.mu.arity_cap = cap;
    for (int i = 0; i < n; ++i) cat.mu.index_map.push_back(i);

    auto vec_of = [](const BitMatrix& m, int da) {
        BitVec v(m.rows() * da);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < da; ++c)
                if (m.get(r, c)) v.set(r * da + c);
        return v;
    };
    auto mat_of = [](int idx, int db, int da) {
        BitMatrix m(db, da);
        m.set(idx / da, idx % da);
        return m;
    };

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int h = cat.dims[a * n + b];
            if (h == 0) continue;
            BitMatrix m1(h, h);
            for (int i = 0; i < h; ++i) {
                BitMatrix e = mat_of(i, cs[b].dim, cs[a].dim);
                m1.set_col(i, vec_of(cs[b].d * e + e * cs[a].d, cs[a].dim));
            }
            if (!m1.is_zero()) cat.mu.set_component({a, b}, m1);
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int hf = cat.dims[a * n + b], hg = cat.dims[b * n + c];
                int ho = cat.dims[a * n + c];
                if (hf == 0 || hg == 0 || ho == 0) continue;
                BitMatrix m2(ho, hf * hg);
                for (int i = 0; i < hf; ++i)
                    for (int j = 0; j < hg; ++j) {
                        BitMatrix ef = mat_of(i, cs[b].dim, cs[a].dim);
                        BitMatrix eg = mat_of(j, cs[c].dim, cs[b].dim);
                        m2.set_col(i * hg + j, vec_of(eg * ef, cs[a].dim));
                    }
                if (!m2.is_zero()) cat.mu.set_component({a, b, c}, m2);
            }
    return cat;
}

inline AInfCategory random_dg_category(Rng& rng, int max_obj = 3, int max_dim = 2) {
    int n = 1 + (int)(rng() % max_obj);
    std::vector<ChainComplex> cs;
    for (int i = 0; i < n; ++i) cs.push_back(random_complex(1 + rng() % max_dim, rng));
    return dg_category(cs);
}

// A category with random hom complexes and mu1 only (mu_k = 0, k >= 2).
inline AInfCategory mu1_category(int nobj, int max_dim, Rng& rng, int cap = 4) {
    AInfCategory cat;
    cat.nobj = nobj;
    cat.arity_cap = cap;
    for (int i = 0; i < nobj; ++i) cat.names.push_back("O" + std::to_string(i + 1));
    cat.dims.assign(nobj * nobj, 0);
    std::vector<ChainComplex> homs(nobj * nobj);
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b) {
            homs[a * nobj + b] = random_complex(1 + rng() % max_dim, rng);
            cat.dims[a * nobj + b] = homs[a * nobj + b].dim;
        }
    cat.mu.nobj = nobj;
    cat.mu.in_dims = cat.dims;
    cat.mu.out_dims = cat.dims;
    cat.mu.arity_cap = cap;
    for (int i = 0; i < nobj; ++i) cat.mu.index_map.push_back(i);
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b)
            if (!homs[a * nobj + b].d.is_zero())
                cat.mu.set_component({a, b}, homs[a * nobj + b].d);
    return cat;
}

// --- independent oracles ---------------------------------------------------

inline BitVec eval_em(const ExtendedMap& m, const Key& key,
                      const std::vector<BitVec>& args) {
    int out = m.out_dim(key.front(), key.back());
    auto it = m.comp.find(key);
    if (it == m.comp.end()) return BitVec(out);
    return eval_multilinear(it->second, m.key_input_dims(key), args);
}

// (G ⋆ F): one consecutive block through F.
inline BitVec star_oracle(const ExtendedMap& g, const ExtendedMap& f, const Key& key,
                          const std::vector<BitVec>& args) {
    int k = (int)args.size();
    BitVec acc(g.out_dim(key.front(), key.back()));
    for (int p = 1; p <= k; ++p)
        for (int q = p; q <= k; ++q) {
            Key fkey(key.begin() + (p - 1), key.begin() + q + 1);
            BitVec mid = eval_em(f, fkey, {args.begin() + (p - 1), args.begin() + q});
            // G inputs: a_1..a_{p-1}, F-block output, a_{q+1}..a_k.
            Key gkey;
            for (int i = 0; i < p; ++i) gkey.push_back(key[i]);
            for (int i = q; i <= k; ++i) gkey.push_back(key[i]);
            std::vector<BitVec> gargs(args.begin(), args.begin() + (p - 1));
            gargs.push_back(mid);
            gargs.insert(gargs.end(), args.begin() + q, args.end());
            acc ^= eval_em(g, gkey, gargs);
        }
    return acc;
}

// (G ∘ F): every block through F; recursion over ordered partitions.
inline BitVec circle_oracle(const ExtendedMap& g, const ExtendedMap& f, const Key& key,
                            const std::vector<BitVec>& args) {
    int k = (int)args.size();
    BitVec acc(g.out_dim(f.index_map[key.front()], f.index_map[key.back()]));
    // enumerate split points 0 = s0 < s1 < ... < sr = k
    std::vector<int> splits;
    std::function<void(int)> rec = [&](int from) {
        if (from == k) {
            Key gkey;
            std::vector<BitVec> gargs;
            gkey.push_back(key[0]);
            int prev = 0;
            for (int s : splits) {
                Key fkey(key.begin() + prev, key.begin() + s + 1);
                gargs.push_back(eval_em(f, fkey, {args.begin() + prev, args.begin() + s}));
                gkey.push_back(key[s]);
                prev = s;
            }
            // map the object tuple through F's index map for G's key
            Key mapped;
            for (Obj o : gkey) mapped.push_back(f.index_map[o]);
            acc ^= eval_em(g, mapped, gargs);
            return;
        }
        for (int next = from + 1; next <= k; ++next) {
            splits.push_back(next);
            rec(next);
            splits.pop_back();
        }
    };
    rec(0);
    return acc;
}

inline BitVec eval_mixed(const MixedExtendedMap& m, const Key& key,
                         const std::vector<BitVec>& args) {
    int out = m.mod_out[key.front()];
    auto it = m.comp.find(key);
    if (it == m.comp.end()) return BitVec(out);
    return eval_multilinear(it->second, m.key_input_dims(key), args);
}

// (P ⊣ Q): Q consumes a suffix of the category inputs plus the module input.
inline BitVec mixed_oracle(const MixedExtendedMap& p, const MixedExtendedMap& q,
                           const Key& key, const std::vector<BitVec>& args) {
    int k = (int)args.size();  // k-1 category inputs + module input
    BitVec acc(p.mod_out[key.front()]);
    for (int i = 1; i <= k; ++i) {
        // Q takes inputs i..k-1 and the module input; P takes 1..i-1 + Q-out.
        Key qkey(key.begin() + (i - 1), key.end());
        BitVec mid = eval_mixed(q, qkey, {args.begin() + (i - 1), args.end()});
        Key pkey(key.begin(), key.begin() + i);
        std::vector<BitVec> pargs(args.begin(), args.begin() + (i - 1));
        pargs.push_back(mid);
        acc ^= eval_mixed(p, pkey, pargs);
    }
    return acc;
}

// All object tuples of a given length over nobj objects.
inline std::vector<Key> all_keys(int nobj, int len) {
    std::vector<Key> out;
    Key cur(len, 0);
    for (;;) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[i] == nobj - 1) cur[i--] = 0;
        if (i < 0) break;
        cur[i]++;
    }
    return out;
}

// Random extended map (identity index map) with components up to max_arity.
inline ExtendedMap random_em(const AInfCategory& cat, int max_arity, Rng& rng,
                             double density = 0.5) {
    ExtendedMap m = ExtendedMap::zero_like(cat.mu);
    for (int r = 1; r <= max_arity; ++r)
        for (const Key& key : all_keys(cat.nobj, r + 1)) {
            int cols = m.key_cols(key);
            int out = m.out_dim(key.front(), key.back());
            if (cols == 0 || out == 0) continue;
            if ((rng() % 100) >= (uint64_t)(density * 100)) continue;
            m.set_component(key, random_matrix(out, cols, rng));
        }
    m.prune_zeros();
    return m;
}

} // namespace gen
