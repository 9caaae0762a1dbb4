#include "homcob/cone_calc.hpp"

#include <random>

namespace homcob {

namespace {

// Incremental GF(2) linear system over a flat unknown vector.
struct System {
    int nvars = 0;
    std::vector<BitVec> rows;
    std::vector<bool> rhs;

    explicit System(int n) : nvars(n) {}

    struct Eq {
        System* s;
        BitVec lhs;
        bool r = false;
        void add(int var) { lhs.flip(var); }
        void rhs(bool b) { r = b; }
    };

    Eq eq() { return Eq{this, BitVec(nvars), false}; }
    void push(Eq& e) {
        rows.push_back(e.lhs);
        rhs.push_back(e.r);
    }

    // Particular solution + kernel basis; nullopt when inconsistent.
    std::optional<std::pair<BitVec, std::vector<BitVec>>> solve_affine() const {
        BitMatrix a((int)rows.size(), nvars);
        BitVec b((int)rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            a.set_row((int)i, rows[i]);
            if (rhs[i]) b.set((int)i);
        }
        auto x = homcob::solve(a, b);
        if (!x) return std::nullopt;
        return std::make_pair(*x, kernel_basis(a));
    }
};

BitMatrix slice_matrix(const BitVec& x, int offset, int rows, int cols) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (x.get(offset + r * cols + c)) m.set(r, c);
    return m;
}

// Add equations for  A + I * L + R * I = dT * H + H * dS  (all maps S -> T in
// the obvious shapes), where I occupies vars [i0..) shaped it x ic and H
// occupies [h0..) shaped T.dim x S.dim.  L: S -> I-domain (cols of I), R:
// I-codomain -> T.  Either L or R may be null (treated as absent).
void homotopy_square(System& sys, const BitMatrix& a, const ChainComplex& s,
                     const ChainComplex& t, int i0, int ir, int ic, const BitMatrix* lmat,
                     const BitMatrix* rmat, int h0) {
    for (int r = 0; r < t.dim; ++r)
        for (int c = 0; c < s.dim; ++c) {
            auto e = sys.eq();
            if (lmat)  // (I * L)(r,c) = sum_m I(r,m) L(m,c)
                for (int m = 0; m < ic; ++m)
                    if (lmat->get(m, c)) e.add(i0 + r * ic + m);
            if (rmat)  // (R * I)(r,c) = sum_m R(r,m) I(m,c)
                for (int m = 0; m < ir; ++m)
                    if (rmat->get(r, m)) e.add(i0 + m * ic + c);
            for (int m = 0; m < t.dim; ++m)  // (dT H)(r,c)
                if (t.d.get(r, m)) e.add(h0 + m * s.dim + c);
            for (int m = 0; m < s.dim; ++m)  // (H dS)(r,c)
                if (s.d.get(m, c)) e.add(h0 + r * s.dim + m);
            e.rhs(a.get(r, c));
            sys.push(e);
        }
}

} // namespace

const ChainComplex& ConeDecomposition::total() const {
    if (tris.empty()) throw BrokenChain("empty cone decomposition");
    return tris.back().ynext;
}

std::vector<ChainComplex> ConeDecomposition::linearization() const {
    std::vector<ChainComplex> xs;
    xs.reserve(tris.size());
    for (const auto& t : tris) xs.push_back(t.x);
    return xs;
}

bool ConeDecomposition::is_strict() const {
    for (const auto& t : tris)
        if (t.cert) return false;
    return true;
}

ConeDecomposition strict_decomposition(const std::vector<ChainComplex>& xs,
                                       const std::vector<BitMatrix>& us) {
    if (xs.empty() || xs.size() != us.size())
        throw BrokenChain("strict_decomposition: need one structure map per line");
    ConeDecomposition eta;
    ChainComplex y = ChainComplex::zero();
    for (size_t i = 0; i < xs.size(); ++i) {
        ChainMap u(xs[i], y, us[i]);
        u.require_chain_map();
        ConeData cd = cone_of_chain_map(u);
        eta.tris.push_back(
            {xs[i], y, cd.cone, us[i], cd.inclusion.f, cd.projection.f, std::nullopt});
        y = cd.cone;
    }
    return eta;
}

ConeDecomposition trivial_decomposition(const ChainComplex& x) {
    return strict_decomposition({x}, {BitMatrix(0, x.dim)});
}

Report check_cone_decomposition(const ConeDecomposition& eta) {
    Report rep;
    rep.check = "cone-decomposition";
    if (eta.tris.empty()) {
        rep.add(false, "nonempty", "no triangles");
        return rep;
    }
    rep.add(eta.tris.front().y.dim == 0, "base", "first triangle must start at 0");
    for (size_t i = 0; i + 1 < eta.tris.size(); ++i)
        if (eta.tris[i].ynext != eta.tris[i + 1].y) {
            rep.add(false, "chain",
                    "line " + std::to_string(i + 1) + ": Y_{i+1} does not continue the tower");
            return rep;
        }
    for (size_t i = 0; i < eta.tris.size(); ++i) {
        const Triangle& t = eta.tris[i];
        std::string tag = "line " + std::to_string(i + 1);
        try {
            ChainMap u(t.x, t.y, t.u), v(t.y, t.ynext, t.v), w(t.ynext, t.x, t.w);
            bool maps = u.is_chain_map() && v.is_chain_map() && w.is_chain_map();
            rep.add(maps, tag + " chain maps");
            if (!maps) continue;
            ConeData cd = cone_of_chain_map(u);
            if (!t.cert) {
                bool strict = t.ynext == cd.cone && t.v == cd.inclusion.f &&
                              t.w == cd.projection.f;
                rep.add(strict, tag + " strict",
                        strict ? "" : "not the canonical cone of u");
            } else {
                ChainMap cert(t.ynext, cd.cone, *t.cert);
                bool ok = cert.is_chain_map() && is_quasi_iso(cert);
                if (ok) {
                    BitMatrix ht = induced_on_homology(cert);
                    BitMatrix hv = induced_on_homology(v);
                    BitMatrix hw = induced_on_homology(w);
                    ok = ht * hv == induced_on_homology(cd.inclusion) &&
                         induced_on_homology(cd.projection) * ht == hw;
                }
                rep.add(ok, tag + " certificate",
                        ok ? "" : "t is not a triangle witness onto Cone(u)");
            }
        } catch (const Error& e) {
            rep.add(false, tag, e.what());
        }
    }
    return rep;
}

bool check_equivalence(const ConeDecomposition& eta, const ConeDecomposition& etap,
                       const std::vector<BitMatrix>& witnesses) {
    size_t k = eta.tris.size();
    if (etap.tris.size() != k)
        throw LengthMismatch("decompositions of different length");
    if (witnesses.size() != k + 1)
        throw LengthMismatch("need k+1 witnesses for length-k decompositions");
    for (size_t i = 0; i < k; ++i)
        if (eta.tris[i].x != etap.tris[i].x) return false;
    for (size_t i = 0; i <= k; ++i) {
        const ChainComplex& y = i < k ? eta.tris[i].y : eta.total();
        const ChainComplex& yp = i < k ? etap.tris[i].y : etap.total();
        ChainMap w(y, yp, witnesses[i]);
        if (!w.is_chain_map() || !is_invertible(witnesses[i])) return false;
    }
    for (size_t i = 0; i < k; ++i) {
        const Triangle& t = eta.tris[i];
        const Triangle& tp = etap.tris[i];
        // u-square: I_i u_i + u'_i ~ 0
        if (!null_homotopy(t.x, tp.y, witnesses[i] * t.u + tp.u)) return false;
        // v-square: I_{i+1} v_i + v'_i I_i ~ 0
        if (!null_homotopy(t.y, tp.ynext, witnesses[i + 1] * t.v + tp.v * witnesses[i]))
            return false;
        // w-square: w'_i I_{i+1} + w_i ~ 0
        if (!null_homotopy(t.ynext, t.x, tp.w * witnesses[i + 1] + t.w)) return false;
    }
    return true;
}

std::optional<std::vector<BitMatrix>> find_equivalence_witnesses(
    const ConeDecomposition& eta, const ConeDecomposition& etap, uint64_t seed,
    int tries) {
    size_t k = eta.tris.size();
    if (etap.tris.size() != k)
        throw LengthMismatch("decompositions of different length");
    for (size_t i = 0; i < k; ++i)
        if (eta.tris[i].x != etap.tris[i].x) return std::nullopt;

    std::mt19937_64 rng(seed);
    std::vector<BitMatrix> wit;
    wit.push_back(BitMatrix(0, 0));  // Y_1 = Y'_1 = 0

    for (size_t i = 0; i < k; ++i) {
        const Triangle& t = eta.tris[i];
        const Triangle& tp = etap.tris[i];
        const ChainComplex& yn = t.ynext;
        const ChainComplex& ynp = tp.ynext;
        if (yn.dim != ynp.dim) return std::nullopt;
        int n = yn.dim;

        // Unknowns: I (n x n), then one homotopy per constraint square.
        int i0 = 0;
        int hv0 = i0 + n * n;
        int hw0 = hv0 + ynp.dim * t.y.dim;
        int pos = hw0 + t.x.dim * yn.dim;
        int hu0 = -1;
        bool last = (i + 1 == k);
        if (!last) {
            hu0 = pos;
            pos += ynp.dim * eta.tris[i + 1].x.dim;
        }
        System sys(pos);

        // chain map: I d + d' I = 0
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                auto e = sys.eq();
                for (int m = 0; m < n; ++m) {
                    if (yn.d.get(m, c)) e.add(i0 + r * n + m);   // (I d)(r,c)
                    if (ynp.d.get(r, m)) e.add(i0 + m * n + c);  // (d' I)(r,c)
                }
                sys.push(e);
            }
        // v-square: I v_i + [v'_i I_i] = d' Hv + Hv d
        homotopy_square(sys, tp.v * wit.back(), t.y, ynp, i0, n, n, &t.v, nullptr, hv0);
        // w-square: w'_i I + w_i = dX Hw + Hw d
        homotopy_square(sys, t.w, yn, t.x, i0, n, n, nullptr, &tp.w, hw0);
        // next u-square: I u_{i+1} + u'_{i+1} = d' Hu + Hu dX
        if (!last)
            homotopy_square(sys, etap.tris[i + 1].u, eta.tris[i + 1].x, ynp, i0, n, n,
                            &eta.tris[i + 1].u, nullptr, hu0);

        auto sol = sys.solve_affine();
        if (!sol) return std::nullopt;
        const BitVec& x0 = sol->first;
        const std::vector<BitVec>& ker = sol->second;

        BitMatrix cand = slice_matrix(x0, i0, n, n);
        bool found = is_invertible(cand);
        for (int tr = 0; tr < tries && !found; ++tr) {
            BitVec x = x0;
            for (const BitVec& kv : ker)
                if (rng() & 1) x ^= kv;
            cand = slice_matrix(x, i0, n, n);
            found = is_invertible(cand);
        }
        if (!found) return std::nullopt;
        wit.push_back(cand);
    }
    return wit;
}

TSSummand identity_summand(const ChainComplex& x) {
    TSSummand s;
    s.source = x;
    s.phi = BitMatrix::identity(x.dim);
    s.phi_inv = BitMatrix::identity(x.dim);
    s.kk = BitMatrix(x.dim, x.dim);
    s.eta = trivial_decomposition(x);
    return s;
}

std::vector<ChainComplex> TSMorphism::source_tuple() const {
    std::vector<ChainComplex> t;
    for (const auto& s : summands) t.push_back(s.source);
    return t;
}

std::vector<ChainComplex> TSMorphism::target_tuple() const {
    std::vector<ChainComplex> t;
    for (const auto& s : summands) {
        auto lin = s.eta.linearization();
        t.insert(t.end(), lin.begin(), lin.end());
    }
    return t;
}

TSMorphism identity_ts(const std::vector<ChainComplex>& tuple) {
    TSMorphism m;
    for (const auto& x : tuple) m.summands.push_back(identity_summand(x));
    return m;
}

Report check_ts_morphism(const TSMorphism& m) {
    Report rep;
    rep.check = "ts-morphism";
    for (size_t i = 0; i < m.summands.size(); ++i) {
        const TSSummand& s = m.summands[i];
        std::string tag = "summand " + std::to_string(i + 1);
        Report sub = check_cone_decomposition(s.eta);
        rep.add(sub.pass(), tag + " decomposition",
                sub.pass() ? "" : std::to_string(sub.fail_count()) + " failing line(s)");
        rep.add(s.eta.is_strict(), tag + " strict");
        if (!sub.pass()) continue;
        try {
            const ChainComplex& a = s.eta.total();
            ChainMap phi(s.source, a, s.phi);
            bool cm = phi.is_chain_map();
            rep.add(cm, tag + " phi chain map");
            if (!cm) continue;
            ChainMap phi_inv(a, s.source, s.phi_inv);
            bool inv_ok = phi_inv.is_chain_map() &&
                          s.phi_inv * s.phi + BitMatrix::identity(s.source.dim) ==
                              s.source.d * s.kk + s.kk * s.source.d;
            rep.add(inv_ok, tag + " homotopy inverse data");
            rep.add(is_quasi_iso(phi), tag + " phi quasi-iso");
        } catch (const Error& e) {
            rep.add(false, tag, e.what());
        }
    }
    return rep;
}

namespace {

// Replace position h (1-based) of cur's target linearization by composing
// with psi there.  cur.eta and psi.eta must be strict.
TSSummand compose_at(const TSSummand& cur, int h, const TSSummand& psi) {
    if (!cur.eta.is_strict() || !psi.eta.is_strict())
        throw TriangleFailure("composition requires strict cone decompositions");
    int k = cur.eta.length();
    int l = psi.eta.length();
    if (h < 1 || h > k) throw TupleMismatch("composition position out of range");
    const Triangle& th = cur.eta.tris[h - 1];
    if (th.x != psi.source)
        throw TupleMismatch("summand source does not match the slot it replaces");

    const ChainComplex& aph = th.y;        // Y_h of cur
    const ChainComplex& atop = psi.top();  // a = top of psi's tower
    const BitMatrix& uph = th.u;           // u'_h : y_h -> Y_h

    // beta_q : Y^psi_{q} -> a by composing the inclusions v_q ... v_l.
    std::vector<BitMatrix> beta(l + 2, BitMatrix(0, 0));
    beta[l + 1] = BitMatrix::identity(atop.dim);
    for (int q = l; q >= 1; --q) beta[q] = beta[q + 1] * psi.eta.tris[q - 1].v;

    // alpha_q = u'_h phi^{-1} beta_q : Y^psi_q -> Y_h.
    std::vector<BitMatrix> alpha(l + 2, BitMatrix(0, 0));
    for (int q = 1; q <= l + 1; ++q) alpha[q] = uph * psi.phi_inv * beta[q];

    // Grow the new lines B_1 = Y_h, B_{q+1} = Cone(ubar_q).
    std::vector<Triangle> newlines;
    ChainComplex b = aph;
    for (int q = 1; q <= l; ++q) {
        const Triangle& tq = psi.eta.tris[q - 1];
        int nz = tq.x.dim;
        // ubar_q = (u_q ; lambda_q), lambda_q = alpha_{q+1} restricted to the
        // z-block of Y^psi_{q+1} = z_q (+) Y^psi_q.
        BitMatrix ubar(b.dim, nz);
        int top_rows = tq.y.dim;  // = b.dim - aph.dim
        for (int r = 0; r < top_rows; ++r)
            for (int c = 0; c < nz; ++c)
                if (tq.u.get(r, c)) ubar.set(r, c);
        for (int r = 0; r < aph.dim; ++r)
            for (int c = 0; c < nz; ++c)
                if (alpha[q + 1].get(r, c)) ubar.set(top_rows + r, c);
        ChainMap um(tq.x, b, ubar);
        um.require_chain_map();
        ConeData cd = cone_of_chain_map(um);
        newlines.push_back(
            {tq.x, b, cd.cone, ubar, cd.inclusion.f, cd.projection.f, std::nullopt});
        b = cd.cone;
    }

    // psi-transport: a'_{h+1} = y_h (+) Y_h -> B_{l+1} = a (+)... in cone
    // coordinates: top-left phi, bottom-left u'_h K, bottom-right identity.
    const BitMatrix& kmat = psi.kk;
    BitMatrix trans(atop.dim + aph.dim, psi.source.dim + aph.dim);
    for (int r = 0; r < atop.dim; ++r)
        for (int c = 0; c < psi.source.dim; ++c)
            if (psi.phi.get(r, c)) trans.set(r, c);
    BitMatrix uk = uph * kmat;
    for (int r = 0; r < aph.dim; ++r) {
        for (int c = 0; c < psi.source.dim; ++c)
            if (uk.get(r, c)) trans.set(atop.dim + r, c);
        trans.set(atop.dim + r, psi.source.dim + r);
    }

    // Transport the remaining lines h+1..k, rebuilding strict cones.
    std::vector<Triangle> tail;
    ChainComplex bcur = b;
    BitMatrix psi_cur = trans;  // old Y_{j} -> new B_{j}
    for (int j = h; j < k; ++j) {
        const Triangle& tj = cur.eta.tris[j];
        BitMatrix newu = psi_cur * tj.u;
        ChainMap um(tj.x, bcur, newu);
        um.require_chain_map();
        ConeData cd = cone_of_chain_map(um);
        tail.push_back(
            {tj.x, bcur, cd.cone, newu, cd.inclusion.f, cd.projection.f, std::nullopt});
        // psi_next = id_{x_j} (+) psi_cur in cone coordinates.
        BitMatrix nxt(tj.x.dim + bcur.dim, tj.x.dim + tj.y.dim);
        for (int r = 0; r < tj.x.dim; ++r) nxt.set(r, r);
        for (int r = 0; r < bcur.dim; ++r)
            for (int c = 0; c < tj.y.dim; ++c)
                if (psi_cur.get(r, c)) nxt.set(tj.x.dim + r, tj.x.dim + c);
        psi_cur = nxt;
        bcur = cd.cone;
    }

    TSSummand out;
    out.source = cur.source;
    out.eta.tris.assign(cur.eta.tris.begin(), cur.eta.tris.begin() + (h - 1));
    out.eta.tris.insert(out.eta.tris.end(), newlines.begin(), newlines.end());
    out.eta.tris.insert(out.eta.tris.end(), tail.begin(), tail.end());
    out.phi = psi_cur * cur.phi;
    ChainMap phimap(out.source, out.eta.total(), out.phi);
    phimap.require_chain_map();

    if (auto inv = inverse(psi_cur)) {
        out.phi_inv = cur.phi_inv * *inv;
        out.kk = cur.kk;
    } else {
        HomotopyEquivalence he = homotopy_inverse(phimap);
        out.phi_inv = he.g;
        out.kk = he.k;
    }
    return out;
}

} // namespace

TSMorphism compose_ts(const TSMorphism& phi, const TSMorphism& phip) {
    // phi after phip: target tuple of phip must equal source tuple of phi.
    auto mid = phip.target_tuple();
    auto src = phi.source_tuple();
    if (mid.size() != src.size()) throw TupleMismatch("tuple lengths differ");
    for (size_t i = 0; i < mid.size(); ++i)
        if (mid[i] != src[i]) throw TupleMismatch("tuple entry " + std::to_string(i + 1));

    TSMorphism out;
    size_t pos = 0;  // index into phi.summands
    for (const TSSummand& block : phip.summands) {
        int nu = block.eta.length();
        TSSummand cur = block;
        for (int hh = nu; hh >= 1; --hh)
            cur = compose_at(cur, hh, phi.summands[pos + (size_t)hh - 1]);
        pos += (size_t)nu;
        out.summands.push_back(std::move(cur));
    }
    return out;
}

TSMorphism sum_ts(const TSMorphism& a, const TSMorphism& b) {
    TSMorphism out = a;
    out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
    return out;
}

ChainMap project_ts_summand(const TSSummand& s) {
    const Triangle& last = s.eta.tris.back();
    return ChainMap(s.source, last.x, last.w * s.phi);
}

ChainMap project_ts(const TSMorphism& m) {
    if (m.summands.empty()) throw TupleMismatch("projection of the void family");
    return project_ts_summand(m.summands.back());
}

bool ts_summand_equivalent(const TSSummand& a, const TSSummand& b,
                           const std::vector<BitMatrix>& witnesses) {
    if (a.source != b.source) return false;
    if (!check_equivalence(a.eta, b.eta, witnesses)) return false;
    return null_homotopy(a.source, b.eta.total(), b.phi + witnesses.back() * a.phi)
        .has_value();
}

int fredholm_index(const MorseIndexProfile& p) {
    int s = 0;
    for (int e : p.entries) s += e;
    return s - p.exit - ((int)p.entries.size() - 1);
}

IndexCase classify_index(const MorseIndexProfile& p) {
    int k = (int)p.entries.size();
    if (k == 0) return IndexCase::NotRealizable;
    if (k == 1 && p.entries[0] == p.exit) return IndexCase::K1Equal;
    int ones = 0, zeros = 0;
    for (int e : p.entries) (e == 1 ? ones : zeros)++;
    if (ones == k && p.exit == 1) return IndexCase::AllOnes;
    if (p.exit == 0 && zeros == 1 && ones == k - 1) return IndexCase::SingleZeroEntry;
    if (ones == k && p.exit == 0) return IndexCase::ExitZeroAllOnes;
    return IndexCase::NotRealizable;
}

} // namespace homcob
