#include "homcob/chain.hpp"

namespace homcob {

ChainComplex::ChainComplex(int dim_, BitMatrix d_) : dim(dim_), d(std::move(d_)) {
    if (d.rows() != dim || d.cols() != dim)
        throw DimensionError("ChainComplex: differential must be dim x dim");
    if (!(d * d).is_zero()) throw InvalidComplex("ChainComplex: d*d != 0");
}

ChainMap::ChainMap(ChainComplex s, ChainComplex t, BitMatrix f_)
    : source(std::move(s)), target(std::move(t)), f(std::move(f_)) {
    if (f.rows() != target.dim || f.cols() != source.dim)
        throw DimensionError("ChainMap: matrix shape mismatch");
}

void ChainMap::require_chain_map() const {
    if (!is_chain_map()) throw NotChainMap("map does not commute with differentials");
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target != g.source) throw DimensionError("compose: middle complex mismatch");
    return ChainMap(f.source, g.target, g.f * f.f);
}

HomologyData homology(const ChainComplex& c) {
    HomologyData h;
    h.dim_ = c.dim;
    h.d_ = c.d;
    h.cycle_basis = kernel_basis(c.d);
    h.boundary_basis = column_space_basis(c.d);
    // Extend the boundary basis to a basis of ker d; the added cycles are the
    // canonical homology representatives.  Greedy scan keeps it deterministic.
    int dim = c.dim;
    BitMatrix span(dim, 0);
    std::vector<BitVec> cols;
    auto independent = [&](const BitVec& v) {
        BitMatrix m(dim, (int)cols.size() + 1);
        for (size_t i = 0; i < cols.size(); ++i) m.set_col((int)i, cols[i]);
        m.set_col((int)cols.size(), v);
        return rank(m) == (int)cols.size() + 1;
    };
    for (const auto& b : h.boundary_basis) cols.push_back(b);
    for (const auto& z : h.cycle_basis) {
        if (independent(z)) {
            cols.push_back(z);
            h.representatives.push_back(z);
        }
    }
    h.rank = (int)h.representatives.size();
    h.coord_matrix_ = BitMatrix(dim, (int)cols.size());
    for (size_t i = 0; i < cols.size(); ++i) h.coord_matrix_.set_col((int)i, cols[i]);
    return h;
}

BitVec HomologyData::coords(const BitVec& v) const {
    if (v.size() != dim_) throw DimensionError("homology coords: vector size mismatch");
    if (!d_.apply(v).is_zero()) throw NotACycle("vector is not a cycle");
    auto x = solve(coord_matrix_, v);
    if (!x) throw NotACycle("cycle not in span of cycle basis");  // cannot happen
    int nb = (int)boundary_basis.size();
    BitVec out(rank);
    for (int i = 0; i < rank; ++i)
        if (x->get(nb + i)) out.set(i);
    return out;
}

BitVec HomologyData::rep_combination(const BitVec& c) const {
    if (c.size() != rank) throw DimensionError("rep_combination: size mismatch");
    BitVec v(dim_);
    for (int i : c.support()) v ^= representatives[i];
    return v;
}

BitMatrix induced_on_homology(const ChainMap& f) {
    f.require_chain_map();
    HomologyData hs = homology(f.source), ht = homology(f.target);
    BitMatrix m(ht.rank, hs.rank);
    for (int j = 0; j < hs.rank; ++j)
        m.set_col(j, ht.coords(f.f.apply(hs.representatives[j])));
    return m;
}

bool is_quasi_iso(const ChainMap& f) {
    BitMatrix h = induced_on_homology(f);
    return is_invertible(h);
}

ConeData cone_of_chain_map(const ChainMap& f) {
    f.require_chain_map();
    int ns = f.source.dim, nt = f.target.dim;
    BitMatrix d(ns + nt, ns + nt);
    for (int r = 0; r < ns; ++r)
        for (int c : f.source.d.row(r).support()) d.set(r, c);
    for (int r = 0; r < nt; ++r) {
        for (int c : f.target.d.row(r).support()) d.set(ns + r, ns + c);
        for (int c : f.f.row(r).support()) d.set(ns + r, c);
    }
    ConeData out;
    out.cone = ChainComplex(ns + nt, d);
    BitMatrix inc(ns + nt, nt);
    for (int r = 0; r < nt; ++r) inc.set(ns + r, r);
    out.inclusion = ChainMap(f.target, out.cone, inc);
    BitMatrix proj(ns, ns + nt);
    for (int r = 0; r < ns; ++r) proj.set(r, r);
    out.projection = ChainMap(out.cone, f.source, proj);
    return out;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    BitMatrix d(a.dim + b.dim, a.dim + b.dim);
    for (int r = 0; r < a.dim; ++r)
        for (int c : a.d.row(r).support()) d.set(r, c);
    for (int r = 0; r < b.dim; ++r)
        for (int c : b.d.row(r).support()) d.set(a.dim + r, a.dim + c);
    return ChainComplex(a.dim + b.dim, d);
}

namespace {

// Helper for assembling block linear systems over GF(2).
struct LinearSystem {
    int nunk;
    std::vector<BitVec> rows;
    std::vector<bool> rhs;
    explicit LinearSystem(int n) : nunk(n) {}
    // new equation; returns its row for incremental filling
    int new_eq(bool b) {
        rows.emplace_back(nunk);
        rhs.push_back(b);
        return (int)rows.size() - 1;
    }
    void add(int eq, int unk) { rows[eq].flip(unk); }
    std::optional<BitVec> solve_system() const {
        BitMatrix a((int)rows.size(), nunk);
        BitVec b((int)rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            a.set_row((int)i, rows[i]);
            if (rhs[i]) b.set((int)i);
        }
        return solve(a, b);
    }
};

} // namespace

std::optional<BitMatrix> null_homotopy(const ChainComplex& s, const ChainComplex& t,
                                       const BitMatrix& dmap) {
    if (dmap.rows() != t.dim || dmap.cols() != s.dim)
        throw DimensionError("null_homotopy: map shape mismatch");
    int ns = s.dim, nt = t.dim;
    // unknown H[a][b], a < nt, b < ns, index a*ns + b
    LinearSystem sys(nt * ns);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ns; ++j) {
            int eq = sys.new_eq(dmap.get(i, j));
            for (int c : t.d.row(i).support()) sys.add(eq, c * ns + j);   // (d_T H)_{ij}
            for (int r = 0; r < ns; ++r)
                if (s.d.get(r, j)) sys.add(eq, i * ns + r);               // (H d_S)_{ij}
        }
    auto x = sys.solve_system();
    if (!x) return std::nullopt;
    BitMatrix h(nt, ns);
    for (int a = 0; a < nt; ++a)
        for (int b = 0; b < ns; ++b)
            if (x->get(a * ns + b)) h.set(a, b);
    return h;
}

bool null_homotopic(const ChainMap& f) {
    return null_homotopy(f.source, f.target, f.f).has_value();
}

HomotopyEquivalence homotopy_inverse(const ChainMap& f) {
    f.require_chain_map();
    int ns = f.source.dim, nt = f.target.dim;
    const BitMatrix &ds = f.source.d, &dt = f.target.d;
    // unknowns: g (ns x nt), k (ns x ns), k2 (nt x nt)
    int og = 0, ok = ns * nt, ok2 = ok + ns * ns;
    LinearSystem sys(ok2 + nt * nt);
    auto G = [&](int a, int b) { return og + a * nt + b; };
    auto K = [&](int a, int b) { return ok + a * ns + b; };
    auto K2 = [&](int a, int b) { return ok2 + a * nt + b; };
    // (1) g d_T + d_S g = 0
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
            int eq = sys.new_eq(false);
            for (int r = 0; r < nt; ++r)
                if (dt.get(r, j)) sys.add(eq, G(i, r));
            for (int c : ds.row(i).support()) sys.add(eq, G(c, j));
        }
    // (2) g f + d_S k + k d_S = I
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            int eq = sys.new_eq(i == j);
            for (int r = 0; r < nt; ++r)
                if (f.f.get(r, j)) sys.add(eq, G(i, r));
            for (int c : ds.row(i).support()) sys.add(eq, K(c, j));
            for (int r = 0; r < ns; ++r)
                if (ds.get(r, j)) sys.add(eq, K(i, r));
        }
    // (3) f g + d_T k2 + k2 d_T = I
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nt; ++j) {
            int eq = sys.new_eq(i == j);
            for (int r = 0; r < ns; ++r)
                if (f.f.get(i, r)) sys.add(eq, G(r, j));
            for (int c : dt.row(i).support()) sys.add(eq, K2(c, j));
            for (int r = 0; r < nt; ++r)
                if (dt.get(r, j)) sys.add(eq, K2(i, r));
        }
    auto x = sys.solve_system();
    if (!x) throw NoHomotopyInverse("map has no homotopy inverse (not a quasi-isomorphism)");
    HomotopyEquivalence out{BitMatrix(ns, nt), BitMatrix(ns, ns), BitMatrix(nt, nt)};
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < nt; ++b)
            if (x->get(G(a, b))) out.g.set(a, b);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b)
            if (x->get(K(a, b))) out.k.set(a, b);
    for (int a = 0; a < nt; ++a)
        for (int b = 0; b < nt; ++b)
            if (x->get(K2(a, b))) out.k2.set(a, b);
    return out;
}

} // namespace homcob
