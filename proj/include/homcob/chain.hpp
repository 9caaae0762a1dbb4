#pragma once

// Ungraded chain complexes over GF(2): homology with deterministic bases,
// induced maps, quasi-isomorphism tests, mapping cones, null-homotopy and
// homotopy-inverse solvers.

#include <optional>
#include <vector>

#include "bitmatrix.hpp"

namespace homcob {

struct ChainComplex {
    int dim = 0;
    BitMatrix d;  // dim x dim, d*d = 0

    ChainComplex() : d(0, 0) {}
    ChainComplex(int dim_, BitMatrix d_);

    static ChainComplex zero() { return ChainComplex(); }

    bool operator==(const ChainComplex& o) const { return dim == o.dim && d == o.d; }
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }
};

struct ChainMap {
    ChainComplex source;
    ChainComplex target;
    BitMatrix f;  // target.dim x source.dim

    ChainMap() = default;
    ChainMap(ChainComplex s, ChainComplex t, BitMatrix f_);

    bool is_chain_map() const { return f * source.d == target.d * f; }
    void require_chain_map() const;

    static ChainMap identity(const ChainComplex& c) {
        return ChainMap(c, c, BitMatrix::identity(c.dim));
    }
    static ChainMap zero(const ChainComplex& s, const ChainComplex& t) {
        return ChainMap(s, t, BitMatrix(t.dim, s.dim));
    }
};

ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f

struct HomologyData {
    int rank = 0;
    std::vector<BitVec> cycle_basis;       // basis of ker d
    std::vector<BitVec> boundary_basis;    // basis of im d
    std::vector<BitVec> representatives;   // cycles completing boundaries to ker d

    // Coordinates of a cycle in the representative basis (throws NotACycle).
    BitVec coords(const BitVec& v) const;

    BitVec rep_combination(const BitVec& coords) const;

private:
    friend HomologyData homology(const ChainComplex& c);
    BitMatrix coord_matrix_;  // columns: boundary basis then representatives
    int dim_ = 0;
    BitMatrix d_;
};

HomologyData homology(const ChainComplex& c);

BitMatrix induced_on_homology(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);

struct ConeData {
    ChainComplex cone;     // basis: source ⊕ target
    ChainMap inclusion;    // target -> cone, b'' -> (0, b'')
    ChainMap projection;   // cone -> source, (b', b'') -> b'
};

// Cone(f) with d(b', b'') = (d b', d b'' + f b').
ConeData cone_of_chain_map(const ChainMap& f);

// Direct sum of complexes (block diagonal differential).
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

// Solve d_T H + H d_S = D for H; nullopt when D is not null-homotopic.
std::optional<BitMatrix> null_homotopy(const ChainComplex& s, const ChainComplex& t,
                                       const BitMatrix& dmap);
bool null_homotopic(const ChainMap& f);

struct HomotopyEquivalence {
    BitMatrix g;   // target -> source chain map
    BitMatrix k;   // source -> source: g f + id = d k + k d
    BitMatrix k2;  // target -> target: f g + id = d k2 + k2 d
};

// Homotopy inverse of a quasi-isomorphism (throws NoHomotopyInverse when f
// is not a quasi-iso).  One joint linear solve over GF(2); deterministic.
HomotopyEquivalence homotopy_inverse(const ChainMap& f);

} // namespace homcob
