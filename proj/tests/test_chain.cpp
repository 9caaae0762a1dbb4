#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "homcob/chain.hpp"

using namespace homcob;

namespace {

ChainComplex two_dim_acyclic() {  // d(e2) = e1
    BitMatrix d(2, 2);
    d.set(0, 1);
    return ChainComplex(2, d);
}

} // namespace

TEST_CASE("complex construction validates d^2") {
    BitMatrix bad(2, 2);
    bad.set(0, 1);
    bad.set(1, 0);  // d^2 = I
    CHECK_THROWS_AS(ChainComplex(2, bad), InvalidComplex);
    CHECK_NOTHROW(two_dim_acyclic());
}

TEST_CASE("homology ranks") {
    CHECK(homology(ChainComplex(2, BitMatrix(2, 2))).rank == 2);
    CHECK(homology(two_dim_acyclic()).rank == 0);

    // dim 3, d(e2) = e1, d(e3) = 0: ker = <e1, e3>, im = <e1>.
    BitMatrix d(3, 3);
    d.set(0, 1);
    CHECK(homology(ChainComplex(3, d)).rank == 1);
}

TEST_CASE("rank-nullity for random complexes") {
    gen::Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        ChainComplex c = gen::random_complex(1 + rng() % 6, rng);
        CHECK(homology(c).rank == c.dim - 2 * rank(c.d));
    }
}

TEST_CASE("homology data is coherent") {
    gen::Rng rng(37);
    for (int t = 0; t < 50; ++t) {
        ChainComplex c = gen::random_complex(1 + rng() % 5, rng);
        HomologyData h = homology(c);
        for (const BitVec& v : h.cycle_basis) CHECK(c.d.apply(v).is_zero());
        for (const BitVec& v : h.boundary_basis) {
            CHECK(c.d.apply(v).is_zero());
            CHECK(solve(c.d, v).has_value());
        }
        CHECK((int)h.representatives.size() == h.rank);
        for (int i = 0; i < h.rank; ++i)
            CHECK(h.coords(h.representatives[i]) == BitVec::unit(h.rank, i));
        // boundaries have zero class
        for (const BitVec& v : h.boundary_basis) CHECK(h.coords(v).is_zero());
    }
}

TEST_CASE("coords rejects non-cycles") {
    ChainComplex c = two_dim_acyclic();
    CHECK_THROWS_AS(homology(c).coords(BitVec::unit(2, 1)), NotACycle);
}

TEST_CASE("induced maps") {
    ChainComplex z2(2, BitMatrix(2, 2));
    CHECK(induced_on_homology(ChainMap::identity(z2)) == BitMatrix::identity(2));
    CHECK(induced_on_homology(ChainMap::zero(z2, z2)) == BitMatrix(2, 2));

    // e1 -> e1, e2 -> 0 into (dim 2, d(e2)=e1): zero on H (target H = 0).
    BitMatrix fm(2, 2);
    fm.set(0, 0);
    ChainMap f(z2, two_dim_acyclic(), fm);
    CHECK(induced_on_homology(f).rows() == 0);
    CHECK(!is_quasi_iso(f));
    CHECK(is_quasi_iso(ChainMap::identity(z2)));
}

TEST_CASE("H respects composition") {
    gen::Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        ChainComplex a = gen::random_complex(1 + rng() % 4, rng);
        ChainComplex b = gen::random_complex(1 + rng() % 4, rng);
        ChainComplex c = gen::random_complex(1 + rng() % 4, rng);
        ChainMap f(a, b, gen::random_chain_map(a, b, rng));
        ChainMap g(b, c, gen::random_chain_map(b, c, rng));
        CHECK(induced_on_homology(compose(g, f)) ==
              induced_on_homology(g) * induced_on_homology(f));
    }
}

TEST_CASE("cone examples") {
    ChainComplex pt(1, BitMatrix(1, 1));
    // cone of the identity is acyclic
    auto c1 = cone_of_chain_map(ChainMap::identity(pt));
    CHECK(homology(c1.cone).rank == 0);
    // cone of zero is the direct sum
    auto c2 = cone_of_chain_map(ChainMap::zero(pt, pt));
    CHECK(homology(c2.cone).rank == 2);
    // f: e -> e1 into (dim 2, d(e2)=e1): cone homology rank 1
    BitMatrix f(2, 1);
    f.set(0, 0);
    auto c3 = cone_of_chain_map(ChainMap(pt, two_dim_acyclic(), f));
    CHECK(homology(c3.cone).rank == 1);
}

TEST_CASE("cone rank law and exactness") {
    gen::Rng rng(43);
    for (int t = 0; t < 100; ++t) {
        ChainComplex a = gen::random_complex(1 + rng() % 5, rng);
        ChainComplex b = gen::random_complex(1 + rng() % 5, rng);
        ChainMap f(a, b, gen::random_chain_map(a, b, rng));
        auto cd = cone_of_chain_map(f);
        int hsrc = homology(a).rank, htgt = homology(b).rank;
        int hf = rank(induced_on_homology(f));
        CHECK(homology(cd.cone).rank == hsrc + htgt - 2 * hf);
        CHECK(cd.inclusion.is_chain_map());
        CHECK(cd.projection.is_chain_map());
        // inclusion then projection vanishes
        CHECK(compose(cd.projection, cd.inclusion).f.is_zero());
    }
}

TEST_CASE("null homotopy solver") {
    gen::Rng rng(47);
    for (int t = 0; t < 40; ++t) {
        ChainComplex a = gen::random_complex(1 + rng() % 4, rng);
        ChainComplex b = gen::random_complex(1 + rng() % 4, rng);
        // d h + h d is always null-homotopic
        BitMatrix h = gen::random_matrix(b.dim, a.dim, rng);
        BitMatrix dmap = b.d * h + h * a.d;
        auto sol = null_homotopy(a, b, dmap);
        REQUIRE(sol.has_value());
        CHECK(b.d * *sol + *sol * a.d == dmap);
    }
    // identity on a complex with homology is not null-homotopic
    ChainComplex z(1, BitMatrix(1, 1));
    CHECK(!null_homotopic(ChainMap::identity(z)));
}

TEST_CASE("homotopy inverse") {
    gen::Rng rng(53);
    for (int t = 0; t < 30; ++t) {
        ChainComplex a = gen::random_complex(1 + rng() % 4, rng);
        // inflate by an acyclic summand; the inclusion is a quasi-iso
        ChainComplex b = direct_sum(a, two_dim_acyclic());
        BitMatrix inc(b.dim, a.dim);
        for (int i = 0; i < a.dim; ++i) inc.set(i, i);
        ChainMap f(a, b, inc);
        REQUIRE(is_quasi_iso(f));
        HomotopyEquivalence he = homotopy_inverse(f);
        ChainMap g(b, a, he.g);
        CHECK(g.is_chain_map());
        CHECK(he.g * f.f + BitMatrix::identity(a.dim) == a.d * he.k + he.k * a.d);
        CHECK(f.f * he.g + BitMatrix::identity(b.dim) == b.d * he.k2 + he.k2 * b.d);
    }
    ChainComplex z(1, BitMatrix(1, 1));
    CHECK_THROWS_AS(homotopy_inverse(ChainMap::zero(z, z)), NoHomotopyInverse);
}

TEST_CASE("determinism") {
    gen::Rng r1(59), r2(59);
    ChainComplex a = gen::random_complex(5, r1);
    ChainComplex b = gen::random_complex(5, r2);
    CHECK(a == b);
    HomologyData ha = homology(a), hb = homology(b);
    CHECK(ha.cycle_basis == hb.cycle_basis);
    CHECK(ha.boundary_basis == hb.boundary_basis);
    CHECK(ha.representatives == hb.representatives);
}
