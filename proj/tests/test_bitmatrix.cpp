#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "homcob/bitmatrix.hpp"

using namespace homcob;

TEST_CASE("rank basics") {
    CHECK(rank(BitMatrix(3, 3)) == 0);
    CHECK(rank(BitMatrix::identity(4)) == 4);

    // rows {110, 011, 101}: third row is the sum of the first two.
    BitMatrix m(3, 3);
    m.set(0, 0); m.set(0, 1);
    m.set(1, 1); m.set(1, 2);
    m.set(2, 0); m.set(2, 2);
    CHECK(rank(m) == 2);
}

TEST_CASE("rref is idempotent and deterministic") {
    gen::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        BitMatrix m = gen::random_matrix(5, 7, rng);
        BitMatrix r = rref(m);
        CHECK(rref(r) == r);
        CHECK(rref(m) == r);  // identical inputs, identical output
        CHECK(rank(r) == rank(m));
    }
}

TEST_CASE("kernel basis spans the kernel") {
    gen::Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        BitMatrix m = gen::random_matrix(4, 6, rng);
        auto ker = kernel_basis(m);
        CHECK((int)ker.size() == 6 - rank(m));
        for (const BitVec& v : ker) CHECK(m.apply(v).is_zero());
        // vectors independent
        BitMatrix k((int)ker.size(), 6);
        for (size_t i = 0; i < ker.size(); ++i) k.set_row((int)i, ker[i]);
        CHECK(rank(k) == (int)ker.size());
    }
}

TEST_CASE("solve finds solutions exactly when consistent") {
    gen::Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        BitMatrix a = gen::random_matrix(5, 4, rng);
        BitVec x0(4);
        for (int i = 0; i < 4; ++i) if (rng() & 1) x0.set(i);
        BitVec b = a.apply(x0);
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(a.apply(*x) == b);
        // a vector outside the column space must be rejected
        BitVec bad = b;
        auto cs = column_space_basis(a);
        if ((int)cs.size() < 5) {
            // find a unit vector not in the span
            for (int i = 0; i < 5; ++i) {
                BitVec probe = b ^ BitVec::unit(5, i);
                auto y = solve(a, probe);
                if (!y) { bad = probe; break; }
                CHECK(a.apply(*y) == probe);
            }
        }
        (void)bad;
    }
}

TEST_CASE("inverse") {
    gen::Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        BitMatrix m = gen::random_invertible(5, rng);
        auto inv = inverse(m);
        REQUIRE(inv.has_value());
        CHECK(m * *inv == BitMatrix::identity(5));
        CHECK(*inv * m == BitMatrix::identity(5));
        CHECK(is_invertible(m));
    }
    BitMatrix sing(3, 3);
    sing.set(0, 0);
    CHECK(!inverse(sing).has_value());
    CHECK(!is_invertible(sing));
}

TEST_CASE("column space basis") {
    gen::Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        BitMatrix m = gen::random_matrix(5, 5, rng);
        auto cs = column_space_basis(m);
        CHECK((int)cs.size() == rank(m));
        for (const BitVec& v : cs) CHECK(solve(m, v).has_value());
    }
}

TEST_CASE("transpose and arithmetic") {
    gen::Rng rng(23);
    BitMatrix a = gen::random_matrix(3, 4, rng);
    BitMatrix b = gen::random_matrix(4, 2, rng);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a + a == BitMatrix(3, 4));
    CHECK_THROWS_AS(a * a, DimensionError);
}
