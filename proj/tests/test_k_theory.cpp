#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobgen.hpp"
#include "homcob/k_theory.hpp"

using namespace homcob;

namespace {

BitVec bits(const std::string& s) {
    BitVec v((int)s.size());
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') v.set((int)i);
    return v;
}

} // namespace

TEST_CASE("quotient rank: frozen example") {
    GroupPresentation p;
    p.generators = {"a", "b", "c"};
    p.relations = {bits("110"), bits("011")};
    CHECK(quotient_rank(p) == 1);
    p.relations.clear();
    CHECK(quotient_rank(p) == 3);
    p.relations = {bits("100"), bits("010"), bits("001")};
    CHECK(quotient_rank(p) == 0);
}

TEST_CASE("k0 from triangles") {
    K0Presentation p = k0_from_triangles({"X", "Y", "Z"}, {{"X", "Y", "Z"}});
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0] == bits("111"));
    CHECK(k0_rank(p) == 2);

    // degenerate triangle (X, X, Z): over GF(2) the relation collapses to [Z]
    K0Presentation q = k0_from_triangles({"X", "Z"}, {{"X", "X", "Z"}});
    REQUIRE(q.relations.size() == 1);
    CHECK(q.relations[0] == bits("01"));
    CHECK(k0_rank(q) == 1);

    CHECK(p.object("Y") == 1);
    CHECK_THROWS_AS(p.object("W"), UnknownObject);
    CHECK_THROWS_AS(k0_from_triangles({"X"}, {{"X", "X", "W"}}), UnknownObject);
}

TEST_CASE("relation span membership") {
    std::vector<BitVec> rels = {bits("110"), bits("011")};
    CHECK(in_relation_span(rels, bits("000")));
    CHECK(in_relation_span(rels, bits("110")));
    CHECK(in_relation_span(rels, bits("101")));  // sum of the two
    CHECK(!in_relation_span(rels, bits("100")));
    CHECK(!in_relation_span({}, bits("1")));
    CHECK(in_relation_span({}, bits("0")));
}

TEST_CASE("theta well-definedness") {
    // cobordism group on {A, B} with A + B = 0; K0 on {X, Y, Z} with
    // [X] + [Y] + [Z] = 0 and [Z] = 0
    GroupPresentation g{{"A", "B"}, {bits("11")}};
    K0Presentation k0 = k0_from_triangles({"X", "Y", "Z"},
                                          {{"X", "Y", "Z"}, {"Z", "Z", "Z"}});
    CHECK(theta_well_defined(g, k0, {0, 1}).pass());  // A->X, B->Y: X+Y in span
    CHECK(theta_well_defined(g, k0, {0, 0}).pass());  // images cancel over GF(2)
    GroupPresentation g2{{"A", "B"}, {bits("10")}};    // [A] = 0
    CHECK(!theta_well_defined(g2, k0, {0, 1}).pass()); // [X] not in span
    CHECK(theta_well_defined(g2, k0, {2, 1}).pass());  // [Z] is in span
    // wrong-size object map
    CHECK(!theta_well_defined(g, k0, {0}).pass());
}

TEST_CASE("null cobordism verification") {
    gen::Rng rng(501);
    for (int m : {1, 2, 3}) {
        auto v = gen::make_cobordism(m, 0, rng, /*null_top=*/true);
        std::vector<std::string> objs;
        for (Obj l : v->negative_ends) objs.push_back(v->amb.names[l]);
        K0Presentation k0;
        k0.objects = objs;
        Report rep = verify_null_cobordism(*v, k0);
        CHECK(rep.pass());
    }
}

TEST_CASE("null cobordism rejects non-acyclic towers") {
    gen::Rng rng(503);
    int tried = 0;
    for (int t = 0; t < 10 && tried < 3; ++t) {
        auto v = gen::make_cobordism(2, 0, rng, /*null_top=*/false);
        IteratedCones ic = build_iterated_cones(*v);
        bool acyclic = true;
        for (Obj n = 0; n < v->amb.nobj; ++n)
            acyclic = acyclic && homology(ic.modules.back().complex_at(n)).rank == 0;
        if (acyclic) continue;  // the random tower happened to be acyclic
        K0Presentation k0;
        for (Obj l : v->negative_ends) k0.objects.push_back(v->amb.names[l]);
        CHECK_THROWS_AS(verify_null_cobordism(*v, k0), NotAcyclic);
        ++tried;
    }
    CHECK(tried > 0);
}

TEST_CASE("null cobordism requires declared end objects") {
    gen::Rng rng(509);
    auto v = gen::make_cobordism(1, 0, rng, /*null_top=*/true);
    K0Presentation k0;  // no objects at all
    CHECK_THROWS_AS(verify_null_cobordism(*v, k0), UnknownObject);
}
