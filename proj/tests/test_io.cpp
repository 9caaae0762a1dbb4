#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gen.hpp"
#include "homcob/io.hpp"

using namespace homcob;

namespace {

// valid sample files covering every section kind
const std::vector<std::string> kCorpus = {
    "complex C dim 2\nd 00\nd 10\n",
    "complex Z dim 0\n",
    "# comment only file\ncomplex P dim 1\nd 0  # trailing comment\n",
    "complex A dim 1\nd 0\ncomplex B dim 2\nd 00\nd 10\nmap F source A target B\nf 10\n",
    "complex B dim 2\nd 00\nd 10\nmap G source B target B\nf 00\nf 01\n",
    "category Alg objects ( X )\ndim X X 1\nmu 2 ( X X X ) ( 1 1 ) -> 1\n",
    "category Two objects ( X Y )\ndim X Y 2\ndim X X 1\n"
    "mu 1 ( X Y ) ( 2 ) -> 10\nmu 2 ( X X Y ) ( 1 1 ) -> 01\n",
    "category Alg objects ( X )\ndim X X 1\nmu 2 ( X X X ) ( 1 1 ) -> 1\n"
    "extendedmap Id source Alg target Alg\nobj X -> X\nf 1 ( X X ) ( 1 ) -> 1\n",
    "category Alg objects ( X )\ndim X X 1\n"
    "module M base Alg\nspace X 2\nmu 1 ( X ) ( 2 ) -> 10\n",
    "category Alg objects ( X )\ndim X X 1\n"
    "module M base Alg\nspace X 2\nmu 1 ( X ) ( 2 ) -> 10\n"
    "morphism N source M target M\nnu 1 ( X ) ( 1 ) -> 10\n",
    "complex P dim 1\nd 0\ncomplex Q dim 1\nd 0\n"
    "conedecomp D pieces ( P Q )\nu 2 1\n",
    "complex P dim 1\nd 0\ntsmorphism T\nsummand P pieces ( P )\nphi 1\n",
    "complex P dim 1\nd 0\ncomplex Q dim 1\nd 0\n"
    "tsmorphism T\nsummand P pieces ( P )\nphi 1\nsummand Q pieces ( Q )\nphi 1\n",
    "complex B dim 2\nd 00\nd 10\nsnake S base B l 5\n",
    "category Amb objects ( L M )\ndim L L 1\ndim L M 1\ndim M M 1\n"
    "cobordism V category Amb positive L negative ( M )\nphiv 1 ( L ) ( 1 ) -> 1\n",
    "category Amb objects ( L M N )\ndim L L 1\ndim L M 1\ndim L N 1\ndim M M 1\n"
    "cobordism W category Amb positive L negative ( M N )\n"
    "phi 2 1 ( L ) ( 1 ) -> 1\nphiv 1 ( L ) ( 1 ) -> 11\n",
    "k0 K objects ( X Y Z )\ntriangle X Y Z\ntriangle Z Z Z\n",
    "presentation G generators ( a b c )\nrelation 110\nrelation 011\n",
    "presentation E generators ( )\nrelation -\n",
};

} // namespace

TEST_CASE("column convention of the complex format") {
    ParsedFile f = parse_file("complex C dim 2\nd 00\nd 10\n");
    const BitMatrix& d = f.complexes.at("C").d;
    CHECK(d.get(0, 1));  // d(e2) = e1
    CHECK(!d.get(0, 0));
    CHECK(!d.get(1, 0));
    CHECK(!d.get(1, 1));
    CHECK(f.complexes.at("C").complex().dim == 2);
}

TEST_CASE("round-trip canonicalization is idempotent on the corpus") {
    for (const std::string& text : kCorpus) {
        ParsedFile f = parse_file(text);
        std::string canon = serialize(f);
        ParsedFile f2 = parse_file(canon);
        CHECK(serialize(f2) == canon);
    }
}

TEST_CASE("principal kind precedence") {
    CHECK(parse_file(kCorpus[0]).principal_kind() == "complex");
    CHECK(parse_file(kCorpus[3]).principal_kind() == "map");
    CHECK(parse_file(kCorpus[9]).principal_kind() == "morphism");
    CHECK(parse_file(kCorpus[14]).principal_kind() == "cobordism");
    CHECK(parse_file("").principal_kind() == "");
}

TEST_CASE("duplicate table lines cancel over GF(2)") {
    ParsedFile f = parse_file(
        "category Alg objects ( X )\ndim X X 1\n"
        "mu 2 ( X X X ) ( 1 1 ) -> 1\nmu 2 ( X X X ) ( 1 1 ) -> 1\n");
    CHECK(f.categories.at("Alg").cat.mu.comp.empty());
}

TEST_CASE("semantic structures come out usable") {
    ParsedFile f = parse_file(kCorpus[15]);
    const CobordismDatum& w = f.cobordisms.at("W").v;
    CHECK(w.negative_ends.size() == 2);
    CHECK(w.phis.size() == 1);
    REQUIRE(w.phi_v.has_value());

    // V has phi_V = identity at its positive end, so it assembles
    ParsedFile fv = parse_file(kCorpus[14]);
    const CobordismDatum& v = fv.cobordisms.at("V").v;
    TSMorphism phi = assemble_functor_value(v, v.positive_end);
    CHECK(check_ts_morphism(phi).pass());

    ParsedFile g = parse_file(kCorpus[12]);
    CHECK(check_ts_morphism(g.ts.at("T").m).pass());
    CHECK(g.ts.at("T").m.summands.size() == 2);

    ParsedFile s = parse_file(kCorpus[13]);
    CHECK(s.snakes.at("S").s.total.dim == 10);
}

TEST_CASE("malformed inputs raise located parse errors") {
    auto bad = [](const std::string& text, int line) {
        try {
            parse_file(text);
            FAIL("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
            CHECK(e.col >= 1);
        }
    };
    bad("complex C dim x\n", 1);
    bad("complex C dim 1\n", 1);                    // missing d line
    bad("complex C dim 1\nd 0\nd 0\n", 3);          // too many d lines
    bad("complex C dim 2\nd 0\n", 2);               // wrong width
    bad("complex C dim 2\nd 02\nd 00\n", 2);        // non-binary digit
    bad("d 0\n", 1);                                // data before any header
    bad("complex C dim 1\nd 0\ncomplex C dim 1\nd 0\n", 3);  // duplicate
    bad("frobnicate Z\n", 1);                       // unknown kind
    bad("map F source A target B\n", 1);            // unknown complex
    // d*d != 0 is stored lazily and only fails at a use site
    bad("complex C dim 1\nd 1\nsnake S base C l 3\n", 3);
    bad("complex B dim 2\nd 00\nd 10\nsnake S base B l 4\n", 4);  // even l
    bad("category A objects ( X )\ndim X Y 1\n", 2);  // unknown object
    bad("category A objects ( X )\ndim X X 1\nmu 2 ( X X X ) ( 1 3 ) -> 1\n", 3);
    bad("category A objects ( X )\ndim X X 1\nmu 0 ( X ) ( ) -> 1\n", 3);
    bad("k0 K objects ( X )\ntriangle X X W\n", 1);
    bad("presentation G generators ( a )\nrelation 01\n", 2);
    // tsmorphism whose phi is not a quasi-isomorphism
    bad("complex P dim 1\nd 0\ntsmorphism T\nsummand P pieces ( P )\nphi 0\n", 3);
}

TEST_CASE("complex section with invalid differential is stored unvalidated") {
    ParsedFile f = parse_file("complex C dim 1\nd 1\n");
    CHECK(f.complexes.at("C").d.get(0, 0));
    CHECK_THROWS_AS(f.complexes.at("C").complex(), InvalidComplex);
}

TEST_CASE("mini fuzz: parse is total") {
    gen::Rng rng(601);
    const std::string alphabet = "abcXYZ01() ->\n\t#dimcomplexmapsnake";
    for (int t = 0; t < 3000; ++t) {
        std::string s;
        int len = (int)(rng() % 80);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try {
            parse_file(s);
        } catch (const ParseError&) {
        }
    }
    // mutations of valid corpus files
    for (int t = 0; t < 3000; ++t) {
        std::string s = kCorpus[rng() % kCorpus.size()];
        int muts = 1 + (int)(rng() % 4);
        for (int i = 0; i < muts && !s.empty(); ++i) {
            size_t pos = rng() % s.size();
            switch (rng() % 3) {
                case 0: s[pos] = (char)(32 + rng() % 95); break;
                case 1: s.erase(pos, 1); break;
                default: s.insert(pos, 1, (char)(32 + rng() % 95)); break;
            }
        }
        try {
            parse_file(s);
        } catch (const ParseError&) {
        }
    }
}
