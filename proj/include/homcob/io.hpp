#pragma once

// Line-oriented text format for every domain object, with a total parser
// (every input either parses or raises a located ParseError) and a
// deterministic canonical serializer (idempotent round-trip).
//
// Grammar sketch (comments with '#', blank lines ignored):
//   complex NAME dim N            followed by N lines `d <bits>` (d of e_i)
//   map NAME source S target T    followed by `f <bits>` lines (f of e_i)
//   category NAME objects (a b)   `dim a b N` and `mu k (o..) (b..) -> bits`
//   extendedmap NAME source A target B   `obj a -> b`, `f k (o..) (b..) -> bits`
//   module NAME base CAT          `space a N`, `mu k (o..) (b..) -> bits`
//   morphism NAME source M target M2     `nu k (o..) (b..) -> bits`
//   conedecomp NAME pieces (X1 ..)       `u i <bits>` columns of u_i
//   tsmorphism NAME               blocks: `summand SRC pieces (X..)`,
//                                 `phi <bits>` lines, `u i <bits>` lines
//   snake NAME base C l N
//   cobordism NAME category CAT positive L negative (L1 ..)
//                                 `phi j k (o..) (b..) -> bits`, `phiv k ...`
//   k0 NAME objects (a b)         `triangle X Y Z`
//   presentation NAME generators (a b)   `relation <bits>`
// Basis indices in data lines are 1-based.

#include <map>

#include "cobordism.hpp"
#include "k_theory.hpp"

namespace homcob {

struct ComplexSection {
    std::string name;
    int dim = 0;
    BitMatrix d;  // validated (d*d = 0) only when complex() is called
    ChainComplex complex() const { return ChainComplex(dim, d); }
};

struct MapSection {
    std::string name, src, tgt;
    BitMatrix f;
};

struct CategorySection {
    std::string name;
    AInfCategory cat;
};

struct FunctorSection {
    std::string name, src, tgt;
    ExtendedMap f;
};

struct ModuleSection {
    std::string name, base;
    AInfModule m;
};

struct MorphismSection {
    std::string name, src, tgt;
    ModuleMorphism nu;
};

struct DecompSection {
    std::string name;
    std::vector<std::string> pieces;
    ConeDecomposition eta;
};

struct TsSection {
    std::string name;
    struct Block {
        std::string src;
        std::vector<std::string> pieces;
    };
    std::vector<Block> blocks;
    TSMorphism m;
};

struct SnakeSection {
    std::string name, base;
    int l = 3;
    SnakeComplex s;
};

struct CobSection {
    std::string name, cat, positive;
    std::vector<std::string> negatives;
    CobordismDatum v;
};

struct K0Section {
    std::string name;
    std::vector<TriangleSpec> triangles;
    K0Presentation p;
};

struct PresSection {
    std::string name;
    GroupPresentation p;
};

struct ParsedFile {
    std::map<std::string, ComplexSection> complexes;
    std::map<std::string, MapSection> maps;
    std::map<std::string, CategorySection> categories;
    std::map<std::string, FunctorSection> functors;
    std::map<std::string, ModuleSection> modules;
    std::map<std::string, MorphismSection> morphisms;
    std::map<std::string, DecompSection> decomps;
    std::map<std::string, TsSection> ts;
    std::map<std::string, SnakeSection> snakes;
    std::map<std::string, CobSection> cobordisms;
    std::map<std::string, K0Section> k0s;
    std::map<std::string, PresSection> presentations;

    // Sections in order of appearance, as (kind, name).
    std::vector<std::pair<std::string, std::string>> order;

    // The kind the file is "about": cobordism > tsmorphism > snake >
    // conedecomp > morphism > module > extendedmap > category > k0 >
    // presentation > map > complex.
    std::string principal_kind() const;
};

struct ParseOptions {
    int arity_cap = kDefaultArityCap;
};

ParsedFile parse_file(const std::string& text, const ParseOptions& opt = {});

// Canonical form: sections sorted by (kind, name); table lines sorted
// lexicographically; zero entries pruned.  serialize(parse(s)) is a fixed
// point of parse-then-serialize.
std::string serialize(const ParsedFile& f);

} // namespace homcob
