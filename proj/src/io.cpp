#include "homcob/io.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace homcob {

namespace {

struct Token {
    std::string s;
    int col = 1;
};

struct Line {
    int no = 0;
    std::vector<Token> toks;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    int lineno = 1;
    size_t i = 0;
    while (i <= text.size()) {
        size_t end = text.find('\n', i);
        if (end == std::string::npos) end = text.size();
        Line ln;
        ln.no = lineno;
        size_t j = i;
        while (j < end) {
            char c = text[j];
            if (c == '#') break;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++j;
                continue;
            }
            int col = (int)(j - i) + 1;
            if (c == '(' || c == ')') {
                ln.toks.push_back({std::string(1, c), col});
                ++j;
                continue;
            }
            size_t k = j;
            while (k < end && text[k] != ' ' && text[k] != '\t' && text[k] != '\r' &&
                   text[k] != '(' && text[k] != ')' && text[k] != '#')
                ++k;
            ln.toks.push_back({text.substr(j, k - j), col});
            j = k;
        }
        if (!ln.toks.empty()) out.push_back(std::move(ln));
        if (end == text.size()) break;
        i = end + 1;
        ++lineno;
    }
    return out;
}

const std::vector<std::string> kKinds = {
    "complex", "map",  "category",  "extendedmap", "module",   "morphism",
    "conedecomp", "tsmorphism", "snake", "cobordism", "k0", "presentation"};

bool is_kind(const std::string& s) {
    return std::find(kKinds.begin(), kKinds.end(), s) != kKinds.end();
}

[[noreturn]] void fail(const std::string& msg, const Line& ln, int col = 1) {
    throw ParseError(msg, ln.no, col);
}

// Cursor over one line's tokens.
struct Cur {
    const Line* ln;
    size_t i = 0;

    bool done() const { return i >= ln->toks.size(); }
    const Token& peek() const {
        if (done()) throw ParseError("unexpected end of line", ln->no, 1);
        return ln->toks[i];
    }
    Token next() {
        const Token& t = peek();
        ++i;
        return t;
    }
    std::string word(const char* what) {
        const Token& t = peek();
        if (t.s == "(" || t.s == ")")
            throw ParseError(std::string("expected ") + what, ln->no, t.col);
        ++i;
        return t.s;
    }
    void lit(const std::string& s) {
        const Token& t = peek();
        if (t.s != s) throw ParseError("expected '" + s + "'", ln->no, t.col);
        ++i;
    }
    int num(const char* what) {
        const Token& t = peek();
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t.s, &pos);
        } catch (...) {
            throw ParseError(std::string("expected number for ") + what, ln->no, t.col);
        }
        if (pos != t.s.size() || v < 0)
            throw ParseError(std::string("expected number for ") + what, ln->no, t.col);
        ++i;
        return v;
    }
    std::vector<std::string> list(const char* what) {
        lit("(");
        std::vector<std::string> out;
        while (peek().s != ")") out.push_back(word(what));
        lit(")");
        return out;
    }
    void end() {
        if (!done())
            throw ParseError("trailing tokens", ln->no, peek().s.empty() ? 1 : peek().col);
    }
};

BitVec parse_bits(const Token& t, int len, const Line& ln) {
    if (len == 0 && t.s == "-") return BitVec(0);
    if ((int)t.s.size() != len)
        throw ParseError("bit string of length " + std::to_string(len) + " expected",
                         ln.no, t.col);
    BitVec v(len);
    for (int i = 0; i < len; ++i) {
        if (t.s[i] == '1')
            v.set(i);
        else if (t.s[i] != '0')
            throw ParseError("bit string may contain only 0/1", ln.no, t.col + i);
    }
    return v;
}

Obj object_of(const AInfCategory& cat, const std::string& name, const Line& ln, int col) {
    for (int i = 0; i < cat.nobj; ++i)
        if (cat.names[i] == name) return i;
    throw ParseError("unknown object '" + name + "'", ln.no, col);
}

// One table line `k ( o.. ) ( b.. ) -> bits`, keys of length k + key_extra.
struct TableLine {
    Key key;
    std::vector<int> idx;  // 0-based basis indices
    Token bits;
};

TableLine parse_table(Cur& c, const AInfCategory& keycat, int key_extra, const Line& ln) {
    int k = c.num("arity");
    if (k < 1) throw ParseError("arity must be >= 1", ln.no, 1);
    auto onames = c.list("object name");
    if ((int)onames.size() != k + key_extra)
        fail("object tuple must have " + std::to_string(k + key_extra) + " entries", ln,
             1);
    TableLine t;
    for (const auto& n : onames) t.key.push_back(object_of(keycat, n, ln, 1));
    auto bs = c.list("basis index");
    if ((int)bs.size() != k) fail("need " + std::to_string(k) + " basis indices", ln, 1);
    for (const auto& b : bs) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(b, &pos);
        } catch (...) {
            fail("basis index expected", ln, 1);
        }
        if (pos != b.size() || v < 1) fail("basis indices are 1-based", ln, 1);
        t.idx.push_back(v - 1);
    }
    c.lit("->");
    t.bits = c.next();
    c.end();
    return t;
}

void add_component(ExtendedMap& m, const TableLine& t, const Line& ln) {
    auto dims = m.key_input_dims(t.key);
    for (size_t i = 0; i < dims.size(); ++i)
        if (t.idx[i] >= dims[i]) fail("basis index out of range", ln, t.bits.col);
    int out = m.out_dim(t.key.front(), t.key.back());
    m.accumulate(t.key, tuple_index(dims, t.idx), parse_bits(t.bits, out, ln));
}

void add_component(MixedExtendedMap& m, const TableLine& t, const Line& ln) {
    auto dims = m.key_input_dims(t.key);
    for (size_t i = 0; i < dims.size(); ++i)
        if (t.idx[i] >= dims[i]) fail("basis index out of range", ln, t.bits.col);
    int out = m.mod_out[t.key.front()];
    m.accumulate(t.key, tuple_index(dims, t.idx), parse_bits(t.bits, out, ln));
}

struct Section {
    Line header;
    std::vector<Line> data;
};

} // namespace

std::string ParsedFile::principal_kind() const {
    static const std::vector<std::string> prec = {
        "cobordism", "tsmorphism", "snake",  "conedecomp",   "morphism", "module",
        "extendedmap", "category", "k0", "presentation", "map", "complex"};
    for (const auto& k : prec)
        for (const auto& [kind, name] : order)
            if (kind == k) return k;
    return "";
}

ParsedFile parse_file(const std::string& text, const ParseOptions& opt) {
    ParsedFile pf;
    auto lines = tokenize(text);

    std::vector<Section> secs;
    for (auto& ln : lines) {
        if (is_kind(ln.toks[0].s)) {
            secs.push_back({ln, {}});
        } else {
            if (secs.empty()) fail("data line before any section header", ln, ln.toks[0].col);
            secs.back().data.push_back(ln);
        }
    }

    auto register_name = [&pf](const std::string& kind, const std::string& name,
                               const Line& ln) {
        for (const auto& [k, n] : pf.order)
            if (k == kind && n == name) fail("duplicate " + kind + " '" + name + "'", ln, 1);
        pf.order.push_back({kind, name});
    };

    auto get_complex = [&pf](const std::string& name, const Line& ln) -> ChainComplex {
        auto it = pf.complexes.find(name);
        if (it == pf.complexes.end()) fail("unknown complex '" + name + "'", ln, 1);
        return it->second.complex();
    };
    auto get_category = [&pf](const std::string& name, const Line& ln) -> AInfCategory& {
        auto it = pf.categories.find(name);
        if (it == pf.categories.end()) fail("unknown category '" + name + "'", ln, 1);
        return it->second.cat;
    };

    for (Section& sec : secs) {
        Cur h{&sec.header};
        std::string kind = h.next().s;

        // Domain failures raised while building section semantics (bad
        // differential, non-quasi-iso phi, ...) become located parse errors.
        try {

        if (kind == "complex") {
            ComplexSection s;
            s.name = h.word("name");
            h.lit("dim");
            s.dim = h.num("dimension");
            h.end();
            s.d = BitMatrix(s.dim, s.dim);
            int got = 0;
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("d");
                if (got >= s.dim) fail("too many differential lines", ln, 1);
                s.d.set_col(got++, parse_bits(c.next(), s.dim, ln));
                c.end();
            }
            if (got != s.dim) fail("expected " + std::to_string(s.dim) + " 'd' lines",
                                   sec.header, 1);
            register_name(kind, s.name, sec.header);
            pf.complexes[s.name] = std::move(s);

        } else if (kind == "map") {
            MapSection s;
            s.name = h.word("name");
            h.lit("source");
            s.src = h.word("complex name");
            h.lit("target");
            s.tgt = h.word("complex name");
            h.end();
            ChainComplex a = get_complex(s.src, sec.header);
            ChainComplex b = get_complex(s.tgt, sec.header);
            s.f = BitMatrix(b.dim, a.dim);
            int got = 0;
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("f");
                if (got >= a.dim) fail("too many map lines", ln, 1);
                s.f.set_col(got++, parse_bits(c.next(), b.dim, ln));
                c.end();
            }
            if (got != a.dim) fail("expected " + std::to_string(a.dim) + " 'f' lines",
                                   sec.header, 1);
            register_name(kind, s.name, sec.header);
            pf.maps[s.name] = std::move(s);

        } else if (kind == "category") {
            CategorySection s;
            s.name = h.word("name");
            h.lit("objects");
            auto names = h.list("object name");
            if (names.empty()) fail("category needs at least one object", sec.header, 1);
            h.end();
            AInfCategory& cat = s.cat;
            cat.names = names;
            cat.nobj = (int)names.size();
            cat.dims.assign(cat.nobj * cat.nobj, 0);
            cat.arity_cap = opt.arity_cap;
            for (const Line& ln : sec.data) {  // first pass: dims
                if (ln.toks[0].s != "dim") continue;
                Cur c{&ln};
                c.lit("dim");
                Obj a = object_of(cat, c.word("object"), ln, 1);
                Obj b = object_of(cat, c.word("object"), ln, 1);
                cat.dims[a * cat.nobj + b] = c.num("hom dimension");
                c.end();
            }
            cat.mu.nobj = cat.nobj;
            cat.mu.in_dims = cat.dims;
            cat.mu.out_dims = cat.dims;
            cat.mu.index_map.resize(cat.nobj);
            for (int i = 0; i < cat.nobj; ++i) cat.mu.index_map[i] = i;
            cat.mu.arity_cap = cat.arity_cap;
            for (const Line& ln : sec.data) {
                if (ln.toks[0].s == "dim") continue;
                Cur c{&ln};
                c.lit("mu");
                add_component(cat.mu, parse_table(c, cat, 1, ln), ln);
            }
            cat.mu.prune_zeros();
            register_name(kind, s.name, sec.header);
            pf.categories[s.name] = std::move(s);

        } else if (kind == "extendedmap") {
            FunctorSection s;
            s.name = h.word("name");
            h.lit("source");
            s.src = h.word("category name");
            h.lit("target");
            s.tgt = h.word("category name");
            h.end();
            AInfCategory& a = get_category(s.src, sec.header);
            AInfCategory& b = get_category(s.tgt, sec.header);
            s.f.nobj = a.nobj;
            s.f.in_dims = a.dims;
            s.f.arity_cap = opt.arity_cap;
            s.f.index_map.resize(a.nobj);
            for (int i = 0; i < a.nobj; ++i) s.f.index_map[i] = i < b.nobj ? i : 0;
            for (const Line& ln : sec.data) {  // first pass: object action
                if (ln.toks[0].s != "obj") continue;
                Cur c{&ln};
                c.lit("obj");
                Obj x = object_of(a, c.word("object"), ln, 1);
                c.lit("->");
                s.f.index_map[x] = object_of(b, c.word("object"), ln, 1);
                c.end();
            }
            s.f.out_dims.assign(a.nobj * a.nobj, 0);
            for (int x = 0; x < a.nobj; ++x)
                for (int y = 0; y < a.nobj; ++y)
                    s.f.out_dims[x * a.nobj + y] = b.dim(s.f.index_map[x], s.f.index_map[y]);
            for (const Line& ln : sec.data) {
                if (ln.toks[0].s == "obj") continue;
                Cur c{&ln};
                c.lit("f");
                add_component(s.f, parse_table(c, a, 1, ln), ln);
            }
            s.f.prune_zeros();
            register_name(kind, s.name, sec.header);
            pf.functors[s.name] = std::move(s);

        } else if (kind == "module") {
            ModuleSection s;
            s.name = h.word("name");
            h.lit("base");
            s.base = h.word("category name");
            h.end();
            AInfCategory& cat = get_category(s.base, sec.header);
            s.m.base = &cat;
            s.m.spaces.assign(cat.nobj, 0);
            for (const Line& ln : sec.data) {
                if (ln.toks[0].s != "space") continue;
                Cur c{&ln};
                c.lit("space");
                Obj a = object_of(cat, c.word("object"), ln, 1);
                s.m.spaces[a] = c.num("space dimension");
                c.end();
            }
            s.m.action.nobj = cat.nobj;
            s.m.action.cat_dims = cat.dims;
            s.m.action.mod_in = s.m.spaces;
            s.m.action.mod_out = s.m.spaces;
            s.m.action.arity_cap = opt.arity_cap;
            for (const Line& ln : sec.data) {
                if (ln.toks[0].s == "space") continue;
                Cur c{&ln};
                c.lit("mu");
                add_component(s.m.action, parse_table(c, cat, 0, ln), ln);
            }
            s.m.action.prune_zeros();
            register_name(kind, s.name, sec.header);
            pf.modules[s.name] = std::move(s);

        } else if (kind == "morphism") {
            MorphismSection s;
            s.name = h.word("name");
            h.lit("source");
            s.src = h.word("module name");
            h.lit("target");
            s.tgt = h.word("module name");
            h.end();
            auto si = pf.modules.find(s.src);
            auto ti = pf.modules.find(s.tgt);
            if (si == pf.modules.end()) fail("unknown module '" + s.src + "'", sec.header, 1);
            if (ti == pf.modules.end()) fail("unknown module '" + s.tgt + "'", sec.header, 1);
            if (si->second.base != ti->second.base)
                fail("morphism endpoints live over different categories", sec.header, 1);
            const AInfCategory& cat = *si->second.m.base;
            s.nu.source = si->second.m;
            s.nu.target = ti->second.m;
            s.nu.nu.nobj = cat.nobj;
            s.nu.nu.cat_dims = cat.dims;
            s.nu.nu.mod_in = s.nu.source.spaces;
            s.nu.nu.mod_out = s.nu.target.spaces;
            s.nu.nu.arity_cap = opt.arity_cap;
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("nu");
                add_component(s.nu.nu, parse_table(c, cat, 0, ln), ln);
            }
            s.nu.nu.prune_zeros();
            register_name(kind, s.name, sec.header);
            pf.morphisms[s.name] = std::move(s);

        } else if (kind == "conedecomp") {
            DecompSection s;
            s.name = h.word("name");
            h.lit("pieces");
            s.pieces = h.list("complex name");
            if (s.pieces.empty()) fail("conedecomp needs at least one piece", sec.header, 1);
            h.end();
            std::vector<ChainComplex> xs;
            for (const auto& p : s.pieces) xs.push_back(get_complex(p, sec.header));
            std::vector<int> ydim(xs.size() + 1, 0);
            for (size_t i = 0; i < xs.size(); ++i) ydim[i + 1] = ydim[i] + xs[i].dim;
            std::vector<BitMatrix> us;
            for (size_t i = 0; i < xs.size(); ++i) us.push_back(BitMatrix(ydim[i], xs[i].dim));
            std::vector<int> got(xs.size(), 0);
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("u");
                int i = c.num("piece index");
                if (i < 2 || i > (int)xs.size()) fail("piece index out of range", ln, 1);
                if (got[i - 1] >= xs[i - 1].dim) fail("too many columns for u", ln, 1);
                us[i - 1].set_col(got[i - 1]++, parse_bits(c.next(), ydim[i - 1], ln));
                c.end();
            }
            for (size_t i = 1; i < xs.size(); ++i)
                if (got[i] != xs[i].dim)
                    fail("u " + std::to_string(i + 1) + " needs " +
                             std::to_string(xs[i].dim) + " columns",
                         sec.header, 1);
            s.eta = strict_decomposition(xs, us);
            register_name(kind, s.name, sec.header);
            pf.decomps[s.name] = std::move(s);

        } else if (kind == "tsmorphism") {
            TsSection s;
            s.name = h.word("name");
            h.end();
            struct RawBlock {
                TsSection::Block meta;
                std::vector<ChainComplex> xs;
                std::vector<int> ydim;
                std::vector<BitMatrix> us;
                std::vector<int> got_u;
                ChainComplex src;
                BitMatrix phi;
                int got_phi = 0;
            };
            std::vector<RawBlock> blocks;
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                std::string w = c.word("summand/phi/u");
                if (w == "summand") {
                    RawBlock rb;
                    rb.meta.src = c.word("complex name");
                    c.lit("pieces");
                    rb.meta.pieces = c.list("complex name");
                    if (rb.meta.pieces.empty()) fail("summand needs pieces", ln, 1);
                    c.end();
                    rb.src = get_complex(rb.meta.src, ln);
                    for (const auto& p : rb.meta.pieces) rb.xs.push_back(get_complex(p, ln));
                    rb.ydim.assign(rb.xs.size() + 1, 0);
                    for (size_t i = 0; i < rb.xs.size(); ++i)
                        rb.ydim[i + 1] = rb.ydim[i] + rb.xs[i].dim;
                    for (size_t i = 0; i < rb.xs.size(); ++i)
                        rb.us.push_back(BitMatrix(rb.ydim[i], rb.xs[i].dim));
                    rb.got_u.assign(rb.xs.size(), 0);
                    rb.phi = BitMatrix(rb.ydim.back(), rb.src.dim);
                    blocks.push_back(std::move(rb));
                } else if (w == "phi") {
                    if (blocks.empty()) fail("'phi' before any summand", ln, 1);
                    RawBlock& rb = blocks.back();
                    if (rb.got_phi >= rb.src.dim) fail("too many phi columns", ln, 1);
                    rb.phi.set_col(rb.got_phi++, parse_bits(c.next(), rb.ydim.back(), ln));
                    c.end();
                } else if (w == "u") {
                    if (blocks.empty()) fail("'u' before any summand", ln, 1);
                    RawBlock& rb = blocks.back();
                    int i = c.num("piece index");
                    if (i < 2 || i > (int)rb.xs.size()) fail("piece index out of range", ln, 1);
                    if (rb.got_u[i - 1] >= rb.xs[i - 1].dim)
                        fail("too many columns for u", ln, 1);
                    rb.us[i - 1].set_col(rb.got_u[i - 1]++,
                                         parse_bits(c.next(), rb.ydim[i - 1], ln));
                    c.end();
                } else {
                    fail("expected summand/phi/u", ln, ln.toks[0].col);
                }
            }
            if (blocks.empty()) fail("tsmorphism needs at least one summand", sec.header, 1);
            for (RawBlock& rb : blocks) {
                if (rb.got_phi != rb.src.dim)
                    fail("phi needs " + std::to_string(rb.src.dim) + " columns", sec.header,
                         1);
                for (size_t i = 1; i < rb.xs.size(); ++i)
                    if (rb.got_u[i] != rb.xs[i].dim)
                        fail("u " + std::to_string(i + 1) + " incomplete", sec.header, 1);
                TSSummand sm;
                sm.source = rb.src;
                sm.eta = strict_decomposition(rb.xs, rb.us);
                ChainMap phim(sm.source, sm.eta.total(), rb.phi);
                phim.require_chain_map();
                HomotopyEquivalence he = homotopy_inverse(phim);
                sm.phi = rb.phi;
                sm.phi_inv = he.g;
                sm.kk = he.k;
                s.m.summands.push_back(std::move(sm));
                s.blocks.push_back(rb.meta);
            }
            register_name(kind, s.name, sec.header);
            pf.ts[s.name] = std::move(s);

        } else if (kind == "snake") {
            SnakeSection s;
            s.name = h.word("name");
            h.lit("base");
            s.base = h.word("complex name");
            h.lit("l");
            s.l = h.num("snake length");
            h.end();
            if (!sec.data.empty()) fail("snake sections have no data lines", sec.data[0], 1);
            s.s = build_snake(get_complex(s.base, sec.header), s.l);
            register_name(kind, s.name, sec.header);
            pf.snakes[s.name] = std::move(s);

        } else if (kind == "cobordism") {
            CobSection s;
            s.name = h.word("name");
            h.lit("category");
            s.cat = h.word("category name");
            h.lit("positive");
            s.positive = h.word("object name");
            h.lit("negative");
            s.negatives = h.list("object name");
            if (s.negatives.empty()) fail("need at least one negative end", sec.header, 1);
            h.end();
            AInfCategory& cat = get_category(s.cat, sec.header);
            s.v.amb = cat;
            s.v.positive_end = object_of(cat, s.positive, sec.header, 1);
            for (const auto& n : s.negatives)
                s.v.negative_ends.push_back(object_of(cat, n, sec.header, 1));
            size_t m = s.negatives.size();

            std::vector<std::vector<const Line*>> philines(m + 1);
            std::vector<const Line*> phivlines;
            bool has_phiv = false;
            for (const Line& ln : sec.data) {
                if (ln.toks[0].s == "phiv") {
                    phivlines.push_back(&ln);
                    has_phiv = true;
                } else if (ln.toks[0].s == "phi") {
                    Cur c{&ln};
                    c.lit("phi");
                    int j = c.num("tower index");
                    if (j < 2 || j > (int)m) fail("tower index out of range", ln, 1);
                    philines[j].push_back(&ln);
                } else {
                    fail("expected phi/phiv", ln, ln.toks[0].col);
                }
            }

            AInfModule mj = yoneda_module(cat, s.v.negative_ends[0]);
            for (size_t j = 2; j <= m; ++j) {
                ModuleMorphism phi;
                phi.source = yoneda_module(cat, s.v.negative_ends[j - 1]);
                phi.target = mj;
                phi.nu.nobj = cat.nobj;
                phi.nu.cat_dims = cat.dims;
                phi.nu.mod_in = phi.source.spaces;
                phi.nu.mod_out = phi.target.spaces;
                phi.nu.arity_cap = opt.arity_cap;
                for (const Line* ln : philines[j]) {
                    Cur c{ln};
                    c.lit("phi");
                    c.num("tower index");
                    add_component(phi.nu, parse_table(c, cat, 0, *ln), *ln);
                }
                phi.nu.prune_zeros();
                mj = cone(phi).module;
                s.v.phis.push_back(std::move(phi));
            }
            if (has_phiv) {
                ModuleMorphism pv;
                pv.source = yoneda_module(cat, s.v.positive_end);
                pv.target = mj;
                pv.nu.nobj = cat.nobj;
                pv.nu.cat_dims = cat.dims;
                pv.nu.mod_in = pv.source.spaces;
                pv.nu.mod_out = pv.target.spaces;
                pv.nu.arity_cap = opt.arity_cap;
                for (const Line* ln : phivlines) {
                    Cur c{ln};
                    c.lit("phiv");
                    add_component(pv.nu, parse_table(c, cat, 0, *ln), *ln);
                }
                pv.nu.prune_zeros();
                s.v.phi_v = std::move(pv);
            }
            register_name(kind, s.name, sec.header);
            pf.cobordisms[s.name] = std::move(s);

        } else if (kind == "k0") {
            K0Section s;
            s.name = h.word("name");
            h.lit("objects");
            auto objs = h.list("object name");
            h.end();
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("triangle");
                TriangleSpec t;
                t.x = c.word("object");
                t.y = c.word("object");
                t.z = c.word("object");
                c.end();
                s.triangles.push_back(std::move(t));
            }
            try {
                s.p = k0_from_triangles(objs, s.triangles);
            } catch (const UnknownObject& e) {
                fail(e.what(), sec.header, 1);
            }
            register_name(kind, s.name, sec.header);
            pf.k0s[s.name] = std::move(s);

        } else {  // presentation
            PresSection s;
            s.name = h.word("name");
            h.lit("generators");
            s.p.generators = h.list("generator name");
            h.end();
            for (const Line& ln : sec.data) {
                Cur c{&ln};
                c.lit("relation");
                s.p.relations.push_back(
                    parse_bits(c.next(), (int)s.p.generators.size(), ln));
                c.end();
            }
            register_name(kind, s.name, sec.header);
            pf.presentations[s.name] = std::move(s);
        }

        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what(), sec.header, 1);
        }
    }
    return pf;
}

namespace {

std::string bits_str(const BitVec& v) {
    return v.size() == 0 ? std::string("-") : v.to_string();
}

void emit_matrix_cols(std::ostringstream& o, const char* tag, const BitMatrix& m) {
    for (int c = 0; c < m.cols(); ++c) o << tag << " " << bits_str(m.col(c)) << "\n";
}

std::string paren(const std::vector<std::string>& xs) {
    std::string s = "(";
    for (const auto& x : xs) s += " " + x;
    return s + " )";
}

std::vector<std::string> table_lines(const char* tag, const std::string& prefix,
                                     const std::map<Key, BitMatrix>& comp,
                                     const std::vector<std::string>& names, int key_extra,
                                     const std::function<std::vector<int>(const Key&)>& in_dims) {
    std::vector<std::string> out;
    for (const auto& [key, mat] : comp) {
        auto dims = in_dims(key);
        int k = (int)key.size() - key_extra;
        std::vector<int> idx(dims.size(), 0);
        if (dims.empty()) continue;
        do {
            BitVec col = mat.col(tuple_index(dims, idx));
            if (col.is_zero()) continue;
            std::ostringstream o;
            o << tag << " " << prefix << k << " (";
            for (Obj x : key) o << " " << names[x];
            o << " ) (";
            for (int b : idx) o << " " << b + 1;
            o << " ) -> " << col.to_string();
            out.push_back(o.str());
        } while (next_tuple(dims, idx));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::string serialize(const ParsedFile& f) {
    std::ostringstream o;
    bool first = true;
    auto gap = [&] {
        if (!first) o << "\n";
        first = false;
    };

    for (const auto& [name, s] : f.categories) {
        gap();
        o << "category " << name << " objects " << paren(s.cat.names) << "\n";
        for (int a = 0; a < s.cat.nobj; ++a)
            for (int b = 0; b < s.cat.nobj; ++b)
                if (s.cat.dim(a, b) > 0)
                    o << "dim " << s.cat.names[a] << " " << s.cat.names[b] << " "
                      << s.cat.dim(a, b) << "\n";
        for (const auto& l :
             table_lines("mu", "", s.cat.mu.comp, s.cat.names, 1,
                         [&](const Key& k) { return s.cat.mu.key_input_dims(k); }))
            o << l << "\n";
    }
    for (const auto& [name, s] : f.cobordisms) {
        gap();
        o << "cobordism " << name << " category " << s.cat << " positive " << s.positive
          << " negative " << paren(s.negatives) << "\n";
        const auto& names = s.v.amb.names;
        for (size_t j = 2; j <= s.negatives.size(); ++j) {
            const MixedExtendedMap& nu = s.v.phis[j - 2].nu;
            for (const auto& l :
                 table_lines("phi", std::to_string(j) + " ", nu.comp, names, 0,
                             [&](const Key& k) { return nu.key_input_dims(k); }))
                o << l << "\n";
        }
        if (s.v.phi_v) {
            const MixedExtendedMap& nu = s.v.phi_v->nu;
            for (const auto& l :
                 table_lines("phiv", "", nu.comp, names, 0,
                             [&](const Key& k) { return nu.key_input_dims(k); }))
                o << l << "\n";
        }
    }
    for (const auto& [name, s] : f.complexes) {
        gap();
        o << "complex " << name << " dim " << s.dim << "\n";
        emit_matrix_cols(o, "d", s.d);
    }
    for (const auto& [name, s] : f.decomps) {
        gap();
        o << "conedecomp " << name << " pieces " << paren(s.pieces) << "\n";
        for (size_t i = 1; i < s.eta.tris.size(); ++i)
            for (int c = 0; c < s.eta.tris[i].u.cols(); ++c)
                o << "u " << i + 1 << " " << bits_str(s.eta.tris[i].u.col(c)) << "\n";
    }
    for (const auto& [name, s] : f.functors) {
        gap();
        o << "extendedmap " << name << " source " << s.src << " target " << s.tgt << "\n";
        const auto& a = f.categories.at(s.src).cat;
        const auto& b = f.categories.at(s.tgt).cat;
        for (int x = 0; x < a.nobj; ++x)
            o << "obj " << a.names[x] << " -> " << b.names[s.f.index_map[x]] << "\n";
        for (const auto& l : table_lines("f", "", s.f.comp, a.names, 1,
                                         [&](const Key& k) { return s.f.key_input_dims(k); }))
            o << l << "\n";
    }
    for (const auto& [name, s] : f.k0s) {
        gap();
        o << "k0 " << name << " objects " << paren(s.p.objects) << "\n";
        std::vector<std::string> lines;
        for (const auto& t : s.triangles)
            lines.push_back("triangle " + t.x + " " + t.y + " " + t.z);
        std::sort(lines.begin(), lines.end());
        for (const auto& l : lines) o << l << "\n";
    }
    for (const auto& [name, s] : f.maps) {
        gap();
        o << "map " << name << " source " << s.src << " target " << s.tgt << "\n";
        emit_matrix_cols(o, "f", s.f);
    }
    for (const auto& [name, s] : f.modules) {
        gap();
        o << "module " << name << " base " << s.base << "\n";
        const auto& names = s.m.base->names;
        for (int a = 0; a < s.m.base->nobj; ++a)
            if (s.m.spaces[a] > 0)
                o << "space " << names[a] << " " << s.m.spaces[a] << "\n";
        for (const auto& l :
             table_lines("mu", "", s.m.action.comp, names, 0,
                         [&](const Key& k) { return s.m.action.key_input_dims(k); }))
            o << l << "\n";
    }
    for (const auto& [name, s] : f.morphisms) {
        gap();
        o << "morphism " << name << " source " << s.src << " target " << s.tgt << "\n";
        const auto& names = s.nu.source.base->names;
        for (const auto& l :
             table_lines("nu", "", s.nu.nu.comp, names, 0,
                         [&](const Key& k) { return s.nu.nu.key_input_dims(k); }))
            o << l << "\n";
    }
    for (const auto& [name, s] : f.presentations) {
        gap();
        o << "presentation " << name << " generators " << paren(s.p.generators) << "\n";
        std::vector<std::string> lines;
        for (const auto& r : s.p.relations) lines.push_back("relation " + bits_str(r));
        std::sort(lines.begin(), lines.end());
        for (const auto& l : lines) o << l << "\n";
    }
    for (const auto& [name, s] : f.snakes) {
        gap();
        o << "snake " << name << " base " << s.base << " l " << s.l << "\n";
    }
    for (const auto& [name, s] : f.ts) {
        gap();
        o << "tsmorphism " << name << "\n";
        for (size_t b = 0; b < s.blocks.size(); ++b) {
            const auto& blk = s.blocks[b];
            const TSSummand& sm = s.m.summands[b];
            o << "summand " << blk.src << " pieces " << paren(blk.pieces) << "\n";
            emit_matrix_cols(o, "phi", sm.phi);
            for (size_t i = 1; i < sm.eta.tris.size(); ++i)
                for (int c = 0; c < sm.eta.tris[i].u.cols(); ++c)
                    o << "u " << i + 1 << " " << bits_str(sm.eta.tris[i].u.col(c)) << "\n";
        }
    }
    return o.str();
}

} // namespace homcob
