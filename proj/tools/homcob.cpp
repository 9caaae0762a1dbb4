// Command-line front end: loads instance files, runs the checkers, and
// prints deterministic reports (`CHECK <name> <pass|fail> <detail>` lines or
// JSON).  Exit codes: 0 pass, 1 check failure, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "homcob/io.hpp"

using namespace homcob;
using nlohmann::json;

namespace {

struct Options {
    int arity_cap = kDefaultArityCap;
    uint64_t seed = 1;
    bool as_json = false;
    bool quiet = false;
    std::string object;
    int slot = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string token(std::string s) {
    for (char& c : s)
        if (c == ' ' || c == '\t') c = '-';
    return s.empty() ? std::string("check") : s;
}

int emit(const std::vector<Report>& reports, const Options& opt) {
    bool failed = false;
    json out = json::array();
    for (const Report& r : reports) {
        json jr{{"check", r.check}, {"findings", json::array()}, {"notes", r.notes}};
        for (const Finding& f : r.findings) {
            failed = failed || !f.ok;
            jr["findings"].push_back({{"item", f.item}, {"ok", f.ok}, {"detail", f.detail}});
            if (!opt.as_json && !opt.quiet) {
                std::cout << "CHECK " << token(r.check) + "/" + token(f.item) << " "
                          << (f.ok ? "pass" : "fail");
                if (!f.detail.empty()) std::cout << " " << f.detail;
                std::cout << "\n";
            }
        }
        jr["status"] = r.pass() ? "pass" : "fail";
        out.push_back(std::move(jr));
        if (!opt.as_json && !opt.quiet)
            for (const auto& n : r.notes) std::cout << "NOTE " << n << "\n";
    }
    if (opt.as_json && !opt.quiet) std::cout << out.dump(2) << "\n";
    return failed ? 1 : 0;
}

ParsedFile load(const std::string& path, const Options& opt) {
    return parse_file(slurp(path), ParseOptions{opt.arity_cap});
}

Obj pick_object(const AInfCategory& cat, const Options& opt, Obj dflt) {
    return opt.object.empty() ? dflt : cat.object(opt.object);
}

int cmd_check_complex(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    Report r;
    r.check = "complex";
    for (const auto& [name, s] : pf.complexes) {
        try {
            s.complex();
            r.add(true, name);
        } catch (const InvalidComplex&) {
            r.add(false, name, "d*d != 0");
        }
    }
    if (pf.complexes.empty()) throw Error("no complex section in " + path);
    return emit({r}, opt);
}

int cmd_check_ainf(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.categories.empty()) throw Error("no category section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, s] : pf.categories) {
        Report r = check_a_infinity(s.cat);
        r.check = name;
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

int cmd_check_module(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.modules.empty()) throw Error("no module section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, s] : pf.modules) {
        Report r = check_module(s.m);
        r.check = name;
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

int cmd_check_morphism(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.morphisms.empty()) throw Error("no morphism section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, s] : pf.morphisms) {
        Report r = check_module_morphism(s.nu);
        r.check = name;
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

int cmd_snake(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.snakes.empty()) throw Error("no snake section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, sec] : pf.snakes) {
        const SnakeComplex& s = sec.s;
        Report r;
        r.check = name;
        r.add(homology(s.total).rank == homology(s.base).rank, "homology rank");
        ChainMap e = snake_inclusion(s);
        r.add(e.is_chain_map(), "inclusion chain map");
        for (int j = 1; j <= s.l; j += 2) {
            ChainMap c = snake_projection(s, j);
            bool ok = c.is_chain_map() && compose(c, e).f == BitMatrix::identity(s.base.dim);
            r.add(ok, "projection " + std::to_string(j));
        }
        if (s.l == 3) {
            AInfCategory snake_cat = one_object_category(s.total, "S");
            AInfCategory base_cat = one_object_category(s.base, "B");
            bool ok = check_homotopic(snake_projection_functor(s, 1),
                                      snake_projection_functor(s, 3),
                                      snake_projection_homotopy(s), snake_cat, base_cat);
            r.add(ok, "c1 homotopic to c3");
        }
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

int cmd_cone_decomp(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.decomps.empty()) throw Error("no conedecomp section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, s] : pf.decomps) {
        Report r = check_cone_decomposition(s.eta);
        r.check = name;
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

// Serialize a TS morphism (plus the complexes it references) as a new file.
std::string ts_to_file(const TSMorphism& m, const std::vector<TsSection::Block>& blocks,
                       const std::string& name) {
    ParsedFile out;
    TsSection ts;
    ts.name = name;
    ts.m = m;
    ts.blocks = blocks;
    auto add_complex = [&out](const std::string& cname, const ChainComplex& c) {
        ComplexSection cs;
        cs.name = cname;
        cs.dim = c.dim;
        cs.d = c.d;
        out.complexes[cname] = std::move(cs);
    };
    for (size_t b = 0; b < blocks.size(); ++b) {
        add_complex(blocks[b].src, m.summands[b].source);
        auto lin = m.summands[b].eta.linearization();
        for (size_t i = 0; i < lin.size(); ++i) add_complex(blocks[b].pieces[i], lin[i]);
    }
    out.ts[name] = std::move(ts);
    return serialize(out);
}

int cmd_ts_compose(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    std::vector<const TsSection*> secs;
    for (const auto& [kind, name] : pf.order)
        if (kind == "tsmorphism") secs.push_back(&pf.ts.at(name));
    if (secs.size() < 2) throw Error("ts-compose needs two tsmorphism sections");
    const TsSection& a = *secs[0];  // outer
    const TsSection& b = *secs[1];  // inner; result = a after b
    TSMorphism comp = compose_ts(a.m, b.m);

    std::vector<TsSection::Block> blocks;
    size_t pos = 0;  // index into a's summands / b's target pieces
    for (const auto& bb : b.blocks) {
        TsSection::Block nb;
        nb.src = bb.src;
        for (size_t i = 0; i < bb.pieces.size(); ++i)
            for (const auto& p : a.blocks[pos + i].pieces) nb.pieces.push_back(p);
        pos += bb.pieces.size();
        blocks.push_back(std::move(nb));
    }
    std::cout << ts_to_file(comp, blocks, a.name + "_after_" + b.name);
    return 0;
}

int cmd_assemble(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.cobordisms.empty()) throw Error("no cobordism section in " + path);
    const CobSection& s = pf.cobordisms.begin()->second;
    Obj n = pick_object(s.v.amb, opt, s.v.positive_end);
    TSMorphism m = assemble_functor_value(s.v, n);
    std::vector<TsSection::Block> blocks(1);
    blocks[0].src = "end_" + s.v.amb.names[s.v.positive_end];
    for (Obj l : s.v.negative_ends) blocks[0].pieces.push_back("cf_" + s.v.amb.names[l]);
    // Piece names must be unique complex names; disambiguate repeats.
    for (size_t i = 0; i < blocks[0].pieces.size(); ++i)
        blocks[0].pieces[i] += "_" + std::to_string(i + 1);
    std::cout << ts_to_file(m, blocks, s.name + "_at_" + s.v.amb.names[n]);
    return 0;
}

int cmd_compose_compat(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    std::vector<const CobSection*> secs;
    for (const auto& [kind, name] : pf.order)
        if (kind == "cobordism") secs.push_back(&pf.cobordisms.at(name));
    if (secs.size() < 3)
        throw Error("compose-compat needs three cobordism sections (V, V', V'')");
    const CobordismDatum& v = secs[0]->v;
    Obj n = pick_object(v.amb, opt, v.positive_end);
    Report r = check_composition_compatibility(v, secs[1]->v, opt.slot, secs[2]->v, n,
                                               nullptr, opt.seed);
    return emit({r}, opt);
}

int cmd_k0(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.k0s.empty()) throw Error("no k0 section in " + path);
    const K0Section& k = pf.k0s.begin()->second;
    std::vector<Report> rs;
    if (!opt.quiet && !opt.as_json) std::cout << "RANK " << k0_rank(k.p) << "\n";
    for (const auto& [name, ps] : pf.presentations) {
        std::vector<int> object_map;
        for (const auto& g : ps.p.generators) object_map.push_back(k.p.object(g));
        Report r = theta_well_defined(ps.p, k.p, object_map);
        r.check = name;
        rs.push_back(std::move(r));
    }
    for (const auto& [name, cs] : pf.cobordisms) {
        Report r = verify_null_cobordism(cs.v, k.p);
        r.check = name;
        rs.push_back(std::move(r));
    }
    if (rs.empty()) {
        Report r;
        r.check = "k0";
        r.add(true, "rank", std::to_string(k0_rank(k.p)));
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

int cmd_index(const std::vector<int>& profile, const Options& opt) {
    if (profile.size() < 2) throw Error("index needs k entries plus the exit index");
    MorseIndexProfile p;
    p.entries.assign(profile.begin(), profile.end() - 1);
    p.exit = profile.back();
    for (int e : profile)
        if (e != 0 && e != 1) throw Error("Morse indices are 0 or 1");
    static const char* names[] = {"k1-equal", "all-ones", "single-zero-entry",
                                  "exit-zero-all-ones", "not-realizable"};
    int ind = fredholm_index(p);
    IndexCase c = classify_index(p);
    if (opt.as_json) {
        std::cout << json{{"index", ind}, {"case", names[(int)c]}}.dump(2) << "\n";
    } else if (!opt.quiet) {
        std::cout << "INDEX " << ind << "\n" << "CASE " << names[(int)c] << "\n";
    }
    return 0;
}

int cmd_yoneda_probe(const std::string& path, const Options& opt) {
    ParsedFile pf = load(path, opt);
    if (pf.categories.empty()) throw Error("no category section in " + path);
    std::vector<Report> rs;
    for (const auto& [name, s] : pf.categories) {
        const AInfCategory& cat = s.cat;
        HomologyCategory hc = homology_category(cat);
        Report r;
        r.check = name;
        for (Obj k = 0; k < cat.nobj; ++k) {
            if (!hc.units[k]) {
                r.note("object " + cat.names[k] + " has no homology unit; probe skipped");
                continue;
            }
            r.add(true, "unit " + cat.names[k]);
            for (Obj l = 0; l < cat.nobj; ++l) {
                int rk = hc.h(k, l).rank;
                for (int i = 0; i < rk; ++i) {
                    BitVec cls = BitVec::unit(rk, i);
                    bool ok = hc.multiply(k, k, l, *hc.units[k], cls) == cls;
                    r.add(ok, "probe " + cat.names[k] + " " + cat.names[l] + " class " +
                                  std::to_string(i + 1));
                }
            }
        }
        rs.push_back(std::move(r));
    }
    return emit(rs, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GF(2) homological algebra toolkit"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("AINF_ARITY_CAP")) opt.arity_cap = std::atoi(env);
    app.add_option("--arity-cap", opt.arity_cap, "extended-map arity cap");
    app.add_option("--seed", opt.seed, "seed for randomized witness searches");
    app.add_flag("--json", opt.as_json, "structured JSON report");
    app.add_flag("--quiet", opt.quiet, "suppress report output");

    std::string file;
    std::vector<int> profile;

    auto with_file = [&](const char* name, const char* desc) {
        CLI::App* c = app.add_subcommand(name, desc);
        c->add_option("file", file, "instance file")->required();
        return c;
    };
    with_file("check-complex", "verify d*d = 0 for every complex");
    with_file("check-ainf", "verify the A-infinity relation for every category");
    with_file("check-module", "verify the module relation");
    with_file("check-morphism", "verify the module-morphism relation");
    with_file("cone-decomp", "verify cone decompositions");
    CLI::App* csnake = with_file("snake", "verify snake complexes and their maps");
    (void)csnake;
    with_file("ts-compose", "compose the first two TS morphisms; emit the result");
    CLI::App* cassemble =
        with_file("assemble", "assemble the functor value of a cobordism datum");
    cassemble->add_option("--object", opt.object, "test object (default: positive end)");
    CLI::App* ccompat =
        with_file("compose-compat", "check gluing compatibility of three data");
    ccompat->add_option("--object", opt.object, "test object");
    ccompat->add_option("--slot", opt.slot, "gluing position (1-based)");
    with_file("k0", "K0 rank and well-definedness checks");
    CLI::App* cindex = app.add_subcommand("index", "Fredholm index of a Morse profile");
    cindex->add_option("profile", profile, "entry indices then the exit index")->required();
    CLI::App* cprobe = with_file("yoneda-probe", "unit detection and faithfulness probe");
    (void)cprobe;

    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands()[0]->get_name();

    try {
        if (cmd == "check-complex") return cmd_check_complex(file, opt);
        if (cmd == "check-ainf") return cmd_check_ainf(file, opt);
        if (cmd == "check-module") return cmd_check_module(file, opt);
        if (cmd == "check-morphism") return cmd_check_morphism(file, opt);
        if (cmd == "snake") return cmd_snake(file, opt);
        if (cmd == "cone-decomp") return cmd_cone_decomp(file, opt);
        if (cmd == "ts-compose") return cmd_ts_compose(file, opt);
        if (cmd == "assemble") return cmd_assemble(file, opt);
        if (cmd == "compose-compat") return cmd_compose_compat(file, opt);
        if (cmd == "k0") return cmd_k0(file, opt);
        if (cmd == "index") return cmd_index(profile, opt);
        if (cmd == "yoneda-probe") return cmd_yoneda_probe(file, opt);
    } catch (const ParseError& e) {
        std::cerr << "ERROR parse: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "ERROR: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
