#include "tangleforge/cli.hpp"

#include <optional>

#include "CLI11.hpp"
#include "tangleforge/io.hpp"
#include "tangleforge/svg.hpp"

namespace tf {

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kUnknown = 3;

struct Options {
    std::vector<std::string> inputs;
    long budget = kDefaultSimplifyBudget;
    std::string pair;
    std::string kind;
    int side = 0;
    int color = 0;
    std::string mode = "shared";
    std::string outPath, svgPath;
    long seed = 20240817;
};

bool looks_like_tuple(const std::string& text) {
    size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && text.compare(i, 6, "flavor") == 0;
}

Json bounding_to_json(const BoundingReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    j["surjective"] = rep.surjective;
    j["cond1"] = rep.cond1;
    j["cond2"] = rep.cond2;
    Json f = Json::object(), conj = Json::object();
    for (const auto& [i, l] : rep.f)
        f["p" + std::to_string(i)] = Word::trusted({l}).str();
    for (const auto& [i, w] : rep.conjugators) conj["p" + std::to_string(i)] = w.str();
    j["f"] = f;
    j["conjugators"] = conj;
    j["failures"] = rep.failures;
    return j;
}

Json presentation_to_json(const Presentation& p) {
    Json j;
    j["generators"] = p.gens;
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(p.relator_str(r));
    j["relators"] = rels;
    return j;
}

Json abelian_to_json(const AbelianInvariants& ab) {
    Json j;
    j["freeRank"] = ab.freeRank;
    j["torsion"] = ab.torsion;
    return j;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "unknown";
    }
}

// Automorphism file: `<name> -> <word>` lines; unlisted generators act as the
// identity.
std::map<Gen, Word> parse_automorphism(const std::string& text, const std::vector<Gen>& gens) {
    std::map<Gen, Word> m;
    for (Gen g : gens) m[g] = Word::trusted({{g, 1}});
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t lo = line.find_first_not_of(" \t\r\n");
        if (lo == std::string::npos || line[lo] == '#') continue;
        size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ParseError("automorphism file: expected '<name> -> <word>' in '" + line + "'");
        auto ls = parse_letters(line.substr(0, arrow));
        if (ls.size() != 1 || ls[0].sign != 1)
            throw ParseError("automorphism file: bad generator name in '" + line + "'");
        m[ls[0].gen] = Word::parse(line.substr(arrow + 2));
    }
    return m;
}

struct Replies {
    Json payload = Json::object();
    std::vector<std::string> diagnostics;
    int code = kOk;
};

Replies do_verify(const Options& opt) {
    Replies r;
    Json files = Json::array();
    for (const auto& path : opt.inputs) {
        std::string text = read_file(path);
        Json entry;
        entry["file"] = path;
        if (looks_like_tuple(text)) {
            SplittingTuple t = parse_tuple(text);
            entry["kind"] = "tuple";
            entry["flavor"] = flavor_name(t.flavor);
            Json homs = Json::array();
            for (const auto& h : t.homs) homs.push_back(bounding_to_json(verify_bounding(h)));
            entry["bounding"] = homs;
            ConditionVerdict v = verify_membership(t, t.flavor, opt.budget);
            entry["verdict"] = verdict_name(v.value);
            entry["evidence"] = v.evidence;
            if (v.value == Verdict::Fails)
                r.code = kFail;
            else if (v.value == Verdict::Unknown && r.code == kOk)
                r.code = kUnknown;
        } else {
            FreeTargetHom h = parse_hom(text);
            entry["kind"] = "hom";
            if (!verify_hom(h)) {
                entry["wellDefined"] = false;
                r.code = kFail;
                r.diagnostics.push_back(path + ": images violate the surface relation");
            } else {
                entry["wellDefined"] = true;
                BoundingReport rep = verify_bounding(h);
                entry["report"] = bounding_to_json(rep);
                if (!rep.ok) r.code = kFail;
            }
        }
        files.push_back(entry);
    }
    r.payload["files"] = files;
    return r;
}

Replies do_realize(const Options& opt) {
    Replies r;
    FreeTargetHom h = parse_hom(read_file(opt.inputs.at(0)));
    RealizationResult res = realize(h);
    Json j = realization_to_json(res);
    r.payload = j;
    if (!opt.outPath.empty()) write_file(opt.outPath, j.dump(2) + "\n");
    if (!opt.svgPath.empty()) write_file(opt.svgPath, render_svg(res.diagram));
    return r;
}

Replies do_readoff(const Options& opt) {
    Replies r;
    Diagram d = diagram_from_json(Json::parse(read_file(opt.inputs.at(0))));
    FreeTargetHom h = read_off(d);
    r.payload["hom"] = serialize_hom(h);
    r.payload["wellDefined"] = verify_hom(h);
    if (!opt.outPath.empty()) write_file(opt.outPath, serialize_hom(h));
    return r;
}

Replies do_roundtrip(const Options& opt) {
    Replies r;
    FreeTargetHom h = parse_hom(read_file(opt.inputs.at(0)));
    RealizationResult res = realize(h);
    FreeTargetHom back = read_off(res.diagram);
    bool equal = back == h;
    r.payload["equal"] = equal;
    r.payload["bands"] = res.bandCount;
    Census c = component_census(res.diagram);
    r.payload["closedCurves"] = static_cast<int>(res.diagram.components.size()) -
                                static_cast<int>(c.endpoints.size());
    r.payload["arcs"] = static_cast<int>(c.endpoints.size());
    r.payload["cutSystem"] = is_cut_system(res.diagram);
    if (equal)
        r.diagnostics.push_back("readoff equals input");
    else
        r.code = kFail;
    return r;
}

Replies do_fold(const Options& opt) {
    Replies r;
    FreeTargetHom h = parse_hom(read_file(opt.inputs.at(0)));
    std::vector<Word> words;
    for (const auto& w : h.all_images())
        if (!w.empty()) words.push_back(w);
    FoldGraph g = FoldGraph::wedge(words);
    int before = g.edge_count();
    auto trace = g.fold_to_core();
    bool rose = g.is_rose_on(h.target_generators());
    r.payload["rose"] = rose;
    r.payload["rank"] = h.sig().genus + h.sig().bridges;
    r.payload["edgesBefore"] = before;
    r.payload["edgesAfter"] = g.edge_count();
    Json folds = Json::array();
    for (const auto& rec : trace) {
        Json fj;
        fj["kind"] = rec.kind == FoldKind::TypeI ? "I" : "II";
        fj["edges"] = {rec.e1, rec.e2};
        fj["survivor"] = rec.survivor;
        fj["case"] = rec.ocase == OrientCase::I ? "I" : "II";
        folds.push_back(fj);
    }
    r.payload["trace"] = folds;
    if (!rose) {
        r.code = kFail;
        r.diagnostics.push_back("folding terminated in a graph that is not the full rose");
    }
    return r;
}

Replies do_pushout(const Options& opt) {
    Replies r;
    SplittingTuple t = parse_tuple(read_file(opt.inputs.at(0)));
    Presentation p;
    if (!opt.pair.empty()) {
        int i = 0, j = 0;
        if (std::sscanf(opt.pair.c_str(), "%d,%d", &i, &j) != 2)
            throw ParseError("--pair expects 'i,j'");
        p = pushout_pair(t, i, j);
        r.payload["pair"] = {i, j};
    } else {
        p = pushout_tuple(t);
    }
    r.payload["presentation"] = presentation_to_json(p);
    r.payload["abelianization"] = abelian_to_json(abelianization(p));
    Presentation simp = simplify(p, opt.budget);
    Json s = presentation_to_json(simp);
    s["free"] = simp.relators.empty();
    s["abelianization"] = abelian_to_json(abelianization(simp));
    r.payload["simplified"] = s;
    return r;
}

Replies do_invariants(const Options& opt) {
    Replies r;
    Json files = Json::array();
    for (const auto& path : opt.inputs) {
        SplittingTuple t = parse_tuple(read_file(path));
        Json entry;
        entry["file"] = path;
        entry["flavor"] = flavor_name(t.flavor);
        entry["genus"] = t.sig.genus;
        entry["bridges"] = t.sig.bridges;
        if (t.sig.bridges == 0) {
            r.diagnostics.push_back(path + ": b = 0, no link/surface invariants");
        } else if (t.arity() == 2) {
            entry["linkComponents"] = link_components(t, 1, 2);
        } else {
            entry["pairComponents"] = {link_components(t, 1, 2), link_components(t, 2, 3),
                                       link_components(t, 3, 1)};
            entry["eulerCharacteristic"] = euler_characteristic(t);
            entry["surfaceComponents"] = surface_components(t);
            entry["spherical"] = is_spherical(t);
        }
        files.push_back(entry);
    }
    r.payload["files"] = files;
    return r;
}

Replies do_move(const Options& opt) {
    Replies r;
    SplittingTuple t = parse_tuple(read_file(opt.inputs.at(0)));
    const std::string& kind = opt.kind;
    if (kind.empty()) throw ParseError("move: --kind is required");
    SplittingTuple out = t;
    if (kind == "s") {
        out = (t.arity() == 2 && t.sig.bridges == 0) ? move_stabilize_heegaard(t)
                                                     : move_stabilize_genus(t);
    } else if (kind == "sg") {
        out = move_stabilize_genus(t);
    } else if (kind == "sb1" || kind == "sb2" || kind == "sb3") {
        int which = kind[2] - '0';
        if (t.arity() == 2) {
            int side = opt.side ? opt.side : which;
            SplittingTuple n = normalize_for_perturb(t, side);
            if (!(n == t)) r.diagnostics.push_back("normal form established via ~h relabeling");
            out = move_perturb(n, side);
        } else {
            int color = opt.color ? opt.color : which;
            PerturbMode mode =
                opt.mode == "unshared" ? PerturbMode::Unshared : PerturbMode::Shared;
            SplittingTuple n = normalize_for_perturb_triple(t, color, mode);
            if (!(n == t)) r.diagnostics.push_back("normal form established via ~h relabeling");
            out = move_perturb_triple(n, color, mode);
        }
    } else if (kind == "c") {
        out = move_cyclic(t);
    } else if (kind == "h") {
        if (opt.inputs.size() < 3)
            throw ParseError("move --kind h needs <tuple> <aut> <inverse-aut> inputs");
        int index = opt.side ? opt.side : 1;
        auto gens = t.homs[0].target_generators();
        auto fwd = parse_automorphism(read_file(opt.inputs[1]), gens);
        auto inv = parse_automorphism(read_file(opt.inputs[2]), gens);
        out = move_target_automorphism(t, index, fwd, inv);
    } else if (kind == "m") {
        if (opt.inputs.size() < 3)
            throw ParseError("move --kind m needs <tuple> <aut> <inverse-aut> inputs");
        auto gens = t.homs[0].domain_generators();
        auto fwd = parse_automorphism(read_file(opt.inputs[1]), gens);
        auto inv = parse_automorphism(read_file(opt.inputs[2]), gens);
        out = move_surface_automorphism(t, fwd, inv);
    } else {
        throw ParseError("unknown --kind '" + kind + "'");
    }
    r.payload["tuple"] = serialize_tuple(out);
    r.payload["genus"] = out.sig.genus;
    r.payload["bridges"] = out.sig.bridges;
    if (!opt.outPath.empty()) write_file(opt.outPath, serialize_tuple(out));
    return r;
}

Replies do_render(const Options& opt) {
    Replies r;
    Diagram d = diagram_from_json(Json::parse(read_file(opt.inputs.at(0))));
    std::string svg = render_svg(d);
    if (!opt.svgPath.empty()) {
        write_file(opt.svgPath, svg);
        r.payload["written"] = opt.svgPath;
    } else if (!opt.outPath.empty()) {
        write_file(opt.outPath, svg);
        r.payload["written"] = opt.outPath;
    } else {
        r.payload["svg"] = svg;
    }
    return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tangleforge: curve-and-arc realizations of free-group-valued "
                 "surface homomorphisms and splitting-tuple invariants"};
    app.require_subcommand(1);
    Options opt;

    static const std::vector<std::string> verbs = {"verify",  "realize",    "readoff",
                                                   "roundtrip", "fold",     "pushout",
                                                   "invariants", "move",    "render"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& v : verbs) {
        CLI::App* s = app.add_subcommand(v);
        s->add_option("inputs", opt.inputs)->required()->expected(-1);
        s->add_option("--budget", opt.budget);
        s->add_option("--pair", opt.pair);
        s->add_option("--kind", opt.kind);
        s->add_option("--side", opt.side)->check(CLI::Range(1, 3));
        s->add_option("--color", opt.color)->check(CLI::Range(1, 3));
        s->add_option("--mode", opt.mode)->check(CLI::IsMember({"shared", "unshared"}));
        s->add_option("--out", opt.outPath);
        s->add_option("--svg", opt.svgPath);
        s->add_option("--seed", opt.seed);
        subs[v] = s;
    }

    std::vector<const char*> argv;
    argv.push_back("tangleforge");
    for (const auto& a : args) argv.push_back(a.c_str());

    std::string status = "ok";
    Replies rep;
    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            throw ParseError(e.what());
        }
        std::string verb;
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) verb = name;

        if (verb == "verify") rep = do_verify(opt);
        else if (verb == "realize") rep = do_realize(opt);
        else if (verb == "readoff") rep = do_readoff(opt);
        else if (verb == "roundtrip") rep = do_roundtrip(opt);
        else if (verb == "fold") rep = do_fold(opt);
        else if (verb == "pushout") rep = do_pushout(opt);
        else if (verb == "invariants") rep = do_invariants(opt);
        else if (verb == "move") rep = do_move(opt);
        else if (verb == "render") rep = do_render(opt);

        status = rep.code == kOk ? "ok" : (rep.code == kUnknown ? "unknown" : "fail");
    } catch (const ParseError& e) {
        Json j;
        j["status"] = "error";
        j["payload"] = Json::object();
        j["diagnostics"] = {std::string(e.what())};
        out << j.dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        Json j;
        j["status"] = "fail";
        j["payload"] = Json::object();
        j["diagnostics"] = {std::string(e.what())};
        out << j.dump(2) << "\n";
        err << "fail: " << e.what() << "\n";
        return kFail;
    }

    Json j;
    j["status"] = status;
    j["payload"] = rep.payload;
    j["diagnostics"] = rep.diagnostics;
    out << j.dump(2) << "\n";
    return rep.code;
}

}  // namespace tf
