#include "tangleforge/io.hpp"

#include <fstream>
#include <sstream>

namespace tf {

namespace {

std::string trim(const std::string& s) {
    size_t lo = s.find_first_not_of(" \t\r\n");
    if (lo == std::string::npos) return "";
    size_t hi = s.find_last_not_of(" \t\r\n");
    return s.substr(lo, hi - lo + 1);
}

Gen parse_gen_name(const std::string& name) {
    auto letters = parse_letters(name);
    if (letters.size() != 1 || letters[0].sign != 1)
        throw ParseError("expected a generator name, got '" + name + "'");
    return letters[0].gen;
}

long parse_assignment(const std::string& line, const std::string& key) {
    size_t eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)) != key)
        throw ParseError("expected '" + key + " = <int>', got '" + line + "'");
    return std::stol(trim(line.substr(eq + 1)));
}

FreeTargetHom hom_from_lines(const std::vector<std::string>& lines) {
    if (lines.size() < 2) throw ParseError("homomorphism block too short");
    SurfaceSig sig;
    sig.genus = static_cast<int>(parse_assignment(lines[0], "genus"));
    sig.bridges = static_cast<int>(parse_assignment(lines[1], "bridges"));
    std::map<Gen, Word> images;
    for (size_t i = 2; i < lines.size(); ++i) {
        size_t arrow = lines[i].find("->");
        if (arrow == std::string::npos)
            throw ParseError("expected '<name> -> <word>', got '" + lines[i] + "'");
        Gen g = parse_gen_name(trim(lines[i].substr(0, arrow)));
        Word w = Word::parse(trim(lines[i].substr(arrow + 2)));
        if (images.count(g)) throw ParseError("duplicate image for '" + g.str() + "'");
        images[g] = std::move(w);
    }
    std::vector<Word> p, a, b;
    auto take = [&](Gen g) {
        auto it = images.find(g);
        if (it == images.end()) throw ParseError("missing image for '" + g.str() + "'");
        Word w = std::move(it->second);
        images.erase(it);
        return w;
    };
    for (int i = 1; i <= 2 * sig.bridges; ++i) p.push_back(take(gen_p(i)));
    for (int i = 1; i <= sig.genus; ++i) {
        a.push_back(take(gen_a(i)));
        b.push_back(take(gen_b(i)));
    }
    if (!images.empty())
        throw ParseError("image given for '" + images.begin()->first.str() +
                         "', which is not a domain generator");
    return FreeTargetHom(sig, std::move(p), std::move(a), std::move(b));
}

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        lines.push_back(t);
    }
    return lines;
}

}  // namespace

FreeTargetHom parse_hom(const std::string& text) {
    return hom_from_lines(content_lines(text));
}

std::string serialize_hom(const FreeTargetHom& hom) {
    std::ostringstream out;
    out << "genus = " << hom.sig().genus << "\n";
    out << "bridges = " << hom.sig().bridges << "\n";
    for (Gen g : hom.domain_generators())
        out << g.str() << " -> " << hom.image(g).str() << "\n";
    return out.str();
}

SplittingTuple parse_tuple(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty() || lines[0].rfind("flavor", 0) != 0)
        throw ParseError("tuple file must start with 'flavor = ...'");
    size_t eq = lines[0].find('=');
    if (eq == std::string::npos) throw ParseError("bad flavor line '" + lines[0] + "'");
    Flavor flavor = flavor_from_name(trim(lines[0].substr(eq + 1)));

    std::vector<std::vector<std::string>> blocks;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() >= 2 && lines[i].front() == '[' && lines[i].back() == ']') {
            std::string name = lines[i].substr(1, lines[i].size() - 2);
            if (name != "phi" + std::to_string(blocks.size() + 1))
                throw ParseError("expected [phi" + std::to_string(blocks.size() + 1) +
                                 "], got [" + name + "]");
            blocks.emplace_back();
        } else {
            if (blocks.empty()) throw ParseError("homomorphism line before any [phiN] header");
            blocks.back().push_back(lines[i]);
        }
    }
    std::vector<FreeTargetHom> homs;
    for (const auto& b : blocks) homs.push_back(hom_from_lines(b));
    return SplittingTuple::make(flavor, std::move(homs));
}

std::string serialize_tuple(const SplittingTuple& t) {
    std::ostringstream out;
    out << "flavor = " << flavor_name(t.flavor) << "\n";
    for (int i = 0; i < t.arity(); ++i) {
        out << "[phi" << (i + 1) << "]\n";
        out << serialize_hom(t.homs[i]);
    }
    return out.str();
}

namespace {

Json component_to_json(const Component& c) {
    Json j;
    j["id"] = c.id;
    j["kind"] = c.kind == ComponentKind::Closed ? "closed" : "arc";
    j["letter"] = c.letter.str();
    if (c.endpoints) j["endpoints"] = {c.endpoints->first, c.endpoints->second};
    return j;
}

}  // namespace

Json diagram_to_json(const Diagram& d) {
    Json j;
    j["genus"] = d.sig.genus;
    j["bridges"] = d.sig.bridges;
    j["components"] = Json::array();
    for (const auto& c : d.components) j["components"].push_back(component_to_json(c));
    j["dashes"] = Json::array();
    for (const auto& dash : d.dashes) {
        Json dj;
        dj["owner"] = dash.owner.str();
        dj["pos"] = dash.pos;
        dj["letter"] = dash.letter.str();
        dj["sign"] = static_cast<int>(dash.sign);
        dj["component"] = dash.component;
        j["dashes"].push_back(dj);
    }
    j["bands"] = Json::array();
    for (const auto& band : d.bands) {
        Json bj;
        bj["from"] = band.from;
        bj["to"] = band.to;
        bj["result"] = band.result;
        bj["case"] = band.ocase == OrientCase::I ? "I" : "II";
        j["bands"].push_back(bj);
    }
    return j;
}

namespace {

Json arcs_to_json(const ArcStructure& a) {
    Json j;
    j["w1"] = a.w1;
    j["w2"] = a.w2;
    j["iface"] = a.iface;
    j["boundary"] = a.boundary;
    j["loops"] = Json::array();
    for (const auto& lr : a.loops) {
        Json lj;
        lj["middle"] = lr.middle;
        lj["pairs"] = lr.pairs;
        j["loops"].push_back(lj);
    }
    j["prelimComponents"] = a.prelimComponents;
    return j;
}

ArcStructure arcs_from_json(const Json& j) {
    ArcStructure a;
    a.w1 = j.at("w1").get<std::vector<std::pair<int32_t, int32_t>>>();
    a.w2 = j.at("w2").get<std::vector<std::pair<int32_t, int32_t>>>();
    a.iface = j.at("iface").get<std::vector<std::pair<int32_t, int32_t>>>();
    a.boundary = j.at("boundary").get<std::vector<int32_t>>();
    for (const auto& lj : j.at("loops")) {
        ArcStructure::LoopResolution lr;
        lr.middle = lj.at("middle").get<int32_t>();
        lr.pairs = lj.at("pairs").get<std::vector<std::pair<int32_t, int32_t>>>();
        a.loops.push_back(std::move(lr));
    }
    a.prelimComponents = j.at("prelimComponents").get<std::vector<int32_t>>();
    return a;
}

}  // namespace

Json realization_to_json(const RealizationResult& r) {
    Json j = diagram_to_json(r.diagram);
    Json trace;
    trace["bandCount"] = r.bandCount;
    Json prelim;
    prelim["closed"] = Json::array();
    for (const auto& [g, n] : r.preliminaryCensus.closed)
        prelim["closed"].push_back({g.str(), n});
    prelim["arcs"] = Json::array();
    for (const auto& [g, n] : r.preliminaryCensus.arcs) prelim["arcs"].push_back({g.str(), n});
    trace["preliminary"] = prelim;
    trace["folds"] = Json::array();
    for (const auto& rec : r.foldTrace) {
        Json fj;
        fj["kind"] = rec.kind == FoldKind::TypeI ? "I" : "II";
        fj["edges"] = {rec.e1, rec.e2};
        fj["survivor"] = rec.survivor;
        fj["tags"] = {rec.tag1, rec.tag2};
        fj["case"] = rec.ocase == OrientCase::I ? "I" : "II";
        trace["folds"].push_back(fj);
    }
    if (r.diagram.arcs) trace["arcs"] = arcs_to_json(*r.diagram.arcs);
    j["trace"] = trace;
    return j;
}

Diagram diagram_from_json(const Json& j) {
    Diagram d;
    try {
        d.sig.genus = j.at("genus").get<int>();
        d.sig.bridges = j.at("bridges").get<int>();
        for (const auto& cj : j.at("components")) {
            Component c;
            c.id = cj.at("id").get<int32_t>();
            std::string kind = cj.at("kind").get<std::string>();
            if (kind != "closed" && kind != "arc")
                throw ParseError("bad component kind '" + kind + "'");
            c.kind = kind == "closed" ? ComponentKind::Closed : ComponentKind::Arc;
            c.letter = parse_gen_name(cj.at("letter").get<std::string>());
            if (cj.contains("endpoints"))
                c.endpoints = {cj["endpoints"][0].get<int>(), cj["endpoints"][1].get<int>()};
            if (c.kind == ComponentKind::Arc && !c.endpoints)
                throw ParseError("arc component without endpoints");
            d.components.push_back(c);
        }
        for (const auto& dj : j.at("dashes")) {
            Dash dash;
            dash.owner = parse_gen_name(dj.at("owner").get<std::string>());
            dash.pos = dj.at("pos").get<int32_t>();
            dash.letter = parse_gen_name(dj.at("letter").get<std::string>());
            int s = dj.at("sign").get<int>();
            if (s != 1 && s != -1) throw ParseError("dash sign must be 1 or -1");
            dash.sign = static_cast<int8_t>(s);
            dash.component = dj.at("component").get<int32_t>();
            d.dashes.push_back(dash);
        }
        if (j.contains("bands"))
            for (const auto& bj : j.at("bands")) {
                BandEvent b;
                b.from = bj.at("from").get<int32_t>();
                b.to = bj.at("to").get<int32_t>();
                b.result = bj.at("result").get<int32_t>();
                b.ocase = bj.at("case").get<std::string>() == "I" ? OrientCase::I : OrientCase::II;
                d.bands.push_back(b);
            }
        if (j.contains("trace") && j["trace"].contains("arcs"))
            d.arcs = arcs_from_json(j["trace"]["arcs"]);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad diagram JSON: ") + e.what());
    }
    // Positions along each owner must be consecutive 0..k-1.
    std::map<Gen, std::set<int32_t>> positions;
    for (const auto& dash : d.dashes) {
        if (!positions[dash.owner].insert(dash.pos).second)
            throw ParseError("duplicate dash position on owner " + dash.owner.str());
    }
    for (const auto& [owner, ps] : positions)
        if (*ps.begin() != 0 || *ps.rbegin() != static_cast<int32_t>(ps.size()) - 1)
            throw ParseError("dash positions on " + owner.str() + " are not consecutive");
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

}  // namespace tf
