#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tangleforge/io.hpp"
#include "tangleforge/realize.hpp"
#include "tangleforge/svg.hpp"

namespace py = pybind11;
using namespace tf;

namespace {

Gen gen_of(const std::string& name) {
    auto ls = parse_letters(name);
    if (ls.size() != 1 || ls[0].sign != 1) throw ParseError("expected a generator name");
    return ls[0].gen;
}

std::map<Gen, Word> word_map(const std::map<std::string, std::string>& m) {
    std::map<Gen, Word> out;
    for (const auto& [k, v] : m) out[gen_of(k)] = Word::parse(v);
    return out;
}

py::dict bounding_dict(const BoundingReport& rep) {
    py::dict d;
    d["ok"] = rep.ok;
    d["surjective"] = rep.surjective;
    d["cond1"] = rep.cond1;
    d["cond2"] = rep.cond2;
    py::dict f, conj;
    for (const auto& [i, l] : rep.f)
        f[py::str("p" + std::to_string(i))] = Word::trusted({l}).str();
    for (const auto& [i, w] : rep.conjugators)
        conj[py::str("p" + std::to_string(i))] = w.str();
    d["f"] = f;
    d["conjugators"] = conj;
    d["failures"] = rep.failures;
    return d;
}

py::dict presentation_dict(const Presentation& p) {
    py::dict d;
    d["generators"] = p.gens;
    std::vector<std::string> rels;
    for (const auto& r : p.relators) rels.push_back(p.relator_str(r));
    d["relators"] = rels;
    AbelianInvariants ab = abelianization(p);
    py::dict a;
    a["free_rank"] = ab.freeRank;
    a["torsion"] = ab.torsion;
    d["abelianization"] = a;
    return d;
}

py::dict census_dict(const Census& c) {
    py::dict d;
    py::dict closed, arcs;
    for (const auto& [g, n] : c.closed) closed[py::str(g.str())] = n;
    for (const auto& [g, n] : c.arcs) arcs[py::str(g.str())] = n;
    d["closed"] = closed;
    d["arcs"] = arcs;
    d["endpoints"] = c.endpoints;
    return d;
}

std::string verdict_str(Verdict v) {
    return v == Verdict::Holds ? "holds" : (v == Verdict::Fails ? "fails" : "unknown");
}

}  // namespace

PYBIND11_MODULE(_tangleforge, m) {
    m.doc() = "Curve-and-arc realizations of free-group-valued surface homomorphisms";

    // Word algebra.
    m.def("reduce_word", [](const std::string& w) { return Word::parse(w).str(); });
    m.def("cyclic_reduce", [](const std::string& w) {
        auto [conj, core] = cyclic_reduce(Word::parse(w));
        return std::make_pair(conj.str(), core.str());
    });
    m.def("exponent_sum", [](const std::string& w, const std::string& g) {
        return exponent_sum(Word::parse(w), gen_of(g));
    });
    m.def("delete_letters", [](const std::string& w, const std::vector<std::string>& kill) {
        std::set<Gen> ks;
        for (const auto& k : kill) ks.insert(gen_of(k));
        return delete_letters(Word::parse(w), ks).str();
    });
    m.def("substitute", [](const std::string& w, const std::map<std::string, std::string>& im) {
        return substitute(Word::parse(w), word_map(im)).str();
    });
    m.def("is_conjugate", [](const std::string& a, const std::string& b) {
        return is_conjugate(Word::parse(a), Word::parse(b));
    });

    // Folding.
    m.def("generates_full", [](const std::vector<std::string>& ws, int rank) {
        std::vector<Word> words;
        for (const auto& w : ws) words.push_back(Word::parse(w));
        return generates_full(words, rank);
    });
    m.def("fold_words", [](const std::vector<std::string>& ws) {
        std::vector<Word> words;
        for (const auto& w : ws)
            if (!Word::parse(w).empty()) words.push_back(Word::parse(w));
        FoldGraph g = FoldGraph::wedge(words);
        py::dict d;
        d["edges_before"] = g.edge_count();
        auto recs = g.fold_to_core();
        d["edges_after"] = g.edge_count();
        d["folds"] = static_cast<int>(recs.size());
        return d;
    });

    // Surface homomorphisms.
    m.def("verify_hom", [](const std::string& text) { return verify_hom(parse_hom(text)); });
    m.def("verify_bounding",
          [](const std::string& text) { return bounding_dict(verify_bounding(parse_hom(text))); });
    m.def("associated_closed",
          [](const std::string& text) { return serialize_hom(associated_closed(parse_hom(text))); });

    // Realization.
    m.def("realize", [](const std::string& text) {
        RealizationResult res = realize(parse_hom(text));
        py::dict d;
        d["diagram"] = realization_to_json(res).dump(2) + "\n";
        d["band_count"] = res.bandCount;
        d["census"] = census_dict(component_census(res.diagram));
        d["preliminary_census"] = census_dict(res.preliminaryCensus);
        d["cut_system"] = is_cut_system(res.diagram);
        return d;
    });
    m.def("read_off", [](const std::string& diagramJson) {
        return serialize_hom(read_off(diagram_from_json(Json::parse(diagramJson))));
    });
    m.def("roundtrip", [](const std::string& text) {
        FreeTargetHom h = parse_hom(text);
        return read_off(realize(h).diagram) == h;
    });
    m.def("render_svg", [](const std::string& diagramJson) {
        return render_svg(diagram_from_json(Json::parse(diagramJson)));
    });

    // Splitting tuples.
    m.def("pushout", [](const std::string& text, int i, int j, long budget) {
        SplittingTuple t = parse_tuple(text);
        Presentation p = (i == 0 && j == 0) ? pushout_tuple(t) : pushout_pair(t, i, j);
        py::dict d = presentation_dict(p);
        Presentation s = simplify(p, budget);
        py::dict sd = presentation_dict(s);
        sd["free"] = s.relators.empty();
        d["simplified"] = sd;
        return d;
    }, py::arg("tuple"), py::arg("i") = 0, py::arg("j") = 0,
       py::arg("budget") = kDefaultSimplifyBudget);
    m.def("link_components", [](const std::string& text, int i, int j) {
        return link_components(parse_tuple(text), i, j);
    });
    m.def("surface_components",
          [](const std::string& text) { return surface_components(parse_tuple(text)); });
    m.def("euler_characteristic",
          [](const std::string& text) { return euler_characteristic(parse_tuple(text)); });
    m.def("is_spherical", [](const std::string& text) { return is_spherical(parse_tuple(text)); });
    m.def("verify_membership", [](const std::string& text, long budget) {
        SplittingTuple t = parse_tuple(text);
        ConditionVerdict v = verify_membership(t, t.flavor, budget);
        py::dict d;
        d["verdict"] = verdict_str(v.value);
        d["evidence"] = v.evidence;
        return d;
    }, py::arg("tuple"), py::arg("budget") = kDefaultSimplifyBudget);

    // Moves. Perturbations establish the normal form first, as the CLI does.
    m.def("move", [](const std::string& text, const std::string& kind, int side, int color,
                     const std::string& mode) {
        SplittingTuple t = parse_tuple(text);
        SplittingTuple out = t;
        if (kind == "s")
            out = (t.arity() == 2 && t.sig.bridges == 0) ? move_stabilize_heegaard(t)
                                                         : move_stabilize_genus(t);
        else if (kind == "sg")
            out = move_stabilize_genus(t);
        else if (kind == "sb1" || kind == "sb2" || kind == "sb3") {
            int which = kind[2] - '0';
            if (t.arity() == 2) {
                int s = side ? side : which;
                out = move_perturb(normalize_for_perturb(t, s), s);
            } else {
                int c = color ? color : which;
                PerturbMode pm = mode == "unshared" ? PerturbMode::Unshared : PerturbMode::Shared;
                out = move_perturb_triple(normalize_for_perturb_triple(t, c, pm), c, pm);
            }
        } else if (kind == "c")
            out = move_cyclic(t);
        else
            throw Error("unknown move kind '" + kind + "'");
        return serialize_tuple(out);
    }, py::arg("tuple"), py::arg("kind"), py::arg("side") = 0, py::arg("color") = 0,
       py::arg("mode") = "shared");
    m.def("move_target_automorphism",
          [](const std::string& text, int index, const std::map<std::string, std::string>& fwd,
             const std::map<std::string, std::string>& inv) {
              SplittingTuple t = parse_tuple(text);
              auto f = word_map(fwd), g = word_map(inv);
              for (Gen x : t.homs[0].target_generators()) {
                  if (!f.count(x)) f[x] = Word::trusted({{x, 1}});
                  if (!g.count(x)) g[x] = Word::trusted({{x, 1}});
              }
              return serialize_tuple(move_target_automorphism(t, index, f, g));
          });
    m.def("move_surface_automorphism",
          [](const std::string& text, const std::map<std::string, std::string>& fwd,
             const std::map<std::string, std::string>& inv) {
              SplittingTuple t = parse_tuple(text);
              auto f = word_map(fwd), g = word_map(inv);
              for (Gen x : t.homs[0].domain_generators()) {
                  if (!f.count(x)) f[x] = Word::trusted({{x, 1}});
                  if (!g.count(x)) g[x] = Word::trusted({{x, 1}});
              }
              return serialize_tuple(move_surface_automorphism(t, f, g));
          });

    // Translators run last-registered-first: the derived class goes second.
    py::register_exception<Error>(m, "TangleforgeError");
    py::register_exception<ParseError>(m, "TangleforgeParseError");
}
