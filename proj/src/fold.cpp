#include "tangleforge/fold.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tf {

int32_t FoldGraph::new_vertex() {
    vertex_alive_.push_back(1);
    adj_.emplace_back();
    ++alive_vertices_;
    return static_cast<int32_t>(vertex_alive_.size()) - 1;
}

void FoldGraph::attach(const Edge& e) {
    adj_[e.src][e.color].out.insert(e.id);
    adj_[e.dst][e.color].in.insert(e.id);
}

void FoldGraph::detach(const Edge& e) {
    auto scrub = [&](int32_t v) {
        auto it = adj_[v].find(e.color);
        if (it == adj_[v].end()) return;
        it->second.out.erase(e.id);
        it->second.in.erase(e.id);
        if (it->second.out.empty() && it->second.in.empty()) adj_[v].erase(it);
    };
    scrub(e.src);
    scrub(e.dst);
}

FoldGraph FoldGraph::wedge(const std::vector<Word>& words) {
    std::vector<std::pair<Word, std::vector<int32_t>>> tagged;
    tagged.reserve(words.size());
    for (const auto& w : words)
        tagged.emplace_back(w, std::vector<int32_t>(w.size(), kUntagged));
    return wedge_tagged(tagged);
}

FoldGraph FoldGraph::wedge_tagged(
    const std::vector<std::pair<Word, std::vector<int32_t>>>& words) {
    FoldGraph g;
    g.new_vertex();  // basepoint 0
    for (const auto& [w, tags] : words) {
        if (w.empty()) throw Error("wedge_from_words: empty word rejected");
        if (tags.size() != w.size()) throw Error("wedge_from_words: tag count mismatch");
        int32_t cur = 0;
        const auto& ls = w.letters();
        for (size_t k = 0; k < ls.size(); ++k) {
            int32_t next = (k + 1 == ls.size()) ? 0 : g.new_vertex();
            Edge e;
            e.id = static_cast<int32_t>(g.edges_.size());
            e.color = ls[k].gen;
            e.tag = tags[k];
            e.alive = true;
            if (ls[k].sign > 0) {
                e.src = cur;
                e.dst = next;
            } else {
                e.src = next;
                e.dst = cur;
            }
            g.edges_.push_back(e);
            g.attach(e);
            ++g.alive_edges_;
            cur = next;
        }
    }
    return g;
}

std::vector<int32_t> FoldGraph::alive_edge_ids() const {
    std::vector<int32_t> out;
    for (const auto& e : edges_)
        if (e.alive) out.push_back(e.id);
    return out;
}

std::optional<std::pair<std::pair<int32_t, int32_t>, OrientCase>> FoldGraph::best_pair_at(
    int32_t v, const Gen& c) const {
    auto it = adj_[v].find(c);
    if (it == adj_[v].end()) return std::nullopt;
    const auto& b = it->second;
    std::optional<std::pair<int32_t, int32_t>> outPair, inPair;
    if (b.out.size() >= 2) {
        auto i = b.out.begin();
        int32_t a = *i++;
        outPair = std::make_pair(a, *i);
    }
    if (b.in.size() >= 2) {
        auto i = b.in.begin();
        int32_t a = *i++;
        inPair = std::make_pair(a, *i);
    }
    if (outPair && (!inPair || *outPair <= *inPair))
        return std::make_pair(*outPair, OrientCase::II);
    if (inPair) return std::make_pair(*inPair, OrientCase::I);
    return std::nullopt;
}

std::optional<std::pair<int32_t, int32_t>> FoldGraph::find_fold() const {
    for (int32_t v = 0; v < static_cast<int32_t>(adj_.size()); ++v) {
        if (!vertex_alive_[v]) continue;
        for (const auto& [c, buckets] : adj_[v]) {
            (void)buckets;
            if (auto best = best_pair_at(v, c)) return best->first;
        }
    }
    return std::nullopt;
}

std::vector<std::pair<int32_t, int32_t>> FoldGraph::eligible_pairs() const {
    std::set<std::pair<int32_t, int32_t>> pairs;
    for (int32_t v = 0; v < static_cast<int32_t>(adj_.size()); ++v) {
        if (!vertex_alive_[v]) continue;
        for (const auto& [c, b] : adj_[v]) {
            for (auto i = b.out.begin(); i != b.out.end(); ++i)
                for (auto j = std::next(i); j != b.out.end(); ++j) pairs.insert({*i, *j});
            for (auto i = b.in.begin(); i != b.in.end(); ++i)
                for (auto j = std::next(i); j != b.in.end(); ++j) pairs.insert({*i, *j});
        }
    }
    return {pairs.begin(), pairs.end()};
}

FoldRecord FoldGraph::fold_once(std::pair<int32_t, int32_t> pair) {
    auto [x, y] = pair;
    if (x > y) std::swap(x, y);
    if (x < 0 || y >= static_cast<int32_t>(edges_.size()) || x == y)
        throw Error("fold_once: bad edge pair");
    Edge& ea = edges_[x];
    Edge& eb = edges_[y];
    if (!ea.alive || !eb.alive) throw Error("fold_once: dead edge in pair");
    if (ea.color != eb.color) throw Error("fold_once: colors differ");

    // Locate the smallest shared vertex at which the edges are co-oriented.
    std::set<int32_t> verts{ea.src, ea.dst, eb.src, eb.dst};
    std::optional<int32_t> shared;
    OrientCase ocase = OrientCase::II;
    for (int32_t v : verts) {
        bool out1 = ea.src == v, in1 = ea.dst == v;
        bool out2 = eb.src == v, in2 = eb.dst == v;
        if (out1 && out2) {
            shared = v;
            ocase = OrientCase::II;
            break;
        }
        if (in1 && in2) {
            shared = v;
            ocase = OrientCase::I;
            break;
        }
    }
    if (!shared) throw Error("fold_once: edges not co-oriented at a shared vertex");
    int32_t v = *shared;
    auto other = [&](const Edge& e) { return e.src == v ? e.dst : e.src; };
    int32_t o1 = other(ea), o2 = other(eb);

    FoldRecord rec;
    rec.e1 = x;
    rec.e2 = y;
    rec.survivor = x;
    rec.tag1 = ea.tag;
    rec.tag2 = eb.tag;
    rec.ocase = ocase;
    rec.kind = (o1 == o2) ? FoldKind::TypeI : FoldKind::TypeII;

    // Surviving edge keeps the smaller tag (untagged loses to any real tag).
    int32_t t1 = ea.tag, t2 = eb.tag;
    int32_t keepTag = (t1 == kUntagged) ? t2 : (t2 == kUntagged ? t1 : std::min(t1, t2));

    if (rec.kind == FoldKind::TypeII) {
        int32_t keep = std::min(o1, o2), dying = std::max(o1, o2);
        // Relink every edge at the dying vertex.
        std::map<Gen, Buckets> moved;
        std::swap(moved, adj_[dying]);
        for (auto& [c, b] : moved) {
            for (int32_t id : b.out) {
                Edge& e = edges_[id];
                detach(e);
                if (e.src == dying) e.src = keep;
                if (e.dst == dying) e.dst = keep;
                attach(e);
            }
            for (int32_t id : b.in) {
                Edge& e = edges_[id];
                if (e.dst != dying && e.src != dying) continue;  // already relinked
                detach(e);
                if (e.src == dying) e.src = keep;
                if (e.dst == dying) e.dst = keep;
                attach(e);
            }
        }
        vertex_alive_[dying] = 0;
        --alive_vertices_;
    }

    detach(eb);
    eb.alive = false;
    --alive_edges_;
    edges_[x].tag = keepTag;
    return rec;
}

std::vector<FoldRecord> FoldGraph::fold_to_core() {
    std::vector<FoldRecord> records;
    std::set<std::pair<int32_t, Gen>> dirty;
    for (int32_t v = 0; v < static_cast<int32_t>(adj_.size()); ++v) {
        if (!vertex_alive_[v]) continue;
        for (const auto& [c, b] : adj_[v]) {
            (void)b;
            dirty.insert({v, c});
        }
    }
    while (!dirty.empty()) {
        auto [v, c] = *dirty.begin();
        if (!vertex_alive_[v]) {
            dirty.erase(dirty.begin());
            continue;
        }
        auto best = best_pair_at(v, c);
        if (!best) {
            dirty.erase(dirty.begin());
            continue;
        }
        FoldRecord rec = fold_once(best->first);
        records.push_back(rec);
        const Edge& s = edges_[rec.survivor];
        for (int32_t w : {v, s.src, s.dst}) {
            if (w < 0 || !vertex_alive_[w]) continue;
            for (const auto& [cc, bb] : adj_[w]) {
                (void)bb;
                dirty.insert({w, cc});
            }
        }
    }
    assert(!find_fold());
    return records;
}

std::vector<FoldRecord> FoldGraph::fold_random(std::mt19937_64& rng) {
    std::vector<FoldRecord> records;
    for (;;) {
        auto pairs = eligible_pairs();
        if (pairs.empty()) break;
        std::uniform_int_distribution<size_t> pick(0, pairs.size() - 1);
        records.push_back(fold_once(pairs[pick(rng)]));
    }
    return records;
}

bool FoldGraph::is_rose_on(const std::vector<Gen>& gens) const {
    if (alive_vertices_ != 1 || !vertex_alive_[0]) return false;
    std::multiset<Gen> seen;
    for (const auto& e : edges_) {
        if (!e.alive) continue;
        if (e.src != 0 || e.dst != 0) return false;
        seen.insert(e.color);
    }
    std::multiset<Gen> want(gens.begin(), gens.end());
    return seen == want;
}

std::string FoldGraph::canonical_signature() const {
    // BFS numbering from the basepoint, following transitions sorted by
    // (color, direction). Valid as a canonical form only once folded, when
    // each vertex has at most one in- and one out-edge per color.
    assert(!find_fold());
    std::map<int32_t, int32_t> number{{0, 0}};
    std::vector<int32_t> queue{0};
    std::ostringstream sig;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int32_t v = queue[qi];
        for (const auto& [c, b] : adj_[v]) {
            for (bool outDir : {true, false}) {
                const auto& bucket = outDir ? b.out : b.in;
                for (int32_t id : bucket) {
                    const Edge& e = edges_[id];
                    int32_t w = outDir ? e.dst : e.src;
                    if (!number.count(w)) {
                        number[w] = static_cast<int32_t>(queue.size());
                        queue.push_back(w);
                    }
                    sig << number[v] << (outDir ? '>' : '<') << c.str() << number[w] << ';';
                }
            }
        }
    }
    sig << "|v" << alive_vertices_ << "e" << alive_edges_;
    return sig.str();
}

bool generates_full_on(const std::vector<Word>& words, const std::vector<Gen>& gens) {
    std::vector<Word> nonempty;
    for (const auto& w : words)
        if (!w.empty()) nonempty.push_back(w);
    std::set<Gen> present;
    for (const auto& w : nonempty)
        for (const auto& l : w.letters()) present.insert(l.gen);
    std::set<Gen> expected(gens.begin(), gens.end());
    for (const auto& g : present)
        if (!expected.count(g))
            throw Error("generates_full: word uses generator '" + g.str() +
                        "' outside the expected set");
    if (present.size() < expected.size()) return false;
    if (nonempty.empty()) return expected.empty();
    FoldGraph g = FoldGraph::wedge(nonempty);
    g.fold_to_core();
    return g.is_rose_on(gens);
}

bool generates_full(const std::vector<Word>& words, int rank) {
    if (rank < 0) throw Error("generates_full: negative rank");
    std::set<Gen> present;
    for (const auto& w : words)
        for (const auto& l : w.letters()) present.insert(l.gen);
    if (static_cast<int>(present.size()) > rank)
        throw Error("generates_full: words mention more than `rank` generators");
    if (static_cast<int>(present.size()) < rank) return false;
    return generates_full_on(words, {present.begin(), present.end()});
}

}  // namespace tf
