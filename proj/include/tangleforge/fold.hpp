#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tangleforge/words.hpp"

namespace tf {

enum class FoldKind : uint8_t { TypeI, TypeII };
enum class OrientCase : uint8_t { I, II };  // I: both into shared vertex, II: both out

struct FoldRecord {
    FoldKind kind;
    int32_t e1, e2;  // folded edge ids, e1 < e2
    int32_t survivor;
    int32_t tag1, tag2;  // component tags of e1, e2 at fold time
    OrientCase ocase;
};

// Directed graph with letter-colored, component-tagged edges; the folding
// state machine. Vertex 0 is the basepoint.
class FoldGraph {
public:
    static constexpr int32_t kUntagged = -1;

    struct Edge {
        int32_t id, src, dst;
        Gen color;
        int32_t tag;
        bool alive;
    };

    // Wedge of subdivided circles spelling the given words. Rejects empty words.
    static FoldGraph wedge(const std::vector<Word>& words);
    // Same, with a component tag per letter of each word.
    static FoldGraph wedge_tagged(const std::vector<std::pair<Word, std::vector<int32_t>>>& words);

    int edge_count() const { return alive_edges_; }
    int vertex_count() const { return alive_vertices_; }
    const Edge& edge(int32_t id) const { return edges_.at(id); }
    std::vector<int32_t> alive_edge_ids() const;

    // Least eligible pair under (shared vertex id, color, edge ids), or none.
    std::optional<std::pair<int32_t, int32_t>> find_fold() const;
    // Every currently eligible pair (for randomized fold-order tests).
    std::vector<std::pair<int32_t, int32_t>> eligible_pairs() const;

    FoldRecord fold_once(std::pair<int32_t, int32_t> pair);
    std::vector<FoldRecord> fold_to_core();
    std::vector<FoldRecord> fold_random(std::mt19937_64& rng);

    // True iff the graph is the rose whose basepoint loops carry exactly `gens`.
    bool is_rose_on(const std::vector<Gen>& gens) const;

    // Canonical form of a fully folded graph as a rooted, colored digraph.
    std::string canonical_signature() const;

private:
    struct Buckets {
        std::set<int32_t> out, in;
    };

    std::vector<Edge> edges_;
    std::vector<char> vertex_alive_;
    std::vector<std::map<Gen, Buckets>> adj_;
    int alive_edges_ = 0;
    int alive_vertices_ = 0;

    int32_t new_vertex();
    void attach(const Edge& e);
    void detach(const Edge& e);
    std::optional<std::pair<std::pair<int32_t, int32_t>, OrientCase>> best_pair_at(
        int32_t v, const Gen& c) const;
};

// Stallings generation test: true iff the words generate the free group on the
// `rank` distinct generators they mention. Words over more than `rank` distinct
// generators are rejected.
bool generates_full(const std::vector<Word>& words, int rank);
bool generates_full_on(const std::vector<Word>& words, const std::vector<Gen>& gens);

}  // namespace tf
