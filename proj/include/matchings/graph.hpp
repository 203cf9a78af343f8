#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace matchings {

using VertexId = std::int32_t;

struct Edge {
    VertexId u, v;  // loop when u == v
    bool is_loop() const { return u == v; }
};

// Undirected multigraph with stable vertex ids. Ids are never reused within a
// graph's lineage: surgeries hand their id counter to the derived graph, so a
// contraction vertex always gets a fresh id. Loops and parallel edges are
// stored as instances; matching-level queries collapse parallels and ignore
// loops. Treat a Graph as immutable once built; surgeries return new graphs.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);  // vertices 0..n-1, no edges

    VertexId add_vertex(const std::string& label = {});
    void add_edge(VertexId u, VertexId v);

    bool has_vertex(VertexId v) const;
    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    std::vector<VertexId> vertices() const;  // sorted
    const std::vector<Edge>& edges() const { return edges_; }

    // distinct non-loop neighbours, sorted
    std::vector<VertexId> neighbors(VertexId v) const;
    // edge-instance count at v; loops count twice
    int degree(VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;  // non-loop pair adjacency
    int multiplicity(VertexId u, VertexId v) const;

    const std::string& label(VertexId v) const;
    void set_label(VertexId v, const std::string& label);
    std::optional<VertexId> find_label(const std::string& label) const;
    // resolves either a label or a decimal vertex id
    VertexId resolve(const std::string& name) const;

    [[nodiscard]] Graph delete_vertices(const std::vector<VertexId>& vs) const;
    [[nodiscard]] Graph induced(const std::vector<VertexId>& keep) const;
    // same vertices (ids and labels kept), edge multiset replaced
    [[nodiscard]] Graph with_edge_set(
        const std::vector<std::pair<VertexId, VertexId>>& es) const;

    struct QuotientResult;
    // Deletes the listed edge instances of the subgraph H, then contracts H's
    // vertex set to one fresh vertex. Surviving edges with both endpoints in H
    // become loops; edges with one endpoint in H are re-targeted. |E| drops by
    // exactly |edges_of_H|.
    QuotientResult quotient(const std::vector<VertexId>& h_vertices,
                            const std::vector<std::pair<VertexId, VertexId>>& h_edges) const;

    std::vector<std::vector<VertexId>> connected_components() const;

private:
    void check_vertex(VertexId v) const;

    VertexId next_id_ = 0;
    int num_vertices_ = 0;
    std::vector<char> present_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> edge_ids_at_;  // loops listed once
};

struct Graph::QuotientResult {
    Graph graph;
    VertexId contracted;  // the fresh vertex standing for H
};

// A matching over vertex pairs (never edge instances, never loops).
// Canonical form: each pair (u,v) with u < v, pairs sorted.
class Matching {
public:
    Matching() = default;
    static Matching from_pairs(std::vector<std::pair<VertexId, VertexId>> pairs);

    int size() const { return static_cast<int>(pairs_.size()); }
    const std::vector<std::pair<VertexId, VertexId>>& pairs() const { return pairs_; }
    bool covers(VertexId v) const;
    // -1 when unmatched
    VertexId partner(VertexId v) const;
    bool contains_pair(VertexId u, VertexId v) const;

    Matching with_pair(VertexId u, VertexId v) const;
    Matching without_pair(VertexId u, VertexId v) const;

    // pairs are non-loop edges of g with all endpoints present and disjoint
    bool valid_for(const Graph& g) const;
    // present vertices of g not covered, sorted
    std::vector<VertexId> holes(const Graph& g) const;

    bool operator==(const Matching& o) const { return pairs_ == o.pairs_; }
    bool operator<(const Matching& o) const { return pairs_ < o.pairs_; }

private:
    std::vector<std::pair<VertexId, VertexId>> pairs_;
};

// Hole pattern of a state of Omega: perfect, or an unordered hole pair.
struct HolePattern {
    VertexId a = -1, b = -1;  // perfect: (-1,-1); near: a < b

    static HolePattern perfect() { return {}; }
    static HolePattern near(VertexId u, VertexId v);
    bool is_perfect() const { return a < 0; }

    bool operator==(const HolePattern& o) const { return a == o.a && b == o.b; }
    bool operator!=(const HolePattern& o) const { return !(*this == o); }
    bool operator<(const HolePattern& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

// Throws std::invalid_argument("not in Omega: ...") unless M has 0 or 2 holes.
HolePattern hole_pattern(const Graph& g, const Matching& m);

std::string to_string(const HolePattern& p);

}  // namespace matchings
