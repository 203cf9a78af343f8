#pragma once

// Brute-force oracles and generators shared by the test binaries. Everything
// here recomputes from first principles, independent of the library's
// algorithms, so agreement is meaningful.

#include <algorithm>
#include <random>
#include <vector>

#include "matchings/exact_count.hpp"
#include "matchings/graph.hpp"
#include "matchings/io.hpp"

namespace oracles {

using matchings::BigInt;
using matchings::Graph;
using matchings::VertexId;

inline Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph complete_bipartite(int a, int b) {
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

inline Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

inline Graph random_graph(std::mt19937& rng, int n, int percent) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (static_cast<int>(rng() % 100) < percent) g.add_edge(i, j);
    return g;
}

inline matchings::Digraph random_digraph(std::mt19937& rng, int n, int percent) {
    matchings::Digraph d;
    d.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && static_cast<int>(rng() % 100) < percent)
                d.arcs.emplace_back(i, j);
    return d;
}

// dense 0/1 adjacency over contiguous slots, the form the brute recursions use
struct DenseAdj {
    std::vector<VertexId> ids;
    std::vector<std::vector<char>> adj;

    explicit DenseAdj(const Graph& g) : ids(g.vertices()) {
        int n = static_cast<int>(ids.size());
        adj.assign(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (g.adjacent(ids[i], ids[j])) adj[i][j] = adj[j][i] = 1;
    }
};

inline BigInt brute_perfect_rec(const DenseAdj& d, std::vector<char>& used) {
    int n = static_cast<int>(d.ids.size());
    int first = -1;
    for (int i = 0; i < n; ++i)
        if (!used[i]) { first = i; break; }
    if (first < 0) return 1;
    BigInt total = 0;
    used[first] = 1;
    for (int j = first + 1; j < n; ++j) {
        if (used[j] || !d.adj[first][j]) continue;
        used[j] = 1;
        total += brute_perfect_rec(d, used);
        used[j] = 0;
    }
    used[first] = 0;
    return total;
}

// number of perfect matchings, by direct branching on the lowest open slot
inline BigInt brute_count_perfect(const Graph& g) {
    if (g.num_vertices() % 2) return 0;
    DenseAdj d(g);
    std::vector<char> used(d.ids.size(), 0);
    return brute_perfect_rec(d, used);
}

inline BigInt brute_count_near(const Graph& g, VertexId u, VertexId v) {
    return brute_count_perfect(g.delete_vertices({u, v}));
}

inline int brute_nu_rec(const DenseAdj& d, std::vector<char>& used, int from) {
    int n = static_cast<int>(d.ids.size());
    int first = -1;
    for (int i = from; i < n; ++i)
        if (!used[i]) { first = i; break; }
    if (first < 0) return 0;
    used[first] = 1;
    int best = brute_nu_rec(d, used, first + 1);  // leave `first` uncovered
    for (int j = first + 1; j < n; ++j) {
        if (used[j] || !d.adj[first][j]) continue;
        used[j] = 1;
        best = std::max(best, 1 + brute_nu_rec(d, used, first + 1));
        used[j] = 0;
    }
    used[first] = 0;
    return best;
}

// maximum matching size, exhaustive
inline int brute_nu(const Graph& g) {
    DenseAdj d(g);
    std::vector<char> used(d.ids.size(), 0);
    return brute_nu_rec(d, used, 0);
}

// vertices some maximum matching leaves uncovered: nu(G - v) == nu(G)
inline std::vector<VertexId> brute_D(const Graph& g) {
    std::vector<VertexId> out;
    int nu = brute_nu(g);
    for (VertexId v : g.vertices())
        if (brute_nu(g.delete_vertices({v})) == nu) out.push_back(v);
    return out;
}

// simple s-t paths of a digraph on <= 30 vertices, DFS over a visited mask
inline long count_st_paths(const matchings::Digraph& d, int s, int t) {
    std::vector<std::vector<int>> out(d.n);
    for (auto [a, b] : d.arcs) out[a].push_back(b);
    long total = 0;
    std::vector<std::pair<int, unsigned>> stack{{s, 1u << s}};
    while (!stack.empty()) {
        auto [v, mask] = stack.back();
        stack.pop_back();
        if (v == t) { ++total; continue; }
        for (int w : out[v])
            if (!(mask & (1u << w))) stack.emplace_back(w, mask | (1u << w));
    }
    return total;
}

}  // namespace oracles
