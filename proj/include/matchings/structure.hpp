#pragma once

#include <optional>
#include <vector>

#include "matchings/graph.hpp"

namespace matchings {

// deterministic maximum-cardinality matching: augmenting-path search with
// blossom contraction, exposed roots processed in increasing id, breadth-first
Matching maximum_matching(const Graph& g);

struct GallaiEdmonds {
    std::vector<VertexId> D;  // unmatched in at least one maximum matching
    std::vector<VertexId> A;  // outside D, adjacent to D
    std::vector<VertexId> C;  // the rest
    std::vector<std::vector<VertexId>> D_components;  // components of G[D]
    Matching witness;         // the maximum matching found along the way
};

GallaiEdmonds gallai_edmonds(const Graph& g);

// true iff G - v has a perfect matching for every vertex v (checked directly)
bool is_factor_critical(const Graph& g);

// a factor-critical graph decomposes as a single base vertex plus odd ears;
// each ear is stored as a vertex walk whose endpoints lie in the part built
// so far and whose interior vertices are new
struct EarDecomposition {
    VertexId base = -1;
    std::vector<std::vector<VertexId>> ears;
    int order = 0;  // = ears.size()
};

// witness decomposition; throws if not factor-critical or base unknown
EarDecomposition fc_ear_decomposition(const Graph& g,
                                      std::optional<VertexId> base = {});

// the ear count r, identical for every decomposition; computed from the
// degree identity sum(d_u - 2) = 2(r - 1) and cross-checked by a witness
int fc_order(const Graph& g);

// edges (as vertex pairs) contained in at least one perfect matching;
// empty when G has no perfect matching
std::vector<Edge> allowed_edges(const Graph& g);

}  // namespace matchings
