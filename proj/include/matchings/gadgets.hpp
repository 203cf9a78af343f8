#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matchings/graph.hpp"
#include "matchings/io.hpp"

namespace matchings {

struct GadgetGraph {
    Graph graph{0};
    std::map<std::string, VertexId> named;                 // label -> vertex
    std::map<std::string, std::vector<VertexId>> groups;   // e.g. H1..H4
    VertexId at(const std::string& label) const;           // throws if unknown
};

// path v0..v{2k-1} with a 3-path v{2i}, a{i}, b{i}, v{2i+1} across each even
// edge; 4k vertices, 2^k perfect matchings, unique endpoint-hole matching
GadgetGraph chain_of_boxes(int k);

// C12 with a chord a-b and four chains of boxes glued onto (w1,a), (a,z1),
// (w2,b), (b,z2); 16k+4 vertices, 2 perfect matchings, |N(u,v)| = 1
GadgetGraph torpid_gadget(int k);

// C12 with every third edge replaced by a torpid gadget copy H1..H4; the
// four passive vertices are t1..t4, and ui/vi name each copy's u/v
GadgetGraph counterexample_graph(int k);

// indices i (1-based) such that M restricted to H_i leaves exactly u_i, v_i
// uncovered within H_i; throws when M is not in the state space
std::set<int> classify_S(const GadgetGraph& gk, const Matching& m);

// matching instance whose blossoms through the hole w correspond to s-t paths
// of the digraph, amplified by 2^(k*ell) per path of k vertices when ell >= 1
struct ReductionResult {
    Graph graph{0};
    Matching matching;
    VertexId w = -1;
    std::optional<VertexId> r;  // isolated second hole, on request
    std::map<std::string, VertexId> named;
};

ReductionResult blossom_reduction(const Digraph& h, int s, int t, int ell,
                                  bool with_second_hole = false);

}  // namespace matchings
