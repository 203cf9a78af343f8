#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "matchings/graph.hpp"

namespace matchings {

// Odd alternating cycle through an uncovered vertex: cycle[0] is the hole,
// edges (cycle[1],cycle[2]), (cycle[3],cycle[4]), ... are matched, the rest
// (including the closing edge back to the hole) are not. Canonical direction:
// cycle[1] < cycle.back().
struct Blossom {
    std::vector<VertexId> cycle;

    int length() const { return static_cast<int>(cycle.size()); }
    int matched_edges() const { return (length() - 1) / 2; }
    std::vector<std::pair<VertexId, VertexId>> edges() const;
};

struct BlossomList {
    std::vector<Blossom> blossoms;  // sorted by (length, vertex sequence)
    bool truncated = false;         // enumeration stopped at the cap
};

// all blossoms of m through the uncovered vertex hole; simple-cycle DFS, so
// intended for moderate instances
BlossomList enumerate_blossoms(const Graph& g, const Matching& m, VertexId hole,
                               std::size_t cap = 1'000'000);

// toggles the even-length alternating arc from the hole to v, moving the hole
// onto v; v == hole returns m unchanged. v must lie on the cycle.
Matching rotate(const Graph& g, const Matching& m, const Blossom& b, VertexId v);

// shortest blossom through hole, lexicographically smallest among that
// length; found by iterative deepening, so cheap even when the full blossom
// count is astronomical
std::optional<Blossom> minimum_blossom(const Graph& g, const Matching& m,
                                       VertexId hole);

}  // namespace matchings
