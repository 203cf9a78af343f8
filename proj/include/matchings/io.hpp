#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "matchings/graph.hpp"

namespace matchings {

// Interchange format:
//   # comment (also allowed at end of line)
//   p <n> <m>
//   <u> <v>          (m edge lines, ids in 0..n-1)
//   l <v> <label>    (optional label lines)
// Whitespace-tolerant. The writer renumbers to contiguous ids in sorted order
// and emits label lines for labelled vertices.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

// Arc-list form for the reduction input (never enters Graph):
//   d <n> <m>
//   <u> <v>          (arc u -> v)
struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
};
Digraph read_digraph(std::istream& in);
Digraph read_digraph_file(const std::string& path);

// One "u v" pair per line; tokens may be labels or ids of g.
Matching read_matching(std::istream& in, const Graph& g);

}  // namespace matchings
