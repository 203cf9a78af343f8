#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "matchings/exact_count.hpp"
#include "matchings/graph.hpp"

namespace matchings {

// picks the pivot vertex the recursion removes first; the choice never
// affects the counted value, only the recursion tree
class PivotStrategy {
public:
    PivotStrategy();  // same as first()

    static PivotStrategy first();  // lowest vertex id
    // prefer vertices carrying one of the given labels; fall back to
    // balanced() when none remain
    static PivotStrategy named_first(std::vector<std::string> labels);
    // below the threshold, pick the pivot minimizing the largest
    // factor-critical component left behind; above it, lowest id
    static PivotStrategy balanced(int threshold = 48);
    static PivotStrategy custom(std::function<VertexId(const Graph&)> f);

    VertexId choose(const Graph& g) const;

private:
    std::function<VertexId(const Graph&)> choose_;
};

enum class PermanentBackend { Enumeration, Ryser, External };

using ExternalPermanent =
    std::function<Rational(const BipartiteWeighted&, double eps)>;

// test hook standing in for a recursive sub-count: receives the sub-instance
// and its accuracy budget and returns a value promised to lie within that
// budget; lets tests stress the error composition without a stochastic backend
using SubcountOverride = std::function<Rational(const Graph&, double eps)>;

struct RecursionStats {
    long calls = 0;
    int max_depth = 0;
    int largest_permanent = 0;  // biggest bipartite instance handed off
};

struct RecursionOptions {
    PivotStrategy pivot;
    PermanentBackend backend = PermanentBackend::Enumeration;
    ExternalPermanent external;          // required when backend is External
    SubcountOverride subcount_override;  // testing only
    RecursionStats* stats = nullptr;
};

// counts perfect matchings by recursively splitting along the decomposition
// of G - pivot and finishing with a weighted permanent; exact backends give
// the exact count, approximate ones stay within relative eps
CountEstimate recursive_count(const Graph& g, double eps,
                              const RecursionOptions& opt = {});

// weighted multigraph left after exhaustively eliminating vertices with at
// most two distinct neighbours; edge weights are parallel-edge multiplicities
struct ContractedMultigraph {
    std::vector<VertexId> vertices;  // remnant, sorted; min degree >= 3
    std::vector<std::tuple<VertexId, VertexId, BigInt>> edges;  // u < v
    BigInt forced{1};        // multiplicity factor fixed by forced edges
    bool impossible = false; // some vertex ran out of neighbours: count is 0

    BigInt degree(VertexId v) const;  // multiplicity-weighted
    BigInt degree_sum() const;
    BigInt count() const;  // forced * weighted matching count of the remnant
};

ContractedMultigraph contract_degree_two(const Graph& g);

// exact number of perfect matchings of h - v for factor-critical h, via the
// degree-2 contraction; cheap whenever h has few ears
BigInt fc_exact_count_minus_v(const Graph& h, VertexId v);

// the recursion specialised to graphs whose factor-critical subgraphs have
// few ears: restrict to edges lying in some perfect matching, split into
// components, and replace the recursive sub-counts by exact contractions
CountEstimate fpt_count(const Graph& g, double eps, int k_max,
                        PermanentBackend backend = PermanentBackend::Enumeration,
                        const ExternalPermanent& external = {});

}  // namespace matchings
