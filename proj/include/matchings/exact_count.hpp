#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "matchings/graph.hpp"

namespace matchings {

using BigInt = mpz_class;
using Rational = mpq_class;

// exact() results carry no accuracy slack; otherwise the true value lies in
// [value/(1+eps), value*(1+eps)]
struct CountEstimate {
    Rational value;
    std::optional<double> eps;

    bool exact() const { return !eps.has_value(); }
    static CountEstimate exact_value(Rational v) { return {std::move(v), std::nullopt}; }
    static CountEstimate approx(Rational v, double eps) { return {std::move(v), eps}; }
};

// number of perfect matchings (over vertex pairs; loops and parallel
// multiplicity ignored)
BigInt count_perfect(const Graph& g);

// |N(u,v)| = number of matchings leaving exactly u,v uncovered
BigInt count_near(const Graph& g, VertexId u, VertexId v);

// every perfect matching, in deterministic order; throws if more than cap
std::vector<Matching> perfect_matchings(const Graph& g, size_t cap = 1u << 20);

// visits every matching with at most two holes exactly once, passing the
// sorted list of uncovered vertices alongside the matching
void for_each_low_hole_matching(
    const Graph& g,
    const std::function<void(const Matching&, const std::vector<VertexId>&)>&
        visit);

struct HolePatternTable {
    BigInt perfect = 0;
    std::map<std::pair<VertexId, VertexId>, BigInt> near;  // nonzero entries only

    const BigInt& near_count(VertexId u, VertexId v) const;
    BigInt omega_size() const;
    size_t pattern_classes() const;  // realized patterns incl. perfect if nonzero
};

// one enumeration pass over all matchings with <= 2 holes
HolePatternTable hole_pattern_table(const Graph& g);

// weighted bipartite instance for the permanent
struct BipartiteWeighted {
    std::vector<std::vector<Rational>> w;  // square, w[i][j] >= 0
    int size() const { return static_cast<int>(w.size()); }
};

// exact permanent by inclusion-exclusion with Gray-code row-sum updates,
// O(2^m * m); throws when m exceeds cap (advising an approximate backend)
Rational ryser_permanent(const BipartiteWeighted& a, int cap = 24);

// permanent by enumerating perfect matchings of the bipartite support
Rational enumeration_permanent(const BipartiteWeighted& a);

// 0/1 adjacency of a bipartite graph with equal parts; nullopt if not
// bipartite or parts differ
std::optional<BipartiteWeighted> bipartite_adjacency(const Graph& g);

// sum over perfect matchings of the product of pair weights; missing pairs
// mean weight zero. Used by the permanent backends and the contraction count.
Rational count_perfect_weighted(
    const std::vector<std::vector<std::pair<int, Rational>>>& adj);

}  // namespace matchings
