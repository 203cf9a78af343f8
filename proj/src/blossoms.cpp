#include "matchings/blossoms.hpp"

#include <algorithm>
#include <stdexcept>

namespace matchings {

std::vector<std::pair<VertexId, VertexId>> Blossom::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
        out.emplace_back(cycle[i], cycle[i + 1]);
    out.emplace_back(cycle.back(), cycle.front());
    return out;
}

namespace {

void check_hole(const Graph& g, const Matching& m, VertexId hole) {
    if (!g.has_vertex(hole)) throw std::invalid_argument("no such vertex");
    if (!m.valid_for(g)) throw std::invalid_argument("matching does not fit the graph");
    if (m.covers(hole)) throw std::invalid_argument("blossom base must be uncovered");
}

// DFS over simple alternating paths out of the hole. The path always has the
// shape hole, u1, ..., ur with edges alternating unmatched, matched, ...; a
// blossom closes whenever the path has odd vertex count >= 3, just consumed a
// matched edge, and the tip sees the hole.
struct BlossomSearch {
    const Graph& g;
    const Matching& m;
    VertexId hole;
    std::size_t cap;          // collected-blossom limit; 0 = unlimited
    int depth_limit;          // max cycle length; 0 = unlimited
    bool exact_depth = false; // keep only cycles of exactly depth_limit
    bool truncated = false;
    std::vector<Blossom> found;
    std::vector<VertexId> path;
    std::vector<char> on_path;

    BlossomSearch(const Graph& g_, const Matching& m_, VertexId hole_)
        : g(g_), m(m_), hole(hole_), cap(0), depth_limit(0) {
        VertexId maxid = 0;
        for (VertexId v : g.vertices()) maxid = std::max(maxid, v);
        on_path.assign(static_cast<std::size_t>(maxid) + 1, 0);
        path.push_back(hole);
        on_path[hole] = 1;
    }

    bool full() const { return cap != 0 && found.size() >= cap; }

    void close_here() {
        if (exact_depth && static_cast<int>(path.size()) != depth_limit) return;
        if (path[1] > path.back()) return;  // keep one direction only
        if (full()) {
            truncated = true;
            return;
        }
        Blossom b;
        b.cycle = path;
        found.push_back(std::move(b));
    }

    // next_matched: parity of the edge about to be taken
    void dfs(bool next_matched) {
        if (truncated) return;
        VertexId tip = path.back();
        if (!next_matched && path.size() >= 3 && g.adjacent(tip, hole)) close_here();
        int need = next_matched ? 1 : 2;  // vertices still required to close
        if (depth_limit && static_cast<int>(path.size()) + need > depth_limit) return;
        if (next_matched) {
            VertexId y = m.partner(tip);
            if (y < 0 || on_path[y]) return;
            path.push_back(y);
            on_path[y] = 1;
            dfs(false);
            on_path[y] = 0;
            path.pop_back();
            return;
        }
        for (VertexId y : g.neighbors(tip)) {
            if (truncated) return;
            if (on_path[y] || m.partner(tip) == y) continue;
            path.push_back(y);
            on_path[y] = 1;
            dfs(true);
            on_path[y] = 0;
            path.pop_back();
        }
    }
};

}  // namespace

BlossomList enumerate_blossoms(const Graph& g, const Matching& m, VertexId hole,
                               std::size_t cap) {
    check_hole(g, m, hole);
    BlossomSearch search(g, m, hole);
    search.cap = cap;
    search.dfs(false);
    BlossomList out;
    out.truncated = search.truncated;
    out.blossoms = std::move(search.found);
    std::sort(out.blossoms.begin(), out.blossoms.end(),
              [](const Blossom& a, const Blossom& b) {
                  if (a.cycle.size() != b.cycle.size())
                      return a.cycle.size() < b.cycle.size();
                  return a.cycle < b.cycle;
              });
    return out;
}

Matching rotate(const Graph& g, const Matching& m, const Blossom& b, VertexId v) {
    if (b.cycle.size() < 3 || b.cycle.size() % 2 == 0)
        throw std::invalid_argument("malformed blossom cycle");
    if (m.covers(b.cycle[0])) throw std::invalid_argument("blossom base must be uncovered");
    auto pos = std::find(b.cycle.begin(), b.cycle.end(), v);
    if (pos == b.cycle.end())
        throw std::invalid_argument("rotation target is not on the blossom");
    std::size_t p = static_cast<std::size_t>(pos - b.cycle.begin());
    if (p == 0) return m;

    // pick the even-edge arc from the hole to v; exactly one direction works
    std::vector<VertexId> arc;
    if (p % 2 == 0) {
        for (std::size_t i = 0; i <= p; ++i) arc.push_back(b.cycle[i]);
    } else {
        arc.push_back(b.cycle[0]);
        for (std::size_t i = b.cycle.size(); i-- > p;) arc.push_back(b.cycle[i]);
    }

    std::vector<std::pair<VertexId, VertexId>> add, drop;
    for (std::size_t i = 0; i + 1 < arc.size(); ++i) {
        VertexId a = arc[i], c = arc[i + 1];
        if (!g.adjacent(a, c)) throw std::invalid_argument("blossom arc uses a non-edge");
        bool matched = m.contains_pair(a, c);
        if (i % 2 == 0) {
            if (matched) throw std::invalid_argument("blossom alternation is broken");
            add.emplace_back(a, c);
        } else {
            if (!matched) throw std::invalid_argument("blossom alternation is broken");
            drop.emplace_back(a, c);
        }
    }
    Matching out = m;
    for (auto& [a, c] : drop) out = out.without_pair(a, c);
    for (auto& [a, c] : add) out = out.with_pair(a, c);
    return out;
}

std::optional<Blossom> minimum_blossom(const Graph& g, const Matching& m,
                                       VertexId hole) {
    check_hole(g, m, hole);
    int n = g.num_vertices();
    for (int len = 3; len <= n; len += 2) {
        BlossomSearch search(g, m, hole);
        search.depth_limit = len;
        search.exact_depth = true;
        search.dfs(false);
        if (search.found.empty()) continue;
        auto best = std::min_element(search.found.begin(), search.found.end(),
                                     [](const Blossom& a, const Blossom& b) {
                                         return a.cycle < b.cycle;
                                     });
        return *best;
    }
    return std::nullopt;
}

}  // namespace matchings
