#include "matchings/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace matchings {

namespace {

// blossom-contraction matching machinery on compact indices
struct Blossom {
    int n = 0;
    std::vector<VertexId> ids;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, parent, base;
    std::vector<char> in_queue, in_blossom;

    explicit Blossom(const Graph& g) {
        ids = g.vertices();
        n = static_cast<int>(ids.size());
        std::vector<int> index(ids.empty() ? 0 : ids.back() + 1, -1);
        for (int i = 0; i < n; ++i) index[ids[i]] = i;
        adj.resize(n);
        for (int i = 0; i < n; ++i)
            for (VertexId w : g.neighbors(ids[i])) adj[i].push_back(index[w]);
        match.assign(n, -1);
    }

    int lca(int a, int b) {
        std::vector<char> mark(n, 0);
        for (;;) {
            a = base[a];
            mark[a] = 1;
            if (match[a] < 0) break;
            a = parent[match[a]];
        }
        for (;;) {
            b = base[b];
            if (mark[b]) return b;
            b = parent[match[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            in_blossom[base[v]] = 1;
            in_blossom[base[match[v]]] = 1;
            parent[v] = child;
            child = match[v];
            v = parent[match[v]];
        }
    }

    // alternating BFS from root; augments and returns true when an exposed
    // vertex is reached. When augment = false, never changes the matching:
    // used to collect the even (outer) vertices reachable from root.
    bool search(int root, bool augment, std::vector<char>* outer = nullptr) {
        parent.assign(n, -1);
        base.resize(n);
        std::iota(base.begin(), base.end(), 0);
        in_queue.assign(n, 0);
        std::deque<int> queue{root};
        in_queue[root] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] >= 0 && parent[match[to]] >= 0)) {
                    // even cycle base: contract the blossom
                    int b = lca(v, to);
                    in_blossom.assign(n, 0);
                    mark_path(v, b, to);
                    mark_path(to, b, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[base[i]]) {
                            base[i] = b;
                            if (!in_queue[i]) {
                                in_queue[i] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (parent[to] < 0) {
                    parent[to] = v;
                    if (match[to] < 0) {
                        if (!augment) continue;  // cannot happen when maximum
                        for (int u = to; u >= 0;) {
                            int pv = parent[u], next = match[pv];
                            match[u] = pv;
                            match[pv] = u;
                            u = next;
                        }
                        return true;
                    }
                    if (!in_queue[match[to]]) {
                        in_queue[match[to]] = 1;
                        queue.push_back(match[to]);
                    }
                }
            }
        }
        if (outer)
            for (int i = 0; i < n; ++i)
                if (in_queue[i]) (*outer)[i] = 1;
        return false;
    }

    void run() {
        for (int v = 0; v < n; ++v)
            if (match[v] < 0) search(v, true);
    }

    Matching to_matching() const {
        std::vector<std::pair<VertexId, VertexId>> pairs;
        for (int v = 0; v < n; ++v)
            if (match[v] > v) pairs.emplace_back(ids[v], ids[match[v]]);
        return Matching::from_pairs(std::move(pairs));
    }
};

}  // namespace

Matching maximum_matching(const Graph& g) {
    Blossom b(g);
    b.run();
    return b.to_matching();
}

GallaiEdmonds gallai_edmonds(const Graph& g) {
    Blossom b(g);
    b.run();
    GallaiEdmonds out;
    out.witness = b.to_matching();

    // D = vertices reachable by even alternating paths from exposed vertices;
    // one non-augmenting search per exposed root
    std::vector<char> outer(b.n, 0);
    for (int v = 0; v < b.n; ++v)
        if (b.match[v] < 0) b.search(v, false, &outer);

    std::vector<char> in_d(b.n, 0);
    for (int v = 0; v < b.n; ++v)
        if (outer[v]) {
            in_d[v] = 1;
            out.D.push_back(b.ids[v]);
        }
    for (int v = 0; v < b.n; ++v) {
        if (in_d[v]) continue;
        bool touches_d = false;
        for (int u : b.adj[v]) touches_d = touches_d || in_d[u];
        (touches_d ? out.A : out.C).push_back(b.ids[v]);
    }

    // components of G[D]
    std::vector<char> seen(b.n, 0);
    for (int s = 0; s < b.n; ++s) {
        if (!in_d[s] || seen[s]) continue;
        std::vector<int> stack{s};
        std::vector<VertexId> comp;
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(b.ids[v]);
            for (int u : b.adj[v])
                if (in_d[u] && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.D_components.push_back(std::move(comp));
    }
    std::sort(out.D_components.begin(), out.D_components.end());
    return out;
}

bool is_factor_critical(const Graph& g) {
    auto vs = g.vertices();
    if (vs.size() % 2 == 0) return false;
    for (VertexId v : vs) {
        Graph h = g.delete_vertices({v});
        if (2 * maximum_matching(h).size() != h.num_vertices()) return false;
    }
    return true;
}

namespace {

// alternating path from the hole of `from` to the hole of `to` in their
// symmetric difference, as a vertex walk starting at `start`
std::vector<VertexId> exchange_path(const Matching& from, const Matching& to,
                                    VertexId start) {
    std::vector<VertexId> walk{start};
    VertexId cur = start;
    bool use_from = true;  // start is matched in `from`, exposed in `to`
    for (;;) {
        VertexId next = use_from ? from.partner(cur) : to.partner(cur);
        if (next < 0) break;
        walk.push_back(next);
        cur = next;
        use_from = !use_from;
    }
    return walk;
}

}  // namespace

EarDecomposition fc_ear_decomposition(const Graph& g,
                                      std::optional<VertexId> base) {
    if (!is_factor_critical(g))
        throw std::invalid_argument("graph is not factor-critical");
    auto vs = g.vertices();
    VertexId b = base.value_or(vs.front());
    if (!g.has_vertex(b)) throw std::invalid_argument("unknown base vertex");

    EarDecomposition out;
    out.base = b;
    Matching mb = maximum_matching(g.delete_vertices({b}));

    const auto& edges = g.edges();
    std::vector<char> used(edges.size(), 0);
    std::set<VertexId> in_s{b};
    size_t remaining = edges.size();
    while (remaining > 0) {
        // prefer a single-edge ear inside S, else grow through the boundary
        int inside = -1, boundary = -1;
        for (size_t i = 0; i < edges.size() && inside < 0; ++i) {
            if (used[i]) continue;
            bool pu = in_s.count(edges[i].u) > 0, pv = in_s.count(edges[i].v) > 0;
            if (pu && pv)
                inside = static_cast<int>(i);
            else if ((pu || pv) && boundary < 0)
                boundary = static_cast<int>(i);
        }
        if (inside >= 0) {
            used[inside] = 1;
            --remaining;
            out.ears.push_back({edges[inside].u, edges[inside].v});
            continue;
        }
        if (boundary < 0)
            throw std::logic_error("disconnected factor-critical graph");
        const Edge& e = edges[boundary];
        VertexId x = in_s.count(e.u) ? e.u : e.v;
        VertexId y = in_s.count(e.u) ? e.v : e.u;
        // walk the alternating exchange path from y until it re-enters S;
        // parity of the invariant (S minus the base is matched within S)
        // makes the resulting ear odd
        Matching my = maximum_matching(g.delete_vertices({y}));
        std::vector<VertexId> walk = exchange_path(mb, my, y);
        std::vector<VertexId> ear{x};
        for (VertexId w : walk) {
            ear.push_back(w);
            if (in_s.count(w)) break;
        }
        // mark the ear's edge instances used (one instance per step)
        for (size_t i = 1; i < ear.size(); ++i) {
            bool found = false;
            for (size_t j = 0; j < edges.size() && !found; ++j) {
                if (used[j]) continue;
                if ((edges[j].u == ear[i - 1] && edges[j].v == ear[i]) ||
                    (edges[j].v == ear[i - 1] && edges[j].u == ear[i])) {
                    used[j] = 1;
                    --remaining;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("ear step is not an unused edge");
        }
        for (VertexId w : ear) in_s.insert(w);
        if (ear.size() % 2 != 0)  // (size - 1) edges must be odd
            throw std::logic_error("even ear encountered");
        out.ears.push_back(std::move(ear));
    }
    out.order = static_cast<int>(out.ears.size());
    return out;
}

int fc_order(const Graph& g) {
    if (!is_factor_critical(g))
        throw std::invalid_argument("graph is not factor-critical");
    long sum = 0;
    for (VertexId v : g.vertices()) sum += g.degree(v) - 2;
    if (sum % 2 != 0) throw std::logic_error("odd degree-identity sum");
    int r = static_cast<int>(1 + sum / 2);
    EarDecomposition witness = fc_ear_decomposition(g);
    if (witness.order != r) {
        std::ostringstream os;
        os << "ear witness has " << witness.order << " ears, degree identity gives "
           << r;
        throw std::logic_error(os.str());
    }
    return r;
}

std::vector<Edge> allowed_edges(const Graph& g) {
    std::vector<Edge> out;
    int n = g.num_vertices();
    if (n % 2 || 2 * maximum_matching(g).size() != n) return out;
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) continue;
        Graph h = g.delete_vertices({e.u, e.v});
        if (2 * maximum_matching(h).size() == h.num_vertices())
            out.push_back({key.first, key.second});
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return out;
}

}  // namespace matchings
