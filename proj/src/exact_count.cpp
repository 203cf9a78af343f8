#include "matchings/exact_count.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace matchings {

namespace {

struct Compact {
    std::vector<VertexId> ids;               // index -> original id
    std::vector<std::vector<int>> adj;       // sorted, distinct, non-loop
    int n = 0;
};

Compact compact_of(const Graph& g) {
    Compact c;
    c.ids = g.vertices();
    c.n = static_cast<int>(c.ids.size());
    std::vector<int> index(c.ids.empty() ? 0 : c.ids.back() + 1, -1);
    for (int i = 0; i < c.n; ++i) index[c.ids[i]] = i;
    c.adj.resize(c.n);
    for (int i = 0; i < c.n; ++i)
        for (VertexId w : g.neighbors(c.ids[i])) c.adj[i].push_back(index[w]);
    return c;
}

// Enumeration/counting state over a compact graph. Branches on a minimum
// alive-degree vertex, so forced (degree-1) matches propagate before any
// branching and dead branches (degree 0) cut off immediately.
struct Engine {
    const std::vector<std::vector<int>>& adj;
    std::vector<char> alive;
    int alive_count;

    explicit Engine(const Compact& c)
        : adj(c.adj), alive(c.n, 1), alive_count(c.n) {}

    int alive_degree(int v) const {
        int d = 0;
        for (int u : adj[v]) d += alive[u];
        return d;
    }

    // -1 when no vertex is alive
    int pick_min_degree() const {
        int best = -1, best_deg = -1;
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            if (!alive[v]) continue;
            int d = alive_degree(v);
            if (best < 0 || d < best_deg) {
                best = v;
                best_deg = d;
                if (d <= 1) break;  // cannot do better than a forced move
            }
        }
        return best;
    }

    // number of odd connected components of the alive subgraph, capped
    int odd_components(int stop_after) const {
        int odd = 0;
        std::vector<char> seen(adj.size(), 0);
        std::vector<int> stack;
        for (int s = 0; s < static_cast<int>(adj.size()); ++s) {
            if (!alive[s] || seen[s]) continue;
            int size = 0;
            seen[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                ++size;
                for (int u : adj[v])
                    if (alive[u] && !seen[u]) {
                        seen[u] = 1;
                        stack.push_back(u);
                    }
            }
            if (size % 2) {
                if (++odd > stop_after) return odd;
            }
        }
        return odd;
    }
};

BigInt count_component(Engine& e);

// counts perfect matchings of the alive subgraph, splitting into components
BigInt count_alive(Engine& e) {
    if (e.alive_count == 0) return 1;
    if (e.alive_count % 2) return 0;

    // component split: counts multiply
    std::vector<char> seen(e.adj.size(), 0);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < static_cast<int>(e.adj.size()); ++s) {
        if (!e.alive[s] || seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int u : e.adj[v])
                if (e.alive[u] && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        comps.push_back(std::move(comp));
    }
    if (comps.size() == 1) return count_component(e);

    BigInt total = 1;
    std::vector<char> saved = e.alive;
    int saved_count = e.alive_count;
    for (const auto& comp : comps) {
        if (comp.size() % 2) return 0;
        std::fill(e.alive.begin(), e.alive.end(), 0);
        for (int v : comp) e.alive[v] = 1;
        e.alive_count = static_cast<int>(comp.size());
        total *= count_component(e);
        if (total == 0) break;
    }
    e.alive = std::move(saved);
    e.alive_count = saved_count;
    return total;
}

BigInt count_component(Engine& e) {
    if (e.alive_count == 0) return 1;
    int v = e.pick_min_degree();
    BigInt total = 0;
    for (int u : e.adj[v]) {
        if (!e.alive[u]) continue;
        e.alive[v] = e.alive[u] = 0;
        e.alive_count -= 2;
        total += count_alive(e);
        e.alive[v] = e.alive[u] = 1;
        e.alive_count += 2;
    }
    return total;
}

struct LowHoleVisitor {
    const Compact& c;
    const std::function<void(const Matching&, const std::vector<VertexId>&)>& emit;
    std::vector<std::pair<int, int>> acc;
    std::vector<int> holes;

    void run(Engine& e, int budget) {
        if (e.alive_count == 0) {
            std::vector<std::pair<VertexId, VertexId>> pairs;
            pairs.reserve(acc.size());
            for (auto [a, b] : acc) {
                VertexId x = c.ids[a], y = c.ids[b];
                if (x > y) std::swap(x, y);
                pairs.emplace_back(x, y);
            }
            std::sort(pairs.begin(), pairs.end());
            Matching m = Matching::from_pairs(std::move(pairs));
            std::vector<VertexId> hs;
            hs.reserve(holes.size());
            for (int h : holes) hs.push_back(c.ids[h]);
            std::sort(hs.begin(), hs.end());
            emit(m, hs);
            return;
        }
        if (e.odd_components(budget) > budget) return;
        int v = e.pick_min_degree();
        if (budget > 0) {
            e.alive[v] = 0;
            --e.alive_count;
            holes.push_back(v);
            run(e, budget - 1);
            holes.pop_back();
            e.alive[v] = 1;
            ++e.alive_count;
        }
        for (int u : e.adj[v]) {
            if (!e.alive[u]) continue;
            e.alive[v] = e.alive[u] = 0;
            e.alive_count -= 2;
            acc.emplace_back(v, u);
            run(e, budget);
            acc.pop_back();
            e.alive[v] = e.alive[u] = 1;
            e.alive_count += 2;
        }
    }
};

}  // namespace

BigInt count_perfect(const Graph& g) {
    Compact c = compact_of(g);
    Engine e(c);
    return count_alive(e);
}

BigInt count_near(const Graph& g, VertexId u, VertexId v) {
    if (u == v) throw std::invalid_argument("near-count needs distinct holes");
    return count_perfect(g.delete_vertices({u, v}));
}

void for_each_low_hole_matching(
    const Graph& g,
    const std::function<void(const Matching&, const std::vector<VertexId>&)>&
        visit) {
    Compact c = compact_of(g);
    Engine e(c);
    LowHoleVisitor lv{c, visit, {}, {}};
    lv.run(e, 2);
}

std::vector<Matching> perfect_matchings(const Graph& g, size_t cap) {
    Compact c = compact_of(g);
    Engine e(c);
    std::vector<Matching> out;
    std::function<void(const Matching&, const std::vector<VertexId>&)> emit =
        [&](const Matching& m, const std::vector<VertexId>&) {
            if (out.size() >= cap)
                throw std::runtime_error("perfect matching enumeration exceeded cap");
            out.push_back(m);
        };
    LowHoleVisitor lv{c, emit, {}, {}};
    lv.run(e, 0);
    return out;
}

const BigInt& HolePatternTable::near_count(VertexId u, VertexId v) const {
    static const BigInt zero = 0;
    if (u > v) std::swap(u, v);
    auto it = near.find({u, v});
    return it == near.end() ? zero : it->second;
}

BigInt HolePatternTable::omega_size() const {
    BigInt total = perfect;
    for (const auto& [k, c] : near) total += c;
    return total;
}

size_t HolePatternTable::pattern_classes() const {
    return near.size() + (perfect > 0 ? 1 : 0);
}

HolePatternTable hole_pattern_table(const Graph& g) {
    HolePatternTable t;
    if (g.num_vertices() % 2) return t;  // odd order: no 0- or 2-hole matchings
    Compact c = compact_of(g);
    Engine e(c);
    std::function<void(const Matching&, const std::vector<VertexId>&)> emit =
        [&](const Matching&, const std::vector<VertexId>& holes) {
            if (holes.empty())
                ++t.perfect;
            else
                ++t.near[{holes[0], holes[1]}];
        };
    LowHoleVisitor lv{c, emit, {}, {}};
    lv.run(e, 2);
    return t;
}

Rational ryser_permanent(const BipartiteWeighted& a, int cap) {
    int m = a.size();
    for (const auto& row : a.w)
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("permanent needs a square matrix");
    if (m == 0) return 1;
    if (m > cap) {
        std::ostringstream os;
        os << "matrix order " << m << " exceeds the exact-permanent cap " << cap
           << "; use the enumeration or an external approximate backend";
        throw std::invalid_argument(os.str());
    }
    std::vector<Rational> rowsum(m, Rational(0));
    Rational total = 0, prod;
    std::uint32_t prev_gray = 0;
    for (std::uint64_t t = 1; t < (1ull << m); ++t) {
        std::uint32_t gray = static_cast<std::uint32_t>(t ^ (t >> 1));
        std::uint32_t changed = gray ^ prev_gray;
        int j = std::countr_zero(changed);
        if (gray & changed)
            for (int i = 0; i < m; ++i) rowsum[i] += a.w[i][j];
        else
            for (int i = 0; i < m; ++i) rowsum[i] -= a.w[i][j];
        prev_gray = gray;
        prod = rowsum[0];
        for (int i = 1; i < m && prod != 0; ++i) prod *= rowsum[i];
        if ((m - std::popcount(gray)) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return total;
}

Rational count_perfect_weighted(
    const std::vector<std::vector<std::pair<int, Rational>>>& adj) {
    int n = static_cast<int>(adj.size());
    if (n % 2) return 0;
    std::vector<char> alive(n, 1);
    std::function<Rational(int)> rec = [&](int alive_count) -> Rational {
        if (alive_count == 0) return 1;
        int best = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            int d = 0;
            for (const auto& [u, w] : adj[v]) d += (u != v && alive[u]);
            if (best < 0 || d < best_deg) {
                best = v;
                best_deg = d;
                if (d <= 1) break;
            }
        }
        if (best_deg == 0) return 0;
        Rational total = 0;
        for (const auto& [u, w] : adj[best]) {
            if (u == best || !alive[u]) continue;
            alive[best] = alive[u] = 0;
            total += w * rec(alive_count - 2);
            alive[best] = alive[u] = 1;
        }
        return total;
    };
    return rec(n);
}

Rational enumeration_permanent(const BipartiteWeighted& a) {
    int m = a.size();
    for (const auto& row : a.w)
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("permanent needs a square matrix");
    std::vector<std::vector<std::pair<int, Rational>>> adj(2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (a.w[i][j] != 0) {
                adj[i].emplace_back(m + j, a.w[i][j]);
                adj[m + j].emplace_back(i, a.w[i][j]);
            }
    return count_perfect_weighted(adj);
}

std::optional<BipartiteWeighted> bipartite_adjacency(const Graph& g) {
    auto vs = g.vertices();
    if (vs.size() % 2) return std::nullopt;
    std::vector<int> color(vs.empty() ? 0 : vs.back() + 1, -1);
    std::vector<VertexId> xs, ys;
    for (VertexId root : vs) {
        if (color[root] >= 0) continue;
        color[root] = 0;
        std::vector<VertexId> queue{root};
        while (!queue.empty()) {
            VertexId v = queue.back();
            queue.pop_back();
            (color[v] == 0 ? xs : ys).push_back(v);
            for (VertexId u : g.neighbors(v)) {
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    return std::nullopt;  // odd cycle
                }
            }
        }
    }
    if (xs.size() != ys.size()) return std::nullopt;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    BipartiteWeighted b;
    int m = static_cast<int>(xs.size());
    b.w.assign(m, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (g.adjacent(xs[i], ys[j])) b.w[i][j] = 1;
    return b;
}

}  // namespace matchings
