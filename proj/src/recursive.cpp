#include "matchings/recursive.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "matchings/structure.hpp"

namespace matchings {
namespace {

VertexId lowest_vertex(const Graph& g) {
    auto vs = g.vertices();
    if (vs.empty()) throw std::invalid_argument("pivot choice on an empty graph");
    return vs.front();
}

// largest factor-critical component left by removing u; the recursion cost is
// driven by these, so a pivot that keeps them small keeps the tree shallow
int pivot_badness(const Graph& g, VertexId u) {
    auto ge = gallai_edmonds(g.delete_vertices({u}));
    int worst = 0;
    for (const auto& comp : ge.D_components)
        worst = std::max(worst, static_cast<int>(comp.size()));
    return worst;
}

VertexId balanced_choice(const Graph& g, int threshold) {
    auto vs = g.vertices();
    if (vs.empty()) throw std::invalid_argument("pivot choice on an empty graph");
    if (g.num_vertices() > threshold || g.num_vertices() == 1) return vs.front();
    VertexId best = vs.front();
    int best_badness = pivot_badness(g, best);
    for (std::size_t i = 1; i < vs.size(); ++i) {
        int b = pivot_badness(g, vs[i]);
        if (b < best_badness) {
            best = vs[i];
            best_badness = b;
        }
    }
    return best;
}

}  // namespace

PivotStrategy::PivotStrategy() : choose_(lowest_vertex) {}

PivotStrategy PivotStrategy::first() {
    PivotStrategy p;
    p.choose_ = lowest_vertex;
    return p;
}

PivotStrategy PivotStrategy::named_first(std::vector<std::string> labels) {
    std::set<std::string> wanted(labels.begin(), labels.end());
    PivotStrategy p;
    p.choose_ = [wanted](const Graph& g) {
        for (VertexId v : g.vertices())
            if (wanted.count(g.label(v))) return v;
        return balanced_choice(g, 48);
    };
    return p;
}

PivotStrategy PivotStrategy::balanced(int threshold) {
    PivotStrategy p;
    p.choose_ = [threshold](const Graph& g) { return balanced_choice(g, threshold); };
    return p;
}

PivotStrategy PivotStrategy::custom(std::function<VertexId(const Graph&)> f) {
    PivotStrategy p;
    p.choose_ = [f = std::move(f)](const Graph& g) {
        VertexId v = f(g);
        if (!g.has_vertex(v))
            throw std::logic_error("custom pivot returned a vertex not in the graph");
        return v;
    };
    return p;
}

VertexId PivotStrategy::choose(const Graph& g) const { return choose_(g); }

namespace {

struct Recursion {
    const RecursionOptions& opt;
    bool all_exact = true;

    Rational permanent(const BipartiteWeighted& a, double eps) {
        if (opt.stats)
            opt.stats->largest_permanent =
                std::max(opt.stats->largest_permanent, a.size());
        switch (opt.backend) {
            case PermanentBackend::Enumeration:
                return enumeration_permanent(a);
            case PermanentBackend::Ryser:
                try {
                    return ryser_permanent(a);
                } catch (const std::invalid_argument& e) {
                    throw std::runtime_error(
                        std::string("permanent backend failed on a sub-instance: ") +
                        e.what());
                }
            case PermanentBackend::External:
                if (!opt.external)
                    throw std::invalid_argument("external permanent backend not provided");
                all_exact = false;
                return opt.external(a, eps);
        }
        throw std::logic_error("unreachable backend");
    }

    Rational subcount(const Graph& g, double eps, int depth) {
        if (opt.subcount_override) {
            all_exact = false;
            return opt.subcount_override(g, eps);
        }
        return run(g, eps, depth);
    }

    Rational run(const Graph& g, double eps, int depth) {
        if (opt.stats) {
            ++opt.stats->calls;
            opt.stats->max_depth = std::max(opt.stats->max_depth, depth);
        }
        int n = g.num_vertices();
        if (n == 0) return 1;

        VertexId u = opt.pivot.choose(g);
        Graph gu = g.delete_vertices({u});
        GallaiEdmonds ge = gallai_edmonds(gu);

        std::vector<VertexId> x_side = ge.A;
        x_side.push_back(u);
        std::sort(x_side.begin(), x_side.end());
        if (x_side.size() != ge.D_components.size()) return 0;

        // per-vertex counts of each factor-critical component minus one vertex
        std::map<VertexId, Rational> m;
        for (const auto& comp : ge.D_components) {
            Graph h = g.induced(comp);
            for (VertexId v : comp)
                m[v] = subcount(h.delete_vertices({v}), eps / (2.0 * n), depth + 1);
        }
        Rational m_c = subcount(g.induced(ge.C), eps / 3.0, depth + 1);
        if (m_c == 0) return 0;

        BipartiteWeighted a;
        int dim = static_cast<int>(x_side.size());
        a.w.assign(dim, std::vector<Rational>(dim, Rational(0)));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (VertexId v : ge.D_components[j])
                    if (g.adjacent(x_side[i], v)) a.w[i][j] += m[v];

        return m_c * permanent(a, eps / 3.0);
    }
};

}  // namespace

CountEstimate recursive_count(const Graph& g, double eps, const RecursionOptions& opt) {
    if (eps <= 0) throw std::invalid_argument("accuracy must be positive");
    Recursion rec{opt};
    Rational value = rec.run(g, eps, 0);
    return rec.all_exact ? CountEstimate::exact_value(value)
                         : CountEstimate::approx(value, eps);
}

BigInt ContractedMultigraph::degree(VertexId v) const {
    BigInt d = 0;
    for (const auto& [a, b, w] : edges)
        if (a == v || b == v) d += w;
    return d;
}

BigInt ContractedMultigraph::degree_sum() const {
    BigInt s = 0;
    for (const auto& [a, b, w] : edges) s += 2 * w;
    return s;
}

BigInt ContractedMultigraph::count() const {
    if (impossible) return 0;
    if (vertices.empty()) return forced;
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        idx[vertices[i]] = static_cast<int>(i);
    std::vector<std::vector<std::pair<int, Rational>>> adj(vertices.size());
    for (const auto& [a, b, w] : edges) {
        adj[idx.at(a)].emplace_back(idx.at(b), Rational(w));
        adj[idx.at(b)].emplace_back(idx.at(a), Rational(w));
    }
    Rational c = count_perfect_weighted(adj);
    if (c.get_den() != 1) throw std::logic_error("weighted count is not integral");
    return forced * c.get_num();
}

ContractedMultigraph contract_degree_two(const Graph& g) {
    // weights are parallel-edge multiplicities of the contracted multigraph;
    // the input contributes 1 per distinct pair since matchings ignore
    // multiplicity, loops never participate
    std::map<VertexId, std::map<VertexId, BigInt>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (VertexId v : g.vertices())
        for (VertexId w : g.neighbors(v))
            if (v < w) {
                adj[v][w] = 1;
                adj[w][v] = 1;
            }
    VertexId fresh = g.vertices().empty() ? 0 : g.vertices().back() + 1;

    ContractedMultigraph out;
    auto drop = [&](VertexId v) {
        for (auto& [w, mult] : adj.at(v)) adj.at(w).erase(v);
        adj.erase(v);
    };

    bool changed = true;
    while (changed && !out.impossible) {
        changed = false;
        for (auto it = adj.begin(); it != adj.end(); ++it) {
            VertexId u = it->first;
            std::size_t deg = it->second.size();
            if (deg > 2) continue;
            changed = true;
            if (deg == 0) {
                out.impossible = true;  // u can never be covered
            } else if (deg == 1) {
                auto [w, mult] = *it->second.begin();
                out.forced *= mult;
                drop(u);
                drop(w);
            } else {
                auto first = it->second.begin();
                VertexId w1 = first->first;
                BigInt m1 = first->second;
                VertexId w2 = std::next(first)->first;
                BigInt m2 = std::next(first)->second;
                std::map<VertexId, BigInt> merged;
                for (auto& [z, mz] : adj.at(w1))
                    if (z != u && z != w2) merged[z] += m2 * mz;
                for (auto& [z, mz] : adj.at(w2))
                    if (z != u && z != w1) merged[z] += m1 * mz;
                drop(u);
                drop(w1);
                drop(w2);
                VertexId w = fresh++;
                for (auto& [z, mz] : merged) {
                    adj[z][w] = mz;
                    adj[w][z] = mz;
                }
                adj[w];  // ensure presence even when isolated
            }
            break;  // adj mutated: restart the scan at the lowest id
        }
    }

    for (auto& [v, nbrs] : adj) {
        out.vertices.push_back(v);
        for (auto& [w, mult] : nbrs)
            if (v < w) out.edges.emplace_back(v, w, mult);
    }
    return out;
}

BigInt fc_exact_count_minus_v(const Graph& h, VertexId v) {
    if (!h.has_vertex(v)) throw std::invalid_argument("no such vertex");
    if (!is_factor_critical(h))
        throw std::invalid_argument("graph is not factor-critical");
    return contract_degree_two(h.delete_vertices({v})).count();
}

namespace {

std::string describe_component(const std::vector<VertexId>& comp) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < comp.size(); ++i)
        os << (i ? "," : "") << comp[i];
    os << "}";
    return os.str();
}

// the recursion with sub-counts replaced by exact contractions; components of
// the matching-restricted graph keep every pivot's C-side empty, but a
// non-empty C is handled by recursing on it all the same
Rational fpt_component(const Graph& g, double eps, int k_max, Recursion& rec,
                       int depth) {
    int n = g.num_vertices();
    if (n == 0) return 1;
    VertexId u = g.vertices().front();
    Graph gu = g.delete_vertices({u});
    GallaiEdmonds ge = gallai_edmonds(gu);

    std::vector<VertexId> x_side = ge.A;
    x_side.push_back(u);
    std::sort(x_side.begin(), x_side.end());
    if (x_side.size() != ge.D_components.size()) return 0;

    std::map<VertexId, Rational> m;
    for (const auto& comp : ge.D_components) {
        Graph h = g.induced(comp);
        int order = fc_order(h);
        if (order > k_max) {
            std::ostringstream os;
            os << "factor-critical component " << describe_component(comp)
               << " has order " << order << ", above the bound " << k_max;
            throw std::runtime_error(os.str());
        }
        for (VertexId v : comp)
            m[v] = Rational(contract_degree_two(h.delete_vertices({v})).count());
    }

    Rational m_c = 1;
    if (!ge.C.empty()) m_c = fpt_component(g.induced(ge.C), eps / 3.0, k_max, rec, depth + 1);
    if (m_c == 0) return 0;

    BipartiteWeighted a;
    int dim = static_cast<int>(x_side.size());
    a.w.assign(dim, std::vector<Rational>(dim, Rational(0)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (VertexId v : ge.D_components[j])
                if (g.adjacent(x_side[i], v)) a.w[i][j] += m[v];

    return m_c * rec.permanent(a, eps / 3.0);
}

}  // namespace

CountEstimate fpt_count(const Graph& g, double eps, int k_max,
                        PermanentBackend backend, const ExternalPermanent& external) {
    if (eps <= 0) throw std::invalid_argument("accuracy must be positive");
    if (k_max < 0) throw std::invalid_argument("order bound must be nonnegative");
    RecursionOptions opt;
    opt.backend = backend;
    opt.external = external;
    Recursion rec{opt};

    int n = g.num_vertices();
    if (n == 0) return CountEstimate::exact_value(1);

    // keep only edges lying in some perfect matching, then count per component
    std::vector<std::pair<VertexId, VertexId>> allowed;
    for (const Edge& e : allowed_edges(g)) allowed.emplace_back(e.u, e.v);
    Graph filtered = g.with_edge_set(allowed);

    Rational total = 1;
    for (const auto& comp : filtered.connected_components()) {
        Rational c = fpt_component(filtered.induced(comp), eps / (2.0 * n), k_max, rec, 0);
        if (c == 0) return rec.all_exact ? CountEstimate::exact_value(0)
                                         : CountEstimate::approx(0, eps);
        total *= c;
    }
    return rec.all_exact ? CountEstimate::exact_value(total)
                         : CountEstimate::approx(total, eps);
}

}  // namespace matchings
