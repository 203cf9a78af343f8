#include "matchings/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace matchings {

Graph::Graph(int n) {
    for (int i = 0; i < n; ++i) add_vertex();
}

VertexId Graph::add_vertex(const std::string& label) {
    VertexId id = next_id_++;
    present_.push_back(1);
    labels_.push_back(label);
    edge_ids_at_.emplace_back();
    ++num_vertices_;
    return id;
}

void Graph::check_vertex(VertexId v) const {
    if (!has_vertex(v)) {
        std::ostringstream os;
        os << "unknown vertex " << v;
        throw std::invalid_argument(os.str());
    }
}

void Graph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v});
    edge_ids_at_[u].push_back(id);
    if (v != u) edge_ids_at_[v].push_back(id);
}

bool Graph::has_vertex(VertexId v) const {
    return v >= 0 && v < next_id_ && present_[v];
}

std::vector<VertexId> Graph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(num_vertices_);
    for (VertexId v = 0; v < next_id_; ++v)
        if (present_[v]) out.push_back(v);
    return out;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
    check_vertex(v);
    std::vector<VertexId> out;
    for (int id : edge_ids_at_[v]) {
        const Edge& e = edges_[id];
        if (e.is_loop()) continue;
        out.push_back(e.u == v ? e.v : e.u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Graph::degree(VertexId v) const {
    check_vertex(v);
    int d = 0;
    for (int id : edge_ids_at_[v]) d += edges_[id].is_loop() ? 2 : 1;
    return d;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    if (u == v) return false;
    check_vertex(u);
    check_vertex(v);
    const auto& smaller = edge_ids_at_[u].size() <= edge_ids_at_[v].size()
                              ? edge_ids_at_[u]
                              : edge_ids_at_[v];
    VertexId a = edge_ids_at_[u].size() <= edge_ids_at_[v].size() ? u : v;
    VertexId b = a == u ? v : u;
    for (int id : smaller) {
        const Edge& e = edges_[id];
        if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
    }
    return false;
}

int Graph::multiplicity(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    int c = 0;
    for (int id : edge_ids_at_[u]) {
        const Edge& e = edges_[id];
        if (u == v) {
            if (e.is_loop()) ++c;
        } else if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
            ++c;
        }
    }
    return c;
}

const std::string& Graph::label(VertexId v) const {
    check_vertex(v);
    return labels_[v];
}

void Graph::set_label(VertexId v, const std::string& label) {
    check_vertex(v);
    labels_[v] = label;
}

std::optional<VertexId> Graph::find_label(const std::string& label) const {
    if (label.empty()) return std::nullopt;
    for (VertexId v = 0; v < next_id_; ++v)
        if (present_[v] && labels_[v] == label) return v;
    return std::nullopt;
}

VertexId Graph::resolve(const std::string& name) const {
    if (auto v = find_label(name)) return *v;
    try {
        size_t pos = 0;
        int v = std::stoi(name, &pos);
        if (pos == name.size() && has_vertex(v)) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("no vertex with label or id '" + name + "'");
}

Graph Graph::delete_vertices(const std::vector<VertexId>& vs) const {
    std::vector<char> drop(next_id_, 0);
    for (VertexId v : vs) {
        check_vertex(v);
        drop[v] = 1;
    }
    Graph out;
    out.next_id_ = next_id_;
    out.present_.assign(next_id_, 0);
    out.labels_.assign(next_id_, {});
    out.edge_ids_at_.assign(next_id_, {});
    out.num_vertices_ = 0;
    for (VertexId v = 0; v < next_id_; ++v) {
        if (present_[v] && !drop[v]) {
            out.present_[v] = 1;
            out.labels_[v] = labels_[v];
            ++out.num_vertices_;
        }
    }
    for (const Edge& e : edges_)
        if (out.present_[e.u] && out.present_[e.v]) out.add_edge(e.u, e.v);
    return out;
}

Graph Graph::induced(const std::vector<VertexId>& keep) const {
    std::vector<char> keep_mask(next_id_, 0);
    for (VertexId v : keep) {
        check_vertex(v);
        keep_mask[v] = 1;
    }
    std::vector<VertexId> drop;
    for (VertexId v = 0; v < next_id_; ++v)
        if (present_[v] && !keep_mask[v]) drop.push_back(v);
    return delete_vertices(drop);
}

Graph Graph::with_edge_set(const std::vector<std::pair<VertexId, VertexId>>& es) const {
    Graph g = *this;
    g.edges_.clear();
    for (auto& ids : g.edge_ids_at_) ids.clear();
    for (const auto& [u, v] : es) g.add_edge(u, v);
    return g;
}

Graph::QuotientResult Graph::quotient(
    const std::vector<VertexId>& h_vertices,
    const std::vector<std::pair<VertexId, VertexId>>& h_edges) const {
    std::vector<char> in_h(next_id_, 0);
    for (VertexId v : h_vertices) {
        check_vertex(v);
        in_h[v] = 1;
    }
    // consume one edge instance per listed pair
    std::vector<char> consumed(edges_.size(), 0);
    for (auto [a, b] : h_edges) {
        if (!has_vertex(a) || !has_vertex(b) || !in_h[a] || !in_h[b])
            throw std::invalid_argument("subgraph edge outside subgraph vertex set");
        bool found = false;
        for (size_t id = 0; id < edges_.size(); ++id) {
            if (consumed[id]) continue;
            const Edge& e = edges_[id];
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
                consumed[id] = 1;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("subgraph edge not present in graph");
    }

    Graph out;
    out.next_id_ = next_id_;
    out.present_.assign(next_id_, 0);
    out.labels_.assign(next_id_, {});
    out.edge_ids_at_.assign(next_id_, {});
    out.num_vertices_ = 0;
    for (VertexId v = 0; v < next_id_; ++v) {
        if (present_[v] && !in_h[v]) {
            out.present_[v] = 1;
            out.labels_[v] = labels_[v];
            ++out.num_vertices_;
        }
    }
    VertexId vh = out.add_vertex();
    for (size_t id = 0; id < edges_.size(); ++id) {
        if (consumed[id]) continue;
        const Edge& e = edges_[id];
        VertexId u = in_h[e.u] ? vh : e.u;
        VertexId v = in_h[e.v] ? vh : e.v;
        out.add_edge(u, v);
    }
    return {std::move(out), vh};
}

std::vector<std::vector<VertexId>> Graph::connected_components() const {
    std::vector<char> seen(next_id_, 0);
    std::vector<std::vector<VertexId>> comps;
    for (VertexId s = 0; s < next_id_; ++s) {
        if (!present_[s] || seen[s]) continue;
        std::vector<VertexId> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int id : edge_ids_at_[v]) {
                const Edge& e = edges_[id];
                VertexId w = e.u == v ? e.v : e.u;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Matching Matching::from_pairs(std::vector<std::pair<VertexId, VertexId>> pairs) {
    for (auto& [u, v] : pairs) {
        if (u == v) throw std::invalid_argument("matching pair with equal endpoints");
        if (u > v) std::swap(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    std::set<VertexId> seen;
    for (auto [u, v] : pairs) {
        if (!seen.insert(u).second || !seen.insert(v).second)
            throw std::invalid_argument("matching pairs are not disjoint");
    }
    Matching m;
    m.pairs_ = std::move(pairs);
    return m;
}

bool Matching::covers(VertexId v) const { return partner(v) >= 0; }

VertexId Matching::partner(VertexId v) const {
    for (auto [a, b] : pairs_) {
        if (a == v) return b;
        if (b == v) return a;
    }
    return -1;
}

bool Matching::contains_pair(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(u, v));
}

Matching Matching::with_pair(VertexId u, VertexId v) const {
    auto p = pairs_;
    p.emplace_back(u, v);
    return from_pairs(std::move(p));
}

Matching Matching::without_pair(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    auto p = pairs_;
    auto it = std::find(p.begin(), p.end(), std::make_pair(u, v));
    if (it == p.end()) throw std::invalid_argument("pair not in matching");
    p.erase(it);
    Matching m;
    m.pairs_ = std::move(p);
    return m;
}

bool Matching::valid_for(const Graph& g) const {
    for (auto [u, v] : pairs_) {
        if (!g.has_vertex(u) || !g.has_vertex(v)) return false;
        if (!g.adjacent(u, v)) return false;
    }
    return true;
}

std::vector<VertexId> Matching::holes(const Graph& g) const {
    std::vector<VertexId> out;
    for (VertexId v : g.vertices())
        if (!covers(v)) out.push_back(v);
    return out;
}

HolePattern HolePattern::near(VertexId u, VertexId v) {
    if (u == v || u < 0 || v < 0) throw std::invalid_argument("bad hole pair");
    if (u > v) std::swap(u, v);
    return {u, v};
}

HolePattern hole_pattern(const Graph& g, const Matching& m) {
    auto hs = m.holes(g);
    if (hs.empty()) return HolePattern::perfect();
    if (hs.size() == 2) return HolePattern::near(hs[0], hs[1]);
    std::ostringstream os;
    os << "not in Omega: matching has " << hs.size() << " hole(s)";
    throw std::invalid_argument(os.str());
}

std::string to_string(const HolePattern& p) {
    if (p.is_perfect()) return "perfect";
    std::ostringstream os;
    os << "near(" << p.a << "," << p.b << ")";
    return os.str();
}

}  // namespace matchings
