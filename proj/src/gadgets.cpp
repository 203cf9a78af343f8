#include "matchings/gadgets.hpp"

#include <sstream>
#include <stdexcept>

namespace matchings {

VertexId GadgetGraph::at(const std::string& label) const {
    auto it = named.find(label);
    if (it == named.end())
        throw std::invalid_argument("unknown gadget label: " + label);
    return it->second;
}

namespace {

std::string tag(const std::string& prefix, const std::string& name, int i) {
    std::ostringstream os;
    os << prefix << name << i;
    return os.str();
}

void note(GadgetGraph& g, const std::string& label, VertexId v) {
    g.named[label] = v;
    g.graph.set_label(v, label);
}

// glue a chain of boxes between two existing vertices; interior vertices are
// fresh and labeled prefix + {v1.., a0.., b0..}
void glue_boxes(GadgetGraph& out, VertexId first, VertexId second, int k,
                const std::string& prefix) {
    std::vector<VertexId> path(2 * k);
    path[0] = first;
    path[2 * k - 1] = second;
    for (int j = 1; j < 2 * k - 1; ++j) {
        path[j] = out.graph.add_vertex();
        note(out, tag(prefix, "v", j), path[j]);
    }
    for (int j = 0; j + 1 < 2 * k; ++j) out.graph.add_edge(path[j], path[j + 1]);
    for (int i = 0; i < k; ++i) {
        VertexId a = out.graph.add_vertex(), b = out.graph.add_vertex();
        note(out, tag(prefix, "a", i), a);
        note(out, tag(prefix, "b", i), b);
        out.graph.add_edge(path[2 * i], a);
        out.graph.add_edge(a, b);
        out.graph.add_edge(b, path[2 * i + 1]);
    }
}

}  // namespace

GadgetGraph chain_of_boxes(int k) {
    if (k < 1) throw std::invalid_argument("chain of boxes needs k >= 1");
    GadgetGraph out;
    out.graph = Graph(2 * k);
    for (int j = 0; j < 2 * k; ++j) note(out, tag("", "v", j), j);
    for (int j = 0; j + 1 < 2 * k; ++j) out.graph.add_edge(j, j + 1);
    for (int i = 0; i < k; ++i) {
        VertexId a = out.graph.add_vertex(), b = out.graph.add_vertex();
        note(out, tag("", "a", i), a);
        note(out, tag("", "b", i), b);
        out.graph.add_edge(2 * i, a);
        out.graph.add_edge(a, b);
        out.graph.add_edge(b, 2 * i + 1);
    }
    return out;
}

GadgetGraph torpid_gadget(int k) {
    if (k < 1) throw std::invalid_argument("torpid gadget needs k >= 1");
    GadgetGraph out;
    out.graph = Graph(12);
    // twelve-cycle positions: a and b antipodal with a chord, u and v farthest
    // from both, w1/w2 flanking u, z1/z2 flanking v, x/y between
    const char* labels[12] = {"a", "x1", "w1", "u",  "w2", "x2",
                              "b", "y2", "z2", "v",  "z1", "y1"};
    for (int i = 0; i < 12; ++i) note(out, labels[i], i);
    for (int i = 0; i < 12; ++i) out.graph.add_edge(i, (i + 1) % 12);
    out.graph.add_edge(out.at("a"), out.at("b"));
    glue_boxes(out, out.at("w1"), out.at("a"), k, "c1.");
    glue_boxes(out, out.at("a"), out.at("z1"), k, "c2.");
    glue_boxes(out, out.at("w2"), out.at("b"), k, "c3.");
    glue_boxes(out, out.at("b"), out.at("z2"), k, "c4.");
    return out;
}

GadgetGraph counterexample_graph(int k) {
    if (k < 1) throw std::invalid_argument("counterexample graph needs k >= 1");
    GadgetGraph tpl = torpid_gadget(k);
    GadgetGraph out;
    out.graph = Graph(0);
    for (int i = 1; i <= 4; ++i) {
        std::string prefix = "H" + std::to_string(i) + ".";
        std::map<VertexId, VertexId> to_copy;
        std::vector<VertexId> members;
        for (VertexId v : tpl.graph.vertices()) {
            VertexId c = out.graph.add_vertex();
            to_copy[v] = c;
            members.push_back(c);
        }
        for (const auto& [label, v] : tpl.named) note(out, prefix + label, to_copy[v]);
        for (const Edge& e : tpl.graph.edges())
            out.graph.add_edge(to_copy[e.u], to_copy[e.v]);
        out.groups["H" + std::to_string(i)] = members;
        out.named["u" + std::to_string(i)] = to_copy[tpl.at("u")];
        out.named["v" + std::to_string(i)] = to_copy[tpl.at("v")];
    }
    for (int i = 1; i <= 4; ++i) {
        VertexId t = out.graph.add_vertex();
        note(out, "t" + std::to_string(i), t);
        out.graph.add_edge(t, out.at("u" + std::to_string(i)));
        out.graph.add_edge(t, out.at("v" + std::to_string(i == 1 ? 4 : i - 1)));
    }
    return out;
}

std::set<int> classify_S(const GadgetGraph& gk, const Matching& m) {
    hole_pattern(gk.graph, m);  // throws unless 0 or 2 holes
    std::set<int> out;
    for (int i = 1; i <= 4; ++i) {
        auto git = gk.groups.find("H" + std::to_string(i));
        if (git == gk.groups.end())
            throw std::invalid_argument("graph has no H" + std::to_string(i) +
                                        " group");
        std::set<VertexId> members(git->second.begin(), git->second.end());
        std::set<VertexId> uncovered;  // within the copy
        for (VertexId x : members) {
            VertexId p = m.partner(x);
            if (p < 0 || !members.count(p)) uncovered.insert(x);
        }
        std::set<VertexId> want{gk.at("u" + std::to_string(i)),
                                gk.at("v" + std::to_string(i))};
        if (uncovered == want) out.insert(i);
    }
    return out;
}

ReductionResult blossom_reduction(const Digraph& h, int s, int t, int ell,
                                  bool with_second_hole) {
    if (s == t) throw std::invalid_argument("reduction needs s != t");
    if (s < 0 || s >= h.n || t < 0 || t >= h.n)
        throw std::invalid_argument("reduction terminal out of range");
    if (ell < 0) throw std::invalid_argument("negative box count");
    for (auto [a, b] : h.arcs)
        if (a < 0 || a >= h.n || b < 0 || b >= h.n)
            throw std::invalid_argument("arc endpoint out of range");

    ReductionResult out;
    out.graph = Graph(0);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::vector<VertexId> entry(h.n), exit(h.n);
    auto name = [&](const std::string& label) {
        VertexId v = out.graph.add_vertex(label);
        out.named[label] = v;
        return v;
    };
    for (int v = 0; v < h.n; ++v) {
        std::string pre = "v" + std::to_string(v) + ".";
        VertexId p = name(pre + "p"), q = name(pre + "q");
        entry[v] = p;
        exit[v] = q;
        if (ell == 0) {
            out.graph.add_edge(p, q);
            pairs.emplace_back(p, q);
            continue;
        }
        // each stage doubles the alternating p-q traversals: the walk enters
        // e_j on a matched edge, branches through za_j or zb_j, and leaves
        // x_j on the matched edge into the next stage
        VertexId prev = p;
        for (int j = 1; j <= ell; ++j) {
            VertexId e = name(pre + "e" + std::to_string(j));
            VertexId za = name(pre + "za" + std::to_string(j));
            VertexId zb = name(pre + "zb" + std::to_string(j));
            VertexId x = name(pre + "x" + std::to_string(j));
            out.graph.add_edge(prev, e);
            pairs.emplace_back(prev, e);
            out.graph.add_edge(e, za);
            out.graph.add_edge(e, zb);
            out.graph.add_edge(za, zb);
            pairs.emplace_back(za, zb);
            out.graph.add_edge(za, x);
            out.graph.add_edge(zb, x);
            prev = x;
        }
        out.graph.add_edge(prev, q);
        pairs.emplace_back(prev, q);
    }
    for (auto [a, b] : h.arcs) out.graph.add_edge(exit[a], entry[b]);
    out.w = name("w");
    out.graph.add_edge(out.w, entry[s]);
    out.graph.add_edge(exit[t], out.w);
    if (with_second_hole) out.r = name("r");
    out.matching = Matching::from_pairs(std::move(pairs));
    return out;
}

}  // namespace matchings
