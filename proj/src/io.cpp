#include "matchings/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace matchings {

namespace {

// lines of whitespace-separated tokens, '#' starts a comment
std::vector<std::vector<std::string>> tokenize(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) rows.push_back(std::move(toks));
    }
    return rows;
}

int parse_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
}

}  // namespace

Graph read_graph(std::istream& in) {
    auto rows = tokenize(in);
    size_t i = 0;
    if (i >= rows.size() || rows[i][0] != "p" || rows[i].size() != 3)
        throw std::invalid_argument("expected header 'p <n> <m>'");
    int n = parse_int(rows[i][1], "vertex count");
    int m = parse_int(rows[i][2], "edge count");
    if (n < 0 || m < 0) throw std::invalid_argument("negative header counts");
    ++i;
    Graph g(n);
    int edges_seen = 0;
    for (; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r[0] == "l") {
            if (r.size() < 3) throw std::invalid_argument("label line needs 'l <v> <label>'");
            int v = parse_int(r[1], "vertex id");
            if (!g.has_vertex(v)) throw std::invalid_argument("label for unknown vertex");
            std::string label = r[2];
            for (size_t j = 3; j < r.size(); ++j) label += " " + r[j];
            g.set_label(v, label);
            continue;
        }
        if (r.size() != 2) throw std::invalid_argument("edge line needs '<u> <v>'");
        int u = parse_int(r[0], "vertex id");
        int v = parse_int(r[1], "vertex id");
        if (!g.has_vertex(u) || !g.has_vertex(v))
            throw std::invalid_argument("edge endpoint out of range");
        g.add_edge(u, v);
        ++edges_seen;
    }
    if (edges_seen != m) {
        std::ostringstream os;
        os << "header claims " << m << " edges, found " << edges_seen;
        throw std::invalid_argument(os.str());
    }
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    auto vs = g.vertices();
    std::map<VertexId, int> remap;
    for (size_t i = 0; i < vs.size(); ++i) remap[vs[i]] = static_cast<int>(i);
    out << "p " << vs.size() << " " << g.num_edges() << "\n";
    for (const Edge& e : g.edges()) out << remap[e.u] << " " << remap[e.v] << "\n";
    for (VertexId v : vs)
        if (!g.label(v).empty()) out << "l " << remap[v] << " " << g.label(v) << "\n";
}

Digraph read_digraph(std::istream& in) {
    auto rows = tokenize(in);
    size_t i = 0;
    if (i >= rows.size() || rows[i][0] != "d" || rows[i].size() != 3)
        throw std::invalid_argument("expected header 'd <n> <m>'");
    Digraph d;
    d.n = parse_int(rows[i][1], "vertex count");
    int m = parse_int(rows[i][2], "arc count");
    ++i;
    for (; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 2) throw std::invalid_argument("arc line needs '<u> <v>'");
        int u = parse_int(r[0], "vertex id");
        int v = parse_int(r[1], "vertex id");
        if (u < 0 || u >= d.n || v < 0 || v >= d.n)
            throw std::invalid_argument("arc endpoint out of range");
        d.arcs.emplace_back(u, v);
    }
    if (static_cast<int>(d.arcs.size()) != m)
        throw std::invalid_argument("arc count mismatch with header");
    return d;
}

Digraph read_digraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_digraph(in);
}

Matching read_matching(std::istream& in, const Graph& g) {
    auto rows = tokenize(in);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (const auto& r : rows) {
        if (r.size() != 2) throw std::invalid_argument("matching line needs '<u> <v>'");
        pairs.emplace_back(g.resolve(r[0]), g.resolve(r[1]));
    }
    return Matching::from_pairs(std::move(pairs));
}

}  // namespace matchings
