#include "vwspace/hall.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace vwspace {

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (auto& e : edges)
        for (int v : e) ++deg[v];
    return deg;
}

void validate_hypergraph(const Hypergraph& h) {
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        const auto& e = h.edges[i];
        if (e.size() < 2 || e.size() > 3)
            throw ValidationError("hyperedge " + std::to_string(i) + " has size " + std::to_string(e.size()));
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] < 0 || e[k] >= h.vertex_count)
                throw ValidationError("hyperedge " + std::to_string(i) + ": vertex out of range");
            if (k && e[k] <= e[k - 1])
                throw ValidationError("hyperedge " + std::to_string(i) + ": vertices not sorted and distinct");
        }
    }
}

HypergraphView to_hypergraph(const BipartiteGraph& g) {
    std::map<std::vector<int>, int> seen;
    for (int l = 0; l < g.left_count(); ++l) {
        int d = g.left_degree(l);
        if (d < 2 || d > 3)
            throw ValidationError("L vertex " + std::to_string(l) + " has degree " + std::to_string(d) +
                                  " (hyperedges need degree 2 or 3)");
        auto [it, fresh] = seen.emplace(g.left_neighbors(l), l);
        if (!fresh)
            throw ValidationError("duplicate neighborhood: L vertices " + std::to_string(it->second) + " and " +
                                  std::to_string(l));
    }
    std::vector<int> all(g.left_count());
    for (int l = 0; l < g.left_count(); ++l) all[l] = l;
    HypergraphView view;
    view.right_of_vertex = neighborhood(g, all);
    std::vector<int> index(g.right_count(), -1);
    for (std::size_t i = 0; i < view.right_of_vertex.size(); ++i) index[view.right_of_vertex[i]] = static_cast<int>(i);
    view.hypergraph.vertex_count = static_cast<int>(view.right_of_vertex.size());
    for (int l = 0; l < g.left_count(); ++l) {
        std::vector<int> e;
        for (int r : g.left_neighbors(l)) e.push_back(index[r]);
        view.hypergraph.edges.push_back(e);
    }
    return view;
}

BipartiteGraph incidence_graph(const Hypergraph& h) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < h.edge_count(); ++i)
        for (int v : h.edges[i]) edges.emplace_back(i, v);
    return BipartiteGraph(h.edge_count(), h.vertex_count, edges);
}

std::string write_hgraph(const Hypergraph& h, std::optional<int> x) {
    std::ostringstream o;
    o << "p hgraph " << h.vertex_count << ' ' << h.edge_count() << '\n';
    for (auto& e : h.edges) o << "h " << join(e) << '\n';
    if (x) o << "x " << *x << '\n';
    return o.str();
}

Hypergraph read_hgraph(std::istream& in, std::optional<int>* x) {
    std::string line;
    int lineno = 0, announced = -1;
    bool header = false;
    Hypergraph h;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string kind;
            if (header) throw ParseError(lineno, "duplicate header");
            if (!(ls >> kind >> h.vertex_count >> announced) || kind != "hgraph" || h.vertex_count < 0 || announced < 0)
                throw ParseError(lineno, "expected 'p hgraph <vertices> <edges>'");
            header = true;
        } else if (tag == "h") {
            if (!header) throw ParseError(lineno, "edge before header");
            std::vector<int> e;
            int v;
            while (ls >> v) e.push_back(v);
            if (!ls.eof()) throw ParseError(lineno, "bad vertex list");
            std::sort(e.begin(), e.end());
            h.edges.push_back(e);
        } else if (tag == "x") {
            int v;
            if (!(ls >> v)) throw ParseError(lineno, "expected 'x <vertex>'");
            if (x) *x = v;
        } else {
            throw ParseError(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (!header) throw ParseError("missing 'p hgraph' header");
    if (announced != h.edge_count())
        throw ParseError("header announces " + std::to_string(announced) + " edges, found " +
                         std::to_string(h.edge_count()));
    validate_hypergraph(h);
    return h;
}

Hypergraph read_hgraph_file(const std::string& path, std::optional<int>* x) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open hypergraph file '" + path + "'");
    return read_hgraph(in, x);
}

}  // namespace vwspace
