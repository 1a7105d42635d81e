#include "vwspace/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace vwspace {

BipartiteGraph::BipartiteGraph(int left_count, int right_count,
                               const std::vector<std::pair<int, int>>& edges) {
    if (left_count < 0 || right_count < 0) throw ValidationError("negative vertex count");
    left_.assign(left_count, {});
    right_.assign(right_count, {});
    for (auto [l, r] : edges) {
        if (l < 0 || l >= left_count)
            throw ValidationError("edge (" + std::to_string(l) + "," + std::to_string(r) +
                                  "): L index out of range (left_count=" + std::to_string(left_count) + ")");
        if (r < 0 || r >= right_count)
            throw ValidationError("edge (" + std::to_string(l) + "," + std::to_string(r) +
                                  "): R index out of range (right_count=" + std::to_string(right_count) + ")");
        left_[l].push_back(r);
    }
    for (int l = 0; l < left_count; ++l) {
        left_[l] = normalized(std::move(left_[l]));
        edge_count_ += static_cast<int>(left_[l].size());
        for (int r : left_[l]) right_[r].push_back(l);
    }
}

bool BipartiteGraph::has_edge(int l, int r) const {
    if (l < 0 || l >= left_count()) return false;
    return std::binary_search(left_[l].begin(), left_[l].end(), r);
}

int BipartiteGraph::max_right_degree() const {
    int d = 0;
    for (auto& n : right_) d = std::max(d, static_cast<int>(n.size()));
    return d;
}

std::vector<std::pair<int, int>> BipartiteGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int l = 0; l < left_count(); ++l)
        for (int r : left_[l]) out.emplace_back(l, r);
    return out;
}

BipartiteGraph build_graph(const std::vector<std::pair<int, int>>& edges, int left_count, int right_count) {
    return BipartiteGraph(left_count, right_count, edges);
}

std::vector<int> neighborhood(const BipartiteGraph& g, const std::vector<int>& left_set) {
    std::vector<int> out;
    for (int l : left_set) out.insert(out.end(), g.left_neighbors(l).begin(), g.left_neighbors(l).end());
    return normalized(std::move(out));
}

std::string write_bigraph(const BipartiteGraph& g) {
    std::ostringstream o;
    o << "p bigraph " << g.left_count() << ' ' << g.right_count() << ' ' << g.edge_count() << '\n';
    for (auto [l, r] : g.edges()) o << "e " << l << ' ' << r << '\n';
    return o.str();
}

BipartiteGraph read_bigraph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    int nl = 0, nr = 0, ne = 0, seen = 0;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string kind;
            if (header) throw ParseError(lineno, "duplicate header");
            if (!(ls >> kind >> nl >> nr >> ne) || kind != "bigraph" || nl < 0 || nr < 0 || ne < 0)
                throw ParseError(lineno, "expected 'p bigraph <left> <right> <edges>'");
            header = true;
        } else if (tag == "e") {
            if (!header) throw ParseError(lineno, "edge before header");
            int l, r;
            std::string extra;
            if (!(ls >> l >> r) || (ls >> extra)) throw ParseError(lineno, "expected 'e <l> <r>'");
            if (l < 0 || l >= nl || r < 0 || r >= nr) throw ParseError(lineno, "edge index out of range");
            edges.emplace_back(l, r);
            ++seen;
        } else {
            throw ParseError(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (!header) throw ParseError("missing 'p bigraph' header");
    if (seen != ne)
        throw ParseError("header announces " + std::to_string(ne) + " edges, found " + std::to_string(seen));
    return BipartiteGraph(nl, nr, edges);
}

BipartiteGraph read_bigraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    try {
        return read_bigraph(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace vwspace
