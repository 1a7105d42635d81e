#include "vwspace/hall.hpp"

#include <algorithm>
#include <sstream>

namespace vwspace {

const std::string& default_pattern_text() {
    static const std::string text =
#include "default_patterns.inc"
        ;
    return text;
}

std::vector<ReduciblePattern> parse_patterns(std::istream& in) {
    std::vector<ReduciblePattern> out;
    std::string line;
    int lineno = 0;
    bool open = false;
    ReduciblePattern cur;
    bool shaped = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "pattern") {
            if (open) throw ParseError(lineno, "pattern without end");
            cur = {};
            shaped = false;
            if (!(ls >> cur.name)) throw ParseError(lineno, "pattern needs a name");
            open = true;
        } else if (!open) {
            throw ParseError(lineno, "'" + tag + "' outside a pattern");
        } else if (tag == "justify") {
            std::getline(ls >> std::ws, cur.justification);
        } else if (tag == "edge") {
            cur.kind = ReduciblePattern::Kind::edge;
            if (!(ls >> cur.edge_size >> cur.degree_one) || cur.edge_size < 2 || cur.edge_size > 3 ||
                cur.degree_one < 0 || cur.degree_one > cur.edge_size)
                throw ParseError(lineno, "expected 'edge <size 2|3> <degree-1 count>'");
            shaped = true;
        } else if (tag == "vertex") {
            cur.kind = ReduciblePattern::Kind::vertex;
            if (!(ls >> cur.vertex_degree) || cur.vertex_degree < 1)
                throw ParseError(lineno, "expected 'vertex <degree> <sizes...>'");
            int s;
            while (ls >> s) {
                if (s < 2 || s > 3) throw ParseError(lineno, "edge sizes must be 2 or 3");
                cur.sizes.push_back(s);
            }
            if (static_cast<int>(cur.sizes.size()) != cur.vertex_degree)
                throw ParseError(lineno, "need one edge size per incident edge");
            std::sort(cur.sizes.begin(), cur.sizes.end());
            shaped = true;
        } else if (tag == "end") {
            if (!shaped) throw ParseError(lineno, "pattern '" + cur.name + "' has no shape");
            out.push_back(cur);
            open = false;
        } else {
            throw ParseError(lineno, "unknown tag '" + tag + "'");
        }
    }
    if (open) throw ParseError("pattern '" + cur.name + "' is not closed");
    return out;
}

std::vector<ReduciblePattern> default_patterns() {
    std::istringstream in(default_pattern_text());
    return parse_patterns(in);
}

std::vector<ReducibleMatch> detect_reducible(const Hypergraph& h, const std::vector<ReduciblePattern>& patterns) {
    auto deg = h.degrees();
    std::vector<std::vector<int>> incident(h.vertex_count);
    for (int i = 0; i < h.edge_count(); ++i)
        for (int v : h.edges[i]) incident[v].push_back(i);
    auto ones_in = [&](int e, int except) {
        int k = 0;
        for (int v : h.edges[e]) k += (deg[v] == 1 && v != except);
        return k;
    };
    std::vector<ReducibleMatch> out;
    for (const auto& p : patterns) {
        if (p.kind == ReduciblePattern::Kind::edge) {
            for (int i = 0; i < h.edge_count(); ++i)
                if (static_cast<int>(h.edges[i].size()) == p.edge_size && ones_in(i, -1) >= p.degree_one)
                    out.push_back({p.name, -1, {i}});
        } else {
            for (int v = 0; v < h.vertex_count; ++v) {
                if (deg[v] != p.vertex_degree) continue;
                std::vector<int> sizes;
                bool each = true;
                for (int e : incident[v]) {
                    sizes.push_back(static_cast<int>(h.edges[e].size()));
                    each = each && ones_in(e, v) > 0;
                }
                std::sort(sizes.begin(), sizes.end());
                if (each && sizes == p.sizes) out.push_back({p.name, v, incident[v]});
            }
        }
    }
    return out;
}

std::optional<TwoPathCover> local_cover(const Hypergraph& h, const ReducibleMatch& m) {
    auto deg = h.degrees();
    std::vector<char> usable(h.vertex_count, 1);
    for (int i = 0; i < h.edge_count(); ++i) {
        bool matched = std::find(m.edges.begin(), m.edges.end(), i) != m.edges.end();
        if (!matched)
            for (int v : h.edges[i]) usable[v] = 0;
    }
    for (int v = 0; v < h.vertex_count; ++v)
        if (deg[v] > 2) usable[v] = 0;
    std::vector<std::vector<std::pair<int, int>>> options;
    for (int e : m.edges) {
        std::vector<std::pair<int, int>> o;
        const auto& ed = h.edges[e];
        for (std::size_t i = 0; i < ed.size(); ++i)
            for (std::size_t j = i + 1; j < ed.size(); ++j)
                if (usable[ed[i]] && usable[ed[j]]) o.emplace_back(ed[i], ed[j]);
        options.push_back(o);
    }
    TwoPathCover f;
    f.edges = m.edges;
    f.pairs.resize(m.edges.size());
    std::vector<std::size_t> idx(m.edges.size(), 0);
    for (auto& o : options)
        if (o.empty()) return std::nullopt;
    while (true) {
        for (std::size_t k = 0; k < idx.size(); ++k) f.pairs[k] = options[k][idx[k]];
        if (validate_2path_cover(h, f)) return f;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == idx.size()) return std::nullopt;
    }
}

}  // namespace vwspace
