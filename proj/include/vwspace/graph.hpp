#pragma once

#include "vwspace/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vwspace {

// Clauses on the left (L), variables on the right (R). Both sides are 0-indexed.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(int left_count, int right_count, const std::vector<std::pair<int, int>>& edges);

    int left_count() const { return static_cast<int>(left_.size()); }
    int right_count() const { return static_cast<int>(right_.size()); }
    const std::vector<int>& left_neighbors(int l) const { return left_[l]; }
    const std::vector<int>& right_neighbors(int r) const { return right_[r]; }
    int left_degree(int l) const { return static_cast<int>(left_[l].size()); }
    int right_degree(int r) const { return static_cast<int>(right_[r].size()); }
    bool has_edge(int l, int r) const;
    int edge_count() const { return edge_count_; }
    int max_right_degree() const;

    // Sorted by (l, r).
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const BipartiteGraph& o) const { return left_ == o.left_ && right_ == o.right_; }

private:
    std::vector<std::vector<int>> left_;
    std::vector<std::vector<int>> right_;
    int edge_count_ = 0;
};

BipartiteGraph build_graph(const std::vector<std::pair<int, int>>& edges, int left_count, int right_count);

// N_G(X) for X a set of L vertices.
std::vector<int> neighborhood(const BipartiteGraph& g, const std::vector<int>& left_set);

// "p bigraph L R E" / "e l r" / "c ..."
std::string write_bigraph(const BipartiteGraph& g);
BipartiteGraph read_bigraph(std::istream& in);
BipartiteGraph read_bigraph_file(const std::string& path);

// One component: r0 [l1 r1 [l2 r2]]; even positions are R vertices, odd positions L vertices.
struct VwComponent {
    std::vector<int> path;

    int left_size() const { return static_cast<int>(path.size() / 2); }
    std::vector<int> left_vertices() const;
    std::vector<int> right_vertices() const;
    bool contains_left(int l) const;
    bool contains_right(int r) const;
    // Reversed so that the first endpoint is the smaller one.
    VwComponent canonical() const;
    bool operator==(const VwComponent& o) const { return path == o.path; }
    bool operator<(const VwComponent& o) const { return path < o.path; }
};

struct VwMatching {
    std::vector<VwComponent> components;

    std::size_t size() const { return components.size(); }
    bool empty() const { return components.empty(); }
    bool covers_left(int l) const;
    bool covers_right(int r) const;
    // Index of the component holding the vertex, or -1.
    int component_of_left(int l) const;
    int component_of_right(int r) const;
    bool operator==(const VwMatching& o) const { return components == o.components; }
};

std::vector<int> left_sets_of(const VwMatching& f);
std::vector<int> right_sets_of(const VwMatching& f);

struct ValidationReport {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

ValidationReport validate_vw_matching(const BipartiteGraph& g, const VwMatching& f);

std::string format_component(const VwComponent& c);
VwComponent parse_component(const std::string& text);

// Exact search for a VW-matching of G minus (banned_left, banned_right) covering all targets.
std::optional<VwMatching> find_vw_cover(const BipartiteGraph& g, const std::vector<int>& targets,
                                        const std::vector<int>& banned_left = {},
                                        const std::vector<int>& banned_right = {},
                                        const SearchCaps& caps = {});

struct ExpanderResult {
    bool expander = true;
    std::vector<int> witness;  // minimum-size violating set, lexicographically first
    int checked_size = 0;      // effective s after clamping to left_count
};

// Every X with 1 <= |X| <= s has |N(X)| >= delta |X|. Sizes above left_count are vacuous.
ExpanderResult is_expander(const BipartiteGraph& g, long long s, const Rational& delta,
                           const SearchCaps& caps = {});

}  // namespace vwspace
