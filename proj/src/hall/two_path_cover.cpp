#include "vwspace/hall.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace vwspace {

ValidationReport validate_2path_cover(const Hypergraph& h, const TwoPathCover& f) {
    if (f.edges.size() != f.pairs.size()) return {false, "edge/pair count mismatch"};
    for (std::size_t i = 0; i < f.edges.size(); ++i) {
        int e = f.edges[i];
        if (e < 0 || e >= h.edge_count()) return {false, "edge index out of range"};
        auto [a, b] = f.pairs[i];
        const auto& ed = h.edges[e];
        bool in_a = std::find(ed.begin(), ed.end(), a) != ed.end();
        bool in_b = std::find(ed.begin(), ed.end(), b) != ed.end();
        if (a == b || !in_a || !in_b) return {false, "pair of edge " + std::to_string(e) + " is not a 2-subset of it"};
        for (std::size_t j = 0; j < i; ++j) {
            if (f.edges[j] == e) return {false, "edge " + std::to_string(e) + " assigned twice"};
            auto p = f.pairs[j];
            if (std::minmax(p.first, p.second) == std::minmax(a, b)) return {false, "not injective"};
        }
    }
    for (std::size_t i = 0; i < f.pairs.size(); ++i) {
        int touching = 0;
        for (std::size_t j = 0; j < f.pairs.size(); ++j) {
            if (i == j) continue;
            auto p = f.pairs[i], q = f.pairs[j];
            if (p.first == q.first || p.first == q.second || p.second == q.first || p.second == q.second) ++touching;
        }
        if (touching > 1)
            return {false, "three edges chained through the pair of edge " + std::to_string(f.edges[i])};
    }
    return {};
}

namespace {

// Backtracking over pair choices. The unassigned edges are split into groups that cannot
// influence each other; each group is solved on its own, so failures are not re-explored
// under every combination of choices made elsewhere.
class TwoPathSearch {
public:
    TwoPathSearch(const Hypergraph& h, const std::vector<int>& forbidden)
        : h_(h), closed_(h.vertex_count, 0), pair_(h.edge_count(), {-1, -1}), partner_(h.edge_count(), -1),
          users_(h.vertex_count, {-1, -1}), user_count_(h.vertex_count, 0), parent_(h.vertex_count + h.edge_count()) {
        for (int v : forbidden) closed_[v] = 1;
    }

    bool solve(const std::vector<int>& edges) { return solve_set(edges); }

    TwoPathCover cover(const std::vector<int>& edges) const {
        TwoPathCover f;
        f.edges = edges;
        for (int e : edges) f.pairs.emplace_back(pair_[e][0], pair_[e][1]);
        return f;
    }

private:
    using Pair = std::array<int, 2>;

    std::vector<Pair> pairs_of(int e) const {
        const auto& ed = h_.edges[e];
        std::vector<Pair> out;
        for (std::size_t i = 0; i < ed.size(); ++i)
            for (std::size_t j = i + 1; j < ed.size(); ++j) out.push_back({ed[i], ed[j]});
        return out;
    }

    // -1: infeasible; otherwise the edge it would chain with (or -2 for none).
    int probe(const Pair& p) const {
        int other = -2;
        for (int v : p) {
            if (closed_[v] || user_count_[v] >= 2) return -1;
            for (int k = 0; k < user_count_[v]; ++k) {
                int j = users_[v][k];
                if (other == -2) other = j;
                else if (other != j) return -1;
            }
        }
        if (other >= 0) {
            if (partner_[other] >= 0) return -1;
            if (pair_[other] == p) return -1;
        }
        return other;
    }

    void assign(int e, const Pair& p, int other) {
        pair_[e] = p;
        for (int v : p) users_[v][user_count_[v]++] = e;
        if (other >= 0) {
            partner_[e] = other;
            partner_[other] = e;
        }
        trail_.push_back(e);
    }

    void unassign_last() {
        int e = trail_.back();
        trail_.pop_back();
        for (int v : pair_[e]) {
            auto& u = users_[v];
            if (u[0] == e) u[0] = u[1];
            u[1] = -1;
            --user_count_[v];
        }
        if (partner_[e] >= 0) {
            partner_[partner_[e]] = -1;
            partner_[e] = -1;
        }
        pair_[e] = {-1, -1};
    }

    void rollback(std::size_t mark) {
        while (trail_.size() > mark) unassign_last();
    }

    int find(int a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }

    std::vector<std::vector<int>> split(const std::vector<int>& edges) {
        const int nv = h_.vertex_count;
        for (int e : edges) {
            parent_[nv + e] = nv + e;
            for (int v : h_.edges[e]) {
                parent_[v] = v;
                for (int k = 0; k < user_count_[v]; ++k) parent_[nv + users_[v][k]] = nv + users_[v][k];
            }
        }
        for (int e : edges) {
            for (int v : h_.edges[e]) {
                if (closed_[v] || user_count_[v] >= 2) continue;
                int token;
                if (user_count_[v] == 0) token = v;
                else if (partner_[users_[v][0]] < 0) token = nv + users_[v][0];
                else continue;
                int a = find(nv + e), b = find(token);
                if (a != b) parent_[a] = b;
            }
        }
        std::vector<std::vector<int>> groups;
        std::vector<std::pair<int, int>> root_slot;
        for (int e : edges) {
            int r = find(nv + e);
            auto it = std::find_if(root_slot.begin(), root_slot.end(), [&](auto& rs) { return rs.first == r; });
            if (it == root_slot.end()) {
                root_slot.emplace_back(r, static_cast<int>(groups.size()));
                groups.push_back({e});
            } else {
                groups[it->second].push_back(e);
            }
        }
        return groups;
    }

    bool solve_set(const std::vector<int>& edges) {
        if (edges.empty()) return true;
        auto groups = split(edges);
        std::size_t mark = trail_.size();
        for (auto& g : groups) {
            if (!solve_group(g)) {
                rollback(mark);
                return false;
            }
        }
        return true;
    }

    bool solve_group(const std::vector<int>& group) {
        int best = -1, best_count = 4;
        for (int e : group) {
            int c = 0;
            for (auto& p : pairs_of(e)) c += probe(p) != -1;
            if (c < best_count) {
                best_count = c;
                best = e;
                if (c == 0) return false;
            }
        }
        std::vector<int> rest;
        for (int e : group)
            if (e != best) rest.push_back(e);
        for (auto& p : pairs_of(best)) {
            int other = probe(p);
            if (other == -1) continue;
            std::size_t mark = trail_.size();
            assign(best, p, other);
            if (solve_set(rest)) return true;
            rollback(mark);
        }
        return false;
    }

    const Hypergraph& h_;
    std::vector<char> closed_;
    std::vector<Pair> pair_;
    std::vector<int> partner_;
    std::vector<Pair> users_;
    std::vector<int> user_count_;
    std::vector<int> trail_;
    std::vector<int> parent_;
};

}  // namespace

std::optional<TwoPathCover> find_2path_cover(const Hypergraph& h, const std::vector<int>& target_edges,
                                             const std::vector<int>& forbidden, const SearchCaps& caps) {
    validate_hypergraph(h);
    auto targets = normalized(target_edges);
    for (int e : targets)
        if (e < 0 || e >= h.edge_count()) throw ValidationError("target hyperedge out of range");
    for (int v : forbidden)
        if (v < 0 || v >= h.vertex_count) throw ValidationError("forbidden vertex out of range");
    if (static_cast<int>(targets.size()) > caps.two_path_edges)
        throw ResourceError("find_2path_cover: " + std::to_string(targets.size()) +
                            " edges exceed cap two_path_edges=" + std::to_string(caps.two_path_edges));
    TwoPathSearch search(h, forbidden);
    if (!search.solve(targets)) return std::nullopt;
    return search.cover(targets);
}

std::optional<TwoPathCover> find_2path_cover(const Hypergraph& h, const SearchCaps& caps) {
    std::vector<int> all(h.edge_count());
    std::iota(all.begin(), all.end(), 0);
    return find_2path_cover(h, all, {}, caps);
}

}  // namespace vwspace
