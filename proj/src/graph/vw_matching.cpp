#include "vwspace/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace vwspace {

std::vector<int> VwComponent::left_vertices() const {
    std::vector<int> out;
    for (std::size_t i = 1; i < path.size(); i += 2) out.push_back(path[i]);
    return normalized(std::move(out));
}

std::vector<int> VwComponent::right_vertices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < path.size(); i += 2) out.push_back(path[i]);
    return normalized(std::move(out));
}

bool VwComponent::contains_left(int l) const {
    for (std::size_t i = 1; i < path.size(); i += 2)
        if (path[i] == l) return true;
    return false;
}

bool VwComponent::contains_right(int r) const {
    for (std::size_t i = 0; i < path.size(); i += 2)
        if (path[i] == r) return true;
    return false;
}

VwComponent VwComponent::canonical() const {
    VwComponent c = *this;
    if (c.path.size() > 1 && c.path.front() > c.path.back()) std::reverse(c.path.begin(), c.path.end());
    return c;
}

bool VwMatching::covers_left(int l) const { return component_of_left(l) >= 0; }
bool VwMatching::covers_right(int r) const { return component_of_right(r) >= 0; }

int VwMatching::component_of_left(int l) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].contains_left(l)) return static_cast<int>(i);
    return -1;
}

int VwMatching::component_of_right(int r) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (components[i].contains_right(r)) return static_cast<int>(i);
    return -1;
}

std::vector<int> left_sets_of(const VwMatching& f) {
    std::vector<int> out;
    for (auto& c : f.components) {
        auto l = c.left_vertices();
        out.insert(out.end(), l.begin(), l.end());
    }
    return normalized(std::move(out));
}

std::vector<int> right_sets_of(const VwMatching& f) {
    std::vector<int> out;
    for (auto& c : f.components) {
        auto r = c.right_vertices();
        out.insert(out.end(), r.begin(), r.end());
    }
    return normalized(std::move(out));
}

ValidationReport validate_vw_matching(const BipartiteGraph& g, const VwMatching& f) {
    auto fail = [](std::size_t i, const std::string& why) {
        return ValidationReport{false, "component " + std::to_string(i) + ": " + why};
    };
    std::set<int> seen_l, seen_r;
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        const auto& p = f.components[i].path;
        if (p.empty()) return fail(i, "empty component");
        if (p.size() > 5) return fail(i, "component too long");
        if (p.size() % 2 == 0) return fail(i, "path endpoints must both be in R");
        for (std::size_t k = 0; k < p.size(); ++k) {
            bool right = k % 2 == 0;
            int v = p[k];
            if (right && (v < 0 || v >= g.right_count())) return fail(i, "R vertex out of range");
            if (!right && (v < 0 || v >= g.left_count())) return fail(i, "L vertex out of range");
        }
        for (std::size_t k = 1; k < p.size(); k += 2) {
            if (!g.has_edge(p[k], p[k - 1]) || !g.has_edge(p[k], p[k + 1]))
                return fail(i, "edge not in graph");
        }
        // A repeated vertex inside one path is also a disjointness failure.
        for (std::size_t k = 0; k < p.size(); ++k) {
            auto& seen = (k % 2 == 0) ? seen_r : seen_l;
            if (!seen.insert(p[k]).second) return fail(i, "not disjoint");
        }
    }
    return {};
}

std::string format_component(const VwComponent& c) { return join(c.path); }

VwComponent parse_component(const std::string& text) {
    std::istringstream in(text);
    VwComponent c;
    int v;
    while (in >> v) c.path.push_back(v);
    if (!in.eof()) throw ParseError("bad component '" + text + "'");
    return c;
}

}  // namespace vwspace
