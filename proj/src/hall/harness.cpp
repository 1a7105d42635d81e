#include "vwspace/hall.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace vwspace {

namespace {

// An edge type: which shared vertices it holds and how many private (degree-1) vertices.
struct EdgeType {
    unsigned mask;
    int privates;
};

class ShapeWalker {
public:
    ShapeWalker(int m, int shared, int min_vertices, bool prefix_coverable,
                const std::function<bool(const Hypergraph&)>& visit, const SearchCaps& caps)
        : m_(m), t_(shared), min_vertices_(min_vertices), prefix_(prefix_coverable), visit_(visit), caps_(caps),
          deg_(shared, 0) {
        for (unsigned mask = 0; mask < (1u << shared); ++mask) {
            int k = std::popcount(mask);
            if (k > 3) continue;
            for (int q = 0; q <= 3; ++q)
                if (k + q == 2 || k + q == 3) types_.push_back({mask, q});
        }
    }

    bool run() { return descend(0, 0); }

private:
    Hypergraph build() const {
        Hypergraph h{t_, {}};
        for (int i : chosen_) {
            std::vector<int> e;
            for (int v = 0; v < t_; ++v)
                if (types_[i].mask >> v & 1u) e.push_back(v);
            for (int q = 0; q < types_[i].privates; ++q) e.push_back(h.vertex_count++);
            h.edges.push_back(e);
        }
        return h;
    }

    bool descend(std::size_t start, int privates) {
        int k = static_cast<int>(chosen_.size());
        int deficit = 0;
        for (int d : deg_) deficit += std::max(0, 2 - d);
        int need_private = std::max(0, min_vertices_ - t_ - privates);
        if (deficit + need_private > 3 * (m_ - k)) return true;
        if (k == m_) {
            for (int v = 0; v < t_; ++v)
                if (deg_[v] < 2 || (v && deg_[v] > deg_[v - 1])) return true;
            return visit_(build());
        }
        for (std::size_t i = start; i < types_.size(); ++i) {
            chosen_.push_back(static_cast<int>(i));
            for (int v = 0; v < t_; ++v) deg_[v] += types_[i].mask >> v & 1u;
            bool keep = true;
            if (prefix_ && k + 1 < m_) {
                Hypergraph h = build();
                BipartiteGraph g = incidence_graph(h);
                std::vector<int> all(g.left_count());
                for (int l = 0; l < g.left_count(); ++l) all[l] = l;
                keep = find_vw_cover(g, all, {}, {}, caps_).has_value();
            }
            bool go_on = !keep || descend(i, privates + types_[i].privates);
            for (int v = 0; v < t_; ++v) deg_[v] -= types_[i].mask >> v & 1u;
            chosen_.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

    int m_, t_, min_vertices_;
    bool prefix_;
    const std::function<bool(const Hypergraph&)>& visit_;
    SearchCaps caps_;
    std::vector<EdgeType> types_;
    std::vector<int> deg_;
    std::vector<int> chosen_;
};

}  // namespace

void for_each_hall_shape(int m, int min_vertices, bool prefix_coverable,
                         const std::function<bool(const Hypergraph&)>& visit, const SearchCaps& caps) {
    if (m < 1) return;
    for (int t = 0; 2 * t <= 3 * m; ++t) {
        ShapeWalker w(m, t, min_vertices, prefix_coverable, visit, caps);
        if (!w.run()) return;
    }
}

HallVerifyReport hall_verify(int max_left, const Rational& eps, const SearchCaps& caps) {
    HallVerifyReport rep;
    rep.epsilon = eps;
    rep.max_left = max_left;
    for (int m = 1; m <= max_left; ++m) {
        int min_vertices = static_cast<int>(ceil_of((2 - eps) * Rational(m)));
        for_each_hall_shape(
            m, min_vertices, true,
            [&](const Hypergraph& h) {
                BipartiteGraph g = incidence_graph(h);
                ++rep.graphs_checked;
                if (!check_hall_hypotheses(g, eps).ok()) return true;
                ++rep.hypotheses_passed;
                std::vector<int> all(m);
                for (int l = 0; l < m; ++l) all[l] = l;
                for (int skip = 0; skip < m; ++skip) {
                    std::vector<int> rest;
                    for (int l : all)
                        if (l != skip) rest.push_back(l);
                    if (!find_vw_cover(g, rest, {}, {}, caps)) return true;
                }
                ++rep.critical_candidates;
                if (!find_vw_cover(g, all, {}, {}, caps)) {
                    ++rep.counterexamples;
                    if (rep.examples.size() < 10) rep.examples.push_back(g);
                }
                return true;
            },
            caps);
    }
    return rep;
}

std::string HallVerifyReport::to_text() const {
    std::ostringstream o;
    o << "epsilon " << to_string(epsilon) << " max-left " << max_left << '\n';
    o << "graphs checked " << graphs_checked << ", hypotheses passed " << hypotheses_passed
      << ", all proper subsets coverable " << critical_candidates << '\n';
    o << counterexamples << " counterexamples, " << graphs_checked << " graphs checked\n";
    for (auto& g : examples) o << "c counterexample\n" << write_bigraph(g);
    return o.str();
}

bool CounterexampleReport::witness() const {
    return hypotheses.ok() && full_uncoverable && proper_subsets_coverable &&
           (!vw_checked || (vw_full_uncoverable && vw_proper_subsets_coverable));
}

CounterexampleReport hall_counterexample(const Rational& eps, const SearchCaps& caps) {
    CounterexampleReport rep;
    rep.epsilon = eps;
    rep.amplifications = amplification_count(eps);
    rep.hypergraph = amplify(find_base_hypergraph(caps), find_gadget(caps), rep.amplifications);
    rep.graph = incidence_graph(rep.hypergraph);
    rep.hypotheses = check_hall_hypotheses(rep.graph, eps);
    const int m = rep.hypergraph.edge_count();
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    auto without = [&](int skip) {
        std::vector<int> r;
        for (int i : all)
            if (i != skip) r.push_back(i);
        return r;
    };
    rep.full_uncoverable = !find_2path_cover(rep.hypergraph, all, {}, caps);
    rep.proper_subsets_coverable = true;
    for (int i = 0; i < m && rep.proper_subsets_coverable; ++i)
        rep.proper_subsets_coverable = find_2path_cover(rep.hypergraph, without(i), {}, caps).has_value();
    if (m <= caps.vw_targets) {
        rep.vw_checked = true;
        rep.vw_full_uncoverable = !find_vw_cover(rep.graph, all, {}, {}, caps);
        rep.vw_proper_subsets_coverable = true;
        for (int i = 0; i < m && rep.vw_proper_subsets_coverable; ++i)
            rep.vw_proper_subsets_coverable = find_vw_cover(rep.graph, without(i), {}, {}, caps).has_value();
    }
    return rep;
}

std::string CounterexampleReport::to_text() const {
    std::ostringstream o;
    o << "epsilon " << to_string(epsilon) << " amplifications " << amplifications << '\n';
    o << "vertices " << hypergraph.vertex_count << " edges " << hypergraph.edge_count() << " ratio "
      << to_string(Rational(hypergraph.vertex_count, std::max(1, hypergraph.edge_count()))) << " target "
      << to_string(2 - epsilon) << '\n';
    o << hypotheses.to_text();
    o << "2-path cover of all edges: " << (full_uncoverable ? "none" : "exists") << '\n';
    o << "every maximal proper subset coverable: " << (proper_subsets_coverable ? "yes" : "no") << '\n';
    if (vw_checked) {
        o << "VW-cover of L: " << (vw_full_uncoverable ? "none" : "exists") << '\n';
        o << "every L minus one vertex VW-coverable: " << (vw_proper_subsets_coverable ? "yes" : "no") << '\n';
    } else {
        o << "VW-side check skipped (raise cap vw_targets)\n";
    }
    o << (witness() ? "witness: hypotheses hold, L not coverable, proper subsets coverable\n" : "not a witness\n");
    o << write_hgraph(hypergraph);
    return o.str();
}

}  // namespace vwspace
