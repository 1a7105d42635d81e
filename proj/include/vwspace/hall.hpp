#pragma once

#include "vwspace/core.hpp"
#include "vwspace/graph.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vwspace {

struct Hypergraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> edges;  // each sorted, size 2 or 3

    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<int> degrees() const;
    bool operator==(const Hypergraph& o) const { return vertex_count == o.vertex_count && edges == o.edges; }
};

// Throws ValidationError on bad edge sizes, repeated vertices or out-of-range indices.
void validate_hypergraph(const Hypergraph& h);

struct HypergraphView {
    Hypergraph hypergraph;
    std::vector<int> right_of_vertex;  // hypergraph vertex -> R vertex of G
    // Hyperedge i is N_G(i): L vertex i maps to edge i.
};

HypergraphView to_hypergraph(const BipartiteGraph& g);

// L = hyperedges, R = vertices.
BipartiteGraph incidence_graph(const Hypergraph& h);

std::string write_hgraph(const Hypergraph& h, std::optional<int> x = std::nullopt);
Hypergraph read_hgraph(std::istream& in, std::optional<int>* x = nullptr);
Hypergraph read_hgraph_file(const std::string& path, std::optional<int>* x = nullptr);

struct TwoPathCover {
    std::vector<int> edges;                   // covered hyperedge indices, increasing
    std::vector<std::pair<int, int>> pairs;   // pairs[i] is f(edges[i]), first < second
};

ValidationReport validate_2path_cover(const Hypergraph& h, const TwoPathCover& f);

// Exact. Vertices in `forbidden` may not appear in any pair.
std::optional<TwoPathCover> find_2path_cover(const Hypergraph& h, const std::vector<int>& target_edges,
                                             const std::vector<int>& forbidden = {},
                                             const SearchCaps& caps = {});
std::optional<TwoPathCover> find_2path_cover(const Hypergraph& h, const SearchCaps& caps = {});

// Reducible configurations.
struct ReduciblePattern {
    enum class Kind { edge, vertex };
    std::string name;
    std::string justification;
    Kind kind = Kind::edge;
    int edge_size = 0;         // edge: size of the edge
    int degree_one = 0;        // edge: minimum number of degree-1 vertices in it
    int vertex_degree = 0;     // vertex: exact degree of the center
    std::vector<int> sizes;    // vertex: sorted sizes of the incident edges
};

std::vector<ReduciblePattern> default_patterns();
const std::string& default_pattern_text();
std::vector<ReduciblePattern> parse_patterns(std::istream& in);

struct ReducibleMatch {
    std::string pattern;
    int center = -1;              // vertex patterns only
    std::vector<int> edges;
};

std::vector<ReducibleMatch> detect_reducible(const Hypergraph& h, const std::vector<ReduciblePattern>& patterns);

// A cover of the matched edges that only uses vertices of degree <= 2 lying in matched edges only,
// so it composes with any cover of the remaining edges.
std::optional<TwoPathCover> local_cover(const Hypergraph& h, const ReducibleMatch& m);

struct AuditLine {
    std::string name;
    std::string lhs;
    std::string relation;
    std::string rhs;
    bool holds = false;
};

struct ChargeReport {
    Rational epsilon;
    Rational average_degree;
    std::vector<int> degree_one_vertices;   // D
    std::vector<int> degree_one_edges;      // script D
    std::vector<int> size_two_edges;        // E_2
    std::vector<int> degree_one_size_two;   // script D_2
    std::vector<int> zero_charge_vertices;  // Z
    std::int64_t total_charge = 0;          // closed form
    std::int64_t total_charge_summed = 0;   // per-vertex/per-edge after discharging
    std::int64_t initial_vertex_charge = 0; // sum of degrees
    std::vector<ReducibleMatch> configurations;
    std::vector<AuditLine> lines;
    bool ratio_hypothesis = false;
    bool configuration_free = false;
    bool fully_consistent = false;
    bool contradiction = false;  // the terminal test fails

    std::string to_text() const;
};

ChargeReport discharge_audit(const Hypergraph& h, const Rational& epsilon,
                             const std::vector<ReduciblePattern>& patterns = default_patterns());

struct Gadget {
    Hypergraph hypergraph;
    int x = -1;
};

// Lexicographically first critically uncoverable hypergraph on 6 vertices and 4 edges.
Hypergraph find_base_hypergraph(const SearchCaps& caps = {});
// First gadget (12 vertices, 7 edges) in canonical enumeration order meeting the interface contract.
Gadget find_gadget(const SearchCaps& caps = {});
Hypergraph amplify(const Hypergraph& base, const Gadget& gadget, int n);
// Smallest n >= 0 with (6+10n)/(4+6n) >= 2 - epsilon; epsilon must exceed 1/3.
int amplification_count(const Rational& epsilon);

// Uncoverable while every maximal proper subset is coverable.
bool is_critically_uncoverable(const Hypergraph& h, const SearchCaps& caps = {});

struct HypothesisItem {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct HallHypothesisReport {
    std::vector<HypothesisItem> items;
    bool ok() const;
    std::string to_text() const;
};

HallHypothesisReport check_hall_hypotheses(const BipartiteGraph& g, const Rational& epsilon);

// Visits every hypergraph with m edges of size 2-3 and no isolated vertex, up to isomorphism
// (possibly with repeats), having at least min_vertices vertices. With prefix_coverable, branches
// whose edge prefix has no VW-cover are cut. The callback returns false to stop.
void for_each_hall_shape(int m, int min_vertices, bool prefix_coverable,
                         const std::function<bool(const Hypergraph&)>& visit, const SearchCaps& caps = {});

struct HallVerifyReport {
    Rational epsilon;
    int max_left = 0;
    std::int64_t graphs_checked = 0;     // shapes reaching the hypothesis check
    std::int64_t hypotheses_passed = 0;
    std::int64_t critical_candidates = 0;  // all proper subsets coverable
    std::int64_t counterexamples = 0;
    std::vector<BipartiteGraph> examples;
    std::string to_text() const;
};

HallVerifyReport hall_verify(int max_left, const Rational& epsilon, const SearchCaps& caps = {});

struct CounterexampleReport {
    Rational epsilon;
    int amplifications = 0;
    Hypergraph hypergraph;
    BipartiteGraph graph;
    HallHypothesisReport hypotheses;
    bool full_uncoverable = false;        // hypergraph side
    bool proper_subsets_coverable = false;
    bool vw_full_uncoverable = false;     // graph side
    bool vw_proper_subsets_coverable = false;
    bool vw_checked = false;
    bool witness() const;
    std::string to_text() const;
};

CounterexampleReport hall_counterexample(const Rational& epsilon, const SearchCaps& caps = {});

}  // namespace vwspace
