#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace vwspace;

namespace {

// Random hypergraph with distinct edges of size 2-3 and no isolated vertex.
Hypergraph random_hypergraph(std::mt19937_64& rng, int max_vertices, int max_edges) {
    int n = 3 + static_cast<int>(rng() % (max_vertices - 2));
    int m = 1 + static_cast<int>(rng() % max_edges);
    std::set<std::vector<int>> edges;
    for (int tries = 0; static_cast<int>(edges.size()) < m && tries < 100; ++tries) {
        int k = 2 + static_cast<int>(rng() % 2);
        std::set<int> e;
        while (static_cast<int>(e.size()) < k) e.insert(static_cast<int>(rng() % n));
        edges.insert({e.begin(), e.end()});
    }
    std::vector<int> relabel(n, -1);
    int next = 0;
    for (auto& e : edges)
        for (int v : e)
            if (relabel[v] < 0) relabel[v] = next++;
    Hypergraph h;
    h.vertex_count = next;
    for (auto e : edges) {
        for (int& v : e) v = relabel[v];
        std::sort(e.begin(), e.end());
        h.edges.push_back(e);
    }
    return h;
}

std::vector<int> all_edges(const Hypergraph& h) {
    std::vector<int> v(h.edge_count());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<int> without(std::vector<int> v, int x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
    return v;
}

const HypothesisItem* item(const HallHypothesisReport& r, const std::string& prefix) {
    for (auto& i : r.items)
        if (i.name.rfind(prefix, 0) == 0) return &i;
    return nullptr;
}

}  // namespace

TEST_SUITE("hall") {

TEST_CASE("to_hypergraph") {
    // c1 -> {a,b,d}, c2 -> {a,b}
    auto g = build_graph({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}}, 2, 3);
    auto v = to_hypergraph(g);
    REQUIRE(v.hypergraph.edge_count() == 2);
    CHECK(v.hypergraph.edges[0] == std::vector<int>{0, 1, 2});
    CHECK(v.hypergraph.edges[1] == std::vector<int>{0, 1});

    auto dup = build_graph({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}, 2, 3);
    try {
        to_hypergraph(dup);
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("duplicate neighborhood") != std::string::npos);
    }
}

TEST_CASE("find_2path_cover small cases") {
    Hypergraph one{3, {{0, 1, 2}}};
    auto f = find_2path_cover(one);
    REQUIRE(f);
    CHECK(f->pairs[0] == std::pair<int, int>{0, 1});

    Hypergraph chain{3, {{0, 1}, {1, 2}}};
    auto c = find_2path_cover(chain);
    REQUIRE(c);
    CHECK(validate_2path_cover(chain, *c).ok);

    Hypergraph three{4, {{0, 1}, {1, 2}, {2, 3}}};
    CHECK_FALSE(find_2path_cover(three));
    CHECK_FALSE(oracle::two_path_coverable(three, all_edges(three)));
}

TEST_CASE("find_2path_cover agrees with pair enumeration") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 400; ++it) {
        auto h = random_hypergraph(rng, 8, 6);
        auto edges = all_edges(h);
        auto f = find_2path_cover(h, edges);
        CHECK(f.has_value() == oracle::two_path_coverable(h, edges));
        if (f) CHECK(validate_2path_cover(h, *f).ok);
        int forbidden = static_cast<int>(rng() % h.vertex_count);
        auto g = find_2path_cover(h, edges, {forbidden});
        CHECK(g.has_value() == oracle::two_path_coverable(h, edges, forbidden));
    }
}

TEST_CASE("VW-cover and 2-path cover agree on random valid graphs") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 200; ++it) {
        auto g = oracle::random_left3(2 + static_cast<int>(rng() % 4), 6, rng);
        auto v = to_hypergraph(g);
        int L = g.left_count();
        for (std::uint32_t m = 0; m < (1u << L); ++m) {
            std::vector<int> t;
            for (int l = 0; l < L; ++l)
                if (m >> l & 1) t.push_back(l);
            CHECK(find_vw_cover(g, t).has_value() == find_2path_cover(v.hypergraph, t).has_value());
        }
    }
}

TEST_CASE("base hypergraph") {
    auto b = find_base_hypergraph();
    CHECK(b.vertex_count == 6);
    CHECK(b.edge_count() == 4);
    auto edges = all_edges(b);
    CHECK_FALSE(find_2path_cover(b, edges));
    CHECK_FALSE(oracle::two_path_coverable(b, edges));
    for (int e = 0; e < 4; ++e) {
        CHECK(find_2path_cover(b, without(edges, e)));
        CHECK(oracle::two_path_coverable(b, without(edges, e)));
    }
    CHECK(is_critically_uncoverable(b));
}

TEST_CASE("gadget interface") {
    auto gad = find_gadget();
    auto& h = gad.hypergraph;
    CHECK(h.vertex_count == 12);
    CHECK(h.edge_count() == 7);
    auto edges = all_edges(h);
    // every cover uses x
    CHECK(oracle::two_path_coverable(h, edges));
    CHECK_FALSE(oracle::two_path_coverable(h, edges, gad.x));
    for (int e = 0; e < h.edge_count(); ++e) CHECK(oracle::two_path_coverable(h, without(edges, e), gad.x));

    auto base = find_base_hypergraph();
    for (int n = 0; n <= 2; ++n) {
        auto a = amplify(base, gad, n);
        CHECK(a.vertex_count == 6 + 10 * n);
        CHECK(a.edge_count() == 4 + 6 * n);
    }
    CHECK(amplify(base, gad, 0) == base);
}

TEST_CASE("amplified hypergraphs are critically uncoverable") {
    auto base = find_base_hypergraph();
    auto gad = find_gadget();
    auto a = amplify(base, gad, 1);
    auto edges = all_edges(a);
    CHECK_FALSE(oracle::two_path_coverable(a, edges));
    for (int e = 0; e < a.edge_count(); ++e) CHECK(oracle::two_path_coverable(a, without(edges, e)));
}

TEST_CASE("amplification count") {
    CHECK(amplification_count(Rational(2, 5)) == 1);
    CHECK(amplification_count(Rational(1, 2)) == 0);
    // (6+10n)/(4+6n) >= 2 - eps, smallest n
    for (Rational eps : {Rational(7, 20), Rational(9, 25), Rational(3, 8), Rational(2, 5), Rational(9, 20)}) {
        int n = amplification_count(eps);
        CHECK(Rational(6 + 10 * n, 4 + 6 * n) >= 2 - eps);
        if (n > 0) CHECK(Rational(6 + 10 * (n - 1), 4 + 6 * (n - 1)) < 2 - eps);
    }
    CHECK_THROWS(amplification_count(Rational(1, 3)));
}

TEST_CASE("check_hall_hypotheses") {
    auto star = build_graph({{0, 0}, {0, 1}, {0, 2}}, 1, 3);
    CHECK(check_hall_hypotheses(star, Rational(1, 24)).ok());

    auto dup = build_graph({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}, 2, 3);
    auto r = check_hall_hypotheses(dup, Rational(1, 24));
    CHECK_FALSE(r.ok());
    auto* d = item(r, "distinct");
    REQUIRE(d);
    CHECK_FALSE(d->ok);
    CHECK(d->detail.find('0') != std::string::npos);
    CHECK(d->detail.find('1') != std::string::npos);

    auto g = incidence_graph(amplify(find_base_hypergraph(), find_gadget(), 1));
    CHECK(check_hall_hypotheses(g, Rational(2, 5)).ok());
    CHECK_FALSE(find_vw_cover(g, all_edges(amplify(find_base_hypergraph(), find_gadget(), 1))));
}

TEST_CASE("detect_reducible") {
    Hypergraph single{2, {{0, 1}}};
    auto m = detect_reducible(single, default_patterns());
    REQUIRE_FALSE(m.empty());
    CHECK(m[0].pattern == "a");
    auto rep = discharge_audit(single, Rational(1, 24));
    CHECK(rep.degree_one_vertices.size() != rep.degree_one_edges.size());

    // every vertex of degree 3
    Hypergraph k4{4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    CHECK(detect_reducible(k4, default_patterns()).empty());

    std::istringstream bad("pattern q\nedge 4 1\nend\n");
    CHECK_THROWS_AS(parse_patterns(bad), ParseError);
}

TEST_CASE("reducible configurations compose with any cover of the rest") {
    std::mt19937_64 rng(17);
    int matches = 0;
    for (int it = 0; it < 400; ++it) {
        auto h = random_hypergraph(rng, 9, 6);
        for (auto& m : detect_reducible(h, default_patterns())) {
            ++matches;
            auto local = local_cover(h, m);
            REQUIRE(local);
            CHECK(local->edges == m.edges);
            CHECK(validate_2path_cover(h, *local).ok);
            auto deg = h.degrees();
            for (auto& [a, b] : local->pairs) {
                CHECK(deg[a] <= 2);
                CHECK(deg[b] <= 2);
            }
            auto rest = all_edges(h);
            for (int e : m.edges) rest = without(rest, e);
            CHECK(oracle::two_path_coverable(h, rest) == oracle::two_path_coverable(h, all_edges(h)));
        }
    }
    CHECK(matches > 50);
}

TEST_CASE("discharge audit charge identities") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
        auto h = random_hypergraph(rng, 10, 7);
        auto r = discharge_audit(h, Rational(1, 24));
        std::int64_t e2 = static_cast<std::int64_t>(r.size_two_edges.size());
        std::int64_t sd = static_cast<std::int64_t>(r.degree_one_edges.size());
        std::int64_t sd2 = static_cast<std::int64_t>(r.degree_one_size_two.size());
        CHECK(r.total_charge == 3 * h.edge_count() - e2 - 3 * sd + sd2);
        CHECK(r.total_charge_summed == r.total_charge);
        std::int64_t sizes = 0;
        for (auto& e : h.edges) sizes += static_cast<std::int64_t>(e.size());
        CHECK(r.initial_vertex_charge == sizes);
        if (r.configuration_free && r.lines.front().holds) CHECK_FALSE(r.fully_consistent);
    }
    CHECK_THROWS_AS(discharge_audit(Hypergraph{2, {{0, 1}}}, Rational(1, 2)), ValidationError);
}

TEST_CASE("discharge audit on a single size-2 edge") {
    auto r = discharge_audit(Hypergraph{2, {{0, 1}}}, Rational(1, 24));
    CHECK(r.average_degree == Rational(1));
    CHECK(r.degree_one_vertices == std::vector<int>{0, 1});
    CHECK(r.degree_one_edges == std::vector<int>{0});
    CHECK_FALSE(r.configuration_free);
    CHECK_FALSE(r.fully_consistent);
}

TEST_CASE("hall harness at small size") {
    auto r = hall_verify(5, Rational(1, 24));
    CHECK(r.counterexamples == 0);
    CHECK(r.graphs_checked > 1000);
    CHECK(r.to_text().find("0 counterexamples, " + std::to_string(r.graphs_checked) + " graphs checked") !=
          std::string::npos);
}

TEST_CASE("hypergraph file round trip") {
    auto h = amplify(find_base_hypergraph(), find_gadget(), 1);
    std::string text = write_hgraph(h);
    std::istringstream in(text);
    CHECK(read_hgraph(in) == h);
    std::istringstream bad("p hgraph 3 1\nh 0 1 2 3\n");
    CHECK_THROWS_AS(read_hgraph(bad), Error);
}

}  // TEST_SUITE
