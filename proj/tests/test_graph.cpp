#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace vwspace;

namespace {

VwMatching one(std::vector<int> path) { return VwMatching{{VwComponent{std::move(path)}}}; }

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build_graph stores deduplicated adjacency") {
    auto g = build_graph({{0, 0}, {0, 1}}, 1, 2);
    CHECK(g.left_degree(0) == 2);
    CHECK(g.right_neighbors(1) == std::vector<int>{0});

    auto d = build_graph({{0, 0}, {0, 0}}, 1, 1);
    CHECK(d.edge_count() == 1);
    CHECK(d.left_degree(0) == 1);

    CHECK_THROWS_AS(build_graph({{0, 5}}, 1, 2), ValidationError);
}

TEST_CASE("left and right vertex sets of a matching") {
    // a=0, b=1 in R, c=0 in L
    auto f = one({0, 0, 1});
    CHECK(left_sets_of(f) == std::vector<int>{0});
    CHECK(right_sets_of(f) == std::vector<int>{0, 1});

    auto iso = one({3});
    CHECK(left_sets_of(iso).empty());
    CHECK(right_sets_of(iso) == std::vector<int>{3});

    VwMatching two{{VwComponent{{0, 0, 1}}, VwComponent{{2, 1, 3}}}};
    CHECK(left_sets_of(two).size() == 2);
    CHECK(right_sets_of(two).size() == 4);
}

TEST_CASE("validate_vw_matching") {
    auto g = build_graph({{0, 0}, {0, 1}}, 1, 2);
    CHECK(validate_vw_matching(g, one({0, 0, 1})).ok);

    auto big = build_graph({{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}}, 3, 4);
    auto r = validate_vw_matching(big, one({0, 0, 1, 1, 2, 2, 3}));
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("component too long") != std::string::npos);

    VwMatching shared{{VwComponent{{0, 0, 1}}, VwComponent{{1, 1, 2}}}};
    auto s = validate_vw_matching(big, shared);
    CHECK_FALSE(s.ok);
    CHECK(s.reason.find("not disjoint") != std::string::npos);

    CHECK_FALSE(validate_vw_matching(g, one({0, 0})).ok);
    CHECK_FALSE(validate_vw_matching(big, one({0, 0, 2})).ok);
}

TEST_CASE("find_vw_cover small cases") {
    auto g = build_graph({{0, 0}, {0, 1}}, 1, 2);
    auto f = find_vw_cover(g, {0});
    REQUIRE(f);
    CHECK(f->components.size() == 1);
    CHECK(f->components[0].path == std::vector<int>{0, 0, 1});

    auto lone = build_graph({{0, 0}}, 1, 1);
    CHECK_FALSE(find_vw_cover(lone, {0}));

    auto e = find_vw_cover(lone, {}, {0}, {0});
    REQUIRE(e);
    CHECK(e->empty());

    CHECK_THROWS_AS(find_vw_cover(g, {0}, {0}), ValidationError);
    SearchCaps tiny;
    tiny.vw_targets = 0;
    CHECK_THROWS_AS(find_vw_cover(g, {0}, {}, {}, tiny), ResourceError);
}

TEST_CASE("find_vw_cover on the base hypergraph incidence graph") {
    auto g = incidence_graph(find_base_hypergraph());
    CHECK(g.left_count() == 4);
    CHECK(g.right_count() == 6);
    CHECK_FALSE(find_vw_cover(g, {0, 1, 2, 3}));
    CHECK_FALSE(oracle::vw_coverable(g, {0, 1, 2, 3}));
    for (int drop = 0; drop < 4; ++drop) {
        std::vector<int> t;
        for (int l = 0; l < 4; ++l)
            if (l != drop) t.push_back(l);
        CHECK(find_vw_cover(g, t));
        CHECK(oracle::vw_coverable(g, t));
    }
}

TEST_CASE("find_vw_cover results are valid, covering, ban-respecting and monotone") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        int L = 2 + static_cast<int>(rng() % 5), R = 5 + static_cast<int>(rng() % 3);
        auto g = oracle::random_left3(L, R, rng);
        std::vector<int> t, bl, br;
        for (int l = 0; l < L; ++l) {
            if (rng() % 3 == 0) bl.push_back(l);
            else if (rng() % 2 == 0) t.push_back(l);
        }
        for (int r = 0; r < R; ++r)
            if (rng() % 5 == 0) br.push_back(r);
        auto f = find_vw_cover(g, t, bl, br);
        CHECK(f.has_value() == oracle::vw_coverable(g, t, bl, br));
        if (!f) continue;
        CHECK(validate_vw_matching(g, *f).ok);
        for (int l : t) CHECK(f->covers_left(l));
        for (int l : bl) CHECK_FALSE(f->covers_left(l));
        for (int r : br) CHECK_FALSE(f->covers_right(r));
        for (auto& c : f->components) CHECK(c.right_vertices().size() == c.left_vertices().size() + 1);
        for (std::size_t drop = 0; drop < t.size(); ++drop) {
            auto sub = t;
            sub.erase(sub.begin() + static_cast<long>(drop));
            CHECK(find_vw_cover(g, sub, bl, br));
        }
    }
}

TEST_CASE("is_expander examples") {
    Rational d = Rational(2) - Rational(1, 24);
    auto star = build_graph({{0, 0}, {0, 1}, {0, 2}}, 1, 3);
    CHECK(is_expander(star, 1, d).expander);

    auto dup = build_graph({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2, 2);
    auto r = is_expander(dup, 2, d);
    CHECK_FALSE(r.expander);
    CHECK(r.witness == std::vector<int>{0, 1});

    CHECK_THROWS_AS(is_expander(star, 0, d), ValidationError);
    SearchCaps tiny;
    tiny.expander_size = 1;
    CHECK_THROWS_AS(is_expander(dup, 2, d, tiny), ResourceError);
}

TEST_CASE("is_expander agrees with full enumeration on random adjacency graphs") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto g = adjacency_graph(gen_random_cnf(14, Rational(6, 7), seed));  // 12 clauses
        for (int s : {1, 2, 4, 8, 12}) {
            for (Rational d : {Rational(2) - Rational(1, 48), Rational(3, 2), Rational(1)}) {
                auto lib = is_expander(g, s, d);
                auto ref = oracle::expander(g, s, d.numerator(), d.denominator());
                CHECK(lib.expander == ref.expander);
                CHECK(lib.witness == ref.witness);
            }
        }
    }
}

TEST_CASE("is_expander is antitone in s and delta") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        auto g = oracle::random_left3(6, 8, rng);
        for (int s = 1; s <= 6; ++s)
            if (is_expander(g, s, Rational(7, 4)).expander) {
                CHECK(is_expander(g, s, Rational(3, 2)).expander);
                for (int t = 1; t <= s; ++t) CHECK(is_expander(g, t, Rational(7, 4)).expander);
            }
    }
}

TEST_CASE("bigraph file round trip") {
    auto g = adjacency_graph(gen_random_cnf(10, Rational(3), 4));
    std::string text = write_bigraph(g);
    std::istringstream in(text);
    auto back = read_bigraph(in);
    CHECK(back == g);
    CHECK(write_bigraph(back) == text);

    std::istringstream bad("p bigraph 1 1 1\ne 0 3\n");
    CHECK_THROWS_AS(read_bigraph(bad), ParseError);
}

TEST_CASE("component text form") {
    auto c = parse_component("4 1 2 0 3");
    CHECK(c.path == std::vector<int>{4, 1, 2, 0, 3});
    CHECK(c.canonical().path == std::vector<int>{3, 0, 2, 1, 4});
    CHECK(format_component(c) == "4 1 2 0 3");
}

}  // TEST_SUITE
