#include "oracles.hpp"
#include "vwspace/strategy.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace vwspace;

namespace {

using Rows = std::set<std::vector<bool>>;

Rows rows_of(const FlippableFamily& f) { return Rows(f.rows.begin(), f.rows.end()); }

// Assignments over R(c) satisfying every clause of c through a matched variable, by brute force.
Rows enumerate_component(const Cnf& phi, const VwComponent& c) {
    auto vars = c.right_vertices();
    std::sort(vars.begin(), vars.end());
    Rows out;
    for (int mask = 0; mask < (1 << vars.size()); ++mask) {
        Assignment a;
        for (std::size_t j = 0; j < vars.size(); ++j) a[vars[j]] = mask >> j & 1;
        bool ok = true;
        for (std::size_t i = 1; i < c.path.size(); i += 2) {
            Clause matched;
            for (int lit : phi.clauses[c.path[i]])
                if (std::abs(lit) - 1 == c.path[i - 1] || std::abs(lit) - 1 == c.path[i + 1]) matched.push_back(lit);
            ok = ok && oracle::clause_true(matched, a);
        }
        if (!ok) continue;
        std::vector<bool> row;
        for (std::size_t j = 0; j < vars.size(); ++j) row.push_back(mask >> j & 1);
        out.insert(row);
    }
    return out;
}

std::vector<Assignment> assignments_of(const ProductFamily& h) {
    std::vector<Assignment> out;
    h.for_each_assignment([&](const Assignment& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

struct Passing {
    Cnf phi;
    ExplicitStrategy cert;
};

// Sparse formulas at n = 12 where Cover's extracted strategy is 2-winning.
Passing passing(std::uint64_t seed) {
    Cnf phi = gen_random_cnf(12, Rational(1, 4), seed);
    auto g = adjacency_graph(phi);
    auto st = init_cover(g, Rational(1, 24), std::max(1, g.max_right_degree()), 2, HypothesisPolicy::report_only);
    return {phi, extract_strategy(phi, st, 2).materialize(2)};
}

}  // namespace

TEST_SUITE("strategy") {

TEST_CASE("is_flippable") {
    CHECK(is_flippable(lambda_family()));
    CHECK(is_flippable(make_family({0, 1}, {{true, false}, {false, true}})));
    CHECK_FALSE(is_flippable(make_family({0, 1}, {{true, false}, {true, true}})));
    CHECK_FALSE(is_flippable(make_family({0}, {})));

    CHECK(is_flippable(std::vector<Assignment>{}));
    CHECK(is_flippable(std::vector<Assignment>{{{0, true}}, {{0, false}, {1, true}}, {{1, false}}}));
    CHECK_FALSE(is_flippable(std::vector<Assignment>{{{0, true}}, {{0, true}, {1, false}}, {{1, true}}}));

    CHECK_THROWS_AS(make_family({0, 0}, {{true, true}}), ValidationError);
    CHECK_THROWS_AS(make_family({0, 1}, {{true}}), ValidationError);
}

TEST_CASE("make_family sorts the domain and permutes rows") {
    auto f = make_family({3, 1}, {{true, false}, {true, false}, {false, false}});
    CHECK(f.domain == std::vector<int>{1, 3});
    CHECK(f.rows == std::vector<std::vector<bool>>{{false, false}, {false, true}});
    CHECK(f.row(1) == Assignment{{1, false}, {3, true}});
}

TEST_CASE("product") {
    CHECK(product({}).rank() == 0);
    CHECK(product({lambda_family()}).rank() == 0);
    CHECK(product({}).assignment_count() == 1);

    auto a = make_family({0}, {{false}, {true}});
    auto b = make_family({1, 2}, {{true, false}, {false, true}, {true, true}});
    auto p = product({b, lambda_family(), a});
    CHECK(p.rank() == 2);
    CHECK(p.domain() == std::vector<int>{0, 1, 2});
    CHECK(p.assignment_count() == 6);
    CHECK(assignments_of(p).size() == 6);
    CHECK(p.extends(product({a})));
    CHECK(p.extends(product({})));
    CHECK_FALSE(product({a}).extends(p));
    CHECK(p == product({a, b}));

    CHECK_THROWS_AS(product({a, make_family({0, 5}, {{true, true}})}), ValidationError);
}

TEST_CASE("models") {
    Cnf phi{3, {{1, 2, 3}}};
    auto c = component_family(phi, adjacency_graph(phi), VwComponent{{0, 0, 1}});
    auto tr = tr_clause(phi.clauses[0]);
    CHECK(models(product({c}), tr));
    CHECK_FALSE(models(product({}), tr));
    // An unassigned variable keeps a boolean axiom nonzero.
    CHECK_FALSE(models(product({}), parse_polynomial("x1^2 - x1")));
    CHECK(models(product({c}), parse_polynomial("x1^2 - x1")));
    CHECK(models(product({}), Polynomial::constant(Rational(0))));
}

TEST_CASE("component_family") {
    Cnf phi{3, {{1, 2, 3}}};
    auto g = adjacency_graph(phi);
    auto f = component_family(phi, g, VwComponent{{0, 0, 1}});
    CHECK(f.domain == std::vector<int>{0, 1});
    CHECK(rows_of(f) == Rows{{true, false}, {false, true}, {true, true}});

    auto iso = component_family(phi, g, VwComponent{{2}});
    CHECK(iso.domain == std::vector<int>{2});
    CHECK(rows_of(iso) == Rows{{false}, {true}});

    // x=1 y=2 w=3 z=4 u=5; C1 = (x | y | w), C2 = (~y | z | u); path x C1 y C2 z
    Cnf two{5, {{1, 2, 3}, {-2, 4, 5}}};
    VwComponent path{{0, 0, 1, 1, 3}};
    auto t = component_family(two, adjacency_graph(two), path);
    CHECK(t.domain == std::vector<int>{0, 1, 3});
    CHECK(rows_of(t) == Rows{{true, false, false}, {true, false, true}, {false, true, true}, {true, true, true}});
    CHECK(rows_of(t) == enumerate_component(two, path));

    CHECK_THROWS_AS(component_family(phi, g, VwComponent{{0, 0}}), ValidationError);
}

TEST_CASE("component_family agrees with enumeration on random components") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Cnf phi = gen_random_cnf(10, Rational(1), seed);
        auto g = adjacency_graph(phi);
        auto f = find_vw_cover(g, {0, 1});
        if (!f) continue;
        for (auto& c : f->components) {
            auto fam = component_family(phi, g, c);
            CHECK(is_flippable(fam));
            CHECK(rows_of(fam) == enumerate_component(phi, c));
        }
    }
}

TEST_CASE("family_of_matching models the clauses it covers") {
    int seen = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Cnf phi = gen_random_cnf(12, Rational(1, 2), seed);
        auto g = adjacency_graph(phi);
        std::vector<int> t;
        for (int l = 0; l < g.left_count(); ++l) t.push_back(l);
        auto f = find_vw_cover(g, t);
        if (!f) continue;
        ++seen;
        auto h = family_of_matching(phi, g, *f);
        CHECK(h.rank() == static_cast<int>(f->components.size()));
        std::vector<FlippableFamily> parts;
        for (auto& c : f->components) parts.push_back(component_family(phi, g, c));
        CHECK(h == product(parts));
        auto rows = assignments_of(h);
        for (int l : left_sets_of(*f)) {
            CHECK(models(h, tr_clause(phi.clauses[l])));
            CHECK(oracle::family_implies(rows, tr_clause(phi.clauses[l])));
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("extend answers clause and boolean axioms") {
    Cnf phi = gen_random_cnf(12, Rational(1, 4), 1);
    auto g = adjacency_graph(phi);
    auto st = init_cover(g, Rational(1, 24), std::max(1, g.max_right_degree()), 2, HypothesisPolicy::report_only);
    auto ws = extract_strategy(phi, st, 2);
    auto m = phi.clauses.size();
    REQUIRE(ws.axioms().size() == m + 2 * static_cast<std::size_t>(phi.variable_count));
    VwMatching empty;

    for (std::size_t a = 0; a < m; ++a) {
        auto f = ws.extend(empty, a);
        REQUIRE(f);
        auto h = ws.family(*f);
        CHECK(models(h, ws.axioms()[a]));
        CHECK(oracle::family_implies(assignments_of(h), tr_clause(phi.clauses[a])));
    }
    for (int x = 0; x < phi.variable_count; ++x) {
        auto f = ws.extend(empty, m + 2 * static_cast<std::size_t>(x));
        REQUIRE(f);
        auto h = ws.family(*f);
        auto dom = h.domain();
        CHECK(std::binary_search(dom.begin(), dom.end(), x));
        bool zero = false, one = false;
        for (auto& a : assignments_of(h)) (a.at(x) ? one : zero) = true;
        CHECK((zero && one));
        CHECK(models(h, ws.axioms()[m + 2 * static_cast<std::size_t>(x)]));
    }
}

TEST_CASE("materialize is closed under restriction and 2-winning on sparse formulas") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto [phi, cert] = passing(seed);
        CHECK(cert.k == 2);
        std::set<std::vector<int>> members(cert.members.begin(), cert.members.end());
        CHECK(members.size() == cert.members.size());
        CHECK(members.count({}) == 1);
        for (auto& m : cert.members) {
            CHECK(m.size() <= 2);
            for (std::size_t drop = 0; drop < m.size(); ++drop) {
                auto sub = m;
                sub.erase(sub.begin() + static_cast<long>(drop));
                CHECK(members.count(sub) == 1);
            }
        }
        auto rep = check_k_winning(phi, cert, 2);
        CHECK_MESSAGE(rep.ok, rep.to_text());
        CHECK(rep.members == static_cast<std::int64_t>(cert.members.size()));
    }
}

TEST_CASE("check_k_winning on hand-made strategies") {
    Cnf phi{1, {{1}, {-1}}};
    ExplicitStrategy lambda;
    lambda.k = 0;
    lambda.members = {{}};
    CHECK(check_k_winning(phi, lambda, 0).ok);

    ExplicitStrategy x;
    x.k = 1;
    x.factors = {CertificateFactor{0, VwComponent{{0}}, make_family({0}, {{false}, {true}})}};
    x.members = {{}, {0}};
    auto rep = check_k_winning(phi, x, 1);
    CHECK_FALSE(rep.ok);
    CHECK(rep.reason.find("extension") != std::string::npos);

    ExplicitStrategy none;
    none.k = 1;
    auto e = check_k_winning(phi, none, 1);
    CHECK_FALSE(e.ok);
    CHECK(e.reason == "strategy is empty");
}

TEST_CASE("tampered certificates fail") {
    auto [phi, cert] = passing(1);
    REQUIRE(check_k_winning(phi, cert, 2).ok);

    auto no_lambda = cert;
    std::erase(no_lambda.members, std::vector<int>{});
    auto r1 = check_k_winning(phi, no_lambda, 2);
    CHECK_FALSE(r1.ok);
    CHECK(r1.reason.find("restriction") != std::string::npos);

    auto no_top = cert;
    std::erase_if(no_top.members, [](const std::vector<int>& m) { return m.size() == 2; });
    auto r2 = check_k_winning(phi, no_top, 2);
    CHECK_FALSE(r2.ok);
    CHECK(r2.reason.find("extension") != std::string::npos);
}

TEST_CASE("certificate text round trip") {
    auto [phi, cert] = passing(2);
    std::string text = cert.to_text();
    CHECK(text.rfind("p kwin 2 ", 0) == 0);
    std::istringstream in(text);
    auto back = parse_certificate(in);
    CHECK(back.to_text() == text);
    CHECK(back.members == cert.members);
    CHECK(check_k_winning(phi, back, 2).ok);

    std::istringstream bad_header("p res 2 0 0\n");
    CHECK_THROWS_AS(parse_certificate(bad_header), ParseError);
    std::istringstream bad_rows("p kwin 1 1 1\nt 0 comp 0 vars 0 rows 0x\nh\n");
    CHECK_THROWS_AS(parse_certificate(bad_rows), ParseError);
    std::istringstream bad_count("p kwin 1 0 2\nh\n");
    CHECK_THROWS_AS(parse_certificate(bad_count), ParseError);
}

TEST_CASE("to_rfree and check_rfree") {
    auto [phi, cert] = passing(1);
    auto one = to_rfree(cert, 1);
    REQUIRE(one.members.size() == 1);
    CHECK(one.members[0].pieces.empty());

    auto f = to_rfree(cert, 2);
    CHECK(f.members.size() > 1);
    for (auto& a : f.members) CHECK(a.pieces.size() <= 1);
    auto rep = check_rfree(phi, f, 1);
    CHECK_MESSAGE(rep.ok, rep.to_text());

    CHECK(check_rfree(phi, RFreeFamily{}, 1).reason == "family is empty");

    auto cut = f;
    cut.members.erase(cut.members.begin());  // the empty piecewise assignment sorts first
    auto r = check_rfree(phi, cut, 1);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("retraction") != std::string::npos);

    Cnf tiny{3, {{1, 2, 3}}};
    RFreeFamily bad{{PiecewiseAssignment{}, PiecewiseAssignment{{{{0, false}, {1, false}, {2, false}}}}}};
    auto c = check_rfree(tiny, bad, 1);
    CHECK_FALSE(c.ok);
    CHECK(c.reason.find("consistency") != std::string::npos);
}

TEST_CASE("claimed bounds are labelled as cited") {
    CHECK(claimed_kwin_bound(8).find("not re-proved") != std::string::npos);
    CHECK(claimed_rfree_bound(3).find("not re-proved") != std::string::npos);
}

}  // TEST_SUITE
