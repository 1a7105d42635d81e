#include "instances.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace vwspace;

namespace {

const Rational kEps(1, 24);

// Minimum size of an uncoverable C in L \ A with |C| <= bound, or -1.
int min_uncoverable(const BipartiteGraph& g, const std::vector<int>& A, const std::vector<int>& B, long long bound) {
    std::vector<int> free;
    for (int l = 0; l < g.left_count(); ++l)
        if (!std::binary_search(A.begin(), A.end(), l)) free.push_back(l);
    int best = -1;
    for (std::uint32_t m = 1; m < (1u << free.size()); ++m) {
        int k = std::popcount(m);
        if (k > bound || (best >= 0 && k >= best)) continue;
        std::vector<int> c;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (m >> i & 1) c.push_back(free[i]);
        if (!oracle::vw_coverable(g, c, A, B)) best = k;
    }
    return best;
}

std::vector<int> random_subset(int n, std::mt19937_64& rng, int one_in) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (rng() % one_in == 0) out.push_back(i);
    return out;
}

}  // namespace

TEST_SUITE("covergame") {

TEST_CASE("matching property examples") {
    std::mt19937_64 rng(1);
    auto inst = instances::draw(rng, 3, 5, kEps);
    REQUIRE(inst);
    auto& g = inst->first.graph;
    CHECK(has_matching_property(g, {}, {}, inst->first.s, kEps, true).holds);

    std::vector<int> all(g.left_count());
    std::iota(all.begin(), all.end(), 0);
    CHECK(has_matching_property(g, all, {}, 5, kEps, false).holds);

    // L vertex 1 has a single neighbor
    auto weak = build_graph({{0, 0}, {0, 1}, {1, 2}}, 2, 3);
    auto r = has_matching_property(weak, {}, {}, 2, kEps, false);
    CHECK_FALSE(r.holds);
    CHECK(r.witness == std::vector<int>{1});
}

TEST_CASE("matching property agrees with subset enumeration") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 150; ++it) {
        int L = 2 + static_cast<int>(rng() % 5);
        auto g = instances::random_left3_graph(L, 2 * L, rng);
        auto A = random_subset(L, rng, 4), B = random_subset(2 * L, rng, 4);
        long long s = 1 + static_cast<long long>(rng() % L);
        auto r = has_matching_property(g, A, B, s, kEps, false);
        int want = min_uncoverable(g, A, B, s);
        CHECK(r.holds == (want < 0));
        if (!r.holds) {
            CHECK(static_cast<int>(r.witness.size()) == want);
            CHECK_FALSE(find_vw_cover(g, r.witness, A, B));
        }
    }
}

TEST_CASE("small uncoverable sets on verified expanders") {
    std::mt19937_64 rng(3);
    int failures = 0;
    for (int it = 0; it < 80; ++it) {
        auto inst = instances::draw(rng, 3, 6, kEps);
        REQUIRE(inst);
        auto& g = inst->first.graph;
        CHECK_FALSE(smallC_witness(g, {}, {}, inst->first.s, kEps));
        auto A = random_subset(g.left_count(), rng, 3), B = random_subset(g.right_count(), rng, 3);
        auto c = smallC_witness(g, A, B, inst->first.s, kEps);
        int want = min_uncoverable(g, A, B, g.left_count());
        CHECK(c.has_value() == (want >= 0));
        if (!c) continue;
        ++failures;
        CHECK(Rational(static_cast<std::int64_t>(c->size())) < 2 * Rational(static_cast<std::int64_t>(B.size())) / kEps);
        CHECK(static_cast<int>(c->size()) == want);
        CHECK_FALSE(find_vw_cover(g, *c, A, B));
        for (std::size_t k = 0; k < c->size(); ++k) {
            auto sub = *c;
            sub.erase(sub.begin() + static_cast<long>(k));
            CHECK(find_vw_cover(g, sub, A, B));
        }
    }
    CHECK(failures > 5);
}

TEST_CASE("init_cover") {
    std::mt19937_64 rng(4);
    auto inst = instances::draw(rng, 4, 6, kEps);
    REQUIRE(inst);
    CHECK(inst->second.M.empty());  // D is the largest right degree
    CHECK(inst->second.mu == mu_formula(kEps, inst->first.s, inst->first.D));

    // With a smaller D the pre-cover must handle S_D.
    int checked = 0;
    for (int it = 0; it < 200 && checked < 20; ++it) {
        auto g = instances::random_left3_graph(5, 10, rng);
        int D = std::max(1, g.max_right_degree() - 1);
        long long s = 2 * ceil_of(Rational(72 * (D + 1)) / kEps * Rational(D + 2) + 1);
        CoverStrategyState st;
        try {
            st = init_cover(g, kEps, D, s);
        } catch (const HypothesisError&) {
            continue;
        }
        ++checked;
        CHECK(validate_vw_matching(g, st.M).ok);
        auto LM = left_sets_of(st.M), RM = right_sets_of(st.M);
        for (int r = 0; r < g.right_count(); ++r) {
            if (g.right_degree(r) > D) CHECK(st.M.covers_right(r));
            if (std::binary_search(RM.begin(), RM.end(), r)) continue;
            int deg = 0;
            for (int l : g.right_neighbors(r))
                if (!std::binary_search(LM.begin(), LM.end(), l)) ++deg;
            CHECK(deg <= D);
        }
        CHECK(min_uncoverable(g, LM, RM, g.left_count()) < 0);
    }
    CHECK(checked > 0);
}

TEST_CASE("hypothesis failures") {
    auto dup = build_graph({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}, 2, 3);
    CHECK_THROWS_AS(init_cover(dup, kEps, 2, 2 * 7000), HypothesisError);
    auto st = init_cover(dup, kEps, 2, 2 * 7000, HypothesisPolicy::report_only);
    CHECK_FALSE(st.hypotheses.ok());
    CHECK(st.hypotheses.to_text().find("FAIL") != std::string::npos);
    CHECK_THROWS_AS(init_cover(dup, Rational(1, 20), 2, 2 * 7000), HypothesisError);
}

TEST_CASE("respond basics") {
    std::mt19937_64 rng(6);
    auto inst = instances::draw(rng, 4, 5, kEps);
    REQUIRE(inst);
    auto st = inst->second;
    st.mu = 3;
    st.mu_override = true;
    auto r = respond(st, {Side::left, 0});
    CHECK(r.answered);
    CHECK(st.F.covers_left(0));
    CHECK(validate_vw_matching(st.graph, st.F).ok);
    auto before = st.F;
    auto again = respond(st, {Side::left, 0});
    CHECK_FALSE(again.changed);
    CHECK(st.F == before);

    remove_component(st, 0);
    CHECK(st.F.empty());
    CHECK_THROWS_AS(remove_component(st, 0), GameRuleError);
    CHECK(respond(st, {Side::left, 0}).answered);
    CHECK(st.F.covers_left(0));

    st.F = {};
    st.mu = 0;
    CHECK_THROWS_AS(respond(st, {Side::left, 0}), GameRuleError);
}

TEST_CASE("R challenge with all neighbors taken yields an isolated component") {
    std::mt19937_64 rng(7);
    int seen = 0;
    for (int it = 0; it < 300 && seen < 5; ++it) {
        auto inst = instances::draw(rng, 2, 5, kEps);
        REQUIRE(inst);
        auto st = inst->second;
        st.mu = 4;
        st.mu_override = true;
        auto& g = st.graph;
        respond(st, {Side::left, static_cast<int>(rng() % g.left_count())});
        auto LF = left_sets_of(st.F);
        for (int r = 0; r < g.right_count(); ++r) {
            if (st.F.covers_right(r) || g.right_degree(r) == 0) continue;
            bool taken = true;
            for (int l : g.right_neighbors(r)) taken = taken && std::binary_search(LF.begin(), LF.end(), l);
            if (!taken) continue;
            respond(st, {Side::right, r});
            REQUIRE(st.F.size() >= 2);
            CHECK(st.F.components.back().path == std::vector<int>{r});
            ++seen;
            break;
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("candidate components stay within 12d") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 100; ++it) {
        auto g = instances::random_left3_graph(6, 9, rng);
        std::vector<char> bl(6, 0), br(9, 0);
        for (auto& b : br) b = rng() % 4 == 0;
        int d = 0;
        for (int r = 0; r < 9; ++r)
            if (!br[r]) d = std::max(d, g.right_degree(r));
        for (int v = 0; v < 6; ++v) {
            auto pi = candidate_components(g, v, bl, br);
            CHECK(static_cast<int>(pi.size()) <= 12 * d);
            for (auto& c : pi) {
                CHECK(c.contains_left(v));
                CHECK(validate_vw_matching(g, VwMatching{{c}}).ok);
                CHECK(c.canonical() == c);
            }
            CHECK(std::is_sorted(pi.begin(), pi.end(), [](const VwComponent& a, const VwComponent& b) {
                return a.path.size() < b.path.size() || (a.path.size() == b.path.size() && a < b);
            }));
        }
    }
}

TEST_CASE("random and greedy games on verified instances") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 60; ++it) {
        auto inst = instances::draw(rng, 2, 6, kEps);
        REQUIRE(inst);
        for (auto adv : {AdversaryKind::random, AdversaryKind::greedy_degree}) {
            auto st = inst->second;
            st.mu = 1 + static_cast<long long>(rng() % 3);
            st.mu_override = true;
            PlayOptions o;
            o.adversary = adv;
            o.seed = rng();
            o.max_moves = 40;
            auto r = play(st, o);
            CHECK_FALSE(r.cover_lost);
            CHECK(r.invalid_moves == 0);
            CHECK(r.budget_violations == 0);
            CHECK(r.candidate_bound_violations == 0);
            CHECK(r.property_losses == 0);
            std::istringstream in(r.transcript.to_text());
            auto t = parse_transcript(in);
            CHECK(t.to_text() == r.transcript.to_text());
            CHECK(verify_transcript(inst->first.graph, t, st.mu).ok);
        }
    }
}

TEST_CASE("exhaustive games agree with the fixpoint solver") {
    std::mt19937_64 rng(10);
    for (int it = 0; it < 12; ++it) {
        auto inst = instances::draw(rng, 2, 4, kEps, 10);
        REQUIRE(inst);
        for (int mu = 1; mu <= 2; ++mu) {
            auto st = inst->second;
            st.mu = mu;
            st.mu_override = true;
            PlayOptions o;
            o.adversary = AdversaryKind::exhaustive;
            auto r = play(st, o);
            CHECK_FALSE(r.cover_lost);
            CHECK(r.invalid_moves == 0);
            CHECK(r.positions > 0);
            oracle::GameSolver solver(inst->first.graph, mu);
            CHECK(solver.cover_wins());
        }
    }
}

TEST_CASE("mu = 0 games only allow removals") {
    std::mt19937_64 rng(11);
    auto inst = instances::draw(rng, 3, 4, kEps);
    REQUIRE(inst);
    auto st = inst->second;
    st.mu = 0;
    st.mu_override = true;
    PlayOptions o;
    o.max_moves = 10;
    auto r = play(st, o);
    CHECK_FALSE(r.cover_lost);
    for (auto& m : r.transcript.moves) CHECK(m.kind == MoveKind::remove);
    CHECK(verify_transcript(inst->first.graph, r.transcript, 0).ok);
}

TEST_CASE("verify_transcript rejections") {
    std::mt19937_64 rng(12);
    auto inst = instances::draw(rng, 4, 5, kEps);
    REQUIRE(inst);
    auto st = inst->second;
    st.mu = 2;
    st.mu_override = true;
    auto& g = inst->first.graph;
    GameTranscript t;
    t.left_count = g.left_count();
    t.right_count = g.right_count();
    t.mu = 2;
    t.mu_override = true;
    t.epsilon = kEps;
    t.s = inst->first.s;
    t.D = inst->first.D;
    t.M = st.M;

    GameMove a;
    a.challenge = {Side::left, 0};
    respond(st, a.challenge);
    a.after = st.F;
    GameMove b;
    b.challenge = {Side::left, st.F.covers_left(1) ? 2 : 1};
    respond(st, b.challenge);
    b.after = st.F;
    t.moves = {a, b};
    CHECK(verify_transcript(g, t, 2).ok);

    auto drop = t;
    drop.moves[1].after.components.erase(drop.moves[1].after.components.begin());
    auto r = verify_transcript(g, drop, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_move == 2);
    CHECK(r.reason.find("not an extension") != std::string::npos);

    auto over = t;
    if (over.moves[1].after.size() == 2) {
        auto r1 = verify_transcript(g, over, 1);
        CHECK_FALSE(r1.ok);
    }
    auto uncovered = t;
    uncovered.moves[0].after = {};
    CHECK_FALSE(verify_transcript(g, uncovered, 2).ok);

    std::istringstream bad("p covergame 2 3 mu 1 formula\nm jump 3\n");
    CHECK_THROWS_AS(parse_transcript(bad), ParseError);
}

TEST_CASE("interactive play echoes each matching") {
    std::mt19937_64 rng(13);
    auto inst = instances::draw(rng, 3, 4, kEps);
    REQUIRE(inst);
    auto st = inst->second;
    st.mu = 2;
    st.mu_override = true;
    std::istringstream in("L 0\nR 1\nremove 0\nbogus\nquit\n");
    std::ostringstream out;
    PlayOptions o;
    o.adversary = AdversaryKind::interactive;
    o.in = &in;
    o.out = &out;
    auto r = play(st, o);
    CHECK(r.transcript.moves.size() == 3);
    auto text = out.str();
    CHECK(text.find("f ") != std::string::npos);
    CHECK(text.find("unknown move") != std::string::npos);
    CHECK(verify_transcript(inst->first.graph, r.transcript, 2).ok);
}

TEST_CASE("game solver sanity") {
    // one clause on two variables: Cover covers it with the 2-path
    auto g = build_graph({{0, 0}, {0, 1}}, 1, 2);
    CHECK(oracle::GameSolver(g, 1).cover_wins());
    // degree-1 clause cannot be covered
    auto h = build_graph({{0, 0}}, 1, 1);
    CHECK_FALSE(oracle::GameSolver(h, 1).cover_wins());
    // two clauses sharing both variables: after one is covered the other is stranded
    auto k = build_graph({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2, 2);
    CHECK_FALSE(oracle::GameSolver(k, 2).cover_wins());
    CHECK(oracle::mu2_trap(k).has_value());
}

}  // TEST_SUITE
