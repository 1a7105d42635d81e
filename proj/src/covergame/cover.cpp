#include "vwspace/covergame.hpp"

#include <algorithm>
#include <sstream>

namespace vwspace {

std::string to_string(const Challenge& c) {
    return std::string(c.side == Side::left ? "L " : "R ") + std::to_string(c.vertex);
}

long long mu_formula(const Rational& epsilon, long long s, int D) {
    if (D < 1) throw ValidationError("D must be at least 1");
    return floor_of(epsilon * Rational(s) / Rational(144 * static_cast<std::int64_t>(D)));
}

bool CoverStrategyState::budget_ok() const {
    auto r = normalized([&] {
        auto a = right_sets_of(M), b = right_sets_of(F);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }());
    return Rational(2 * static_cast<std::int64_t>(r.size())) / epsilon <= Rational(s);
}

std::vector<VwComponent> candidate_components(const BipartiteGraph& g, int v, const std::vector<char>& banned_left,
                                              const std::vector<char>& banned_right) {
    std::vector<VwComponent> two, four;
    std::vector<int> nb;
    for (int r : g.left_neighbors(v))
        if (!banned_right[r]) nb.push_back(r);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) two.push_back(VwComponent{{nb[i], v, nb[j]}});
    for (int r1 : nb)
        for (int r0 : nb) {
            if (r0 == r1) continue;
            for (int u : g.right_neighbors(r1)) {
                if (u == v || banned_left[u]) continue;
                for (int r2 : g.left_neighbors(u)) {
                    if (r2 == r0 || r2 == r1 || banned_right[r2]) continue;
                    four.push_back(VwComponent{{r0, v, r1, u, r2}}.canonical());
                }
            }
        }
    std::sort(two.begin(), two.end());
    std::sort(four.begin(), four.end());
    two.insert(two.end(), four.begin(), four.end());
    return two;
}

namespace {

struct Step {
    std::optional<VwComponent> comp;
    bool property_kept = true;
    int candidates = 0;
    int bound = 0;
};

struct Banned {
    std::vector<char> left, right;

    Banned(const BipartiteGraph& g, const std::vector<const VwMatching*>& parts)
        : left(g.left_count(), 0), right(g.right_count(), 0) {
        for (auto* f : parts)
            for (auto& c : f->components) add(c);
    }
    void add(const VwComponent& c) {
        for (int l : c.left_vertices()) left[l] = 1;
        for (int r : c.right_vertices()) right[r] = 1;
    }
    std::vector<int> left_list() const { return list(left); }
    std::vector<int> right_list() const { return list(right); }
    static std::vector<int> list(const std::vector<char>& m) {
        std::vector<int> out;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) out.push_back(static_cast<int>(i));
        return out;
    }
};

bool property_with(const CoverStrategyState& st, Banned b, const VwComponent& c, const SearchCaps& caps) {
    b.add(c);
    return has_matching_property(st.graph, b.left_list(), b.right_list(), st.s, st.epsilon, st.expander_verified, caps)
        .holds;
}

bool enforcing(const CoverStrategyState& st) { return st.policy == HypothesisPolicy::enforce; }

Step cover_left(const CoverStrategyState& st, const Banned& b, int v, const SearchCaps& caps) {
    const BipartiteGraph& g = st.graph;
    Step out;
    int d = 0;
    for (int r = 0; r < g.right_count(); ++r)
        if (!b.right[r]) d = std::max(d, g.right_degree(r));
    auto pi = candidate_components(g, v, b.left, b.right);
    out.candidates = static_cast<int>(pi.size());
    out.bound = 12 * d;
    if (out.candidates > out.bound && enforcing(st))
        throw InconsistencyError("|Pi| = " + std::to_string(out.candidates) + " exceeds 12d = " +
                                 std::to_string(out.bound) + " at L vertex " + std::to_string(v));
    for (auto& c : pi)
        if (property_with(st, b, c, caps)) {
            out.comp = c;
            return out;
        }
    if (enforcing(st))
        throw InconsistencyError("no connected VW-matching through L vertex " + std::to_string(v) +
                                 " preserves the matching property");
    out.property_kept = false;
    if (!pi.empty()) out.comp = pi.front();
    return out;
}

// Covers the N(v) \ A part first, then keeps only the component holding v.
Step cover_right(const CoverStrategyState& st, const Banned& start, int v, const SearchCaps& caps) {
    const BipartiteGraph& g = st.graph;
    Banned b = start;
    Step out;
    std::vector<VwComponent> added;
    for (int u : g.right_neighbors(v)) {
        if (b.left[u]) continue;
        Step s = cover_left(st, b, u, caps);
        out.candidates = std::max(out.candidates, s.candidates);
        out.bound = std::max(out.bound, s.bound);
        out.property_kept = out.property_kept && s.property_kept;
        if (!s.comp) return out;
        b.add(*s.comp);
        added.push_back(*s.comp);
    }
    VwComponent mine{{v}};
    for (auto& c : added)
        if (c.contains_right(v)) mine = c;
    if (!property_with(st, start, mine, caps)) {
        if (enforcing(st))
            throw InconsistencyError("component for R vertex " + std::to_string(v) +
                                     " does not preserve the matching property");
        out.property_kept = false;
    }
    out.comp = mine;
    return out;
}

}  // namespace

CoverStrategyState init_cover(const BipartiteGraph& g, const Rational& epsilon, int D, long long s,
                              HypothesisPolicy policy, const SearchCaps& caps) {
    if (epsilon <= Rational(0)) throw ValidationError("epsilon must be positive");
    if (s < 1) throw ValidationError("s must be positive");
    CoverStrategyState st;
    st.graph = g;
    st.epsilon = epsilon;
    st.s = s;
    st.D = D;
    st.mu = mu_formula(epsilon, s, D);
    st.policy = policy;

    auto& items = st.hypotheses.items;
    {
        HypothesisItem it{"left degree = 3", true, ""};
        for (int l = 0; l < g.left_count(); ++l)
            if (g.left_degree(l) != 3) {
                it.ok = false;
                it.detail = "L vertex " + std::to_string(l) + " has degree " + std::to_string(g.left_degree(l));
                break;
            }
        items.push_back(it);
    }
    {
        Rational delta = Rational(2) - epsilon / Rational(2);
        HypothesisItem it{"(s, 2-eps/2)-expander", true, ""};
        try {
            auto e = is_expander(g, s, delta, caps);
            it.ok = e.expander;
            if (!e.expander) it.detail = "violating set {" + join(e.witness) + "}";
        } catch (const ResourceError& e) {
            if (policy == HypothesisPolicy::enforce) throw;
            it.ok = false;
            it.detail = std::string("not checked: ") + e.what();
        }
        st.expander_verified = it.ok;
        items.push_back(it);
    }
    int maxdeg = g.right_count() ? g.max_right_degree() : 0;
    {
        HypothesisItem it{"72d/eps(|S_d|+d)+1 <= s/2 for D <= d <= max(D, max degree)", true, ""};
        for (int d = D; d <= std::max(D, maxdeg); ++d) {
            std::int64_t sd = 0;
            for (int r = 0; r < g.right_count(); ++r) sd += g.right_degree(r) > d;
            Rational lhs = Rational(72 * static_cast<std::int64_t>(d) * (sd + d)) / epsilon + Rational(1);
            if (lhs > Rational(s, 2)) {
                it.ok = false;
                it.detail = "fails at d = " + std::to_string(d) + ": " + to_string(lhs) + " > " + to_string(Rational(s, 2));
                break;
            }
        }
        items.push_back(it);
    }
    items.push_back({"eps < 1/23", epsilon < Rational(1, 23), "eps = " + to_string(epsilon)});
    if (policy == HypothesisPolicy::enforce && !st.hypotheses.ok())
        throw HypothesisError("cover strategy hypotheses fail:\n" + st.hypotheses.to_text());

    for (int r = 0; r < g.right_count(); ++r)
        if (g.right_degree(r) > D) st.high_degree.push_back(r);
    std::stable_sort(st.high_degree.begin(), st.high_degree.end(),
                     [&](int a, int b) { return g.right_degree(a) > g.right_degree(b); });
    bool complete = true;
    for (int v : st.high_degree) {
        if (st.M.covers_right(v)) continue;
        Step step = cover_right(st, Banned(g, {&st.M}), v, caps);
        if (!step.comp) {
            complete = false;
            continue;
        }
        st.M.components.push_back(*step.comp);
    }
    if (!complete) {
        if (policy == HypothesisPolicy::enforce)
            throw InconsistencyError("pre-cover could not cover every R vertex of degree > D");
        items.push_back({"pre-cover covers S_D", false, "some high-degree R vertex left uncovered"});
    }
    if (right_sets_of(st.M).size() > 3 * st.high_degree.size())
        throw InconsistencyError("|R(M)| exceeds 3|S_D|");
    return st;
}

RespondResult respond(CoverStrategyState& st, const Challenge& c, const SearchCaps& caps) {
    const BipartiteGraph& g = st.graph;
    int limit = c.side == Side::left ? g.left_count() : g.right_count();
    if (c.vertex < 0 || c.vertex >= limit) throw GameRuleError("no vertex " + to_string(c));
    RespondResult res;
    bool covered = c.side == Side::left ? st.F.covers_left(c.vertex) : st.F.covers_right(c.vertex);
    if (covered) return res;
    if (static_cast<long long>(st.F.size()) >= st.mu)
        throw GameRuleError("challenge with " + std::to_string(st.F.size()) + " components and mu = " +
                            std::to_string(st.mu));
    int in_m = c.side == Side::left ? st.M.component_of_left(c.vertex) : st.M.component_of_right(c.vertex);
    if (in_m >= 0) {
        st.F.components.push_back(st.M.components[in_m]);
    } else {
        Banned b(g, {&st.M, &st.F});
        Step step = c.side == Side::left ? cover_left(st, b, c.vertex, caps) : cover_right(st, b, c.vertex, caps);
        res.candidates = step.candidates;
        res.candidate_bound = step.bound;
        res.property_kept = step.property_kept;
        if (!step.comp) {
            res.answered = false;
            return res;
        }
        st.F.components.push_back(*step.comp);
    }
    res.changed = true;
    res.budget_ok = st.budget_ok();
    if (!res.budget_ok && enforcing(st))
        throw InconsistencyError("budget (2/eps)|R(M) u R(F)| <= s violated");
    return res;
}

void remove_component(CoverStrategyState& st, int index) {
    if (index < 0 || index >= static_cast<int>(st.F.size()))
        throw GameRuleError("no component " + std::to_string(index) + " to remove");
    st.F.components.erase(st.F.components.begin() + index);
}

}  // namespace vwspace
