#include "vwspace/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace vwspace {

WinningStrategy::WinningStrategy(Cnf phi, CoverStrategyState state)
    : phi_(std::move(phi)), graph_(adjacency_graph(phi_)), state_(std::move(state)), axioms_(tr_encode(phi_)) {
    if (!(state_.graph == graph_)) throw ValidationError("cover state was not built on the formula's adjacency graph");
}

ProductFamily WinningStrategy::family(const VwMatching& f) const { return family_of_matching(phi_, graph_, f); }

std::optional<VwMatching> WinningStrategy::extend(const VwMatching& f, std::size_t a, const SearchCaps& caps) const {
    std::size_t m = phi_.clauses.size();
    if (a >= axioms_.size()) throw ValidationError("no axiom " + std::to_string(a));
    Challenge c = a < m ? Challenge{Side::left, static_cast<int>(a)} : Challenge{Side::right, static_cast<int>((a - m) / 2)};
    CoverStrategyState st = state_;
    st.F = f;
    RespondResult r = respond(st, c, caps);
    if (!r.answered) return std::nullopt;
    return st.F;
}

ExplicitStrategy WinningStrategy::materialize(int k, const SearchCaps& caps) const {
    using Key = std::vector<VwComponent>;
    auto key_of = [](const VwMatching& f) {
        Key k;
        for (auto& c : f.components) k.push_back(c.canonical());
        std::sort(k.begin(), k.end());
        return k;
    };
    std::set<Key> members;
    std::deque<Key> queue;
    auto add = [&](const Key& full) {
        if (full.size() > 20) throw ResourceError("materialize: member rank above 20");
        for (std::uint32_t mask = 0; mask < (1u << full.size()); ++mask) {
            Key sub;
            for (std::size_t j = 0; j < full.size(); ++j)
                if (mask >> j & 1) sub.push_back(full[j]);
            if (!members.insert(sub).second) continue;
            if (static_cast<std::int64_t>(members.size()) > caps.strategy_members)
                throw ResourceError("materialize: member cap " + std::to_string(caps.strategy_members) + " exceeded");
            if (static_cast<int>(sub.size()) < k) queue.push_back(sub);
        }
    };
    add({});
    while (!queue.empty()) {
        Key pos = queue.front();
        queue.pop_front();
        VwMatching f{pos};
        ProductFamily h = family(f);
        for (std::size_t a = 0; a < axioms_.size(); ++a) {
            if (models(h, axioms_[a])) continue;
            auto next = extend(f, a, caps);
            if (next) add(key_of(*next));
        }
    }

    ExplicitStrategy out;
    out.k = k;
    std::map<VwComponent, int> ids;
    for (auto& m : members)
        for (auto& c : m)
            if (!ids.count(c)) ids[c] = 0;
    int next = 0;
    for (auto& [c, id] : ids) {
        id = next++;
        out.factors.push_back({id, c, component_family(phi_, graph_, c)});
    }
    for (auto& m : members) {
        std::vector<int> row;
        for (auto& c : m) row.push_back(ids.at(c));
        std::sort(row.begin(), row.end());
        out.members.push_back(row);
    }
    std::sort(out.members.begin(), out.members.end(),
              [](auto& a, auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return out;
}

WinningStrategy extract_strategy(const Cnf& phi, const CoverStrategyState& state, int k) {
    CoverStrategyState st = state;
    st.F = {};
    st.mu = k;
    st.mu_override = true;
    return WinningStrategy(phi, std::move(st));
}

}  // namespace vwspace
