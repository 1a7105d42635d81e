#include "vwspace/graph.hpp"

#include <algorithm>
#include <tuple>

namespace vwspace {

namespace {

class CoverSearch {
public:
    CoverSearch(const BipartiteGraph& g, std::vector<int> targets, const std::vector<int>& banned_left,
                const std::vector<int>& banned_right)
        : g_(g), targets_(std::move(targets)), used_l_(g.left_count(), 0), used_r_(g.right_count(), 0),
          pending_(g.left_count(), 0) {
        for (int l : banned_left) used_l_[l] = 1;
        for (int r : banned_right) used_r_[r] = 1;
        for (int t : targets_) pending_[t] = 1;
    }

    bool run() { return descend(); }
    std::vector<VwComponent> result() const { return chosen_; }

private:
    int free_degree(int l) const {
        int k = 0;
        for (int r : g_.left_neighbors(l)) k += !used_r_[r];
        return k;
    }

    void take(const VwComponent& c, int sign) {
        for (std::size_t i = 0; i < c.path.size(); ++i) {
            if (i % 2 == 0) {
                used_r_[c.path[i]] = sign > 0;
            } else {
                used_l_[c.path[i]] = sign > 0;
                pending_[c.path[i]] = sign < 0;
            }
        }
    }

    std::vector<VwComponent> candidates(int t) const {
        std::vector<int> avail;
        for (int r : g_.left_neighbors(t))
            if (!used_r_[r]) avail.push_back(r);
        std::vector<VwComponent> out;
        for (std::size_t i = 0; i < avail.size(); ++i)
            for (std::size_t j = i + 1; j < avail.size(); ++j) out.push_back({{avail[i], t, avail[j]}});
        // 4-edge paths only pair t with another pending target; a non-target middle
        // vertex can always be dropped to leave a 2-edge path through t.
        for (int r1 : avail) {
            for (int u : g_.right_neighbors(r1)) {
                if (u == t || !pending_[u] || used_l_[u]) continue;
                for (int r0 : avail) {
                    if (r0 == r1) continue;
                    for (int r2 : g_.left_neighbors(u)) {
                        if (used_r_[r2] || r2 == r1 || r2 == r0) continue;
                        out.push_back(VwComponent{{r0, t, r1, u, r2}}.canonical());
                    }
                }
            }
        }
        auto key = [](const VwComponent& c) {
            return std::make_tuple(c.path.front(), c.path.back(), c.path.size(), c.path);
        };
        std::sort(out.begin(), out.end(), [&](const VwComponent& a, const VwComponent& b) { return key(a) < key(b); });
        return out;
    }

    bool descend() {
        int t = -1;
        for (int u : targets_) {
            if (!pending_[u]) continue;
            if (free_degree(u) < 2) return false;
            if (t < 0) t = u;
        }
        if (t < 0) return true;
        for (const auto& c : candidates(t)) {
            take(c, +1);
            chosen_.push_back(c);
            if (descend()) return true;
            chosen_.pop_back();
            take(c, -1);
        }
        return false;
    }

    const BipartiteGraph& g_;
    std::vector<int> targets_;
    std::vector<char> used_l_, used_r_, pending_;
    std::vector<VwComponent> chosen_;
};

}  // namespace

std::optional<VwMatching> find_vw_cover(const BipartiteGraph& g, const std::vector<int>& targets_in,
                                        const std::vector<int>& banned_left, const std::vector<int>& banned_right,
                                        const SearchCaps& caps) {
    auto targets = normalized(targets_in);
    auto bl = normalized(banned_left);
    auto br = normalized(banned_right);
    for (int t : targets)
        if (t < 0 || t >= g.left_count()) throw ValidationError("target L vertex out of range");
    for (int l : bl)
        if (l < 0 || l >= g.left_count()) throw ValidationError("banned L vertex out of range");
    for (int r : br)
        if (r < 0 || r >= g.right_count()) throw ValidationError("banned R vertex out of range");
    for (int t : targets)
        if (std::binary_search(bl.begin(), bl.end(), t))
            throw ValidationError("target " + std::to_string(t) + " is banned");
    if (targets.empty()) return VwMatching{};
    if (static_cast<int>(targets.size()) > caps.vw_targets)
        throw ResourceError("find_vw_cover: " + std::to_string(targets.size()) + " targets exceed cap vw_targets=" +
                            std::to_string(caps.vw_targets));
    CoverSearch search(g, targets, bl, br);
    if (!search.run()) return std::nullopt;
    return VwMatching{search.result()};
}

}  // namespace vwspace
