#include "vwspace/covergame.hpp"

#include <algorithm>

namespace vwspace {

namespace {

// Visits the k-subsets of items in lexicographic order until visit returns false.
template <class Visit>
bool for_each_subset(const std::vector<int>& items, int k, Visit visit) {
    int n = static_cast<int>(items.size());
    if (k > n) return true;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> pick(k);
    while (true) {
        for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
        if (!visit(pick)) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

MatchingPropertyResult has_matching_property(const BipartiteGraph& g, const std::vector<int>& A,
                                             const std::vector<int>& B, long long s, const Rational& epsilon,
                                             bool expander_verified, const SearchCaps& caps) {
    if (epsilon <= Rational(0)) throw ValidationError("epsilon must be positive");
    std::vector<char> in_a(g.left_count(), 0);
    for (int a : A) in_a.at(a) = 1;
    std::vector<int> avail;
    for (int l = 0; l < g.left_count(); ++l)
        if (!in_a[l]) avail.push_back(l);

    long long bound = s;
    if (expander_verified) {
        // |C| < 2|B|/eps
        Rational limit = Rational(2 * static_cast<std::int64_t>(B.size())) / epsilon;
        bound = std::min<long long>(bound, ceil_of(limit) - 1);
    }
    bound = std::min<long long>(bound, static_cast<long long>(avail.size()));
    MatchingPropertyResult r;
    r.bound = std::max<long long>(bound, 0);
    if (bound <= 0) return r;

    auto coverable = [&](const std::vector<int>& c) {
        if (++r.subsets_checked > caps.subset_checks)
            throw ResourceError("matching property: subset cap " + std::to_string(caps.subset_checks) + " exceeded");
        return find_vw_cover(g, c, A, B, caps).has_value();
    };
    // Coverability is closed under subsets, so one call settles the full range.
    if (bound == static_cast<long long>(avail.size()) && bound <= caps.vw_targets && coverable(avail)) return r;

    for (int k = 1; k <= bound; ++k) {
        bool all = for_each_subset(avail, k, [&](const std::vector<int>& c) {
            if (coverable(c)) return true;
            r.holds = false;
            r.witness = c;
            return false;
        });
        if (!all) return r;
    }
    return r;
}

std::optional<std::vector<int>> smallC_witness(const BipartiteGraph& g, const std::vector<int>& A,
                                               const std::vector<int>& B, long long s, const Rational& epsilon,
                                               const SearchCaps& caps) {
    auto r = has_matching_property(g, A, B, s, epsilon, true, caps);
    if (r.holds) return std::nullopt;
    return r.witness;
}

}  // namespace vwspace
