#include "vwspace/graph.hpp"

#include <algorithm>

namespace vwspace {

namespace {

// Searches k-subsets in lexicographic order with a running neighbor multiset.
class ViolationSearch {
public:
    ViolationSearch(const BipartiteGraph& g, const Rational& delta)
        : g_(g), num_(delta.numerator()), den_(delta.denominator()), count_(g.right_count(), 0) {}

    bool find(int k, std::vector<int>& out) {
        k_ = k;
        chosen_.clear();
        distinct_ = 0;
        if (!descend(0)) return false;
        out = chosen_;
        return true;
    }

private:
    bool violates(int size) const {
        return static_cast<__int128>(distinct_) * den_ < static_cast<__int128>(num_) * size;
    }

    void add(int l) {
        chosen_.push_back(l);
        for (int r : g_.left_neighbors(l)) distinct_ += (count_[r]++ == 0);
    }

    void remove(int l) {
        chosen_.pop_back();
        for (int r : g_.left_neighbors(l)) distinct_ -= (--count_[r] == 0);
    }

    bool descend(int next) {
        int have = static_cast<int>(chosen_.size());
        if (have == k_) return violates(k_);
        // Neighborhoods only grow, so a prefix already at delta*k cannot lead to a violation.
        if (!violates(k_)) return false;
        for (int l = next; l <= g_.left_count() - (k_ - have); ++l) {
            add(l);
            if (descend(l + 1)) return true;
            remove(l);
        }
        return false;
    }

    const BipartiteGraph& g_;
    std::int64_t num_, den_;
    std::vector<int> count_;
    std::vector<int> chosen_;
    int distinct_ = 0;
    int k_ = 0;
};

}  // namespace

ExpanderResult is_expander(const BipartiteGraph& g, long long s, const Rational& delta, const SearchCaps& caps) {
    if (s <= 0) throw ValidationError("expansion size s must be positive");
    if (delta <= 0) throw ValidationError("expansion factor must be positive");
    ExpanderResult res;
    res.checked_size = static_cast<int>(std::min<long long>(s, g.left_count()));
    if (res.checked_size > caps.expander_size)
        throw ResourceError("is_expander: size " + std::to_string(res.checked_size) +
                            " exceeds cap expander_size=" + std::to_string(caps.expander_size));
    ViolationSearch search(g, delta);
    for (int k = 1; k <= res.checked_size; ++k) {
        if (search.find(k, res.witness)) {
            res.expander = false;
            return res;
        }
    }
    return res;
}

}  // namespace vwspace
