#include "vwspace/strategy.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace vwspace {

PartialAssignment FlippableFamily::row(std::size_t i) const {
    PartialAssignment a;
    for (std::size_t j = 0; j < domain.size(); ++j) a[domain[j]] = rows[i][j];
    return a;
}

FlippableFamily make_family(std::vector<int> domain, std::vector<std::vector<bool>> rows) {
    std::vector<std::size_t> order(domain.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return domain[a] < domain[b]; });
    FlippableFamily f;
    for (std::size_t j : order) f.domain.push_back(domain[j]);
    if (std::adjacent_find(f.domain.begin(), f.domain.end()) != f.domain.end())
        throw ValidationError("repeated variable in family domain");
    for (auto& r : rows) {
        if (r.size() != domain.size()) throw ValidationError("family row width differs from domain size");
        std::vector<bool> s;
        for (std::size_t j : order) s.push_back(r[j]);
        f.rows.push_back(s);
    }
    std::sort(f.rows.begin(), f.rows.end());
    f.rows.erase(std::unique(f.rows.begin(), f.rows.end()), f.rows.end());
    return f;
}

FlippableFamily lambda_family() {
    FlippableFamily f;
    f.rows.push_back({});
    return f;
}

bool is_flippable(const FlippableFamily& f) {
    if (f.rows.empty()) return false;
    for (std::size_t j = 0; j < f.domain.size(); ++j) {
        bool zero = false, one = false;
        for (auto& r : f.rows) (r[j] ? one : zero) = true;
        if (!zero || !one) return false;
    }
    return true;
}

bool is_flippable(const std::vector<PartialAssignment>& family) {
    std::map<int, int> seen;  // bit 1: value 0 seen, bit 2: value 1 seen
    for (auto& a : family)
        for (auto& [x, v] : a) seen[x] |= v ? 2 : 1;
    for (auto& [x, m] : seen)
        if (m != 3) return false;
    return true;
}

std::vector<int> ProductFamily::domain() const {
    std::vector<int> out;
    for (auto& f : factors_) out.insert(out.end(), f.domain.begin(), f.domain.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool ProductFamily::extends(const ProductFamily& smaller) const {
    return std::includes(factors_.begin(), factors_.end(), smaller.factors_.begin(), smaller.factors_.end());
}

std::int64_t ProductFamily::assignment_count() const {
    std::int64_t n = 1;
    for (auto& f : factors_) n *= static_cast<std::int64_t>(f.rows.size());
    return n;
}

bool ProductFamily::for_each_assignment(const std::function<bool(const PartialAssignment&)>& visit) const {
    PartialAssignment a;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == factors_.size()) return visit(a);
        const FlippableFamily& f = factors_[i];
        for (auto& r : f.rows) {
            for (std::size_t j = 0; j < f.domain.size(); ++j) a[f.domain[j]] = r[j];
            if (!rec(i + 1)) return false;
        }
        for (int x : f.domain) a.erase(x);
        return true;
    };
    return rec(0);
}

ProductFamily product(std::vector<FlippableFamily> factors) {
    ProductFamily p;
    for (auto& f : factors)
        if (!f.is_lambda()) p.factors_.push_back(std::move(f));
    std::sort(p.factors_.begin(), p.factors_.end());
    auto dom = p.domain();
    if (std::adjacent_find(dom.begin(), dom.end()) != dom.end()) throw ValidationError("product factors share a variable");
    return p;
}

bool models(const ProductFamily& h, const Polynomial& p) {
    return h.for_each_assignment([&](const PartialAssignment& a) { return satisfies(a, p); });
}

FlippableFamily component_family(const Cnf& phi, const BipartiteGraph& g, const VwComponent& c) {
    VwMatching single{{c}};
    if (auto v = validate_vw_matching(g, single); !v) throw ValidationError("component_family: " + v.reason);
    std::vector<int> vars = c.right_vertices();
    std::vector<std::pair<int, std::vector<int>>> matched;  // clause, its matched variables
    for (std::size_t i = 1; i < c.path.size(); i += 2)
        matched.push_back({c.path[i], {c.path[i - 1], c.path[i + 1]}});
    std::vector<std::vector<bool>> rows;
    int n = static_cast<int>(vars.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
        PartialAssignment a;
        for (int j = 0; j < n; ++j) a[vars[j]] = mask >> j & 1;
        bool ok = true;
        for (auto& [clause, mv] : matched) {
            bool sat = false;
            for (int lit : phi.clauses.at(clause)) {
                int x = std::abs(lit) - 1;
                if (std::find(mv.begin(), mv.end(), x) != mv.end() && a[x] == (lit > 0)) sat = true;
            }
            ok = ok && sat;
        }
        if (!ok) continue;
        std::vector<bool> row;
        for (int j = 0; j < n; ++j) row.push_back(mask >> j & 1);
        rows.push_back(row);
    }
    FlippableFamily f = make_family(vars, rows);
    if (!is_flippable(f))
        throw InconsistencyError("family of component " + format_component(c) + " is empty or not flippable");
    return f;
}

ProductFamily family_of_matching(const Cnf& phi, const BipartiteGraph& g, const VwMatching& f) {
    std::vector<FlippableFamily> fs;
    for (auto& c : f.components) fs.push_back(component_family(phi, g, c));
    return product(std::move(fs));
}

}  // namespace vwspace
