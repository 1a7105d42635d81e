#include "vwspace/hall.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

namespace vwspace {

namespace {

bool coverable(const Hypergraph& h, const std::vector<int>& edges, const std::vector<int>& forbidden,
               const SearchCaps& caps) {
    return find_2path_cover(h, edges, forbidden, caps).has_value();
}

std::vector<int> all_but(int m, int skip) {
    std::vector<int> out;
    for (int i = 0; i < m; ++i)
        if (i != skip) out.push_back(i);
    return out;
}

std::vector<int> all_edges(const Hypergraph& h) { return all_but(h.edge_count(), -1); }

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

bool no_isolated(const Hypergraph& h) {
    auto d = h.degrees();
    return std::all_of(d.begin(), d.end(), [](int x) { return x > 0; });
}

// Pendant size-2 edge {x,y} with deg(y)=1: returns (edge index, x, y) or edge index -1.
std::tuple<int, int, int> pendant_edge(const Hypergraph& h, int avoid = -1) {
    auto deg = h.degrees();
    for (int i = 0; i < h.edge_count(); ++i) {
        const auto& e = h.edges[i];
        if (e.size() != 2) continue;
        if (e[0] == avoid || e[1] == avoid) continue;
        if (deg[e[1]] == 1) return {i, e[0], e[1]};
        if (deg[e[0]] == 1) return {i, e[1], e[0]};
    }
    return {-1, -1, -1};
}

bool gadget_contract(const Gadget& g, const SearchCaps& caps) {
    const auto& h = g.hypergraph;
    if (h.vertex_count != 12 || h.edge_count() != 7 || !no_isolated(h)) return false;
    if (g.x < 0 || g.x >= h.vertex_count) return false;
    if (coverable(h, all_edges(h), {g.x}, caps)) return false;
    for (int i = 0; i < h.edge_count(); ++i)
        if (!coverable(h, all_but(h.edge_count(), i), {g.x}, caps)) return false;
    return std::get<0>(pendant_edge(h, g.x)) >= 0;
}

std::string cache_path(const char* name) {
    const char* dir = std::getenv("VWSPACE_CACHE_DIR");
    if (!dir || !*dir) return {};
    return (std::filesystem::path(dir) / name).string();
}

void write_cache(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::string tmp = path + ".tmp" + std::to_string(std::hash<std::string>{}(text));
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << text;
    }
    // First writer wins; later writers leave the existing file alone.
    if (std::filesystem::exists(path)) std::filesystem::remove(tmp, ec);
    else std::filesystem::rename(tmp, path, ec);
}

Hypergraph search_base(const SearchCaps& caps) {
    std::vector<std::vector<int>> cands;
    for (int k : {2, 3})
        for (auto& s : subsets_of_size(6, k)) cands.push_back(s);
    std::sort(cands.begin(), cands.end());
    for (auto& pick : subsets_of_size(static_cast<int>(cands.size()), 4)) {
        Hypergraph h{6, {}};
        for (int i : pick) h.edges.push_back(cands[i]);
        if (!no_isolated(h)) continue;
        if (is_critically_uncoverable(h, caps)) return h;
    }
    throw InconsistencyError("no critically uncoverable hypergraph with 6 vertices and 4 edges");
}

class GadgetSearch {
public:
    explicit GadgetSearch(const SearchCaps& caps) : caps_(caps) {}

    std::optional<Gadget> run() {
        descend(0);
        return found_;
    }

private:
    static constexpr int kVertices = 12;
    static constexpr int kEdges = 7;

    // Edges over used vertices plus a consecutive block of fresh ones.
    std::vector<std::pair<std::vector<int>, int>> candidates(int used) const {
        std::vector<std::pair<std::vector<int>, int>> out;
        for (int k : {2, 3}) {
            for (int fresh = 0; fresh <= k; ++fresh) {
                int old = k - fresh;
                if (used + fresh > kVertices || old > used) continue;
                auto olds = old ? subsets_of_size(used, old) : std::vector<std::vector<int>>{{}};
                for (auto e : olds) {
                    for (int v = used; v < used + fresh; ++v) e.push_back(v);
                    std::sort(e.begin(), e.end());
                    out.emplace_back(e, used + fresh);
                }
            }
        }
        return out;
    }

    void descend(int used) {
        if (found_) return;
        int left = kEdges - static_cast<int>(edges_.size());
        if (used + 3 * left < kVertices) return;
        if (left == 0) {
            if (used == kVertices) check();
            return;
        }
        for (auto& [e, nu] : candidates(used)) {
            if (!edges_.empty() && e <= edges_.back()) continue;
            edges_.push_back(e);
            Hypergraph prefix{kVertices, edges_};
            if (left == 1 || coverable(prefix, all_edges(prefix), {}, caps_)) descend(nu);
            edges_.pop_back();
            if (found_) return;
        }
    }

    void check() {
        Gadget g{{kVertices, edges_}, -1};
        for (int x = 0; x < kVertices; ++x) {
            g.x = x;
            if (gadget_contract(g, caps_)) {
                found_ = g;
                return;
            }
        }
    }

    SearchCaps caps_;
    std::vector<std::vector<int>> edges_;
    std::optional<Gadget> found_;
};

}  // namespace

bool is_critically_uncoverable(const Hypergraph& h, const SearchCaps& caps) {
    if (coverable(h, all_edges(h), {}, caps)) return false;
    for (int i = 0; i < h.edge_count(); ++i)
        if (!coverable(h, all_but(h.edge_count(), i), {}, caps)) return false;
    return true;
}

Hypergraph find_base_hypergraph(const SearchCaps& caps) {
    static std::mutex mu;
    static std::optional<Hypergraph> memo;
    std::lock_guard<std::mutex> lock(mu);
    if (memo) return *memo;
    std::string path = cache_path("base.hgraph");
    if (!path.empty() && std::filesystem::exists(path)) {
        try {
            Hypergraph h = read_hgraph_file(path);
            if (h.vertex_count == 6 && h.edge_count() == 4 && no_isolated(h) && is_critically_uncoverable(h, caps)) {
                memo = h;
                return h;
            }
        } catch (const Error&) {
        }
    }
    memo = search_base(caps);
    write_cache(path, write_hgraph(*memo));
    return *memo;
}

Gadget find_gadget(const SearchCaps& caps) {
    static std::mutex mu;
    static std::optional<Gadget> memo;
    std::lock_guard<std::mutex> lock(mu);
    if (memo) return *memo;
    std::string path = cache_path("gadget.hgraph");
    if (!path.empty() && std::filesystem::exists(path)) {
        try {
            std::optional<int> x;
            Gadget g{read_hgraph_file(path, &x), x.value_or(-1)};
            if (gadget_contract(g, caps)) {
                memo = g;
                return g;
            }
        } catch (const Error&) {
        }
    }
    auto g = GadgetSearch(caps).run();
    if (!g) throw InconsistencyError("gadget search exhausted 12 vertices / 7 edges without a result");
    memo = *g;
    write_cache(path, write_hgraph(memo->hypergraph, memo->x));
    return *memo;
}

Hypergraph amplify(const Hypergraph& base, const Gadget& gadget, int n) {
    if (n < 0) throw ValidationError("amplification count must be non-negative");
    validate_hypergraph(base);
    Hypergraph h = base;
    for (int step = 0; step < n; ++step) {
        auto [idx, x, y] = pendant_edge(h);
        if (idx < 0) throw ValidationError("hypergraph has no pendant size-2 edge");
        auto relabel = [y = y](int v) { return v < y ? v : v - 1; };
        Hypergraph next{h.vertex_count - 1, {}};
        for (int i = 0; i < h.edge_count(); ++i) {
            if (i == idx) continue;
            std::vector<int> e;
            for (int v : h.edges[i]) e.push_back(relabel(v));
            std::sort(e.begin(), e.end());
            next.edges.push_back(e);
        }
        std::vector<int> map(gadget.hypergraph.vertex_count);
        for (int v = 0; v < gadget.hypergraph.vertex_count; ++v)
            map[v] = v == gadget.x ? relabel(x) : next.vertex_count++;
        for (auto& ge : gadget.hypergraph.edges) {
            std::vector<int> e;
            for (int v : ge) e.push_back(map[v]);
            std::sort(e.begin(), e.end());
            next.edges.push_back(e);
        }
        h = std::move(next);
    }
    return h;
}

int amplification_count(const Rational& eps) {
    if (eps <= Rational(1, 3)) throw ValidationError("the amplified family needs epsilon > 1/3");
    int n = 0;
    while (Rational(6 + 10 * n) < (2 - eps) * Rational(4 + 6 * n)) ++n;
    return n;
}

bool HallHypothesisReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.ok; });
}

std::string HallHypothesisReport::to_text() const {
    std::ostringstream o;
    for (auto& i : items) o << (i.ok ? "pass " : "FAIL ") << i.name << (i.detail.empty() ? "" : ": " + i.detail) << '\n';
    return o.str();
}

HallHypothesisReport check_hall_hypotheses(const BipartiteGraph& g, const Rational& eps) {
    HallHypothesisReport rep;
    HypothesisItem deg{"left degree <= 3", true, ""};
    for (int l = 0; l < g.left_count(); ++l)
        if (g.left_degree(l) > 3) {
            deg.ok = false;
            deg.detail = "L vertex " + std::to_string(l) + " has degree " + std::to_string(g.left_degree(l));
            break;
        }
    rep.items.push_back(deg);
    HypothesisItem dup{"distinct degree-3 neighborhoods", true, ""};
    for (int a = 0; a < g.left_count() && dup.ok; ++a)
        for (int b = a + 1; b < g.left_count(); ++b)
            if (g.left_degree(a) == 3 && g.left_neighbors(a) == g.left_neighbors(b)) {
                dup.ok = false;
                dup.detail = "duplicate neighborhood: L vertices " + std::to_string(a) + " and " + std::to_string(b);
                break;
            }
    rep.items.push_back(dup);
    std::vector<int> all(g.left_count());
    std::iota(all.begin(), all.end(), 0);
    Rational n(static_cast<std::int64_t>(neighborhood(g, all).size()));
    Rational need = (2 - eps) * Rational(g.left_count());
    rep.items.push_back({"|N(L)| >= (2-eps)|L|", n >= need, to_string(n) + " vs " + to_string(need)});
    return rep;
}

}  // namespace vwspace
