#include "vwspace/cnf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace vwspace {

using boost::multiprecision::cpp_int;

bool is_strict_3cnf(const Cnf& phi) {
    for (const auto& c : phi.clauses) {
        if (c.size() != 3) return false;
        std::vector<int> vars;
        for (int l : c) vars.push_back(std::abs(l));
        if (normalized(vars).size() != 3) return false;
    }
    return true;
}

std::string write_dimacs(const Cnf& phi) {
    std::ostringstream o;
    o << "p cnf " << phi.variable_count << ' ' << phi.clauses.size() << '\n';
    for (const auto& c : phi.clauses) {
        for (int l : c) o << l << ' ';
        o << "0\n";
    }
    return o.str();
}

Cnf read_dimacs(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool header = false;
    long long announced = 0;
    Cnf phi;
    Clause cur;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c' || line[first] == '%') continue;
        std::istringstream ls(line);
        if (line[first] == 'p') {
            std::string p, kind;
            if (header) throw ParseError(lineno, "duplicate header");
            if (!(ls >> p >> kind >> phi.variable_count >> announced) || kind != "cnf" || phi.variable_count < 0 ||
                announced < 0)
                throw ParseError(lineno, "expected 'p cnf <vars> <clauses>'");
            header = true;
            continue;
        }
        if (!header) throw ParseError(lineno, "clause before header");
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw ParseError(lineno, "bad literal '" + tok + "'");
            if (v == 0) {
                phi.clauses.push_back(cur);
                cur.clear();
            } else {
                if (std::labs(v) > phi.variable_count) throw ParseError(lineno, "literal out of range");
                cur.push_back(static_cast<int>(v));
            }
        }
    }
    if (!header) throw ParseError("missing 'p cnf' header");
    if (!cur.empty()) throw ParseError("last clause is not terminated by 0");
    if (static_cast<long long>(phi.clauses.size()) != announced)
        throw ParseError("header announces " + std::to_string(announced) + " clauses, found " +
                         std::to_string(phi.clauses.size()));
    return phi;
}

Cnf read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open CNF file '" + path + "'");
    try {
        return read_dimacs(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Cnf gen_random_cnf(int n, const Rational& delta, std::uint64_t seed) {
    if (n < 3) throw ValidationError("random 3-CNF needs n >= 3");
    if (delta < 0) throw ValidationError("clause density must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> var(0, n - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    Cnf phi;
    phi.variable_count = n;
    std::int64_t m = floor_of(delta * Rational(n));
    phi.clauses.reserve(m);
    for (std::int64_t i = 0; i < m; ++i) {
        int a = var(rng), b, c;
        do b = var(rng); while (b == a);
        do c = var(rng); while (c == a || c == b);
        std::vector<int> vs{a, b, c};
        std::sort(vs.begin(), vs.end());
        Clause cl;
        for (int v : vs) cl.push_back(sign(rng) ? v + 1 : -(v + 1));
        phi.clauses.push_back(cl);
    }
    return phi;
}

BipartiteGraph adjacency_graph(const Cnf& phi) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < phi.clauses.size(); ++i)
        for (int l : phi.clauses[i]) edges.emplace_back(static_cast<int>(i), std::abs(l) - 1);
    return BipartiteGraph(static_cast<int>(phi.clauses.size()), phi.variable_count, edges);
}

bool satisfies(const Assignment& alpha, const Clause& c) {
    for (int l : c) {
        auto it = alpha.find(std::abs(l) - 1);
        if (it != alpha.end() && it->second == (l > 0)) return true;
    }
    return false;
}

bool falsifies(const Assignment& alpha, const Clause& c) {
    for (int l : c) {
        auto it = alpha.find(std::abs(l) - 1);
        if (it == alpha.end() || it->second == (l > 0)) return false;
    }
    return true;
}

int DegreeStats::size_at_least(int d) const {
    if (d <= 0) return static_cast<int>(degree.size());
    if (d >= static_cast<int>(at_least.size())) return 0;
    return at_least[d];
}

DegreeStats degree_stats(const Cnf& phi) {
    DegreeStats st;
    st.degree.assign(phi.variable_count, 0);
    for (const auto& c : phi.clauses) {
        std::vector<int> vs;
        for (int l : c) vs.push_back(std::abs(l) - 1);
        for (int v : normalized(vs)) ++st.degree[v];
    }
    for (int d : st.degree) st.max_degree = std::max(st.max_degree, d);
    st.at_least.assign(st.max_degree + 2, 0);
    for (int d : st.degree)
        for (int k = 0; k <= d; ++k) ++st.at_least[k];
    return st;
}

std::int64_t concentration_start(const Cnf& phi) {
    if (phi.variable_count == 0) return 0;
    cpp_int m = static_cast<long long>(phi.clauses.size());
    cpp_int n = phi.variable_count;
    cpp_int lo = cpp_int(24) * EBracket::lo * m, hi = cpp_int(24) * EBracket::hi * m;
    cpp_int den = cpp_int(EBracket::den) * n;
    if (m == 0) return 0;
    cpp_int flo = lo / den, fhi = hi / den;
    if (flo != fhi) throw InconsistencyError("precision of the e bracket is insufficient for ceil(24 e Delta)");
    return static_cast<std::int64_t>(flo) + 1;
}

std::optional<int> check_concentration(const Cnf& phi, const Rational& eps, const Rational& c) {
    if (eps <= 0) throw ValidationError("epsilon must be positive");
    auto st = degree_stats(phi);
    const Rational budget = c * Rational(phi.variable_count);
    auto holds_at = [&](int d) {
        Rational lhs = Rational(72 * d) / eps * Rational(st.size_at_least(d) + d) + 1;
        return lhs <= budget;
    };
    const std::int64_t start = concentration_start(phi);
    const std::int64_t stop = std::max<std::int64_t>(start, st.max_degree + 1);
    for (std::int64_t D = start; D <= stop; ++D) {
        bool all = true;
        for (std::int64_t d = D; d <= std::max<std::int64_t>(D, st.max_degree) && all; ++d)
            all = holds_at(static_cast<int>(d));
        if (all) return static_cast<int>(D);
    }
    return std::nullopt;
}

bool tail_bound_holds(std::int64_t s_d, int d, std::int64_t n) {
    if (s_d <= 0) return true;
    cpp_int lhs = cpp_int(s_d) * (cpp_int(1) << d) * EBracket::den;
    cpp_int lo = cpp_int(2) * EBracket::lo * n, hi = cpp_int(2) * EBracket::hi * n;
    if (lhs <= lo) return true;
    if (lhs >= hi) return false;
    throw InconsistencyError("precision of the e bracket is insufficient for the tail bound");
}

}  // namespace vwspace
