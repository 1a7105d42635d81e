#include "vwspace/hall.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace vwspace {

namespace {

AuditLine compare(const std::string& name, const Rational& lhs, const std::string& rel, const Rational& rhs) {
    bool holds = rel == "<=" ? lhs <= rhs : rel == ">=" ? lhs >= rhs : lhs == rhs;
    return {name, to_string(lhs), rel, to_string(rhs), holds};
}

}  // namespace

ChargeReport discharge_audit(const Hypergraph& h, const Rational& eps, const std::vector<ReduciblePattern>& patterns) {
    validate_hypergraph(h);
    if (eps <= 0 || eps >= Rational(1, 2)) throw ValidationError("epsilon must lie in (0, 1/2)");
    ChargeReport rep;
    rep.epsilon = eps;
    const auto deg = h.degrees();
    const Rational V(h.vertex_count), E(h.edge_count());
    const Rational two_minus = 2 - eps;

    std::int64_t degree_sum = 0;
    for (int v = 0; v < h.vertex_count; ++v) {
        degree_sum += deg[v];
        if (deg[v] == 1) rep.degree_one_vertices.push_back(v);
    }
    rep.initial_vertex_charge = degree_sum;
    rep.average_degree = h.vertex_count ? Rational(degree_sum, h.vertex_count) : Rational(0);

    std::vector<char> in_script_d(h.edge_count(), 0);
    for (int i = 0; i < h.edge_count(); ++i) {
        bool two = h.edges[i].size() == 2;
        bool has_one = std::any_of(h.edges[i].begin(), h.edges[i].end(), [&](int v) { return deg[v] == 1; });
        if (two) rep.size_two_edges.push_back(i);
        if (has_one) {
            in_script_d[i] = 1;
            rep.degree_one_edges.push_back(i);
            if (two) rep.degree_one_size_two.push_back(i);
        }
    }

    // Charges: vertex deg(v); edges of script D_2 get -2, the rest of script D get -3.
    // Each edge of script D then passes -1 to each of its vertices.
    std::vector<std::int64_t> vcharge(deg.begin(), deg.end());
    std::vector<std::int64_t> echarge(h.edge_count(), 0);
    for (int i = 0; i < h.edge_count(); ++i) {
        if (!in_script_d[i]) continue;
        echarge[i] = h.edges[i].size() == 2 ? -2 : -3;
        for (int v : h.edges[i]) {
            vcharge[v] -= 1;
            echarge[i] += 1;
        }
    }
    rep.total_charge_summed = 0;
    for (auto c : vcharge) rep.total_charge_summed += c;
    for (auto c : echarge) rep.total_charge_summed += c;
    const std::int64_t e2 = static_cast<std::int64_t>(rep.size_two_edges.size());
    const std::int64_t sd = static_cast<std::int64_t>(rep.degree_one_edges.size());
    const std::int64_t sd2 = static_cast<std::int64_t>(rep.degree_one_size_two.size());
    rep.total_charge = 3 * static_cast<std::int64_t>(h.edge_count()) - e2 - 3 * sd + sd2;

    for (int v = 0; v < h.vertex_count; ++v)
        if (vcharge[v] == 0) rep.zero_charge_vertices.push_back(v);
    std::vector<int> z_minus_d;
    for (int v : rep.zero_charge_vertices)
        if (deg[v] != 1) z_minus_d.push_back(v);

    rep.configurations = detect_reducible(h, patterns);
    rep.configuration_free = rep.configurations.empty();
    const Rational Dn(static_cast<std::int64_t>(rep.degree_one_vertices.size()));
    const Rational Zn(static_cast<std::int64_t>(rep.zero_charge_vertices.size()));
    const Rational ZDn(static_cast<std::int64_t>(z_minus_d.size()));
    const Rational C(rep.total_charge);

    auto& L = rep.lines;
    L.push_back(compare("ratio hypothesis |V| >= (2-eps)|E|", V, ">=", two_minus * E));
    rep.ratio_hypothesis = L.back().holds;
    L.push_back(compare("reducible configurations present", Rational(static_cast<std::int64_t>(rep.configurations.size())),
                        "=", Rational(0)));
    L.push_back(compare("average degree d <= 3/(2-eps)", rep.average_degree, "<=", Rational(3) / two_minus));
    L.push_back(compare("|D| = |script D|", Dn, "=", Rational(sd)));
    L.push_back(compare("|D| <= |V|/(2-eps)", Dn, "<=", V / two_minus));
    L.push_back(compare("|D| >= (1-2eps)/(2-eps)|V|", Dn, ">=", (1 - 2 * eps) / two_minus * V));
    L.push_back(compare("C = 3|E|-|E2|-3|script D|+|script D2| (summed charges)", Rational(rep.total_charge_summed), "=", C));
    L.push_back(compare("C <= 3|E|-3|D|", C, "<=", 3 * E - 3 * Dn));
    L.push_back(compare("C <= 6eps/(2-eps)|V|", C, "<=", 6 * eps / two_minus * V));
    L.push_back(compare("|Z| >= (2-7eps)/(2-eps)|V|", Zn, ">=", (2 - 7 * eps) / two_minus * V));
    L.push_back(compare("|Z\\D| >= (1-7eps)/(2-eps)|V|", ZDn, ">=", (1 - 7 * eps) / two_minus * V));
    int low = 0;
    for (int v : z_minus_d)
        if (deg[v] < 3) ++low;
    L.push_back(compare("vertices of Z\\D with degree < 3", Rational(low), "=", Rational(0)));
    L.push_back(compare("|D|+3|Z\\D| >= (4-23eps)/(2-eps)|V|", Dn + 3 * ZDn, ">=", (4 - 23 * eps) / two_minus * V));
    L.push_back(compare("d|V| >= |D|+3|Z\\D|", rep.average_degree * V, ">=", Dn + 3 * ZDn));
    L.push_back(compare("terminal test 3 >= 4-23eps", Rational(3), ">=", 4 - 23 * eps));
    rep.contradiction = !L.back().holds;
    rep.fully_consistent = std::all_of(L.begin(), L.end(), [](const AuditLine& a) { return a.holds; });
    return rep;
}

std::string ChargeReport::to_text() const {
    std::ostringstream o;
    o << "epsilon " << vwspace::to_string(epsilon) << '\n';
    o << "|D| " << degree_one_vertices.size() << "  |script D| " << degree_one_edges.size() << "  |E2| "
      << size_two_edges.size() << "  |script D2| " << degree_one_size_two.size() << "  |Z| "
      << zero_charge_vertices.size() << "  C " << total_charge << '\n';
    for (auto& m : configurations) {
        o << "configuration " << m.pattern << " edges " << join(m.edges);
        if (m.center >= 0) o << " center " << m.center;
        o << '\n';
    }
    std::size_t w = 0;
    for (auto& l : lines) w = std::max(w, l.name.size());
    for (auto& l : lines)
        o << std::left << std::setw(static_cast<int>(w)) << l.name << "  " << l.lhs << ' ' << l.relation << ' '
          << l.rhs << "  " << (l.holds ? "holds" : "fails") << '\n';
    o << (fully_consistent ? "report fully consistent\n" : "report not fully consistent\n");
    if (contradiction) o << "contradiction: 3 < 4-23eps\n";
    return o.str();
}

}  // namespace vwspace
