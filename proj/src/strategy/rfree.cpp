#include "vwspace/strategy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vwspace {

PartialAssignment PiecewiseAssignment::merged() const {
    PartialAssignment a;
    for (auto& p : pieces) a.insert(p.begin(), p.end());
    return a;
}

RFreeFamily to_rfree(const ExplicitStrategy& s, int k, const SearchCaps& caps) {
    std::set<PiecewiseAssignment> out;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        if (static_cast<int>(s.members[i].size()) > k - 1) continue;
        std::vector<const FlippableFamily*> fs;
        for (int id : s.members[i]) fs.push_back(&s.factors.at(id).family);
        std::vector<std::size_t> pick(fs.size(), 0);
        while (true) {
            PiecewiseAssignment a;
            for (std::size_t j = 0; j < fs.size(); ++j) a.pieces.push_back(fs[j]->row(pick[j]));
            std::sort(a.pieces.begin(), a.pieces.end());
            out.insert(a);
            if (static_cast<std::int64_t>(out.size()) > caps.family_rows)
                throw ResourceError("to_rfree: family cap " + std::to_string(caps.family_rows) + " exceeded");
            std::size_t j = 0;
            while (j < fs.size() && ++pick[j] == fs[j]->rows.size()) pick[j++] = 0;
            if (j == fs.size()) break;
        }
    }
    return RFreeFamily{{out.begin(), out.end()}};
}

CertificateReport check_rfree(const Cnf& phi, const RFreeFamily& f, int r, const SearchCaps& caps) {
    CertificateReport rep;
    rep.members = static_cast<std::int64_t>(f.members.size());
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        rep.reason = why;
        return rep;
    };
    if (f.members.empty()) return fail("family is empty");
    if (rep.members > caps.family_rows) throw ResourceError("check_rfree: family cap exceeded");
    auto show = [](const PiecewiseAssignment& a) {
        std::string s = "{";
        for (auto& p : a.pieces) {
            s += " [";
            for (auto& [x, v] : p) s += " x" + std::to_string(x + 1) + "=" + (v ? "1" : "0");
            s += " ]";
        }
        return s + " }";
    };
    std::set<PiecewiseAssignment> all(f.members.begin(), f.members.end());
    for (auto& a : f.members) {
        std::set<int> dom;
        for (auto& p : a.pieces) {
            if (p.empty()) return fail("empty piece in " + show(a));
            for (auto& [x, v] : p)
                if (!dom.insert(x).second) return fail("pieces share a variable in " + show(a));
        }
        if (!std::is_sorted(a.pieces.begin(), a.pieces.end())) return fail("pieces not in canonical order");
    }
    // Consistency.
    for (auto& a : f.members) {
        PartialAssignment m = a.merged();
        for (std::size_t c = 0; c < phi.clauses.size(); ++c) {
            ++rep.checks;
            if (falsifies(m, phi.clauses[c])) return fail("consistency: " + show(a) + " falsifies clause " + std::to_string(c));
        }
    }
    // Retraction.
    std::map<PiecewiseAssignment, std::map<int, int>> ext;  // sub-assignment -> var -> seen values (bit0: 0, bit1: 1)
    for (auto& a : f.members) {
        if (a.pieces.size() > 20) throw ResourceError("check_rfree: piece count above 20");
        for (std::uint32_t mask = 0; mask < (1u << a.pieces.size()); ++mask) {
            PiecewiseAssignment sub;
            for (std::size_t j = 0; j < a.pieces.size(); ++j)
                if (mask >> j & 1) sub.pieces.push_back(a.pieces[j]);
            ++rep.checks;
            if (!all.count(sub)) return fail("retraction: " + show(sub) + " missing below " + show(a));
            if (static_cast<int>(sub.pieces.size()) >= r) continue;
            auto& seen = ext[sub];
            for (std::size_t j = 0; j < a.pieces.size(); ++j)
                if (!(mask >> j & 1))
                    for (auto& [x, v] : a.pieces[j]) seen[x] |= v ? 2 : 1;
        }
    }
    // Extension.
    for (auto& a : f.members) {
        if (static_cast<int>(a.pieces.size()) >= r) continue;
        PartialAssignment m = a.merged();
        auto& seen = ext[a];
        for (int x = 0; x < phi.variable_count; ++x) {
            if (m.count(x)) continue;
            ++rep.checks;
            auto it = seen.find(x);
            if (it == seen.end() || it->second != 3)
                return fail("extension: " + show(a) + " cannot be extended on x" + std::to_string(x + 1) + " both ways");
        }
    }
    return rep;
}

}  // namespace vwspace
