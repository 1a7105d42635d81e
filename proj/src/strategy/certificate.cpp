#include "vwspace/strategy.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vwspace {

ProductFamily ExplicitStrategy::member_family(std::size_t i) const {
    std::vector<FlippableFamily> fs;
    for (int id : members.at(i)) fs.push_back(factors.at(id).family);
    return product(std::move(fs));
}

std::string ExplicitStrategy::to_text() const {
    std::ostringstream o;
    o << "p kwin " << k << ' ' << factors.size() << ' ' << members.size() << '\n';
    for (auto& f : factors) {
        o << "t " << f.id << " comp " << format_component(f.component) << " vars " << join(f.family.domain) << " rows";
        for (auto& r : f.family.rows) {
            o << ' ';
            for (bool b : r) o << (b ? '1' : '0');
        }
        o << '\n';
    }
    for (auto& m : members) {
        o << 'h';
        for (int id : m) o << ' ' << id;
        o << '\n';
    }
    return o.str();
}

ExplicitStrategy parse_certificate(std::istream& in) {
    ExplicitStrategy s;
    std::string raw;
    int line = 0;
    std::size_t nf = 0, nm = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> s.k >> nf >> nm) || kind != "kwin") throw ParseError(line, "bad header");
            header = true;
            continue;
        }
        if (!header) throw ParseError(line, "missing 'p kwin' header");
        if (tag == "t") {
            CertificateFactor f;
            std::string w;
            if (!(ls >> f.id >> w) || w != "comp") throw ParseError(line, "bad factor line");
            if (f.id != static_cast<int>(s.factors.size())) throw ParseError(line, "factor ids must be 0, 1, 2, ...");
            std::vector<int> vars;
            std::vector<std::vector<bool>> rows;
            int mode = 0;
            while (ls >> w) {
                if (w == "vars") { mode = 1; continue; }
                if (w == "rows") { mode = 2; continue; }
                if (mode == 0) f.component.path.push_back(std::stoi(w));
                else if (mode == 1) vars.push_back(std::stoi(w));
                else {
                    std::vector<bool> r;
                    for (char ch : w) {
                        if (ch != '0' && ch != '1') throw ParseError(line, "row '" + w + "' is not a bit string");
                        r.push_back(ch == '1');
                    }
                    rows.push_back(r);
                }
            }
            if (mode != 2) throw ParseError(line, "factor line needs vars and rows");
            try {
                f.family = make_family(vars, rows);
            } catch (const ValidationError& e) {
                throw ParseError(line, e.what());
            }
            s.factors.push_back(f);
        } else if (tag == "h") {
            std::vector<int> ids;
            for (int id; ls >> id;) ids.push_back(id);
            if (!ls.eof()) throw ParseError(line, "bad member line");
            s.members.push_back(ids);
        } else {
            throw ParseError(line, "unknown tag '" + tag + "'");
        }
    }
    if (!header) throw ParseError("missing 'p kwin' header");
    if (s.factors.size() != nf || s.members.size() != nm) throw ParseError("header counts do not match the body");
    return s;
}

ExplicitStrategy parse_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_certificate(in);
}

std::string CertificateReport::to_text() const {
    std::ostringstream o;
    o << (ok ? "valid" : "invalid") << ": " << members << " members, " << checks << " checks";
    if (!reason.empty()) o << "; " << reason;
    o << '\n';
    return o.str();
}

std::string claimed_kwin_bound(int k) {
    return "claimed: monomial space >= " + to_string(Rational(k, 4)) +
           " (k/4, cited lower-bound theorem; not re-proved)";
}

std::string claimed_rfree_bound(int r) {
    return "claimed: total space >= " + to_string(Rational(static_cast<std::int64_t>(r) * r, 4)) +
           " (r^2/4, cited lower-bound theorem; not re-proved)";
}

CertificateReport check_k_winning(const Cnf& phi, const ExplicitStrategy& s, int k, const SearchCaps& caps) {
    CertificateReport rep;
    rep.members = static_cast<std::int64_t>(s.members.size());
    auto fail = [&](const std::string& why) {
        rep.ok = false;
        rep.reason = why;
        return rep;
    };
    if (s.members.empty()) return fail("strategy is empty");
    if (static_cast<std::int64_t>(s.members.size()) > caps.strategy_members)
        throw ResourceError("check_k_winning: member cap " + std::to_string(caps.strategy_members) + " exceeded");
    for (auto& f : s.factors) {
        if (f.family.is_lambda()) return fail("factor " + std::to_string(f.id) + " is {lambda}");
        if (!is_flippable(f.family)) return fail("factor " + std::to_string(f.id) + " is not flippable");
    }
    std::map<std::vector<int>, std::size_t> index;
    std::vector<ProductFamily> fam;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const auto& m = s.members[i];
        if (!std::is_sorted(m.begin(), m.end()) || std::adjacent_find(m.begin(), m.end()) != m.end())
            return fail("member " + std::to_string(i) + " ids not sorted and distinct");
        for (int id : m)
            if (id < 0 || id >= static_cast<int>(s.factors.size()))
                return fail("member " + std::to_string(i) + " names unknown factor " + std::to_string(id));
        try {
            fam.push_back(s.member_family(i));
        } catch (const ValidationError&) {
            return fail("member " + std::to_string(i) + " has factors with overlapping domains");
        }
        index[m] = i;
    }
    // Restriction: every sub-product is a member.
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const auto& m = s.members[i];
        if (m.size() > 20) throw ResourceError("check_k_winning: member rank above 20");
        for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (mask >> j & 1) sub.push_back(m[j]);
            ++rep.checks;
            if (!index.count(sub))
                return fail("restriction: member {" + join(m) + "} lacks sub-product {" + join(sub) + "}");
        }
    }
    // Extension: for rank < k, each axiom is modeled by some member above.
    auto axioms = tr_encode(phi);
    std::vector<std::vector<char>> modeled(s.members.size(), std::vector<char>(axioms.size(), 0));
    std::int64_t rows = 0;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        rows += fam[i].assignment_count() * static_cast<std::int64_t>(axioms.size());
        if (rows > caps.family_rows * 64)
            throw ResourceError("check_k_winning: evaluation cap exceeded");
        for (std::size_t a = 0; a < axioms.size(); ++a) modeled[i][a] = models(fam[i], axioms[a]);
    }
    std::vector<std::vector<char>> reach(s.members.size(), std::vector<char>(axioms.size(), 0));
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        const auto& m = s.members[i];
        for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (mask >> j & 1) sub.push_back(m[j]);
            if (static_cast<int>(sub.size()) >= k) continue;
            auto& r = reach[index.at(sub)];
            for (std::size_t a = 0; a < axioms.size(); ++a) r[a] |= modeled[i][a];
        }
    }
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        if (static_cast<int>(s.members[i].size()) >= k) continue;
        for (std::size_t a = 0; a < axioms.size(); ++a) {
            ++rep.checks;
            if (!reach[i][a])
                return fail("extension: member {" + join(s.members[i]) + "} has no extension modeling axiom " +
                            std::to_string(a) + " (" + format_polynomial(axioms[a]) + ")");
        }
    }
    return rep;
}

}  // namespace vwspace
