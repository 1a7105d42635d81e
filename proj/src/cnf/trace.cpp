#include "vwspace/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace vwspace {

namespace {

Clause normalize_clause(Clause c) {
    std::sort(c.begin(), c.end(), [](int a, int b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
    });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

int to_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + s + "'");
    }
}

Clause parse_lits(const std::vector<std::string>& tok, std::size_t from, int line) {
    Clause c;
    for (std::size_t k = from; k < tok.size(); ++k) {
        int v = to_int(tok[k], line);
        if (v == 0) {
            if (k + 1 != tok.size()) throw ParseError("line " + std::to_string(line) + ": literal after terminating 0");
            break;
        }
        c.push_back(v);
    }
    return c;
}

// Offset of the n-th whitespace-separated token.
std::size_t token_offset(const std::string& s, std::size_t n) {
    std::size_t i = 0;
    for (std::size_t k = 0;; ++k) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (k == n) return i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
}

Literal parse_literal_token(const std::string& t, int line) {
    Polynomial p = parse_polynomial(t);
    if (p.terms().size() != 1 || p.terms().begin()->first.size() != 1 || p.terms().begin()->second != Rational(1))
        throw ParseError("line " + std::to_string(line) + ": expected a literal, got '" + t + "'");
    return p.terms().begin()->first[0];
}

}  // namespace

Trace parse_trace(std::istream& in, bool pcr, Field f) {
    Trace t;
    t.pcr = pcr;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = split(raw);
        if (tok.empty() || tok[0] == "c") continue;
        auto bad = [&](const std::string& why) {
            throw ParseError("line " + std::to_string(line) + ": " + why);
        };
        TraceStep s;
        s.line = line;
        try {
            if (tok[0] == "A") {
                s.kind = StepKind::download;
                if (pcr) {
                    if (tok.size() < 2) bad("missing polynomial");
                    s.poly = parse_polynomial(raw.substr(token_offset(raw, 1)), f);
                } else {
                    s.clause = parse_lits(tok, 1, line);
                }
            } else if (tok[0] == "E") {
                s.kind = StepKind::erasure;
                if (tok.size() != 2) bad("erasure takes one step id");
                s.operands.push_back(to_int(tok[1], line));
            } else if (tok[0] == "I") {
                s.kind = StepKind::inference;
                if (tok.size() < 2) bad("missing rule");
                s.rule = tok[1];
                if (s.rule == "sem") {
                    for (std::size_t k = 2; k < tok.size(); ++k) s.args.push_back(tok[k]);
                } else if (!pcr && s.rule == "res") {
                    if (tok.size() < 4) bad("res takes two step ids and a clause");
                    s.operands = {to_int(tok[2], line), to_int(tok[3], line)};
                    s.clause = parse_lits(tok, 4, line);
                } else if (pcr && s.rule == "lin") {
                    if (tok.size() < 7) bad("lin takes two step ids, two coefficients and a polynomial");
                    s.operands = {to_int(tok[2], line), to_int(tok[3], line)};
                    s.args = {tok[4], tok[5]};
                    parse_rational(tok[4]);
                    parse_rational(tok[5]);
                    s.poly = parse_polynomial(raw.substr(token_offset(raw, 6)), f);
                } else if (pcr && s.rule == "mul") {
                    if (tok.size() < 5) bad("mul takes a step id, a literal and a polynomial");
                    s.operands = {to_int(tok[2], line)};
                    s.args = {tok[3]};
                    parse_literal_token(tok[3], line);
                    s.poly = parse_polynomial(raw.substr(token_offset(raw, 4)), f);
                } else {
                    bad("unknown rule '" + s.rule + "'");
                }
            } else {
                bad("unknown step tag '" + tok[0] + "'");
            }
        } catch (const ParseError& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw ParseError("line " + std::to_string(line) + ": " + msg);
        } catch (const ValidationError& e) {
            throw ParseError("line " + std::to_string(line) + ": " + e.what());
        }
        t.steps.push_back(std::move(s));
    }
    return t;
}

Trace parse_trace_file(const std::string& path, bool pcr, Field f) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return parse_trace(in, pcr, f);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string write_res_trace(const Trace& t) {
    std::ostringstream o;
    auto lits = [&](const Clause& c) {
        for (int l : c) o << ' ' << l;
        o << " 0\n";
    };
    for (auto& s : t.steps) {
        switch (s.kind) {
        case StepKind::download: o << 'A'; lits(s.clause); break;
        case StepKind::erasure: o << "E " << s.operands.at(0) << '\n'; break;
        case StepKind::inference:
            o << "I " << s.rule;
            for (int id : s.operands) o << ' ' << id;
            lits(s.clause);
            break;
        }
    }
    return o.str();
}

namespace {

void update_wide(SpaceReport& r, const std::set<Clause>& config) {
    std::vector<int> widths;
    for (auto& c : config) widths.push_back(static_cast<int>(c.size()));
    std::sort(widths.rbegin(), widths.rend());
    // w clauses of width >= w exist iff the w-th largest width is >= w.
    for (std::size_t w = 1; w <= widths.size(); ++w) {
        if (widths[w - 1] < static_cast<int>(w)) break;
        if (r.wide.size() < w) r.wide.resize(w, false);
        r.wide[w - 1] = true;
        r.max_wide = std::max(r.max_wide, static_cast<int>(w));
    }
}

std::optional<Clause> resolve(const Clause& a, const Clause& b, const Clause& want) {
    for (int l : a) {
        if (std::find(b.begin(), b.end(), -l) == b.end()) continue;
        Clause r;
        for (int x : a)
            if (x != l) r.push_back(x);
        for (int x : b)
            if (x != -l) r.push_back(x);
        r = normalize_clause(r);
        if (r == want) return r;
    }
    return std::nullopt;
}

}  // namespace

SpaceReport verify_res_trace(const Cnf& phi, const Trace& trace) {
    SpaceReport r;
    std::set<Clause> axioms;
    for (auto& c : phi.clauses) axioms.insert(normalize_clause(c));
    std::set<Clause> config;
    std::vector<Clause> produced;
    auto fail = [&](int step, const std::string& why) {
        r.valid = false;
        r.error_step = step;
        r.error = "step " + std::to_string(step) + " (line " + std::to_string(trace.steps[step - 1].line) + "): " + why;
    };
    auto premise = [&](int id, int step) -> const Clause* {
        if (id < 1 || id >= step) {
            fail(step, "premise " + std::to_string(id) + " does not refer to an earlier step");
            return nullptr;
        }
        const Clause& c = produced[id - 1];
        if (!config.count(c)) {
            fail(step, "premise " + std::to_string(id) + " is not in the configuration");
            return nullptr;
        }
        return &c;
    };
    for (std::size_t k = 0; k < trace.steps.size() && r.valid; ++k) {
        const TraceStep& s = trace.steps[k];
        int step = static_cast<int>(k + 1);
        Clause c = normalize_clause(s.clause);
        if (s.kind == StepKind::download) {
            if (!axioms.count(c)) {
                fail(step, "downloaded clause is not in the formula");
                break;
            }
            config.insert(c);
        } else if (s.kind == StepKind::erasure) {
            const Clause* p = premise(s.operands[0], step);
            if (!p) break;
            c = *p;
            config.erase(c);
        } else if (s.rule == "sem") {
            fail(step, "semantic step unsupported");
            break;
        } else {
            const Clause* a = premise(s.operands[0], step);
            if (!a) break;
            const Clause* b = premise(s.operands[1], step);
            if (!b) break;
            if (!resolve(*a, *b, c) && !resolve(*b, *a, c)) {
                fail(step, "clause is not a resolvent of the premises");
                break;
            }
            config.insert(c);
        }
        produced.push_back(c);
        std::vector<Clause> cfg(config.begin(), config.end());
        int space = total_space(cfg);
        r.total_space_per_step.push_back(space);
        r.max_total_space = std::max(r.max_total_space, space);
        r.max_clause_count = std::max(r.max_clause_count, static_cast<int>(config.size()));
        for (auto& x : config) r.max_width = std::max(r.max_width, static_cast<int>(x.size()));
        update_wide(r, config);
        ++r.steps;
    }
    r.refuted = r.valid && config.count(Clause{}) > 0;
    return r;
}

SpaceReport verify_pcr_trace(const std::vector<Polynomial>& axioms, const Trace& trace) {
    SpaceReport r;
    std::set<Polynomial> config;
    std::vector<Polynomial> produced;
    auto fail = [&](int step, const std::string& why) {
        r.valid = false;
        r.error_step = step;
        r.error = "step " + std::to_string(step) + " (line " + std::to_string(trace.steps[step - 1].line) + "): " + why;
    };
    auto premise = [&](int id, int step) -> const Polynomial* {
        if (id < 1 || id >= step) {
            fail(step, "premise " + std::to_string(id) + " does not refer to an earlier step");
            return nullptr;
        }
        const Polynomial& p = produced[id - 1];
        if (!config.count(p)) {
            fail(step, "premise " + std::to_string(id) + " is not in the configuration");
            return nullptr;
        }
        return &p;
    };
    for (std::size_t k = 0; k < trace.steps.size() && r.valid; ++k) {
        const TraceStep& s = trace.steps[k];
        int step = static_cast<int>(k + 1);
        Polynomial p = s.poly;
        if (s.kind == StepKind::download) {
            if (std::find(axioms.begin(), axioms.end(), p) == axioms.end()) {
                fail(step, "downloaded polynomial is not an axiom");
                break;
            }
            config.insert(p);
        } else if (s.kind == StepKind::erasure) {
            const Polynomial* q = premise(s.operands[0], step);
            if (!q) break;
            p = *q;
            config.erase(p);
        } else if (s.rule == "sem") {
            fail(step, "semantic step unsupported");
            break;
        } else if (s.rule == "lin") {
            const Polynomial* a = premise(s.operands[0], step);
            if (!a) break;
            const Polynomial* b = premise(s.operands[1], step);
            if (!b) break;
            Polynomial want = a->scaled(parse_rational(s.args[0])) + b->scaled(parse_rational(s.args[1]));
            if (!(want == p)) {
                fail(step, "polynomial is not the stated linear combination");
                break;
            }
            config.insert(p);
        } else {
            const Polynomial* a = premise(s.operands[0], step);
            if (!a) break;
            Polynomial lit_poly = parse_polynomial(s.args[0], p.field());
            Polynomial want = a->times(lit_poly.terms().begin()->first[0]);
            if (want == p) {
            } else if (want.multilinearized() == p) {
                ++r.multilinear_reductions;
            } else {
                fail(step, "polynomial is not the stated product");
                break;
            }
            config.insert(p);
        }
        produced.push_back(p);
        int space = monomial_space(std::vector<Polynomial>(config.begin(), config.end()));
        r.monomial_space_per_step.push_back(space);
        r.max_monomial_space = std::max(r.max_monomial_space, space);
        r.max_clause_count = std::max(r.max_clause_count, static_cast<int>(config.size()));
        ++r.steps;
    }
    if (r.valid)
        for (auto& p : config)
            if (p.is_one()) r.refuted = true;
    return r;
}

std::string SpaceReport::to_text() const {
    std::ostringstream o;
    auto row = [&](const std::string& k, const std::string& v) { o << std::left << std::setw(24) << k << v << '\n'; };
    row("valid", valid ? "yes" : "no");
    if (!valid) row("error", error);
    row("refuted", refuted ? "yes" : "no");
    row("steps", std::to_string(steps));
    row("max_total_space", std::to_string(max_total_space));
    row("max_clause_count", std::to_string(max_clause_count));
    row("max_width", std::to_string(max_width));
    row("max_monomial_space", std::to_string(max_monomial_space));
    row("max_wide", std::to_string(max_wide));
    row("multilinear_reductions", std::to_string(multilinear_reductions));
    return o.str();
}

std::string SpaceReport::to_csv() const {
    std::ostringstream o;
    o << "steps,valid,refuted,max_total_space,max_clause_count,max_width,max_monomial_space,max_wide,"
         "multilinear_reductions\n";
    o << steps << ',' << (valid ? 1 : 0) << ',' << (refuted ? 1 : 0) << ',' << max_total_space << ','
      << max_clause_count << ',' << max_width << ',' << max_monomial_space << ',' << max_wide << ','
      << multilinear_reductions << '\n';
    return o.str();
}

}  // namespace vwspace
