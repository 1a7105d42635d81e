#include "vwspace/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace vwspace {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
    while (nr) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw ValidationError("coefficient denominator not invertible modulo " + std::to_string(p));
    return mod(t, p);
}

}  // namespace

Rational Polynomial::normalize(const Rational& c) const {
    if (field_.prime == 0) return c;
    std::int64_t p = field_.prime;
    __int128 v = static_cast<__int128>(mod(c.numerator(), p)) * mod_inverse(c.denominator(), p);
    return Rational(static_cast<std::int64_t>(v % p));
}

Polynomial Polynomial::constant(const Rational& c, Field f) {
    Polynomial p(f);
    p.add_term({}, c);
    return p;
}

Polynomial Polynomial::literal(Literal l, Field f) {
    Polynomial p(f);
    p.add_term({l}, 1);
    return p;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == Rational(1);
}

bool Polynomial::is_multilinear() const {
    for (auto& [m, c] : terms_)
        if (std::adjacent_find(m.begin(), m.end()) != m.end()) return false;
    return true;
}

std::vector<int> Polynomial::variables() const {
    std::vector<int> out;
    for (auto& [m, c] : terms_)
        for (auto& l : m) out.push_back(l.var);
    return normalized(out);
}

void Polynomial::add_term(Monomial m, const Rational& c) {
    std::sort(m.begin(), m.end());
    Rational v = normalize(c);
    if (v == Rational(0)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), v);
        return;
    }
    it->second = normalize(it->second + v);
    if (it->second == Rational(0)) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (!(field_ == o.field_)) throw ValidationError("polynomials over different fields");
    Polynomial r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(field_);
    for (auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

Polynomial Polynomial::times(Literal l) const {
    Polynomial r(field_);
    for (auto& [m, v] : terms_) {
        Monomial mm = m;
        mm.push_back(l);
        r.add_term(mm, v);
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(field_);
    for (auto& [a, ca] : terms_)
        for (auto& [b, cb] : o.terms_) {
            Monomial m = a;
            m.insert(m.end(), b.begin(), b.end());
            r.add_term(m, ca * cb);
        }
    return r;
}

Polynomial Polynomial::multilinearized() const {
    Polynomial r(field_);
    for (auto& [m, v] : terms_) {
        Monomial mm = m;
        mm.erase(std::unique(mm.begin(), mm.end()), mm.end());
        r.add_term(mm, v);
    }
    return r;
}

Polynomial Polynomial::restricted(const Assignment& alpha) const {
    Polynomial r(field_);
    for (auto& [m, v] : terms_) {
        Monomial rest;
        bool zero = false;
        for (auto& l : m) {
            auto it = alpha.find(l.var);
            if (it == alpha.end()) {
                rest.push_back(l);
                continue;
            }
            bool value = l.bar ? !it->second : it->second;
            if (!value) {
                zero = true;
                break;
            }
        }
        if (!zero) r.add_term(rest, v);
    }
    return r;
}

bool satisfies(const Assignment& alpha, const Polynomial& p) { return p.restricted(alpha).is_zero(); }

Polynomial parse_polynomial(const std::string& text, Field f) {
    std::size_t i = 0;
    auto fail = [&](const std::string& why) -> Polynomial {
        throw ParseError("polynomial '" + text + "': " + why);
    };
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&]() -> std::int64_t {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("expected a number");
        return std::stoll(text.substr(start, i - start));
    };
    Polynomial p(f);
    skip();
    if (i == text.size()) fail("empty");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        Rational coef(sign);
        Monomial mono;
        bool factor_seen = false;
        while (true) {
            skip();
            if (i >= text.size()) break;
            char ch = text[i];
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                std::int64_t num = number(), den = 1;
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    den = number();
                    if (den == 0) fail("zero denominator");
                }
                coef *= Rational(num, den);
            } else if (ch == 'x' || ch == '~') {
                bool bar = ch == '~';
                if (bar) {
                    ++i;
                    if (i >= text.size() || text[i] != 'x') fail("expected x after ~");
                }
                ++i;
                std::int64_t v = number();
                if (v < 1) fail("variables are numbered from 1");
                int power = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    power = static_cast<int>(number());
                }
                for (int k = 0; k < power; ++k) mono.push_back({static_cast<int>(v - 1), bar});
            } else {
                fail(std::string("unexpected '") + ch + "'");
            }
            factor_seen = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!factor_seen) fail("empty term");
        p.add_term(mono, coef);
    }
    return p;
}

std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](auto& a, auto& b) { return a.first.size() > b.first.size(); });
    std::ostringstream o;
    bool first = true;
    for (auto& [m, c] : terms) {
        Rational a = c < 0 ? -c : c;
        if (first) o << (c < 0 ? "-" : "");
        else o << (c < 0 ? " - " : " + ");
        first = false;
        bool wrote = false;
        if (m.empty() || a != Rational(1)) {
            o << to_string(a);
            wrote = true;
        }
        for (std::size_t k = 0; k < m.size();) {
            std::size_t j = k;
            while (j < m.size() && m[j] == m[k]) ++j;
            if (wrote) o << '*';
            o << (m[k].bar ? "~x" : "x") << m[k].var + 1;
            if (j - k > 1) o << '^' << j - k;
            wrote = true;
            k = j;
        }
    }
    return o.str();
}

Polynomial tr_clause(const Clause& c, Field f) {
    Monomial m;
    for (int l : c) m.push_back({std::abs(l) - 1, l > 0});
    Polynomial p(f);
    p.add_term(m, 1);
    return p;
}

std::vector<Polynomial> tr_encode(const Cnf& phi, Field f) {
    std::vector<Polynomial> out;
    for (auto& c : phi.clauses) out.push_back(tr_clause(c, f));
    for (int v = 0; v < phi.variable_count; ++v) {
        Polynomial sq(f);
        sq.add_term({{v, false}, {v, false}}, 1);
        sq.add_term({{v, false}}, -1);
        out.push_back(sq);
        Polynomial comp(f);
        comp.add_term({{v, false}}, 1);
        comp.add_term({{v, true}}, 1);
        comp.add_term({}, -1);
        out.push_back(comp);
    }
    return out;
}

int total_space(const std::vector<Clause>& config) {
    int s = 0;
    for (auto& c : config) s += static_cast<int>(c.size());
    return s;
}

int monomial_space(const std::vector<Polynomial>& config) {
    std::vector<Monomial> all;
    for (auto& p : config)
        for (auto& [m, c] : p.terms()) all.push_back(m);
    std::sort(all.begin(), all.end());
    return static_cast<int>(std::unique(all.begin(), all.end()) - all.begin());
}

}  // namespace vwspace
