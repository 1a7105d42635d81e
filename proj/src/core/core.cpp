#include "vwspace/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace vwspace {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    if (s.empty()) throw ParseError("bad rational '" + std::string(whole) + "'");
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (*b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) throw ParseError("bad rational '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, text));
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

std::int64_t ceil_of(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

SearchCaps parse_caps(std::string_view spec, SearchCaps c) {
    std::string s(spec);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("cap '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        std::int64_t val = parse_int(item.substr(eq + 1), item);
        if (val < 0) throw ParseError("cap '" + key + "' must be non-negative");
        if (key == "vw_targets") c.vw_targets = static_cast<int>(val);
        else if (key == "expander_size") c.expander_size = static_cast<int>(val);
        else if (key == "two_path_edges") c.two_path_edges = static_cast<int>(val);
        else if (key == "subset_checks") c.subset_checks = val;
        else if (key == "strategy_members") c.strategy_members = val;
        else if (key == "family_rows") c.family_rows = val;
        else if (key == "min_space_vars") c.min_space_vars = static_cast<int>(val);
        else if (key == "min_space_budget") c.min_space_budget = static_cast<int>(val);
        else if (key == "game_positions") c.game_positions = val;
        else throw ParseError("unknown cap '" + key + "'");
    }
    return c;
}

std::string SearchCaps::to_string() const {
    std::ostringstream o;
    o << "vw_targets=" << vw_targets << ",expander_size=" << expander_size
      << ",two_path_edges=" << two_path_edges << ",subset_checks=" << subset_checks
      << ",strategy_members=" << strategy_members << ",family_rows=" << family_rows
      << ",min_space_vars=" << min_space_vars << ",min_space_budget=" << min_space_budget
      << ",game_positions=" << game_positions;
    return o.str();
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<int> normalized(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string join(const std::vector<int>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace vwspace
