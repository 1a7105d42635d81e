#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vwspace {

using Rational = boost::rational<std::int64_t>;

// Parses "p/q" or an integer. No decimal forms.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

std::int64_t floor_of(const Rational& r);
std::int64_t ceil_of(const Rational& r);

// Exit-code classes shared by the library and the CLI.
enum class ExitCode : int { ok = 0, negative = 1, usage = 2, resource = 3, inconsistency = 4 };

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ExitCode::usage, what) {}
    ParseError(int line, const std::string& what)
        : Error(ExitCode::usage, "line " + std::to_string(line) + ": " + what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ExitCode::usage, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ExitCode::resource, what) {}
};

class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& what) : Error(ExitCode::negative, what) {}
};

class GameRuleError : public Error {
public:
    explicit GameRuleError(const std::string& what) : Error(ExitCode::usage, what) {}
};

// A violated invariant that a proven statement says cannot happen.
class InconsistencyError : public Error {
public:
    explicit InconsistencyError(const std::string& what) : Error(ExitCode::inconsistency, what) {}
};

struct SearchCaps {
    int vw_targets = 16;
    int expander_size = 20;
    int two_path_edges = 160;
    std::int64_t subset_checks = 2'000'000;
    std::int64_t strategy_members = 200'000;
    std::int64_t family_rows = 1'000'000;
    int min_space_vars = 4;
    int min_space_budget = 4;
    std::int64_t game_positions = 500'000;

    // "key=value[,key=value...]"
    std::string to_string() const;
};

SearchCaps parse_caps(std::string_view spec, SearchCaps base);

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 1469598103934665603ULL);
std::string hex64(std::uint64_t v);

// Sorted, duplicate-free vector of ints.
std::vector<int> normalized(std::vector<int> v);
std::string join(const std::vector<int>& v, const char* sep = " ");

// Bracket of Euler's number: lo/den < e < hi/den.
struct EBracket {
    static constexpr std::int64_t lo = 271828182845904523LL;
    static constexpr std::int64_t hi = 271828182845904524LL;
    static constexpr std::int64_t den = 100000000000000000LL;
};

}  // namespace vwspace
