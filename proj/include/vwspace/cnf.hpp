#pragma once

#include "vwspace/core.hpp"
#include "vwspace/graph.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vwspace {

// Literals are DIMACS-style: +v / -v with v in 1..n. Variable v is R vertex v-1.
using Clause = std::vector<int>;

struct Cnf {
    int variable_count = 0;
    std::vector<Clause> clauses;

    bool operator==(const Cnf& o) const { return variable_count == o.variable_count && clauses == o.clauses; }
};

// Each clause: exactly three distinct variables, no complementary pair.
bool is_strict_3cnf(const Cnf& phi);

std::string write_dimacs(const Cnf& phi);
Cnf read_dimacs(std::istream& in);
Cnf read_dimacs_file(const std::string& path);

Cnf gen_random_cnf(int n, const Rational& delta, std::uint64_t seed);

BipartiteGraph adjacency_graph(const Cnf& phi);

// Partial assignment over variables (0-based index -> value).
using Assignment = std::map<int, bool>;

// Some literal true under alpha.
bool satisfies(const Assignment& alpha, const Clause& c);
// Every literal assigned and false.
bool falsifies(const Assignment& alpha, const Clause& c);

// ---- polynomials over X and X-bar ----

struct Literal {
    int var = 0;  // 0-based
    bool bar = false;
    auto operator<=>(const Literal&) const = default;
};

// Sorted multiset of literals; x*x is representable.
using Monomial = std::vector<Literal>;

struct Field {
    std::int64_t prime = 0;  // 0 means the rationals
    bool operator==(const Field&) const = default;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Field f) : field_(f) {}
    static Polynomial constant(const Rational& c, Field f = {});
    static Polynomial literal(Literal l, Field f = {});

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Field field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_multilinear() const;
    std::vector<int> variables() const;

    void add_term(Monomial m, const Rational& c);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial times(Literal l) const;
    Polynomial operator*(const Polynomial& o) const;
    // x*x -> x, xbar*xbar -> xbar.
    Polynomial multilinearized() const;
    // Substitutes assigned variables (xbar = 1 - x); unassigned powers are kept.
    Polynomial restricted(const Assignment& alpha) const;

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_ && field_ == o.field_; }
    bool operator<(const Polynomial& o) const { return terms_ < o.terms_; }

private:
    Rational normalize(const Rational& c) const;
    std::map<Monomial, Rational> terms_;
    Field field_;
};

// alpha |= p iff alpha(p) is the zero polynomial.
bool satisfies(const Assignment& alpha, const Polynomial& p);

// Syntax: terms joined by + or -, term = [coef*]lit*lit..., lit = x3 | ~x3 | x3^2, "1" for the constant.
Polynomial parse_polynomial(const std::string& text, Field f = {});
std::string format_polynomial(const Polynomial& p);

Polynomial tr_clause(const Clause& c, Field f = {});
// Clause translations in clause order, then x^2-x and x+xbar-1 for every variable.
std::vector<Polynomial> tr_encode(const Cnf& phi, Field f = {});

// ---- space ----

int total_space(const std::vector<Clause>& config);
int monomial_space(const std::vector<Polynomial>& config);

enum class StepKind { download, inference, erasure };

struct TraceStep {
    StepKind kind = StepKind::download;
    std::string rule;               // inference rule: res, lin, mul, sem
    std::vector<int> operands;      // step ids
    std::vector<std::string> args;  // rule-specific extras (coefficients, literal)
    Clause clause;                  // RES payload
    Polynomial poly;                // PCR payload
    int line = 0;
};

struct Trace {
    bool pcr = false;
    std::vector<TraceStep> steps;
};

Trace parse_trace(std::istream& in, bool pcr, Field f = {});
Trace parse_trace_file(const std::string& path, bool pcr, Field f = {});
std::string write_res_trace(const Trace& t);

struct SpaceReport {
    bool valid = true;
    int error_step = -1;
    std::string error;
    bool refuted = false;
    int steps = 0;
    int max_total_space = 0;
    int max_clause_count = 0;
    int max_width = 0;
    int max_monomial_space = 0;
    int multilinear_reductions = 0;
    // wide[w-1]: some configuration holds >= w clauses of width >= w.
    std::vector<bool> wide;
    int max_wide = 0;
    std::vector<int> total_space_per_step;
    std::vector<int> monomial_space_per_step;

    std::string to_text() const;
    std::string to_csv() const;
};

SpaceReport verify_res_trace(const Cnf& phi, const Trace& trace);
SpaceReport verify_pcr_trace(const std::vector<Polynomial>& axioms, const Trace& trace);

// ---- degree statistics ----

struct DegreeStats {
    std::vector<int> degree;      // per variable
    std::vector<int> at_least;    // at_least[d] = |S_d|, d = 0..max_degree+1
    int max_degree = 0;
    int size_at_least(int d) const;
};

DegreeStats degree_stats(const Cnf& phi);

// ceil(24 e Delta) with Delta = m/n.
std::int64_t concentration_start(const Cnf& phi);

// Least D >= ceil(24 e Delta) with 72d/eps (|S_d|+d) + 1 <= c n for D <= d <= max(D, max degree).
std::optional<int> check_concentration(const Cnf& phi, const Rational& epsilon, const Rational& c);

// |S_d| <= 2 e n / 2^d, decided with a rational bracket of e.
bool tail_bound_holds(std::int64_t s_d, int d, std::int64_t n);

// Exhaustive search for a resolution refutation within the budgets (bottom not counted).
std::optional<Trace> min_space_search(const Cnf& phi, int clause_budget, int width_budget, const SearchCaps& caps = {});

}  // namespace vwspace
