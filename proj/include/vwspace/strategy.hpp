#pragma once

#include "vwspace/cnf.hpp"
#include "vwspace/covergame.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vwspace {

using PartialAssignment = Assignment;

// A set of assignments over one shared domain. rows[i][j] is the value of domain[j].
struct FlippableFamily {
    std::vector<int> domain;
    std::vector<std::vector<bool>> rows;

    bool is_lambda() const { return domain.empty(); }
    PartialAssignment row(std::size_t i) const;
    auto operator<=>(const FlippableFamily&) const = default;
};

// Sorts the domain (permuting rows accordingly) and the rows, dropping duplicates.
FlippableFamily make_family(std::vector<int> domain, std::vector<std::vector<bool>> rows);
FlippableFamily lambda_family();

bool is_flippable(const FlippableFamily& f);
bool is_flippable(const std::vector<PartialAssignment>& family);

class ProductFamily {
public:
    ProductFamily() = default;
    const std::vector<FlippableFamily>& factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    std::vector<int> domain() const;
    // Each factor of smaller is a factor of this.
    bool extends(const ProductFamily& smaller) const;
    std::int64_t assignment_count() const;
    // Stops early when visit returns false; returns false in that case.
    bool for_each_assignment(const std::function<bool(const PartialAssignment&)>& visit) const;
    auto operator<=>(const ProductFamily&) const = default;

private:
    friend ProductFamily product(std::vector<FlippableFamily> factors);
    std::vector<FlippableFamily> factors_;  // sorted, {lambda} dropped
};

// H1 x ... x Ht; {lambda} factors are dropped. Overlapping domains are a ValidationError.
ProductFamily product(std::vector<FlippableFamily> factors);

// Every assignment of the family zeroes p.
bool models(const ProductFamily& h, const Polynomial& p);

// All assignments over R(component) under which every clause of the component has a true matched literal.
FlippableFamily component_family(const Cnf& phi, const BipartiteGraph& g, const VwComponent& c);
ProductFamily family_of_matching(const Cnf& phi, const BipartiteGraph& g, const VwMatching& f);

// ---- certificates ----

struct CertificateFactor {
    int id = 0;
    VwComponent component;
    FlippableFamily family;
};

struct ExplicitStrategy {
    int k = 0;
    std::vector<CertificateFactor> factors;   // ids 0..n-1 in order
    std::vector<std::vector<int>> members;    // sorted factor ids

    ProductFamily member_family(std::size_t i) const;
    std::string to_text() const;
};

// "p kwin <k> <factors> <members>" / "t <id> comp <path> vars <vars> rows <bits>..." / "h <ids>"
ExplicitStrategy parse_certificate(std::istream& in);
ExplicitStrategy parse_certificate_file(const std::string& path);

// Lazy strategy backed by Cover's game strategy. Positions are VW-matchings; the family of a position
// is family_of_matching.
class WinningStrategy {
public:
    WinningStrategy(Cnf phi, CoverStrategyState state);

    const Cnf& formula() const { return phi_; }
    const std::vector<Polynomial>& axioms() const { return axioms_; }
    const CoverStrategyState& state() const { return state_; }
    ProductFamily family(const VwMatching& f) const;

    // Cover's extension of position f towards axiom index a: a clause axiom challenges its L vertex,
    // a boolean axiom challenges the variable's R vertex. Empty when Cover cannot answer.
    std::optional<VwMatching> extend(const VwMatching& f, std::size_t a, const SearchCaps& caps = {}) const;

    // Closure of {lambda} under extension of members with rank < k and under restriction.
    ExplicitStrategy materialize(int k, const SearchCaps& caps = {}) const;

private:
    Cnf phi_;
    BipartiteGraph graph_;
    CoverStrategyState state_;
    std::vector<Polynomial> axioms_;
};

// The game strategy runs with mu = k so that members of rank < k can be extended.
WinningStrategy extract_strategy(const Cnf& phi, const CoverStrategyState& state, int k);

struct CertificateReport {
    bool ok = true;
    std::string reason;
    std::int64_t members = 0;
    std::int64_t checks = 0;
    std::string to_text() const;
};

CertificateReport check_k_winning(const Cnf& phi, const ExplicitStrategy& s, int k, const SearchCaps& caps = {});

// ---- r-free families ----

struct PiecewiseAssignment {
    std::vector<PartialAssignment> pieces;  // sorted
    PartialAssignment merged() const;
    auto operator<=>(const PiecewiseAssignment&) const = default;
};

struct RFreeFamily {
    std::vector<PiecewiseAssignment> members;  // sorted, distinct
};

// Every a1 u ... u at with ai in Hi for members H1 x ... x Ht of rank <= k-1.
RFreeFamily to_rfree(const ExplicitStrategy& s, int k, const SearchCaps& caps = {});
CertificateReport check_rfree(const Cnf& phi, const RFreeFamily& f, int r, const SearchCaps& caps = {});

std::string claimed_kwin_bound(int k);
std::string claimed_rfree_bound(int r);

}  // namespace vwspace
