#pragma once

#include "vwspace/core.hpp"
#include "vwspace/graph.hpp"
#include "vwspace/hall.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vwspace {

struct MatchingPropertyResult {
    bool holds = true;
    std::vector<int> witness;  // an uncoverable C of minimum size
    long long bound = 0;       // largest |C| that had to be examined
    std::int64_t subsets_checked = 0;
};

// Every C in L \ A with |C| <= s has a VW-cover in G_{A,B}. With expander_verified only
// |C| < 2|B|/eps is examined.
MatchingPropertyResult has_matching_property(const BipartiteGraph& g, const std::vector<int>& A,
                                             const std::vector<int>& B, long long s, const Rational& epsilon,
                                             bool expander_verified, const SearchCaps& caps = {});

// Minimal uncoverable C with |C| < 2|B|/eps, or nothing when the property holds.
std::optional<std::vector<int>> smallC_witness(const BipartiteGraph& g, const std::vector<int>& A,
                                               const std::vector<int>& B, long long s, const Rational& epsilon,
                                               const SearchCaps& caps = {});

enum class HypothesisPolicy { enforce, report_only };
enum class Side { left, right };

struct Challenge {
    Side side = Side::left;
    int vertex = 0;
};

std::string to_string(const Challenge& c);

struct CoverStrategyState {
    BipartiteGraph graph;
    Rational epsilon;
    long long s = 0;
    int D = 1;
    long long mu = 0;
    bool mu_override = false;
    HypothesisPolicy policy = HypothesisPolicy::enforce;
    HallHypothesisReport hypotheses;
    bool expander_verified = false;
    std::vector<int> high_degree;  // S_D in decreasing degree order
    VwMatching M;
    VwMatching F;

    // (2/eps)|R(M) u R(F)| <= s
    bool budget_ok() const;
};

// Hypotheses: left degree 3, (s, 2-eps/2)-expander, 72d/eps(|S_d|+d)+1 <= s/2 for D <= d <= max(D, max degree)
// with S_d the R vertices of degree > d, and eps < 1/23. Under enforce a failure throws HypothesisError.
CoverStrategyState init_cover(const BipartiteGraph& g, const Rational& epsilon, int D, long long s,
                              HypothesisPolicy policy = HypothesisPolicy::enforce, const SearchCaps& caps = {});

// floor(eps s / (144 D))
long long mu_formula(const Rational& epsilon, long long s, int D);

// Connected VW-matchings through L vertex v in G_{A,B}: 2-paths, then 4-paths, each canonical, lexicographic.
std::vector<VwComponent> candidate_components(const BipartiteGraph& g, int v, const std::vector<char>& banned_left,
                                              const std::vector<char>& banned_right);

struct RespondResult {
    bool answered = true;
    bool changed = false;
    bool property_kept = true;
    int candidates = 0;       // largest |Pi| over the L-steps
    int candidate_bound = 0;  // 12 * max right degree over R \ B at that step
    bool budget_ok = true;
};

RespondResult respond(CoverStrategyState& state, const Challenge& c, const SearchCaps& caps = {});
void remove_component(CoverStrategyState& state, int index);

// ---- games ----

enum class MoveKind { challenge, remove };

struct GameMove {
    MoveKind kind = MoveKind::challenge;
    Challenge challenge;
    int index = 0;
    VwMatching after;
};

struct GameTranscript {
    int left_count = 0;
    int right_count = 0;
    long long mu = 0;
    bool mu_override = false;
    Rational epsilon;
    long long s = 0;
    int D = 1;
    VwMatching M;
    std::vector<GameMove> moves;
    std::optional<Challenge> lost_on;  // challenge Cover could not answer

    std::string to_text() const;
};

GameTranscript parse_transcript(std::istream& in);
GameTranscript parse_transcript_file(const std::string& path);

struct TranscriptReport {
    bool ok = true;
    int failed_move = -1;  // 1-based
    std::string reason;
    std::string to_text() const;
};

// Checks each move against the game rules, the extension and covering contracts, and the budget.
TranscriptReport verify_transcript(const BipartiteGraph& g, const GameTranscript& t, long long mu);

// Single-move check shared by verify_transcript and the exhaustive adversary; empty string when valid.
std::string check_move(const BipartiteGraph& g, const VwMatching& before, const GameMove& move, long long mu);

enum class AdversaryKind { random, greedy_degree, exhaustive, interactive };
AdversaryKind parse_adversary(const std::string& name);

struct PlayOptions {
    AdversaryKind adversary = AdversaryKind::random;
    std::uint64_t seed = 1;
    int max_moves = 100;
    std::istream* in = nullptr;
    std::ostream* out = nullptr;
};

struct PlayResult {
    GameTranscript transcript;
    bool cover_lost = false;
    std::int64_t positions = 0;  // exhaustive only
    int max_candidates = 0;
    int candidate_bound_violations = 0;
    int budget_violations = 0;
    int property_losses = 0;
    int invalid_moves = 0;  // responses rejected by check_move
};

PlayResult play(CoverStrategyState& state, const PlayOptions& options, const SearchCaps& caps = {});

}  // namespace vwspace
