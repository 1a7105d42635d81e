#include "vwspace/cnf.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <map>
#include <unordered_map>

namespace vwspace {

namespace {

// Clause code: bit v set for x_v, bit 16+v for its negation.
using Code = std::uint32_t;
using State = std::vector<Code>;  // sorted, distinct

Code encode(const Clause& c) {
    Code k = 0;
    for (int l : c) k |= l > 0 ? Code(1) << (l - 1) : Code(1) << (16 - l - 1);
    return k;
}

Clause decode(Code k) {
    Clause c;
    for (int v = 0; v < 16; ++v) {
        if (k >> v & 1) c.push_back(v + 1);
        if (k >> (16 + v) & 1) c.push_back(-(v + 1));
    }
    return c;
}

int width(Code k) { return std::popcount(k); }

bool tautology(Code k) { return (k & (k >> 16) & 0xffff) != 0; }

struct StateHash {
    std::size_t operator()(const State& s) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (Code c : s) h = (h ^ c) * 1099511628211ULL;
        return h;
    }
};

struct Move {
    StepKind kind;
    Code a = 0, b = 0, result = 0;
};

}  // namespace

std::optional<Trace> min_space_search(const Cnf& phi, int clause_budget, int width_budget, const SearchCaps& caps) {
    if (phi.variable_count > caps.min_space_vars || phi.variable_count > 16)
        throw ResourceError("min_space_search: " + std::to_string(phi.variable_count) + " variables exceed cap " +
                            std::to_string(caps.min_space_vars));
    if (clause_budget > caps.min_space_budget || width_budget > caps.min_space_budget)
        throw ResourceError("min_space_search: budget exceeds cap " + std::to_string(caps.min_space_budget));
    if (clause_budget <= 0 || width_budget < 0) return std::nullopt;

    std::vector<Code> axioms;
    for (auto& c : phi.clauses) {
        Code k = encode(c);
        if (!tautology(k) && width(k) <= width_budget) axioms.push_back(k);
    }
    std::sort(axioms.begin(), axioms.end());
    axioms.erase(std::unique(axioms.begin(), axioms.end()), axioms.end());

    std::unordered_map<State, std::pair<State, Move>, StateHash> parent;
    std::deque<State> queue;
    parent.emplace(State{}, std::make_pair(State{}, Move{StepKind::erasure}));
    queue.push_back({});

    auto build = [&](State s, Move last) {
        std::vector<Move> moves{last};
        while (!s.empty()) {
            auto& [prev, m] = parent.at(s);
            moves.push_back(m);
            s = prev;
        }
        std::reverse(moves.begin(), moves.end());
        Trace t;
        std::map<Code, int> producer;
        for (auto& m : moves) {
            TraceStep step;
            step.kind = m.kind;
            if (m.kind == StepKind::download) {
                step.clause = decode(m.result);
            } else if (m.kind == StepKind::erasure) {
                step.operands = {producer.at(m.result)};
                step.clause = decode(m.result);
            } else {
                step.rule = "res";
                step.operands = {producer.at(m.a), producer.at(m.b)};
                step.clause = decode(m.result);
            }
            t.steps.push_back(step);
            producer[m.result] = static_cast<int>(t.steps.size());
        }
        return t;
    };

    std::int64_t visited = 1;
    auto push = [&](const State& from, State to, Move m) {
        std::sort(to.begin(), to.end());
        if (parent.count(to)) return;
        if (++visited > caps.subset_checks)
            throw ResourceError("min_space_search: state cap " + std::to_string(caps.subset_checks) + " exceeded");
        parent.emplace(to, std::make_pair(from, m));
        queue.push_back(std::move(to));
    };

    for (Code a : axioms)
        if (a == 0) return build({}, Move{StepKind::download, 0, 0, 0});

    while (!queue.empty()) {
        State s = std::move(queue.front());
        queue.pop_front();
        bool room = static_cast<int>(s.size()) < clause_budget;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                Code a = s[i], b = s[j];
                Code clash = (a & (b >> 16)) | (b & (a >> 16));
                clash &= 0xffff;
                if (std::popcount(clash) != 1) continue;
                Code r = (a | b) & ~(clash | clash << 16);
                if (r == 0) return build(s, Move{StepKind::inference, a, b, 0});
                if (!room || width(r) > width_budget || std::binary_search(s.begin(), s.end(), r)) continue;
                State t = s;
                t.push_back(r);
                push(s, std::move(t), Move{StepKind::inference, a, b, r});
            }
        if (room)
            for (Code a : axioms) {
                if (std::binary_search(s.begin(), s.end(), a)) continue;
                State t = s;
                t.push_back(a);
                push(s, std::move(t), Move{StepKind::download, 0, 0, a});
            }
        for (std::size_t i = 0; i < s.size(); ++i) {
            State t = s;
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
            push(s, std::move(t), Move{StepKind::erasure, 0, 0, s[i]});
        }
    }
    return std::nullopt;
}

}  // namespace vwspace
