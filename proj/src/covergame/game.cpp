#include "vwspace/covergame.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace vwspace {

namespace {

std::vector<VwComponent> canonical_sorted(const VwMatching& f) {
    std::vector<VwComponent> out;
    for (auto& c : f.components) out.push_back(c.canonical());
    std::sort(out.begin(), out.end());
    return out;
}

void write_components(std::ostream& o, char tag, const VwMatching& f) {
    for (auto& c : f.components) o << tag << ' ' << format_component(c) << '\n';
}

}  // namespace

std::string GameTranscript::to_text() const {
    std::ostringstream o;
    o << "p covergame " << left_count << ' ' << right_count << " mu " << mu << ' '
      << (mu_override ? "override" : "formula") << '\n';
    o << "c epsilon " << vwspace::to_string(epsilon) << " s " << s << " D " << D << '\n';
    write_components(o, 'M', M);
    for (auto& m : moves) {
        if (m.kind == MoveKind::challenge) o << "m challenge " << vwspace::to_string(m.challenge) << '\n';
        else o << "m remove " << m.index << '\n';
        write_components(o, 'f', m.after);
    }
    if (lost_on) o << "x loss " << vwspace::to_string(*lost_on) << '\n';
    return o.str();
}

GameTranscript parse_transcript(std::istream& in) {
    GameTranscript t;
    std::string raw;
    int line = 0;
    bool header = false;
    auto side_of = [&](const std::string& s) {
        if (s == "L") return Side::left;
        if (s == "R") return Side::right;
        throw ParseError(line, "expected L or R, got '" + s + "'");
    };
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (!header && tag != "c" && tag != "p") throw ParseError(line, "missing 'p covergame' header");
        if (tag == "p") {
            std::string kind, mu_word, source;
            if (!(ls >> kind >> t.left_count >> t.right_count >> mu_word >> t.mu >> source) || kind != "covergame" ||
                mu_word != "mu" || (source != "formula" && source != "override"))
                throw ParseError(line, "bad header");
            t.mu_override = source == "override";
            header = true;
        } else if (tag == "c") {
            std::string key;
            if (ls >> key && key == "epsilon") {
                std::string eps, skey, dkey;
                if (!(ls >> eps >> skey >> t.s >> dkey >> t.D) || skey != "s" || dkey != "D")
                    throw ParseError(line, "bad parameter line");
                t.epsilon = parse_rational(eps);
            }
        } else if (tag == "M" || tag == "f") {
            std::string rest;
            std::getline(ls, rest);
            VwComponent c = parse_component(rest);
            if (c.path.empty()) throw ParseError(line, "empty component");
            if (tag == "M") {
                if (!t.moves.empty()) throw ParseError(line, "M line after the first move");
                t.M.components.push_back(c);
            } else {
                if (t.moves.empty()) throw ParseError(line, "f line before any move");
                t.moves.back().after.components.push_back(c);
            }
        } else if (tag == "m") {
            std::string kind;
            ls >> kind;
            GameMove m;
            if (kind == "challenge") {
                std::string side;
                if (!(ls >> side >> m.challenge.vertex)) throw ParseError(line, "bad challenge");
                m.challenge.side = side_of(side);
            } else if (kind == "remove") {
                m.kind = MoveKind::remove;
                if (!(ls >> m.index)) throw ParseError(line, "bad remove");
            } else {
                throw ParseError(line, "unknown move '" + kind + "'");
            }
            t.moves.push_back(m);
        } else if (tag == "x") {
            std::string word, side;
            Challenge c;
            if (!(ls >> word >> side >> c.vertex) || word != "loss") throw ParseError(line, "bad loss marker");
            c.side = side_of(side);
            t.lost_on = c;
        } else {
            throw ParseError(line, "unknown tag '" + tag + "'");
        }
    }
    if (!header) throw ParseError("missing 'p covergame' header");
    return t;
}

GameTranscript parse_transcript_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_transcript(in);
}

std::string check_move(const BipartiteGraph& g, const VwMatching& before, const GameMove& move, long long mu) {
    auto v = validate_vw_matching(g, move.after);
    if (!v) return "invalid VW-matching: " + v.reason;
    if (static_cast<long long>(move.after.size()) > mu) return "more than mu components";
    auto b = canonical_sorted(before), a = canonical_sorted(move.after);
    if (move.kind == MoveKind::remove) {
        if (move.index < 0 || move.index >= static_cast<int>(before.size())) return "no component to remove";
        VwMatching rest = before;
        rest.components.erase(rest.components.begin() + move.index);
        if (canonical_sorted(rest) != a) return "removal result mismatch";
        return "";
    }
    if (static_cast<long long>(before.size()) >= mu) return "challenge with mu components present";
    const Challenge& c = move.challenge;
    int limit = c.side == Side::left ? g.left_count() : g.right_count();
    if (c.vertex < 0 || c.vertex >= limit) return "no vertex " + to_string(c);
    if (!std::includes(a.begin(), a.end(), b.begin(), b.end())) return "not an extension";
    bool covered = c.side == Side::left ? move.after.covers_left(c.vertex) : move.after.covers_right(c.vertex);
    if (!covered) return "challenged vertex not covered";
    return "";
}

std::string TranscriptReport::to_text() const {
    if (ok) return reason.empty() ? "transcript ok\n" : "transcript ok; " + reason + "\n";
    return "transcript rejected at move " + std::to_string(failed_move) + ": " + reason + "\n";
}

TranscriptReport verify_transcript(const BipartiteGraph& g, const GameTranscript& t, long long mu) {
    TranscriptReport r;
    auto reject = [&](int k, const std::string& why) {
        r.ok = false;
        r.failed_move = k;
        r.reason = why;
        return r;
    };
    if (t.left_count != g.left_count() || t.right_count != g.right_count())
        return reject(0, "graph size does not match the header");
    if (auto v = validate_vw_matching(g, t.M); !v) return reject(0, "pre-cover invalid: " + v.reason);
    auto budget = [&](const VwMatching& f) {
        if (t.epsilon <= Rational(0)) return true;
        auto rs = right_sets_of(t.M), rf = right_sets_of(f);
        rs.insert(rs.end(), rf.begin(), rf.end());
        return Rational(2 * static_cast<std::int64_t>(normalized(rs).size())) / t.epsilon <= Rational(t.s);
    };
    VwMatching cur;
    for (std::size_t k = 0; k < t.moves.size(); ++k) {
        std::string why = check_move(g, cur, t.moves[k], mu);
        if (!why.empty()) return reject(static_cast<int>(k + 1), why);
        cur = t.moves[k].after;
        if (!budget(cur)) return reject(static_cast<int>(k + 1), "budget (2/eps)|R(M) u R(F)| <= s violated");
    }
    if (t.lost_on) {
        const Challenge& c = *t.lost_on;
        if (static_cast<long long>(cur.size()) >= mu) return reject(static_cast<int>(t.moves.size() + 1), "loss on an illegal challenge");
        r.reason = "cover could not answer challenge " + to_string(c);
    }
    return r;
}

AdversaryKind parse_adversary(const std::string& name) {
    if (name == "random") return AdversaryKind::random;
    if (name == "greedy-degree") return AdversaryKind::greedy_degree;
    if (name == "exhaustive") return AdversaryKind::exhaustive;
    if (name == "interactive") return AdversaryKind::interactive;
    throw ValidationError("unknown adversary '" + name + "'");
}

namespace {

struct Driver {
    CoverStrategyState& st;
    const SearchCaps& caps;
    PlayResult& out;

    // Applies one move to st; false when Cover could not answer.
    bool apply(GameMove& m) {
        VwMatching before = st.F;
        if (m.kind == MoveKind::remove) {
            remove_component(st, m.index);
        } else {
            RespondResult r = respond(st, m.challenge, caps);
            if (!r.answered) return false;
            out.max_candidates = std::max(out.max_candidates, r.candidates);
            if (r.candidates > r.candidate_bound && r.candidate_bound > 0) ++out.candidate_bound_violations;
            if (r.candidates > 0 && r.candidate_bound == 0) ++out.candidate_bound_violations;
            if (!r.budget_ok) ++out.budget_violations;
            if (!r.property_kept) ++out.property_losses;
        }
        m.after = st.F;
        if (!check_move(st.graph, before, m, st.mu).empty()) ++out.invalid_moves;
        return true;
    }
};

std::vector<Challenge> open_challenges(const CoverStrategyState& st) {
    std::vector<Challenge> out;
    if (static_cast<long long>(st.F.size()) >= st.mu) return out;
    for (int l = 0; l < st.graph.left_count(); ++l) out.push_back({Side::left, l});
    for (int r = 0; r < st.graph.right_count(); ++r) out.push_back({Side::right, r});
    return out;
}

void play_random(Driver& d, const PlayOptions& o) {
    std::mt19937_64 rng(o.seed);
    for (int step = 0; step < o.max_moves; ++step) {
        auto ch = open_challenges(d.st);
        std::size_t removes = d.st.F.size();
        if (ch.empty() && removes == 0) break;
        GameMove m;
        if (removes > 0 && (ch.empty() || rng() % 4 == 0)) {
            m.kind = MoveKind::remove;
            m.index = static_cast<int>(rng() % removes);
        } else {
            m.challenge = ch[rng() % ch.size()];
        }
        if (!d.apply(m)) {
            d.out.cover_lost = true;
            d.out.transcript.lost_on = m.challenge;
            return;
        }
        d.out.transcript.moves.push_back(m);
    }
}

void play_greedy(Driver& d, const PlayOptions& o) {
    const BipartiteGraph& g = d.st.graph;
    for (int step = 0; step < o.max_moves; ++step) {
        GameMove m;
        std::optional<Challenge> best;
        int best_deg = -1;
        if (static_cast<long long>(d.st.F.size()) < d.st.mu) {
            for (int r = 0; r < g.right_count(); ++r)
                if (!d.st.F.covers_right(r) && g.right_degree(r) > best_deg) {
                    best = Challenge{Side::right, r};
                    best_deg = g.right_degree(r);
                }
            for (int l = 0; l < g.left_count(); ++l)
                if (!d.st.F.covers_left(l) && g.left_degree(l) > best_deg) {
                    best = Challenge{Side::left, l};
                    best_deg = g.left_degree(l);
                }
        }
        if (best) {
            m.challenge = *best;
        } else if (!d.st.F.empty()) {
            m.kind = MoveKind::remove;
            m.index = 0;
        } else {
            break;
        }
        if (!d.apply(m)) {
            d.out.cover_lost = true;
            d.out.transcript.lost_on = m.challenge;
            return;
        }
        d.out.transcript.moves.push_back(m);
    }
}

void play_exhaustive(Driver& d, const CoverStrategyState& root) {
    using Key = std::vector<VwComponent>;
    struct Node {
        Key parent;
        GameMove move;
        bool root = false;
    };
    std::map<Key, Node> seen;
    std::deque<Key> queue;
    seen[Key{}] = Node{{}, {}, true};
    queue.push_back({});
    auto path_to = [&](Key k) {
        std::vector<GameMove> moves;
        while (!seen.at(k).root) {
            moves.push_back(seen.at(k).move);
            k = seen.at(k).parent;
        }
        std::reverse(moves.begin(), moves.end());
        return moves;
    };
    while (!queue.empty()) {
        Key pos = queue.front();
        queue.pop_front();
        CoverStrategyState base = root;
        base.F.components = pos;
        std::vector<GameMove> moves;
        for (int i = 0; i < static_cast<int>(pos.size()); ++i) {
            GameMove m;
            m.kind = MoveKind::remove;
            m.index = i;
            moves.push_back(m);
        }
        for (auto& c : open_challenges(base)) {
            GameMove m;
            m.challenge = c;
            moves.push_back(m);
        }
        for (auto& m : moves) {
            d.st = base;
            if (!d.apply(m)) {
                d.out.cover_lost = true;
                d.out.transcript.moves = path_to(pos);
                d.out.transcript.lost_on = m.challenge;
                return;
            }
            Key next = canonical_sorted(d.st.F);
            if (seen.count(next)) continue;
            if (static_cast<std::int64_t>(seen.size()) >= d.caps.game_positions)
                throw ResourceError("exhaustive game: position cap " + std::to_string(d.caps.game_positions) +
                                    " exceeded");
            m.after.components = next;
            seen[next] = Node{pos, m, false};
            queue.push_back(next);
        }
    }
    d.out.positions = static_cast<std::int64_t>(seen.size());
    d.st = root;
}

void play_interactive(Driver& d, const PlayOptions& o) {
    if (!o.in || !o.out) throw ValidationError("interactive play needs input and output streams");
    std::ostream& out = *o.out;
    std::string line;
    out << "moves: L <i> | R <j> | remove <k> | quit\n";
    while (std::getline(*o.in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "quit") break;
        GameMove m;
        try {
            if (word == "remove") {
                m.kind = MoveKind::remove;
                if (!(ls >> m.index)) throw ParseError("remove needs an index");
            } else if (word == "L" || word == "R") {
                m.challenge.side = word == "L" ? Side::left : Side::right;
                if (!(ls >> m.challenge.vertex)) throw ParseError("challenge needs a vertex");
            } else {
                throw ParseError("unknown move '" + word + "'");
            }
            if (!d.apply(m)) {
                d.out.cover_lost = true;
                d.out.transcript.lost_on = m.challenge;
                out << "cover cannot answer " << to_string(m.challenge) << '\n';
                return;
            }
        } catch (const Error& e) {
            out << "error: " << e.what() << '\n';
            continue;
        }
        d.out.transcript.moves.push_back(m);
        out << "F (" << d.st.F.size() << " components)\n";
        write_components(out, 'f', d.st.F);
    }
}

}  // namespace

PlayResult play(CoverStrategyState& st, const PlayOptions& options, const SearchCaps& caps) {
    PlayResult out;
    GameTranscript& t = out.transcript;
    t.left_count = st.graph.left_count();
    t.right_count = st.graph.right_count();
    t.mu = st.mu;
    t.mu_override = st.mu_override;
    t.epsilon = st.epsilon;
    t.s = st.s;
    t.D = st.D;
    t.M = st.M;
    Driver d{st, caps, out};
    switch (options.adversary) {
    case AdversaryKind::random: play_random(d, options); break;
    case AdversaryKind::greedy_degree: play_greedy(d, options); break;
    case AdversaryKind::exhaustive: {
        CoverStrategyState root = st;
        root.F = {};
        play_exhaustive(d, root);
        break;
    }
    case AdversaryKind::interactive: play_interactive(d, options); break;
    }
    return out;
}

}  // namespace vwspace
