// vwspace command-line front end.

#include "vwspace/cnf.hpp"
#include "vwspace/covergame.hpp"
#include "vwspace/graph.hpp"
#include "vwspace/hall.hpp"
#include "vwspace/strategy.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace vwspace;

namespace {

constexpr const char* kVersion = "1.0.0";

enum class Format { text, csv };

struct Global {
    std::uint64_t seed = 1;
    std::string caps_spec;
    std::string format = "text";
    SearchCaps caps;
    Format fmt = Format::text;
};

// Every report starts with tool version, seed and a hash of the effective configuration.
std::string provenance(const Global& g, const std::string& config) {
    std::string full = config + " seed=" + std::to_string(g.seed) + " caps=" + g.caps.to_string();
    std::ostringstream o;
    o << "# vwspace " << kVersion << " seed " << g.seed << " config " << hex64(fnv1a(full)) << '\n';
    o << "# " << full << '\n';
    return o.str();
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << body;
    if (!out) throw ParseError("write failed for " + path);
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream in(s);
    for (std::string tok; std::getline(in, tok, ',');) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("bad vertex list '" + s + "'");
        }
    }
    return normalized(out);
}

std::string matching_text(const VwMatching& f, char tag) {
    std::string s;
    for (auto& c : f.components) s += std::string(1, tag) + " " + format_component(c) + "\n";
    return s;
}

int cmd_gen(const Global& g, int n, const std::string& delta, const std::string& out) {
    if (n < 3) throw ValidationError("gen: n must be at least 3");
    Rational d = parse_rational(delta);
    if (d <= Rational(0)) throw ValidationError("gen: delta must be positive");
    Cnf phi = gen_random_cnf(n, d, g.seed);
    write_output(out, write_dimacs(phi));
    if (!out.empty() && out != "-")
        std::cout << provenance(g, "gen n=" + std::to_string(n) + " delta=" + to_string(d)) << "wrote " << out << " ("
                  << phi.clauses.size() << " clauses)\n";
    return 0;
}

int cmd_graph(const Global& g, const std::string& cnf, const std::string& out) {
    Cnf phi = read_dimacs_file(cnf);
    BipartiteGraph graph = adjacency_graph(phi);
    write_output(out, write_bigraph(graph));
    (void)g;
    return 0;
}

int cmd_expander(const Global& g, const std::string& file, long long s, const std::string& delta) {
    BipartiteGraph graph = read_bigraph_file(file);
    Rational d = parse_rational(delta);
    auto r = is_expander(graph, s, d, g.caps);
    std::ostringstream o;
    o << provenance(g, "expander file=" + file + " s=" + std::to_string(s) + " delta=" + to_string(d));
    if (g.fmt == Format::csv) {
        o << "expander,checked_size,witness\n" << (r.expander ? "yes" : "no") << ',' << r.checked_size << ','
          << join(r.witness, " ") << '\n';
    } else {
        o << "expander: " << (r.expander ? "yes" : "no") << '\n';
        o << "checked sizes: 1.." << r.checked_size << '\n';
        if (!r.expander) o << "witness: " << join(r.witness) << " (|N| = " << neighborhood(graph, r.witness).size() << ")\n";
    }
    std::cout << o.str();
    return r.expander ? 0 : 1;
}

int cmd_vwcover(const Global& g, const std::string& file, const std::string& targets, const std::string& ban_left,
                const std::string& ban_right) {
    BipartiteGraph graph = read_bigraph_file(file);
    std::vector<int> t;
    if (targets == "all")
        for (int l = 0; l < graph.left_count(); ++l) t.push_back(l);
    else
        t = parse_list(targets);
    auto bl = parse_list(ban_left), br = parse_list(ban_right);
    auto f = find_vw_cover(graph, t, bl, br, g.caps);
    std::cout << provenance(g, "vwcover file=" + file + " targets=" + join(t, ",") + " ban_left=" + join(bl, ",") +
                                   " ban_right=" + join(br, ","));
    if (!f) {
        std::cout << "VW-cover: none\n";
        return 1;
    }
    std::cout << "VW-cover: " << f->size() << " components\n" << matching_text(*f, 'f');
    return 0;
}

int cmd_hall(const Global& g, const std::string& mode, const std::string& eps_text, int max_left, int n,
             const std::string& file, const std::string& out) {
    Rational eps = parse_rational(eps_text);
    std::string header = provenance(g, "hall " + mode + " epsilon=" + to_string(eps) + " max_left=" +
                                           std::to_string(max_left) + " n=" + std::to_string(n) + " file=" + file);
    if (mode == "verify") {
        auto r = hall_verify(max_left, eps, g.caps);
        std::cout << header;
        if (g.fmt == Format::csv)
            std::cout << "epsilon,max_left,graphs_checked,hypotheses_passed,critical_candidates,counterexamples\n"
                      << to_string(eps) << ',' << max_left << ',' << r.graphs_checked << ',' << r.hypotheses_passed
                      << ',' << r.critical_candidates << ',' << r.counterexamples << '\n';
        else
            std::cout << r.to_text();
        if (r.counterexamples > 0 && eps < Rational(1, 23)) return 4;
        return r.counterexamples == 0 ? 0 : 1;
    }
    if (mode == "counterexample") {
        auto r = hall_counterexample(eps, g.caps);
        std::cout << header << r.to_text();
        if (!out.empty()) write_output(out, write_hgraph(r.hypergraph));
        return r.witness() ? 0 : 4;
    }
    if (mode == "gadget") {
        if (n < 0) throw ValidationError("hall gadget: n must be non-negative");
        Hypergraph base = find_base_hypergraph(g.caps);
        Gadget gad = find_gadget(g.caps);
        Hypergraph h = amplify(base, gad, n);
        std::cout << header << "gadget: " << gad.hypergraph.vertex_count << " vertices, " << gad.hypergraph.edge_count()
                  << " edges, x = " << gad.x << '\n';
        std::cout << "amplified n=" << n << ": " << h.vertex_count << " vertices, " << h.edge_count() << " edges\n";
        std::string body = write_hgraph(h);
        if (out.empty()) std::cout << body;
        else write_output(out, body);
        return 0;
    }
    if (mode == "audit") {
        if (file.empty()) throw ValidationError("hall audit needs a hypergraph file");
        Hypergraph h = read_hgraph_file(file);
        auto r = discharge_audit(h, eps);
        std::cout << header << r.to_text();
        return 0;
    }
    throw ValidationError("unknown hall mode '" + mode + "'");
}

struct GameArgs {
    std::string graph, transcript, adversary = "random", eps = "1/24", policy = "enforce";
    int D = 1;
    long long s = 0;
    long long mu = -1;
    int max_moves = 100;
    bool interactive = false;
};

CoverStrategyState make_state(const Global& g, const BipartiteGraph& graph, const GameArgs& a) {
    HypothesisPolicy p;
    if (a.policy == "enforce") p = HypothesisPolicy::enforce;
    else if (a.policy == "report") p = HypothesisPolicy::report_only;
    else throw ValidationError("unknown policy '" + a.policy + "'");
    if (a.s <= 0) throw ValidationError("covergame: -s must be positive");
    CoverStrategyState st = init_cover(graph, parse_rational(a.eps), a.D, a.s, p, g.caps);
    if (a.mu >= 0) {
        st.mu = a.mu;
        st.mu_override = true;
    }
    return st;
}

int cmd_covergame_play(const Global& g, const GameArgs& a) {
    BipartiteGraph graph = read_bigraph_file(a.graph);
    CoverStrategyState st = make_state(g, graph, a);
    PlayOptions o;
    o.adversary = a.interactive ? AdversaryKind::interactive : parse_adversary(a.adversary);
    o.seed = g.seed;
    o.max_moves = a.max_moves;
    o.in = &std::cin;
    o.out = &std::cout;
    std::cout << provenance(g, "covergame play file=" + a.graph + " epsilon=" + to_string(st.epsilon) + " D=" +
                                   std::to_string(a.D) + " s=" + std::to_string(a.s) + " mu=" + std::to_string(st.mu) +
                                   (st.mu_override ? "(override)" : "(formula)") + " adversary=" +
                                   (a.interactive ? std::string("interactive") : a.adversary) +
                                   " max_moves=" + std::to_string(a.max_moves));
    std::cout << st.hypotheses.to_text();
    std::cout << "pre-cover: " << st.M.size() << " components\n" << matching_text(st.M, 'M');
    PlayResult r = play(st, o, g.caps);
    if (!a.transcript.empty()) write_output(a.transcript, r.transcript.to_text());
    auto check = verify_transcript(graph, r.transcript, st.mu);
    if (g.fmt == Format::csv) {
        std::cout << "moves,cover_lost,positions,max_candidates,candidate_bound_violations,budget_violations,"
                     "property_losses,invalid_moves,transcript_ok\n"
                  << r.transcript.moves.size() << ',' << r.cover_lost << ',' << r.positions << ',' << r.max_candidates
                  << ',' << r.candidate_bound_violations << ',' << r.budget_violations << ',' << r.property_losses << ','
                  << r.invalid_moves << ',' << check.ok << '\n';
    } else {
        std::cout << "moves: " << r.transcript.moves.size() << '\n';
        if (o.adversary == AdversaryKind::exhaustive) std::cout << "positions explored: " << r.positions << '\n';
        std::cout << "cover: " << (r.cover_lost ? "lost" : "never lost") << '\n';
        std::cout << "max |Pi|: " << r.max_candidates << ", |Pi| bound violations: " << r.candidate_bound_violations
                  << ", budget violations: " << r.budget_violations << ", property losses: " << r.property_losses
                  << '\n';
        std::cout << check.to_text();
    }
    if (!check.ok || r.invalid_moves) return 4;
    if (r.cover_lost) return st.policy == HypothesisPolicy::enforce ? 4 : 1;
    return 0;
}

int cmd_covergame_verify(const Global& g, const GameArgs& a) {
    BipartiteGraph graph = read_bigraph_file(a.graph);
    GameTranscript t = parse_transcript_file(a.transcript);
    long long mu = a.mu >= 0 ? a.mu : t.mu;
    auto r = verify_transcript(graph, t, mu);
    std::cout << provenance(g, "covergame verify file=" + a.graph + " transcript=" + a.transcript + " mu=" +
                                   std::to_string(mu))
              << r.to_text();
    return r.ok ? 0 : 1;
}

struct CertifyArgs {
    std::string cnf, out, check, eps = "1/24";
    int k = 2;
    long long s = 2;
    int D = 0;
};

int cmd_certify(const Global& g, const CertifyArgs& a) {
    Cnf phi = read_dimacs_file(a.cnf);
    std::string header = provenance(g, "certify file=" + a.cnf + " k=" + std::to_string(a.k) + " epsilon=" + a.eps +
                                           " s=" + std::to_string(a.s) + " D=" + std::to_string(a.D) +
                                           " check=" + a.check);
    ExplicitStrategy cert;
    std::ostringstream o;
    o << header;
    if (!a.check.empty()) {
        cert = parse_certificate_file(a.check);
    } else {
        BipartiteGraph graph = adjacency_graph(phi);
        int D = a.D > 0 ? a.D : std::max(1, graph.right_count() ? graph.max_right_degree() : 1);
        auto st = init_cover(graph, parse_rational(a.eps), D, a.s, HypothesisPolicy::report_only, g.caps);
        o << st.hypotheses.to_text();
        auto ws = extract_strategy(phi, st, a.k);
        cert = ws.materialize(a.k, g.caps);
        if (!a.out.empty()) write_output(a.out, cert.to_text());
    }
    auto kr = check_k_winning(phi, cert, a.k, g.caps);
    o << "k-winning (k=" << a.k << "): " << kr.to_text();
    bool rfree_ok = true;
    if (kr.ok) {
        auto rf = to_rfree(cert, a.k, g.caps);
        auto rr = check_rfree(phi, rf, a.k - 1, g.caps);
        rfree_ok = rr.ok;
        o << "r-free (r=" << a.k - 1 << "): " << rr.to_text();
        if (rr.ok) o << claimed_rfree_bound(a.k - 1) << '\n';
    }
    if (kr.ok) o << claimed_kwin_bound(a.k) << '\n';
    std::cout << o.str();
    return kr.ok && rfree_ok ? 0 : 1;
}

int cmd_space(const Global& g, const std::string& cnf, const std::string& trace, const std::string& system,
              long long prime) {
    if (system != "res" && system != "pcr") throw ValidationError("--system must be res or pcr");
    Cnf phi = read_dimacs_file(cnf);
    Field f{prime};
    Trace t = parse_trace_file(trace, system == "pcr", f);
    SpaceReport r = system == "res" ? verify_res_trace(phi, t) : verify_pcr_trace(tr_encode(phi, f), t);
    std::cout << provenance(g, "space cnf=" + cnf + " trace=" + trace + " system=" + system +
                                   " prime=" + std::to_string(prime));
    std::cout << (g.fmt == Format::csv ? r.to_csv() : r.to_text());
    return r.valid ? 0 : 1;
}

int cmd_stats(const Global& g, const std::string& cnf, const std::string& eps_text, const std::string& c_text) {
    Cnf phi = read_dimacs_file(cnf);
    Rational eps = parse_rational(eps_text), c = parse_rational(c_text);
    auto st = degree_stats(phi);
    auto D = check_concentration(phi, eps, c);
    std::ostringstream o;
    o << provenance(g, "stats cnf=" + cnf + " epsilon=" + to_string(eps) + " c=" + to_string(c));
    std::int64_t n = phi.variable_count;
    if (g.fmt == Format::csv) {
        o << "d,S_d,tail_bound_2en_over_2d\n";
        for (int d = 0; d <= st.max_degree + 1; ++d)
            o << d << ',' << st.size_at_least(d) << ',' << (tail_bound_holds(st.size_at_least(d), d, n) ? 1 : 0) << '\n';
    } else {
        o << "variables " << n << ", clauses " << phi.clauses.size() << ", max degree " << st.max_degree << '\n';
        o << std::string("     d  |S_d|  <=2en/2^d\n");
        for (int d = 0; d <= st.max_degree + 1; ++d) {
            std::string dd = std::to_string(d), sd = std::to_string(st.size_at_least(d));
            o << std::string(6 - std::min<std::size_t>(6, dd.size()), ' ') << dd
              << std::string(7 - std::min<std::size_t>(7, sd.size()), ' ') << sd << "  "
              << (tail_bound_holds(st.size_at_least(d), d, n) ? "yes" : "no") << '\n';
        }
    }
    o << "concentration start ceil(24 e Delta) = " << concentration_start(phi) << '\n';
    if (D) o << "concentration: holds from D = " << *D << '\n';
    else o << "concentration: no D found\n";
    std::cout << o.str();
    return D ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vwspace: VW-matchings, the cover game and proof-space certificates"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Global g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--caps", g.caps_spec, "search caps, key=value,...");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

    int gen_n = 0;
    std::string gen_delta = "6", gen_out;
    std::optional<std::uint64_t> gen_seed;
    auto* gen = app.add_subcommand("gen", "random 3-CNF in DIMACS form");
    gen->add_option("-n", gen_n, "variables")->required();
    gen->add_option("-d,--delta", gen_delta, "clause density (rational)")->capture_default_str();
    gen->add_option("-s,--seed", gen_seed, "random seed (overrides --seed)");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    std::string graph_cnf, graph_out;
    auto* graph = app.add_subcommand("graph", "adjacency graph of a CNF");
    graph->add_option("cnf", graph_cnf, "DIMACS file")->required();
    graph->add_option("-o,--out", graph_out, "output file (default stdout)");

    std::string exp_file, exp_delta = "2";
    long long exp_s = 1;
    auto* exp = app.add_subcommand("expander", "(s, delta)-expansion check");
    exp->add_option("graph", exp_file, "bigraph file")->required();
    exp->add_option("-s", exp_s, "largest subset size")->required();
    exp->add_option("--delta", exp_delta, "expansion ratio (rational)")->capture_default_str();

    std::string vw_file, vw_targets = "all", vw_bl, vw_br;
    auto* vw = app.add_subcommand("vwcover", "exact VW-cover search");
    vw->add_option("graph", vw_file, "bigraph file")->required();
    vw->add_option("--targets", vw_targets, "L vertices (comma list or 'all')")->capture_default_str();
    vw->add_option("--ban-left", vw_bl, "banned L vertices");
    vw->add_option("--ban-right", vw_br, "banned R vertices");

    std::string hall_mode, hall_eps = "1/24", hall_file, hall_out;
    int hall_max_left = 6, hall_n = 1;
    auto* hall = app.add_subcommand("hall", "Hall-type lemma tools");
    hall->add_option("mode", hall_mode, "verify | counterexample | gadget | audit")
        ->required()
        ->check(CLI::IsMember({"verify", "counterexample", "gadget", "audit"}));
    hall->add_option("--epsilon", hall_eps, "epsilon (rational)")->capture_default_str();
    hall->add_option("--max-left", hall_max_left, "largest |L| for verify")->capture_default_str();
    hall->add_option("-n", hall_n, "amplification steps for gadget")->capture_default_str();
    hall->add_option("file", hall_file, "hypergraph file for audit");
    hall->add_option("-o,--out", hall_out, "write the hypergraph here");

    GameArgs ga;
    auto* cg = app.add_subcommand("covergame", "play or verify cover games");
    cg->require_subcommand(1);
    auto* cg_play = cg->add_subcommand("play", "run Cover's strategy against an adversary");
    cg_play->add_option("graph", ga.graph, "bigraph file")->required();
    cg_play->add_option("--epsilon", ga.eps, "epsilon (rational)")->capture_default_str();
    cg_play->add_option("-D", ga.D, "degree threshold")->capture_default_str();
    cg_play->add_option("-s", ga.s, "expansion size")->required();
    cg_play->add_option("--adversary", ga.adversary, "random | greedy-degree | exhaustive")->capture_default_str();
    cg_play->add_option("--mu", ga.mu, "override the component bound");
    cg_play->add_option("--max-moves", ga.max_moves, "move limit")->capture_default_str();
    cg_play->add_option("--policy", ga.policy, "enforce | report")->capture_default_str();
    cg_play->add_option("-o,--transcript", ga.transcript, "transcript output");
    cg_play->add_flag("--interactive", ga.interactive, "read Choose moves from stdin");
    auto* cg_verify = cg->add_subcommand("verify", "re-check a transcript");
    cg_verify->add_option("graph", ga.graph, "bigraph file")->required();
    cg_verify->add_option("transcript", ga.transcript, "transcript file")->required();
    cg_verify->add_option("--mu", ga.mu, "component bound (default: transcript header)");

    CertifyArgs ca;
    auto* cert = app.add_subcommand("certify", "extract and check a k-winning certificate");
    cert->add_option("cnf", ca.cnf, "DIMACS file")->required();
    cert->add_option("-k", ca.k, "rank bound")->capture_default_str();
    cert->add_option("--epsilon", ca.eps, "epsilon (rational)")->capture_default_str();
    cert->add_option("-s", ca.s, "matching-property size")->capture_default_str();
    cert->add_option("-D", ca.D, "degree threshold (default: max degree)");
    cert->add_option("-o,--out", ca.out, "certificate output");
    cert->add_option("--check", ca.check, "check this certificate instead of extracting");

    std::string sp_cnf, sp_trace, sp_system = "res";
    long long sp_prime = 0;
    auto* space = app.add_subcommand("space", "verify a refutation trace and measure space");
    space->add_option("cnf", sp_cnf, "DIMACS file")->required();
    space->add_option("trace", sp_trace, "trace file")->required();
    space->add_option("--system", sp_system, "res | pcr")->capture_default_str();
    space->add_option("--prime", sp_prime, "PCR coefficient field (0 = rationals)")->capture_default_str();

    std::string st_cnf, st_eps = "1/24", st_c = "1";
    auto* stats = app.add_subcommand("stats", "variable degree table and concentration check");
    stats->add_option("cnf", st_cnf, "DIMACS file")->required();
    stats->add_option("--epsilon", st_eps, "epsilon (rational)")->capture_default_str();
    stats->add_option("-c", st_c, "constant c (rational)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        g.caps = parse_caps(g.caps_spec, SearchCaps{});
        g.fmt = g.format == "csv" ? Format::csv : Format::text;
        if (*gen) {
            if (gen_seed) g.seed = *gen_seed;
            return cmd_gen(g, gen_n, gen_delta, gen_out);
        }
        if (*graph) return cmd_graph(g, graph_cnf, graph_out);
        if (*exp) return cmd_expander(g, exp_file, exp_s, exp_delta);
        if (*vw) return cmd_vwcover(g, vw_file, vw_targets, vw_bl, vw_br);
        if (*hall) return cmd_hall(g, hall_mode, hall_eps, hall_max_left, hall_n, hall_file, hall_out);
        if (*cg_play) return cmd_covergame_play(g, ga);
        if (*cg_verify) return cmd_covergame_verify(g, ga);
        if (*cert) return cmd_certify(g, ca);
        if (*space) return cmd_space(g, sp_cnf, sp_trace, sp_system, sp_prime);
        if (*stats) return cmd_stats(g, st_cnf, st_eps, st_c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::inconsistency);
    }
    return 0;
}
