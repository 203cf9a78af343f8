#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchings/acceptance.hpp"
#include "matchings/blossoms.hpp"
#include "matchings/exact_count.hpp"
#include "matchings/experiments.hpp"
#include "matchings/gadgets.hpp"
#include "matchings/graph.hpp"
#include "matchings/io.hpp"
#include "matchings/mcmc.hpp"
#include "matchings/recursive.hpp"
#include "matchings/structure.hpp"

namespace {

using json = nlohmann::json;
using namespace matchings;

struct GlobalOpts {
    std::string input;   // empty = stdin
    std::string output;  // empty = stdout
    std::string format = "csv";
    std::uint64_t seed = 1;
    bool seed_given = false;

    bool records() const { return format == "records"; }
};

Graph load_graph(const GlobalOpts& o) {
    if (!o.input.empty()) return read_graph_file(o.input);
    return read_graph(std::cin);
}

Digraph load_digraph(const GlobalOpts& o) {
    if (!o.input.empty()) return read_digraph_file(o.input);
    return read_digraph(std::cin);
}

// stdout unless --output names a file
class Output {
public:
    explicit Output(const GlobalOpts& o) {
        if (!o.output.empty()) {
            file_.open(o.output);
            if (!file_) throw std::runtime_error("cannot open output file: " + o.output);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string q_str(const Rational& q) { return q.get_str(); }

// labels where present, ids otherwise
std::string vertex_name(const Graph& g, VertexId v) {
    const std::string& l = g.label(v);
    return l.empty() ? std::to_string(v) : l;
}

json report_to_json(const CutReport& r) {
    json j;
    j["description"] = r.description;
    j["states_in_S"] = r.states_in_S.get_str();
    j["states_total"] = r.states_total.get_str();
    j["pi_S"] = q_str(r.pi_S);
    j["pi_comp"] = q_str(r.pi_comp);
    j["phi"] = q_str(r.phi);
    j["phi_approx"] = r.phi.get_d();
    if (r.mixing_lower) j["mixing_lower"] = q_str(*r.mixing_lower);
    j["bound_applies"] = r.bound_applies;
    return j;
}

void print_cut_report(std::ostream& out, const CutReport& r, bool records) {
    if (records) {
        out << report_to_json(r).dump() << "\n";
        return;
    }
    out << "description,states_in_S,states_total,pi_S,pi_comp,phi,phi_approx,"
           "mixing_lower,bound_applies\n";
    out << r.description << "," << r.states_in_S.get_str() << ","
        << r.states_total.get_str() << "," << q_str(r.pi_S) << ","
        << q_str(r.pi_comp) << "," << q_str(r.phi) << "," << r.phi.get_d() << ","
        << (r.mixing_lower ? q_str(*r.mixing_lower) : std::string()) << ","
        << (r.bound_applies ? 1 : 0) << "\n";
}

HoleWeightFn make_weights(const std::string& choice, const Graph& g) {
    if (choice == "broder") return HoleWeightFn::broder();
    if (choice == "jsv") return HoleWeightFn::jsv(hole_pattern_table(g));
    std::ifstream in(choice);
    if (!in) throw std::runtime_error("cannot open weight file: " + choice);
    return HoleWeightFn::from_file(in, g);
}

// cut entries: "perfect" or "u,v" (labels or ids)
std::set<HolePattern> parse_cut(const std::vector<std::string>& items, const Graph& g) {
    std::set<HolePattern> cut;
    for (const std::string& item : items) {
        if (item == "perfect") {
            cut.insert(HolePattern::perfect());
            continue;
        }
        auto comma = item.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("cut entry must be 'perfect' or 'u,v': " + item);
        VertexId u = g.resolve(item.substr(0, comma));
        VertexId v = g.resolve(item.substr(comma + 1));
        cut.insert(HolePattern::near(u, v));
    }
    if (cut.empty()) throw std::runtime_error("no cut patterns given");
    return cut;
}

PivotStrategy make_pivot(const std::string& choice) {
    if (choice == "first") return PivotStrategy::first();
    if (choice == "balanced") return PivotStrategy::balanced();
    if (choice.rfind("named:", 0) == 0) {
        std::ifstream in(choice.substr(6));
        if (!in) throw std::runtime_error("cannot open pivot label file: " + choice.substr(6));
        std::vector<std::string> labels;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] != '#') labels.push_back(line);
        }
        return PivotStrategy::named_first(labels);
    }
    throw std::runtime_error("pivot must be first, balanced, or named:FILE");
}

int cmd_gadget(const GlobalOpts& g, const std::string& family, int k, int s, int t,
               int ell, bool second_hole, const std::string& matching_out) {
    Output out(g);
    if (family == "boxes" || family == "torpid" || family == "counterexample") {
        GadgetGraph gg = family == "boxes"          ? chain_of_boxes(k)
                         : family == "torpid"       ? torpid_gadget(k)
                                                    : counterexample_graph(k);
        write_graph(out.stream(), gg.graph);
        return 0;
    }
    if (family == "reduction") {
        Digraph d = load_digraph(g);
        auto red = blossom_reduction(d, s, t, ell, second_hole);
        write_graph(out.stream(), red.graph);
        if (!matching_out.empty()) {
            std::ofstream m(matching_out);
            if (!m) throw std::runtime_error("cannot open matching file: " + matching_out);
            for (auto [a, b] : red.matching.pairs()) m << a << " " << b << "\n";
        }
        return 0;
    }
    throw std::runtime_error("gadget family must be boxes, torpid, counterexample, "
                             "or reduction");
}

int cmd_count(const GlobalOpts& g, const std::string& mode, double eps,
              const std::string& pivot, const std::string& backend, int kmax) {
    Graph graph = load_graph(g);
    Output out(g);
    auto emit = [&](const Rational& value, std::optional<double> got_eps,
                    const RecursionStats* stats) {
        if (g.records()) {
            json j;
            j["value"] = q_str(value);
            j["mode"] = mode;
            if (got_eps) j["eps"] = *got_eps;
            if (stats) {
                j["calls"] = stats->calls;
                j["max_depth"] = stats->max_depth;
                j["largest_permanent"] = stats->largest_permanent;
            }
            out.stream() << j.dump() << "\n";
        } else {
            out.stream() << "value," << q_str(value) << "\nmode," << mode << "\n";
            if (got_eps) out.stream() << "eps," << *got_eps << "\n";
            if (stats)
                out.stream() << "calls," << stats->calls << "\nmax_depth,"
                             << stats->max_depth << "\nlargest_permanent,"
                             << stats->largest_permanent << "\n";
        }
    };

    if (mode == "brute") {
        emit(Rational(count_perfect(graph)), std::nullopt, nullptr);
        return 0;
    }
    if (mode == "ryser") {
        auto a = bipartite_adjacency(graph);
        if (!a)
            throw std::runtime_error("ryser mode needs a bipartite graph with "
                                     "equal sides");
        emit(ryser_permanent(*a), std::nullopt, nullptr);
        return 0;
    }
    PermanentBackend be = backend == "ryser" ? PermanentBackend::Ryser
                                             : PermanentBackend::Enumeration;
    if (mode == "recursive") {
        RecursionOptions opt;
        opt.pivot = make_pivot(pivot);
        opt.backend = be;
        RecursionStats stats;
        opt.stats = &stats;
        auto est = recursive_count(graph, eps, opt);
        emit(est.value, est.eps, &stats);
        return 0;
    }
    if (mode == "fpt") {
        auto est = fpt_count(graph, eps, kmax, be);
        emit(est.value, est.eps, nullptr);
        return 0;
    }
    throw std::runtime_error("count mode must be brute, ryser, recursive, or fpt");
}

int cmd_holes_table(const GlobalOpts& g) {
    Graph graph = load_graph(g);
    Output out(g);
    auto table = hole_pattern_table(graph);
    if (g.records()) {
        for (const auto& [uv, count] : table.near) {
            json j;
            j["u"] = uv.first;
            j["v"] = uv.second;
            j["count"] = count.get_str();
            out.stream() << j.dump() << "\n";
        }
        json j;
        j["pattern"] = "perfect";
        j["count"] = table.perfect.get_str();
        out.stream() << j.dump() << "\n";
    } else {
        for (const auto& [uv, count] : table.near)
            out.stream() << uv.first << "," << uv.second << "," << count.get_str()
                         << "\n";
        out.stream() << "perfect," << table.perfect.get_str() << "\n";
    }
    return 0;
}

int cmd_decompose(const GlobalOpts& g) {
    Graph graph = load_graph(g);
    Output out(g);
    auto ge = gallai_edmonds(graph);
    auto names = [&](const std::vector<VertexId>& vs) {
        std::string s;
        for (std::size_t i = 0; i < vs.size(); ++i)
            s += (i ? " " : "") + vertex_name(graph, vs[i]);
        return s;
    };
    std::vector<int> orders;
    for (const auto& comp : ge.D_components)
        orders.push_back(fc_order(graph.induced(comp)));
    if (g.records()) {
        json j;
        j["D"] = names(ge.D);
        j["A"] = names(ge.A);
        j["C"] = names(ge.C);
        out.stream() << j.dump() << "\n";
        for (std::size_t i = 0; i < ge.D_components.size(); ++i) {
            json c;
            c["component"] = i;
            c["vertices"] = names(ge.D_components[i]);
            c["order"] = orders[i];
            out.stream() << c.dump() << "\n";
        }
    } else {
        out.stream() << "D," << names(ge.D) << "\n";
        out.stream() << "A," << names(ge.A) << "\n";
        out.stream() << "C," << names(ge.C) << "\n";
        for (std::size_t i = 0; i < ge.D_components.size(); ++i)
            out.stream() << "component," << i << "," << orders[i] << ","
                         << names(ge.D_components[i]) << "\n";
    }
    return 0;
}

int cmd_fc_order(const GlobalOpts& g) {
    Graph graph = load_graph(g);
    Output out(g);
    int k = fc_order(graph);
    if (g.records()) {
        json j;
        j["order"] = k;
        out.stream() << j.dump() << "\n";
    } else {
        out.stream() << "order," << k << "\n";
    }
    return 0;
}

int cmd_blossoms(const GlobalOpts& g, const std::string& hole,
                 const std::string& matching_file, bool min_only, std::size_t cap) {
    Graph graph = load_graph(g);
    Output out(g);
    Matching m;
    if (!matching_file.empty()) {
        std::ifstream in(matching_file);
        if (!in) throw std::runtime_error("cannot open matching file: " + matching_file);
        m = read_matching(in, graph);
    }
    VertexId w = graph.resolve(hole);
    auto emit = [&](const Blossom& b) {
        if (g.records()) {
            json j;
            j["length"] = b.length();
            j["cycle"] = b.cycle;
            out.stream() << j.dump() << "\n";
        } else {
            out.stream() << b.length() << ",";
            for (std::size_t i = 0; i < b.cycle.size(); ++i)
                out.stream() << (i ? " " : "") << b.cycle[i];
            out.stream() << "\n";
        }
    };
    if (min_only) {
        auto b = minimum_blossom(graph, m, w);
        if (b) emit(*b);
        return 0;
    }
    auto list = enumerate_blossoms(graph, m, w, cap);
    for (const auto& b : list.blossoms) emit(b);
    if (list.truncated) std::cerr << "note: enumeration truncated at cap " << cap << "\n";
    return 0;
}

int cmd_chain_analyze(const GlobalOpts& g, const std::string& weights,
                      const std::vector<std::string>& cut_items) {
    Graph graph = load_graph(g);
    Output out(g);
    auto w = make_weights(weights, graph);
    auto cut = parse_cut(cut_items, graph);
    std::string description = "patterns:";
    for (const auto& p : cut) description += " " + to_string(p);
    auto rep = conductance_streaming(
        graph, w,
        [&](const Matching&, const HolePattern& p) { return cut.count(p) > 0; },
        description);
    print_cut_report(out.stream(), rep, g.records());
    return 0;
}

int cmd_chain_run(const GlobalOpts& g, long steps, int checkpoints,
                  const std::string& weights) {
    Graph graph = load_graph(g);
    Output out(g);
    auto w = make_weights(weights, graph);
    Matching start = maximum_matching(graph);
    SimulateOptions opt;
    opt.steps = steps;
    opt.seed = g.seed;
    opt.checkpoints = checkpoints;
    std::unique_ptr<ChainModel> reference;
    if (checkpoints > 0)
        reference = std::make_unique<ChainModel>(build_chain_model(graph, w));
    auto traj = simulate(graph, w, start, opt, reference.get());
    if (g.records()) {
        for (const auto& [pattern, visits] : traj.pattern_occupancy) {
            json j;
            j["pattern"] = pattern;
            j["visits"] = visits;
            out.stream() << j.dump() << "\n";
        }
        json j;
        j["perfect_visits"] = traj.perfect_visits;
        j["states_recorded"] = traj.states_recorded;
        out.stream() << j.dump() << "\n";
        for (auto [step, tv] : traj.tv_checkpoints) {
            json cj;
            cj["step"] = step;
            cj["tv"] = tv;
            out.stream() << cj.dump() << "\n";
        }
    } else {
        for (const auto& [pattern, visits] : traj.pattern_occupancy)
            out.stream() << pattern << "," << visits << "\n";
        out.stream() << "perfect_visits," << traj.perfect_visits << "\n";
        out.stream() << "states_recorded," << traj.states_recorded << "\n";
        for (auto [step, tv] : traj.tv_checkpoints)
            out.stream() << "checkpoint," << step << "," << tv << "\n";
    }
    return 0;
}

int cmd_experiment_torpid(const GlobalOpts& g, const std::string& variant, int k_lo,
                          int k_hi, std::size_t cap) {
    Output out(g);
    TorpidVariant v;
    if (variant == "gadget")
        v = TorpidVariant::TorpidGadget;
    else if (variant == "counterexample")
        v = TorpidVariant::Counterexample;
    else if (variant == "broder-decay")
        v = TorpidVariant::BroderDecay;
    else
        throw std::runtime_error("variant must be gadget, counterexample, or "
                                 "broder-decay");
    auto rows = run_torpid_experiment(v, k_lo, k_hi, cap);
    if (g.records()) {
        for (const auto& r : rows) {
            json j;
            j["k"] = r.k;
            if (r.skipped) {
                j["skipped"] = true;
                j["note"] = r.note;
            } else {
                j["omega"] = r.omega.get_str();
                j["pi_S"] = q_str(r.pi_S);
                j["phi"] = q_str(r.phi);
                j["phi_approx"] = r.phi.get_d();
                if (r.mixing_lower) j["mixing_lower"] = q_str(*r.mixing_lower);
                if (!r.note.empty()) j["note"] = r.note;
            }
            out.stream() << j.dump() << "\n";
        }
    } else {
        out.stream() << torpid_csv(rows);
    }
    return 0;
}

int cmd_accept(const GlobalOpts& g, const std::string& suite) {
    Output out(g);
    auto results = run_acceptance(suite);
    int failures = 0;
    for (const auto& r : results) {
        if (g.records()) {
            json j;
            j["criterion"] = r.name;
            j["passed"] = r.passed;
            j["details"] = r.details;
            out.stream() << j.dump() << "\n";
        } else {
            for (const auto& d : r.details) out.stream() << "  " << d << "\n";
            out.stream() << r.name << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
        }
        if (!r.passed) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfect/near-perfect matching counts, structure, chains, gadgets"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--input", g.input, "input graph/digraph file (default: stdin)");
    app.add_option("--output", g.output, "output file (default: stdout)");
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for stochastic runs");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "records"}));

    auto* gadget = app.add_subcommand("gadget", "emit a generator graph");
    std::string family;
    int k = 1, s = 0, t = 1, ell = 0;
    bool second_hole = false;
    std::string matching_out;
    gadget->add_option("family", family, "boxes|torpid|counterexample|reduction")
        ->required();
    gadget->add_option("--k", k, "gadget size");
    gadget->add_option("--s", s, "reduction: source vertex");
    gadget->add_option("--t", t, "reduction: target vertex");
    gadget->add_option("--ell", ell, "reduction: amplification level");
    gadget->add_flag("--second-hole", second_hole, "reduction: add an isolated hole");
    gadget->add_option("--matching-out", matching_out,
                       "reduction: write the planted matching here");

    auto* count = app.add_subcommand("count", "count perfect matchings");
    std::string mode = "brute", pivot = "first", backend = "enum";
    double eps = 0.1;
    int kmax = 3;
    count->add_option("--mode", mode, "brute|ryser|recursive|fpt");
    count->add_option("--eps", eps, "accuracy for approximate modes");
    count->add_option("--pivot", pivot, "first|balanced|named:FILE");
    count->add_option("--backend", backend, "enum|ryser")
        ->check(CLI::IsMember({"enum", "ryser"}));
    count->add_option("--kmax", kmax, "ear bound for fpt mode");

    auto* holes = app.add_subcommand("holes-table", "hole pattern counts");
    auto* decompose = app.add_subcommand("decompose", "canonical D/A/C partition");
    auto* fcorder = app.add_subcommand("fc-order", "ear count of a factor-critical graph");

    auto* blossoms = app.add_subcommand("blossoms", "odd alternating cycles through a hole");
    std::string hole, matching_file;
    bool min_only = false;
    std::size_t cap = 1'000'000;
    blossoms->add_option("--hole", hole, "hole vertex (label or id)")->required();
    blossoms->add_option("--matching", matching_file, "matching file (pairs per line)");
    blossoms->add_flag("--min", min_only, "only the minimum blossom");
    blossoms->add_option("--cap", cap, "enumeration cap");

    auto* chain = app.add_subcommand("chain", "edge-shift chain analysis");
    chain->require_subcommand(1);
    auto* analyze = chain->add_subcommand("analyze", "exact conductance of a pattern cut");
    std::string weights = "jsv";
    std::vector<std::string> cut_items;
    analyze->add_option("--weights", weights, "broder|jsv|FILE");
    analyze->add_option("--cut", cut_items, "patterns: 'perfect' and/or 'u,v'")
        ->required();
    auto* run = chain->add_subcommand("run", "simulate a trajectory");
    long steps = 0;
    int checkpoints = 0;
    std::string run_weights = "jsv";
    run->add_option("--steps", steps, "number of steps")->required();
    run->add_option("--checkpoints", checkpoints,
                    "distribution checkpoints (builds the exact model)");
    run->add_option("--weights", run_weights, "broder|jsv|FILE");

    auto* experiment = app.add_subcommand("experiment", "reproduction tables");
    experiment->require_subcommand(1);
    auto* torpid = experiment->add_subcommand("torpid", "conductance decay table");
    std::string variant = "gadget";
    int k_lo = 1, k_hi = 3;
    std::size_t state_cap = 5'000'000;
    torpid->add_option("--variant", variant, "gadget|counterexample|broder-decay");
    torpid->add_option("--k-lo", k_lo, "first k");
    torpid->add_option("--k-hi", k_hi, "last k");
    torpid->add_option("--cap", state_cap, "state cap per row");

    auto* accept = app.add_subcommand("accept", "run acceptance criteria");
    std::string suite = "all";
    accept->add_option("suite", suite, "criterion name or 'all'");

    CLI11_PARSE(app, argc, argv);
    g.seed_given = seed_opt->count() > 0;

    try {
        if (gadget->parsed())
            return cmd_gadget(g, family, k, s, t, ell, second_hole, matching_out);
        if (count->parsed()) return cmd_count(g, mode, eps, pivot, backend, kmax);
        if (holes->parsed()) return cmd_holes_table(g);
        if (decompose->parsed()) return cmd_decompose(g);
        if (fcorder->parsed()) return cmd_fc_order(g);
        if (blossoms->parsed())
            return cmd_blossoms(g, hole, matching_file, min_only, cap);
        if (chain->parsed()) {
            if (analyze->parsed()) return cmd_chain_analyze(g, weights, cut_items);
            if (run->parsed()) {
                if (!g.seed_given)
                    throw std::runtime_error("chain run needs an explicit --seed");
                return cmd_chain_run(g, steps, checkpoints, run_weights);
            }
        }
        if (experiment->parsed() && torpid->parsed())
            return cmd_experiment_torpid(g, variant, k_lo, k_hi, state_cap);
        if (accept->parsed()) return cmd_accept(g, suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
