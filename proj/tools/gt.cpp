// gt: command-line front-end for the graph-rewriting engine.
//
// Exit codes: 0 success, 1 negative analytical answer, 2 usage or parse
// error, 3 search budget exceeded. `--json` switches every command to a
// machine-readable record stream. GT_BUDGET overrides default budgets.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gt/confluence.hpp"
#include "gt/encoding.hpp"
#include "gt/genbench.hpp"
#include "gt/grammar.hpp"
#include "gt/graph.hpp"
#include "gt/io.hpp"
#include "gt/matching.hpp"
#include "gt/rewrite.hpp"

using json = nlohmann::json;
using namespace gt;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

long long default_budget(long long fallback) {
    if (const char* env = std::getenv("GT_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (...) {
            throw CLI::ValidationError("GT_BUDGET", "not an integer: " + std::string(env));
        }
    }
    return fallback;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

GTSystem load_rules(const std::string& ruleList, const std::string& grammarFile, bool invert) {
    GTSystem t;
    if (!grammarFile.empty()) {
        t = load_grammar(grammarFile).system;
    } else {
        for (const auto& f : split_commas(ruleList)) t.rules.push_back(load_rule(f));
    }
    if (invert) t = invert_system(t);
    return t;
}

json graph_to_json(const Graph& g) {
    json nodes = json::array();
    for (Id v : g.nodeIds()) {
        json n{{"id", v}};
        if (g.node(v).label) n["label"] = *g.node(v).label;
        if (g.node(v).rooted) n["root"] = *g.node(v).rooted ? 1 : 0;
        nodes.push_back(n);
    }
    json edges = json::array();
    for (Id e : g.edgeIds())
        edges.push_back({{"id", e},
                         {"src", g.edge(e).src},
                         {"tgt", g.edge(e).tgt},
                         {"label", g.edge(e).label}});
    return json{{"nodes", nodes}, {"edges", edges}};
}

json morphism_to_json(const Morphism& m) {
    json nm = json::object(), em = json::object();
    for (const auto& [a, b] : m.nmap) nm[std::to_string(a)] = b;
    for (const auto& [a, b] : m.emap) em[std::to_string(a)] = b;
    return json{{"nodes", nm}, {"edges", em}};
}

std::string morphism_to_text(const Morphism& m) {
    std::ostringstream os;
    os << "nodes {";
    bool first = true;
    for (const auto& [a, b] : m.nmap) {
        os << (first ? "" : ", ") << a << "->" << b;
        first = false;
    }
    os << "} edges {";
    first = true;
    for (const auto& [a, b] : m.emap) {
        os << (first ? "" : ", ") << a << "->" << b;
        first = false;
    }
    os << "}";
    return os.str();
}

GarbagePredicate predicate_by_name(const std::string& name) {
    if (name == "all-graphs") return all_graphs_predicate();
    if (name == "trees") return trees_predicate();
    if (name == "acyclic") return acyclic_predicate();
    if (name == "t-cycle") return t_cycle_predicate();
    if (name == "encoded-input-tree") return encoded_input_tree_predicate();
    throw CLI::ValidationError("--predicate", "unknown predicate: " + name);
}

struct Options {
    bool jsonOut = false;
    unsigned seed = 0;
};

// ------------------------------------------------------------------ commands

int cmd_validate(const std::vector<std::string>& files, const Options& opt) {
    json records = json::array();
    for (const auto& f : files) {
        std::string kind = "graph";
        if (f.size() > 5 && f.compare(f.size() - 5, 5, ".rule") == 0) kind = "rule";
        if (f.size() > 8 && f.compare(f.size() - 8, 8, ".grammar") == 0) kind = "grammar";
        if (kind == "rule") {
            Rule r = load_rule(f);
            auto issues = validate_rule(r, false);
            if (!issues.empty()) throw ParseError(f, 0, issues.front());
        } else if (kind == "grammar") {
            load_grammar(f);
        } else {
            load_graph(f);
        }
        if (opt.jsonOut)
            records.push_back({{"file", f}, {"kind", kind}, {"ok", true}});
        else
            std::cout << f << ": ok\n";
    }
    if (opt.jsonOut) std::cout << records.dump() << "\n";
    return kOk;
}

int cmd_match(const std::string& ruleFile, const std::string& hostFile, bool fast,
              const Options& opt) {
    Rule r = load_rule(ruleFile);
    Graph host = load_graph(hostFile).graph;
    auto ms = fast ? find_matches_fast(r.lhs, host) : find_matches(r.lhs, host);
    if (opt.jsonOut) {
        json arr = json::array();
        for (const auto& m : ms) {
            json rec = morphism_to_json(m.morphism);
            rec["dangling-ok"] = satisfies_dangling(r, m, host);
            arr.push_back(rec);
        }
        std::cout << json{{"rule", r.name}, {"matches", arr}}.dump() << "\n";
    } else {
        std::cout << ms.size() << " matches\n";
        for (const auto& m : ms)
            std::cout << morphism_to_text(m.morphism)
                      << (satisfies_dangling(r, m, host) ? "" : " (dangling violated)") << "\n";
    }
    return kOk;
}

int cmd_apply(const std::string& ruleFile, const std::string& hostFile, int which,
              const Options& opt) {
    Rule r = load_rule(ruleFile);
    NamedGraph host = load_graph(hostFile);
    std::vector<Match> applicable;
    for (const auto& m : find_matches(r.lhs, host.graph))
        if (satisfies_dangling(r, m, host.graph)) applicable.push_back(m);
    if (applicable.empty() || which >= static_cast<int>(applicable.size())) {
        if (opt.jsonOut)
            std::cout << json{{"applied", false}}.dump() << "\n";
        else
            std::cout << "no applicable match\n";
        return kNegative;
    }
    DerivationStep s = apply(r, applicable[which].morphism, host.graph);
    if (opt.jsonOut)
        std::cout << json{{"applied", true},
                          {"rule", r.name},
                          {"match", morphism_to_json(s.match)},
                          {"result", graph_to_json(s.result)}}
                         .dump()
                  << "\n";
    else
        std::cout << print_graph(host.name, s.result);
    return kOk;
}

int cmd_derive(const GTSystem& t, const std::string& hostFile, long long maxSteps,
               const Options& opt) {
    NamedGraph host = load_graph(hostFile);
    auto steps = derive_greedy(t, host.graph, maxSteps, opt.seed);
    if (opt.jsonOut) {
        json arr = json::array();
        for (const auto& s : steps)
            arr.push_back({{"rule", s.ruleName}, {"result", graph_to_json(s.result)}});
        std::cout << json{{"input", graph_to_json(host.graph)}, {"steps", arr}}.dump() << "\n";
    } else {
        std::cout << print_graph(host.name, host.graph);
        int i = 0;
        for (const auto& s : steps) {
            std::cout << "=> step " << ++i << " (" << s.ruleName << ")\n"
                      << print_graph(host.name, s.result);
        }
        std::cout << steps.size() << " steps\n";
    }
    return kOk;
}

int cmd_normal_forms(const GTSystem& t, const std::string& hostFile, long long budget,
                     const Options& opt) {
    NamedGraph host = load_graph(hostFile);
    NormalFormsResult res = normal_forms(t, host.graph, budget);
    if (opt.jsonOut) {
        json arr = json::array();
        for (const auto& g : res.normalForms) arr.push_back(graph_to_json(g));
        std::cout << json{{"normal-forms", arr},
                          {"budget-exceeded", res.budgetExceeded},
                          {"derivations", res.derivationsUsed}}
                         .dump()
                  << "\n";
    } else {
        std::cout << res.normalForms.size() << " normal forms ("
                  << res.derivationsUsed << " derivations)\n";
        int i = 0;
        for (const auto& g : res.normalForms) std::cout << print_graph("nf" + std::to_string(++i), g);
    }
    return res.budgetExceeded ? kBudget : kOk;
}

int cmd_member(const std::string& grammarFile, const std::string& hostFile, long long budget,
               const Options& opt) {
    Grammar g = load_grammar(grammarFile);
    Graph host = load_graph(hostFile).graph;
    MemberVerdict v = member(g, host, budget);
    std::string text = v == MemberVerdict::Yes ? "member"
                       : v == MemberVerdict::No ? "not-a-member"
                                                : "budget-exceeded";
    if (opt.jsonOut)
        std::cout << json{{"verdict", text}}.dump() << "\n";
    else
        std::cout << text << "\n";
    return v == MemberVerdict::Yes ? kOk : v == MemberVerdict::No ? kNegative : kBudget;
}

int cmd_recognize_tree(const std::string& hostFile, const Options& opt) {
    Graph host = load_graph(hostFile).graph;
    Graph input = is_input_graph(host) ? host : make_input_graph(host);
    GreedyRunStats st;
    bool tree = recognize_tree(input, &st);
    if (opt.jsonOut)
        std::cout << json{{"tree", tree}, {"steps", st.steps}}.dump() << "\n";
    else
        std::cout << (tree ? "tree" : "not-a-tree") << "\n";
    return tree ? kOk : kNegative;
}

int cmd_critical_pairs(const GTSystem& t, const std::string& predicateName, long long budget,
                       const std::string& outDir, const Options& opt) {
    GarbagePredicate d = predicate_by_name(predicateName);
    auto pairs = critical_pairs(t);
    json arr = json::array();
    int witnesses = 0;
    bool anyBudget = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto& p = pairs[i];
        p.garbage = !d.closureMember(p.overlap);
        Verdict j = p.garbage ? Verdict::NoWithinBudget : joinable(p, t, budget);
        Verdict s = p.garbage ? Verdict::NoWithinBudget : strongly_joinable(p, t, budget);
        if (!p.garbage && (j == Verdict::NoWithinBudget || s == Verdict::NoWithinBudget))
            anyBudget = true;
        const std::string r1 = t.rules[p.ruleIndex1].name;
        const std::string r2 = t.rules[p.ruleIndex2].name;
        if (!p.garbage && j != Verdict::Yes && !outDir.empty()) {
            std::string path = outDir + "/witness-" + std::to_string(i) + ".graph";
            std::ofstream out(path);
            out << print_graph("witness" + std::to_string(i), p.overlap);
            ++witnesses;
        }
        if (opt.jsonOut) {
            arr.push_back({{"rules", {r1, r2}},
                           {"overlap", graph_to_json(p.overlap)},
                           {"garbage", p.garbage},
                           {"joinable", p.garbage ? "garbage" : to_string(j)},
                           {"strongly-joinable", p.garbage ? "garbage" : to_string(s)}});
        } else {
            std::cout << "pair " << i << ": (" << r1 << "," << r2 << ") overlap |V|="
                      << p.overlap.nodeCount() << " |E|=" << p.overlap.edgeCount();
            if (p.garbage)
                std::cout << " garbage\n";
            else
                std::cout << " joinable=" << to_string(j) << " strong=" << to_string(s) << "\n";
        }
    }
    if (opt.jsonOut)
        std::cout << json{{"pairs", arr}, {"witness-files", witnesses}}.dump() << "\n";
    else
        std::cout << pairs.size() << " critical pairs\n";
    return anyBudget ? kBudget : kOk;
}

int cmd_confluence_report(const GTSystem& t, const std::string& predicateName, long long budget,
                          const Options& opt) {
    GarbagePredicate d = predicate_by_name(predicateName);
    ConfluenceReport rep = confluence_mod_garbage_report(t, d, budget);
    if (opt.jsonOut) {
        std::cout << json{{"total-pairs", rep.totalPairs},
                          {"non-garbage-pairs", rep.nonGarbagePairs},
                          {"joinable", rep.joinablePairs},
                          {"strongly-joinable", rep.stronglyJoinablePairs},
                          {"exhaustive", rep.allSearchesExhaustive},
                          {"conclusion", rep.conclusion},
                          {"justification", rep.justification}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "critical pairs: " << rep.totalPairs << " (" << rep.nonGarbagePairs
                  << " non-garbage)\n"
                  << "joinable: " << rep.joinablePairs
                  << ", strongly joinable: " << rep.stronglyJoinablePairs << "\n"
                  << "conclusion: " << rep.conclusion << "\n";
        for (const auto& j : rep.justification) std::cout << "  - " << j << "\n";
    }
    if (!rep.allSearchesExhaustive) return kBudget;
    return rep.conclusion == "inconclusive" ? kNegative : kOk;
}

int cmd_encode(const std::string& graphFile, const std::string& ruleFile, bool rooted,
               const Options& opt) {
    if (!ruleFile.empty()) {
        Rule r = load_rule(ruleFile);
        Rule er = rooted ? encode_rooted_rule(r, default_rooted_naming()) : encode_rule(r);
        if (opt.jsonOut)
            std::cout << json{{"name", er.name},
                              {"left", graph_to_json(er.lhs)},
                              {"interface", graph_to_json(er.interface)},
                              {"right", graph_to_json(er.rhs)}}
                             .dump()
                      << "\n";
        else
            std::cout << print_rule(er);
        return kOk;
    }
    NamedGraph g = load_graph(graphFile);
    Graph e = rooted ? encode_rooted_graph(g.graph, default_rooted_naming())
                     : encode_graph(g.graph);
    if (opt.jsonOut)
        std::cout << graph_to_json(e).dump() << "\n";
    else
        std::cout << print_graph("e(" + g.name + ")", e);
    return kOk;
}

int cmd_bench(const std::string& classes, const std::string& sizesArg, int trials,
              const std::string& outFile, const Options& opt) {
    std::vector<long long> sizes;
    for (const auto& s : split_commas(sizesArg)) sizes.push_back(std::stoll(s));
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!outFile.empty()) {
        file.open(outFile);
        out = &file;
    }
    *out << bench_csv_header() << "\n";
    json summaries = json::array();
    for (const auto& cls : split_commas(classes)) {
        BenchSummary s = run_benchmark(cls, sizes, trials);
        for (const auto& r : s.records) *out << bench_csv_row(r) << "\n";
        if (opt.jsonOut)
            summaries.push_back({{"class", cls}, {"slope", s.slope}, {"r2", s.r2}});
        else
            std::cerr << cls << ": log-log slope " << s.slope << " (r2 " << s.r2 << ")\n";
    }
    if (opt.jsonOut) std::cout << summaries.dump() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rooted graph-rewriting engine"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.jsonOut, "machine-readable output");
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();

    std::string ruleFile, hostFile, grammarFile, ruleList, predicate = "all-graphs";
    std::string outDir, outFile, graphFile, classes = "list", sizesArg = "1000,2000,4000";
    std::vector<std::string> files;
    bool fast = false, invert = false, rooted = false;
    int which = 0, trials = 3, jobs = 1;
    long long maxSteps = 100000, budget = -1;

    auto* vali = app.add_subcommand("validate", "parse and validate graph/rule/grammar files");
    vali->add_option("files", files)->required();

    auto* match = app.add_subcommand("match", "enumerate injective matches of a rule's left side");
    match->add_option("--rule", ruleFile)->required();
    match->add_option("host", hostFile)->required();
    match->add_flag("--fast", fast, "root-anchored matching");

    auto* appl = app.add_subcommand("apply", "apply a rule at the n-th applicable match");
    appl->add_option("--rule", ruleFile)->required();
    appl->add_option("--index", which, "match index")->capture_default_str();
    appl->add_option("host", hostFile)->required();

    auto* der = app.add_subcommand("derive", "greedy derivation, printing every step");
    der->add_option("--rules", ruleList);
    der->add_option("--grammar", grammarFile);
    der->add_option("--max-steps", maxSteps)->capture_default_str();
    der->add_option("host", hostFile)->required();

    auto* nf = app.add_subcommand("normal-forms", "enumerate normal forms up to isomorphism");
    nf->add_option("--rules", ruleList);
    nf->add_option("--grammar", grammarFile);
    nf->add_option("--budget", budget);
    nf->add_option("host", hostFile)->required();

    auto* mem = app.add_subcommand("member", "grammar language membership");
    mem->add_option("--grammar", grammarFile)->required();
    mem->add_option("--budget", budget);
    mem->add_option("host", hostFile)->required();

    auto* rec = app.add_subcommand("recognize-tree", "linear-time rooted tree recognition");
    rec->add_option("host", hostFile)->required();

    auto* cp = app.add_subcommand("critical-pairs", "enumerate critical pairs with verdicts");
    cp->add_option("--rules", ruleList);
    cp->add_option("--grammar", grammarFile);
    cp->add_flag("--invert", invert, "invert the rules first");
    cp->add_option("--predicate", predicate, "garbage predicate")->capture_default_str();
    cp->add_option("--budget", budget);
    cp->add_option("--out-dir", outDir, "directory for non-joinable witness graphs");
    cp->add_option("--jobs", jobs, "worker pool size (reserved)");

    auto* rep = app.add_subcommand("confluence-report", "confluence-modulo-garbage analysis");
    rep->add_option("--rules", ruleList);
    rep->add_option("--grammar", grammarFile);
    rep->add_flag("--invert", invert);
    rep->add_option("--predicate", predicate)->capture_default_str();
    rep->add_option("--budget", budget);

    auto* enc = app.add_subcommand("encode", "label / rootedness encoding");
    enc->add_option("--graph", graphFile);
    enc->add_option("--rule", ruleFile);
    enc->add_flag("--rooted", rooted, "use the rooted marker-loop encoding");

    auto* ben = app.add_subcommand("bench", "recognition benchmark, CSV output");
    ben->add_option("--class", classes)->capture_default_str();
    ben->add_option("--sizes", sizesArg)->capture_default_str();
    ben->add_option("--trials", trials)->capture_default_str();
    ben->add_option("--out", outFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (budget < 0) budget = default_budget(100000);
        if (vali->parsed()) return cmd_validate(files, opt);
        if (match->parsed()) return cmd_match(ruleFile, hostFile, fast, opt);
        if (appl->parsed()) return cmd_apply(ruleFile, hostFile, which, opt);
        if (der->parsed()) {
            GTSystem t = load_rules(ruleList, grammarFile, false);
            return cmd_derive(t, hostFile, maxSteps, opt);
        }
        if (nf->parsed()) {
            GTSystem t = load_rules(ruleList, grammarFile, false);
            return cmd_normal_forms(t, hostFile, budget, opt);
        }
        if (mem->parsed()) return cmd_member(grammarFile, hostFile, budget, opt);
        if (rec->parsed()) return cmd_recognize_tree(hostFile, opt);
        if (cp->parsed()) {
            GTSystem t = load_rules(ruleList, grammarFile, invert);
            return cmd_critical_pairs(t, predicate, default_budget(200), outDir, opt);
        }
        if (rep->parsed()) {
            GTSystem t = load_rules(ruleList, grammarFile, invert);
            return cmd_confluence_report(t, predicate, default_budget(200), opt);
        }
        if (enc->parsed()) {
            if (graphFile.empty() && ruleFile.empty())
                throw CLI::ValidationError("encode", "need --graph or --rule");
            return cmd_encode(graphFile, ruleFile, rooted, opt);
        }
        if (ben->parsed()) return cmd_bench(classes, sizesArg, trials, outFile, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
