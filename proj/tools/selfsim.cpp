#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selfsim/corpus.hpp"
#include "selfsim/homology.hpp"
#include "selfsim/io.hpp"
#include "selfsim/selftest.hpp"
#include "selfsim/tables.hpp"

using namespace selfsim;
using nlohmann::json;

namespace {

// Exit codes: 0 verdict computed (even a negative one), 1 invalid input,
// 2 budget exhausted before a verdict.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kBudget = 2;

struct Output {
    bool json_mode = false;

    void emit(const json& doc, const std::string& human) const {
        if (json_mode)
            std::cout << dump_json(doc);
        else
            std::cout << human;
    }
};

void add_budget_flags(CLI::App* cmd, Budget& b) {
    cmd->add_option("--depth", b.depth, "comparison depth bound");
    cmd->add_option("--max-states", b.max_states, "state budget for closures and searches");
    cmd->add_option("--max-word-len", b.max_word_len, "restriction word length bound");
}

Word parse_dotted_word(const SelfSimilarAction& a, const std::string& text) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : text) {
        if (c == '.') {
            names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    names.push_back(cur);
    return a.word_from_token_names(names);
}

const char* eq_name(Eq v) {
    switch (v) {
        case Eq::Equal: return "equal";
        case Eq::NotEqual: return "not-equal";
        default: return "unknown";
    }
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string moore_dot(const SelfSimilarAction& a, const ClosureAutomaton& automaton,
                      const NucleusResult& nucleus) {
    const Graph& g = a.graph();
    std::vector<bool> in_nucleus(automaton.states.size(), false);
    for (int s : nucleus.states) in_nucleus[s] = true;
    std::string out = "digraph moore {\n  rankdir=LR;\n";
    for (int s : nucleus.states) {
        out += "  \"" + dot_escape(a.word_text(automaton.states[s])) + "\";\n";
    }
    for (const MooreEdge& e : nucleus.edges) {
        out += "  \"" + dot_escape(a.word_text(automaton.states[e.from])) + "\" -> \"" +
               dot_escape(a.word_text(automaton.states[e.to])) + "\" [label=\"(" +
               dot_escape(g.edge_name(e.edge)) + ", " + dot_escape(g.edge_name(e.image)) +
               ")\"];\n";
    }
    out += "}\n";
    return out;
}

std::string group_text(const std::vector<mpz_class>& torsion, long long free_rank) {
    std::string out;
    for (const mpz_class& f : torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + f.get_str();
    }
    if (free_rank == 1) out += (out.empty() ? "" : " + ") + std::string("Z");
    if (free_rank > 1)
        out += (out.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank);
    return out.empty() ? "0" : out;
}

json chain_to_json(const SelfSimilarAction& a, const Chain1& c) {
    json out = json::array();
    for (const auto& [t, k] : c) {
        out.push_back({{"coef", k},
                       {"support",
                        {{"top", path_to_string(a.graph(), t.top)},
                         {"word", word_to_json(a, t.word)},
                         {"bottom", path_to_string(a.graph(), t.bottom)}}}});
    }
    return out;
}

struct ValidateCmd {
    std::string action;
    Budget budget;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        const Graph& g = a.graph();
        json warnings = json::array();

        CircuitCheck lcheck = circuits_with_entry_check(g);
        if (!lcheck.every_circuit_has_entry)
            warnings.push_back("an entry-free circuit exists; the boundary is not a Cantor set");

        bool bundle = true;
        for (const Generator& gen : a.generators()) bundle = bundle && gen.d == gen.t;

        PseudoFreeReport pf = pseudo_free_check(a, budget);
        ClosureOutcome closure = contracting_closure(a, budget);

        json doc = {{"command", "validate"},
                    {"input", action},
                    {"vertices", g.vertex_count()},
                    {"edges", g.edge_count()},
                    {"generators", a.generators().size()},
                    {"derived_rules", derived_rules(a).size()},
                    {"condition_L", lcheck.every_circuit_has_entry},
                    {"group_bundle", bundle},
                    {"warnings", warnings}};
        switch (pf.verdict) {
            case PseudoFreeReport::Verdict::Holds: doc["pseudo_free"] = "holds"; break;
            case PseudoFreeReport::Verdict::Fails: doc["pseudo_free"] = "fails"; break;
            default: doc["pseudo_free"] = "unknown"; break;
        }
        doc["pseudo_free_states_checked"] = pf.states_checked;
        if (closure.exceeded) {
            doc["contracting"] = "unknown";
            doc["closure_note"] = closure.reason;
        } else {
            doc["contracting"] = "contracting";
            doc["closure_states"] = closure.automaton.states.size();
            doc["nucleus_size"] = nucleus_of(closure.automaton).states.size();
        }

        std::string human = "input:        " + action + "\n";
        human += "graph:        " + std::to_string(g.vertex_count()) + " vertices, " +
                 std::to_string(g.edge_count()) + " edges\n";
        human += "generators:   " + std::to_string(a.generators().size()) + " (+" +
                 std::to_string(derived_rules(a).size()) + " derived rules)\n";
        human += std::string("condition L:  ") +
                 (lcheck.every_circuit_has_entry ? "every circuit has an entry"
                                                 : "FAILS (entry-free circuit)") +
                 "\n";
        human += std::string("group bundle: ") + (bundle ? "yes" : "no") + "\n";
        human += "pseudo-free:  " + doc["pseudo_free"].get<std::string>() + " (" +
                 std::to_string(pf.states_checked) + " states checked)\n";
        if (closure.exceeded) {
            human += "contracting:  unknown, " + closure.reason + "\n";
        } else {
            human += "contracting:  yes, closure " +
                     std::to_string(closure.automaton.states.size()) + " states, nucleus " +
                     std::to_string(nucleus_of(closure.automaton).states.size()) + "\n";
        }
        for (const auto& w : warnings) human += "warning: " + w.get<std::string>() + "\n";
        out.emit(doc, human);

        bool unknown = closure.exceeded || pf.verdict == PseudoFreeReport::Verdict::Unknown;
        return unknown ? kBudget : kOk;
    }
};

struct ActCmd {
    std::string action, word, path;
    bool restrict_mode = false;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        Word w = parse_dotted_word(a, word);
        Path mu = parse_path(a.graph(), path);
        auto [image, rest] = a.act_restrict_path(w, mu);
        if (restrict_mode) {
            out.emit({{"command", "restrict"},
                      {"word", word},
                      {"path", path},
                      {"restriction", word_to_json(a, rest)}},
                     a.word_text(rest) + "\n");
        } else {
            out.emit({{"command", "act"},
                      {"word", word},
                      {"path", path},
                      {"image", path_to_string(a.graph(), image)}},
                     path_to_string(a.graph(), image) + "\n");
        }
        return kOk;
    }
};

struct TableBinCmd {
    std::string action, left, right;
    bool multiply = true;  // else eq
    Budget budget;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        GTable t1 = load_table(a, left);
        GTable t2 = load_table(a, right);
        if (multiply) {
            GTable product = compose(a, t1, t2);
            out.emit(table_to_json(a, product),
                     table_text(a, product) + "\n" + unitary_string(a, product) + "\n");
            return kOk;
        }
        TableEq eq = tables_equal(a, t1, t2, budget);
        json doc = {{"command", "table eq"}, {"verdict", eq_name(eq.verdict)}};
        std::string human = std::string(eq_name(eq.verdict)) + "\n";
        if (eq.witness) {
            doc["witness"] = path_to_string(a.graph(), *eq.witness);
            human += "witness path: " + path_to_string(a.graph(), *eq.witness) + "\n";
        }
        out.emit(doc, human);
        return eq.verdict == Eq::Unknown ? kBudget : kOk;
    }
};

struct TableUnCmd {
    std::string action, table;
    std::string mode;  // inv | split | transposition | apply
    int index = 0;
    std::string path;
    Budget budget;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        GTable t = load_table(a, table);
        if (mode == "inv") {
            GTable inv = inverse_table(a, t);
            out.emit(table_to_json(a, inv),
                     table_text(a, inv) + "\n" + unitary_string(a, inv) + "\n");
            return kOk;
        }
        if (mode == "split") {
            GTable split = split_column(a, t, index);
            out.emit(table_to_json(a, split),
                     table_text(a, split) + "\n" + unitary_string(a, split) + "\n");
            return kOk;
        }
        if (mode == "transposition") {
            Eq v = is_transposition(a, t, budget);
            out.emit({{"command", "table transposition"}, {"verdict", eq_name(v)}},
                     std::string(eq_name(v)) + "\n");
            return v == Eq::Unknown ? kBudget : kOk;
        }
        Path mu = parse_path(a.graph(), path);
        TableApply res = apply_table(a, t, mu);
        json doc = {{"command", "table apply"},
                    {"path", path_to_string(a.graph(), mu)},
                    {"mapped", res.mapped}};
        std::string human;
        if (res.mapped) {
            doc["image"] = path_to_string(a.graph(), res.image);
            doc["residual"] = word_to_json(a, res.residual);
            human = path_to_string(a.graph(), res.image) + "  residual " +
                    a.word_text(res.residual) + "\n";
        } else {
            human = "not mapped: the path ends above the bottom row\n";
        }
        out.emit(doc, human);
        return kOk;
    }
};

struct NucleusCmd {
    std::string action;
    std::string dot_file;
    bool dot_stdout = false;
    Budget budget;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        ClosureOutcome closure = contracting_closure(a, budget);
        if (closure.exceeded) {
            out.emit({{"command", "nucleus"}, {"status", "exceeded"}, {"note", closure.reason}},
                     "budget exceeded: " + closure.reason + "\n");
            return kBudget;
        }
        NucleusResult nucleus = nucleus_of(closure.automaton);
        std::string dot = moore_dot(a, closure.automaton, nucleus);
        if (dot_stdout) {
            std::cout << dot;
            return kOk;
        }
        json states = json::array();
        for (int s : nucleus.states) states.push_back(a.word_text(closure.automaton.states[s]));
        json doc = {{"command", "nucleus"},
                    {"status", "contracting"},
                    {"states", states},
                    {"moore_edges", nucleus.edges.size()}};
        std::string human = "nucleus: " + std::to_string(nucleus.states.size()) + " states, " +
                            std::to_string(nucleus.edges.size()) + " labelled edges\n";
        for (const auto& s : states) human += "  " + s.get<std::string>() + "\n";
        if (!dot_file.empty()) {
            std::ofstream f(dot_file);
            if (!f) throw Error("cannot write \"" + dot_file + "\"");
            f << dot;
            doc["dot"] = dot_file;
            human += "wrote " + dot_file + "\n";
        }
        out.emit(doc, human);
        return kOk;
    }
};

struct H0Cmd {
    std::string action;
    int level = 2;
    bool kernel = false;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        json doc = {{"command", "homology h0"}, {"kernel", kernel}, {"level", level}};
        std::string human;
        if (kernel) {
            json levels = json::array();
            for (int n = 1; n <= level; ++n) {
                H0Presentation p = h0_truncated(a, n, true);
                json jt = json::array();
                for (const mpz_class& f : p.invariant_factors) jt.push_back(f.get_str());
                json classes = json::array();
                for (const auto& members : p.classes) {
                    json c = json::array();
                    for (VertexId v : members) c.push_back(a.graph().vertex_name(v));
                    classes.push_back(c);
                }
                json colimit = json::array();
                for (const auto& row : p.colimit) {
                    json r = json::array();
                    for (const mpz_class& x : row) r.push_back(x.get_str());
                    colimit.push_back(r);
                }
                levels.push_back({{"level", n},
                                  {"classes", classes},
                                  {"free_rank", p.free_rank},
                                  {"invariant_factors", jt},
                                  {"group", group_text(p.invariant_factors, p.free_rank)},
                                  {"colimit", colimit},
                                  {"colimit_well_defined", p.colimit_well_defined},
                                  {"stabilized", p.stabilized}});
                human += "level " + std::to_string(n) + ": " +
                         group_text(p.invariant_factors, p.free_rank) + " on " +
                         std::to_string(p.classes.size()) + " orbit class(es)";
                if (p.colimit.size() == 1 && p.colimit[0].size() == 1)
                    human += ", colimit multiplier " + p.colimit[0][0].get_str();
                human += "\n";
            }
            doc["levels"] = levels;
        } else {
            H0Presentation p = h0_truncated(a, level, false);
            json jt = json::array();
            for (const mpz_class& f : p.invariant_factors) jt.push_back(f.get_str());
            doc["generators"] = p.generators.size();
            doc["invariant_factors"] = jt;
            doc["free_rank"] = p.free_rank;
            doc["group"] = group_text(p.invariant_factors, p.free_rank);
            doc["stabilized"] = p.stabilized;
            human = "level " + std::to_string(level) + ": " +
                    group_text(p.invariant_factors, p.free_rank) + " (" +
                    std::to_string(p.generators.size()) + " generators, " +
                    (p.stabilized ? "stabilized" : "not stabilized") + ")\n";
        }
        out.emit(doc, human);
        return kOk;
    }
};

struct IdentitiesCmd {
    std::string action;
    int samples = 5;
    uint64_t seed = 1;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        H1WitnessReport rep = h1_identity_witnesses(a, samples, seed);
        json items = json::array();
        std::string human;
        for (const auto& item : rep.items) {
            items.push_back(
                {{"kind", item.kind}, {"detail", item.detail}, {"verified", item.verified}});
            human += std::string(item.verified ? "ok   " : "FAIL ") + item.kind + ": " +
                     item.detail + "\n";
        }
        human += rep.all_verified ? "all witnessed\n" : "NOT all witnessed\n";
        out.emit({{"command", "homology identities"},
                  {"samples", samples},
                  {"seed", seed},
                  {"witnesses", items},
                  {"all_verified", rep.all_verified}},
                 human);
        return kOk;
    }
};

struct IndexCmd {
    std::string action, table;
    int level = 1;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        GTable t = load_table(a, table);
        IndexClass idx = index_class(a, t, level);
        out.emit({{"command", "homology index"},
                  {"level", idx.level},
                  {"chain", chain_to_json(a, idx.chain)},
                  {"cycle", idx.cycle}},
                 "chain: " + chain_text(a, idx.chain) + "\ncycle: " +
                     (idx.cycle ? "yes" : "no") + "\n");
        return kOk;
    }
};

struct DynamicsCmd {
    std::string action;
    int depth = 5;
    Budget budget;
    Output out;

    int run() const {
        SelfSimilarAction a = load_action(action);
        MinimalityReport min = minimality_report(a);
        EffectivenessReport eff = effectiveness_report(a, budget);
        std::vector<LevelTransitivity> levels = level_transitive(a, depth);

        json jl = json::array();
        std::string human;
        human += std::string("minimal (G-transitive): ") + (min.minimal ? "yes" : "no") +
                 " (" + std::to_string(min.classes) + " class(es))\n";
        for (const auto& l : levels) {
            jl.push_back({{"level", l.level},
                          {"orbits", l.orbit_count},
                          {"transitive", l.transitive}});
            human += "level " + std::to_string(l.level) + ": " +
                     std::to_string(l.orbit_count) + " orbit(s)" +
                     (l.transitive ? ", transitive" : "") + "\n";
        }
        json doc = {{"command", "dynamics"},
                    {"minimal", min.minimal},
                    {"vertex_classes", min.classes},
                    {"level_transitivity", jl}};
        switch (eff.verdict) {
            case EffectivenessReport::Verdict::Effective: doc["effective"] = "effective"; break;
            case EffectivenessReport::Verdict::NotEffective:
                doc["effective"] = "not-effective";
                break;
            default: doc["effective"] = "unknown"; break;
        }
        if (eff.entryless_circuit)
            doc["entryless_circuit"] = path_to_string(a.graph(), *eff.entryless_circuit);
        human += "effective: " + doc["effective"].get<std::string>();
        if (!eff.note.empty()) human += " (" + eff.note + ")";
        human += "\n";
        out.emit(doc, human);
        return eff.verdict == EffectivenessReport::Verdict::Unknown ? kBudget : kOk;
    }
};

struct SelftestCmd {
    uint64_t seed = 1;
    Budget budget;
    Output out;

    int run() const {
        json report = selftest_report(seed, budget);
        std::string human;
        for (const auto& check : report.at("checks")) {
            human += std::string(check.at("passed").get<bool>() ? "ok   " : "FAIL ") +
                     check.at("action").get<std::string>() + "/" +
                     check.at("name").get<std::string>() + ": " +
                     check.at("detail").get<std::string>() + "\n";
        }
        bool passed = selftest_passed(report);
        human += passed ? "selftest passed\n" : "selftest FAILED\n";
        out.emit(report, human);
        return passed ? kOk : kInvalid;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calculator for self-similar groupoid actions on finite graphs"};
    app.require_subcommand(1);

    ValidateCmd validate;
    auto* cv = app.add_subcommand("validate", "check a document and report structure");
    cv->add_option("action", validate.action, "action file or builtin:<name>")->required();
    cv->add_flag("--json", validate.out.json_mode, "machine-readable output");
    add_budget_flags(cv, validate.budget);

    ActCmd act;
    auto* ca = app.add_subcommand("act", "apply a word to a path");
    ca->add_option("action", act.action, "action file or builtin:<name>")->required();
    ca->add_option("word", act.word, "dotted word, outermost first")->required();
    ca->add_option("path", act.path, "dotted path or vertex")->required();
    ca->add_flag("--json", act.out.json_mode, "machine-readable output");

    ActCmd restrict_cmd;
    restrict_cmd.restrict_mode = true;
    auto* cr = app.add_subcommand("restrict", "restriction of a word below a path");
    cr->add_option("action", restrict_cmd.action, "action file or builtin:<name>")->required();
    cr->add_option("word", restrict_cmd.word, "dotted word, outermost first")->required();
    cr->add_option("path", restrict_cmd.path, "dotted path or vertex")->required();
    cr->add_flag("--json", restrict_cmd.out.json_mode, "machine-readable output");

    auto* ct = app.add_subcommand("table", "table calculator");
    ct->require_subcommand(1);

    TableBinCmd mul;
    auto* cm = ct->add_subcommand("mul", "compose two tables (left after right)");
    cm->add_option("action", mul.action, "action file or builtin:<name>")->required();
    cm->add_option("left", mul.left, "outer table file")->required();
    cm->add_option("right", mul.right, "inner table file")->required();
    cm->add_flag("--json", mul.out.json_mode, "print the product as a table document");

    TableBinCmd eq;
    eq.multiply = false;
    auto* ce = ct->add_subcommand("eq", "compare two tables as boundary maps");
    ce->add_option("action", eq.action, "action file or builtin:<name>")->required();
    ce->add_option("left", eq.left, "table file")->required();
    ce->add_option("right", eq.right, "table file")->required();
    ce->add_flag("--json", eq.out.json_mode, "machine-readable output");
    add_budget_flags(ce, eq.budget);

    TableUnCmd inv;
    inv.mode = "inv";
    auto* ci = ct->add_subcommand("inv", "inverse table");
    ci->add_option("action", inv.action, "action file or builtin:<name>")->required();
    ci->add_option("table", inv.table, "table file")->required();
    ci->add_flag("--json", inv.out.json_mode, "print the inverse as a table document");

    TableUnCmd split;
    split.mode = "split";
    auto* cs = ct->add_subcommand("split", "split one column into its children");
    cs->add_option("action", split.action, "action file or builtin:<name>")->required();
    cs->add_option("table", split.table, "table file")->required();
    cs->add_option("index", split.index, "column index (by sorted bottom)")->required();
    cs->add_flag("--json", split.out.json_mode, "print the split as a table document");

    TableUnCmd transposition;
    transposition.mode = "transposition";
    auto* cx = ct->add_subcommand("transposition", "does the table square to the identity?");
    cx->add_option("action", transposition.action, "action file or builtin:<name>")->required();
    cx->add_option("table", transposition.table, "table file")->required();
    cx->add_flag("--json", transposition.out.json_mode, "machine-readable output");
    add_budget_flags(cx, transposition.budget);

    TableUnCmd apply;
    apply.mode = "apply";
    auto* cp = ct->add_subcommand("apply", "image of a path under the table");
    cp->add_option("action", apply.action, "action file or builtin:<name>")->required();
    cp->add_option("table", apply.table, "table file")->required();
    cp->add_option("path", apply.path, "dotted path or vertex")->required();
    cp->add_flag("--json", apply.out.json_mode, "machine-readable output");

    NucleusCmd nucleus;
    auto* cn = app.add_subcommand("nucleus", "restriction closure and nucleus");
    cn->add_option("action", nucleus.action, "action file or builtin:<name>")->required();
    cn->add_option("--dot", nucleus.dot_file, "write the Moore diagram to this DOT file");
    cn->add_flag("--json", nucleus.out.json_mode, "machine-readable output");
    add_budget_flags(cn, nucleus.budget);

    NucleusCmd moore;
    moore.dot_stdout = true;
    auto* cd = app.add_subcommand("moore-dot", "print the nucleus Moore diagram as DOT");
    cd->add_option("action", moore.action, "action file or builtin:<name>")->required();
    add_budget_flags(cd, moore.budget);

    auto* ch = app.add_subcommand("homology", "truncated homology reports");
    ch->require_subcommand(1);

    H0Cmd h0;
    auto* ch0 = ch->add_subcommand("h0", "presentation of the level-n truncation");
    ch0->add_option("action", h0.action, "action file or builtin:<name>")->required();
    ch0->add_option("--level", h0.level, "truncation level")->required();
    ch0->add_flag("--kernel", h0.kernel, "restrict to the cocycle kernel layers");
    ch0->add_flag("--json", h0.out.json_mode, "machine-readable output");

    IdentitiesCmd identities;
    auto* chi = ch->add_subcommand("identities", "verify boundary identities by witness");
    chi->add_option("action", identities.action, "action file or builtin:<name>")->required();
    chi->add_option("--samples", identities.samples, "sampled elements per identity");
    chi->add_option("--seed", identities.seed, "sampler seed");
    chi->add_flag("--json", identities.out.json_mode, "machine-readable output");

    IndexCmd index;
    auto* cidx = ch->add_subcommand("index", "indicator chain of a table with certificates");
    cidx->add_option("action", index.action, "action file or builtin:<name>")->required();
    cidx->add_option("table", index.table, "table file")->required();
    cidx->add_option("--level", index.level, "bottom row level")->required();
    cidx->add_flag("--json", index.out.json_mode, "machine-readable output");

    DynamicsCmd dynamics;
    auto* cy = app.add_subcommand("dynamics", "transitivity, minimality, effectiveness");
    cy->add_option("action", dynamics.action, "action file or builtin:<name>")->required();
    cy->add_option("--level", dynamics.depth, "check level transitivity up to this depth");
    cy->add_flag("--json", dynamics.out.json_mode, "machine-readable output");
    add_budget_flags(cy, dynamics.budget);

    SelftestCmd selftest;
    auto* cst = app.add_subcommand("selftest", "seeded deterministic self-checks");
    cst->add_option("--seed", selftest.seed, "sampler seed");
    cst->add_flag("--json", selftest.out.json_mode, "machine-readable output");
    add_budget_flags(cst, selftest.budget);

    int rc = kOk;
    cv->callback([&] { rc = validate.run(); });
    ca->callback([&] { rc = act.run(); });
    cr->callback([&] { rc = restrict_cmd.run(); });
    cm->callback([&] { rc = mul.run(); });
    ce->callback([&] { rc = eq.run(); });
    ci->callback([&] { rc = inv.run(); });
    cs->callback([&] { rc = split.run(); });
    cx->callback([&] { rc = transposition.run(); });
    cp->callback([&] { rc = apply.run(); });
    cn->callback([&] { rc = nucleus.run(); });
    cd->callback([&] { rc = moore.run(); });
    ch0->callback([&] { rc = h0.run(); });
    chi->callback([&] { rc = identities.run(); });
    cidx->callback([&] { rc = index.run(); });
    cy->callback([&] { rc = dynamics.run(); });
    cst->callback([&] { rc = selftest.run(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return rc;
}
