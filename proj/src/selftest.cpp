#include "selfsim/selftest.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "selfsim/corpus.hpp"
#include "selfsim/homology.hpp"
#include "selfsim/io.hpp"
#include "selfsim/semigroup.hpp"
#include "selfsim/tables.hpp"

namespace selfsim {

namespace {

using nlohmann::json;

struct Sampler {
    std::mt19937_64 eng;
    explicit Sampler(uint64_t seed) : eng(seed) {}
    int pick(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
};

Word sample_word(const SelfSimilarAction& a, Sampler& s, int len,
                 std::optional<VertexId> d_at = std::nullopt) {
    VertexId cur = d_at ? *d_at : s.pick(a.graph().vertex_count());
    std::vector<Token> chain;
    for (int i = 0; i < len; ++i) {
        std::vector<Token> options;
        for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
            if (a.generators()[gi].d == cur) options.push_back({gi, false});
            if (a.generators()[gi].t == cur) options.push_back({gi, true});
        }
        if (options.empty()) break;
        Token t = options[s.pick(static_cast<int>(options.size()))];
        chain.push_back(t);
        cur = a.token_t(t);
    }
    std::vector<Token> outermost(chain.rbegin(), chain.rend());
    return a.word_from_tokens(outermost, cur);
}

Path sample_path_ending_at(const Graph& g, Sampler& s, int len, VertexId v) {
    std::vector<std::vector<EdgeId>> out(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out[g.s(e)].push_back(e);
    std::vector<EdgeId> rev;
    VertexId cur = v;
    for (int i = 0; i < len; ++i) {
        if (out[cur].empty()) break;
        EdgeId e = out[cur][s.pick(static_cast<int>(out[cur].size()))];
        rev.push_back(e);
        cur = g.r(e);
    }
    std::vector<EdgeId> edges(rev.rbegin(), rev.rend());
    return make_path(g, cur, std::move(edges));
}

Triple sample_triple(const SelfSimilarAction& a, Sampler& s) {
    Word g = sample_word(a, s, s.pick(4));
    Path bottom = sample_path_ending_at(a.graph(), s, s.pick(4), g.d());
    Path top = sample_path_ending_at(a.graph(), s, s.pick(4), g.t());
    return make_triple(a, std::move(top), std::move(g), std::move(bottom));
}

GTable sample_table(const SelfSimilarAction& a, Sampler& s) {
    GTable t = identity_table(a);
    for (int i = 0; i < 3; ++i)
        t = split_column(a, t, s.pick(static_cast<int>(t.columns.size())));
    for (int i = 0; i < 3; ++i) {
        int ci = s.pick(static_cast<int>(t.columns.size()));
        Triple c = t.columns[ci];
        VertexId v = c.top.s(a.graph());
        for (int tries = 0; tries < 50; ++tries) {
            Word w = sample_word(a, s, 4, v);
            if (w.t() == v && !w.is_unit_word()) {
                c.word = a.compose(w, c.word);
                break;
            }
        }
        std::vector<Triple> cols = t.columns;
        cols[ci] = std::move(c);
        t = make_table(a, std::move(cols));
    }
    return t;
}

Pair2 sample_pair2(const SelfSimilarAction& a, Sampler& s) {
    Triple x = sample_triple(a, s);
    Word h = sample_word(a, s, s.pick(3), x.bottom.s(a.graph())).inverse();
    Path gamma = sample_path_ending_at(a.graph(), s, s.pick(3), h.d());
    return make_pair2(x, make_triple(a, x.bottom, std::move(h), std::move(gamma)));
}

bool agree(const SelfSimilarAction& a, const MaybeTriple& x, const MaybeTriple& y,
           const Budget& budget) {
    if (!x || !y) return !x && !y;
    if (x->top != y->top || x->bottom != y->bottom) return false;
    return element_equal(a, x->word, y->word, budget).verdict == Eq::Equal;
}

Word dotted_word(const SelfSimilarAction& a, const std::string& text) {
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

Triple column(const SelfSimilarAction& a, const std::string& top, const std::string& word,
              const std::string& bottom) {
    return make_triple(a, parse_path(a.graph(), top), dotted_word(a, word),
                       parse_path(a.graph(), bottom));
}

struct Checks {
    json items = json::array();
    bool all = true;

    void add(const std::string& action, const std::string& name, bool passed,
             const std::string& detail) {
        items.push_back({{"action", action},
                         {"name", name},
                         {"passed", passed},
                         {"detail", detail}});
        all = all && passed;
    }
};

void check_triple_laws(Checks& out, const std::string& name, const SelfSimilarAction& a,
                       Sampler& s, const Budget& budget) {
    int failures = 0;
    const int trials = 60;
    for (int i = 0; i < trials; ++i) {
        Triple x = sample_triple(a, s);
        Triple y = sample_triple(a, s);
        Triple z = sample_triple(a, s);
        MaybeTriple xy = multiply(a, x, y);
        MaybeTriple yz = multiply(a, y, z);
        MaybeTriple left = xy ? multiply(a, *xy, z) : std::nullopt;
        MaybeTriple right = yz ? multiply(a, x, *yz) : std::nullopt;
        if (!agree(a, left, right, budget)) ++failures;
        MaybeTriple xxi = multiply(a, x, invert(x));
        MaybeTriple back = xxi ? multiply(a, *xxi, x) : std::nullopt;
        if (!agree(a, back, x, budget)) ++failures;
        if (xy && cocycle_rho(*xy) != cocycle_rho(x) + cocycle_rho(y)) ++failures;
    }
    std::ostringstream detail;
    detail << trials << " random products, " << failures << " failures";
    out.add(name, "triple_laws", failures == 0, detail.str());
}

void check_table_laws(Checks& out, const std::string& name, const SelfSimilarAction& a,
                      Sampler& s, const Budget& budget) {
    int failures = 0;
    const int trials = 10;
    for (int i = 0; i < trials; ++i) {
        GTable t = sample_table(a, s);
        if (tables_equal(a, compose(a, t, inverse_table(a, t)), identity_table(a), budget)
                .verdict != Eq::Equal)
            ++failures;
        GTable split = split_column(a, t, s.pick(static_cast<int>(t.columns.size())));
        if (tables_equal(a, t, split, budget).verdict != Eq::Equal) ++failures;
    }
    std::ostringstream detail;
    detail << trials << " random tables, " << failures << " failures";
    out.add(name, "table_laws", failures == 0, detail.str());
}

void check_chain_complex(Checks& out, const std::string& name, const SelfSimilarAction& a,
                         Sampler& s) {
    int failures = 0;
    const int trials = 100;
    for (int i = 0; i < trials; ++i) {
        Chain2 c;
        int terms = 1 + s.pick(3);
        for (int j = 0; j < terms; ++j) chain_add(c, sample_pair2(a, s), s.pick(5) - 2);
        if (!delta1(delta2(a, c)).empty()) ++failures;
    }
    std::ostringstream detail;
    detail << trials << " random two-chains, " << failures << " nonzero boundaries";
    out.add(name, "chain_complex", failures == 0, detail.str());
}

void check_h1_witnesses(Checks& out, const std::string& name, const SelfSimilarAction& a,
                        uint64_t seed) {
    H1WitnessReport rep = h1_identity_witnesses(a, 3, seed);
    std::ostringstream detail;
    detail << rep.items.size() << " witnesses";
    out.add(name, "h1_identities", rep.all_verified, detail.str());
}

void check_forest_product(Checks& out, const SelfSimilarAction& a, const Budget& budget) {
    GTable tau = make_table(a, {column(a, "u", "a^-1", "e4"), column(a, "v", "c.b", "e5"),
                                column(a, "e4", "c.b", "v"), column(a, "e5", "a", "u")});
    GTable tau1 = make_table(a, {column(a, "u", "a^-1", "e4"), column(a, "e4", "a", "u"),
                                 column(a, "e5", "v", "e5"), column(a, "v", "v", "v")});
    GTable tau2 = make_table(a, {column(a, "v", "c.b", "e5"), column(a, "e5", "b^-1.c^-1", "v"),
                                 column(a, "e4", "v", "e4"), column(a, "u", "u", "u")});
    GTable tau3 = make_table(a, {column(a, "u", "a^-1.c.b", "v"), column(a, "v", "b^-1.c^-1.a", "u"),
                                 column(a, "w", "w", "w")});
    GTable product = compose(a, tau3, compose(a, tau2, compose(a, tau1, tau)));
    GTable expected =
        make_table(a, {column(a, "e4", "v", "e4"), column(a, "e5", "v", "e5"),
                       column(a, "u", "a^-1.c.b.c.b.a", "u"), column(a, "v", "v", "v")});
    bool structural = product == expected;

    Word base = dotted_word(a, "a^-1.c.b.a");
    Word square = a.compose(base, base);
    bool word_ok = false;
    bool nontrivial = false;
    for (const Triple& col : product.columns) {
        if (col.bottom == parse_path(a.graph(), "u")) {
            word_ok = element_equal(a, col.word, square, budget).verdict == Eq::Equal;
            nontrivial =
                element_equal(a, col.word, Word::unit(col.word.d()), budget).verdict ==
                Eq::NotEqual;
        }
    }
    out.add("forest", "staged_product", structural && word_ok && nontrivial,
            "tau3 tau2 tau1 tau against the expected four column table");
}

void check_nucleus_sizes(Checks& out, const Budget& budget) {
    ClosureOutcome forest = contracting_closure(corpus_action("forest"), budget);
    bool forest_ok = !forest.exceeded;
    std::size_t forest_size = 0;
    if (forest_ok) {
        NucleusResult n = nucleus_of(forest.automaton);
        forest_size = n.states.size();
        forest_ok = forest_size == 9;
    }
    out.add("forest", "nucleus_size", forest_ok,
            "expected 9 states, got " + std::to_string(forest_size));

    ClosureOutcome small = contracting_closure(corpus_action("nucleus"), budget);
    bool small_ok = !small.exceeded;
    std::size_t states = 0, edges = 0;
    if (small_ok) {
        NucleusResult n = nucleus_of(small.automaton);
        states = n.states.size();
        edges = n.edges.size();
        small_ok = states == 6 && edges == 12;
    }
    out.add("nucleus", "nucleus_size", small_ok,
            "expected 6 states and 12 edges, got " + std::to_string(states) + " and " +
                std::to_string(edges));
}

void check_h0_frozen(Checks& out) {
    SelfSimilarAction forest = corpus_action("forest");
    SelfSimilarAction units(forest.graph(), {}, {});
    H0Presentation full = h0_truncated(units, 1);
    bool units_ok = full.free_rank == 0 && full.invariant_factors.empty() && full.stabilized;
    out.add("forest", "h0_units_trivial", units_ok,
            "unit groupoid truncation collapses at level 1");

    H0Presentation kernel = h0_truncated(forest, 2, true);
    bool kernel_ok = kernel.classes.size() == 1 && kernel.free_rank == 1 &&
                     kernel.colimit.size() == 1 && kernel.colimit[0][0] == 2 &&
                     kernel.colimit_well_defined;
    out.add("forest", "h0_kernel_multiplier", kernel_ok,
            "one orbit class per level with child multiplier 2");
}

}  // namespace

json selftest_report(uint64_t seed, const Budget& budget) {
    Checks checks;
    for (const std::string& name : corpus_names()) {
        SelfSimilarAction a = corpus_action(name);
        Sampler s(seed ^ std::hash<std::string>{}(name));
        check_triple_laws(checks, name, a, s, budget);
        check_table_laws(checks, name, a, s, budget);
        check_chain_complex(checks, name, a, s);
        check_h1_witnesses(checks, name, a, seed);
    }
    check_forest_product(checks, corpus_action("forest"), budget);
    check_nucleus_sizes(checks, budget);
    check_h0_frozen(checks);

    return {{"budget",
             {{"depth", budget.depth},
              {"max_states", budget.max_states},
              {"max_word_len", budget.max_word_len}}},
            {"checks", checks.items},
            {"passed", checks.all},
            {"seed", seed}};
}

bool selftest_passed(const json& report) {
    return report.at("passed").get<bool>();
}

}  // namespace selfsim
