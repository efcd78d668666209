#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "selfsim/action.hpp"
#include "selfsim/homology.hpp"
#include "selfsim/semigroup.hpp"
#include "selfsim/tables.hpp"

namespace testutil {

using namespace selfsim;

// The bundled example actions, built directly so these fixtures do not
// depend on the json layer.

inline SelfSimilarAction make_forest() {
    Graph g({"u", "v", "w"}, {
                                 {"e1", "u", "u"},
                                 {"e2", "v", "u"},
                                 {"e3", "u", "v"},
                                 {"e4", "w", "v"},
                                 {"e5", "w", "v"},
                                 {"e6", "v", "w"},
                             });
    std::vector<Generator> gens = {
        {"a", g.vertex("u"), g.vertex("v")},
        {"b", g.vertex("v"), g.vertex("w")},
        {"c", g.vertex("w"), g.vertex("v")},
    };
    std::vector<RuleSpec> rules = {
        {"a", "e1", "e2", {"u"}}, {"a", "e3", "e6", {"b"}},
        {"b", "e2", "e5", {"a"}}, {"b", "e6", "e4", {"c"}},
        {"c", "e4", "e2", {"a^-1"}}, {"c", "e5", "e6", {"b"}},
    };
    return SelfSimilarAction(std::move(g), std::move(gens), rules);
}

inline SelfSimilarAction make_lamplighter() {
    Graph g({"u", "v"}, {
                            {"e1", "u", "u"},
                            {"e2", "u", "u"},
                            {"e3", "v", "u"},
                            {"e4", "v", "v"},
                        });
    std::vector<Generator> gens = {
        {"a", g.vertex("u"), g.vertex("u")},
        {"b", g.vertex("u"), g.vertex("u")},
        {"c", g.vertex("u"), g.vertex("v")},
    };
    std::vector<RuleSpec> rules = {
        {"a", "e1", "e2", {"b"}}, {"a", "e2", "e1", {"a"}},
        {"b", "e1", "e1", {"b"}}, {"b", "e2", "e2", {"a"}},
        {"c", "e1", "e3", {"a"}}, {"c", "e2", "e4", {"c"}},
    };
    return SelfSimilarAction(std::move(g), std::move(gens), rules);
}

inline SelfSimilarAction make_katsura() {
    Graph g({"u", "v"}, {
                            {"e1", "u", "u"},
                            {"e2", "u", "u"},
                            {"e3", "u", "v"},
                            {"e4", "v", "u"},
                            {"e5", "v", "u"},
                            {"e6", "v", "v"},
                            {"e7", "v", "v"},
                        });
    std::vector<Generator> gens = {
        {"a", g.vertex("u"), g.vertex("u")},
        {"b", g.vertex("v"), g.vertex("v")},
    };
    std::vector<RuleSpec> rules = {
        {"a", "e1", "e2", {"u"}}, {"a", "e2", "e1", {"a"}}, {"a", "e3", "e3", {"v"}},
        {"b", "e4", "e4", {"a"}}, {"b", "e5", "e5", {"a"}},
        {"b", "e6", "e7", {"v"}}, {"b", "e7", "e6", {"b"}},
    };
    return SelfSimilarAction(std::move(g), std::move(gens), rules);
}

inline SelfSimilarAction make_nucleus_example() {
    Graph g({"u", "v"}, {
                            {"e1", "u", "u"},
                            {"e2", "u", "v"},
                            {"e3", "v", "u"},
                            {"e4", "v", "u"},
                        });
    std::vector<Generator> gens = {
        {"a", g.vertex("u"), g.vertex("v")},
        {"b", g.vertex("v"), g.vertex("u")},
    };
    std::vector<RuleSpec> rules = {
        {"a", "e1", "e4", {"u"}}, {"a", "e2", "e3", {"b"}},
        {"b", "e3", "e1", {"u"}}, {"b", "e4", "e2", {"a"}},
    };
    return SelfSimilarAction(std::move(g), std::move(gens), rules);
}

inline Word word(const SelfSimilarAction& a, const std::string& dotted) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : dotted) {
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

inline Path path(const SelfSimilarAction& a, const std::string& text) {
    return parse_path(a.graph(), text);
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    int pick(int n) { return static_cast<int>(eng() % static_cast<uint64_t>(n)); }
};

inline std::vector<std::vector<EdgeId>> out_edges(const Graph& g) {
    std::vector<std::vector<EdgeId>> out(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out[g.s(e)].push_back(e);
    return out;
}

// Random freely reduced word; walks the token chain from a random (or the
// given) domain vertex.  May come out shorter than len, or a unit.
inline Word random_word(const SelfSimilarAction& a, Rng& rng, int len,
                        std::optional<VertexId> d_at = std::nullopt) {
    VertexId cur = d_at ? *d_at : rng.pick(a.graph().vertex_count());
    std::vector<Token> chain;  // innermost first
    for (int i = 0; i < len; ++i) {
        std::vector<Token> options;
        for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
            if (a.generators()[gi].d == cur) options.push_back({gi, false});
            if (a.generators()[gi].t == cur) options.push_back({gi, true});
        }
        if (options.empty()) break;
        Token t = options[rng.pick(static_cast<int>(options.size()))];
        chain.push_back(t);
        cur = a.token_t(t);
    }
    std::reverse(chain.begin(), chain.end());
    return a.word_from_tokens(chain, d_at ? *d_at : cur);
}

// Random path with s(path) = v, built backwards; may stall short of len when
// some vertex emits no edge.
inline Path random_path_ending_at(const Graph& g, Rng& rng, int len, VertexId v) {
    auto out = out_edges(g);
    std::vector<EdgeId> rev;  // last edge first
    VertexId cur = v;
    for (int i = 0; i < len; ++i) {
        if (out[cur].empty()) break;
        EdgeId e = out[cur][rng.pick(static_cast<int>(out[cur].size()))];
        rev.push_back(e);
        cur = g.r(e);
    }
    std::reverse(rev.begin(), rev.end());
    if (rev.empty()) return Path::at_vertex(v);
    VertexId root = g.r(rev.front());
    return make_path(g, root, std::move(rev));
}

inline Triple random_triple(const SelfSimilarAction& a, Rng& rng, int max_word = 3,
                            int max_path = 3) {
    Word g = random_word(a, rng, rng.pick(max_word + 1));
    Path bottom = random_path_ending_at(a.graph(), rng, rng.pick(max_path + 1), g.d());
    Path top = random_path_ending_at(a.graph(), rng, rng.pick(max_path + 1), g.t());
    return make_triple(a, std::move(top), std::move(g), std::move(bottom));
}

inline GTable gtable(const SelfSimilarAction& a,
                     const std::vector<std::array<std::string, 3>>& cols) {
    std::vector<Triple> columns;
    for (const auto& c : cols)
        columns.push_back(make_triple(a, path(a, c[0]), word(a, c[1]), path(a, c[2])));
    return make_table(a, std::move(columns));
}

// The running forest tables: tau exchanges Z(u) <-> Z(e5) and Z(v) <-> Z(e4),
// tau1..tau3 are the transpositions it factors into.
inline GTable forest_tau(const SelfSimilarAction& a) {
    return gtable(a, {{"u", "a^-1", "e4"}, {"v", "c.b", "e5"}, {"e4", "c.b", "v"}, {"e5", "a", "u"}});
}

inline GTable forest_tau1(const SelfSimilarAction& a) {
    return gtable(a, {{"u", "a^-1", "e4"}, {"e4", "a", "u"}, {"e5", "v", "e5"}, {"v", "v", "v"}});
}

inline GTable forest_tau2(const SelfSimilarAction& a) {
    return gtable(a, {{"v", "c.b", "e5"}, {"e5", "b^-1.c^-1", "v"}, {"e4", "v", "e4"}, {"u", "u", "u"}});
}

inline GTable forest_tau3(const SelfSimilarAction& a) {
    return gtable(a, {{"u", "a^-1.c.b", "v"}, {"v", "b^-1.c^-1.a", "u"}, {"w", "w", "w"}});
}

// Random splits plus random loop-word insertions on the identity table.
inline GTable random_table(const SelfSimilarAction& a, Rng& rng, int splits = 3,
                           int insertions = 3, int word_len = 4) {
    GTable t = identity_table(a);
    for (int i = 0; i < splits; ++i)
        t = split_column(a, t, rng.pick(static_cast<int>(t.columns.size())));
    for (int i = 0; i < insertions; ++i) {
        int ci = rng.pick(static_cast<int>(t.columns.size()));
        Triple c = t.columns[ci];
        VertexId v = c.top.s(a.graph());
        for (int tries = 0; tries < 50; ++tries) {
            Word w = random_word(a, rng, word_len, v);
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

inline MaybeTriple mult(const SelfSimilarAction& a, const MaybeTriple& x, const MaybeTriple& y) {
    if (!x || !y) return std::nullopt;
    return multiply(a, *x, *y);
}

// Equality of optional triples with words compared semantically.
inline bool triples_agree(const SelfSimilarAction& a, const MaybeTriple& x,
                          const MaybeTriple& y) {
    if (!x || !y) return !x && !y;
    if (x->top != y->top || x->bottom != y->bottom) return false;
    return element_equal(a, x->word, y->word).verdict == Eq::Equal;
}

// A composable pair of triples sharing the middle path.
inline Pair2 random_pair2(const SelfSimilarAction& a, Rng& rng) {
    Triple x = random_triple(a, rng);
    Word h = random_word(a, rng, rng.pick(3), x.bottom.s(a.graph())).inverse();
    Path gamma = random_path_ending_at(a.graph(), rng, rng.pick(3), h.d());
    return make_pair2(x, make_triple(a, x.bottom, std::move(h), std::move(gamma)));
}

// The same graph with an empty generating set: only unit germs.
inline SelfSimilarAction units_only(const Graph& g) {
    return SelfSimilarAction(g, {}, {});
}

// One vertex, two loops.
inline Graph make_rose2() {
    return Graph({"x"}, {
                            {"f1", "x", "x"},
                            {"f2", "x", "x"},
                        });
}

}  // namespace testutil
