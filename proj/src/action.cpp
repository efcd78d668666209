#include "selfsim/action.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace selfsim {

namespace {

std::vector<Token> reduce_tokens(const std::vector<Token>& in) {
    std::vector<Token> out;
    for (const Token& t : in) {
        if (!out.empty() && out.back().gen == t.gen && out.back().inv != t.inv)
            out.pop_back();
        else
            out.push_back(t);
    }
    return out;
}

std::string word_key(const Word& w) {
    std::string k = std::to_string(w.d()) + ":" + std::to_string(w.t());
    for (const Token& t : w.tokens()) {
        k += t.inv ? '-' : '+';
        k += std::to_string(t.gen);
    }
    return k;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Word Word::inverse() const {
    Word out;
    out.d_ = t_;
    out.t_ = d_;
    out.tokens_.reserve(tokens_.size());
    for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it)
        out.tokens_.push_back(Token{it->gen, !it->inv});
    return out;
}

SelfSimilarAction::SelfSimilarAction(Graph graph, std::vector<Generator> generators,
                                     const std::vector<RuleSpec>& rules)
    : graph_(std::move(graph)), gens_(std::move(generators)) {
    std::set<std::string> names;
    for (VertexId v = 0; v < graph_.vertex_count(); ++v) names.insert(graph_.vertex_name(v));
    for (EdgeId e = 0; e < graph_.edge_count(); ++e) names.insert(graph_.edge_name(e));
    for (const auto& g : gens_) {
        if (g.name.empty()) throw Error("empty generator name");
        if (!names.insert(g.name).second)
            throw Error("generator name collides with an existing name: " + g.name);
        if (g.d < 0 || g.d >= graph_.vertex_count() || g.t < 0 || g.t >= graph_.vertex_count())
            throw Error("generator " + g.name + " has an out-of-range vertex");
    }

    rules_.resize(gens_.size());
    for (const auto& spec : rules) {
        auto gi = find_generator(spec.generator);
        if (!gi) {
            // Reject unit or inverse rules explicitly, they are derived.
            if (graph_.find_vertex(spec.generator) || spec.generator.ends_with("^-1"))
                throw Error("rule for " + spec.generator +
                            ": unit and inverse rules are derived, do not list them");
            throw Error("rule names unknown generator: " + spec.generator);
        }
        const Generator& g = gens_[*gi];
        EdgeId e = graph_.edge(spec.edge);
        EdgeId img = graph_.edge(spec.image);
        if (graph_.r(e) != g.d)
            throw Error("rule " + g.name + " on " + spec.edge + ": edge is not in d(" + g.name +
                        ")E^1");
        if (graph_.r(img) != g.t)
            throw Error("rule " + g.name + " on " + spec.edge + ": image " + spec.image +
                        " is not in t(" + g.name + ")E^1");
        if (rules_[*gi].count(e))
            throw Error("duplicate rule for " + g.name + " on " + spec.edge);
        if (spec.restriction.empty())
            throw Error("rule " + g.name + " on " + spec.edge + ": empty restriction word");
        Word res = word_from_token_names(spec.restriction);
        if (res.d() != graph_.s(e) || res.t() != graph_.s(img))
            throw Error("rule " + g.name + " on " + spec.edge + ": restriction " +
                        word_text(res) + " has wrong domain or target");
        rules_[*gi].emplace(e, Rule{img, std::move(res)});
    }

    inv_rules_.resize(gens_.size());
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
        const Generator& g = gens_[gi];
        const auto& dom = graph_.in_edges(g.d);
        if (rules_[gi].size() != dom.size()) {
            for (EdgeId e : dom)
                if (!rules_[gi].count(e))
                    throw Error("missing rule for " + g.name + " on " + graph_.edge_name(e));
        }
        std::set<EdgeId> images;
        for (const auto& [e, rule] : rules_[gi]) images.insert(rule.image);
        std::set<EdgeId> target(graph_.in_edges(g.t).begin(), graph_.in_edges(g.t).end());
        if (images != target)
            throw Error("edge map of " + g.name + " is not a bijection d(" + g.name +
                        ")E^1 -> t(" + g.name + ")E^1");
        for (const auto& [e, rule] : rules_[gi])
            inv_rules_[gi].emplace(rule.image, Rule{e, rule.restriction.inverse()});
    }
}

std::optional<int> SelfSimilarAction::find_generator(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

bool SelfSimilarAction::group_bundle() const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [](const Generator& g) { return g.d == g.t; });
}

Word SelfSimilarAction::word_from_tokens(const std::vector<Token>& tokens,
                                         VertexId base_if_empty) const {
    if (tokens.empty()) {
        if (base_if_empty < 0 || base_if_empty >= graph_.vertex_count())
            throw Error("unit word needs a vertex");
        return Word::unit(base_if_empty);
    }
    for (const Token& t : tokens)
        if (t.gen < 0 || t.gen >= static_cast<int>(gens_.size()))
            throw Error("word token references an unknown generator");
    for (size_t i = 0; i + 1 < tokens.size(); ++i)
        if (token_d(tokens[i]) != token_t(tokens[i + 1]))
            throw Error("word tokens do not compose");
    Word w;
    w.d_ = token_d(tokens.back());
    w.t_ = token_t(tokens.front());
    w.tokens_ = reduce_tokens(tokens);
    return w;
}

Word SelfSimilarAction::generator_word(int gen, bool inv) const {
    return word_from_tokens({Token{gen, inv}}, -1);
}

Word SelfSimilarAction::compose(const Word& outer, const Word& inner) const {
    if (outer.d() != inner.t()) throw Error("compose: d(outer) != t(inner)");
    Word w;
    w.d_ = inner.d();
    w.t_ = outer.t();
    std::vector<Token> chain = outer.tokens_;
    chain.insert(chain.end(), inner.tokens_.begin(), inner.tokens_.end());
    w.tokens_ = reduce_tokens(chain);
    return w;
}

Word SelfSimilarAction::word_from_token_names(const std::vector<std::string>& names) const {
    if (names.empty()) throw Error("empty word");
    auto one = [&](const std::string& text) -> Word {
        std::string base = text;
        bool inv = false;
        if (base.size() > 3 && base.ends_with("^-1")) {
            base = base.substr(0, base.size() - 3);
            inv = true;
        }
        if (auto gi = find_generator(base)) return generator_word(*gi, inv);
        if (!inv)
            if (auto v = graph_.find_vertex(base)) return Word::unit(*v);
        throw Error("unknown word token: " + text);
    };
    Word acc = one(names.back());
    for (size_t i = names.size() - 1; i-- > 0;) acc = compose(one(names[i]), acc);
    return acc;
}

EdgeId SelfSimilarAction::token_act(const Token& t, EdgeId e) const {
    const auto& table = t.inv ? inv_rules_[t.gen] : rules_[t.gen];
    auto it = table.find(e);
    if (it == table.end())
        throw Error("token does not act on edge " + graph_.edge_name(e));
    return it->second.image;
}

const Word& SelfSimilarAction::token_restrict(const Token& t, EdgeId e) const {
    const auto& table = t.inv ? inv_rules_[t.gen] : rules_[t.gen];
    auto it = table.find(e);
    if (it == table.end())
        throw Error("token does not act on edge " + graph_.edge_name(e));
    return it->second.restriction;
}

std::pair<EdgeId, Word> SelfSimilarAction::act_restrict_edge(const Word& w, EdgeId e) const {
    if (graph_.r(e) != w.d())
        throw Error("act: edge " + graph_.edge_name(e) + " is not in d(word)E^1");
    EdgeId cur = e;
    Word res = Word::unit(graph_.s(e));
    for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it) {
        res = compose(token_restrict(*it, cur), res);
        cur = token_act(*it, cur);
    }
    return {cur, res};
}

EdgeId SelfSimilarAction::act_edge(const Word& w, EdgeId e) const {
    if (graph_.r(e) != w.d())
        throw Error("act: edge " + graph_.edge_name(e) + " is not in d(word)E^1");
    EdgeId cur = e;
    for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it) cur = token_act(*it, cur);
    return cur;
}

Word SelfSimilarAction::restrict_edge(const Word& w, EdgeId e) const {
    return act_restrict_edge(w, e).second;
}

std::pair<Path, Word> SelfSimilarAction::act_restrict_path(const Word& w, const Path& mu) const {
    if (mu.r() != w.d()) throw Error("act: r(path) != d(word)");
    Path image = Path::at_vertex(w.t());
    Word cur = w;
    for (EdgeId e : mu.edges) {
        auto [img, res] = act_restrict_edge(cur, e);
        image.edges.push_back(img);
        cur = std::move(res);
    }
    return {image, cur};
}

Path SelfSimilarAction::act_path(const Word& w, const Path& mu) const {
    return act_restrict_path(w, mu).first;
}

Word SelfSimilarAction::restrict_path(const Word& w, const Path& mu) const {
    return act_restrict_path(w, mu).second;
}

std::string SelfSimilarAction::word_text(const Word& w) const {
    if (w.is_unit_word()) return graph_.vertex_name(w.d());
    std::string out;
    for (size_t i = 0; i < w.tokens().size(); ++i) {
        if (i) out += '.';
        out += gens_[w.tokens()[i].gen].name;
        if (w.tokens()[i].inv) out += "^-1";
    }
    return out;
}

std::vector<DerivedRule> derived_rules(const SelfSimilarAction& a) {
    std::vector<DerivedRule> out;
    const Graph& g = a.graph();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Word unit = Word::unit(v);
        for (EdgeId e : g.in_edges(v)) {
            auto [img, res] = a.act_restrict_edge(unit, e);
            out.push_back({g.vertex_name(v), e, img, res});
        }
    }
    for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
        Word w = a.generator_word(gi, true);
        for (EdgeId e : g.in_edges(w.d())) {
            auto [img, res] = a.act_restrict_edge(w, e);
            out.push_back({a.generators()[gi].name + "^-1", e, img, res});
        }
    }
    return out;
}

EqResult element_equal(const SelfSimilarAction& a, const Word& x, const Word& y,
                       const Budget& budget) {
    if (x.d() != y.d() || x.t() != y.t()) return {Eq::NotEqual, std::nullopt, 0};
    if (x == y) return {Eq::Equal, std::nullopt, 0};

    struct Item {
        Word a, b;
        Path path;
    };
    const Graph& g = a.graph();
    std::deque<Item> queue;
    std::unordered_set<std::string> visited;
    queue.push_back({x, y, Path::at_vertex(x.d())});
    visited.insert(word_key(x) + "|" + word_key(y));

    bool overflow = false;
    int depth_reached = 0;
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        if (item.path.length() >= budget.depth) {
            overflow = true;
            continue;
        }
        depth_reached = std::max(depth_reached, item.path.length() + 1);
        for (EdgeId e : g.in_edges(item.a.d())) {
            auto [ia, ra] = a.act_restrict_edge(item.a, e);
            auto [ib, rb] = a.act_restrict_edge(item.b, e);
            if (ia != ib)
                return {Eq::NotEqual, extend(g, item.path, e), item.path.length() + 1};
            if (ra == rb) continue;  // identical from here on
            if (ra.length() > budget.max_word_len || rb.length() > budget.max_word_len) {
                overflow = true;
                continue;
            }
            std::string key = word_key(ra) + "|" + word_key(rb);
            if (visited.count(key)) continue;
            if (static_cast<int>(visited.size()) >= budget.max_states) {
                overflow = true;
                continue;
            }
            visited.insert(std::move(key));
            queue.push_back({std::move(ra), std::move(rb), extend(g, item.path, e)});
        }
    }
    if (overflow) return {Eq::Unknown, std::nullopt, depth_reached};
    return {Eq::Equal, std::nullopt, depth_reached};
}

ClosureOutcome contracting_closure(const SelfSimilarAction& a, const Budget& budget) {
    ClosureOutcome out;
    ClosureAutomaton& atm = out.automaton;
    std::map<std::string, int> index;

    auto add = [&](const Word& w) -> int {
        std::string key = word_key(w);
        if (auto it = index.find(key); it != index.end()) return it->second;
        for (size_t i = 0; i < atm.states.size(); ++i) {
            const Word& s = atm.states[i];
            if (s.d() != w.d() || s.t() != w.t()) continue;
            if (element_equal(a, w, s, budget).verdict == Eq::Equal) {
                index.emplace(std::move(key), static_cast<int>(i));
                return static_cast<int>(i);
            }
        }
        if (w.length() > budget.max_word_len) {
            out.exceeded = true;
            out.reason = "word length limit reached";
            return -1;
        }
        if (static_cast<int>(atm.states.size()) >= budget.max_states) {
            out.exceeded = true;
            out.reason = "state limit reached";
            return -1;
        }
        int idx = static_cast<int>(atm.states.size());
        atm.states.push_back(w);
        index.emplace(std::move(key), idx);
        return idx;
    };

    for (VertexId v = 0; v < a.graph().vertex_count() && !out.exceeded; ++v)
        add(Word::unit(v));
    for (int gi = 0; gi < static_cast<int>(a.generators().size()) && !out.exceeded; ++gi) {
        add(a.generator_word(gi, false));
        if (!out.exceeded) add(a.generator_word(gi, true));
    }
    atm.seed_states = static_cast<int>(atm.states.size());

    for (size_t i = 0; i < atm.states.size() && !out.exceeded; ++i) {
        atm.transitions.resize(atm.states.size());
        Word state = atm.states[i];  // copy, states may reallocate
        for (EdgeId e : a.graph().in_edges(state.d())) {
            auto [img, res] = a.act_restrict_edge(state, e);
            int j = add(res);
            if (j < 0) break;
            atm.transitions[i].emplace(e, ClosureAutomaton::Transition{img, j});
        }
    }
    atm.transitions.resize(atm.states.size());
    return out;
}

NucleusResult nucleus_of(const ClosureAutomaton& atm) {
    int n = static_cast<int>(atm.states.size());
    // Tarjan, iterative.
    std::vector<int> low(n, -1), num(n, -1), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0, comp_count = 0;
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i)
        for (const auto& [e, tr] : atm.transitions[i]) succ[i].push_back(tr.next);

    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        std::vector<std::pair<int, size_t>> dfs{{root, 0}};
        while (!dfs.empty()) {
            auto& [v, idx] = dfs.back();
            if (idx == 0) {
                num[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (idx < succ[v].size()) {
                int w = succ[v][idx++];
                if (num[w] == -1)
                    dfs.emplace_back(w, 0);
                else if (on_stack[w])
                    low[v] = std::min(low[v], num[w]);
            } else {
                if (low[v] == num[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                int vv = v;
                dfs.pop_back();
                if (!dfs.empty()) low[dfs.back().first] = std::min(low[dfs.back().first], low[vv]);
            }
        }
    }

    std::vector<int> comp_size(comp_count, 0);
    for (int i = 0; i < n; ++i) comp_size[comp[i]]++;
    std::vector<bool> cyclic(n, false);
    for (int i = 0; i < n; ++i) {
        if (comp_size[comp[i]] > 1) cyclic[i] = true;
        for (int w : succ[i])
            if (w == i) cyclic[i] = true;
    }

    std::vector<bool> recurrent(n, false);
    std::deque<int> bfs;
    for (int i = 0; i < n; ++i)
        if (cyclic[i]) {
            recurrent[i] = true;
            bfs.push_back(i);
        }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (int w : succ[v])
            if (!recurrent[w]) {
                recurrent[w] = true;
                bfs.push_back(w);
            }
    }

    NucleusResult out;
    for (int i = 0; i < n; ++i)
        if (recurrent[i]) out.states.push_back(i);
    for (int i : out.states)
        for (const auto& [e, tr] : atm.transitions[i])
            out.edges.push_back({i, e, tr.image, tr.next});
    return out;
}

std::vector<LevelTransitivity> level_transitive(const SelfSimilarAction& a, int n) {
    std::vector<LevelTransitivity> out;
    const Graph& g = a.graph();
    for (int k = 0; k <= n; ++k) {
        auto paths = paths_of_length(g, k);
        std::map<Path, int> idx;
        for (size_t i = 0; i < paths.size(); ++i) idx[paths[i]] = static_cast<int>(i);
        Dsu dsu(static_cast<int>(paths.size()));
        for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
            Word w = a.generator_word(gi);
            for (size_t i = 0; i < paths.size(); ++i) {
                if (paths[i].r() != w.d()) continue;
                dsu.unite(static_cast<int>(i), idx.at(a.act_path(w, paths[i])));
            }
        }
        std::set<int> roots;
        for (size_t i = 0; i < paths.size(); ++i) roots.insert(dsu.find(static_cast<int>(i)));
        out.push_back({k, static_cast<long long>(roots.size()), roots.size() == 1});
    }
    return out;
}

MinimalityReport minimality_report(const SelfSimilarAction& a) {
    const Graph& g = a.graph();
    Dsu dsu(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) dsu.unite(g.r(e), g.s(e));
    for (const auto& gen : a.generators()) dsu.unite(gen.d, gen.t);
    std::map<int, VertexId> roots;
    for (VertexId v = 0; v < g.vertex_count(); ++v) roots.emplace(dsu.find(v), v);
    MinimalityReport out;
    out.classes = static_cast<long long>(roots.size());
    out.minimal = roots.size() == 1;
    if (!out.minimal) {
        auto it = roots.begin();
        VertexId v1 = it->second;
        ++it;
        out.witness = {v1, it->second};
    }
    return out;
}

EffectivenessReport effectiveness_report(const SelfSimilarAction& a, const Budget& budget) {
    EffectivenessReport out;
    auto cc = circuits_with_entry_check(a.graph());
    if (!cc.every_circuit_has_entry) {
        out.verdict = EffectivenessReport::Verdict::NotEffective;
        out.entryless_circuit = cc.witness;
        out.note = "a circuit without entry keeps a cylinder rigid";
        return out;
    }
    auto closure = contracting_closure(a, budget);
    if (closure.exceeded) {
        out.verdict = EffectivenessReport::Verdict::Unknown;
        out.states_checked = static_cast<int>(closure.automaton.states.size());
        out.note = "restriction closure " + closure.reason;
        return out;
    }
    for (const Word& w : closure.automaton.states) {
        ++out.states_checked;
        if (w.is_unit_word() || w.d() != w.t()) continue;
        auto eq = element_equal(a, w, Word::unit(w.d()), budget);
        if (eq.verdict == Eq::Unknown) {
            out.verdict = EffectivenessReport::Verdict::Unknown;
            out.note = "could not decide whether " + a.word_text(w) + " moves a path";
            return out;
        }
    }
    out.verdict = EffectivenessReport::Verdict::Effective;
    return out;
}

PseudoFreeReport pseudo_free_check(const SelfSimilarAction& a, const Budget& budget) {
    // Walks the closure without semantic merging: a label realizing the
    // identity would be deduplicated into the unit state and lost otherwise.
    PseudoFreeReport out;
    std::vector<Word> states;
    std::set<std::string> seen;
    bool exceeded = false;
    auto add = [&](const Word& w) {
        if (!seen.insert(word_key(w)).second) return;
        if (w.length() > budget.max_word_len ||
            static_cast<int>(states.size()) >= budget.max_states) {
            exceeded = true;
            return;
        }
        states.push_back(w);
    };
    for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
        add(a.generator_word(gi, false));
        add(a.generator_word(gi, true));
    }

    bool unknown = false;
    for (size_t i = 0; i < states.size() && !exceeded; ++i) {
        Word w = states[i];
        ++out.states_checked;
        if (w.d() == w.t() && !w.is_unit_word()) {
            auto eq = element_equal(a, w, Word::unit(w.d()), budget);
            if (eq.verdict == Eq::Equal) {
                out.verdict = PseudoFreeReport::Verdict::Fails;
                out.witness_word = w;
                out.witness_edge = a.graph().in_edges(w.d()).front();
                out.note = "nontrivial label " + a.word_text(w) + " realizes the identity";
                return out;
            }
            if (eq.verdict == Eq::Unknown) unknown = true;
        }
        for (EdgeId e : a.graph().in_edges(w.d())) add(a.restrict_edge(w, e));
    }
    if (exceeded) {
        out.verdict = PseudoFreeReport::Verdict::Unknown;
        out.note = "restriction closure budget exhausted";
        return out;
    }
    out.verdict =
        unknown ? PseudoFreeReport::Verdict::Unknown : PseudoFreeReport::Verdict::Holds;
    return out;
}

void check_g_circuit(const SelfSimilarAction& a, const GCircuit& c) {
    if (c.alpha.length() < 1) throw Error("g-circuit needs |alpha| >= 1");
    if (c.alpha.r() != c.g.d()) throw Error("g-circuit: r(alpha) != d(g)");
    if (c.alpha.s(a.graph()) != c.g.t()) throw Error("g-circuit: s(alpha) != g . r(alpha)");
}

CircuitIteration g_circuit_fixed_prefix(const SelfSimilarAction& a, const GCircuit& c, int n) {
    check_g_circuit(a, c);
    CircuitIteration out;
    Path alpha = c.alpha;
    Word g = c.g;
    out.prefix = alpha;
    out.stages.emplace_back(alpha, g);
    for (int k = 1; k < n; ++k) {
        auto [next_alpha, next_g] = a.act_restrict_path(g, alpha);
        out.prefix = concat(a.graph(), out.prefix, next_alpha);
        out.stages.emplace_back(next_alpha, next_g);
        alpha = std::move(next_alpha);
        g = std::move(next_g);
    }
    return out;
}

}  // namespace selfsim
