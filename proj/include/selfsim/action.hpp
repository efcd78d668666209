#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfsim/graph.hpp"

namespace selfsim {

class SelfSimilarAction;

// Groupoid generator g with domain vertex d(g) and target vertex t(g); it acts
// as a bijection d(g)E^1 -> t(g)E^1 together with a restriction word per edge.
struct Generator {
    std::string name;
    VertexId d = 0;
    VertexId t = 0;
};

struct Token {
    int gen = 0;
    bool inv = false;
    bool operator==(const Token& o) const { return gen == o.gen && inv == o.inv; }
    bool operator<(const Token& o) const {
        return gen != o.gen ? gen < o.gen : inv < o.inv;
    }
};

// Freely reduced word over generators and their inverses.  Tokens are listed
// outermost first: {x_k, ..., x_1} denotes x_k ... x_1, applied rightmost
// first.  An empty token list is the unit at its base vertex.
class Word {
public:
    Word() = default;
    static Word unit(VertexId v) {
        Word w;
        w.d_ = w.t_ = v;
        return w;
    }

    const std::vector<Token>& tokens() const { return tokens_; }
    VertexId d() const { return d_; }
    VertexId t() const { return t_; }
    int length() const { return static_cast<int>(tokens_.size()); }
    bool is_unit_word() const { return tokens_.empty(); }

    Word inverse() const;

    bool operator==(const Word& o) const {
        return d_ == o.d_ && t_ == o.t_ && tokens_ == o.tokens_;
    }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const {
        if (d_ != o.d_) return d_ < o.d_;
        if (t_ != o.t_) return t_ < o.t_;
        return tokens_ < o.tokens_;
    }

private:
    std::vector<Token> tokens_;
    VertexId d_ = 0;
    VertexId t_ = 0;
    friend class SelfSimilarAction;
};

// Search limits shared by the semidecision procedures.
struct Budget {
    int depth = 12;
    int max_states = 20000;
    int max_word_len = 64;
};

enum class Eq { Equal, NotEqual, Unknown };

struct EqResult {
    Eq verdict = Eq::Unknown;
    std::optional<Path> witness;  // for NotEqual: a path moved differently
    int depth_reached = 0;
};

struct RuleSpec {
    std::string generator;
    std::string edge;
    std::string image;
    std::vector<std::string> restriction;  // word tokens, outermost first
};

// A self-similar groupoid action (G, E): for every generator g and every
// e in d(g)E^1 a rule (g.e, g|_e).  Construction checks totality, that
// e -> g.e is a bijection d(g)E^1 -> t(g)E^1, and the restriction typings
// d(g|_e) = s(e), t(g|_e) = s(g.e); it then derives the rules for inverses
// and units, which callers must not supply.
class SelfSimilarAction {
public:
    SelfSimilarAction(Graph graph, std::vector<Generator> generators,
                      const std::vector<RuleSpec>& rules);

    const Graph& graph() const { return graph_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::optional<int> find_generator(const std::string& name) const;

    bool group_bundle() const;  // every generator has d = t

    VertexId token_d(const Token& t) const { return t.inv ? gens_[t.gen].t : gens_[t.gen].d; }
    VertexId token_t(const Token& t) const { return t.inv ? gens_[t.gen].d : gens_[t.gen].t; }

    Word word_from_tokens(const std::vector<Token>& tokens, VertexId base_if_empty) const;
    // Tokens as text, outermost first: a generator name, "name^-1", or a
    // vertex name for a unit factor.
    Word word_from_token_names(const std::vector<std::string>& names) const;
    Word generator_word(int gen, bool inv = false) const;
    // outer after inner; requires d(outer) = t(inner)
    Word compose(const Word& outer, const Word& inner) const;

    // Single-step action of a token on an edge in d(token)E^1.
    EdgeId token_act(const Token& t, EdgeId e) const;
    const Word& token_restrict(const Token& t, EdgeId e) const;

    EdgeId act_edge(const Word& w, EdgeId e) const;
    Word restrict_edge(const Word& w, EdgeId e) const;
    std::pair<EdgeId, Word> act_restrict_edge(const Word& w, EdgeId e) const;

    // g.(e1 e2 ...) = (g.e1)((g|_{e1}).e2)... ; preserves length, r(g.mu) = t(g).
    Path act_path(const Word& w, const Path& mu) const;
    Word restrict_path(const Word& w, const Path& mu) const;
    std::pair<Path, Word> act_restrict_path(const Word& w, const Path& mu) const;

    std::string word_text(const Word& w) const;  // tokens joined by '.'; unit prints its vertex

private:
    struct Rule {
        EdgeId image;
        Word restriction;
    };

    Graph graph_;
    std::vector<Generator> gens_;
    std::vector<std::map<EdgeId, Rule>> rules_;      // per generator
    std::vector<std::map<EdgeId, Rule>> inv_rules_;  // per generator, keyed by f in t(g)E^1
};

// Every rule the action knows after derivation, for inverses and units only;
// generator rules are the caller's own input.  Used by validation reports.
struct DerivedRule {
    std::string element;  // "a^-1" or a vertex name
    EdgeId edge;
    EdgeId image;
    Word restriction;
};
std::vector<DerivedRule> derived_rules(const SelfSimilarAction& a);

// Semidecision of equality of two words as partial tree isomorphisms, by
// breadth-first comparison of edge maps over restriction pairs.  Equal is
// returned only when the pair closure is exhausted within budget; NotEqual
// carries a path witnessing the difference.  Domain or target mismatch is
// NotEqual outright.
EqResult element_equal(const SelfSimilarAction& a, const Word& x, const Word& y,
                       const Budget& budget = {});

struct ClosureAutomaton {
    struct Transition {
        EdgeId image;
        int next;
    };
    std::vector<Word> states;
    std::vector<std::map<EdgeId, Transition>> transitions;
    int seed_states = 0;  // states 0..seed_states-1 are the units, generators, inverses
};

struct ClosureOutcome {
    bool exceeded = false;
    std::string reason;
    ClosureAutomaton automaton;  // partial when exceeded
};

// Closure of {units, generators, inverses} under edge restriction, with
// states deduplicated through element_equal (Unknown comparisons keep states
// distinct, an over-approximation that never merges unequal elements).
ClosureOutcome contracting_closure(const SelfSimilarAction& a, const Budget& budget = {});

struct MooreEdge {
    int from;
    EdgeId edge;
    EdgeId image;
    int to;
};

struct NucleusResult {
    std::vector<int> states;       // indices into the automaton, recurrent part
    std::vector<MooreEdge> edges;  // all transitions among nucleus states
};

// Recurrent part of the closure automaton: states reachable from some cycle
// of the transition graph.  For a contracting action whose nucleus is
// reached by the generator closure this is exactly the nucleus.
NucleusResult nucleus_of(const ClosureAutomaton& automaton);

struct LevelTransitivity {
    int level = 0;
    long long orbit_count = 0;
    bool transitive = false;
};

// Orbits of E^k under the partial action of the generators, k = 0..n.
std::vector<LevelTransitivity> level_transitive(const SelfSimilarAction& a, int n);

struct MinimalityReport {
    bool minimal = false;
    long long classes = 0;
    std::optional<std::pair<VertexId, VertexId>> witness;  // two disconnected vertices
};

// G-transitivity: one class under the reachability relation on E^0 generated
// by graph edges and generator (d, t) pairs; equivalent to minimality of the
// boundary action.
MinimalityReport minimality_report(const SelfSimilarAction& a);

struct EffectivenessReport {
    enum class Verdict { Effective, NotEffective, Unknown } verdict = Verdict::Unknown;
    std::optional<Path> entryless_circuit;
    int states_checked = 0;
    std::string note;
};

// (a) every circuit has an entry, and (b) every non-unit closure state moves
// some finite path within budget.  (b) alone can only fail as Unknown, since
// the realized action is faithful by construction.
EffectivenessReport effectiveness_report(const SelfSimilarAction& a, const Budget& budget = {});

struct PseudoFreeReport {
    enum class Verdict { Holds, Fails, Unknown } verdict = Verdict::Unknown;
    int states_checked = 0;
    std::optional<Word> witness_word;
    std::optional<EdgeId> witness_edge;
    std::string note;
};

// Flags closure states that are not unit words yet realize the identity map,
// i.e. nontrivial labels acting trivially.  Scope is the restriction closure
// under the given budget.
PseudoFreeReport pseudo_free_check(const SelfSimilarAction& a, const Budget& budget = {});

// A pair (g, alpha) with r(alpha) = d(g), |alpha| >= 1 and s(alpha) = t(g).
struct GCircuit {
    Word g;
    Path alpha;
};

struct CircuitIteration {
    Path prefix;                                // alpha^1 alpha^2 ... alpha^n
    std::vector<std::pair<Path, Word>> stages;  // (alpha^k, g_k)
};

// Iterates alpha^{k+1} = g_k . alpha^k, g_{k+1} = g_k|_{alpha^k}; the
// concatenation of the alpha^k is the prefix of the unique fixed infinite
// path of the circuit.
CircuitIteration g_circuit_fixed_prefix(const SelfSimilarAction& a, const GCircuit& c, int n);

void check_g_circuit(const SelfSimilarAction& a, const GCircuit& c);

}  // namespace selfsim
