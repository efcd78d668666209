#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "doctest.h"
#include "support/testutil.hpp"

using namespace selfsim;
using namespace testutil;

namespace {

// (element, edge, image, restriction) as text, for comparing rule tables
using RuleTuple = std::tuple<std::string, std::string, std::string, std::string>;

std::set<RuleTuple> derived_rule_set(const SelfSimilarAction& a) {
    std::set<RuleTuple> out;
    for (const auto& r : derived_rules(a))
        out.insert({r.element, a.graph().edge_name(r.edge), a.graph().edge_name(r.image),
                    a.word_text(r.restriction)});
    return out;
}

}  // namespace

TEST_SUITE("action") {

TEST_CASE("construction rejects malformed rule tables") {
    Graph g({"u"}, {{"e1", "u", "u"}, {"e2", "u", "u"}});
    std::vector<Generator> gens = {{"a", 0, 0}};

    // missing rule for e2
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, {{"a", "e1", "e2", {"u"}}}), Error);
    // not a bijection
    CHECK_THROWS_AS(SelfSimilarAction(g, gens,
                                      {{"a", "e1", "e2", {"u"}}, {"a", "e2", "e2", {"u"}}}),
                    Error);
    // unknown generator
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, {{"z", "e1", "e2", {"u"}}}), Error);
    // unit and inverse rules are derived, not accepted
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, {{"u", "e1", "e1", {"u"}}}), Error);
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, {{"a^-1", "e1", "e2", {"u"}}}), Error);
    // generator name colliding with an edge
    CHECK_THROWS_AS(SelfSimilarAction(g, {{"e1", 0, 0}}, {}), Error);
    CHECK_NOTHROW(SelfSimilarAction(g, gens,
                                    {{"a", "e1", "e2", {"u"}}, {"a", "e2", "e1", {"a"}}}));
}

TEST_CASE("construction rejects mistyped restrictions") {
    Graph g = make_forest().graph();
    std::vector<Generator> gens = {{"a", g.vertex("u"), g.vertex("v")},
                                   {"b", g.vertex("v"), g.vertex("w")},
                                   {"c", g.vertex("w"), g.vertex("v")}};
    std::vector<RuleSpec> rules = {
        {"a", "e1", "e2", {"u"}}, {"a", "e3", "e6", {"b"}},
        {"b", "e2", "e5", {"a"}}, {"b", "e6", "e4", {"c"}},
        {"c", "e4", "e2", {"a^-1"}}, {"c", "e5", "e6", {"b"}},
    };

    auto broken = rules;
    broken[1].restriction = {"c"};  // d(c) = w but s(e3) = v
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, broken), Error);

    broken = rules;
    broken[0].image = "e6";  // s(e6) = w but the unit restriction ends at u
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, broken), Error);

    broken = rules;
    broken[2].edge = "e1";  // e1 is not in d(b)E^1
    CHECK_THROWS_AS(SelfSimilarAction(g, gens, broken), Error);
}

TEST_CASE("derived inverse and unit rules of the forest action") {
    auto a = make_forest();
    std::set<RuleTuple> expected = {
        // units: identity on edges, restriction the unit at the source
        {"u", "e1", "e1", "u"},    {"u", "e3", "e3", "v"},
        {"v", "e2", "e2", "u"},    {"v", "e6", "e6", "w"},
        {"w", "e4", "e4", "v"},    {"w", "e5", "e5", "v"},
        // inverses
        {"a^-1", "e2", "e1", "u"}, {"a^-1", "e6", "e3", "b^-1"},
        {"b^-1", "e5", "e2", "a^-1"}, {"b^-1", "e4", "e6", "c^-1"},
        {"c^-1", "e2", "e4", "a"}, {"c^-1", "e6", "e5", "b^-1"},
    };
    CHECK(derived_rule_set(a) == expected);
}

TEST_CASE("words are freely reduced and typed") {
    auto a = make_forest();
    Word ba = word(a, "b.a");
    CHECK(ba.length() == 2);
    CHECK(ba.d() == a.graph().vertex("u"));
    CHECK(ba.t() == a.graph().vertex("w"));
    CHECK(a.word_text(ba) == "b.a");
    CHECK(a.word_text(ba.inverse()) == "a^-1.b^-1");

    // d(b) = v but t(a...) mismatches: a.b would need d(a) = t(b) = w
    CHECK_THROWS_AS(word(a, "a.b"), Error);
    CHECK_THROWS_AS(word(a, "missing"), Error);

    Word unit_u = a.compose(word(a, "a^-1"), word(a, "a"));
    CHECK(unit_u.is_unit_word());
    CHECK(unit_u.d() == a.graph().vertex("u"));
    CHECK(a.word_text(unit_u) == "u");

    // partial cancellation in the middle
    Word m = a.compose(word(a, "b.a"), word(a, "a^-1.a"));
    CHECK(m == word(a, "b.a"));
}

TEST_CASE("acting on edges accumulates restrictions innermost first") {
    auto a = make_forest();
    const Graph& g = a.graph();
    auto [img, res] = a.act_restrict_edge(word(a, "b.a"), g.edge("e3"));
    CHECK(g.edge_name(img) == "e4");
    CHECK(a.word_text(res) == "c.b");

    CHECK(g.edge_name(a.act_edge(word(a, "a"), g.edge("e1"))) == "e2");
    CHECK(a.word_text(a.restrict_edge(word(a, "a"), g.edge("e1"))) == "u");

    // e2 is not in d(a)E^1 = uE^1
    CHECK_THROWS_AS(a.act_edge(word(a, "a"), g.edge("e2")), Error);
}

TEST_CASE("acting on paths") {
    auto a = make_forest();
    const Graph& g = a.graph();
    auto [image, res] = a.act_restrict_path(word(a, "a"), path(a, "e3.e2"));
    CHECK(image == path(a, "e6.e5"));
    CHECK(a.word_text(res) == "a");

    // length preserved, range moved to t(g)
    CHECK(image.r() == g.vertex("v"));
    CHECK(image.length() == 2);

    // unit acts as the identity
    auto [im2, r2] = a.act_restrict_path(Word::unit(g.vertex("u")), path(a, "e1.e3"));
    CHECK(im2 == path(a, "e1.e3"));
    CHECK(r2.is_unit_word());

    // acting on a vertex path lands at t(g)
    CHECK(a.act_path(word(a, "a"), Path::at_vertex(g.vertex("u"))) ==
          Path::at_vertex(g.vertex("v")));

    CHECK_THROWS_AS(a.act_path(word(a, "a"), path(a, "e2")), Error);
}

TEST_CASE("equality: cocycle products that reduce to the unit") {
    auto a = make_lamplighter();
    Word x = word(a, "b^-1.a");
    Word xx = a.compose(x, x);
    CHECK(xx.length() == 4);  // no free cancellation
    CHECK(element_equal(a, xx, Word::unit(xx.d())).verdict == Eq::Equal);

    // b^-1.a and a^-1.b act identically but differ as words
    Word y = word(a, "a^-1.b");
    CHECK(x != y);
    CHECK(element_equal(a, x, y).verdict == Eq::Equal);

    // and x itself is not the unit
    auto ne = element_equal(a, x, Word::unit(x.d()));
    CHECK(ne.verdict == Eq::NotEqual);
}

TEST_CASE("equality: separating words by a witness path") {
    auto a = make_forest();
    Word g = word(a, "a^-1.c.b.a");
    CHECK(g.d() == a.graph().vertex("u"));
    CHECK(g.t() == a.graph().vertex("u"));

    Word g2 = a.compose(g, g);
    CHECK(a.word_text(g2) == "a^-1.c.b.c.b.a");

    auto res = element_equal(a, g2, Word::unit(g2.d()));
    REQUIRE(res.verdict == Eq::NotEqual);
    REQUIRE(res.witness.has_value());
    // the witness is a path the two words move differently
    CHECK(a.act_path(g2, *res.witness) != *res.witness);

    // domain mismatch is never equal
    CHECK(element_equal(a, word(a, "a"), Word::unit(a.graph().vertex("u"))).verdict ==
          Eq::NotEqual);
}

TEST_CASE("equality: budget exhaustion is reported as unknown") {
    auto a = make_forest();
    Word g = word(a, "a^-1.c.b.a");
    Word g2 = a.compose(g, g);
    Budget tiny;
    tiny.depth = 1;
    CHECK(element_equal(a, g2, Word::unit(g2.d()), tiny).verdict == Eq::Unknown);
}

TEST_CASE("restriction closure sizes of the bundled actions") {
    auto states_text = [](const SelfSimilarAction& a) {
        auto closure = contracting_closure(a);
        REQUIRE_FALSE(closure.exceeded);
        std::set<std::string> names;
        for (const Word& w : closure.automaton.states) names.insert(a.word_text(w));
        return names;
    };

    CHECK(states_text(make_forest()) ==
          std::set<std::string>{"u", "v", "w", "a", "a^-1", "b", "b^-1", "c", "c^-1"});
    CHECK(states_text(make_lamplighter()) ==
          std::set<std::string>{"u", "v", "a", "a^-1", "b", "b^-1", "c", "c^-1"});
    CHECK(states_text(make_katsura()) ==
          std::set<std::string>{"u", "v", "a", "a^-1", "b", "b^-1"});
    CHECK(states_text(make_nucleus_example()) ==
          std::set<std::string>{"u", "v", "a", "a^-1", "b", "b^-1"});
}

TEST_CASE("closure respects the state budget") {
    Budget tiny;
    tiny.max_states = 3;
    auto out = contracting_closure(make_forest(), tiny);
    CHECK(out.exceeded);
    CHECK(out.reason == "state limit reached");
    CHECK(out.automaton.transitions.size() == out.automaton.states.size());
}

TEST_CASE("nucleus of the two-vertex exchange action") {
    auto a = make_nucleus_example();
    const Graph& g = a.graph();
    auto closure = contracting_closure(a);
    REQUIRE_FALSE(closure.exceeded);
    auto nuc = nucleus_of(closure.automaton);

    CHECK(nuc.states.size() == closure.automaton.states.size());  // all recurrent

    std::set<std::tuple<std::string, std::string, std::string, std::string>> moore;
    for (const auto& me : nuc.edges)
        moore.insert({a.word_text(closure.automaton.states[me.from]), g.edge_name(me.edge),
                      g.edge_name(me.image), a.word_text(closure.automaton.states[me.to])});
    std::set<std::tuple<std::string, std::string, std::string, std::string>> expected = {
        {"u", "e1", "e1", "u"},       {"u", "e2", "e2", "v"},
        {"v", "e3", "e3", "u"},       {"v", "e4", "e4", "u"},
        {"a", "e1", "e4", "u"},       {"a", "e2", "e3", "b"},
        {"b", "e3", "e1", "u"},       {"b", "e4", "e2", "a"},
        {"a^-1", "e4", "e1", "u"},    {"a^-1", "e3", "e2", "b^-1"},
        {"b^-1", "e1", "e3", "u"},    {"b^-1", "e2", "e4", "a^-1"},
    };
    CHECK(moore == expected);
}

TEST_CASE("forest closure is entirely recurrent") {
    auto closure = contracting_closure(make_forest());
    REQUIRE_FALSE(closure.exceeded);
    auto nuc = nucleus_of(closure.automaton);
    CHECK(nuc.states.size() == 9);
}

TEST_CASE("transient closure states fall outside the nucleus") {
    // d swaps the two loops at u with unit restrictions.  d^-1 is
    // deduplicated against d (an involution), and only the unit recurs.
    Graph g({"u"}, {{"e1", "u", "u"}, {"e2", "u", "u"}});
    SelfSimilarAction a(g, {{"d", 0, 0}},
                        {{"d", "e1", "e2", {"u"}}, {"d", "e2", "e1", {"u"}}});
    auto closure = contracting_closure(a);
    REQUIRE_FALSE(closure.exceeded);
    CHECK(closure.automaton.states.size() == 2);
    auto nuc = nucleus_of(closure.automaton);
    REQUIRE(nuc.states.size() == 1);
    CHECK(a.word_text(closure.automaton.states[nuc.states[0]]) == "u");
}

TEST_CASE("orbit counts per level") {
    auto levels = level_transitive(make_forest(), 5);
    REQUIRE(levels.size() == 6);
    for (const auto& l : levels) {
        CAPTURE(l.level);
        CHECK(l.transitive);
        CHECK(l.orbit_count == 1);
    }

    // katsura: vertices u and v are not linked by any generator
    auto k = level_transitive(make_katsura(), 1);
    CHECK_FALSE(k[0].transitive);
    CHECK(k[0].orbit_count == 2);
}

TEST_CASE("vertex connectivity report") {
    CHECK(minimality_report(make_forest()).minimal);
    CHECK(minimality_report(make_katsura()).minimal);  // edges link u and v

    Graph split({"x", "y"}, {{"p", "x", "x"}, {"q", "y", "y"}});
    SelfSimilarAction a(split, {}, {});
    auto rep = minimality_report(a);
    CHECK_FALSE(rep.minimal);
    CHECK(rep.classes == 2);
    REQUIRE(rep.witness.has_value());
}

TEST_CASE("effectiveness") {
    CHECK(effectiveness_report(make_forest()).verdict ==
          EffectivenessReport::Verdict::Effective);
    CHECK(effectiveness_report(make_nucleus_example()).verdict ==
          EffectivenessReport::Verdict::Effective);

    Graph lone({"x", "y"}, {{"p", "x", "x"}, {"q", "y", "x"}});
    SelfSimilarAction trivial(lone, {}, {});
    auto rep = effectiveness_report(trivial);
    CHECK(rep.verdict == EffectivenessReport::Verdict::NotEffective);
    REQUIRE(rep.entryless_circuit.has_value());
}

TEST_CASE("pseudo-freeness") {
    CHECK(pseudo_free_check(make_forest()).verdict == PseudoFreeReport::Verdict::Holds);
    CHECK(pseudo_free_check(make_katsura()).verdict == PseudoFreeReport::Verdict::Holds);

    // z fixes both loops and restricts to itself, so it acts as the identity
    Graph g({"u"}, {{"e1", "u", "u"}, {"e2", "u", "u"}});
    SelfSimilarAction with_z(g, {{"a", 0, 0}, {"z", 0, 0}},
                             {{"a", "e1", "e2", {"u"}},
                              {"a", "e2", "e1", {"a"}},
                              {"z", "e1", "e1", {"z"}},
                              {"z", "e2", "e2", {"z"}}});
    auto rep = pseudo_free_check(with_z);
    CHECK(rep.verdict == PseudoFreeReport::Verdict::Fails);
    REQUIRE(rep.witness_word.has_value());
    CHECK(with_z.word_text(*rep.witness_word) == "z");
    REQUIRE(rep.witness_edge.has_value());
}

TEST_CASE("fixed path of a g-circuit") {
    auto a = make_forest();
    GCircuit c{word(a, "a"), path(a, "e3")};
    auto it = g_circuit_fixed_prefix(a, c, 3);
    CHECK(it.prefix == path(a, "e3.e6.e4"));
    REQUIRE(it.stages.size() == 3);
    CHECK(it.stages[0].first == path(a, "e3"));
    CHECK(a.word_text(it.stages[0].second) == "a");
    CHECK(it.stages[1].first == path(a, "e6"));
    CHECK(a.word_text(it.stages[1].second) == "b");
    CHECK(it.stages[2].first == path(a, "e4"));
    CHECK(a.word_text(it.stages[2].second) == "c");

    // the prefix is fixed by the circuit in the shifted sense:
    // g moves e3... to e6..., which the next stage extends
    CHECK_THROWS_AS(check_g_circuit(a, GCircuit{word(a, "a"), path(a, "e1")}), Error);

    GCircuit level2{word(a, "b.a"), path(a, "e3.e6")};
    // r(e3.e6) = u = d(ba), s = w = t(ba)
    CHECK_NOTHROW(check_g_circuit(a, level2));
}

}  // TEST_SUITE
