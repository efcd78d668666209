#include "selfsim/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "selfsim/corpus.hpp"

namespace selfsim {

namespace {

using nlohmann::json;

const json& need(const json& doc, const char* key, const char* where) {
    if (!doc.is_object()) throw Error(std::string(where) + ": expected an object");
    auto it = doc.find(key);
    if (it == doc.end())
        throw Error(std::string(where) + ": missing key \"" + key + "\"");
    return *it;
}

std::string need_string(const json& doc, const char* key, const char* where) {
    const json& v = need(doc, key, where);
    if (!v.is_string())
        throw Error(std::string(where) + ": key \"" + key + "\" must be a string");
    return v.get<std::string>();
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || key == k;
        if (!ok) throw Error(std::string(where) + ": unknown key \"" + key + "\"");
    }
}

}  // namespace

Graph graph_from_json(const json& doc) {
    reject_unknown_keys(doc, {"vertices", "edges"}, "graph");
    const json& vs = need(doc, "vertices", "graph");
    const json& es = need(doc, "edges", "graph");
    if (!vs.is_array() || vs.empty()) throw Error("graph: \"vertices\" must be a nonempty array");
    if (!es.is_array()) throw Error("graph: \"edges\" must be an array");
    std::vector<std::string> vertices;
    for (const json& v : vs) {
        if (!v.is_string()) throw Error("graph: vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<Graph::EdgeSpec> edges;
    for (const json& e : es) {
        reject_unknown_keys(e, {"name", "range", "source"}, "graph edge");
        edges.push_back({need_string(e, "name", "graph edge"),
                         need_string(e, "range", "graph edge"),
                         need_string(e, "source", "graph edge")});
    }
    return Graph(std::move(vertices), std::move(edges));
}

json graph_to_json(const Graph& g) {
    json vs = json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) vs.push_back(g.vertex_name(v));
    json es = json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        es.push_back({{"name", g.edge_name(e)},
                      {"range", g.vertex_name(g.r(e))},
                      {"source", g.vertex_name(g.s(e))}});
    }
    return {{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

SelfSimilarAction action_from_json(const json& doc) {
    reject_unknown_keys(doc, {"graph", "generators", "rules"}, "action");
    Graph g = graph_from_json(need(doc, "graph", "action"));

    const json& gens_doc = need(doc, "generators", "action");
    if (!gens_doc.is_array()) throw Error("action: \"generators\" must be an array");
    std::vector<Generator> gens;
    std::set<std::string> gen_names;
    for (const json& item : gens_doc) {
        reject_unknown_keys(item, {"name", "d", "t"}, "generator");
        Generator gen;
        gen.name = need_string(item, "name", "generator");
        std::string d = need_string(item, "d", "generator");
        std::string t = need_string(item, "t", "generator");
        auto dv = g.find_vertex(d);
        auto tv = g.find_vertex(t);
        if (!dv) throw Error("generator \"" + gen.name + "\": unknown vertex \"" + d + "\"");
        if (!tv) throw Error("generator \"" + gen.name + "\": unknown vertex \"" + t + "\"");
        gen.d = *dv;
        gen.t = *tv;
        gen_names.insert(gen.name);
        gens.push_back(std::move(gen));
    }

    const json& rules_doc = need(doc, "rules", "action");
    if (!rules_doc.is_array()) throw Error("action: \"rules\" must be an array");
    std::vector<RuleSpec> rules;
    for (const json& item : rules_doc) {
        reject_unknown_keys(item, {"generator", "edge", "image", "restriction"}, "rule");
        RuleSpec rule;
        rule.generator = need_string(item, "generator", "rule");
        if (!gen_names.count(rule.generator)) {
            if (rule.generator.size() > 3 &&
                rule.generator.substr(rule.generator.size() - 3) == "^-1")
                throw Error("rule for \"" + rule.generator +
                            "\": inverse rules are derived automatically and must not appear");
            if (g.find_vertex(rule.generator))
                throw Error("rule for \"" + rule.generator +
                            "\": unit rules are derived automatically and must not appear");
            throw Error("rule for unknown generator \"" + rule.generator + "\"");
        }
        rule.edge = need_string(item, "edge", "rule");
        rule.image = need_string(item, "image", "rule");
        const json& restriction = need(item, "restriction", "rule");
        if (!restriction.is_array())
            throw Error("rule for \"" + rule.generator + "\": \"restriction\" must be an array");
        for (const json& token : restriction) {
            if (!token.is_string())
                throw Error("rule for \"" + rule.generator + "\": word tokens must be strings");
            rule.restriction.push_back(token.get<std::string>());
        }
        rules.push_back(std::move(rule));
    }
    return SelfSimilarAction(std::move(g), std::move(gens), rules);
}

json action_to_json(const SelfSimilarAction& a) {
    const Graph& g = a.graph();
    json gens = json::array();
    for (const Generator& gen : a.generators()) {
        gens.push_back({{"name", gen.name},
                        {"d", g.vertex_name(gen.d)},
                        {"t", g.vertex_name(gen.t)}});
    }
    json rules = json::array();
    for (std::size_t gi = 0; gi < a.generators().size(); ++gi) {
        const Generator& gen = a.generators()[gi];
        for (EdgeId e : g.in_edges(gen.d)) {
            Token tok{static_cast<int>(gi), false};
            json tokens = word_to_json(a, a.token_restrict(tok, e));
            rules.push_back({{"generator", gen.name},
                             {"edge", g.edge_name(e)},
                             {"image", g.edge_name(a.token_act(tok, e))},
                             {"restriction", std::move(tokens)}});
        }
    }
    return {{"graph", graph_to_json(g)},
            {"generators", std::move(gens)},
            {"rules", std::move(rules)}};
}

Word word_from_json(const SelfSimilarAction& a, const json& doc) {
    if (!doc.is_array()) throw Error("word: expected an array of tokens");
    std::vector<std::string> names;
    for (const json& token : doc) {
        if (!token.is_string()) throw Error("word: tokens must be strings");
        names.push_back(token.get<std::string>());
    }
    return a.word_from_token_names(names);
}

json word_to_json(const SelfSimilarAction& a, const Word& w) {
    json out = json::array();
    if (w.is_unit_word()) {
        out.push_back(a.graph().vertex_name(w.d()));
        return out;
    }
    for (const Token& tok : w.tokens()) {
        std::string name = a.generators()[tok.gen].name;
        if (tok.inv) name += "^-1";
        out.push_back(std::move(name));
    }
    return out;
}

GTable table_from_json(const SelfSimilarAction& a, const json& doc) {
    reject_unknown_keys(doc, {"columns"}, "table");
    const json& cols = need(doc, "columns", "table");
    if (!cols.is_array()) throw Error("table: \"columns\" must be an array");
    std::vector<Triple> columns;
    for (const json& col : cols) {
        reject_unknown_keys(col, {"top", "word", "bottom"}, "table column");
        Path top = parse_path(a.graph(), need_string(col, "top", "table column"));
        Path bottom = parse_path(a.graph(), need_string(col, "bottom", "table column"));
        Word word = word_from_json(a, need(col, "word", "table column"));
        columns.push_back(make_triple(a, std::move(top), std::move(word), std::move(bottom)));
    }
    return make_table(a, std::move(columns));
}

json table_to_json(const SelfSimilarAction& a, const GTable& t) {
    json cols = json::array();
    for (const Triple& col : t.columns) {
        cols.push_back({{"top", path_to_string(a.graph(), col.top)},
                        {"word", word_to_json(a, col.word)},
                        {"bottom", path_to_string(a.graph(), col.bottom)}});
    }
    return {{"columns", std::move(cols)}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open \"" + path + "\"");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("\"" + path + "\": " + e.what());
    }
    return doc;
}

SelfSimilarAction load_action(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return corpus_action(ref.substr(8));
    return action_from_json(load_json_file(ref));
}

GTable load_table(const SelfSimilarAction& a, const std::string& path) {
    return table_from_json(a, load_json_file(path));
}

std::string dump_json(const json& doc) {
    return doc.dump(2) + "\n";
}

}  // namespace selfsim
