#pragma once

#include <string>

#include "json.hpp"
#include "selfsim/action.hpp"
#include "selfsim/tables.hpp"

namespace selfsim {

// JSON document layer.  All parsers throw Error with the offending field in
// the message.  Serializers produce documents the parsers accept unchanged.

Graph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const Graph& g);

// Action documents never carry unit or inverse rules; those are derived.
SelfSimilarAction action_from_json(const nlohmann::json& doc);
nlohmann::json action_to_json(const SelfSimilarAction& a);

// Words are arrays of tokens, outermost first: generator name, generator
// name + "^-1", or a vertex name for a unit.
Word word_from_json(const SelfSimilarAction& a, const nlohmann::json& doc);
nlohmann::json word_to_json(const SelfSimilarAction& a, const Word& w);

GTable table_from_json(const SelfSimilarAction& a, const nlohmann::json& doc);
nlohmann::json table_to_json(const SelfSimilarAction& a, const GTable& t);

nlohmann::json load_json_file(const std::string& path);

// "builtin:<name>" resolves through the bundled corpus, anything else is a
// file path.
SelfSimilarAction load_action(const std::string& ref);
GTable load_table(const SelfSimilarAction& a, const std::string& path);

// Canonical text form: two-space indent, keys sorted, trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace selfsim
