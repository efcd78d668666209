#pragma once

#include <string>
#include <vector>

#include "selfsim/action.hpp"

namespace selfsim {

// Actions bundled into the binary, addressable as "builtin:<name>".

std::vector<std::string> corpus_names();

// The JSON source text of a bundled action; throws Error on unknown names.
const std::string& corpus_text(const std::string& name);

SelfSimilarAction corpus_action(const std::string& name);

}  // namespace selfsim
