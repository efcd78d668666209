#include "selfsim/corpus.hpp"

#include <map>

#include "json.hpp"
#include "selfsim/io.hpp"

namespace selfsim {

namespace {

// A three vertex graph whose boundary action is generated by one tree
// isomorphism split into three partial pieces a, b, c.
const std::string kForest = R"({
  "graph": {
    "vertices": ["u", "v", "w"],
    "edges": [
      {"name": "e1", "range": "u", "source": "u"},
      {"name": "e2", "range": "v", "source": "u"},
      {"name": "e3", "range": "u", "source": "v"},
      {"name": "e4", "range": "w", "source": "v"},
      {"name": "e5", "range": "w", "source": "v"},
      {"name": "e6", "range": "v", "source": "w"}
    ]
  },
  "generators": [
    {"name": "a", "d": "u", "t": "v"},
    {"name": "b", "d": "v", "t": "w"},
    {"name": "c", "d": "w", "t": "v"}
  ],
  "rules": [
    {"generator": "a", "edge": "e1", "image": "e2", "restriction": ["u"]},
    {"generator": "a", "edge": "e3", "image": "e6", "restriction": ["b"]},
    {"generator": "b", "edge": "e2", "image": "e5", "restriction": ["a"]},
    {"generator": "b", "edge": "e6", "image": "e4", "restriction": ["c"]},
    {"generator": "c", "edge": "e4", "image": "e2", "restriction": ["a^-1"]},
    {"generator": "c", "edge": "e5", "image": "e6", "restriction": ["b"]}
  ]
})";

// Lamplighter-flavored wreath recursion on a two vertex graph.
const std::string kLamplighter = R"({
  "graph": {
    "vertices": ["u", "v"],
    "edges": [
      {"name": "e1", "range": "u", "source": "u"},
      {"name": "e2", "range": "u", "source": "u"},
      {"name": "e3", "range": "v", "source": "u"},
      {"name": "e4", "range": "v", "source": "v"}
    ]
  },
  "generators": [
    {"name": "a", "d": "u", "t": "u"},
    {"name": "b", "d": "u", "t": "u"},
    {"name": "c", "d": "u", "t": "v"}
  ],
  "rules": [
    {"generator": "a", "edge": "e1", "image": "e2", "restriction": ["b"]},
    {"generator": "a", "edge": "e2", "image": "e1", "restriction": ["a"]},
    {"generator": "b", "edge": "e1", "image": "e1", "restriction": ["b"]},
    {"generator": "b", "edge": "e2", "image": "e2", "restriction": ["a"]},
    {"generator": "c", "edge": "e1", "image": "e3", "restriction": ["a"]},
    {"generator": "c", "edge": "e2", "image": "e4", "restriction": ["c"]}
  ]
})";

// Group bundle over two vertices; both generators are vertex loops.
const std::string kKatsura = R"({
  "graph": {
    "vertices": ["u", "v"],
    "edges": [
      {"name": "e1", "range": "u", "source": "u"},
      {"name": "e2", "range": "u", "source": "u"},
      {"name": "e3", "range": "u", "source": "v"},
      {"name": "e4", "range": "v", "source": "u"},
      {"name": "e5", "range": "v", "source": "u"},
      {"name": "e6", "range": "v", "source": "v"},
      {"name": "e7", "range": "v", "source": "v"}
    ]
  },
  "generators": [
    {"name": "a", "d": "u", "t": "u"},
    {"name": "b", "d": "v", "t": "v"}
  ],
  "rules": [
    {"generator": "a", "edge": "e1", "image": "e2", "restriction": ["u"]},
    {"generator": "a", "edge": "e2", "image": "e1", "restriction": ["a"]},
    {"generator": "a", "edge": "e3", "image": "e3", "restriction": ["v"]},
    {"generator": "b", "edge": "e4", "image": "e4", "restriction": ["a"]},
    {"generator": "b", "edge": "e5", "image": "e5", "restriction": ["a"]},
    {"generator": "b", "edge": "e6", "image": "e7", "restriction": ["v"]},
    {"generator": "b", "edge": "e7", "image": "e6", "restriction": ["b"]}
  ]
})";

// Small action with a six element nucleus.
const std::string kNucleus = R"({
  "graph": {
    "vertices": ["u", "v"],
    "edges": [
      {"name": "e1", "range": "u", "source": "u"},
      {"name": "e2", "range": "u", "source": "v"},
      {"name": "e3", "range": "v", "source": "u"},
      {"name": "e4", "range": "v", "source": "u"}
    ]
  },
  "generators": [
    {"name": "a", "d": "u", "t": "v"},
    {"name": "b", "d": "v", "t": "u"}
  ],
  "rules": [
    {"generator": "a", "edge": "e1", "image": "e4", "restriction": ["u"]},
    {"generator": "a", "edge": "e2", "image": "e3", "restriction": ["b"]},
    {"generator": "b", "edge": "e3", "image": "e1", "restriction": ["u"]},
    {"generator": "b", "edge": "e4", "image": "e2", "restriction": ["a"]}
  ]
})";

const std::map<std::string, const std::string*>& registry() {
    static const std::map<std::string, const std::string*> r = {
        {"forest", &kForest},
        {"lamplighter", &kLamplighter},
        {"katsura", &kKatsura},
        {"nucleus", &kNucleus},
    };
    return r;
}

}  // namespace

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& [name, text] : registry()) out.push_back(name);
    return out;
}

const std::string& corpus_text(const std::string& name) {
    const auto& r = registry();
    auto it = r.find(name);
    if (it == r.end()) {
        std::string known;
        for (const auto& [n, t] : r) known += (known.empty() ? "" : ", ") + n;
        throw Error("unknown builtin \"" + name + "\" (have: " + known + ")");
    }
    return *it->second;
}

SelfSimilarAction corpus_action(const std::string& name) {
    return action_from_json(nlohmann::json::parse(corpus_text(name)));
}

}  // namespace selfsim
