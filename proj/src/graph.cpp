#include "selfsim/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace selfsim {

Graph::Graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
    : vertex_names_(std::move(vertices)) {
    if (vertex_names_.empty()) throw Error("graph needs at least one vertex");
    std::set<std::string> seen;
    for (const auto& v : vertex_names_) {
        if (v.empty()) throw Error("empty vertex name");
        if (!seen.insert(v).second) throw Error("duplicate vertex name: " + v);
    }
    in_edges_.resize(vertex_names_.size());
    for (const auto& e : edges) {
        if (e.name.empty()) throw Error("empty edge name");
        if (!seen.insert(e.name).second)
            throw Error("edge name collides with an existing name: " + e.name);
        auto rv = find_vertex(e.range);
        auto sv = find_vertex(e.source);
        if (!rv) throw Error("edge " + e.name + " has unknown range vertex: " + e.range);
        if (!sv) throw Error("edge " + e.name + " has unknown source vertex: " + e.source);
        EdgeId id = static_cast<EdgeId>(edge_names_.size());
        edge_names_.push_back(e.name);
        range_.push_back(*rv);
        source_.push_back(*sv);
        in_edges_[*rv].push_back(id);
    }
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (in_edges_[v].empty())
            throw Error("vertex " + vertex_names_[v] + " is a source (receives no edge)");
    }
}

std::optional<VertexId> Graph::find_vertex(const std::string& name) const {
    for (VertexId v = 0; v < vertex_count(); ++v)
        if (vertex_names_[v] == name) return v;
    return std::nullopt;
}

std::optional<EdgeId> Graph::find_edge(const std::string& name) const {
    for (EdgeId e = 0; e < edge_count(); ++e)
        if (edge_names_[e] == name) return e;
    return std::nullopt;
}

VertexId Graph::vertex(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw Error("unknown vertex: " + name);
    return *v;
}

EdgeId Graph::edge(const std::string& name) const {
    auto e = find_edge(name);
    if (!e) throw Error("unknown edge: " + name);
    return *e;
}

std::vector<std::vector<long long>> Graph::adjacency_matrix() const {
    std::vector<std::vector<long long>> a(vertex_count(),
                                          std::vector<long long>(vertex_count(), 0));
    for (EdgeId e = 0; e < edge_count(); ++e) a[range_[e]][source_[e]] += 1;
    return a;
}

bool Path::is_prefix_of(const Path& o) const {
    if (root != o.root) return false;
    if (edges.size() > o.edges.size()) return false;
    return std::equal(edges.begin(), edges.end(), o.edges.begin());
}

Path Path::suffix_after(const Path& o, const Graph& g) const {
    if (!is_prefix_of(o)) throw Error("suffix_after: not a prefix");
    Path rest;
    rest.root = s(g);
    rest.edges.assign(o.edges.begin() + length(), o.edges.end());
    return rest;
}

Path make_path(const Graph& g, VertexId root, std::vector<EdgeId> edges) {
    if (root < 0 || root >= g.vertex_count()) throw Error("make_path: bad root vertex");
    VertexId cur = root;
    for (EdgeId e : edges) {
        if (e < 0 || e >= g.edge_count()) throw Error("make_path: bad edge id");
        if (g.r(e) != cur)
            throw Error("make_path: edge " + g.edge_name(e) + " does not compose at " +
                        g.vertex_name(cur));
        cur = g.s(e);
    }
    return Path{root, std::move(edges)};
}

Path concat(const Graph& g, const Path& a, const Path& b) {
    if (a.s(g) != b.r()) throw Error("concat: s(a) != r(b)");
    Path out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

Path extend(const Graph& g, const Path& p, EdgeId e) {
    if (g.r(e) != p.s(g)) throw Error("extend: edge does not continue the path");
    Path out = p;
    out.edges.push_back(e);
    return out;
}

std::vector<Path> paths_of_length(const Graph& g, int k, std::optional<VertexId> at) {
    if (k < 0) throw Error("paths_of_length: negative length");
    std::vector<Path> level;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!at || *at == v) level.push_back(Path::at_vertex(v));
    for (int i = 0; i < k; ++i) {
        std::vector<Path> next;
        for (const auto& p : level)
            for (EdgeId e : g.in_edges(p.s(g))) next.push_back(extend(g, p, e));
        level = std::move(next);
    }
    return level;
}

std::vector<Path> children(const Graph& g, const Path& p) {
    std::vector<Path> out;
    for (EdgeId e : g.in_edges(p.s(g))) out.push_back(extend(g, p, e));
    return out;
}

PrefixCodeReport is_prefix_code(const Graph& g, const std::vector<Path>& paths) {
    PrefixCodeReport rep;
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t j = i + 1; j < paths.size(); ++j)
            if (paths[i].comparable(paths[j])) {
                rep.comparable_pair = {paths[i], paths[j]};
                return rep;
            }
    int max_len = 0;
    for (const auto& p : paths) max_len = std::max(max_len, p.length());
    // Exhaustive completeness at the deepest code level.
    for (const auto& q : paths_of_length(g, max_len)) {
        int covers = 0;
        for (const auto& p : paths)
            if (p.is_prefix_of(q)) ++covers;
        if (covers != 1) {
            rep.uncovered = q;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

std::vector<Path> common_refinement(const Graph& g, const std::vector<Path>& a,
                                    const std::vector<Path>& b) {
    (void)g;
    std::vector<Path> out;
    for (const auto& p : a)
        for (const auto& q : b) {
            if (p.is_prefix_of(q))
                out.push_back(q);
            else if (q.is_prefix_of(p))
                out.push_back(p);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CircuitCheck circuits_with_entry_check(const Graph& g) {
    CircuitCheck out;
    // An entry-free circuit lives entirely on vertices with a single incoming
    // edge, where walking backwards along that edge is deterministic.
    std::vector<int> state(g.vertex_count(), 0);  // 0 unseen, 1 on stack, 2 done
    for (VertexId start = 0; start < g.vertex_count(); ++start) {
        if (state[start] != 0 || g.in_edges(start).size() != 1) continue;
        std::vector<VertexId> stack;
        VertexId cur = start;
        while (true) {
            if (g.in_edges(cur).size() != 1 || state[cur] == 2) {
                for (VertexId v : stack) state[v] = 2;
                break;
            }
            if (state[cur] == 1) {
                // Found a cycle; assemble the circuit path from cur back to cur.
                std::vector<EdgeId> edges;
                VertexId v = cur;
                do {
                    EdgeId e = g.in_edges(v).front();
                    edges.push_back(e);
                    v = g.s(e);
                } while (v != cur);
                out.every_circuit_has_entry = false;
                out.witness = make_path(g, cur, edges);
                return out;
            }
            state[cur] = 1;
            stack.push_back(cur);
            cur = g.s(g.in_edges(cur).front());
        }
    }
    return out;
}

std::string path_to_string(const Graph& g, const Path& p) {
    if (p.is_vertex()) return g.vertex_name(p.root);
    std::string out;
    for (size_t i = 0; i < p.edges.size(); ++i) {
        if (i) out += '.';
        out += g.edge_name(p.edges[i]);
    }
    return out;
}

Path parse_path(const Graph& g, const std::string& text) {
    if (text.empty()) throw Error("empty path text");
    if (auto v = g.find_vertex(text)) return Path::at_vertex(*v);
    std::vector<EdgeId> edges;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
        if (tok.empty()) throw Error("bad path text: " + text);
        auto e = g.find_edge(tok);
        if (!e) throw Error("unknown edge in path: " + tok);
        edges.push_back(*e);
    }
    if (edges.empty()) throw Error("bad path text: " + text);
    VertexId root = g.r(edges.front());
    return make_path(g, root, std::move(edges));
}

}  // namespace selfsim
