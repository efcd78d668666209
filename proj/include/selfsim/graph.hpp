#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace selfsim {

struct Error : std::exception {
    std::string message;
    explicit Error(std::string m) : message(std::move(m)) {}
    const char* what() const noexcept override { return message.c_str(); }
};

using VertexId = int;
using EdgeId = int;

// Finite directed graph E = (E^0, E^1, r, s).  Edges point from s(e) to r(e).
// Every vertex must receive at least one edge (vE^1 = {e : r(e) = v} nonempty),
// so the path space below each vertex is an infinite rooted tree.
class Graph {
public:
    struct EdgeSpec {
        std::string name;
        std::string range;
        std::string source;
    };

    Graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edge_names_.size()); }

    const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
    const std::string& edge_name(EdgeId e) const { return edge_names_.at(e); }

    VertexId vertex(const std::string& name) const;
    EdgeId edge(const std::string& name) const;
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;

    VertexId r(EdgeId e) const { return range_.at(e); }
    VertexId s(EdgeId e) const { return source_.at(e); }

    // vE^1, the edges ending at v, in document order.
    const std::vector<EdgeId>& in_edges(VertexId v) const { return in_edges_.at(v); }

    // A[v][w] = #{e : r(e) = v, s(e) = w}
    std::vector<std::vector<long long>> adjacency_matrix() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> edge_names_;
    std::vector<VertexId> range_;
    std::vector<VertexId> source_;
    std::vector<std::vector<EdgeId>> in_edges_;
};

// Finite path e1 e2 ... ek with r(e_{i+1}) = s(e_i); r(path) = r(e1),
// s(path) = s(ek).  Length zero paths are vertices; the root field keeps
// them distinguishable, and for nonempty paths root = r(e1) always holds.
struct Path {
    VertexId root = 0;
    std::vector<EdgeId> edges;

    static Path at_vertex(VertexId v) { return Path{v, {}}; }

    int length() const { return static_cast<int>(edges.size()); }
    bool is_vertex() const { return edges.empty(); }

    VertexId r() const { return root; }
    VertexId s(const Graph& g) const { return edges.empty() ? root : g.s(edges.back()); }

    bool operator==(const Path& o) const { return root == o.root && edges == o.edges; }
    bool operator!=(const Path& o) const { return !(*this == o); }
    bool operator<(const Path& o) const {
        if (root != o.root) return root < o.root;
        return edges < o.edges;
    }

    bool is_prefix_of(const Path& o) const;
    bool comparable(const Path& o) const { return is_prefix_of(o) || o.is_prefix_of(*this); }

    // The path with the first |this| edges of o removed; requires is_prefix_of(o).
    Path suffix_after(const Path& o, const Graph& g) const;
};

Path make_path(const Graph& g, VertexId root, std::vector<EdgeId> edges);
Path concat(const Graph& g, const Path& a, const Path& b);      // requires s(a) = r(b)
Path extend(const Graph& g, const Path& p, EdgeId e);           // requires r(e) = s(p)

// All paths of length k, or only those with r(path) = at, level by level in
// edge-index order.
std::vector<Path> paths_of_length(const Graph& g, int k, std::optional<VertexId> at = std::nullopt);

// Full children of p: {pe : e in s(p)E^1}.  Nonempty by the no-source invariant.
std::vector<Path> children(const Graph& g, const Path& p);

struct PrefixCodeReport {
    bool ok = false;
    // Exactly one of these is set on failure.
    std::optional<std::pair<Path, Path>> comparable_pair;
    std::optional<Path> uncovered;
};

// A finite set of paths is a prefix code when the cylinders Z(p) partition the
// infinite path space: pairwise incomparable and, at depth L = max length,
// every path of length L has exactly one element as a prefix.
PrefixCodeReport is_prefix_code(const Graph& g, const std::vector<Path>& paths);

// Minimal paths having a prefix in a and a prefix in b.  For prefix codes the
// result is again a prefix code, reachable from each input by repeated
// full-children splitting.
std::vector<Path> common_refinement(const Graph& g, const std::vector<Path>& a,
                                    const std::vector<Path>& b);

struct CircuitCheck {
    bool every_circuit_has_entry = true;
    std::optional<Path> witness;  // an entry-free circuit when the check fails
};

// A circuit is a path with s = r, length >= 1; an entry is a vertex on it
// receiving at least two edges.  Cantor-ness of the boundary hangs on this.
CircuitCheck circuits_with_entry_check(const Graph& g);

std::string path_to_string(const Graph& g, const Path& p);
Path parse_path(const Graph& g, const std::string& text);

}  // namespace selfsim
