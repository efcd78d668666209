#include "selfsim/tables.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace selfsim {

namespace {

std::string bottom_key(const SelfSimilarAction& a, const Triple& c) {
    return path_to_string(a.graph(), c.bottom);
}

void sort_columns(const SelfSimilarAction& a, std::vector<Triple>& columns) {
    std::sort(columns.begin(), columns.end(), [&](const Triple& x, const Triple& y) {
        return bottom_key(a, x) < bottom_key(a, y);
    });
}

std::vector<Triple> split_children(const SelfSimilarAction& a, const Triple& c) {
    const Graph& g = a.graph();
    std::vector<Triple> out;
    for (EdgeId e : g.in_edges(c.bottom.s(g))) {
        auto [img, res] = a.act_restrict_edge(c.word, e);
        out.push_back(Triple{extend(g, c.top, img), res, extend(g, c.bottom, e)});
    }
    return out;
}

// Splits columns until the selected row consists of members of the target
// prefix code.  Terminates because the target refines the starting row.
std::vector<Triple> refine_row(const SelfSimilarAction& a, const std::vector<Triple>& columns,
                               const std::vector<Path>& target, bool by_top) {
    std::deque<Triple> work(columns.begin(), columns.end());
    std::vector<Triple> out;
    while (!work.empty()) {
        Triple c = work.front();
        work.pop_front();
        const Path& key = by_top ? c.top : c.bottom;
        bool needs_split = false;
        for (const Path& p : target) {
            if (key != p && key.is_prefix_of(p)) {
                needs_split = true;
                break;
            }
        }
        if (!needs_split) {
            out.push_back(std::move(c));
            continue;
        }
        for (Triple& child : split_children(a, c)) work.push_back(std::move(child));
    }
    return out;
}

}  // namespace

TableValidation validate_columns(const SelfSimilarAction& a, const std::vector<Triple>& columns) {
    const Graph& g = a.graph();
    if (columns.empty()) return {false, "a table needs at least one column", std::nullopt};
    for (int i = 0; i < static_cast<int>(columns.size()); ++i) {
        const Triple& c = columns[i];
        if (c.word.d() != c.bottom.s(g))
            return {false, "word domain does not match s(bottom)", i};
        if (c.word.t() != c.top.s(g))
            return {false, "word target does not match s(top)", i};
    }
    std::vector<Path> tops, bottoms;
    for (const Triple& c : columns) {
        tops.push_back(c.top);
        bottoms.push_back(c.bottom);
    }
    auto br = is_prefix_code(g, bottoms);
    if (!br.ok) {
        std::string msg = br.comparable_pair ? "bottom row has comparable paths "
                                             : "bottom row misses the cylinder of ";
        if (br.comparable_pair)
            msg += path_to_string(g, br.comparable_pair->first) + ", " +
                   path_to_string(g, br.comparable_pair->second);
        else
            msg += path_to_string(g, *br.uncovered);
        return {false, msg, std::nullopt};
    }
    auto tr = is_prefix_code(g, tops);
    if (!tr.ok) {
        std::string msg = tr.comparable_pair ? "top row has comparable paths "
                                             : "top row misses the cylinder of ";
        if (tr.comparable_pair)
            msg += path_to_string(g, tr.comparable_pair->first) + ", " +
                   path_to_string(g, tr.comparable_pair->second);
        else
            msg += path_to_string(g, *tr.uncovered);
        return {false, msg, std::nullopt};
    }
    return {true, "", std::nullopt};
}

GTable make_table(const SelfSimilarAction& a, std::vector<Triple> columns) {
    auto report = validate_columns(a, columns);
    if (!report.ok) {
        std::string where = report.column ? " (column " + std::to_string(*report.column) + ")" : "";
        throw Error("invalid table: " + report.message + where);
    }
    sort_columns(a, columns);
    return GTable{std::move(columns)};
}

GTable identity_table(const SelfSimilarAction& a) {
    std::vector<Triple> columns;
    for (VertexId v = 0; v < a.graph().vertex_count(); ++v)
        columns.push_back(Triple{Path::at_vertex(v), Word::unit(v), Path::at_vertex(v)});
    return make_table(a, std::move(columns));
}

GTable split_column(const SelfSimilarAction& a, const GTable& t, int i) {
    if (i < 0 || i >= static_cast<int>(t.columns.size()))
        throw Error("split_column: no column " + std::to_string(i));
    std::vector<Triple> columns;
    for (int j = 0; j < static_cast<int>(t.columns.size()); ++j) {
        if (j != i) {
            columns.push_back(t.columns[j]);
            continue;
        }
        for (Triple& child : split_children(a, t.columns[j])) columns.push_back(std::move(child));
    }
    return make_table(a, std::move(columns));
}

TableApply apply_table(const SelfSimilarAction& a, const GTable& t, const Path& mu) {
    const Graph& g = a.graph();
    bool below_some_bottom = false;
    for (const Triple& c : t.columns) {
        if (c.bottom.is_prefix_of(mu)) {
            Path nu = c.bottom.suffix_after(mu, g);
            auto [img, res] = a.act_restrict_path(c.word, nu);
            return TableApply{true, concat(g, c.top, img), res};
        }
        if (mu.is_prefix_of(c.bottom)) below_some_bottom = true;
    }
    if (below_some_bottom) return TableApply{false, {}, {}};
    throw Error("apply_table: path " + path_to_string(g, mu) + " not covered by the table");
}

GTable compose(const SelfSimilarAction& a, const GTable& t1, const GTable& t2) {
    const Graph& g = a.graph();
    std::vector<Path> inner_tops, outer_bottoms;
    for (const Triple& c : t2.columns) inner_tops.push_back(c.top);
    for (const Triple& c : t1.columns) outer_bottoms.push_back(c.bottom);
    std::vector<Path> meet = common_refinement(g, inner_tops, outer_bottoms);

    std::vector<Triple> inner = refine_row(a, t2.columns, meet, true);
    std::vector<Triple> outer = refine_row(a, t1.columns, meet, false);

    std::map<std::string, const Triple*> outer_by_bottom;
    for (const Triple& c : outer) outer_by_bottom[path_to_string(g, c.bottom)] = &c;

    std::vector<Triple> columns;
    for (const Triple& in : inner) {
        const Triple& out = *outer_by_bottom.at(path_to_string(g, in.top));
        columns.push_back(Triple{out.top, a.compose(out.word, in.word), in.bottom});
    }
    return make_table(a, std::move(columns));
}

GTable inverse_table(const SelfSimilarAction& a, const GTable& t) {
    std::vector<Triple> columns;
    for (const Triple& c : t.columns) columns.push_back(invert(c));
    return make_table(a, std::move(columns));
}

TableEq tables_equal(const SelfSimilarAction& a, const GTable& t1, const GTable& t2,
                     const Budget& budget) {
    const Graph& g = a.graph();
    GTable quotient = compose(a, t1, inverse_table(a, t2));
    bool differs = false;
    bool unknown = false;
    for (const Triple& c : quotient.columns) {
        if (c.top != c.bottom) {
            differs = true;
            continue;
        }
        Eq eq = element_equal(a, c.word, Word::unit(c.top.s(g)), budget).verdict;
        if (eq == Eq::NotEqual) differs = true;
        if (eq == Eq::Unknown) unknown = true;
    }
    if (!differs) return {unknown ? Eq::Unknown : Eq::Equal, std::nullopt};

    // Concrete witness by level search; both tables map every path once the
    // level passes their bottom rows.
    long long examined = 0;
    for (int k = 0; k <= budget.depth; ++k) {
        for (const Path& mu : paths_of_length(g, k)) {
            if (++examined > budget.max_states) return {Eq::NotEqual, std::nullopt};
            TableApply r1 = apply_table(a, t1, mu);
            TableApply r2 = apply_table(a, t2, mu);
            if (r1.mapped && r2.mapped && r1.image != r2.image) return {Eq::NotEqual, mu};
        }
    }
    return {Eq::NotEqual, std::nullopt};
}

Eq is_transposition(const SelfSimilarAction& a, const GTable& t, const Budget& budget) {
    return tables_equal(a, compose(a, t, t), identity_table(a), budget).verdict;
}

GTable from_plain_table(const SelfSimilarAction& a,
                        const std::vector<std::pair<Path, Path>>& rows) {
    const Graph& g = a.graph();
    std::vector<Triple> columns;
    for (const auto& [top, bottom] : rows) {
        if (top.s(g) != bottom.s(g))
            throw Error("plain table rows need s(top) = s(bottom); got " +
                        path_to_string(g, top) + " over " + path_to_string(g, bottom));
        columns.push_back(Triple{top, Word::unit(bottom.s(g)), bottom});
    }
    return make_table(a, std::move(columns));
}

std::string unitary_string(const SelfSimilarAction& a, const GTable& t) {
    const Graph& g = a.graph();
    auto sub = [](const std::string& s) { return s.size() == 1 ? s : "{" + s + "}"; };
    std::string out;
    for (const Triple& c : t.columns) {
        if (!out.empty()) out += " + ";
        out += "S_" + sub(path_to_string(g, c.top)) + " U_" + sub(a.word_text(c.word)) + " S_" +
               sub(path_to_string(g, c.bottom)) + "*";
    }
    return out;
}

GTable table_reduce(const SelfSimilarAction& a, const GTable& t, const Budget& budget) {
    const Graph& g = a.graph();
    std::vector<Word> candidates = contracting_closure(a, budget).automaton.states;

    std::vector<Triple> columns = t.columns;
    bool merged = true;
    while (merged) {
        merged = false;
        // Group bottoms by their parent path; a group is mergeable when it
        // covers every child of the parent and matches some candidate word.
        std::map<std::string, std::map<EdgeId, int>> groups;
        for (int i = 0; i < static_cast<int>(columns.size()); ++i) {
            const Path& b = columns[i].bottom;
            if (b.is_vertex()) continue;
            Path parent{b.root, std::vector<EdgeId>(b.edges.begin(), b.edges.end() - 1)};
            groups[path_to_string(g, parent)][b.edges.back()] = i;
        }
        for (auto& [parent_text, members] : groups) {
            Path parent = parse_path(g, parent_text);
            const std::vector<EdgeId>& kids = g.in_edges(parent.s(g));
            if (static_cast<int>(members.size()) != static_cast<int>(kids.size())) continue;

            const Triple& first = columns[members.begin()->second];
            if (first.top.is_vertex()) continue;
            Path alpha{first.top.root,
                       std::vector<EdgeId>(first.top.edges.begin(), first.top.edges.end() - 1)};

            std::optional<Word> found;
            for (const Word& w : candidates) {
                if (w.d() != parent.s(g) || w.t() != alpha.s(g)) continue;
                bool all = true;
                for (EdgeId e : kids) {
                    const Triple& c = columns[members.at(e)];
                    auto [img, res] = a.act_restrict_edge(w, e);
                    if (c.top != extend(g, alpha, img) ||
                        element_equal(a, c.word, res, budget).verdict != Eq::Equal) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    found = w;
                    break;
                }
            }
            if (!found) continue;

            std::set<int> drop;
            for (auto& [e, idx] : members) drop.insert(idx);
            std::vector<Triple> next;
            for (int i = 0; i < static_cast<int>(columns.size()); ++i)
                if (!drop.count(i)) next.push_back(columns[i]);
            next.push_back(Triple{alpha, *found, parent});
            columns = std::move(next);
            merged = true;
            break;
        }
    }
    return make_table(a, std::move(columns));
}

std::string table_text(const SelfSimilarAction& a, const GTable& t) {
    const Graph& g = a.graph();
    std::string out = "[";
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ", ";
        out += "(" + path_to_string(g, t.columns[i].top) + ", " + a.word_text(t.columns[i].word) +
               ", " + path_to_string(g, t.columns[i].bottom) + ")";
    }
    return out + "]";
}

}  // namespace selfsim
