#include "selfsim/homology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

namespace selfsim {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Pair2 make_pair2(const Triple& x, const Triple& y) {
    if (x.bottom != y.top) throw Error("pair of bisections must be composable: x.bottom != y.top");
    return Pair2{x, y};
}

void chain_add(Chain0& c, const Path& p, long long k) {
    if (k == 0) return;
    auto it = c.find(p);
    if (it == c.end()) {
        c.emplace(p, k);
        return;
    }
    it->second += k;
    if (it->second == 0) c.erase(it);
}

void chain_add(Chain1& c, const Triple& t, long long k) {
    if (k == 0) return;
    auto it = c.find(t);
    if (it == c.end()) {
        c.emplace(t, k);
        return;
    }
    it->second += k;
    if (it->second == 0) c.erase(it);
}

void chain_add(Chain2& c, const Pair2& p, long long k) {
    if (k == 0) return;
    auto it = c.find(p);
    if (it == c.end()) {
        c.emplace(p, k);
        return;
    }
    it->second += k;
    if (it->second == 0) c.erase(it);
}

Chain0 delta1(const Chain1& c) {
    Chain0 out;
    for (const auto& [t, k] : c) {
        chain_add(out, t.bottom, k);
        chain_add(out, t.top, -k);
    }
    return out;
}

Chain1 delta2(const SelfSimilarAction& a, const Chain2& c) {
    Chain1 out;
    for (const auto& [p, k] : c) {
        chain_add(out, p.y, k);
        chain_add(out, Triple{p.x.top, a.compose(p.x.word, p.y.word), p.y.bottom}, -k);
        chain_add(out, p.x, k);
    }
    return out;
}

Chain0 normalize_to_level(const SelfSimilarAction& a, const Chain0& c, int n) {
    const Graph& g = a.graph();
    Chain0 out;
    for (const auto& [p, k] : c) {
        if (p.length() > n)
            throw Error("normalize_to_level: support " + path_to_string(g, p) +
                        " deeper than level " + std::to_string(n));
        std::deque<Path> work{p};
        while (!work.empty()) {
            Path q = work.front();
            work.pop_front();
            if (q.length() == n) {
                chain_add(out, q, k);
                continue;
            }
            for (EdgeId e : g.in_edges(q.s(g))) work.push_back(extend(g, q, e));
        }
    }
    return out;
}

Chain1 normalize_to_level(const SelfSimilarAction& a, const Chain1& c, int n) {
    const Graph& g = a.graph();
    Chain1 out;
    for (const auto& [t, k] : c) {
        if (t.bottom.length() > n)
            throw Error("normalize_to_level: support " + triple_text(a, t) +
                        " deeper than level " + std::to_string(n));
        std::deque<Triple> work{t};
        while (!work.empty()) {
            Triple x = work.front();
            work.pop_front();
            if (x.bottom.length() == n) {
                chain_add(out, x, k);
                continue;
            }
            for (EdgeId e : g.in_edges(x.bottom.s(g)))
                work.push_back(extend_triple(a, x, Path{g.r(e), {e}}));
        }
    }
    return out;
}

std::vector<int> vertex_orbit_classes(const SelfSimilarAction& a) {
    int n = a.graph().vertex_count();
    Dsu dsu(n);
    for (const Generator& gen : a.generators()) dsu.unite(gen.d, gen.t);
    std::vector<int> out(n, -1);
    int next = 0;
    for (VertexId v = 0; v < n; ++v) {
        int root = dsu.find(v);
        if (out[root] < 0) out[root] = next++;
        out[v] = out[root];
    }
    return out;
}

namespace {

struct SparsePresentation {
    std::vector<Path> gens;
    std::vector<std::vector<std::pair<int, long long>>> rel_cols;
};

SparsePresentation build_presentation(const SelfSimilarAction& a, int n, bool kernel_only) {
    const Graph& g = a.graph();
    const std::vector<int> cls = vertex_orbit_classes(a);
    SparsePresentation p;
    int from = kernel_only ? n : 0;
    for (int k = from; k <= n; ++k)
        for (Path& q : paths_of_length(g, k)) p.gens.push_back(std::move(q));

    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(p.gens.size()); ++i)
        index[path_to_string(g, p.gens[i])] = i;

    if (!kernel_only) {
        for (int i = 0; i < static_cast<int>(p.gens.size()); ++i) {
            const Path& q = p.gens[i];
            if (q.length() >= n) continue;
            std::vector<std::pair<int, long long>> col{{i, 1}};
            for (EdgeId e : g.in_edges(q.s(g)))
                col.emplace_back(index.at(path_to_string(g, extend(g, q, e))), -1);
            p.rel_cols.push_back(std::move(col));
        }
    }

    std::map<int, int> rep;  // orbit class -> representative generator
    for (int i = 0; i < static_cast<int>(p.gens.size()); ++i) {
        int c = cls[p.gens[i].s(g)];
        auto it = rep.find(c);
        if (it == rep.end()) {
            rep.emplace(c, i);
            continue;
        }
        p.rel_cols.push_back({{i, 1}, {it->second, -1}});
    }
    return p;
}

IntMat to_matrix(int rows, const std::vector<std::vector<std::pair<int, long long>>>& cols) {
    IntMat m(rows, std::vector<mpz_class>(cols.size(), 0));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (const auto& [i, v] : cols[j]) m[i][j] += static_cast<long>(v);
    return m;
}

std::vector<std::vector<VertexId>> realized_classes(const Graph& g, const std::vector<int>& cls,
                                                    const std::vector<Path>& gens) {
    std::set<VertexId> seen;
    for (const Path& p : gens) seen.insert(p.s(g));
    std::map<int, std::vector<VertexId>> by_class;
    for (VertexId v : seen) by_class[cls[v]].push_back(v);
    std::vector<std::vector<VertexId>> out;
    for (auto& [c, members] : by_class) out.push_back(std::move(members));
    return out;
}

}  // namespace

H0Presentation h0_truncated(const SelfSimilarAction& a, int n, bool kernel_only) {
    if (n < 0) throw Error("h0_truncated: negative level");
    const Graph& g = a.graph();
    const std::vector<int> cls = vertex_orbit_classes(a);

    H0Presentation out;
    out.level = n;
    out.kernel_only = kernel_only;

    SparsePresentation cur = build_presentation(a, n, kernel_only);
    SparsePresentation nxt = build_presentation(a, n + 1, kernel_only);
    out.generators = cur.gens;
    out.relations = to_matrix(static_cast<int>(cur.gens.size()), cur.rel_cols);

    CokernelForm here = cokernel(out.relations);
    out.invariant_factors = here.torsion;
    out.free_rank = here.free_rank;

    // The level map sends x_alpha to itself (full variant: the generator set
    // only grows) or to the sum of its children (kernel variant).  The two
    // truncations are isomorphic groups and the map is onto, hence an
    // isomorphism; "stabilized" asserts exactly that.
    std::map<std::string, int> nxt_index;
    for (int i = 0; i < static_cast<int>(nxt.gens.size()); ++i)
        nxt_index[path_to_string(g, nxt.gens[i])] = i;
    std::vector<std::vector<std::pair<int, long long>>> combined;
    for (const Path& q : cur.gens) {
        std::vector<std::pair<int, long long>> col;
        if (kernel_only) {
            for (EdgeId e : g.in_edges(q.s(g)))
                col.emplace_back(nxt_index.at(path_to_string(g, extend(g, q, e))), 1);
        } else {
            col.emplace_back(nxt_index.at(path_to_string(g, q)), 1);
        }
        combined.push_back(std::move(col));
    }
    for (const auto& col : nxt.rel_cols) combined.push_back(col);
    CokernelForm there = cokernel(to_matrix(static_cast<int>(nxt.gens.size()), nxt.rel_cols));
    bool iso = here.torsion == there.torsion && here.free_rank == there.free_rank;
    bool onto = cokernel(to_matrix(static_cast<int>(nxt.gens.size()), combined)).trivial();
    out.stabilized = iso && onto;

    if (kernel_only) {
        out.classes = realized_classes(g, cls, cur.gens);
        out.next_classes = realized_classes(g, cls, nxt.gens);
        std::map<int, int> next_pos;
        for (int i = 0; i < static_cast<int>(out.next_classes.size()); ++i)
            next_pos[cls[out.next_classes[i].front()]] = i;
        out.colimit = IntMat(out.next_classes.size(),
                             std::vector<mpz_class>(out.classes.size(), 0));
        for (int c = 0; c < static_cast<int>(out.classes.size()); ++c) {
            bool first = true;
            for (VertexId v : out.classes[c]) {
                std::vector<mpz_class> counts(out.next_classes.size(), 0);
                for (EdgeId e : g.in_edges(v)) {
                    auto it = next_pos.find(cls[g.s(e)]);
                    if (it == next_pos.end()) {
                        out.colimit_well_defined = false;
                        continue;
                    }
                    counts[it->second] += 1;
                }
                if (first) {
                    for (int d = 0; d < static_cast<int>(counts.size()); ++d)
                        out.colimit[d][c] = counts[d];
                    first = false;
                } else {
                    for (int d = 0; d < static_cast<int>(counts.size()); ++d)
                        if (out.colimit[d][c] != counts[d]) out.colimit_well_defined = false;
                }
            }
        }
    }
    return out;
}

namespace {

struct Sampler {
    std::mt19937_64 eng;
    explicit Sampler(uint64_t seed) : eng(seed) {}
    int pick(int n) { return n <= 0 ? 0 : static_cast<int>(eng() % static_cast<uint64_t>(n)); }
};

Word sample_word(const SelfSimilarAction& a, Sampler& s, int len,
                 std::optional<VertexId> d_at = std::nullopt) {
    VertexId cur = d_at ? *d_at : s.pick(a.graph().vertex_count());
    std::vector<Token> chain;
    for (int i = 0; i < len; ++i) {
        std::vector<Token> options;
        for (int gi = 0; gi < static_cast<int>(a.generators().size()); ++gi) {
            if (a.generators()[gi].d == cur) options.push_back({gi, false});
            if (a.generators()[gi].t == cur) options.push_back({gi, true});
        }
        if (options.empty()) break;
        Token t = options[s.pick(static_cast<int>(options.size()))];
        chain.push_back(t);
        cur = a.token_t(t);
    }
    std::reverse(chain.begin(), chain.end());
    return a.word_from_tokens(chain, d_at ? *d_at : cur);
}

Word sample_word_between(const SelfSimilarAction& a, Sampler& s, int len, VertexId d, VertexId t,
                         int tries = 500) {
    for (int i = 0; i < tries; ++i) {
        Word w = sample_word(a, s, s.pick(len + 1), d);
        if (w.t() == t) return w;
    }
    throw Error("no word found between the requested vertices");
}

Path sample_path(const SelfSimilarAction& a, Sampler& s, int len) {
    const Graph& g = a.graph();
    Path p = Path::at_vertex(s.pick(g.vertex_count()));
    for (int i = 0; i < len; ++i) {
        const auto& kids = g.in_edges(p.s(g));
        p = extend(g, p, kids[s.pick(static_cast<int>(kids.size()))]);
    }
    return p;
}

Path sample_path_ending_at(const SelfSimilarAction& a, Sampler& s, int len, VertexId v) {
    const Graph& g = a.graph();
    std::vector<std::vector<EdgeId>> out(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out[g.s(e)].push_back(e);
    std::vector<EdgeId> rev;
    VertexId cur = v;
    for (int i = 0; i < len; ++i) {
        if (out[cur].empty()) break;
        EdgeId e = out[cur][s.pick(static_cast<int>(out[cur].size()))];
        rev.push_back(e);
        cur = g.r(e);
    }
    std::reverse(rev.begin(), rev.end());
    if (rev.empty()) return Path::at_vertex(v);
    VertexId root = g.r(rev.front());
    return make_path(g, root, std::move(rev));
}

Triple sample_triple(const SelfSimilarAction& a, Sampler& s) {
    Word w = sample_word(a, s, s.pick(4));
    Path bottom = sample_path_ending_at(a, s, s.pick(4), w.d());
    Path top = sample_path_ending_at(a, s, s.pick(4), w.t());
    return make_triple(a, std::move(top), std::move(w), std::move(bottom));
}

}  // namespace

H1WitnessReport h1_identity_witnesses(const SelfSimilarAction& a, int samples, uint64_t seed) {
    const Graph& g = a.graph();
    const std::vector<int> cls = vertex_orbit_classes(a);
    Sampler s(seed);
    H1WitnessReport report;
    auto record = [&](const std::string& kind, const std::string& detail, bool ok) {
        report.items.push_back({kind, detail, ok});
        if (!ok) report.all_verified = false;
    };

    for (int i = 0; i < samples; ++i) {
        {
            Path b = sample_path(a, s, s.pick(4));
            Triple ub = make_triple(a, b, Word::unit(b.s(g)), b);
            Chain2 c2;
            chain_add(c2, make_pair2(ub, ub), 1);
            Chain1 want;
            chain_add(want, ub, 1);
            record("unit-class", triple_text(a, ub), delta2(a, c2) == want);
        }
        {
            Triple x = sample_triple(a, s);
            Triple xi = invert(x);
            Triple ua = make_triple(a, x.top, Word::unit(x.top.s(g)), x.top);
            Chain2 c2;
            chain_add(c2, make_pair2(x, xi), 1);
            chain_add(c2, make_pair2(ua, ua), 1);
            Chain1 want;
            chain_add(want, x, 1);
            chain_add(want, xi, 1);
            record("antisymmetry", triple_text(a, x), delta2(a, c2) == want);
        }
        {
            Path al = sample_path(a, s, s.pick(4));
            VertexId v = al.s(g);
            Word gw = sample_word_between(a, s, 4, v, v);
            Word hw = sample_word_between(a, s, 4, v, v);
            Triple xg = make_triple(a, al, gw, al);
            Triple xh = make_triple(a, al, hw, al);
            Triple xgh = make_triple(a, al, a.compose(gw, hw), al);
            Chain2 c2;
            chain_add(c2, make_pair2(xg, xh), 1);
            Chain1 want;
            chain_add(want, xg, 1);
            chain_add(want, xh, 1);
            chain_add(want, xgh, -1);
            record("additivity", triple_text(a, xg) + " * " + triple_text(a, xh),
                   delta2(a, c2) == want);
        }
        {
            Triple x;
            bool found = false;
            for (int tries = 0; tries < 500 && !found; ++tries) {
                Path p = sample_path(a, s, 1 + s.pick(2));
                Path q = sample_path(a, s, 1 + s.pick(2));
                if (p.comparable(q)) continue;
                if (cls[p.s(g)] != cls[q.s(g)]) continue;
                x = make_triple(a, p, sample_word_between(a, s, 4, q.s(g), p.s(g)), q);
                found = true;
            }
            if (!found) {
                record("transposition-table", "no admissible sample", false);
                continue;
            }
            GTable hat = transposition_hat(a, x);
            Chain2 c2;
            chain_add(c2, make_pair2(x, invert(x)), 1);
            Triple ua = make_triple(a, x.top, Word::unit(x.top.s(g)), x.top);
            chain_add(c2, make_pair2(ua, ua), 1);
            Chain1 want;
            for (const Triple& col : hat.columns) {
                chain_add(want, col, 1);
                if (col.word.is_unit_word() && col.top == col.bottom && col != x && col != invert(x))
                    chain_add(c2, make_pair2(col, col), 1);
            }
            record("transposition-table", triple_text(a, x), delta2(a, c2) == want);
        }
    }
    return report;
}

IndexClass index_class(const SelfSimilarAction& a, const GTable& t, int n) {
    IndexClass out;
    out.level = n;
    Chain1 c;
    for (const Triple& col : t.columns) chain_add(c, col, 1);
    out.chain = normalize_to_level(a, c, n);
    Chain0 boundary = delta1(out.chain);
    int top_level = n;
    for (const auto& [p, k] : boundary) top_level = std::max(top_level, p.length());
    out.cycle = normalize_to_level(a, boundary, top_level).empty();
    return out;
}

GTable transposition_hat(const SelfSimilarAction& a, const Triple& x) {
    const Graph& g = a.graph();
    if (x.top.comparable(x.bottom))
        throw Error("transposition needs disjoint cylinders: " + path_to_string(g, x.top) +
                    " and " + path_to_string(g, x.bottom) + " are comparable");
    std::vector<Triple> columns{x, invert(x)};
    std::deque<Path> work;
    for (VertexId v = 0; v < g.vertex_count(); ++v) work.push_back(Path::at_vertex(v));
    while (!work.empty()) {
        Path p = work.front();
        work.pop_front();
        if (x.top.is_prefix_of(p) || x.bottom.is_prefix_of(p)) continue;
        if (p.is_prefix_of(x.top) || p.is_prefix_of(x.bottom)) {
            for (EdgeId e : g.in_edges(p.s(g))) work.push_back(extend(g, p, e));
            continue;
        }
        columns.push_back(Triple{p, Word::unit(p.s(g)), p});
    }
    return make_table(a, std::move(columns));
}

namespace {

std::string coef_prefix(bool first, long long k) {
    std::string out;
    if (first) {
        if (k < 0) out += "-";
    } else {
        out += k < 0 ? " - " : " + ";
    }
    long long mag = k < 0 ? -k : k;
    if (mag != 1) out += std::to_string(mag) + " ";
    return out;
}

}  // namespace

std::string chain_text(const SelfSimilarAction& a, const Chain0& c) {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [p, k] : c)
        out += coef_prefix(out.empty(), k) + "Z(" + path_to_string(a.graph(), p) + ")";
    return out;
}

std::string chain_text(const SelfSimilarAction& a, const Chain1& c) {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [t, k] : c) out += coef_prefix(out.empty(), k) + "Z" + triple_text(a, t);
    return out;
}

}  // namespace selfsim
