#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "selfsim/intmat.hpp"
#include "selfsim/tables.hpp"

namespace selfsim {

// Formal integer combinations of cylinders, of basic bisections, and of
// composable pairs of basic bisections.  Zero coefficients are never stored.
using Chain0 = std::map<Path, long long>;
using Chain1 = std::map<Triple, long long>;

struct Pair2 {
    Triple x;  // (alpha, g, beta)
    Triple y;  // (beta, h, gamma); x.bottom == y.top

    bool operator==(const Pair2& o) const { return x == o.x && y == o.y; }
    bool operator<(const Pair2& o) const { return x != o.x ? x < o.x : y < o.y; }
};
using Chain2 = std::map<Pair2, long long>;

Pair2 make_pair2(const Triple& x, const Triple& y);

void chain_add(Chain0& c, const Path& p, long long k);
void chain_add(Chain1& c, const Triple& t, long long k);
void chain_add(Chain2& c, const Pair2& p, long long k);

// chi_{(alpha,g,beta)} -> chi_{Z(beta)} - chi_{Z(alpha)}, extended linearly.
Chain0 delta1(const Chain1& c);

// chi_{x times y} -> chi_y - chi_{(alpha, g.h, gamma)} + chi_x.
Chain1 delta2(const SelfSimilarAction& a, const Chain2& c);

// Rewrites chi_{Z(p)} = sum of children until every support path has length
// n; same for bisections on the bottom path.  The represented function or
// germ family is unchanged.
Chain0 normalize_to_level(const SelfSimilarAction& a, const Chain0& c, int n);
Chain1 normalize_to_level(const SelfSimilarAction& a, const Chain1& c, int n);

// Vertex classes under the reachability generated by generator (d, t) pairs:
// exactly the pairs of vertices joined by some word.
std::vector<int> vertex_orbit_classes(const SelfSimilarAction& a);

// Presentation of the level-n truncation of H_0.  The full variant has one
// generator per path of length <= n, child-sum relations above internal
// paths, and star-shaped orbit relations; the kernel variant keeps only the
// length-n generators with orbit relations, plus the class-level child-count
// matrix into level n+1.  "stabilized" certifies the level n and n+1 groups
// are isomorphic AND the level map is surjective, so (Hopfian) the induced
// map is an isomorphism of the computed truncations; it is never a claim
// about the colimit.
struct H0Presentation {
    int level = 0;
    bool kernel_only = false;
    std::vector<Path> generators;
    IntMat relations;  // generators x relations
    std::vector<mpz_class> invariant_factors;
    long long free_rank = 0;
    bool stabilized = false;

    // kernel variant: realized orbit classes at this level and the next, and
    // the child-count matrix between them
    std::vector<std::vector<VertexId>> classes;
    std::vector<std::vector<VertexId>> next_classes;
    IntMat colimit;  // next_classes x classes
    bool colimit_well_defined = true;
};

H0Presentation h0_truncated(const SelfSimilarAction& a, int n, bool kernel_only = false);

// Verifies the degree-one boundary identities by exhibiting explicit
// preimages under delta2 and comparing exact chains:
//   unit-class:          chi_{(b,u,b)} = delta2(...)
//   antisymmetry:        chi_x + chi_{x^-1} = delta2(...)
//   additivity:          chi_{(a,g,a)} + chi_{(a,h,a)} - chi_{(a,gh,a)} = delta2(...)
//   transposition-table: the full column chain of transposition_hat(x) = delta2(...)
struct H1WitnessReport {
    struct Item {
        std::string kind;
        std::string detail;
        bool verified = false;
    };
    std::vector<Item> items;
    bool all_verified = true;
};

H1WitnessReport h1_identity_witnesses(const SelfSimilarAction& a, int samples,
                                      uint64_t seed = 1);

// The chain of a table's columns, pushed to bottom level n, with the cycle
// certificate delta1 = 0 evaluated by normalizing to a common level.
struct IndexClass {
    Chain1 chain;
    int level = 0;
    bool cycle = false;
};

IndexClass index_class(const SelfSimilarAction& a, const GTable& t, int n);

// The table exchanging Z(x.bottom) and Z(x.top) through x and fixing the
// complement pointwise; requires the two cylinders disjoint.
GTable transposition_hat(const SelfSimilarAction& a, const Triple& x);

std::string chain_text(const SelfSimilarAction& a, const Chain0& c);
std::string chain_text(const SelfSimilarAction& a, const Chain1& c);

}  // namespace selfsim
