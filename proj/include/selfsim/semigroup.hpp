#pragma once

#include <optional>

#include "selfsim/action.hpp"

namespace selfsim {

// A basic partial homeomorphism Z(bottom) -> Z(top), bottom.mu |-> top.(g.mu).
// Typing: d(g) = s(bottom), t(g) = s(top).  The semigroup zero is represented
// as an empty optional wherever products may vanish.
struct Triple {
    Path top;
    Word word;
    Path bottom;

    bool operator==(const Triple& o) const {
        return top == o.top && word == o.word && bottom == o.bottom;
    }
    bool operator!=(const Triple& o) const { return !(*this == o); }
    bool operator<(const Triple& o) const {
        if (!(bottom == o.bottom)) return bottom < o.bottom;
        if (!(top == o.top)) return top < o.top;
        return word < o.word;
    }
};

using MaybeTriple = std::optional<Triple>;

Triple make_triple(const SelfSimilarAction& a, Path top, Word word, Path bottom);

// x (gamma, h, zeta) after y ... composition x∘y; Zero when the bottom of x
// and the top of y span disjoint cylinders.
MaybeTriple multiply(const SelfSimilarAction& a, const Triple& x, const Triple& y);

Triple invert(const Triple& x);

// (top(g.gamma), g|_gamma, bottom.gamma): the same germs on a smaller cylinder.
Triple extend_triple(const SelfSimilarAction& a, const Triple& x, const Path& gamma);

// |top| - |bottom|; additive on non-Zero products, invariant under extension.
long long cocycle_rho(const Triple& x);

// The word of a length-balanced triple (|top| = |bottom|).
const Word& kernel_label(const Triple& x);

struct GermResult {
    Eq verdict = Eq::Unknown;
    std::optional<Path> common_bottom;  // the cylinder the comparison ran on
};

// Do x and y define the same germs over the common part of their bottom
// cylinders?  Extends both to the longer bottom, then compares top paths and
// words.  Incomparable bottoms share no germs.
GermResult germ_equal(const SelfSimilarAction& a, const Triple& x, const Triple& y,
                      const Budget& budget = {});

// The triple as a partial map applied to a path extending its bottom.
// Empty when bottom is not a prefix of xi.
std::optional<Path> apply_triple(const SelfSimilarAction& a, const Triple& x, const Path& xi);

std::string triple_text(const SelfSimilarAction& a, const Triple& x);

}  // namespace selfsim
