#include "selfsim/semigroup.hpp"

namespace selfsim {

Triple make_triple(const SelfSimilarAction& a, Path top, Word word, Path bottom) {
    const Graph& g = a.graph();
    if (word.d() != bottom.s(g))
        throw Error("triple: d(word) != s(bottom)");
    if (word.t() != top.s(g))
        throw Error("triple: t(word) != s(top)");
    return Triple{std::move(top), std::move(word), std::move(bottom)};
}

MaybeTriple multiply(const SelfSimilarAction& a, const Triple& x, const Triple& y) {
    const Graph& g = a.graph();
    const Path& beta = x.bottom;
    const Path& gamma = y.top;
    if (gamma.is_prefix_of(beta)) {
        // beta = gamma.mu: restrict y to the part mapping into Z(beta)
        Path mu = gamma.suffix_after(beta, g);
        auto [nu, rinv] = a.act_restrict_path(y.word.inverse(), mu);
        // h|_{h^-1.mu} = (h^-1|_mu)^-1
        return Triple{x.top, a.compose(x.word, rinv.inverse()), concat(g, y.bottom, nu)};
    }
    if (beta.is_prefix_of(gamma)) {
        // gamma = beta.mu: push mu through x
        Path mu = beta.suffix_after(gamma, g);
        auto [img, res] = a.act_restrict_path(x.word, mu);
        return Triple{concat(g, x.top, img), a.compose(res, y.word), y.bottom};
    }
    return std::nullopt;
}

Triple invert(const Triple& x) { return Triple{x.bottom, x.word.inverse(), x.top}; }

Triple extend_triple(const SelfSimilarAction& a, const Triple& x, const Path& gamma) {
    const Graph& g = a.graph();
    if (gamma.r() != x.bottom.s(g))
        throw Error("extend: r(gamma) != s(bottom)");
    auto [img, res] = a.act_restrict_path(x.word, gamma);
    return Triple{concat(g, x.top, img), std::move(res), concat(g, x.bottom, gamma)};
}

long long cocycle_rho(const Triple& x) {
    return static_cast<long long>(x.top.length()) - x.bottom.length();
}

const Word& kernel_label(const Triple& x) {
    if (x.top.length() != x.bottom.length())
        throw Error("kernel label needs |top| = |bottom|");
    return x.word;
}

GermResult germ_equal(const SelfSimilarAction& a, const Triple& x, const Triple& y,
                      const Budget& budget) {
    const Graph& g = a.graph();
    if (!x.bottom.comparable(y.bottom)) return {Eq::NotEqual, std::nullopt};
    const Triple* shorter = &x;
    const Triple* longer = &y;
    if (y.bottom.is_prefix_of(x.bottom)) std::swap(shorter, longer);
    Path gamma = shorter->bottom.suffix_after(longer->bottom, g);
    Triple ext = extend_triple(a, *shorter, gamma);
    if (ext.top != longer->top) return {Eq::NotEqual, longer->bottom};
    auto eq = element_equal(a, ext.word, longer->word, budget);
    return {eq.verdict, longer->bottom};
}

std::optional<Path> apply_triple(const SelfSimilarAction& a, const Triple& x, const Path& xi) {
    if (!x.bottom.is_prefix_of(xi)) return std::nullopt;
    Path mu = x.bottom.suffix_after(xi, a.graph());
    return concat(a.graph(), x.top, a.act_path(x.word, mu));
}

std::string triple_text(const SelfSimilarAction& a, const Triple& x) {
    const Graph& g = a.graph();
    return "(" + path_to_string(g, x.top) + ", " + a.word_text(x.word) + ", " +
           path_to_string(g, x.bottom) + ")";
}

}  // namespace selfsim
