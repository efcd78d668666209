#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/semigroup.hpp"

namespace selfsim {

// A finite table of columns (top_i, g_i, bottom_i) whose top row and bottom
// row are both prefix codes; it induces the homeomorphism of the path-space
// boundary taking bottom_i.mu to top_i.(g_i.mu).  Columns are kept sorted by
// the bottom path text, so structurally equal tables compare equal.
struct GTable {
    std::vector<Triple> columns;

    bool operator==(const GTable& o) const { return columns == o.columns; }
    bool operator!=(const GTable& o) const { return !(*this == o); }
};

struct TableValidation {
    bool ok = true;
    std::string message;
    std::optional<int> column;  // offending column when applicable
};

TableValidation validate_columns(const SelfSimilarAction& a, const std::vector<Triple>& columns);

// Sorts and validates; throws on invalid input.
GTable make_table(const SelfSimilarAction& a, std::vector<Triple> columns);

GTable identity_table(const SelfSimilarAction& a);

// Replaces column i of (top, g, bottom) by the columns
// (top.(g.e), g|_e, bottom.e) over e in s(bottom)E^1.
GTable split_column(const SelfSimilarAction& a, const GTable& t, int i);

struct TableApply {
    bool mapped = false;  // false: the path is shorter than the covering bottom
    Path image;
    Word residual;
};

// The table's action on the cylinder Z(mu): for mu = bottom_i.nu returns
// (top_i.(g_i.nu), g_i|_nu).
TableApply apply_table(const SelfSimilarAction& a, const GTable& t, const Path& mu);

// The table for xi |-> t1(t2(xi)): refines both factors to the common
// refinement of t2's tops and t1's bottoms, then matches columns there.
GTable compose(const SelfSimilarAction& a, const GTable& t1, const GTable& t2);

GTable inverse_table(const SelfSimilarAction& a, const GTable& t);

struct TableEq {
    Eq verdict = Eq::Unknown;
    std::optional<Path> witness;  // a path the two tables move differently
};

// Tests compose(t1, inverse(t2)) against the identity: every column must be
// (alpha, w, alpha) with w realizing the unit.
TableEq tables_equal(const SelfSimilarAction& a, const GTable& t1, const GTable& t2,
                     const Budget& budget = {});

// Does the table square to the identity?
Eq is_transposition(const SelfSimilarAction& a, const GTable& t, const Budget& budget = {});

// Lifts a plain table of path pairs (top_i, bottom_i), s(top_i) = s(bottom_i),
// by inserting unit words.
GTable from_plain_table(const SelfSimilarAction& a,
                        const std::vector<std::pair<Path, Path>>& rows);

// "S_top U_word S_bottom* + ..." with multi-character subscripts braced.
std::string unitary_string(const SelfSimilarAction& a, const GTable& t);

// Attempts to undo full-children splits, drawing candidate words from the
// restriction closure.  A size optimization: the result is always
// tables_equal to the input.
GTable table_reduce(const SelfSimilarAction& a, const GTable& t, const Budget& budget = {});

std::string table_text(const SelfSimilarAction& a, const GTable& t);

}  // namespace selfsim
