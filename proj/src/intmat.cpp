#include "selfsim/intmat.hpp"

#include <cstdlib>

#include "selfsim/graph.hpp"

namespace selfsim {

namespace {

int rows_of(const IntMat& m) { return static_cast<int>(m.size()); }
int cols_of(const IntMat& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

void swap_rows(IntMat& d, IntMat& u, int a, int b) {
    if (a == b) return;
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
}

void swap_cols(IntMat& d, IntMat& v, int a, int b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
}

// row a -= q * row b
void row_sub(IntMat& d, IntMat& u, int a, int b, const mpz_class& q) {
    if (q == 0) return;
    for (int j = 0; j < cols_of(d); ++j) d[a][j] -= q * d[b][j];
    for (int j = 0; j < cols_of(u); ++j) u[a][j] -= q * u[b][j];
}

// col a -= q * col b
void col_sub(IntMat& d, IntMat& v, int a, int b, const mpz_class& q) {
    if (q == 0) return;
    for (auto& row : d) row[a] -= q * row[b];
    for (auto& row : v) row[a] -= q * row[b];
}

void negate_row(IntMat& d, IntMat& u, int a) {
    for (auto& x : d[a]) x = -x;
    for (auto& x : u[a]) x = -x;
}

// Eliminates everything off the diagonal; returns the rank.
int diagonalize(IntMat& d, IntMat& u, IntMat& v) {
    int r = rows_of(d), c = cols_of(d);
    int t = 0;
    for (; t < r && t < c; ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (d[i][j] == 0) continue;
                if (pi < 0 || mpz_cmpabs(d[i][j].get_mpz_t(), d[pi][pj].get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        swap_rows(d, u, t, pi);
        swap_cols(d, v, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (d[i][t] == 0) continue;
                row_sub(d, u, i, t, d[i][t] / d[t][t]);
                if (d[i][t] != 0) {
                    swap_rows(d, u, t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (d[t][j] == 0) continue;
                col_sub(d, v, j, t, d[t][j] / d[t][t]);
                if (d[t][j] != 0) {
                    swap_cols(d, v, t, j);
                    clean = false;
                }
            }
        }
    }
    return t;
}

}  // namespace

IntMat identity_matrix(int n) {
    IntMat m(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat matmul(const IntMat& a, const IntMat& b) {
    int n = rows_of(a), k = cols_of(a), m = cols_of(b);
    if (k != rows_of(b)) throw Error("matmul: shape mismatch");
    IntMat out(n, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

SmithForm smith_normal_form(const IntMat& m) {
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != cols_of(m)) throw Error("smith: ragged matrix");
    SmithForm f;
    f.d = m;
    f.u = identity_matrix(rows_of(m));
    f.v = identity_matrix(cols_of(m));
    while (true) {
        f.rank = diagonalize(f.d, f.u, f.v);
        bool fixed = true;
        for (int i = 0; i < f.rank && fixed; ++i)
            for (int j = i + 1; j < f.rank; ++j)
                if (f.d[j][j] % f.d[i][i] != 0) {
                    // pull d[j][j] into column i and rerun; the new pivot
                    // becomes gcd(d_i, d_j), so this terminates
                    col_sub(f.d, f.v, i, j, -1);
                    fixed = false;
                    break;
                }
        if (fixed) break;
    }
    for (int i = 0; i < f.rank; ++i)
        if (f.d[i][i] < 0) negate_row(f.d, f.u, i);
    return f;
}

CokernelForm cokernel(const IntMat& m) {
    CokernelForm out;
    if (m.empty()) return out;
    SmithForm f = smith_normal_form(m);
    for (int i = 0; i < f.rank; ++i)
        if (f.d[i][i] > 1) out.torsion.push_back(f.d[i][i]);
    out.free_rank = rows_of(m) - f.rank;
    return out;
}

std::optional<std::vector<mpz_class>> solve(const IntMat& m, const std::vector<mpz_class>& b) {
    int r = rows_of(m), c = cols_of(m);
    if (static_cast<int>(b.size()) != r) throw Error("solve: size mismatch");
    SmithForm f = smith_normal_form(m);
    std::vector<mpz_class> y(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) y[i] += f.u[i][j] * b[j];
    std::vector<mpz_class> z(c, 0);
    for (int i = 0; i < r; ++i) {
        if (i < f.rank && i < c) {
            if (y[i] % f.d[i][i] != 0) return std::nullopt;
            z[i] = y[i] / f.d[i][i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<mpz_class> x(c, 0);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) x[i] += f.v[i][j] * z[j];
    return x;
}

}  // namespace selfsim
