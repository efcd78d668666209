#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace selfsim {

// Row-major rectangular matrix over Z.
using IntMat = std::vector<std::vector<mpz_class>>;

IntMat identity_matrix(int n);
IntMat matmul(const IntMat& a, const IntMat& b);

// u * m * v = d with u, v unimodular and d diagonal, diagonal entries
// nonnegative, each dividing the next, zeros last.
struct SmithForm {
    IntMat d;
    IntMat u;
    IntMat v;
    int rank = 0;
};

SmithForm smith_normal_form(const IntMat& m);

// coker(m) = Z^rows / m.Z^cols as invariant factors.
struct CokernelForm {
    std::vector<mpz_class> torsion;  // the factors > 1, in divisibility order
    long long free_rank = 0;

    bool trivial() const { return torsion.empty() && free_rank == 0; }
};

CokernelForm cokernel(const IntMat& m);

// An integer solution of m x = b, when one exists.
std::optional<std::vector<mpz_class>> solve(const IntMat& m, const std::vector<mpz_class>& b);

}  // namespace selfsim
