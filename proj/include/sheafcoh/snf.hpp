/**
 * Exact integer matrix normal forms: Smith and Hermite.
 */

#ifndef SHEAFCOH_SNF_HPP
#define SHEAFCOH_SNF_HPP

#include <optional>
#include <vector>

#include "sheafcoh/linalg.hpp"

namespace sheafcoh {

using IntMatrix = DenseMatrix<Int>;
using IntVector = DenseVector<Int>;

/** U * M * V = D with U, V unimodular and D = diag(d1 | d2 | ...), di >= 0. */
struct SmithResult {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    std::vector<Int> diagonal() const;
    Index rank() const;
};

SmithResult smithNormalForm(const IntMatrix& m);

/**
 * Canonical basis of the lattice spanned by the columns of m, obtained from
 * the row Hermite normal form of m^T.  Columns have strictly increasing
 * pivot rows, positive pivots, and entries left of a pivot reduced modulo it.
 */
IntMatrix canonicalLatticeBasis(const IntMatrix& m);

/**
 * Solve b * x = y over the integers, where b is a canonicalLatticeBasis
 * output.  Returns nullopt when y does not lie in the lattice.
 */
std::optional<IntMatrix> latticeSolve(const IntMatrix& b, const IntMatrix& y);

/** Fraction-free (Bareiss) determinant of a square integer matrix. */
Int determinant(const IntMatrix& m);

/** Rank of an integer matrix (computed over Q). */
Index integerRank(const IntMatrix& m);

}  // namespace sheafcoh

#endif  // SHEAFCOH_SNF_HPP
