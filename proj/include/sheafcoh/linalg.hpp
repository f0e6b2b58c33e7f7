/**
 * Exact dense linear algebra over field scalars (Rat or GF).
 *
 * Everything here works on Eigen dynamic matrices and is written as free
 * functions so callers can stay expression-friendly.  Pivoting is always
 * "first nonzero" which keeps results deterministic; no magnitudes are ever
 * compared.
 */

#ifndef SHEAFCOH_LINALG_HPP
#define SHEAFCOH_LINALG_HPP

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "sheafcoh/ring.hpp"

namespace sheafcoh {

using Eigen::Index;

template <typename T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <typename T>
using DenseVector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
DenseMatrix<T> zeroMatrix(Index rows, Index cols)
{
    DenseMatrix<T> m(rows, cols);
    m.setConstant(T(0));
    return m;
}

template <typename T>
DenseMatrix<T> identityMatrix(Index n)
{
    DenseMatrix<T> m = zeroMatrix<T>(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
}

template <typename T>
bool isZeroMatrix(const DenseMatrix<T>& m)
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!(m(i, j) == T(0))) return false;
    return true;
}

/** Result of a reduced row-echelon computation. */
template <typename T>
struct Echelon {
    DenseMatrix<T> rref;
    std::vector<Index> pivotCols;
    Index rank() const { return static_cast<Index>(pivotCols.size()); }
};

/**
 * Reduced row echelon form by exact Gauss-Jordan elimination.
 */
template <typename T>
Echelon<T> rowReduce(DenseMatrix<T> m)
{
    Echelon<T> out;
    const Index rows = m.rows(), cols = m.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (!(m(i, c) == T(0))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) m.row(piv).swap(m.row(r));
        T inv = T(1) / m(r, c);
        for (Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r) continue;
            T f = m(i, c);
            if (f == T(0)) continue;
            for (Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        out.pivotCols.push_back(c);
        ++r;
    }
    out.rref = std::move(m);
    return out;
}

template <typename T>
Index matrixRank(const DenseMatrix<T>& m)
{
    return rowReduce(m).rank();
}

/**
 * Basis of the kernel of m, returned as columns.  The basis is the standard
 * one obtained from the RREF free columns.
 */
template <typename T>
DenseMatrix<T> nullspaceBasis(const DenseMatrix<T>& m)
{
    Echelon<T> e = rowReduce(m);
    const Index cols = m.cols();
    std::vector<bool> isPivot(cols, false);
    for (Index c : e.pivotCols) isPivot[c] = true;

    std::vector<Index> freeCols;
    for (Index c = 0; c < cols; ++c)
        if (!isPivot[c]) freeCols.push_back(c);

    DenseMatrix<T> basis = zeroMatrix<T>(cols, static_cast<Index>(freeCols.size()));
    for (Index k = 0; k < static_cast<Index>(freeCols.size()); ++k) {
        Index f = freeCols[k];
        basis(f, k) = T(1);
        for (Index r = 0; r < e.rank(); ++r)
            basis(e.pivotCols[r], k) = -e.rref(r, f);
    }
    return basis;
}

/**
 * Canonical basis of the column space: the nonzero rows of rref(m^T),
 * transposed back to columns.  Two matrices span the same subspace iff this
 * returns identical output for both.
 */
template <typename T>
DenseMatrix<T> canonicalSpanBasis(const DenseMatrix<T>& m)
{
    Echelon<T> e = rowReduce(DenseMatrix<T>(m.transpose()));
    DenseMatrix<T> out = zeroMatrix<T>(m.rows(), e.rank());
    for (Index r = 0; r < e.rank(); ++r)
        out.col(r) = e.rref.row(r).transpose();
    return out;
}

/**
 * Incremental column span with membership test.  Stored columns are kept in
 * eliminated form; add() reports whether the new column enlarged the span.
 */
template <typename T>
class IncrementalSpan {
public:
    explicit IncrementalSpan(Index dim) : dim_(dim) {}

    Index dim() const { return dim_; }
    Index rank() const { return static_cast<Index>(cols_.size()); }

    /// Reduce v against the current span; returns the residue.
    DenseVector<T> residue(DenseVector<T> v) const
    {
        for (std::size_t k = 0; k < cols_.size(); ++k) {
            const T& c = v(pivots_[k]);
            if (c == T(0)) continue;
            v -= c * cols_[k];
        }
        return v;
    }

    bool contains(const DenseVector<T>& v) const
    {
        DenseVector<T> r = residue(v);
        for (Index i = 0; i < r.size(); ++i)
            if (!(r(i) == T(0))) return false;
        return true;
    }

    /// Add v to the span.  Returns true iff v was independent.
    bool add(const DenseVector<T>& v)
    {
        DenseVector<T> r = residue(v);
        Index piv = -1;
        for (Index i = 0; i < r.size(); ++i)
            if (!(r(i) == T(0))) { piv = i; break; }
        if (piv < 0) return false;
        r *= T(1) / r(piv);
        for (std::size_t k = 0; k < cols_.size(); ++k) {
            const T& c = cols_[k](piv);
            if (c == T(0)) continue;
            cols_[k] -= c * r;
        }
        cols_.push_back(std::move(r));
        pivots_.push_back(piv);
        return true;
    }

private:
    Index dim_;
    std::vector<DenseVector<T>> cols_;
    std::vector<Index> pivots_;
};

/**
 * Indices of columns of z whose classes extend span(d) to span(d) + span(z).
 * The greedy left-to-right choice makes the answer deterministic.
 */
template <typename T>
std::vector<Index> extensionColumns(const DenseMatrix<T>& d, const DenseMatrix<T>& z)
{
    IncrementalSpan<T> span(z.rows());
    for (Index j = 0; j < d.cols(); ++j) span.add(d.col(j));
    std::vector<Index> picked;
    for (Index j = 0; j < z.cols(); ++j)
        if (span.add(z.col(j))) picked.push_back(j);
    return picked;
}

/**
 * Solve b * x = y for x exactly.  Returns nullopt when y is not in the
 * column span of b.  When the solution is not unique the free coordinates
 * are set to zero.
 */
template <typename T>
std::optional<DenseMatrix<T>> solveInSpan(const DenseMatrix<T>& b, const DenseMatrix<T>& y)
{
    const Index n = b.rows(), k = b.cols(), m = y.cols();
    DenseMatrix<T> aug(n, k + m);
    aug << b, y;
    Echelon<T> e = rowReduce(std::move(aug));

    DenseMatrix<T> x = zeroMatrix<T>(k, m);
    for (Index r = 0; r < e.rank(); ++r) {
        Index c = e.pivotCols[r];
        if (c >= k) return std::nullopt;  // pivot in the rhs block: inconsistent
        for (Index j = 0; j < m; ++j) x(c, j) = e.rref(r, k + j);
    }
    return x;
}

/** Kronecker (tensor) product a (x) b. */
template <typename T>
DenseMatrix<T> kroneckerProduct(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
    DenseMatrix<T> out = zeroMatrix<T>(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) == T(0)) continue;
            for (Index p = 0; p < b.rows(); ++p)
                for (Index q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return out;
}

/// Attach the field modulus to every entry of a GF matrix.
inline void attachModulus(DenseMatrix<GF>& m, long p)
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            m(i, j) = GF::make(m(i, j).value(), p);
}

/// Convert an integer matrix into the scalar type of the given ring.
template <typename T>
DenseMatrix<T> matrixFromInt(const DenseMatrix<Int>& m, const CoefficientRing& ring)
{
    DenseMatrix<T> out(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            out(i, j) = scalarFromInt<T>(m(i, j), ring);
    return out;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_LINALG_HPP
