#include "sheafcoh/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace sheafcoh {

namespace {

// Round-to-nearest quotient keeps remainders small during elimination.
Int nearestQuotient(const Int& a, const Int& b)
{
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > abs(b)) q += 1;
    return q;
}

}  // namespace

std::vector<Int> SmithResult::diagonal() const
{
    std::vector<Int> out;
    Index n = std::min(d.rows(), d.cols());
    for (Index i = 0; i < n; ++i)
        if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
}

Index SmithResult::rank() const { return static_cast<Index>(diagonal().size()); }

SmithResult smithNormalForm(const IntMatrix& m)
{
    const Index rows = m.rows(), cols = m.cols();
    SmithResult res;
    res.u = identityMatrix<Int>(rows);
    res.v = identityMatrix<Int>(cols);
    res.d = m;
    IntMatrix& d = res.d;

    Index t = 0;
    while (t < rows && t < cols) {
        // smallest-magnitude nonzero pivot in the trailing block
        Index pi = -1, pj = -1;
        Int best = 0;
        for (Index i = t; i < rows; ++i)
            for (Index j = t; j < cols; ++j) {
                if (d(i, j) == 0) continue;
                Int a = abs(d(i, j));
                if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
            }
        if (pi < 0) break;  // trailing block is zero

        if (pi != t) { d.row(pi).swap(d.row(t)); res.u.row(pi).swap(res.u.row(t)); }
        if (pj != t) { d.col(pj).swap(d.col(t)); res.v.col(pj).swap(res.v.col(t)); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = nearestQuotient(d(i, t), d(t, t));
                d.row(i) -= q * d.row(t);
                res.u.row(i) -= q * res.u.row(t);
                if (d(i, t) != 0) {
                    d.row(i).swap(d.row(t));
                    res.u.row(i).swap(res.u.row(t));
                    clean = false;
                }
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = nearestQuotient(d(t, j), d(t, t));
                d.col(j) -= q * d.col(t);
                res.v.col(j) -= q * res.v.col(t);
                if (d(t, j) != 0) {
                    d.col(j).swap(d.col(t));
                    res.v.col(j).swap(res.v.col(t));
                    clean = false;
                }
            }
            if (!clean) continue;

            // force the divisibility chain: pull in any entry the pivot
            // does not divide and eliminate again
            for (Index i = t + 1; i < rows && clean; ++i)
                for (Index j = t + 1; j < cols && clean; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        d.col(t) += d.col(j);
                        res.v.col(t) += res.v.col(j);
                        clean = false;
                    }
        }

        if (d(t, t) < 0) {
            d.row(t) = -d.row(t);
            res.u.row(t) = -res.u.row(t);
        }
        ++t;
    }
    return res;
}

IntMatrix canonicalLatticeBasis(const IntMatrix& m)
{
    // row HNF of the transpose
    IntMatrix h = m.transpose();
    const Index rows = h.rows(), cols = h.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        // gcd-eliminate the column below row r
        while (true) {
            Index piv = -1;
            Int best = 0;
            for (Index i = r; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int a = abs(h(i, c));
                if (piv < 0 || a < best) { best = a; piv = i; }
            }
            if (piv < 0) break;
            if (piv != r) h.row(piv).swap(h.row(r));
            bool done = true;
            for (Index i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q = nearestQuotient(h(i, c), h(r, c));
                h.row(i) -= q * h.row(r);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) h.row(r) = -h.row(r);
        for (Index i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q != 0) h.row(i) -= q * h.row(r);
        }
        ++r;
    }
    IntMatrix out(m.rows(), r);
    for (Index i = 0; i < r; ++i) out.col(i) = h.row(i).transpose();
    return out;
}

std::optional<IntMatrix> latticeSolve(const IntMatrix& b, const IntMatrix& y)
{
    const Index k = b.cols(), m = y.cols();
    std::vector<Index> pivotRow(k);
    for (Index j = 0; j < k; ++j) {
        Index p = -1;
        for (Index i = 0; i < b.rows(); ++i)
            if (b(i, j) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("latticeSolve: zero basis column");
        pivotRow[j] = p;
    }
    IntMatrix x = zeroMatrix<Int>(k, m);
    IntMatrix rem = y;
    for (Index j = 0; j < k; ++j) {
        Index p = pivotRow[j];
        for (Index col = 0; col < m; ++col) {
            if (rem(p, col) % b(p, j) != 0) return std::nullopt;
            Int q = rem(p, col) / b(p, j);
            x(j, col) = q;
            if (q != 0) rem.col(col) -= q * b.col(j);
        }
    }
    if (!isZeroMatrix(rem)) return std::nullopt;
    return x;
}

Int determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const Index n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (Index k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            Index piv = -1;
            for (Index i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.row(piv).swap(a.row(k));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j) {
                Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = num / prev;  // Bareiss: division is exact
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Index integerRank(const IntMatrix& m)
{
    DenseMatrix<Rat> q(m.rows(), m.cols());
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            q(i, j) = Rat(m(i, j));
    return matrixRank(q);
}

}  // namespace sheafcoh
