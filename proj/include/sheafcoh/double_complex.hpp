/**
 * First-quadrant double complexes with commuting differentials, their
 * totalization, and the two standard spectral sequences (filter by column,
 * filter by row).
 */

#ifndef SHEAFCOH_DOUBLE_COMPLEX_HPP
#define SHEAFCOH_DOUBLE_COMPLEX_HPP

#include <map>
#include <vector>

#include "sheafcoh/filtration.hpp"

namespace sheafcoh {

template <typename T>
struct DoubleComplex {
    CoefficientRing ring;
    int kMax = -1;
    int lMax = -1;
    std::vector<std::vector<Index>> rank;                 // [k][l]
    std::map<std::pair<int, int>, DenseMatrix<T>> dh;     // X_{k,l} -> X_{k-1,l}
    std::map<std::pair<int, int>, DenseMatrix<T>> dv;     // X_{k,l} -> X_{k,l-1}

    Index rankAt(int k, int l) const
    {
        if (k < 0 || k > kMax || l < 0 || l > lMax) return 0;
        return rank[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    }

    DenseMatrix<T> horizontal(int k, int l) const
    {
        auto it = dh.find({k, l});
        if (it != dh.end()) return it->second;
        return zeroMatrix<T>(rankAt(k - 1, l), rankAt(k, l));
    }

    DenseMatrix<T> vertical(int k, int l) const
    {
        auto it = dv.find({k, l});
        if (it != dv.end()) return it->second;
        return zeroMatrix<T>(rankAt(k, l - 1), rankAt(k, l));
    }

    /** dh o dh = 0, dv o dv = 0, dh dv = dv dh. */
    void validate() const
    {
        for (int k = 0; k <= kMax; ++k)
            for (int l = 0; l <= lMax; ++l) {
                if (!isZeroMatrix<T>(DenseMatrix<T>(horizontal(k - 1, l) * horizontal(k, l))))
                    throw std::invalid_argument("DoubleComplex: dh^2 != 0");
                if (!isZeroMatrix<T>(DenseMatrix<T>(vertical(k, l - 1) * vertical(k, l))))
                    throw std::invalid_argument("DoubleComplex: dv^2 != 0");
                DenseMatrix<T> a = horizontal(k, l - 1) * vertical(k, l);
                DenseMatrix<T> b = vertical(k - 1, l) * horizontal(k, l);
                if (!isZeroMatrix<T>(DenseMatrix<T>(a - b)))
                    throw std::invalid_argument("DoubleComplex: differentials do not commute");
            }
    }
};

template <typename T>
struct DoubleComplexResult {
    ChainComplex<T> total;                     // d = dh + (-1)^k dv
    SpectralSequence<T> vertical;              // pages indexed (k, l)
    SpectralSequence<T> horizontal;            // pages indexed (k, l)
};

/**
 * Totalize and run both spectral sequences.  The vertical sequence filters
 * by column index k (inner homology is by dv); the horizontal one filters
 * by row index l.  Horizontal page tables are relabeled back to (k, l), so
 * its differentials run E_{k,l} -> E_{k+r-1,l-r}.
 */
template <typename T>
DoubleComplexResult<T> doubleComplexSpectralSequences(const DoubleComplex<T>& x)
{
    x.validate();

    DoubleComplexResult<T> out;
    const int jMax = x.kMax + x.lMax;
    out.total = ChainComplex<T>(x.ring, 0, jMax < 0 ? 0 : jMax);

    // layout of degree j: blocks (k, j-k) with k ascending
    std::map<std::pair<int, int>, Index> offset;
    for (int j = 0; j <= jMax; ++j) {
        Index off = 0;
        for (int k = 0; k <= std::min(j, x.kMax); ++k) {
            int l = j - k;
            if (l > x.lMax) continue;
            offset[{k, l}] = off;
            off += x.rankAt(k, l);
        }
        out.total.setRank(j, off);
    }
    for (int j = 1; j <= jMax; ++j) {
        DenseMatrix<T> d = zeroMatrix<T>(out.total.rankAt(j - 1), out.total.rankAt(j));
        for (int k = 0; k <= std::min(j, x.kMax); ++k) {
            int l = j - k;
            if (l > x.lMax) continue;
            Index cols = x.rankAt(k, l);
            if (cols == 0) continue;
            Index co = offset.at({k, l});
            if (k > 0 && x.rankAt(k - 1, l) > 0)
                d.block(offset.at({k - 1, l}), co, x.rankAt(k - 1, l), cols) +=
                    x.horizontal(k, l);
            if (l > 0 && x.rankAt(k, l - 1) > 0) {
                DenseMatrix<T> v = x.vertical(k, l);
                if (k % 2 != 0) v = -v;
                d.block(offset.at({k, l - 1}), co, x.rankAt(k, l - 1), cols) += v;
            }
        }
        out.total.setDifferential(j, std::move(d));
    }
    out.total.validate();

    auto makeFiltered = [&](bool byColumn) {
        FilteredComplex<T> f;
        f.complex = out.total;
        f.levels.resize(out.total.ranks.size());
        for (int j = 0; j <= jMax; ++j) {
            auto& lv = f.levels[static_cast<std::size_t>(j)];
            lv.assign(static_cast<std::size_t>(out.total.rankAt(j)), 0);
            for (int k = 0; k <= std::min(j, x.kMax); ++k) {
                int l = j - k;
                if (l > x.lMax) continue;
                Index off = offset.at({k, l});
                for (Index t = 0; t < x.rankAt(k, l); ++t)
                    lv[static_cast<std::size_t>(off + t)] = byColumn ? k : l;
            }
        }
        f.computeLevelBounds();
        f.minLevel = 0;
        f.maxLevel = byColumn ? std::max(x.kMax, 0) : std::max(x.lMax, 0);
        return f;
    };

    out.vertical = spectralSequenceOfFiltration(makeFiltered(true));

    SpectralSequence<T> h = spectralSequenceOfFiltration(makeFiltered(false));
    // relabel (p, q) = (l, k) back to (k, l)
    SpectralSequence<T> hr;
    hr.report.rmax = h.report.rmax;
    hr.report.collapseAt = h.report.collapseAt;
    hr.report.abutment = h.report.abutment;
    hr.report.einfMatchesAbutment = h.report.einfMatchesAbutment;
    hr.report.pages.resize(h.report.pages.size());
    for (std::size_t r = 0; r < h.report.pages.size(); ++r)
        for (const auto& [pq, rk] : h.report.pages[r])
            hr.report.pages[r][{pq.second, pq.first}] = rk;
    for (const auto& [pq, rk] : h.report.einf) hr.report.einf[{pq.second, pq.first}] = rk;
    for (const auto& [r, table] : h.differentials)
        for (const auto& [pq, m] : table) hr.differentials[r][{pq.second, pq.first}] = m;
    out.horizontal = std::move(hr);
    return out;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_DOUBLE_COMPLEX_HPP
