/**
 * Spectral sequence of a filtered chain complex over a field.
 *
 * The engine carries explicit representative cycles: the page entry at
 * (r, p, q) is presented by columns of C_{p+q} lying in filtration level p
 * with boundary in level p-r, modulo classes coming from level p-1 and
 * boundaries arriving from level p+r-1.  Differentials are honest matrices
 * in the chosen representative bases, so every page can be checked against
 * d^r composition and rank bookkeeping.
 */

#ifndef SHEAFCOH_FILTRATION_HPP
#define SHEAFCOH_FILTRATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "sheafcoh/sheaf.hpp"
#include "sheafcoh/subdivision.hpp"

namespace sheafcoh {

template <typename T>
struct FilteredComplex {
    ChainComplex<T> complex;
    std::vector<std::vector<int>> levels;   // [degree - lo][basis index]
    int minLevel = 0;
    int maxLevel = 0;

    const std::vector<int>& levelsAt(int degree) const
    {
        return levels[static_cast<std::size_t>(degree - complex.lo)];
    }

    void computeLevelBounds()
    {
        bool first = true;
        for (const auto& v : levels)
            for (int x : v) {
                if (first || x < minLevel) minLevel = x;
                if (first || x > maxLevel) maxLevel = x;
                first = false;
            }
        if (first) { minLevel = 0; maxLevel = 0; }
    }

    /** The differential must not raise the filtration level. */
    void validate() const
    {
        for (int k = complex.lo + 1; k <= complex.hi; ++k) {
            DenseMatrix<T> d = complex.d(k);
            const auto& src = levelsAt(k);
            const auto& dst = levelsAt(k - 1);
            for (Index j = 0; j < d.cols(); ++j)
                for (Index i = 0; i < d.rows(); ++i)
                    if (!(d(i, j) == T(0)) &&
                        dst[static_cast<std::size_t>(i)] > src[static_cast<std::size_t>(j)])
                        throw std::invalid_argument("FilteredComplex: differential raises level");
        }
    }
};

/** Rank summary of all pages, independent of the scalar type. */
struct PagesReport {
    int rmax = 1;
    int collapseAt = 1;
    std::vector<std::map<std::pair<int, int>, long>> pages;  // pages[r-1], nonzero entries
    std::map<std::pair<int, int>, long> einf;
    std::map<int, long> abutment;                            // total degree -> rank
    bool einfMatchesAbutment = true;

    long pageRank(int r, int p, int q) const
    {
        const auto& t = pages.at(static_cast<std::size_t>(r - 1));
        auto it = t.find({p, q});
        return it == t.end() ? 0 : it->second;
    }
    long einfRank(int p, int q) const
    {
        auto it = einf.find({p, q});
        return it == einf.end() ? 0 : it->second;
    }
};

template <typename T>
struct SpectralSequence {
    PagesReport report;
    // differentials[r][(p,q)]: matrix from E^r_{p,q} to E^r_{p-r,q+r-1}
    std::map<int, std::map<std::pair<int, int>, DenseMatrix<T>>> differentials;
};

template <typename T>
class SpectralSequenceEngine {
public:
    explicit SpectralSequenceEngine(const FilteredComplex<T>& f) : f_(f)
    {
        f_.validate();
        span_ = f_.maxLevel - f_.minLevel;
    }

    SpectralSequence<T> run()
    {
        SpectralSequence<T> out;
        const int rmax = span_ + 1;
        out.report.rmax = rmax;
        out.report.pages.resize(static_cast<std::size_t>(rmax));

        const ChainComplex<T>& c = f_.complex;
        for (int r = 1; r <= rmax; ++r) {
            for (int p = f_.minLevel; p <= f_.maxLevel; ++p)
                for (int nn = c.lo; nn <= c.hi; ++nn) {
                    const Entry& e = entryRef(r, p, nn);
                    if (e.reps.cols() > 0)
                        out.report.pages[static_cast<std::size_t>(r - 1)][{p, nn - p}] =
                            e.reps.cols();
                }
            // differentials on page r
            for (int p = f_.minLevel; p <= f_.maxLevel; ++p)
                for (int nn = c.lo; nn <= c.hi; ++nn) {
                    Entry& src = entryRef(r, p, nn);
                    if (src.reps.cols() == 0) continue;
                    Entry& dst = entryRef(r, p - r, nn - 1);
                    DenseMatrix<T> dmat = zeroMatrix<T>(dst.reps.cols(), src.reps.cols());
                    if (dst.reps.cols() > 0) {
                        DenseMatrix<T> img = c.d(nn) * src.reps;
                        for (Index j = 0; j < img.cols(); ++j)
                            dmat.col(j) = expressInEntry(dst, img.col(j));
                    }
                    if (!isZeroMatrix(dmat))
                        out.differentials[r][{p, nn - p}] = dmat;
                }
        }

        // abutment and consistency
        for (int nn = c.lo; nn <= c.hi; ++nn)
            out.report.abutment[nn] = c.homologyAt(nn).freeRank;
        out.report.einf = out.report.pages.back();
        for (int nn = c.lo; nn <= c.hi; ++nn) {
            long total = 0;
            for (int p = f_.minLevel; p <= f_.maxLevel; ++p)
                total += out.report.einfRank(p, nn - p);
            if (total != out.report.abutment[nn]) out.report.einfMatchesAbutment = false;
        }

        int collapse = 1;
        for (const auto& [r, table] : out.differentials)
            if (!table.empty()) collapse = std::max(collapse, r + 1);
        out.report.collapseAt = collapse;

        checkPageTransitions(out);
        return out;
    }

private:
    struct Entry {
        DenseMatrix<T> denom;   // independent columns spanning the denominator
        DenseMatrix<T> reps;    // representatives extending denom inside Z^r
        bool ready = false;
    };

    FilteredComplex<T> f_;
    int span_ = 0;
    std::map<std::tuple<int, int, int>, DenseMatrix<T>> zCache_;   // (r,p,deg)
    std::map<std::tuple<int, int, int>, Entry> entries_;           // (r,p,deg)

    std::vector<Index> filtrationColumns(int degree, int p) const
    {
        std::vector<Index> cols;
        if (degree < f_.complex.lo || degree > f_.complex.hi) return cols;
        const auto& lv = f_.levelsAt(degree);
        for (Index j = 0; j < static_cast<Index>(lv.size()); ++j)
            if (lv[static_cast<std::size_t>(j)] <= p) cols.push_back(j);
        return cols;
    }

    /** Basis of Z^r at filtration p, chain degree deg:
     *  {x in F_p C_deg : dx in F_{p-r} C_{deg-1}} (r = 0 means all of F_p). */
    const DenseMatrix<T>& zBasis(int r, int p, int deg)
    {
        auto key = std::make_tuple(r, p, deg);
        auto it = zCache_.find(key);
        if (it != zCache_.end()) return it->second;

        const ChainComplex<T>& c = f_.complex;
        const Index n = c.rankAt(deg);
        DenseMatrix<T> z;
        std::vector<Index> cols = filtrationColumns(deg, p);
        if (deg < c.lo || deg > c.hi || cols.empty()) {
            z = zeroMatrix<T>(n, 0);
        } else if (r <= 0) {
            z = zeroMatrix<T>(n, static_cast<Index>(cols.size()));
            for (Index j = 0; j < static_cast<Index>(cols.size()); ++j)
                z(cols[static_cast<std::size_t>(j)], j) = T(1);
        } else {
            // rows of d whose level exceeds p-r must vanish
            std::vector<Index> rows;
            if (deg - 1 >= c.lo) {
                const auto& lv = f_.levelsAt(deg - 1);
                for (Index i = 0; i < static_cast<Index>(lv.size()); ++i)
                    if (lv[static_cast<std::size_t>(i)] > p - r) rows.push_back(i);
            }
            if (rows.empty()) {
                z = zeroMatrix<T>(n, static_cast<Index>(cols.size()));
                for (Index j = 0; j < static_cast<Index>(cols.size()); ++j)
                    z(cols[static_cast<std::size_t>(j)], j) = T(1);
            } else {
                DenseMatrix<T> d = c.d(deg);
                DenseMatrix<T> k(static_cast<Index>(rows.size()),
                                 static_cast<Index>(cols.size()));
                for (Index i = 0; i < static_cast<Index>(rows.size()); ++i)
                    for (Index j = 0; j < static_cast<Index>(cols.size()); ++j)
                        k(i, j) = d(rows[static_cast<std::size_t>(i)],
                                    cols[static_cast<std::size_t>(j)]);
                DenseMatrix<T> ns = nullspaceBasis<T>(k);
                z = zeroMatrix<T>(n, ns.cols());
                for (Index j = 0; j < ns.cols(); ++j)
                    for (Index i = 0; i < static_cast<Index>(cols.size()); ++i)
                        z(cols[static_cast<std::size_t>(i)], j) = ns(i, j);
            }
        }
        return zCache_.emplace(key, std::move(z)).first->second;
    }

    Entry& entryRef(int r, int p, int deg)
    {
        auto key = std::make_tuple(r, p, deg);
        auto it = entries_.find(key);
        if (it != entries_.end()) return it->second;
        Entry e = buildEntry(r, p, deg);
        return entries_.emplace(key, std::move(e)).first->second;
    }

    Entry buildEntry(int r, int p, int deg)
    {
        const ChainComplex<T>& c = f_.complex;
        Entry e;
        const DenseMatrix<T>& z = zBasis(r, p, deg);
        const DenseMatrix<T>& zin = zBasis(r - 1, p - 1, deg);
        const DenseMatrix<T>& zsrc = zBasis(r - 1, p + r - 1, deg + 1);
        DenseMatrix<T> bnd = (zsrc.cols() > 0 && deg + 1 >= c.lo && deg + 1 <= c.hi)
                                 ? DenseMatrix<T>(c.d(deg + 1) * zsrc)
                                 : zeroMatrix<T>(c.rankAt(deg), 0);

        DenseMatrix<T> denomSpan(c.rankAt(deg), zin.cols() + bnd.cols());
        denomSpan << zin, bnd;
        std::vector<Index> keep = extensionColumns<T>(zeroMatrix<T>(c.rankAt(deg), 0), denomSpan);
        e.denom = zeroMatrix<T>(c.rankAt(deg), static_cast<Index>(keep.size()));
        for (Index j = 0; j < static_cast<Index>(keep.size()); ++j)
            e.denom.col(j) = denomSpan.col(keep[static_cast<std::size_t>(j)]);

        std::vector<Index> ext = extensionColumns<T>(e.denom, z);
        e.reps = zeroMatrix<T>(c.rankAt(deg), static_cast<Index>(ext.size()));
        for (Index j = 0; j < static_cast<Index>(ext.size()); ++j)
            e.reps.col(j) = z.col(ext[static_cast<std::size_t>(j)]);
        e.ready = true;
        return e;
    }

    /** Coordinates of v in the representative basis of an entry. */
    DenseVector<T> expressInEntry(const Entry& e, const DenseVector<T>& v)
    {
        DenseMatrix<T> span(v.size(), e.denom.cols() + e.reps.cols());
        span << e.denom, e.reps;
        auto sol = solveInSpan<T>(span, v);
        if (!sol) throw std::logic_error("spectral sequence: class escapes the page");
        return sol->block(e.denom.cols(), 0, e.reps.cols(), 1);
    }

    /** rank E^{r+1} = dim ker d^r - rank d^r(in), and d^r o d^r = 0. */
    void checkPageTransitions(const SpectralSequence<T>& s) const
    {
        for (int r = 1; r < s.report.rmax; ++r) {
            for (const auto& [pq, rank] :
                 s.report.pages[static_cast<std::size_t>(r - 1)]) {
                auto [p, q] = pq;
                long out = 0, in = 0;
                auto itr = s.differentials.find(r);
                if (itr != s.differentials.end()) {
                    auto ito = itr->second.find({p, q});
                    if (ito != itr->second.end())
                        out = matrixRank<T>(ito->second);
                    auto iti = itr->second.find({p + r, q - r + 1});
                    if (iti != itr->second.end())
                        in = matrixRank<T>(iti->second);
                }
                long next = 0;
                const auto& nt = s.report.pages[static_cast<std::size_t>(r)];
                auto itn = nt.find({p, q});
                if (itn != nt.end()) next = itn->second;
                if (next != rank - out - in)
                    throw std::logic_error("spectral sequence: page transition rank mismatch");
            }
        }
    }
};

template <typename T>
SpectralSequence<T> spectralSequenceOfFiltration(const FilteredComplex<T>& f)
{
    static_assert(!std::is_same_v<T, Int>,
                  "spectral sequence pages require field coefficients");
    SpectralSequenceEngine<T> engine(f);
    return engine.run();
}

/**
 * Filter the chain complex of a cosheaf on a barycentric subdivision by
 * coskeleton level.
 */
template <typename T>
FilteredComplex<T> coskeletonFiltration(const Subdivision& sub, const CellularCosheaf<T>& co,
                                        const SheafComplex<T>& sc, int q)
{
    FilteredComplex<T> f;
    f.complex = sc.chain;
    f.levels.resize(sc.chain.ranks.size());
    for (int i : sc.degrees) {
        std::vector<int>& lv = f.levels[static_cast<std::size_t>(i - sc.chain.lo)];
        lv.assign(static_cast<std::size_t>(sc.chain.rankAt(i)), 0);
        for (ElementId e : sub.complex.elementsOfDim(i)) {
            Index off = sc.offsets.at(i).at(e);
            Index r = co.valueRank(e, q);
            for (Index t = 0; t < r; ++t)
                lv[static_cast<std::size_t>(off + t)] =
                    sub.levelOf[static_cast<std::size_t>(e)];
        }
    }
    f.computeLevelBounds();
    // the filtration exhausts everything from level n-1 on
    f.minLevel = std::min(f.minLevel, 0);
    f.maxLevel = std::max(f.maxLevel, sub.n - 1);
    return f;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_FILTRATION_HPP
