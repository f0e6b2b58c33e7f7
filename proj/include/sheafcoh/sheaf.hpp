/**
 * Cellular sheaves and cosheaves on a simplicial poset, and the (co)chain
 * complexes they generate.
 *
 * A sheaf assigns a free module to every element and a restriction matrix
 * to every covering pair, functorial on boolean squares; a cosheaf points
 * the maps the other way.  Values may be split by an inner grading (the
 * exterior-algebra degree); ungraded data lives in grade 0.
 */

#ifndef SHEAFCOH_SHEAF_HPP
#define SHEAFCOH_SHEAF_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "sheafcoh/complex.hpp"
#include "sheafcoh/poset.hpp"

namespace sheafcoh {

using CoverKey = std::pair<ElementId, ElementId>;   // (lower, upper)

template <typename T>
struct CellularSheaf {
    const SimplicialPoset* base = nullptr;
    CoefficientRing ring;
    bool includeMin = false;
    std::vector<int> grades;                                       // ascending
    std::vector<std::vector<Index>> ranks;                         // [grade][element]
    std::vector<std::map<CoverKey, DenseMatrix<T>>> restrictions;  // value(lower) -> value(upper)

    int gradeIndex(int q) const
    {
        for (std::size_t g = 0; g < grades.size(); ++g)
            if (grades[g] == q) return static_cast<int>(g);
        return -1;
    }

    Index valueRank(ElementId e, int q) const
    {
        int g = gradeIndex(q);
        if (g < 0) return 0;
        return ranks[static_cast<std::size_t>(g)][static_cast<std::size_t>(e)];
    }

    Index totalRank(ElementId e) const
    {
        Index r = 0;
        for (int q : grades) r += valueRank(e, q);
        return r;
    }

    const DenseMatrix<T>& restriction(ElementId lower, ElementId upper, int q) const
    {
        int g = gradeIndex(q);
        if (g < 0) throw std::invalid_argument("sheaf: unknown grade");
        return restrictions[static_cast<std::size_t>(g)].at({lower, upper});
    }
};

template <typename T>
struct CellularCosheaf {
    const SimplicialPoset* base = nullptr;
    CoefficientRing ring;
    bool includeMin = false;
    std::vector<int> grades;
    std::vector<std::vector<Index>> ranks;
    std::vector<std::map<CoverKey, DenseMatrix<T>>> corestrictions;  // value(upper) -> value(lower)

    int gradeIndex(int q) const
    {
        for (std::size_t g = 0; g < grades.size(); ++g)
            if (grades[g] == q) return static_cast<int>(g);
        return -1;
    }

    Index valueRank(ElementId e, int q) const
    {
        int g = gradeIndex(q);
        if (g < 0) return 0;
        return ranks[static_cast<std::size_t>(g)][static_cast<std::size_t>(e)];
    }

    Index totalRank(ElementId e) const
    {
        Index r = 0;
        for (int q : grades) r += valueRank(e, q);
        return r;
    }

    const DenseMatrix<T>& corestriction(ElementId upper, ElementId lower, int q) const
    {
        int g = gradeIndex(q);
        if (g < 0) throw std::invalid_argument("cosheaf: unknown grade");
        return corestrictions[static_cast<std::size_t>(g)].at({lower, upper});
    }
};

/** Globally constant sheaf of the given rank, truncated at the least element
 *  unless includeMin is set (then the value there is the same module and the
 *  maps to vertices are identities). */
template <typename T>
CellularSheaf<T> constantSheaf(const SimplicialPoset& s, const CoefficientRing& ring,
                               Index rank = 1, bool includeMin = false)
{
    CellularSheaf<T> a;
    a.base = &s;
    a.ring = ring;
    a.includeMin = includeMin;
    a.grades = {0};
    a.ranks.assign(1, std::vector<Index>(static_cast<std::size_t>(s.size()), rank));
    if (!includeMin) a.ranks[0][0] = 0;
    a.restrictions.assign(1, {});
    DenseMatrix<T> id = identityMatrix<T>(rank);
    for (Index i = 0; i < rank; ++i) id(i, i) = scalarFromInt<T>(1, ring);
    for (const auto& c : s.covers()) {
        if (c.lower == s.minElement() && !includeMin)
            a.restrictions[0][{c.lower, c.upper}] = zeroMatrix<T>(rank, 0);
        else
            a.restrictions[0][{c.lower, c.upper}] = id;
    }
    return a;
}

template <typename T>
CellularCosheaf<T> constantCosheaf(const SimplicialPoset& s, const CoefficientRing& ring,
                                   Index rank = 1, bool includeMin = false)
{
    CellularCosheaf<T> a;
    a.base = &s;
    a.ring = ring;
    a.includeMin = includeMin;
    a.grades = {0};
    a.ranks.assign(1, std::vector<Index>(static_cast<std::size_t>(s.size()), rank));
    if (!includeMin) a.ranks[0][0] = 0;
    a.corestrictions.assign(1, {});
    DenseMatrix<T> id = identityMatrix<T>(rank);
    for (Index i = 0; i < rank; ++i) id(i, i) = scalarFromInt<T>(1, ring);
    for (const auto& c : s.covers()) {
        if (c.lower == s.minElement() && !includeMin)
            a.corestrictions[0][{c.lower, c.upper}] = zeroMatrix<T>(0, rank);
        else
            a.corestrictions[0][{c.lower, c.upper}] = id;
    }
    return a;
}

/**
 * The sheaf axiom in covering-pair form: around every interval I <..J the
 * two composite restrictions agree.  Returns false with the offending top
 * element when they do not.
 */
template <typename T>
bool sheafFunctorial(const CellularSheaf<T>& a, ElementId* witness = nullptr)
{
    const SimplicialPoset& s = *a.base;
    for (ElementId j = 1; j < s.size(); ++j) {
        const auto& fac = s.facets(j);
        for (std::size_t t = 0; t < fac.size(); ++t)
            for (std::size_t u = t + 1; u < fac.size(); ++u) {
                ElementId j1 = fac[t], j2 = fac[u];
                ElementId i = s.facetOmitting(j1, s.vertexSet(j)[u]);
                if (i == s.minElement() && !a.includeMin) continue;
                for (int q : a.grades) {
                    DenseMatrix<T> viaJ1 = a.restriction(j1, j, q) * a.restriction(i, j1, q);
                    DenseMatrix<T> viaJ2 = a.restriction(j2, j, q) * a.restriction(i, j2, q);
                    if (!isZeroMatrix<T>(viaJ1 - viaJ2)) {
                        if (witness) *witness = j;
                        return false;
                    }
                }
            }
    }
    return true;
}

template <typename T>
bool cosheafFunctorial(const CellularCosheaf<T>& a, ElementId* witness = nullptr)
{
    const SimplicialPoset& s = *a.base;
    for (ElementId j = 1; j < s.size(); ++j) {
        const auto& fac = s.facets(j);
        for (std::size_t t = 0; t < fac.size(); ++t)
            for (std::size_t u = t + 1; u < fac.size(); ++u) {
                ElementId j1 = fac[t], j2 = fac[u];
                ElementId i = s.facetOmitting(j1, s.vertexSet(j)[u]);
                if (i == s.minElement() && !a.includeMin) continue;
                for (int q : a.grades) {
                    DenseMatrix<T> viaJ1 = a.corestriction(j1, i, q) * a.corestriction(j, j1, q);
                    DenseMatrix<T> viaJ2 = a.corestriction(j2, i, q) * a.corestriction(j, j2, q);
                    if (!isZeroMatrix<T>(viaJ1 - viaJ2)) {
                        if (witness) *witness = j;
                        return false;
                    }
                }
            }
    }
    return true;
}

/**
 * A (co)chain complex assembled from a sheaf or cosheaf, remembering the
 * block layout.  Cochain complexes are stored with degrees negated so one
 * ChainComplex engine serves both directions; callers only see honest
 * degrees through groupAt / rankAt / offsets.
 */
template <typename T>
struct SheafComplex {
    ChainComplex<T> chain;
    bool cochain = false;
    std::vector<int> degrees;                              // ascending user degrees
    std::map<int, std::map<ElementId, Index>> offsets;     // user degree -> element -> offset

    GroupDescriptor groupAt(int i) const { return chain.homologyAt(cochain ? -i : i); }
    Index rankAt(int i) const { return chain.rankAt(cochain ? -i : i); }

    std::map<int, GroupDescriptor> groupsAll() const
    {
        std::map<int, GroupDescriptor> out;
        for (int i : degrees) out[i] = groupAt(i);
        return out;
    }
};

/**
 * Cochain complex C^i = direct sum of values on i-dimensional elements,
 * d = sum of incidence-signed restrictions.  Degree -1 is present exactly
 * when the sheaf carries a value at the least element.
 */
template <typename T>
SheafComplex<T> buildCochainComplex(const SimplicialPoset& s, const CellularSheaf<T>& a, int q)
{
    if (a.base != &s) throw std::invalid_argument("buildCochainComplex: sheaf base mismatch");
    if (!sheafFunctorial(a))
        throw std::invalid_argument("buildCochainComplex: sheaf is not functorial");

    SheafComplex<T> out;
    out.cochain = true;
    const int topDim = s.dimension();
    const int loDeg = a.includeMin ? -1 : 0;

    out.chain = ChainComplex<T>(a.ring, -topDim, -loDeg);
    for (int i = loDeg; i <= topDim; ++i) {
        out.degrees.push_back(i);
        Index off = 0;
        for (ElementId e : s.elementsOfDim(i)) {
            out.offsets[i][e] = off;
            off += a.valueRank(e, q);
        }
        out.chain.setRank(-i, off);
    }
    for (int i = loDeg; i < topDim; ++i) {
        DenseMatrix<T> d = zeroMatrix<T>(out.chain.rankAt(-i - 1), out.chain.rankAt(-i));
        for (const auto& c : s.covers()) {
            if (s.dim(c.lower) != i) continue;
            if (c.lower == s.minElement() && !a.includeMin) continue;
            Index rows = a.valueRank(c.upper, q), cols = a.valueRank(c.lower, q);
            if (rows == 0 || cols == 0) continue;
            int sign = (c.omittedIndex % 2 == 0) ? 1 : -1;
            const DenseMatrix<T>& r = a.restriction(c.lower, c.upper, q);
            Index ro = out.offsets.at(i + 1).at(c.upper);
            Index co = out.offsets.at(i).at(c.lower);
            if (sign > 0)
                d.block(ro, co, rows, cols) += r;
            else
                d.block(ro, co, rows, cols) -= r;
        }
        out.chain.setDifferential(-i, std::move(d));
    }
    out.chain.validate();
    return out;
}

/**
 * Chain complex of a cosheaf: C_i = direct sum of values on i-dimensional
 * elements, d = sum of incidence-signed corestrictions.
 */
template <typename T>
SheafComplex<T> buildChainComplex(const SimplicialPoset& s, const CellularCosheaf<T>& a, int q)
{
    if (a.base != &s) throw std::invalid_argument("buildChainComplex: cosheaf base mismatch");
    if (!cosheafFunctorial(a))
        throw std::invalid_argument("buildChainComplex: cosheaf is not functorial");

    SheafComplex<T> out;
    out.cochain = false;
    const int topDim = s.dimension();
    const int loDeg = a.includeMin ? -1 : 0;

    out.chain = ChainComplex<T>(a.ring, loDeg, topDim);
    for (int i = loDeg; i <= topDim; ++i) {
        out.degrees.push_back(i);
        Index off = 0;
        for (ElementId e : s.elementsOfDim(i)) {
            out.offsets[i][e] = off;
            off += a.valueRank(e, q);
        }
        out.chain.setRank(i, off);
    }
    for (int i = loDeg + 1; i <= topDim; ++i) {
        DenseMatrix<T> d = zeroMatrix<T>(out.chain.rankAt(i - 1), out.chain.rankAt(i));
        for (const auto& c : s.covers()) {
            if (s.dim(c.upper) != i) continue;
            if (c.lower == s.minElement() && !a.includeMin) continue;
            Index rows = a.valueRank(c.lower, q), cols = a.valueRank(c.upper, q);
            if (rows == 0 || cols == 0) continue;
            int sign = (c.omittedIndex % 2 == 0) ? 1 : -1;
            const DenseMatrix<T>& r = a.corestriction(c.upper, c.lower, q);
            Index ro = out.offsets.at(i - 1).at(c.lower);
            Index co = out.offsets.at(i).at(c.upper);
            if (sign > 0)
                d.block(ro, co, rows, cols) += r;
            else
                d.block(ro, co, rows, cols) -= r;
        }
        out.chain.setDifferential(i, std::move(d));
    }
    out.chain.validate();
    return out;
}

/**
 * Componentwise tensor product of sheaves on the same base: values tensor,
 * restrictions become Kronecker products.  Inner grades add; the blocks of
 * a fixed total grade are ordered by the grade of the first factor.
 */
template <typename T>
CellularSheaf<T> tensorSheaves(const CellularSheaf<T>& a, const CellularSheaf<T>& b)
{
    if (a.base != b.base) throw std::invalid_argument("tensorSheaves: base mismatch");
    if (!(a.ring == b.ring)) throw std::invalid_argument("tensorSheaves: ring mismatch");

    const SimplicialPoset& s = *a.base;
    CellularSheaf<T> out;
    out.base = a.base;
    out.ring = a.ring;
    out.includeMin = a.includeMin && b.includeMin;

    std::vector<int> sums;
    for (int qa : a.grades)
        for (int qb : b.grades) sums.push_back(qa + qb);
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    out.grades = sums;

    out.ranks.assign(out.grades.size(),
                     std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    out.restrictions.assign(out.grades.size(), {});

    for (std::size_t g = 0; g < out.grades.size(); ++g) {
        int q = out.grades[g];
        for (ElementId e = 0; e < s.size(); ++e) {
            if (e == s.minElement() && !out.includeMin) continue;
            Index r = 0;
            for (int qa : a.grades) r += a.valueRank(e, qa) * b.valueRank(e, q - qa);
            out.ranks[g][static_cast<std::size_t>(e)] = r;
        }
        for (const auto& c : s.covers()) {
            if (c.lower == s.minElement() && !out.includeMin) {
                out.restrictions[g][{c.lower, c.upper}] =
                    zeroMatrix<T>(out.ranks[g][static_cast<std::size_t>(c.upper)], 0);
                continue;
            }
            DenseMatrix<T> block =
                zeroMatrix<T>(out.ranks[g][static_cast<std::size_t>(c.upper)],
                              out.ranks[g][static_cast<std::size_t>(c.lower)]);
            Index ro = 0, co = 0;
            for (int qa : a.grades) {
                int qb = q - qa;
                Index rUp = a.valueRank(c.upper, qa) * b.valueRank(c.upper, qb);
                Index rLo = a.valueRank(c.lower, qa) * b.valueRank(c.lower, qb);
                if (rUp > 0 && rLo > 0) {
                    DenseMatrix<T> k = kroneckerProduct<T>(a.restriction(c.lower, c.upper, qa),
                                                           b.restriction(c.lower, c.upper, qb));
                    block.block(ro, co, rUp, rLo) = k;
                }
                ro += rUp;
                co += rLo;
            }
            out.restrictions[g][{c.lower, c.upper}] = std::move(block);
        }
    }
    return out;
}

/** Composite restriction along any saturated chain from i up to j. */
template <typename T>
DenseMatrix<T> composeRestriction(const CellularSheaf<T>& a, ElementId i, ElementId j, int q)
{
    const SimplicialPoset& s = *a.base;
    if (!s.leq(i, j)) throw std::invalid_argument("composeRestriction: elements not comparable");
    if (i == j) {
        DenseMatrix<T> id = zeroMatrix<T>(a.valueRank(i, q), a.valueRank(i, q));
        for (Index t = 0; t < id.rows(); ++t) id(t, t) = scalarFromInt<T>(1, a.ring);
        return id;
    }
    // peel one covering step off the top
    for (ElementId f : s.facets(j))
        if (s.leq(i, f))
            return DenseMatrix<T>(a.restriction(f, j, q) * composeRestriction(a, i, f, q));
    throw std::logic_error("composeRestriction: no descending path");
}

/** Rank data of the map induced on homology at one chain degree by a map of
 *  complexes phi: C_k(src) -> C_k(dst). */
struct InducedMapRank {
    long sourceDim = 0;
    long targetDim = 0;
    long rank = 0;
};

template <typename T>
InducedMapRank inducedHomologyMap(const ChainComplex<T>& src, const ChainComplex<T>& dst,
                                  int k, const DenseMatrix<T>& phi)
{
    DenseMatrix<T> zSrc = (k > src.lo) ? nullspaceBasis<T>(src.d(k))
                                       : identityMatrix<T>(src.rankAt(k));
    DenseMatrix<T> bSrc = canonicalSpanBasis<T>(src.d(k + 1));
    std::vector<Index> extS = extensionColumns<T>(bSrc, zSrc);

    DenseMatrix<T> zDst = (k > dst.lo) ? nullspaceBasis<T>(dst.d(k))
                                       : identityMatrix<T>(dst.rankAt(k));
    DenseMatrix<T> bDst = canonicalSpanBasis<T>(dst.d(k + 1));
    std::vector<Index> extD = extensionColumns<T>(bDst, zDst);
    DenseMatrix<T> hDst = zeroMatrix<T>(dst.rankAt(k), static_cast<Index>(extD.size()));
    for (Index t = 0; t < static_cast<Index>(extD.size()); ++t)
        hDst.col(t) = zDst.col(extD[static_cast<std::size_t>(t)]);

    InducedMapRank out;
    out.sourceDim = static_cast<long>(extS.size());
    out.targetDim = static_cast<long>(extD.size());

    DenseMatrix<T> span(dst.rankAt(k), bDst.cols() + hDst.cols());
    span << bDst, hDst;
    DenseMatrix<T> images = zeroMatrix<T>(dst.rankAt(k), static_cast<Index>(extS.size()));
    for (Index t = 0; t < static_cast<Index>(extS.size()); ++t)
        images.col(t) = phi * zSrc.col(extS[static_cast<std::size_t>(t)]);
    auto sol = solveInSpan<T>(span, images);
    if (!sol) throw std::logic_error("inducedHomologyMap: image is not a cycle");
    DenseMatrix<T> classes = sol->block(bDst.cols(), 0, hDst.cols(), images.cols());
    out.rank = static_cast<long>(matrixRank<T>(classes));
    return out;
}

/**
 * Relative chain complex of a cosheaf spanned by the elements where keep is
 * true; the differential composes the cosheaf differential with projection.
 */
template <typename T>
ChainComplex<T> relativeChainComplex(const SimplicialPoset& s, const CellularCosheaf<T>& a,
                                     int q, const std::vector<char>& keep)
{
    const int topDim = s.dimension();
    ChainComplex<T> out(a.ring, 0, topDim < 0 ? 0 : topDim);

    std::map<int, std::map<ElementId, Index>> offsets;
    for (int i = 0; i <= topDim; ++i) {
        Index off = 0;
        for (ElementId e : s.elementsOfDim(i)) {
            if (!keep[static_cast<std::size_t>(e)]) continue;
            offsets[i][e] = off;
            off += a.valueRank(e, q);
        }
        out.setRank(i, off);
    }
    for (int i = 1; i <= topDim; ++i) {
        DenseMatrix<T> d = zeroMatrix<T>(out.rankAt(i - 1), out.rankAt(i));
        for (const auto& c : s.covers()) {
            if (s.dim(c.upper) != i) continue;
            if (!keep[static_cast<std::size_t>(c.upper)] ||
                !keep[static_cast<std::size_t>(c.lower)])
                continue;
            Index rows = a.valueRank(c.lower, q), cols = a.valueRank(c.upper, q);
            if (rows == 0 || cols == 0) continue;
            int sign = (c.omittedIndex % 2 == 0) ? 1 : -1;
            const DenseMatrix<T>& r = a.corestriction(c.upper, c.lower, q);
            Index ro = offsets.at(i - 1).at(c.lower);
            Index co = offsets.at(i).at(c.upper);
            if (sign > 0)
                d.block(ro, co, rows, cols) += r;
            else
                d.block(ro, co, rows, cols) -= r;
        }
        out.setDifferential(i, std::move(d));
    }
    out.validate();
    return out;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_SHEAF_HPP
