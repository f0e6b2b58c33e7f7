/**
 * Orbit-space posets of locally standard torus actions and the comparison
 * of the two second pages: the free side carries the constant exterior
 * algebra sheaf, the identified side its quotient by the ideal sheaf, and
 * the projection induces the page map whose behavior away from the diagonal
 * is the verified statement.
 */

#ifndef SHEAFCOH_TORIC_HPP
#define SHEAFCOH_TORIC_HPP

#include <map>
#include <string>
#include <vector>

#include "sheafcoh/charfun.hpp"
#include "sheafcoh/structure.hpp"

namespace sheafcoh {

struct OrbitPoset {
    SimplicialPoset poset;
    int torusRank = 0;          // n; the poset has dimension n-1
    std::string provenance;     // "simplex", "cube", or "user"
};

/** Dual face poset of the n-simplex orbit space: the boundary complex of
 *  the n-simplex on vertices 1..n+1. */
inline OrbitPoset orbitSimplex(int n)
{
    if (n < 1) throw std::invalid_argument("orbitSimplex: n must be positive");
    std::vector<std::vector<VertexId>> facets;
    for (int omit = 1; omit <= n + 1; ++omit) {
        std::vector<VertexId> f;
        for (int v = 1; v <= n + 1; ++v)
            if (v != omit) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return {SimplicialPoset::fromFacets(facets), n, "simplex"};
}

/** Dual face poset of the n-cube orbit space: the boundary complex of the
 *  n-dimensional cross-polytope.  Vertex 2i-1 is the positive pole of axis
 *  i, vertex 2i the negative pole. */
inline OrbitPoset orbitCube(int n)
{
    if (n < 1) throw std::invalid_argument("orbitCube: n must be positive");
    std::vector<std::vector<VertexId>> facets;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<VertexId> f;
        for (int i = 0; i < n; ++i)
            f.push_back((mask & (1ul << i)) ? 2 * i + 2 : 2 * i + 1);
        std::sort(f.begin(), f.end());
        facets.push_back(std::move(f));
    }
    return {SimplicialPoset::fromFacets(facets), n, "cube"};
}

/** User-supplied orbit poset, gated on the homology-manifold classification. */
inline OrbitPoset orbitFromUser(SimplicialPoset poset, const CoefficientRing& ring)
{
    ClassificationReport cls = classify(poset, ring);
    if (!cls.buchsbaum || !cls.homologyManifold || !cls.orientable) {
        std::string why = !cls.buchsbaum ? "not Buchsbaum"
                          : !cls.homologyManifold ? "not a homology manifold"
                                                  : "not orientable";
        if (!cls.buchsbaumFailures.empty())
            why += " (witness element " + std::to_string(cls.buchsbaumFailures.front()) + ")";
        throw std::invalid_argument("orbitFromUser: " + why + " over " + ring.name());
    }
    const int n = poset.dimension() + 1;
    return {std::move(poset), n, "user"};
}

/** Characteristic data of the projective-space action on the simplex orbit:
 *  the coordinate vectors plus their sum. */
inline CharacteristicFunction simplexCharacteristic(int n)
{
    CharacteristicFunction cf;
    cf.lambda = n;
    for (int v = 1; v <= n; ++v) {
        std::vector<Int> vec(static_cast<std::size_t>(n), 0);
        vec[static_cast<std::size_t>(v - 1)] = 1;
        cf.omega[v] = std::move(vec);
    }
    std::vector<Int> sum(static_cast<std::size_t>(n), 1);
    cf.omega[n + 1] = std::move(sum);
    return cf;
}

/** Characteristic data on the cube orbit: opposite facets share a vector. */
inline CharacteristicFunction cubeCharacteristic(int n)
{
    CharacteristicFunction cf;
    cf.lambda = n;
    for (int i = 0; i < n; ++i) {
        std::vector<Int> vec(static_cast<std::size_t>(n), 0);
        vec[static_cast<std::size_t>(i)] = 1;
        cf.omega[2 * i + 1] = vec;
        cf.omega[2 * i + 2] = vec;
    }
    return cf;
}

/** The constant exterior-algebra sheaf, its quotient by the ideal sheaf,
 *  and the componentwise projection matrices. */
template <typename T>
struct LambdaQuotient {
    CellularSheaf<T> lambdaSheaf;                          // rank C(n,q) in grade q
    CellularSheaf<T> quotient;                             // values Lambda/I
    std::vector<std::vector<DenseMatrix<T>>> projection;   // [q][element]
    IdealSheaf<T> ideal;
};

/**
 * Quotient bases are the monomials away from the pivot rows of the ideal
 * basis; the projection reduces a monomial modulo the ideal and reads off
 * the surviving coordinates.  The kernel is checked to be exactly the ideal
 * componentwise.
 */
template <typename T>
LambdaQuotient<T> lambdaAndQuotient(const SimplicialPoset& s, const CharacteristicFunction& cf,
                                    const CoefficientRing& ring)
{
    static_assert(!std::is_same_v<T, Int>,
                  "lambdaAndQuotient: quotient bases require field coefficients");

    LambdaQuotient<T> out;
    out.ideal = buildIdealSheaf<T>(s, cf, ring);
    const int lambda = cf.lambda;
    ExteriorAlgebra ext(lambda);

    CellularSheaf<T>& lam = out.lambdaSheaf;
    lam.base = &s;
    lam.ring = ring;
    lam.includeMin = false;
    for (int q = 0; q <= lambda; ++q) lam.grades.push_back(q);
    lam.ranks.assign(lam.grades.size(), std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    lam.restrictions.assign(lam.grades.size(), {});
    for (int q = 0; q <= lambda; ++q) {
        for (ElementId e = 1; e < s.size(); ++e)
            lam.ranks[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] =
                ext.dimOfDegree(q);
        DenseMatrix<T> id = identityMatrix<T>(ext.dimOfDegree(q));
        for (Index t = 0; t < id.rows(); ++t) id(t, t) = scalarFromInt<T>(1, ring);
        for (const auto& c : s.covers())
            lam.restrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] =
                (c.lower == s.minElement()) ? zeroMatrix<T>(ext.dimOfDegree(q), 0) : id;
    }

    CellularSheaf<T>& quo = out.quotient;
    quo.base = &s;
    quo.ring = ring;
    quo.includeMin = false;
    quo.grades = lam.grades;
    quo.ranks.assign(quo.grades.size(), std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    quo.restrictions.assign(quo.grades.size(), {});
    out.projection.assign(quo.grades.size(),
                          std::vector<DenseMatrix<T>>(static_cast<std::size_t>(s.size())));

    // pivot rows of the canonical ideal basis at each element and grade
    std::vector<std::vector<std::vector<Index>>> freeRows(
        quo.grades.size(), std::vector<std::vector<Index>>(static_cast<std::size_t>(s.size())));

    for (int q = 0; q <= lambda; ++q) {
        const Index dim = ext.dimOfDegree(q);
        for (ElementId e = 1; e < s.size(); ++e) {
            const DenseMatrix<T>& b =
                out.ideal.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)];
            std::vector<bool> isPivot(static_cast<std::size_t>(dim), false);
            for (Index col = 0; col < b.cols(); ++col) {
                Index piv = -1;
                for (Index row = 0; row < dim; ++row)
                    if (!(b(row, col) == T(0))) { piv = row; break; }
                isPivot[static_cast<std::size_t>(piv)] = true;
            }
            std::vector<Index>& fr = freeRows[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)];
            for (Index row = 0; row < dim; ++row)
                if (!isPivot[static_cast<std::size_t>(row)]) fr.push_back(row);
            quo.ranks[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] =
                static_cast<Index>(fr.size());

            // projection: reduce each monomial modulo the ideal basis
            DenseMatrix<T> p = zeroMatrix<T>(static_cast<Index>(fr.size()), dim);
            for (Index col = 0; col < dim; ++col) {
                DenseVector<T> v = zeroMatrix<T>(dim, 1).col(0);
                v(col) = scalarFromInt<T>(1, ring);
                for (Index ic = 0; ic < b.cols(); ++ic) {
                    Index piv = -1;
                    for (Index row = 0; row < dim; ++row)
                        if (!(b(row, ic) == T(0))) { piv = row; break; }
                    T coeff = v(piv) / b(piv, ic);
                    if (!(coeff == T(0))) v -= coeff * b.col(ic);
                }
                for (Index t = 0; t < static_cast<Index>(fr.size()); ++t)
                    p(t, col) = v(fr[static_cast<std::size_t>(t)]);
            }
            // kernel of the projection is the ideal: rank bookkeeping
            if (b.cols() + static_cast<Index>(fr.size()) != dim)
                throw std::logic_error("lambdaAndQuotient: quotient rank mismatch");
            if (b.cols() > 0 && !isZeroMatrix<T>(DenseMatrix<T>(p * b)))
                throw std::logic_error("lambdaAndQuotient: ideal escapes the kernel");
            out.projection[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] =
                std::move(p);
        }

        for (const auto& c : s.covers()) {
            if (c.lower == s.minElement()) {
                quo.restrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] = zeroMatrix<T>(
                    quo.ranks[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.upper)], 0);
                continue;
            }
            // a representative monomial of the lower element, reduced in the
            // upper element's quotient coordinates
            const auto& frLow =
                freeRows[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.lower)];
            const DenseMatrix<T>& pUp =
                out.projection[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.upper)];
            DenseMatrix<T> r = zeroMatrix<T>(pUp.rows(), static_cast<Index>(frLow.size()));
            for (Index t = 0; t < static_cast<Index>(frLow.size()); ++t)
                r.col(t) = pUp.col(frLow[static_cast<std::size_t>(t)]);
            quo.restrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] = std::move(r);
        }
    }
    return out;
}

struct PageComparisonCell {
    int p = 0;
    int q = 0;
    long rankFree = 0;       // dim of the page entry on the free side
    long rankIdentified = 0; // dim on the identified side
    long rankMap = 0;        // rank of the induced map
    bool isoExpected = false;
    bool injExpected = false;
    bool ok = true;
};

struct PageComparisonReport {
    int torusRank = 0;
    std::vector<PageComparisonCell> cells;
    std::map<int, bool> lesOk;                            // per inner degree
    std::map<std::pair<int, int>, long> idealCohomology;  // (q, i) -> rank
    bool allVerdicts = true;
    bool allLes = true;

    bool pass() const { return allVerdicts && allLes; }
};

/**
 * Both second pages as sheaf cohomology, the induced map from the
 * componentwise projection, the off-diagonal isomorphism / diagonal
 * injectivity verdicts, and the long-exact-sequence rank bookkeeping
 * against the ideal cohomology.
 */
template <typename T>
PageComparisonReport comparePages(const OrbitPoset& sq, const CharacteristicFunction& cf,
                                  const CoefficientRing& ring)
{
    const SimplicialPoset& s = sq.poset;
    const int n = sq.torusRank;
    if (cf.lambda != n)
        throw std::invalid_argument("comparePages: lambda must equal the torus rank");

    LambdaQuotient<T> lq = lambdaAndQuotient<T>(s, cf, ring);
    PageComparisonReport rep;
    rep.torusRank = n;

    for (int q = 0; q <= n; ++q) {
        SheafComplex<T> cy = buildCochainComplex<T>(s, lq.lambdaSheaf, q);
        SheafComplex<T> cx = buildCochainComplex<T>(s, lq.quotient, q);
        SheafComplex<T> ci = buildCochainComplex<T>(s, lq.ideal.sheaf, q);

        std::vector<long> y(static_cast<std::size_t>(n) + 1, 0),
            x(static_cast<std::size_t>(n) + 1, 0), kk(static_cast<std::size_t>(n) + 1, 0),
            b(static_cast<std::size_t>(n) + 1, 0);

        for (int i = 0; i <= n - 1; ++i) {
            // the cochain map assembled from the projections, degree i block
            DenseMatrix<T> phi = zeroMatrix<T>(cx.rankAt(i), cy.rankAt(i));
            for (ElementId e : s.elementsOfDim(i)) {
                const DenseMatrix<T>& pe =
                    lq.projection[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)];
                if (pe.rows() == 0 || pe.cols() == 0) continue;
                phi.block(cx.offsets.at(i).at(e), cy.offsets.at(i).at(e), pe.rows(), pe.cols()) =
                    pe;
            }
            InducedMapRank f = inducedHomologyMap<T>(cy.chain, cx.chain, -i, phi);

            PageComparisonCell cell;
            cell.p = n - 1 - i;
            cell.q = q;
            cell.rankFree = f.sourceDim;
            cell.rankIdentified = f.targetDim;
            cell.rankMap = f.rank;
            cell.isoExpected = cell.p > q;
            cell.injExpected = cell.p == q;
            if (cell.isoExpected)
                cell.ok = (f.rank == f.sourceDim && f.rank == f.targetDim);
            else if (cell.injExpected)
                cell.ok = (f.rank == f.sourceDim);
            rep.allVerdicts = rep.allVerdicts && cell.ok;

            y[static_cast<std::size_t>(i)] = f.sourceDim;
            x[static_cast<std::size_t>(i)] = f.targetDim;
            b[static_cast<std::size_t>(i)] = f.rank;
            kk[static_cast<std::size_t>(i)] = ci.groupAt(i).freeRank;
            rep.idealCohomology[{q, i}] = kk[static_cast<std::size_t>(i)];
            rep.cells.push_back(cell);
        }

        // exactness of ... -> H^{i-1}(L) -> H^{i-1}(L/I) -> H^i(I) -> H^i(L) -> ...
        // by rank counting: dim H^i(I) = coker(f at i-1) + ker(f at i)
        bool les = true;
        for (int i = 0; i <= n; ++i) {
            long coker = (i >= 1) ? x[static_cast<std::size_t>(i - 1)] -
                                        b[static_cast<std::size_t>(i - 1)]
                                  : 0;
            long kerf = (i <= n - 1)
                            ? y[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]
                            : 0;
            long ki = (i <= n - 1) ? kk[static_cast<std::size_t>(i)] : 0;
            if (ki != coker + kerf) les = false;
        }
        rep.lesOk[q] = les;
        rep.allLes = rep.allLes && les;
    }
    return rep;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_TORIC_HPP
