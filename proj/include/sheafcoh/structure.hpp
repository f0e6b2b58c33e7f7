/**
 * Structure sheaves, local homology, and the Buchsbaum / Cohen-Macaulay /
 * homology-manifold classification.
 *
 * The structure sheaf in inner degree q assigns to an element I the
 * relative homology of its dual cell pair in degree q + dim(G_I); the
 * restriction map along a covering pair is the attaching map of the
 * coskeleton filtration read off at chain level, rectified by the
 * incidence sign.
 */

#ifndef SHEAFCOH_STRUCTURE_HPP
#define SHEAFCOH_STRUCTURE_HPP

#include <map>
#include <vector>

#include "sheafcoh/sheaf.hpp"
#include "sheafcoh/subdivision.hpp"

namespace sheafcoh {

/**
 * Relative chain data of one dual cell pair (G_I, boundary) with constant
 * field coefficients, keeping representative cycles so that attaching maps
 * can be expressed in the chosen homology bases.
 */
template <typename T>
struct DualCellData {
    std::vector<std::vector<ElementId>> cells;   // [m] -> interior simplices of dim m
    std::vector<std::map<ElementId, Index>> pos; // inverse of cells
    ChainComplex<T> complex;                     // relative complex
    std::vector<DenseMatrix<T>> boundaries;      // [m] image of d_{m+1}
    std::vector<DenseMatrix<T>> reps;            // [m] homology representatives
    int topDim = -1;

    Index homologyRank(int m) const
    {
        if (m < 0 || m > topDim) return 0;
        return reps[static_cast<std::size_t>(m)].cols();
    }

    /** Coordinates of a relative cycle in the homology basis at degree m. */
    DenseVector<T> classOf(int m, const DenseVector<T>& cycle) const
    {
        const DenseMatrix<T>& b = boundaries[static_cast<std::size_t>(m)];
        const DenseMatrix<T>& h = reps[static_cast<std::size_t>(m)];
        DenseMatrix<T> span(cycle.size(), b.cols() + h.cols());
        span << b, h;
        auto sol = solveInSpan<T>(span, cycle);
        if (!sol) throw std::logic_error("DualCellData: vector is not a relative cycle");
        return sol->block(b.cols(), 0, h.cols(), 1);
    }
};

template <typename T>
DualCellData<T> dualCellData(const SimplicialPoset& s, const Subdivision& sub,
                             ElementId baseElem, const CoefficientRing& ring)
{
    DualCellData<T> out;
    const int top = sub.n - 1 - s.dim(baseElem);
    out.topDim = top;
    out.cells.assign(static_cast<std::size_t>(top + 1), {});
    out.pos.assign(static_cast<std::size_t>(top + 1), {});
    for (ElementId e : sub.dualInterior[static_cast<std::size_t>(baseElem)]) {
        int m = sub.complex.dim(e);
        out.pos[static_cast<std::size_t>(m)][e] =
            static_cast<Index>(out.cells[static_cast<std::size_t>(m)].size());
        out.cells[static_cast<std::size_t>(m)].push_back(e);
    }

    out.complex = ChainComplex<T>(ring, 0, top);
    for (int m = 0; m <= top; ++m)
        out.complex.setRank(m, static_cast<Index>(out.cells[static_cast<std::size_t>(m)].size()));
    for (int m = 1; m <= top; ++m) {
        DenseMatrix<T> d = zeroMatrix<T>(out.complex.rankAt(m - 1), out.complex.rankAt(m));
        const auto& col = out.cells[static_cast<std::size_t>(m)];
        for (Index j = 0; j < static_cast<Index>(col.size()); ++j) {
            ElementId e = col[static_cast<std::size_t>(j)];
            const auto& fac = sub.complex.facets(e);
            for (std::size_t t = 0; t < fac.size(); ++t) {
                auto it = out.pos[static_cast<std::size_t>(m - 1)].find(fac[t]);
                if (it == out.pos[static_cast<std::size_t>(m - 1)].end()) continue;
                int sign = (t % 2 == 0) ? 1 : -1;
                d(it->second, j) = scalarFromInt<T>(sign, ring);
            }
        }
        out.complex.setDifferential(m, std::move(d));
    }
    out.complex.validate();

    out.boundaries.resize(static_cast<std::size_t>(top + 1));
    out.reps.resize(static_cast<std::size_t>(top + 1));
    for (int m = 0; m <= top; ++m) {
        DenseMatrix<T> bnd = canonicalSpanBasis<T>(out.complex.d(m + 1));
        DenseMatrix<T> cyc = (m > 0) ? nullspaceBasis<T>(out.complex.d(m))
                                     : identityMatrix<T>(out.complex.rankAt(0));
        std::vector<Index> ext = extensionColumns<T>(bnd, cyc);
        DenseMatrix<T> h = zeroMatrix<T>(out.complex.rankAt(m), static_cast<Index>(ext.size()));
        for (Index k = 0; k < static_cast<Index>(ext.size()); ++k)
            h.col(k) = cyc.col(ext[static_cast<std::size_t>(k)]);
        out.boundaries[static_cast<std::size_t>(m)] = std::move(bnd);
        out.reps[static_cast<std::size_t>(m)] = std::move(h);
    }
    return out;
}

/**
 * Relative homology of one dual cell pair over any coefficient ring,
 * reported per degree.  This is the value table of the structure sheaves
 * without choosing maps.
 */
template <typename T>
std::map<int, GroupDescriptor> dualCellHomology(const SimplicialPoset& s, const Subdivision& sub,
                                                ElementId baseElem, const CoefficientRing& ring)
{
    std::vector<char> keep(static_cast<std::size_t>(sub.complex.size()), 0);
    for (ElementId e : sub.dualInterior[static_cast<std::size_t>(baseElem)])
        keep[static_cast<std::size_t>(e)] = 1;
    CellularCosheaf<T> k = constantCosheaf<T>(sub.complex, ring);
    ChainComplex<T> rel = relativeChainComplex<T>(sub.complex, k, 0, keep);
    (void)s;
    return rel.homologyAll();
}

/**
 * The structure sheaf in inner degree q over a field.  Values outside
 * q in [-(n-1), 0] are the zero sheaf.
 */
template <typename T>
CellularSheaf<T> structureSheaf(const SimplicialPoset& s, const Subdivision& sub, int q,
                                const CoefficientRing& ring)
{
    if (!s.pure()) throw std::invalid_argument("structureSheaf: poset is not pure");
    if (!ring.isField()) throw std::invalid_argument("structureSheaf: field coefficients required");

    // the homological offset q is a parameter, not an inner grading, so the
    // result is an ungraded sheaf (everything in grade 0)
    CellularSheaf<T> out;
    out.base = &s;
    out.ring = ring;
    out.includeMin = false;
    out.grades = {0};
    out.ranks.assign(1, std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    out.restrictions.assign(1, {});

    std::vector<DualCellData<T>> data(static_cast<std::size_t>(s.size()));
    for (ElementId e = 1; e < s.size(); ++e) {
        data[static_cast<std::size_t>(e)] = dualCellData<T>(s, sub, e, ring);
        int m = q + sub.n - 1 - s.dim(e);
        out.ranks[0][static_cast<std::size_t>(e)] =
            data[static_cast<std::size_t>(e)].homologyRank(m);
    }

    for (const auto& c : s.covers()) {
        if (c.lower == s.minElement()) {
            out.restrictions[0][{c.lower, c.upper}] =
                zeroMatrix<T>(out.ranks[0][static_cast<std::size_t>(c.upper)], 0);
            continue;
        }
        const DualCellData<T>& di = data[static_cast<std::size_t>(c.lower)];
        const DualCellData<T>& dj = data[static_cast<std::size_t>(c.upper)];
        const int mi = q + sub.n - 1 - s.dim(c.lower);
        const int mj = mi - 1;   // q + dim G_J
        Index rI = di.homologyRank(mi), rJ = dj.homologyRank(mj);
        DenseMatrix<T> block = zeroMatrix<T>(rJ, rI);
        if (rI > 0 && rJ > 0) {
            for (Index col = 0; col < rI; ++col) {
                // full simplicial boundary of the representative, projected
                // onto the interior cells of the upper dual face
                DenseVector<T> proj = zeroMatrix<T>(dj.complex.rankAt(mj), 1).col(0);
                const DenseVector<T> rep = di.reps[static_cast<std::size_t>(mi)].col(col);
                const auto& cellsI = di.cells[static_cast<std::size_t>(mi)];
                for (Index a = 0; a < rep.size(); ++a) {
                    if (rep(a) == T(0)) continue;
                    ElementId simplex = cellsI[static_cast<std::size_t>(a)];
                    const auto& fac = sub.complex.facets(simplex);
                    for (std::size_t t = 0; t < fac.size(); ++t) {
                        auto it = dj.pos[static_cast<std::size_t>(mj)].find(fac[t]);
                        if (it == dj.pos[static_cast<std::size_t>(mj)].end()) continue;
                        T term = rep(a) * scalarFromInt<T>(t % 2 == 0 ? 1 : -1, ring);
                        proj(it->second) += term;
                    }
                }
                block.col(col) = dj.classOf(mj, proj);
            }
            int sign = s.incidenceSign(c.upper, c.lower);
            if (sign < 0) block = -block;
        }
        out.restrictions[0][{c.lower, c.upper}] = std::move(block);
    }
    return out;
}

/**
 * Local homology table: for every element J != min and degree i, the group
 * H_i(S, S minus the open star of J), computed from the quotient cellular
 * complex of the base poset (values only, no maps).
 */
template <typename T>
std::map<ElementId, std::map<int, GroupDescriptor>> localHomologyRanks(
    const SimplicialPoset& s, const CoefficientRing& ring)
{
    std::map<ElementId, std::map<int, GroupDescriptor>> out;
    CellularCosheaf<T> k = constantCosheaf<T>(s, ring);
    for (ElementId j = 1; j < s.size(); ++j) {
        std::vector<char> keep(static_cast<std::size_t>(s.size()), 0);
        for (ElementId e = 1; e < s.size(); ++e)
            if (s.leq(j, e)) keep[static_cast<std::size_t>(e)] = 1;
        ChainComplex<T> rel = relativeChainComplex<T>(s, k, 0, keep);
        out[j] = rel.homologyAll();
    }
    return out;
}

struct ClassificationReport {
    CoefficientRing ring;
    bool pure = false;
    bool connected = false;
    bool buchsbaum = false;
    bool cohenMacaulay = false;
    bool homologyManifold = false;
    bool orientable = false;
    // reduced link homology of the offending elements (witness data)
    std::map<ElementId, std::map<int, GroupDescriptor>> linkHomology;
    std::vector<ElementId> buchsbaumFailures;
};

/**
 * Reduced homology of the link of every element via the augmented cellular
 * chain complex, then the link criteria for Buchsbaum / Cohen-Macaulay /
 * homology manifold, and global top homology for orientability.
 */
template <typename T>
ClassificationReport classifyPoset(const SimplicialPoset& s, const CoefficientRing& ring)
{
    ClassificationReport rep;
    rep.ring = ring;
    rep.pure = s.pure();
    rep.connected = s.validate().connected;
    const int n = s.dimension() + 1;

    rep.buchsbaum = true;
    rep.homologyManifold = true;
    for (ElementId e = 0; e < s.size(); ++e) {
        auto star = s.starAndLink(e);
        CellularCosheaf<T> k = constantCosheaf<T>(star.link, ring, 1, true);
        SheafComplex<T> c = buildChainComplex<T>(star.link, k, 0);
        std::map<int, GroupDescriptor> reduced = c.groupsAll();
        // the augmentation is onto for nonempty links, so H_{-1} vanishes
        // there and survives exactly for the empty link
        const int expected = n - 1 - s.rank(e);
        bool offTop = false;
        for (const auto& [deg, g] : reduced)
            if (deg != expected && !g.isZero()) offTop = true;
        if (e == s.minElement()) {
            rep.cohenMacaulay = !offTop;
            rep.linkHomology[e] = reduced;
            continue;
        }
        if (offTop) {
            rep.buchsbaum = false;
            rep.buchsbaumFailures.push_back(e);
            rep.linkHomology[e] = reduced;
        }
        GroupDescriptor topGroup = reduced.count(expected) ? reduced[expected] : GroupDescriptor{};
        if (!(topGroup.freeRank == 1 && topGroup.torsion.empty()))
            rep.homologyManifold = false;
    }
    rep.cohenMacaulay = rep.cohenMacaulay && rep.buchsbaum;
    rep.homologyManifold = rep.homologyManifold && rep.buchsbaum;

    CellularCosheaf<T> k = constantCosheaf<T>(s, ring);
    SheafComplex<T> c = buildChainComplex<T>(s, k, 0);
    GroupDescriptor top = c.groupAt(n - 1);
    rep.orientable = rep.connected && top.freeRank == 1 && top.torsion.empty();
    return rep;
}

/** Runtime-dispatched classification. */
inline ClassificationReport classify(const SimplicialPoset& s, const CoefficientRing& ring)
{
    switch (ring.kind) {
        case CoefficientRing::Kind::Integers:  return classifyPoset<Int>(s, ring);
        case CoefficientRing::Kind::Rationals: return classifyPoset<Rat>(s, ring);
        case CoefficientRing::Kind::PrimeField: return classifyPoset<GF>(s, ring);
    }
    throw std::logic_error("classify: unknown ring");
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_STRUCTURE_HPP
