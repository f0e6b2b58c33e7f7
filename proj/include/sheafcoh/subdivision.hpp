/**
 * Barycentric subdivision of a pure simplicial poset, with dual faces and
 * the coskeleton filtration.
 *
 * The subdivision S' is itself a SimplicialPoset (a genuine simplicial
 * complex) whose vertex ids are the element ids of the base poset.  The
 * dual face G_I consists of the chains starting at or above I; its boundary
 * consists of the chains starting strictly above I.  The coskeleton level
 * of a chain is n-1-dim(min), so level-p chains sweep out the union of
 * dual faces of dimension at most p.
 */

#ifndef SHEAFCOH_SUBDIVISION_HPP
#define SHEAFCOH_SUBDIVISION_HPP

#include <vector>

#include "sheafcoh/poset.hpp"

namespace sheafcoh {

struct Subdivision {
    const SimplicialPoset* base = nullptr;
    SimplicialPoset complex;                         // S'
    int n = 0;                                       // rank of the base, dim S = n-1

    std::vector<std::vector<ElementId>> chainOf;     // S' element -> base chain
    std::vector<ElementId> minOfChain;               // S' element -> chain minimum
    std::vector<int> levelOf;                        // S' element -> coskeleton level

    // indexed by base element id (entry 0 unused)
    std::vector<std::vector<ElementId>> dualFace;      // G_I, ascending S' ids
    std::vector<std::vector<ElementId>> dualBoundary;  // boundary of G_I
    std::vector<std::vector<ElementId>> dualInterior;  // G_I minus its boundary

    int dualFaceDim(ElementId baseElem) const;

    /** S_p = union of dual faces of dimension <= p, as S' element ids. */
    std::vector<ElementId> levelSubcomplex(int p) const;
};

/**
 * Subdivide a pure simplicial poset.  Throws std::invalid_argument for
 * non-pure input, where dual faces would not have uniform dimension.
 */
Subdivision subdivide(const SimplicialPoset& s);

}  // namespace sheafcoh

#endif  // SHEAFCOH_SUBDIVISION_HPP
