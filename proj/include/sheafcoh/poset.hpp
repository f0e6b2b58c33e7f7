/**
 * Finite simplicial posets: posets with a least element whose lower
 * intervals are boolean lattices.  Generalizes abstract simplicial
 * complexes by allowing distinct elements with the same vertex set.
 */

#ifndef SHEAFCOH_POSET_HPP
#define SHEAFCOH_POSET_HPP

#include <optional>
#include <string>
#include <vector>

namespace sheafcoh {

using VertexId = int;
using ElementId = int;

/** One poset element: its sorted vertex set and its codimension-1 faces. */
struct PosetElement {
    std::vector<VertexId> vertices;   // sorted; empty for the least element
    std::vector<ElementId> facets;    // facets[t] omits vertices[t]
};

struct ValidationReport {
    bool booleanOk = true;          // every lower interval is a boolean lattice
    bool signSquareOk = true;       // incidence signs cancel on length-2 intervals
    bool pure = false;
    bool connected = false;
    std::optional<ElementId> booleanWitness;
    std::vector<std::string> messages;

    bool allOk() const { return booleanOk && signSquareOk; }
};

/** A cell for fromCells: vertex list plus facet assignments by omitted vertex. */
struct CellSpec {
    std::vector<VertexId> vertices;
    std::vector<ElementId> facets;   // aligned with sorted(vertices); empty for vertices
};

struct StarLink;

class SimplicialPoset {
public:
    /** Poset of all faces of a simplicial complex given by its facet list. */
    static SimplicialPoset fromFacets(const std::vector<std::vector<VertexId>>& facets);

    /**
     * General simplicial poset from explicit cells.  Cells must be declared
     * in weakly increasing rank order and may share vertex sets.  Rank-1
     * cells may leave `facets` empty.  Throws std::invalid_argument when a
     * facet assignment is inconsistent or a lower interval fails to be
     * boolean.
     */
    static SimplicialPoset fromCells(const std::vector<CellSpec>& cells);

    /**
     * Build without the boolean-interval and facet-consistency checks, so
     * that validate() can report structural defects instead of a throw.
     */
    static SimplicialPoset fromCellsUnchecked(const std::vector<CellSpec>& cells);

    long size() const { return static_cast<long>(elements_.size()); }

    ElementId minElement() const { return 0; }
    int rank(ElementId e) const { return static_cast<int>(elements_[checked(e)].vertices.size()); }
    int dim(ElementId e) const { return rank(e) - 1; }
    const std::vector<VertexId>& vertexSet(ElementId e) const { return elements_[checked(e)].vertices; }
    const std::vector<ElementId>& facets(ElementId e) const { return elements_[checked(e)].facets; }

    /** All distinct vertex ids in use. */
    std::vector<VertexId> vertexIds() const;

    /** Elements of a given dimension (dim -1 = the least element only). */
    const std::vector<ElementId>& elementsOfDim(int d) const;

    int dimension() const { return maxDim_; }   // n - 1
    bool pure() const { return pure_; }

    bool leq(ElementId a, ElementId b) const;
    std::vector<ElementId> lowerIdeal(ElementId e) const;   // {J <= e}
    std::vector<ElementId> upperSet(ElementId e) const;     // {J >= e}

    /** Covering pair I <. J recorded as (lower, upper, omitted position). */
    struct Cover {
        ElementId lower;
        ElementId upper;
        int omittedIndex;
    };
    const std::vector<Cover>& covers() const { return covers_; }

    /**
     * Incidence number [J : I] for a covering pair I <. J: (-1)^t where t is
     * the position of the omitted vertex in the sorted vertex set of J.
     * Throws when the pair is not a covering relation.
     */
    int incidenceSign(ElementId upper, ElementId lower) const;

    /** Face of e omitting the given vertex. */
    ElementId facetOmitting(ElementId e, VertexId v) const;

    /** All structural checks; never throws, failures go into the report. */
    ValidationReport validate() const;

    /** Open star {J >= I} and the link as a standalone poset. */
    StarLink starAndLink(ElementId e) const;

    /** Saturated chains of non-least elements ending in maximal elements. */
    std::vector<std::vector<ElementId>> maximalChains() const;

private:
    std::vector<PosetElement> elements_;
    std::vector<std::vector<ElementId>> byDim_;   // byDim_[d+1] = elements of dim d
    std::vector<std::vector<bool>> leq_;          // leq_[a][b] : a <= b
    std::vector<Cover> covers_;
    bool pure_ = false;
    int maxDim_ = -1;

    ElementId checked(ElementId e) const;
    void finalize();     // derived tables; assumes ids are rank-monotone
};

struct StarLink {
    std::vector<ElementId> star;          // {J >= I}, ascending ids
    SimplicialPoset link;                 // standalone poset rooted at I
    std::vector<ElementId> linkToBase;    // link element id -> id in the base poset
};

}  // namespace sheafcoh

#endif  // SHEAFCOH_POSET_HPP
