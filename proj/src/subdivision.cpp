#include "sheafcoh/subdivision.hpp"

#include <algorithm>
#include <stdexcept>

namespace sheafcoh {

int Subdivision::dualFaceDim(ElementId baseElem) const
{
    int d = -1;
    for (ElementId s : dualFace[static_cast<std::size_t>(baseElem)])
        d = std::max(d, complex.dim(s));
    return d;
}

std::vector<ElementId> Subdivision::levelSubcomplex(int p) const
{
    std::vector<ElementId> out;
    for (ElementId s = 1; s < complex.size(); ++s)
        if (levelOf[static_cast<std::size_t>(s)] <= p) out.push_back(s);
    return out;
}

Subdivision subdivide(const SimplicialPoset& s)
{
    if (!s.pure())
        throw std::invalid_argument("subdivide: poset is not pure");

    Subdivision sub;
    sub.base = &s;
    sub.n = s.dimension() + 1;

    // S' is the complex of chains; its facets are the maximal chains, whose
    // subsets are exactly the subchains.  Vertex ids of S' are base ids.
    std::vector<std::vector<VertexId>> flags;
    for (const auto& chain : s.maximalChains())
        flags.emplace_back(chain.begin(), chain.end());
    sub.complex = SimplicialPoset::fromFacets(flags);

    const long m = sub.complex.size();
    sub.chainOf.assign(static_cast<std::size_t>(m), {});
    sub.minOfChain.assign(static_cast<std::size_t>(m), -1);
    sub.levelOf.assign(static_cast<std::size_t>(m), -1);

    for (ElementId e = 1; e < m; ++e) {
        // base ids are rank-monotone, so the sorted vertex set of a chain
        // element is the chain in increasing base order
        std::vector<ElementId> chain(sub.complex.vertexSet(e).begin(),
                                     sub.complex.vertexSet(e).end());
        for (std::size_t t = 1; t < chain.size(); ++t)
            if (!s.leq(chain[t - 1], chain[t]))
                throw std::logic_error("subdivide: vertex order is not the chain order");
        sub.minOfChain[static_cast<std::size_t>(e)] = chain.front();
        sub.levelOf[static_cast<std::size_t>(e)] =
            sub.n - 1 - s.dim(chain.front());
        sub.chainOf[static_cast<std::size_t>(e)] = std::move(chain);
    }

    sub.dualFace.assign(static_cast<std::size_t>(s.size()), {});
    sub.dualBoundary.assign(static_cast<std::size_t>(s.size()), {});
    sub.dualInterior.assign(static_cast<std::size_t>(s.size()), {});
    for (ElementId e = 1; e < m; ++e) {
        ElementId start = sub.minOfChain[static_cast<std::size_t>(e)];
        for (ElementId i = 1; i < s.size(); ++i) {
            if (!s.leq(i, start)) continue;
            sub.dualFace[static_cast<std::size_t>(i)].push_back(e);
            if (start != i)
                sub.dualBoundary[static_cast<std::size_t>(i)].push_back(e);
            else
                sub.dualInterior[static_cast<std::size_t>(i)].push_back(e);
        }
    }
    return sub;
}

}  // namespace sheafcoh
