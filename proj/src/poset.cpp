#include "sheafcoh/poset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sheafcoh {

namespace {

std::vector<VertexId> sortedUnique(std::vector<VertexId> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

bool hasDuplicates(const std::vector<VertexId>& sorted)
{
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

ElementId SimplicialPoset::checked(ElementId e) const
{
    if (e < 0 || e >= static_cast<ElementId>(elements_.size()))
        throw std::invalid_argument("SimplicialPoset: unknown element id " + std::to_string(e));
    return e;
}

SimplicialPoset SimplicialPoset::fromFacets(const std::vector<std::vector<VertexId>>& facets)
{
    if (facets.empty())
        throw std::invalid_argument("fromFacets: empty facet list");
    for (const auto& f : facets) {
        if (f.empty())
            throw std::invalid_argument("fromFacets: facet with no vertices");
        if (hasDuplicates(sortedUnique(f)))
            throw std::invalid_argument("fromFacets: facet with repeated vertices");
    }

    // collect all subsets of all facets, deduplicated by vertex set
    std::set<std::vector<VertexId>> subsets;
    for (const auto& f : facets) {
        std::vector<VertexId> s = sortedUnique(f);
        const std::size_t k = s.size();
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
            std::vector<VertexId> sub;
            for (std::size_t t = 0; t < k; ++t)
                if (mask & (1ul << t)) sub.push_back(s[t]);
            subsets.insert(std::move(sub));
        }
    }

    // ids in (rank, lexicographic vertex list) order; the least element is 0
    std::vector<std::vector<VertexId>> ordered(subsets.begin(), subsets.end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });

    SimplicialPoset p;
    p.elements_.push_back(PosetElement{});  // least element
    std::map<std::vector<VertexId>, ElementId> idOf;
    idOf[{}] = 0;
    for (const auto& s : ordered) {
        ElementId id = static_cast<ElementId>(p.elements_.size());
        idOf[s] = id;
        PosetElement el;
        el.vertices = s;
        for (std::size_t t = 0; t < s.size(); ++t) {
            std::vector<VertexId> face = s;
            face.erase(face.begin() + static_cast<long>(t));
            el.facets.push_back(idOf.at(face));
        }
        p.elements_.push_back(std::move(el));
    }
    p.finalize();
    return p;
}

SimplicialPoset SimplicialPoset::fromCells(const std::vector<CellSpec>& cells)
{
    if (cells.empty())
        throw std::invalid_argument("fromCells: empty cell list");

    SimplicialPoset p;
    p.elements_.push_back(PosetElement{});

    int prevRank = 0;
    for (const CellSpec& c : cells) {
        std::vector<VertexId> verts = sortedUnique(c.vertices);
        if (verts.empty())
            throw std::invalid_argument("fromCells: cell with no vertices");
        if (hasDuplicates(verts))
            throw std::invalid_argument("fromCells: cell with repeated vertices");
        const int k = static_cast<int>(verts.size());
        if (k < prevRank)
            throw std::invalid_argument("fromCells: cells must be declared in increasing rank order");
        prevRank = k;

        PosetElement el;
        el.vertices = verts;
        if (k == 1) {
            if (!c.facets.empty() && !(c.facets.size() == 1 && c.facets[0] == 0))
                throw std::invalid_argument("fromCells: a vertex can only have the least element as facet");
            el.facets.push_back(0);
        } else {
            if (static_cast<int>(c.facets.size()) != k)
                throw std::invalid_argument("fromCells: need one facet per omitted vertex");
            for (int t = 0; t < k; ++t) {
                ElementId f = c.facets[static_cast<std::size_t>(t)];
                if (f <= 0 || f >= static_cast<ElementId>(p.elements_.size()))
                    throw std::invalid_argument("fromCells: facet id not previously declared");
                std::vector<VertexId> expect = verts;
                expect.erase(expect.begin() + t);
                if (p.elements_[static_cast<std::size_t>(f)].vertices != expect)
                    throw std::invalid_argument(
                        "fromCells: facet vertex set inconsistent with cell");
                el.facets.push_back(f);
            }
        }
        p.elements_.push_back(std::move(el));
    }

    // every lower interval must be a boolean lattice
    for (ElementId e = 1; e < static_cast<ElementId>(p.elements_.size()); ++e) {
        const auto& verts = p.elements_[static_cast<std::size_t>(e)].vertices;
        const int k = static_cast<int>(verts.size());
        std::map<unsigned long, ElementId> subsetElem;
        subsetElem[(1ul << k) - 1] = e;
        // peel vertices in every order-independent way: process masks by
        // descending popcount, checking all one-vertex removals agree
        std::vector<unsigned long> masks;
        for (unsigned long m = 0; m < (1ul << k); ++m) masks.push_back(m);
        std::sort(masks.begin(), masks.end(), [](unsigned long a, unsigned long b) {
            int pa = __builtin_popcountl(a), pb = __builtin_popcountl(b);
            return pa != pb ? pa > pb : a < b;
        });
        for (unsigned long m : masks) {
            auto it = subsetElem.find(m);
            if (it == subsetElem.end())
                throw std::invalid_argument("fromCells: lower interval not boolean");
            ElementId cur = it->second;
            int pos = 0;
            for (int t = 0; t < k; ++t) {
                if (!(m & (1ul << t))) continue;
                ElementId face = p.elements_[static_cast<std::size_t>(cur)]
                                     .facets[static_cast<std::size_t>(pos)];
                ++pos;
                unsigned long sub = m & ~(1ul << t);
                auto [fit, inserted] = subsetElem.emplace(sub, face);
                if (!inserted && fit->second != face)
                    throw std::invalid_argument("fromCells: lower interval not boolean");
            }
        }
        // 2^k distinct elements below e
        std::set<ElementId> distinct;
        for (const auto& [m, id] : subsetElem) distinct.insert(id);
        if (distinct.size() != subsetElem.size())
            throw std::invalid_argument("fromCells: lower interval not boolean");
    }

    p.finalize();
    return p;
}

SimplicialPoset SimplicialPoset::fromCellsUnchecked(const std::vector<CellSpec>& cells)
{
    SimplicialPoset p;
    p.elements_.push_back(PosetElement{});
    for (const CellSpec& c : cells) {
        PosetElement el;
        el.vertices = sortedUnique(c.vertices);
        if (el.vertices.size() == 1 && c.facets.empty()) {
            el.facets.push_back(0);
        } else {
            for (ElementId f : c.facets) {
                if (f < 0 || f >= static_cast<ElementId>(p.elements_.size()))
                    throw std::invalid_argument("fromCellsUnchecked: facet id out of range");
                el.facets.push_back(f);
            }
        }
        p.elements_.push_back(std::move(el));
    }
    p.finalize();
    return p;
}

void SimplicialPoset::finalize()
{
    const long n = size();
    maxDim_ = -1;
    for (ElementId e = 0; e < n; ++e) maxDim_ = std::max(maxDim_, dim(e));

    byDim_.assign(static_cast<std::size_t>(maxDim_ + 2), {});
    for (ElementId e = 0; e < n; ++e)
        byDim_[static_cast<std::size_t>(dim(e) + 1)].push_back(e);

    covers_.clear();
    for (ElementId e = 0; e < n; ++e) {
        const auto& el = elements_[static_cast<std::size_t>(e)];
        for (std::size_t t = 0; t < el.facets.size(); ++t)
            covers_.push_back({el.facets[t], e, static_cast<int>(t)});
    }

    // reflexive-transitive closure of the facet relation; ids are
    // rank-monotone so one upward pass suffices
    leq_.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (ElementId e = 0; e < n; ++e) {
        leq_[static_cast<std::size_t>(e)][static_cast<std::size_t>(e)] = true;
        for (ElementId f : elements_[static_cast<std::size_t>(e)].facets)
            for (ElementId a = 0; a < n; ++a)
                if (leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(f)])
                    leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] = true;
        if (rank(e) > 0)
            leq_[0][static_cast<std::size_t>(e)] = true;
    }

    // maximal elements
    std::vector<bool> isMax(static_cast<std::size_t>(n), true);
    for (const Cover& c : covers_) isMax[static_cast<std::size_t>(c.lower)] = false;
    pure_ = true;
    for (ElementId e = 0; e < n; ++e)
        if (isMax[static_cast<std::size_t>(e)] && e != 0 && dim(e) != maxDim_) pure_ = false;
    if (maxDim_ < 0) pure_ = false;
}

bool SimplicialPoset::leq(ElementId a, ElementId b) const
{
    return leq_[static_cast<std::size_t>(checked(a))][static_cast<std::size_t>(checked(b))];
}

std::vector<ElementId> SimplicialPoset::lowerIdeal(ElementId e) const
{
    checked(e);
    std::vector<ElementId> out;
    for (ElementId a = 0; a < size(); ++a)
        if (leq(a, e)) out.push_back(a);
    return out;
}

std::vector<ElementId> SimplicialPoset::upperSet(ElementId e) const
{
    checked(e);
    std::vector<ElementId> out;
    for (ElementId a = 0; a < size(); ++a)
        if (leq(e, a)) out.push_back(a);
    return out;
}

std::vector<VertexId> SimplicialPoset::vertexIds() const
{
    std::vector<VertexId> out;
    for (ElementId e : elementsOfDim(0)) out.push_back(vertexSet(e)[0]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<ElementId>& SimplicialPoset::elementsOfDim(int d) const
{
    static const std::vector<ElementId> empty;
    if (d < -1 || d > maxDim_) return empty;
    return byDim_[static_cast<std::size_t>(d + 1)];
}

int SimplicialPoset::incidenceSign(ElementId upper, ElementId lower) const
{
    const auto& el = elements_[static_cast<std::size_t>(checked(upper))];
    checked(lower);
    for (std::size_t t = 0; t < el.facets.size(); ++t)
        if (el.facets[t] == lower) return (t % 2 == 0) ? 1 : -1;
    throw std::invalid_argument("incidenceSign: not a covering pair");
}

ElementId SimplicialPoset::facetOmitting(ElementId e, VertexId v) const
{
    const auto& el = elements_[static_cast<std::size_t>(checked(e))];
    auto it = std::lower_bound(el.vertices.begin(), el.vertices.end(), v);
    if (it == el.vertices.end() || *it != v)
        throw std::invalid_argument("facetOmitting: vertex not in element");
    return el.facets[static_cast<std::size_t>(it - el.vertices.begin())];
}

ValidationReport SimplicialPoset::validate() const
{
    ValidationReport rep;
    const long n = size();

    // boolean lower intervals: count and diamond property
    for (ElementId e = 1; e < n && rep.booleanOk; ++e) {
        const int k = rank(e);
        std::vector<ElementId> ideal = lowerIdeal(e);
        if (static_cast<long>(ideal.size()) != (1L << k)) {
            rep.booleanOk = false;
            rep.booleanWitness = e;
            rep.messages.push_back("element " + std::to_string(e) + ": lower ideal has " +
                                   std::to_string(ideal.size()) + " elements, expected 2^" +
                                   std::to_string(k));
            break;
        }
        // all single-vertex removal paths commute and land on distinct faces
        const auto& verts = vertexSet(e);
        for (int t = 0; t < k && rep.booleanOk; ++t) {
            ElementId f = facets(e)[static_cast<std::size_t>(t)];
            std::vector<VertexId> expect = verts;
            expect.erase(expect.begin() + t);
            if (vertexSet(f) != expect) {
                rep.booleanOk = false;
                rep.booleanWitness = e;
                rep.messages.push_back("element " + std::to_string(e) +
                                       ": facet vertex set inconsistent");
            }
        }
        for (int t = 0; t < k && rep.booleanOk; ++t)
            for (int u = t + 1; u < k && rep.booleanOk; ++u) {
                try {
                    ElementId a = facetOmitting(
                        facetOmitting(e, verts[static_cast<std::size_t>(t)]),
                        verts[static_cast<std::size_t>(u)]);
                    ElementId b = facetOmitting(
                        facetOmitting(e, verts[static_cast<std::size_t>(u)]),
                        verts[static_cast<std::size_t>(t)]);
                    if (a != b) throw std::invalid_argument("paths disagree");
                } catch (const std::invalid_argument&) {
                    rep.booleanOk = false;
                    rep.booleanWitness = e;
                    rep.messages.push_back("element " + std::to_string(e) +
                                           ": facet removals do not commute");
                }
            }
    }

    // sign convention square identity on every I <.. J
    for (ElementId j = 1; j < n && rep.signSquareOk; ++j) {
        for (ElementId i = 0; i < j && rep.signSquareOk; ++i) {
            if (!leq(i, j) || rank(j) - rank(i) != 2) continue;
            int total = 0, mids = 0;
            for (ElementId m : elements_[static_cast<std::size_t>(j)].facets)
                if (leq(i, m)) {
                    ++mids;
                    total += incidenceSign(j, m) * incidenceSign(m, i);
                }
            if (mids != 2 || total != 0) {
                rep.signSquareOk = false;
                rep.messages.push_back("sign square identity fails between " + std::to_string(i) +
                                       " and " + std::to_string(j));
            }
        }
    }

    rep.pure = pure();

    // connectivity of the realization via the vertex-edge graph
    const auto& verts = elementsOfDim(0);
    if (!verts.empty()) {
        std::map<ElementId, std::size_t> comp;
        std::vector<std::size_t> parent(verts.size());
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t i = 0; i < verts.size(); ++i) comp[verts[i]] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (ElementId e : elementsOfDim(1)) {
            std::size_t a = find(comp.at(facets(e)[0]));
            std::size_t b = find(comp.at(facets(e)[1]));
            parent[a] = b;
        }
        std::size_t root = find(0);
        rep.connected = true;
        for (std::size_t i = 1; i < verts.size(); ++i)
            if (find(i) != root) rep.connected = false;
    }

    return rep;
}

StarLink SimplicialPoset::starAndLink(ElementId e) const
{
    checked(e);
    StarLink out;
    out.star = upperSet(e);

    // atoms of the link: elements covering e
    std::vector<ElementId> atoms;
    for (const Cover& c : covers_)
        if (c.lower == e) atoms.push_back(c.upper);
    std::sort(atoms.begin(), atoms.end());

    // link elements are {J >= e}, ordered by (rank, base id); the new vertex
    // ids are the base ids of the atoms
    std::vector<ElementId> members = out.star;
    std::stable_sort(members.begin(), members.end(), [&](ElementId a, ElementId b) {
        return rank(a) < rank(b);
    });

    SimplicialPoset link;
    link.elements_.push_back(PosetElement{});
    std::vector<ElementId> toBase{e};
    std::map<ElementId, ElementId> linkId{{e, 0}};

    for (ElementId j : members) {
        if (j == e) continue;
        PosetElement el;
        for (ElementId a : atoms)
            if (leq(a, j)) el.vertices.push_back(a);
        // facet omitting atom a: the unique facet of j that still dominates e
        // and does not dominate a
        for (ElementId a : el.vertices) {
            ElementId found = -1;
            if (rank(j) - rank(e) == 1) {
                found = e;
            } else {
                for (ElementId f : elements_[static_cast<std::size_t>(j)].facets)
                    if (leq(e, f) && !leq(a, f)) { found = f; break; }
            }
            if (found < 0)
                throw std::logic_error("starAndLink: missing link facet");
            el.facets.push_back(linkId.at(found));
        }
        ElementId id = static_cast<ElementId>(link.elements_.size());
        linkId[j] = id;
        toBase.push_back(j);
        link.elements_.push_back(std::move(el));
    }
    link.finalize();
    out.link = std::move(link);
    out.linkToBase = std::move(toBase);
    return out;
}

std::vector<std::vector<ElementId>> SimplicialPoset::maximalChains() const
{
    std::vector<bool> isMax(static_cast<std::size_t>(size()), true);
    for (const Cover& c : covers_) isMax[static_cast<std::size_t>(c.lower)] = false;

    std::vector<std::vector<ElementId>> chains;
    std::vector<ElementId> current;
    // descend through facets from each maximal element
    std::function<void(ElementId)> descend = [&](ElementId e) {
        current.push_back(e);
        if (rank(e) == 1) {
            std::vector<ElementId> chain(current.rbegin(), current.rend());
            chains.push_back(std::move(chain));
        } else {
            for (ElementId f : elements_[static_cast<std::size_t>(e)].facets)
                descend(f);
        }
        current.pop_back();
    };
    for (ElementId e = 1; e < size(); ++e)
        if (isMax[static_cast<std::size_t>(e)]) descend(e);

    // deduplicate: different facet positions can reach the same chain only
    // when facets repeat, which boolean intervals forbid; keep a sort anyway
    std::sort(chains.begin(), chains.end());
    chains.erase(std::unique(chains.begin(), chains.end()), chains.end());
    return chains;
}

}  // namespace sheafcoh
