/**
 * The headline homological statements, verified on concrete inputs: the
 * coskeleton (Zeeman--McCrory) spectral sequence, the graded spectral
 * sequence from the corefined ideal cosheaf, and the duality between ideal
 * sheaf cohomology and principal cosheaf homology.
 */

#ifndef SHEAFCOH_DUALITY_HPP
#define SHEAFCOH_DUALITY_HPP

#include <map>
#include <string>
#include <vector>

#include "sheafcoh/charfun.hpp"
#include "sheafcoh/filtration.hpp"
#include "sheafcoh/structure.hpp"

namespace sheafcoh {

/** Coskeleton spectral sequence with constant coefficients, plus the
 *  independent second-page computation through structure sheaves. */
template <typename T>
struct ZmResult {
    SpectralSequence<T> ss;
    std::map<std::pair<int, int>, long> e2FromSheaves;   // (p, q) -> rank
    bool e2Matches = true;
};

template <typename T>
ZmResult<T> zmPages(const SimplicialPoset& s, const Subdivision& sub,
                    const CoefficientRing& ring)
{
    if (!s.pure()) throw std::invalid_argument("zmPages: poset is not pure");
    if (!ring.isField()) throw std::invalid_argument("zmPages: field coefficients required");

    ZmResult<T> out;
    CellularCosheaf<T> k = constantCosheaf<T>(sub.complex, ring);
    SheafComplex<T> sc = buildChainComplex<T>(sub.complex, k, 0);
    FilteredComplex<T> f = coskeletonFiltration<T>(sub, k, sc, 0);
    out.ss = spectralSequenceOfFiltration<T>(f);

    const int n = sub.n;
    for (int q = -(n - 1); q <= 0; ++q) {
        CellularSheaf<T> hq = structureSheaf<T>(s, sub, q, ring);
        SheafComplex<T> cc = buildCochainComplex<T>(s, hq, 0);
        for (int p = 0; p <= n - 1; ++p) {
            long rank = cc.groupAt(n - 1 - p).freeRank;
            if (rank != 0) out.e2FromSheaves[{p, q}] = rank;
            if (rank != out.ss.report.pageRank(2, p, q)) out.e2Matches = false;
        }
    }
    return out;
}

/** One inner degree of the graded spectral sequence of the filtered
 *  corefined complex, with both independent cross-checks. */
struct ConvergenceEntry {
    int innerDegree = 0;
    PagesReport pages;
    std::map<std::pair<int, int>, long> e2Expected;   // (s, k) -> rank
    bool e2Match = true;
    std::map<int, long> abutmentExpected;             // H_*(S; principal cosheaf)
    bool abutmentMatch = true;
    bool collapsedAtTwo = true;
};

struct ConvergenceReport {
    std::vector<ConvergenceEntry> entries;
    bool allE2Match = true;
    bool allAbutmentMatch = true;
    bool allCollapsedAtTwo = true;
};

/**
 * Theorem-level spectral sequence: filter the chain complex of the
 * corefined ideal cosheaf on the subdivision by coskeleton level.  The
 * second page is checked against sheaf cohomology of (structure sheaf
 * tensor ideal), the abutment against homology of the principal cosheaf;
 * both sides are computed through independent pipelines.
 */
template <typename T>
ConvergenceReport dualityPages(const SimplicialPoset& s, const Subdivision& sub,
                               const CharacteristicFunction& cf, const CoefficientRing& ring)
{
    static_assert(!std::is_same_v<T, Int>, "dualityPages: field coefficients required");
    if (!s.pure()) throw std::invalid_argument("dualityPages: poset is not pure");

    IdealSheaf<T> ideal = buildIdealSheaf<T>(s, cf, ring);
    PrincipalCosheaf<T> principal = buildPrincipalCosheaf<T>(s, cf, ring);
    CellularCosheaf<T> corefined = corefine<T>(sub, ideal.sheaf);

    const int n = sub.n;
    std::vector<CellularSheaf<T>> structure;   // index k + (n-1)
    for (int k = -(n - 1); k <= 0; ++k)
        structure.push_back(structureSheaf<T>(s, sub, k, ring));

    ConvergenceReport rep;
    for (int q = 1; q <= cf.lambda; ++q) {
        ConvergenceEntry entry;
        entry.innerDegree = q;

        SheafComplex<T> sc = buildChainComplex<T>(sub.complex, corefined, q);
        FilteredComplex<T> f = coskeletonFiltration<T>(sub, corefined, sc, q);
        SpectralSequence<T> ss = spectralSequenceOfFiltration<T>(f);
        entry.pages = ss.report;
        entry.collapsedAtTwo = ss.report.collapseAt <= 2;

        // abutment: homology of the principal cosheaf on the base
        SheafComplex<T> pc = buildChainComplex<T>(s, principal.cosheaf, q);
        for (int d = 0; d <= n - 1; ++d)
            entry.abutmentExpected[d] = pc.groupAt(d).freeRank;
        for (int d = 0; d <= n - 1; ++d) {
            long total = 0;
            for (const auto& [pq, rank] : ss.report.einf)
                if (pq.first + pq.second == d) total += rank;
            if (total != entry.abutmentExpected[d]) entry.abutmentMatch = false;
        }

        // second page: cochain cohomology of structure tensor ideal
        for (int k = -(n - 1); k <= 0; ++k) {
            CellularSheaf<T> tensor =
                tensorSheaves<T>(structure[static_cast<std::size_t>(k + n - 1)], ideal.sheaf);
            SheafComplex<T> cc = buildCochainComplex<T>(s, tensor, q);
            for (int sdeg = 0; sdeg <= n - 1; ++sdeg) {
                long rank = cc.groupAt(n - 1 - sdeg).freeRank;
                if (rank != 0) entry.e2Expected[{sdeg, k}] = rank;
                if (rank != entry.pages.pageRank(2, sdeg, k)) entry.e2Match = false;
            }
        }

        rep.allE2Match = rep.allE2Match && entry.e2Match;
        rep.allAbutmentMatch = rep.allAbutmentMatch && entry.abutmentMatch;
        rep.allCollapsedAtTwo = rep.allCollapsedAtTwo && entry.collapsedAtTwo;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

enum class DualityForm {
    Auto,       // direct comparison on oriented homology manifolds, else tensor
    TensorH0,   // always compare through the structure sheaf (fields only)
};

struct DualityEntry {
    int innerDegree = 0;
    int degree = 0;             // cohomological degree k
    GroupDescriptor left;       // H^k of the ideal side
    GroupDescriptor right;      // H_{n-1-k} of the principal cosheaf
    bool match = false;
    bool vanishExpected = false;
    bool vanishOk = true;
};

struct DualityReport {
    bool refused = false;
    std::string refuseReason;
    bool manifoldShortcut = false;
    std::vector<DualityEntry> entries;
    bool allMatch = true;
    bool vanishingOk = true;

    bool pass() const { return !refused && allMatch && vanishingOk; }
};

/**
 * Graded duality check: for every inner degree q and every k, compare the
 * ideal-side cohomology with the principal-side homology in complementary
 * degree, and assert the vanishing range.  Oriented homology manifolds are
 * compared directly over any ring (including Z, with torsion); otherwise
 * the left side is tensored with the degree-zero structure sheaf, which
 * requires field coefficients.
 */
template <typename T>
DualityReport verifyDuality(const SimplicialPoset& s, const Subdivision& sub,
                            const CharacteristicFunction& cf, const CoefficientRing& ring,
                            DualityForm form = DualityForm::Auto)
{
    DualityReport rep;
    ClassificationReport cls = classifyPoset<T>(s, ring);
    if (!cls.buchsbaum) {
        rep.refused = true;
        rep.refuseReason = "poset is not Buchsbaum over " + ring.name();
        if (!cls.buchsbaumFailures.empty())
            rep.refuseReason +=
                " (witness element " + std::to_string(cls.buchsbaumFailures.front()) + ")";
        return rep;
    }

    bool direct = cls.homologyManifold && cls.orientable;
    if (form == DualityForm::TensorH0) direct = false;
    if (!direct && !ring.isField()) {
        rep.refused = true;
        rep.refuseReason = "integral comparison requires an oriented homology manifold";
        return rep;
    }
    rep.manifoldShortcut = direct;

    IdealSheaf<T> ideal = buildIdealSheaf<T>(s, cf, ring);
    PrincipalCosheaf<T> principal = buildPrincipalCosheaf<T>(s, cf, ring);
    const int n = s.dimension() + 1;

    CellularSheaf<T> leftSheaf = ideal.sheaf;
    if (!direct) {
        CellularSheaf<T> h0 = structureSheaf<T>(s, sub, 0, ring);
        leftSheaf = tensorSheaves<T>(h0, ideal.sheaf);
    }

    for (int q = 1; q <= cf.lambda; ++q) {
        SheafComplex<T> lc = buildCochainComplex<T>(s, leftSheaf, q);
        SheafComplex<T> rc = buildChainComplex<T>(s, principal.cosheaf, q);
        for (int k = 0; k <= n - 1; ++k) {
            DualityEntry e;
            e.innerDegree = q;
            e.degree = k;
            e.left = lc.groupAt(k);
            e.right = rc.groupAt(n - 1 - k);
            e.match = (e.left == e.right);
            e.vanishExpected = (k <= n - 1 - q);
            e.vanishOk = !e.vanishExpected || e.left.isZero();
            rep.allMatch = rep.allMatch && e.match;
            rep.vanishingOk = rep.vanishingOk && e.vanishOk;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_DUALITY_HPP
