/**
 * Homological characteristic functions and the two graded objects they
 * generate: the sheaf of ideals spanned by the vertex forms, and the
 * cosheaf of principal ideals spanned by their wedge.  Also the Taylor-like
 * complex relating them and the corefinement construction that transports a
 * sheaf to a cosheaf on the barycentric subdivision.
 */

#ifndef SHEAFCOH_CHARFUN_HPP
#define SHEAFCOH_CHARFUN_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "sheafcoh/exterior.hpp"
#include "sheafcoh/sheaf.hpp"
#include "sheafcoh/snf.hpp"
#include "sheafcoh/subdivision.hpp"

namespace sheafcoh {

/** Vertex-indexed vectors in Z^lambda. */
struct CharacteristicFunction {
    int lambda = 0;
    std::map<VertexId, std::vector<Int>> omega;

    const std::vector<Int>& at(VertexId v) const
    {
        auto it = omega.find(v);
        if (it == omega.end())
            throw std::invalid_argument("characteristic function: no vector for vertex " +
                                        std::to_string(v));
        return it->second;
    }
};

struct StarConditionReport {
    bool ok = true;
    ElementId witness = -1;   // first failing element
    std::string reason;
};

/**
 * The independence-and-direct-summand condition: for every element the
 * matrix of its vertex vectors has full rank (fields), respectively all
 * Smith invariant factors equal to 1 (integers).
 */
inline StarConditionReport checkStarCondition(const SimplicialPoset& s,
                                              const CharacteristicFunction& cf,
                                              const CoefficientRing& ring)
{
    StarConditionReport rep;
    for (VertexId v : s.vertexIds()) {
        if (static_cast<int>(cf.at(v).size()) != cf.lambda) {
            rep.ok = false;
            rep.reason = "vector length differs from lambda at vertex " + std::to_string(v);
            return rep;
        }
    }
    for (ElementId e = 1; e < s.size(); ++e) {
        const int k = s.rank(e);
        if (k > cf.lambda) {
            rep.ok = false;
            rep.witness = e;
            rep.reason = "element has more vertices than lambda";
            return rep;
        }
        IntMatrix w(k, cf.lambda);
        for (int t = 0; t < k; ++t) {
            const auto& row = cf.at(s.vertexSet(e)[static_cast<std::size_t>(t)]);
            for (int j = 0; j < cf.lambda; ++j)
                w(t, j) = row[static_cast<std::size_t>(j)];
        }
        bool good;
        if (ring.kind == CoefficientRing::Kind::Integers) {
            SmithResult snf = smithNormalForm(w);
            std::vector<Int> diag = snf.diagonal();
            good = static_cast<int>(diag.size()) == k;
            for (const Int& d : diag)
                if (d != 1) good = false;
        } else if (ring.kind == CoefficientRing::Kind::Rationals) {
            good = integerRank(w) == k;
        } else {
            DenseMatrix<GF> wf = matrixFromInt<GF>(w, ring);
            good = matrixRank(wf) == k;
        }
        if (!good) {
            rep.ok = false;
            rep.witness = e;
            rep.reason = "vertex vectors do not span a direct summand";
            return rep;
        }
    }
    return rep;
}

namespace detail {

template <typename T>
DenseMatrix<T> canonicalBasisOf(const DenseMatrix<T>& gens)
{
    if constexpr (std::is_same_v<T, Int>)
        return canonicalLatticeBasis(gens);
    else
        return canonicalSpanBasis(gens);
}

template <typename T>
DenseMatrix<T> expressInBasis(const DenseMatrix<T>& basis, const DenseMatrix<T>& vecs,
                              const char* what)
{
    std::optional<DenseMatrix<T>> sol;
    if constexpr (std::is_same_v<T, Int>)
        sol = latticeSolve(basis, vecs);
    else
        sol = solveInSpan(basis, vecs);
    if (!sol) throw std::logic_error(std::string(what) + ": vector escapes the target module");
    return *sol;
}

/// x ^ e_A for a degree-q multivector x, with the shuffle sign.
template <typename T>
DenseVector<T> wedgeWithSubset(const ExteriorAlgebra& ext, const DenseVector<T>& x, int q,
                               std::uint32_t maskA)
{
    const int qa = __builtin_popcount(maskA);
    DenseVector<T> out = zeroMatrix<T>(ext.dimOfDegree(q + qa), 1).col(0);
    const auto& degq = ext.subsets(q);
    for (Index j = 0; j < static_cast<Index>(degq.size()); ++j) {
        if (x(j) == T(0)) continue;
        int sign = ExteriorAlgebra::wedgeSign(degq[static_cast<std::size_t>(j)], maskA);
        if (sign == 0) continue;
        Index target = ext.indexOf(degq[static_cast<std::size_t>(j)] | maskA);
        if (sign > 0)
            out(target) += x(j);
        else
            out(target) -= x(j);
    }
    return out;
}

}  // namespace detail

/** The graded sheaf of ideals, together with the chosen value bases. */
template <typename T>
struct IdealSheaf {
    CellularSheaf<T> sheaf;
    int lambda = 0;
    // basis[q][element]: columns are the canonical basis of the degree-q
    // part, written in the monomial basis of the exterior algebra
    std::vector<std::vector<DenseMatrix<T>>> basis;
};

/** The graded cosheaf of principal ideals, with bases and the top forms. */
template <typename T>
struct PrincipalCosheaf {
    CellularCosheaf<T> cosheaf;
    int lambda = 0;
    std::vector<std::vector<DenseMatrix<T>>> basis;
    std::vector<DenseVector<T>> pi;   // per element: the wedge of its vertex forms
};

template <typename T>
DenseVector<T> characteristicVector(const CharacteristicFunction& cf, VertexId v,
                                    const CoefficientRing& ring)
{
    const auto& raw = cf.at(v);
    DenseVector<T> out(static_cast<Index>(raw.size()));
    for (Index i = 0; i < out.size(); ++i)
        out(i) = scalarFromInt<T>(raw[static_cast<std::size_t>(i)], ring);
    return out;
}

template <typename T>
IdealSheaf<T> buildIdealSheaf(const SimplicialPoset& s, const CharacteristicFunction& cf,
                              const CoefficientRing& ring)
{
    StarConditionReport star = checkStarCondition(s, cf, ring);
    if (!star.ok)
        throw std::invalid_argument("buildIdealSheaf: star condition fails (" + star.reason + ")");

    ExteriorAlgebra ext(cf.lambda);
    IdealSheaf<T> out;
    out.lambda = cf.lambda;
    CellularSheaf<T>& sh = out.sheaf;
    sh.base = &s;
    sh.ring = ring;
    sh.includeMin = false;
    for (int q = 0; q <= cf.lambda; ++q) sh.grades.push_back(q);
    sh.ranks.assign(sh.grades.size(), std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    sh.restrictions.assign(sh.grades.size(), {});
    out.basis.assign(sh.grades.size(), std::vector<DenseMatrix<T>>(
                                           static_cast<std::size_t>(s.size())));

    for (ElementId e = 0; e < s.size(); ++e) {
        const auto& verts = s.vertexSet(e);
        for (int q = 0; q <= cf.lambda; ++q) {
            if (e == s.minElement() || q == 0) {
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] =
                    zeroMatrix<T>(ext.dimOfDegree(q), 0);
                continue;
            }
            const auto& lower = ext.subsets(q - 1);
            DenseMatrix<T> gens =
                zeroMatrix<T>(ext.dimOfDegree(q),
                              static_cast<Index>(verts.size() * lower.size()));
            Index col = 0;
            for (VertexId v : verts) {
                DenseVector<T> form = characteristicVector<T>(cf, v, ring);
                for (std::uint32_t maskA : lower) {
                    DenseVector<T> x = zeroMatrix<T>(ext.dimOfDegree(q - 1), 1).col(0);
                    x(ext.indexOf(maskA)) = scalarFromInt<T>(1, ring);
                    gens.col(col++) = ext.wedgeLinear(form, x, q - 1);
                }
            }
            DenseMatrix<T> b = detail::canonicalBasisOf<T>(gens);
            sh.ranks[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] = b.cols();
            out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] = std::move(b);
        }
    }

    for (const auto& c : s.covers()) {
        for (int q = 0; q <= cf.lambda; ++q) {
            const DenseMatrix<T>& bLow =
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.lower)];
            const DenseMatrix<T>& bUp =
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.upper)];
            if (bLow.cols() == 0) {
                sh.restrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] =
                    zeroMatrix<T>(bUp.cols(), 0);
                continue;
            }
            sh.restrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] =
                detail::expressInBasis<T>(bUp, bLow, "ideal sheaf restriction");
        }
    }
    return out;
}

template <typename T>
PrincipalCosheaf<T> buildPrincipalCosheaf(const SimplicialPoset& s,
                                          const CharacteristicFunction& cf,
                                          const CoefficientRing& ring)
{
    StarConditionReport star = checkStarCondition(s, cf, ring);
    if (!star.ok)
        throw std::invalid_argument("buildPrincipalCosheaf: star condition fails (" +
                                    star.reason + ")");

    ExteriorAlgebra ext(cf.lambda);
    PrincipalCosheaf<T> out;
    out.lambda = cf.lambda;
    CellularCosheaf<T>& co = out.cosheaf;
    co.base = &s;
    co.ring = ring;
    co.includeMin = false;
    for (int q = 0; q <= cf.lambda; ++q) co.grades.push_back(q);
    co.ranks.assign(co.grades.size(), std::vector<Index>(static_cast<std::size_t>(s.size()), 0));
    co.corestrictions.assign(co.grades.size(), {});
    out.basis.assign(co.grades.size(),
                     std::vector<DenseMatrix<T>>(static_cast<std::size_t>(s.size())));
    out.pi.resize(static_cast<std::size_t>(s.size()));

    for (ElementId e = 0; e < s.size(); ++e) {
        const auto& verts = s.vertexSet(e);
        const int k = s.rank(e);
        if (e != s.minElement()) {
            DenseVector<T> form = zeroMatrix<T>(1, 1).col(0);
            form(0) = scalarFromInt<T>(1, ring);   // the empty wedge in degree 0
            int deg = 0;
            for (VertexId v : verts) {
                DenseVector<T> w = characteristicVector<T>(cf, v, ring);
                form = ext.wedgeLinear(w, form, deg);
                ++deg;
            }
            out.pi[static_cast<std::size_t>(e)] = form;
        }
        for (int q = 0; q <= cf.lambda; ++q) {
            if (e == s.minElement() || q < k) {
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] =
                    zeroMatrix<T>(ext.dimOfDegree(q), 0);
                continue;
            }
            const auto& rest = ext.subsets(q - k);
            DenseMatrix<T> gens =
                zeroMatrix<T>(ext.dimOfDegree(q), static_cast<Index>(rest.size()));
            Index col = 0;
            for (std::uint32_t maskA : rest)
                gens.col(col++) = detail::wedgeWithSubset<T>(
                    ext, out.pi[static_cast<std::size_t>(e)], k, maskA);
            DenseMatrix<T> b = detail::canonicalBasisOf<T>(gens);
            co.ranks[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] = b.cols();
            out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(e)] = std::move(b);
        }
    }

    for (const auto& c : s.covers()) {
        for (int q = 0; q <= cf.lambda; ++q) {
            const DenseMatrix<T>& bUp =
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.upper)];
            const DenseMatrix<T>& bLow =
                out.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(c.lower)];
            if (bUp.cols() == 0) {
                co.corestrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] =
                    zeroMatrix<T>(bLow.cols(), 0);
                continue;
            }
            co.corestrictions[static_cast<std::size_t>(q)][{c.lower, c.upper}] =
                detail::expressInBasis<T>(bLow, bUp, "principal cosheaf corestriction");
        }
    }
    return out;
}

/**
 * The Taylor-like complex of an element J: degree -1 holds the ideal at J,
 * degree d >= 0 holds the principal ideals of the dimension-d faces of J,
 * with inclusions as maps (incidence-signed between faces).  Exact for
 * every valid characteristic function.
 */
template <typename T>
ChainComplex<T> taylorComplex(const SimplicialPoset& s, const IdealSheaf<T>& ideal,
                              const PrincipalCosheaf<T>& principal, ElementId j)
{
    if (j == s.minElement())
        throw std::invalid_argument("taylorComplex: undefined at the least element");

    const CoefficientRing ring = ideal.sheaf.ring;
    const int lambda = ideal.lambda;
    const int topDim = s.dim(j);

    // faces of j grouped by dimension, each with per-grade offsets
    std::vector<std::vector<ElementId>> byDim(static_cast<std::size_t>(topDim + 1));
    for (ElementId e : s.lowerIdeal(j))
        if (e != s.minElement()) byDim[static_cast<std::size_t>(s.dim(e))].push_back(e);

    ChainComplex<T> out(ring, -1, topDim);
    std::map<int, std::map<std::pair<ElementId, int>, Index>> off;  // deg -> (elem, q) -> offset

    Index r = 0;
    for (int q = 0; q <= lambda; ++q) {
        off[-1][{j, q}] = r;
        r += ideal.sheaf.valueRank(j, q);
    }
    out.setRank(-1, r);
    for (int d = 0; d <= topDim; ++d) {
        Index rd = 0;
        for (ElementId e : byDim[static_cast<std::size_t>(d)])
            for (int q = 0; q <= lambda; ++q) {
                off[d][{e, q}] = rd;
                rd += principal.cosheaf.valueRank(e, q);
            }
        out.setRank(d, rd);
    }

    // eta: inclusions of the vertex principal ideals into the ideal at j
    {
        DenseMatrix<T> d = zeroMatrix<T>(out.rankAt(-1), out.rankAt(0));
        for (ElementId v : byDim[0])
            for (int q = 0; q <= lambda; ++q) {
                const DenseMatrix<T>& bPi =
                    principal.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(v)];
                if (bPi.cols() == 0) continue;
                const DenseMatrix<T>& bI =
                    ideal.basis[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
                DenseMatrix<T> block =
                    detail::expressInBasis<T>(bI, bPi, "taylor eta");
                d.block(off[-1][{j, q}], off[0][{v, q}], block.rows(), block.cols()) = block;
            }
        out.setDifferential(0, std::move(d));
    }

    // xi: incidence-signed inclusions between principal ideals of faces
    for (int deg = 1; deg <= topDim; ++deg) {
        DenseMatrix<T> d = zeroMatrix<T>(out.rankAt(deg - 1), out.rankAt(deg));
        for (ElementId e : byDim[static_cast<std::size_t>(deg)]) {
            for (ElementId f : s.facets(e)) {
                int sign = s.incidenceSign(e, f);
                for (int q = 0; q <= lambda; ++q) {
                    Index rows = principal.cosheaf.valueRank(f, q);
                    Index cols = principal.cosheaf.valueRank(e, q);
                    if (rows == 0 || cols == 0) continue;
                    const DenseMatrix<T>& m = principal.cosheaf.corestriction(e, f, q);
                    if (sign > 0)
                        d.block(off[deg - 1][{f, q}], off[deg][{e, q}], rows, cols) += m;
                    else
                        d.block(off[deg - 1][{f, q}], off[deg][{e, q}], rows, cols) -= m;
                }
            }
        }
        out.setDifferential(deg, std::move(d));
    }
    out.validate();
    return out;
}

/** Convenience overload building the ideal and cosheaf internally. */
template <typename T>
ChainComplex<T> taylorComplex(const SimplicialPoset& s, const CharacteristicFunction& cf,
                              const CoefficientRing& ring, ElementId j)
{
    IdealSheaf<T> ideal = buildIdealSheaf<T>(s, cf, ring);
    PrincipalCosheaf<T> principal = buildPrincipalCosheaf<T>(s, cf, ring);
    return taylorComplex<T>(s, ideal, principal, j);
}

/**
 * Corefinement: transport a truncated sheaf on the base to a cosheaf on the
 * barycentric subdivision.  A chain takes the value of the sheaf at its
 * minimum; dropping the minimum restricts, dropping anything else is the
 * identity.
 */
template <typename T>
CellularCosheaf<T> corefine(const Subdivision& sub, const CellularSheaf<T>& a)
{
    if (a.base != sub.base)
        throw std::invalid_argument("corefine: sheaf does not live on the subdivided poset");
    if (a.includeMin)
        throw std::invalid_argument("corefine: the sheaf must be truncated");

    const SimplicialPoset& sp = sub.complex;
    CellularCosheaf<T> out;
    out.base = &sp;
    out.ring = a.ring;
    out.includeMin = false;
    out.grades = a.grades;
    out.ranks.assign(out.grades.size(),
                     std::vector<Index>(static_cast<std::size_t>(sp.size()), 0));
    out.corestrictions.assign(out.grades.size(), {});

    for (std::size_t g = 0; g < out.grades.size(); ++g) {
        int q = out.grades[g];
        for (ElementId e = 1; e < sp.size(); ++e)
            out.ranks[g][static_cast<std::size_t>(e)] =
                a.valueRank(sub.minOfChain[static_cast<std::size_t>(e)], q);
        for (const auto& c : sp.covers()) {
            Index rows = (c.lower == sp.minElement())
                             ? 0
                             : out.ranks[g][static_cast<std::size_t>(c.lower)];
            Index cols = out.ranks[g][static_cast<std::size_t>(c.upper)];
            if (c.lower == sp.minElement()) {
                out.corestrictions[g][{c.lower, c.upper}] = zeroMatrix<T>(rows, cols);
                continue;
            }
            const auto& chain = sub.chainOf[static_cast<std::size_t>(c.upper)];
            if (c.omittedIndex == 0 && chain.size() > 1) {
                // chains need not be saturated, so compose along the way up
                out.corestrictions[g][{c.lower, c.upper}] =
                    composeRestriction<T>(a, chain[0], chain[1], q);
            } else {
                DenseMatrix<T> id = zeroMatrix<T>(rows, cols);
                for (Index t = 0; t < std::min(rows, cols); ++t)
                    id(t, t) = scalarFromInt<T>(1, a.ring);
                out.corestrictions[g][{c.lower, c.upper}] = std::move(id);
            }
        }
    }
    return out;
}

/**
 * Seeded random valid characteristic function: rejection-sample small
 * integer vectors until the integral star condition holds, falling back to
 * a random unimodular change of basis applied to a known-good base.
 */
inline CharacteristicFunction randomCharacteristicFunction(
    const SimplicialPoset& s, int lambda, std::mt19937_64& rng,
    const CharacteristicFunction* base = nullptr)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    CharacteristicFunction cf;
    cf.lambda = lambda;
    const CoefficientRing z = CoefficientRing::integers();

    for (int attempt = 0; attempt < 200; ++attempt) {
        cf.omega.clear();
        for (VertexId v : s.vertexIds()) {
            std::vector<Int> vec(static_cast<std::size_t>(lambda));
            for (auto& x : vec) x = entry(rng);
            cf.omega[v] = std::move(vec);
        }
        if (checkStarCondition(s, cf, z).ok) return cf;
    }

    if (!base)
        throw std::runtime_error("randomCharacteristicFunction: sampling failed and no base");

    // random unimodular twist: a product of shears preserves the condition
    IntMatrix u = identityMatrix<Int>(lambda);
    std::uniform_int_distribution<int> pick(0, lambda - 1);
    std::uniform_int_distribution<int> shear(-2, 2);
    for (int step = 0; step < 4 * lambda; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Int c = shear(rng);
        u.row(i) += c * u.row(j);
    }
    cf.omega.clear();
    for (VertexId v : s.vertexIds()) {
        const auto& b = base->at(v);
        IntVector x(lambda);
        for (int t = 0; t < lambda; ++t) x(t) = b[static_cast<std::size_t>(t)];
        IntVector y = u * x;
        std::vector<Int> vec(static_cast<std::size_t>(lambda));
        for (int t = 0; t < lambda; ++t) vec[static_cast<std::size_t>(t)] = y(t);
        cf.omega[v] = std::move(vec);
    }
    if (!checkStarCondition(s, cf, z).ok)
        throw std::logic_error("randomCharacteristicFunction: twisted base is invalid");
    return cf;
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_CHARFUN_HPP
