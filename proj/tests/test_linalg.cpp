/**
 * Exact linear algebra: Smith and Hermite forms, homology of small
 * complexes with known answers, and the random-matrix oracle.
 */

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sheafcoh/complex.hpp"
#include "sheafcoh/snf.hpp"

using namespace sheafcoh;

namespace {

IntMatrix makeMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    IntMatrix m(static_cast<Index>(rows.size()),
                static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

void checkSmith(const IntMatrix& m)
{
    SmithResult s = smithNormalForm(m);
    REQUIRE(IntMatrix(s.u * m * s.v) == s.d);
    Int du = determinant(s.u), dv = determinant(s.v);
    REQUIRE(abs(du) == 1);
    REQUIRE(abs(dv) == 1);
    std::vector<Int> diag = s.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
        REQUIRE(diag[i] > 0);
        REQUIRE(diag[i + 1] % diag[i] == 0);
    }
    // off-diagonal entries vanish
    for (Index i = 0; i < s.d.rows(); ++i)
        for (Index j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
}

// chain complex of the 6-vertex real projective plane
ChainComplex<Int> projectivePlaneComplex()
{
    const std::vector<std::array<int, 3>> faces = {
        {1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
        {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b) edges.push_back({a, b});
    auto edgeIndex = [&](int a, int b) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i] == std::make_pair(std::min(a, b), std::max(a, b)))
                return static_cast<Index>(i);
        FAIL("edge not found");
        return Index(-1);
    };

    ChainComplex<Int> c(CoefficientRing::integers(), 0, 2);
    c.setRank(0, 6);
    c.setRank(1, static_cast<Index>(edges.size()));
    c.setRank(2, static_cast<Index>(faces.size()));

    IntMatrix d1 = zeroMatrix<Int>(6, static_cast<Index>(edges.size()));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        d1(edges[i].second - 1, static_cast<Index>(i)) = 1;
        d1(edges[i].first - 1, static_cast<Index>(i)) = -1;
    }
    IntMatrix d2 = zeroMatrix<Int>(static_cast<Index>(edges.size()),
                                   static_cast<Index>(faces.size()));
    for (std::size_t i = 0; i < faces.size(); ++i) {
        auto [a, b, cc] = faces[i];
        int v[3] = {a, b, cc};
        std::sort(v, v + 3);
        d2(edgeIndex(v[1], v[2]), static_cast<Index>(i)) = 1;
        d2(edgeIndex(v[0], v[2]), static_cast<Index>(i)) = -1;
        d2(edgeIndex(v[0], v[1]), static_cast<Index>(i)) = 1;
    }
    c.setDifferential(1, d1);
    c.setDifferential(2, d2);
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("smith normal form on pinned matrices")
{
    SECTION("zero matrix")
    {
        IntMatrix z = zeroMatrix<Int>(3, 2);
        SmithResult s = smithNormalForm(z);
        REQUIRE(s.d == z);
        REQUIRE(s.u == identityMatrix<Int>(3));
        REQUIRE(s.v == identityMatrix<Int>(2));
    }
    SECTION("identity")
    {
        SmithResult s = smithNormalForm(identityMatrix<Int>(4));
        REQUIRE(s.d == identityMatrix<Int>(4));
    }
    SECTION("2x2 with invariant factors 2 and 4")
    {
        IntMatrix m = makeMatrix({{2, 4}, {6, 8}});
        SmithResult s = smithNormalForm(m);
        checkSmith(m);
        REQUIRE(s.d(0, 0) == 2);
        REQUIRE(s.d(1, 1) == 4);
    }
}

TEST_CASE("smith normal form on random matrices")
{
    std::mt19937_64 rng(20240915);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        checkSmith(m);
    }
}

TEST_CASE("hermite lattice basis and solving")
{
    IntMatrix gens = makeMatrix({{2, 0, 4}, {0, 3, 3}, {0, 0, 0}});
    IntMatrix basis = canonicalLatticeBasis(gens);
    REQUIRE(basis.cols() == 2);
    // membership: a lattice vector solves, a non-member does not
    IntMatrix y = zeroMatrix<Int>(3, 1);
    y(0, 0) = 2;
    y(1, 0) = 3;
    REQUIRE(latticeSolve(basis, y).has_value());
    y(0, 0) = 1;
    REQUIRE_FALSE(latticeSolve(basis, y).has_value());
}

TEST_CASE("hollow triangle homology over Z")
{
    // three vertices, three edges, no face
    ChainComplex<Int> c(CoefficientRing::integers(), 0, 1);
    c.setRank(0, 3);
    c.setRank(1, 3);
    IntMatrix d1 = makeMatrix({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
    c.setDifferential(1, d1);
    REQUIRE(homology(c, 0) == GroupDescriptor{1, {}});
    REQUIRE(homology(c, 1) == GroupDescriptor{1, {}});
}

TEST_CASE("projective plane homology over Z, Q, F2, F3")
{
    ChainComplex<Int> c = projectivePlaneComplex();
    REQUIRE(homology(c, 0) == GroupDescriptor{1, {}});
    REQUIRE(homology(c, 1) == GroupDescriptor{0, {Int(2)}});
    REQUIRE(homology(c, 2) == GroupDescriptor{0, {}});

    auto overField = [&](const CoefficientRing& ring) {
        if (ring.kind == CoefficientRing::Kind::Rationals) {
            ChainComplex<Rat> f(ring, 0, 2);
            for (int k = 0; k <= 2; ++k) f.setRank(k, c.rankAt(k));
            for (int k = 1; k <= 2; ++k)
                f.setDifferential(k, matrixFromInt<Rat>(c.d(k), ring));
            return std::vector<long>{f.homologyAt(0).freeRank, f.homologyAt(1).freeRank,
                                     f.homologyAt(2).freeRank};
        }
        ChainComplex<GF> f(ring, 0, 2);
        for (int k = 0; k <= 2; ++k) f.setRank(k, c.rankAt(k));
        for (int k = 1; k <= 2; ++k)
            f.setDifferential(k, matrixFromInt<GF>(c.d(k), ring));
        return std::vector<long>{f.homologyAt(0).freeRank, f.homologyAt(1).freeRank,
                                 f.homologyAt(2).freeRank};
    };
    REQUIRE(overField(CoefficientRing::rationals()) == std::vector<long>{1, 0, 0});
    REQUIRE(overField(CoefficientRing::primeField(2)) == std::vector<long>{1, 1, 1});
    REQUIRE(overField(CoefficientRing::primeField(3)) == std::vector<long>{1, 0, 0});
}

TEST_CASE("euler characteristic equals alternating homology ranks")
{
    ChainComplex<Int> c = projectivePlaneComplex();
    long viaRanks = c.eulerCharacteristic();
    long viaHomology = 0;
    for (int k = 0; k <= 2; ++k) {
        long h = c.homologyAt(k).freeRank;
        viaHomology += (k % 2 == 0 ? h : -h);
    }
    REQUIRE(viaRanks == viaHomology);
}

TEST_CASE("prime field scalar arithmetic")
{
    GF a = GF::make(3, 5), b = GF::make(4, 5);
    REQUIRE((a * b).value() == 2);
    REQUIRE((a + b).value() == 2);
    REQUIRE((a / b).value() == 2);   // 3 * 4^{-1} = 3 * 4 = 12 = 2 (mod 5)
    REQUIRE((a - b).value() == 4);
    REQUIRE(GF(1) + GF::make(4, 5) == GF::make(0, 5));
    REQUIRE_THROWS_AS(CoefficientRing::primeField(4), std::invalid_argument);
    REQUIRE_THROWS_AS(CoefficientRing::primeField(1), std::invalid_argument);
}
