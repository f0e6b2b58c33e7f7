/**
 * Chain complexes of free modules with exact differentials, and their
 * homology reported as (free rank, torsion coefficients).
 */

#ifndef SHEAFCOH_COMPLEX_HPP
#define SHEAFCOH_COMPLEX_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sheafcoh/linalg.hpp"
#include "sheafcoh/snf.hpp"

namespace sheafcoh {

/**
 * Finitely generated abelian group (or vector space) in invariant-factor
 * form: free part plus torsion coefficients t1 | t2 | ... , each >= 2.
 * Over a field the torsion list is always empty.
 */
struct GroupDescriptor {
    long freeRank = 0;
    std::vector<Int> torsion;

    bool operator==(const GroupDescriptor&) const = default;
    bool isZero() const { return freeRank == 0 && torsion.empty(); }

    std::string str() const
    {
        if (isZero()) return "0";
        std::string s;
        if (freeRank > 0) {
            s = "Z^" + std::to_string(freeRank);
        }
        for (const Int& t : torsion) {
            if (!s.empty()) s += " + ";
            s += "Z/" + t.get_str();
        }
        return s;
    }
};

/**
 * A complex of free modules over the ring carried by the scalar type T.
 * Degrees run lo..hi (lo may be -1 for augmented complexes); the stored
 * differential d(k) maps degree k to degree k-1.
 *
 * Cochain complexes reuse this type with degrees negated, so that the
 * cohomological degree i lives at chain degree -i.
 */
template <typename T>
struct ChainComplex {
    CoefficientRing ring;
    int lo = 0;
    int hi = -1;
    std::vector<Index> ranks;                 // ranks[k - lo]
    std::vector<DenseMatrix<T>> differentials;  // d at degree lo+1 .. hi

    ChainComplex() = default;
    ChainComplex(CoefficientRing r, int lo_, int hi_) : ring(r), lo(lo_), hi(hi_)
    {
        if (hi >= lo) {
            ranks.assign(static_cast<std::size_t>(hi - lo + 1), 0);
            differentials.assign(static_cast<std::size_t>(hi - lo), DenseMatrix<T>());
        }
    }

    Index rankAt(int k) const
    {
        if (k < lo || k > hi) return 0;
        return ranks[static_cast<std::size_t>(k - lo)];
    }

    void setRank(int k, Index r) { ranks.at(static_cast<std::size_t>(k - lo)) = r; }

    /// Differential out of degree k (returns a zero map when out of range).
    DenseMatrix<T> d(int k) const
    {
        if (k <= lo || k > hi) return zeroMatrix<T>(rankAt(k - 1), rankAt(k));
        return differentials[static_cast<std::size_t>(k - lo - 1)];
    }

    void setDifferential(int k, DenseMatrix<T> m)
    {
        if (m.rows() != rankAt(k - 1) || m.cols() != rankAt(k))
            throw std::invalid_argument("ChainComplex: differential shape mismatch");
        differentials.at(static_cast<std::size_t>(k - lo - 1)) = std::move(m);
    }

    /// d o d == 0 in every composable degree.
    bool differentialSquaresToZero() const
    {
        for (int k = lo + 2; k <= hi; ++k) {
            DenseMatrix<T> prod = d(k - 1) * d(k);
            if (!isZeroMatrix(prod)) return false;
        }
        return true;
    }

    void validate() const
    {
        if (!differentialSquaresToZero())
            throw std::invalid_argument("ChainComplex: d^2 != 0");
    }

    long eulerCharacteristic() const
    {
        long chi = 0;
        for (int k = lo; k <= hi; ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(rankAt(k));
        return chi;
    }

    GroupDescriptor homologyAt(int k) const
    {
        GroupDescriptor g;
        if (k < lo || k > hi) return g;
        const Index n = rankAt(k);
        if constexpr (std::is_same_v<T, Int>) {
            Index rankOut = (k > lo) ? integerRank(d(k)) : 0;
            Index kernel = n - rankOut;
            if (k < hi) {
                SmithResult s = smithNormalForm(d(k + 1));
                std::vector<Int> diag = s.diagonal();
                g.freeRank = static_cast<long>(kernel) - static_cast<long>(diag.size());
                for (const Int& t : diag)
                    if (t > 1) g.torsion.push_back(t);
            } else {
                g.freeRank = static_cast<long>(kernel);
            }
        } else {
            Index rankOut = (k > lo) ? matrixRank(d(k)) : 0;
            Index rankIn = (k < hi) ? matrixRank(d(k + 1)) : 0;
            g.freeRank = static_cast<long>(n - rankOut - rankIn);
        }
        return g;
    }

    std::map<int, GroupDescriptor> homologyAll() const
    {
        std::map<int, GroupDescriptor> out;
        for (int k = lo; k <= hi; ++k) out[k] = homologyAt(k);
        return out;
    }

    /// Ranks of homology in every degree (free rank only).
    std::map<int, long> homologyRanks() const
    {
        std::map<int, long> out;
        for (int k = lo; k <= hi; ++k) out[k] = homologyAt(k).freeRank;
        return out;
    }
};

/**
 * Homology of a complex in one degree; checks d^2 = 0 first.
 */
template <typename T>
GroupDescriptor homology(const ChainComplex<T>& c, int degree)
{
    c.validate();
    return c.homologyAt(degree);
}

}  // namespace sheafcoh

#endif  // SHEAFCOH_COMPLEX_HPP
