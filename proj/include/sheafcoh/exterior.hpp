/**
 * The exterior algebra on lambda generators, with the monomial basis
 * indexed by subsets of {0..lambda-1}.  Subsets of each degree are ordered
 * lexicographically by their sorted element lists, and wedge products carry
 * the shuffle sign of the concatenation.
 */

#ifndef SHEAFCOH_EXTERIOR_HPP
#define SHEAFCOH_EXTERIOR_HPP

#include <cstdint>
#include <vector>

#include "sheafcoh/linalg.hpp"

namespace sheafcoh {

class ExteriorAlgebra {
public:
    explicit ExteriorAlgebra(int lambda);

    int lambda() const { return lambda_; }
    Index dimOfDegree(int q) const;                      // C(lambda, q)
    const std::vector<std::uint32_t>& subsets(int q) const;
    Index indexOf(std::uint32_t mask) const;             // index within its degree

    /** Shuffle sign of e_a ^ e_b; 0 when the subsets overlap. */
    static int wedgeSign(std::uint32_t a, std::uint32_t b);

    /**
     * Wedge a linear form (coefficients over the generators) with a
     * degree-q element, producing a degree-(q+1) element.
     */
    template <typename T>
    DenseVector<T> wedgeLinear(const DenseVector<T>& form, const DenseVector<T>& x, int q) const
    {
        DenseVector<T> out = zeroMatrix<T>(dimOfDegree(q + 1), 1).col(0);
        const auto& degq = subsets(q);
        for (Index j = 0; j < static_cast<Index>(degq.size()); ++j) {
            if (x(j) == T(0)) continue;
            for (int g = 0; g < lambda_; ++g) {
                if (form(g) == T(0)) continue;
                std::uint32_t gm = 1u << g;
                int sign = wedgeSign(gm, degq[static_cast<std::size_t>(j)]);
                if (sign == 0) continue;
                Index target = indexOf(gm | degq[static_cast<std::size_t>(j)]);
                T term = form(g) * x(j);
                out(target) = (sign > 0) ? out(target) + term : out(target) - term;
            }
        }
        return out;
    }

private:
    int lambda_;
    std::vector<std::vector<std::uint32_t>> byDegree_;
    std::vector<Index> indexOf_;   // mask -> index within its degree
};

}  // namespace sheafcoh

#endif  // SHEAFCOH_EXTERIOR_HPP
