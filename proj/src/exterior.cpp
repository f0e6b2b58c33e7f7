#include "sheafcoh/exterior.hpp"

#include <stdexcept>

namespace sheafcoh {

namespace {

// combinations of {0..n-1} of size k, in lexicographic order of the sorted
// position lists
void enumerate(int n, int k, std::vector<std::uint32_t>& out)
{
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k == 0) {
        out.push_back(0);
        return;
    }
    while (true) {
        std::uint32_t mask = 0;
        for (int i : idx) mask |= (1u << i);
        out.push_back(mask);
        int t = k - 1;
        while (t >= 0 && idx[static_cast<std::size_t>(t)] == n - k + t) --t;
        if (t < 0) break;
        ++idx[static_cast<std::size_t>(t)];
        for (int u = t + 1; u < k; ++u)
            idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
    }
}

}  // namespace

ExteriorAlgebra::ExteriorAlgebra(int lambda) : lambda_(lambda)
{
    if (lambda < 0 || lambda > 30)
        throw std::invalid_argument("ExteriorAlgebra: lambda out of range");
    byDegree_.resize(static_cast<std::size_t>(lambda + 1));
    indexOf_.assign(1u << lambda, -1);
    for (int q = 0; q <= lambda; ++q) {
        enumerate(lambda, q, byDegree_[static_cast<std::size_t>(q)]);
        const auto& deg = byDegree_[static_cast<std::size_t>(q)];
        for (Index i = 0; i < static_cast<Index>(deg.size()); ++i)
            indexOf_[deg[static_cast<std::size_t>(i)]] = i;
    }
}

Index ExteriorAlgebra::dimOfDegree(int q) const
{
    if (q < 0 || q > lambda_) return 0;
    return static_cast<Index>(byDegree_[static_cast<std::size_t>(q)].size());
}

const std::vector<std::uint32_t>& ExteriorAlgebra::subsets(int q) const
{
    static const std::vector<std::uint32_t> empty;
    if (q < 0 || q > lambda_) return empty;
    return byDegree_[static_cast<std::size_t>(q)];
}

Index ExteriorAlgebra::indexOf(std::uint32_t mask) const
{
    return indexOf_[mask];
}

int ExteriorAlgebra::wedgeSign(std::uint32_t a, std::uint32_t b)
{
    if (a & b) return 0;
    // count inversions between the concatenation (a, b) and the sorted union
    int inversions = 0;
    for (int i = 0; i < 32; ++i) {
        if (!(a & (1u << i))) continue;
        std::uint32_t lower = b & ((1u << i) - 1);
        inversions += __builtin_popcount(lower);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace sheafcoh
