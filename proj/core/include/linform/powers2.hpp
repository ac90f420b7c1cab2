#ifndef LINFORM_POWERS2_HPP
#define LINFORM_POWERS2_HPP

#include "linform/interval.hpp"
#include "linform/ntcore.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace linform {

using Int128 = __int128;

std::string int128_to_string(Int128 v);

/// Counts r_{k,k}(m) of representations m = sum_{i<=k} 2^{u_i} - sum_{i<=k} 2^{v_i}
/// with 1 <= u_i, v_i <= L. Sparse: only attained values are stored (m = 0
/// included). Total mass is L^{2k}; counts vanish for odd m and for
/// |m| > k(2^L - 2).
struct RepTable {
    int k = 1;
    int L = 1;
    std::map<Int128, std::uint64_t> counts;

    std::uint64_t at(Int128 m) const;
    std::uint64_t total_mass() const;
};

struct RepTableBudget {
    int max_k = 3;
    int max_L = 64;
    std::size_t max_entries = 50'000'000;
};

/// k = 1 is filled directly; k >= 2 by sparse self-convolution of the
/// power-of-two distribution (k-fold positive convolved with k-fold negated).
RepTable rep_table(int k, int L, const RepTableBudget& budget = {});

/// S(k,L) = sum_{m != 0} r_{k,k}(m) * 2 c0 * prod_{p|m, p>2} (p-1)/(p-2),
/// combining exact counts with singular-series intervals. Partial
/// factorizations widen the interval but never silently approximate.
RealInterval kp_sum(int k, int L, const RealInterval& c0, FactorCache& cache, Precision prec,
                    const FactorBudget& factor_budget = {}, const RepTableBudget& budget = {});

/// Closed form S(1,L) = 2 sum_{d=1}^{L-1} (L-d) * SingularSeries(2^d - 1),
/// using the invariance of the singular series under powers of two.
RealInterval kp_sum_closed_form(int L, const RealInterval& c0, FactorCache& cache, Precision prec,
                                const FactorBudget& factor_budget = {});

/// S(k,L) / (2 L^{2k}) - 1, the finite-L approximant of the limit A(k).
RealInterval kp_limit_estimate(int k, int L, const RealInterval& c0, FactorCache& cache,
                               Precision prec, const FactorBudget& factor_budget = {},
                               const RepTableBudget& budget = {});

} // namespace linform

#endif
