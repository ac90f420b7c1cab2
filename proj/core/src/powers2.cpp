#include "linform/powers2.hpp"

#include "linform/errors.hpp"
#include "linform/singular.hpp"

#include <algorithm>

namespace linform {

std::string int128_to_string(Int128 v) {
    if (v == 0) {
        return "0";
    }
    const bool neg = v < 0;
    unsigned __int128 a = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (a > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(a % 10)));
        a /= 10;
    }
    if (neg) {
        digits.push_back('-');
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::uint64_t RepTable::at(Int128 m) const {
    auto it = counts.find(m);
    return it == counts.end() ? 0 : it->second;
}

std::uint64_t RepTable::total_mass() const {
    std::uint64_t sum = 0;
    for (const auto& [m, c] : counts) {
        sum += c;
    }
    return sum;
}

namespace {

void check_budget(std::size_t entries, const RepTableBudget& budget) {
    if (entries > budget.max_entries) {
        throw resource_error("rep_table: sparse table exceeds the entry budget of " +
                             std::to_string(budget.max_entries));
    }
}

std::map<Int128, std::uint64_t> convolve(const std::map<Int128, std::uint64_t>& a,
                                         const std::map<Int128, std::uint64_t>& b,
                                         const RepTableBudget& budget) {
    std::map<Int128, std::uint64_t> out;
    for (const auto& [x, cx] : a) {
        for (const auto& [y, cy] : b) {
            out[x + y] += cx * cy;
        }
        check_budget(out.size(), budget);
    }
    return out;
}

} // namespace

RepTable rep_table(int k, int L, const RepTableBudget& budget) {
    if (k < 1 || L < 1) {
        throw domain_error("rep_table: k and L must be >= 1");
    }
    if (k > budget.max_k || L > budget.max_L) {
        throw resource_error("rep_table: k <= " + std::to_string(budget.max_k) + " and L <= " +
                             std::to_string(budget.max_L) + " enforced by the effort budget");
    }
    RepTable t;
    t.k = k;
    t.L = L;
    if (k == 1) {
        for (int u = 1; u <= L; ++u) {
            for (int v = 1; v <= L; ++v) {
                t.counts[(Int128(1) << u) - (Int128(1) << v)] += 1;
            }
        }
        return t;
    }
    std::map<Int128, std::uint64_t> single;
    for (int u = 1; u <= L; ++u) {
        single[Int128(1) << u] = 1;
    }
    std::map<Int128, std::uint64_t> positive = single;
    for (int i = 1; i < k; ++i) {
        positive = convolve(positive, single, budget);
    }
    std::map<Int128, std::uint64_t> negated;
    for (const auto& [m, c] : positive) {
        negated[-m] = c;
    }
    t.counts = convolve(positive, negated, budget);
    return t;
}

namespace {

/// Largest power of two dividing m (m > 0), i.e. the reduction to the odd part.
std::uint64_t odd_part_u64(Int128 m) {
    unsigned __int128 a = static_cast<unsigned __int128>(m);
    while ((a & 1) == 0) {
        a >>= 1;
    }
    if (a > ~0ull) {
        throw resource_error("kp_sum: odd part exceeds 64 bits; reduce k or L");
    }
    return static_cast<std::uint64_t>(a);
}

} // namespace

RealInterval kp_sum(int k, int L, const RealInterval& c0, FactorCache& cache, Precision prec,
                    const FactorBudget& factor_budget, const RepTableBudget& budget) {
    RepTable t = rep_table(k, L, budget);
    // Symmetry r(m) = r(-m) and invariance of the singular series under the
    // two-part: group positive m by odd part.
    std::map<std::uint64_t, std::uint64_t> by_odd_part;
    for (const auto& [m, c] : t.counts) {
        if (m > 0) {
            by_odd_part[odd_part_u64(m)] += c;
        }
    }
    RealInterval sum = RealInterval::from_int(0, prec);
    for (const auto& [odd, weight] : by_odd_part) {
        const Factorization& f = cache.get(odd, factor_budget);
        SingSeriesValue sp = singular_series_factor(f, prec);
        sum += RealInterval::from_uint(weight, prec) * sp.interval;
    }
    // total = 2 * sum_{m>0} r(m) * 2 c0 * sprime(m)
    return c0 * sum.mul_pow2(2);
}

RealInterval kp_sum_closed_form(int L, const RealInterval& c0, FactorCache& cache, Precision prec,
                                const FactorBudget& factor_budget) {
    if (L < 2) {
        throw domain_error("kp_sum_closed_form: L must be >= 2");
    }
    RealInterval sum = RealInterval::from_int(0, prec);
    for (int d = 1; d <= L - 1; ++d) {
        const std::uint64_t n = (d == 64) ? ~0ull : ((1ull << d) - 1);
        SingSeriesValue sp = singular_series_factor(cache.get(n, factor_budget), prec);
        sum += RealInterval::from_int(L - d, prec) * sp.interval;
    }
    // 2 * sum (L-d) * 2 c0 * sprime(2^d - 1)
    return c0 * sum.mul_pow2(2);
}

RealInterval kp_limit_estimate(int k, int L, const RealInterval& c0, FactorCache& cache,
                               Precision prec, const FactorBudget& factor_budget,
                               const RepTableBudget& budget) {
    RealInterval s = kp_sum(k, L, c0, cache, prec, factor_budget, budget);
    RealInterval denom = RealInterval::from_int(L, prec).pow_int(2 * k).mul_pow2(1);
    return s / denom - RealInterval::from_int(1, prec);
}

} // namespace linform
