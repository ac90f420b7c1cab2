#ifndef LINFORM_SEARCH_HPP
#define LINFORM_SEARCH_HPP

#include "linform/interval.hpp"
#include "linform/ntcore.hpp"
#include "linform/s0calc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linform {

/// One certified solution of |l1 p1 + l2 p2 + sum_i mu_i 2^{m_i} + gamma| < eta.
struct SolutionRecord {
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::vector<int> ms; // exponents, 1 <= m_i <= L
    double value = 0.0;  // midpoint of the certified value interval
    double residual = 0.0;
    std::string value_decimal; // interval rendering at working precision
};

struct SearchOptions {
    std::optional<long> limit;      // stop after this many solutions
    std::optional<int> L_override;  // exponent range; default max(1, floor(log2(eps X / 2M)))
    double budget_ops = 5e10;       // resource cap on pi(X)^2 * L^s
    int jobs = 1;                   // partition by p1; deterministic merge
};

struct SearchResult {
    std::vector<SolutionRecord> solutions; // lexicographic in (p1, p2, m-vector)
    std::vector<SolutionRecord> undecided; // |value| straddles eta at max precision
    int L = 1;
    bool L_clamped = false; // floor(log2(eps X / 2M)) < 1 was raised to 1
    bool truncated = false; // stopped at `limit`
};

/// Exhaustive certified search over eps X <= p1, p2 <= X and 1 <= m_i <= L.
/// Candidate tuples are pre-screened in double precision with a slack far
/// exceeding the rounding error, then certified by interval evaluation with
/// outward rounding (retrying at doubled precision before declaring a
/// boundary case undecided).
SearchResult find_solutions(const CoefficientConfig& cfg, const PrimeTable& table, double X,
                            int s, Precision prec, const SearchOptions& options = {});

struct SolutionCount {
    long count = 0;
    long undecided = 0;
};

SolutionCount count_solutions(const CoefficientConfig& cfg, const PrimeTable& table, double X,
                              int s, Precision prec, const SearchOptions& options = {});

struct DensityRow {
    double X;
    long count;
    long undecided;
    double reference; // eta * X * (log X)^(s-2)
    double ratio;     // count / reference
};

std::vector<DensityRow> density_report(const CoefficientConfig& cfg, const PrimeTable& table,
                                       const std::vector<double>& x_grid, int s, Precision prec,
                                       const SearchOptions& options = {});

} // namespace linform

#endif
