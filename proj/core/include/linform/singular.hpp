#ifndef LINFORM_SINGULAR_HPP
#define LINFORM_SINGULAR_HPP

#include "linform/interval.hpp"
#include "linform/ntcore.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>

namespace linform {

/// Certified interval for the twin-prime constant
///   c0 = prod_{p > 2} (1 - 1/(p-1)^2),
/// from the exact partial product over 2 < p <= table.bound() and a
/// two-sided certified bound on the tail
///   T = sum_{p > B} -log(1 - 1/(p-1)^2)
/// obtained from the prime zeta value P(2) (Moebius series over directed-
/// rounded even zeta values) minus the finite sum over p <= B, plus positive
/// elementary majorants for the higher-order terms.
///
/// Requires table.bound() >= 3 and precision >= 15 digits.
RealInterval twin_prime_constant(const PrimeTable& table, Precision prec);

/// The multiplicative singular-series factor prod_{p | n, p > 2} (p-1)/(p-2).
struct SingSeriesValue {
    std::uint64_t n = 1;
    std::optional<mpq_class> exact; // set iff the factorization is complete
    RealInterval interval;          // always valid
    bool complete = true;
};

/// For complete factorizations the value is exact; for partial ones the
/// unfactored cofactor contributes an interval: lower bound from the known
/// primes, upper bound multiplied by ((b-1)/(b-2))^k where b is the certified
/// least-prime-factor bound and k = floor(log_b cofactor) bounds the number
/// of unknown odd prime divisors.
SingSeriesValue singular_series_factor(const Factorization& f, Precision prec);

/// The full singular series 2 * c0 * prod (p-1)/(p-2).
RealInterval singular_series(const SingSeriesValue& sprime, const RealInterval& c0);

/// n / (c0 * phi(n)) for n >= 3; exactly 1 for n in {1, 2}.
/// Requires a complete factorization.
RealInterval totient_ratio_bound(const Factorization& f, const RealInterval& c0, Precision prec);

/// exp(gamma) * loglog(n) / c0 + 2.50637 / (c0 * loglog(n)), n >= 3.
RealInterval rosser_schoenfeld_bound(std::uint64_t n, const RealInterval& c0, Precision prec);

struct BoundComparison {
    std::uint64_t n;
    RealInterval sprime;
    RealInterval f_bound;
    RealInterval rs_bound;
    RealInterval parsell_2log2n;
    std::string minimum_label; // smallest of the three upper bounds
};

BoundComparison bound_comparison(std::uint64_t n, const RealInterval& c0, Precision prec,
                                 const FactorBudget& budget = {});

} // namespace linform

#endif
