#include "linform/singular.hpp"

#include "linform/constants.hpp"
#include "linform/errors.hpp"

#include <cmath>

namespace linform {

namespace {

int moebius(unsigned long k) {
    int mu = 1;
    for (unsigned long p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            k /= p;
            if (k % p == 0) {
                return 0;
            }
            mu = -mu;
        }
    }
    if (k > 1) {
        mu = -mu;
    }
    return mu;
}

/// P(2) = sum_{p} 1/p^2 as a certified interval, via the Moebius series
/// P(2) = sum_{k>=1} mu(k)/k * log zeta(2k) truncated at K with remainder
/// |R| <= sum_{k>K} log zeta(2k) <= sum_{k>K} 2*4^{-k} <= 4^{-K}.
RealInterval prime_zeta_two(Precision prec) {
    const unsigned long K = 40;
    RealInterval sum = RealInterval::from_int(0, prec);
    for (unsigned long k = 1; k <= K; ++k) {
        const int mu = moebius(k);
        if (mu == 0) {
            continue;
        }
        RealInterval term = zeta_even(2 * k, prec).log();
        term = term * RealInterval::from_rational(mpq_class(mu, k), prec);
        sum += term;
    }
    // remainder bound 4^{-K}
    RealInterval rem = RealInterval::from_int(1, prec).mul_pow2(-static_cast<int>(2 * K));
    return sum + RealInterval::hull(-rem, rem);
}

} // namespace

RealInterval twin_prime_constant(const PrimeTable& table, Precision prec) {
    if (prec.digits() < 15) {
        throw validation_error("twin_prime_constant: precision must be >= 15 digits");
    }
    const std::uint64_t B = table.bound();
    if (B < 3) {
        throw domain_error("twin_prime_constant: prime bound must be >= 3");
    }
    if (B >= (1ull << 32)) {
        // p^2 must stay within 64 bits below
        throw resource_error("twin_prime_constant: prime bound must be below 2^32");
    }

    const mpfr_prec_t bits = prec.bits();
    mpfr_t plo, phi, slo, shi, t;
    mpfr_inits2(bits, plo, phi, slo, shi, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(plo, 1, MPFR_RNDD);
    mpfr_set_ui(phi, 1, MPFR_RNDU);
    mpfr_set_zero(slo, 1);
    mpfr_set_zero(shi, 1);

    for (std::uint64_t p : table.primes()) {
        if (p > 2) {
            // factor 1 - 1/(p-1)^2 = p(p-2)/(p-1)^2, all quantities positive
            const std::uint64_t num = p * (p - 2);
            const std::uint64_t den = (p - 1) * (p - 1);
            mpfr_set_ui(t, num, MPFR_RNDD);
            mpfr_div_ui(t, t, den, MPFR_RNDD);
            mpfr_mul(plo, plo, t, MPFR_RNDD);
            mpfr_set_ui(t, num, MPFR_RNDU);
            mpfr_div_ui(t, t, den, MPFR_RNDU);
            mpfr_mul(phi, phi, t, MPFR_RNDU);
        }
        // accumulate sum_{p <= B} p^{-2} (p = 2 included: P(2) covers all primes)
        mpfr_set_ui(t, 1, MPFR_RNDD);
        mpfr_div_ui(t, t, p * p, MPFR_RNDD);
        mpfr_add(slo, slo, t, MPFR_RNDD);
        mpfr_set_ui(t, 1, MPFR_RNDU);
        mpfr_div_ui(t, t, p * p, MPFR_RNDU);
        mpfr_add(shi, shi, t, MPFR_RNDU);
    }

    RealInterval partial(prec), finite_sum(prec);
    mpfr_set(partial.lo_raw(), plo, MPFR_RNDD);
    mpfr_set(partial.hi_raw(), phi, MPFR_RNDU);
    mpfr_set(finite_sum.lo_raw(), slo, MPFR_RNDD);
    mpfr_set(finite_sum.hi_raw(), shi, MPFR_RNDU);
    mpfr_clears(plo, phi, slo, shi, t, static_cast<mpfr_ptr>(nullptr));

    // P_{>B}(2) = P(2) - sum_{p <= B} p^{-2}; nonnegative by construction.
    RealInterval tail_p2 = prime_zeta_two(prec) - finite_sum;
    if (mpfr_sgn(tail_p2.lo_raw()) < 0) {
        mpfr_set_zero(tail_p2.lo_raw(), 1);
    }
    if (mpfr_sgn(tail_p2.hi_raw()) < 0) {
        throw precision_error("twin_prime_constant: negative tail; raise the working precision");
    }

    // T = sum_{p>B} -log(1 - 1/(p-1)^2)
    //   = Q(2) + sum_{j>=2} Q(2j)/j,      Q(m) = sum_{p>B} (p-1)^{-m}
    // and Q(2) = P_{>B}(2) + sum_{i>=1} (i+1) P_{>B}(2+i). All omitted terms
    // are positive, with elementary majorants
    //   sum_{i>=1} (i+1) P_{>B}(2+i) <= sum_{k>B} 2(k-1)^{-3} <= (B-1)^{-2}
    //   sum_{j>=2} Q(2j)/j           <= (2/3)(B-1)^{-3}.
    RealInterval bminus1 = RealInterval::from_uint(B - 1, prec);
    RealInterval extra_hi = bminus1.pow_int(-2) +
                            RealInterval::from_rational(mpq_class(2, 3), prec) * bminus1.pow_int(-3);
    RealInterval zero = RealInterval::from_int(0, prec);
    RealInterval tail_total = tail_p2 + RealInterval::hull(zero, extra_hi);

    return partial * (-tail_total).exp();
}

SingSeriesValue singular_series_factor(const Factorization& f, Precision prec) {
    if (f.n < 1) {
        throw domain_error("singular_series_factor: n must be >= 1");
    }
    mpq_class known(1);
    for (const auto& pp : f.factors) {
        if (pp.prime > 2) {
            known *= mpq_class(pp.prime - 1, pp.prime - 2);
        }
    }
    known.canonicalize();

    SingSeriesValue out;
    out.n = f.n;
    if (f.complete()) {
        out.exact = known;
        out.complete = true;
        out.interval = RealInterval::from_rational(known, prec);
        return out;
    }

    // Unknown part: at most k = floor(log_b cofactor) distinct odd primes,
    // each >= b, each contributing a factor <= (b-1)/(b-2).
    out.complete = false;
    std::uint64_t b = std::max<std::uint64_t>(f.cofactor_lower_prime_bound, 3);
    int k = 0;
    for (unsigned __int128 power = b; power <= f.cofactor; power *= b) {
        ++k;
    }
    mpq_class mult(1);
    const mpq_class per_prime(b - 1, b - 2);
    for (int i = 0; i < k; ++i) {
        mult *= per_prime;
    }
    RealInterval lo_iv = RealInterval::from_rational(known, prec);
    RealInterval hi_iv = RealInterval::from_rational(known * mult, prec);
    out.interval = RealInterval::hull(lo_iv, hi_iv);
    return out;
}

RealInterval singular_series(const SingSeriesValue& sprime, const RealInterval& c0) {
    return c0.mul_pow2(1) * sprime.interval;
}

RealInterval totient_ratio_bound(const Factorization& f, const RealInterval& c0, Precision prec) {
    if (!f.complete()) {
        throw precondition_error("totient_ratio_bound: factorization of " + std::to_string(f.n) +
                                 " is incomplete");
    }
    if (f.n <= 2) {
        return RealInterval::from_int(1, prec);
    }
    const std::uint64_t phi = euler_phi(f);
    mpq_class ratio(f.n, phi);
    ratio.canonicalize();
    return RealInterval::from_rational(ratio, prec) / c0;
}

RealInterval rosser_schoenfeld_bound(std::uint64_t n, const RealInterval& c0, Precision prec) {
    if (n < 3) {
        throw domain_error("rosser_schoenfeld_bound: n must be >= 3");
    }
    RealInterval loglog = RealInterval::from_uint(n, prec).log().log();
    RealInterval egamma = euler_gamma(prec).exp();
    RealInterval coeff = RealInterval::from_decimal(kRosserSchoenfeldCoeff, prec);
    return egamma * loglog / c0 + coeff / (c0 * loglog);
}

BoundComparison bound_comparison(std::uint64_t n, const RealInterval& c0, Precision prec,
                                 const FactorBudget& budget) {
    if (n < 3) {
        throw domain_error("bound_comparison: n must be >= 3");
    }
    Factorization f = factorize(n, budget);
    if (!f.complete()) {
        throw precondition_error("bound_comparison: factorization of " + std::to_string(n) +
                                 " incomplete within budget");
    }
    BoundComparison out{n,
                        singular_series_factor(f, prec).interval,
                        totient_ratio_bound(f, c0, prec),
                        rosser_schoenfeld_bound(n, c0, prec),
                        RealInterval::from_uint(2 * n, prec).log().mul_pow2(1),
                        ""};
    const double fb = out.f_bound.mid_double();
    const double rs = out.rs_bound.mid_double();
    const double pa = out.parsell_2log2n.mid_double();
    if (fb <= rs && fb <= pa) {
        out.minimum_label = "f_bound";
    } else if (rs <= pa) {
        out.minimum_label = "rs_bound";
    } else {
        out.minimum_label = "parsell_2log2n";
    }
    return out;
}

} // namespace linform
