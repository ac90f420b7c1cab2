#include "linform/s0calc.hpp"

#include "linform/constants.hpp"
#include "linform/errors.hpp"
#include "linform/singular.hpp"

#include <cmath>

namespace linform {

std::string to_string(RatioClass c) {
    return c == RatioClass::algebraic ? "algebraic" : "transcendental";
}

std::string to_string(BVariant v) {
    return v == BVariant::chen ? "chen_3.9171" : "conjectural_1";
}

std::uint64_t CoefficientConfig::q1() const { return ratio1.get_den().get_ui(); }
std::uint64_t CoefficientConfig::q2() const { return ratio2.get_den().get_ui(); }

double CoefficientConfig::mu_norm() const {
    double m = 0;
    for (const auto& mu : mus) {
        m += mu.abs().mid_double();
    }
    return m;
}

namespace {

mpq_class parse_ratio(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
        throw validation_error("validate_config: cannot parse ratio '" + s + "'");
    }
    q.canonicalize(); // reduced, denominator > 0
    if (q == 0) {
        throw validation_error("validate_config: ratio must be nonzero");
    }
    return q;
}

} // namespace

CoefficientConfig validate_config(const RawCoefficientConfig& raw, ValidationMode mode,
                                  Precision prec) {
    CoefficientConfig cfg;
    cfg.raw = raw;
    cfg.ratio_class = raw.ratio_class;
    cfg.ratio1 = parse_ratio(raw.ratio1);
    cfg.ratio2 = parse_ratio(raw.ratio2);
    const mpz_class a1_abs = abs(cfg.ratio1.get_num());
    const mpz_class a2_abs = abs(cfg.ratio2.get_num());
    if (!cfg.ratio1.get_den().fits_ulong_p() || !cfg.ratio2.get_den().fits_ulong_p() ||
        !a1_abs.fits_ulong_p() || !a2_abs.fits_ulong_p()) {
        throw validation_error("validate_config: ratio numerator/denominator exceeds 64 bits");
    }
    cfg.lambda1 = RealInterval::from_decimal(raw.lambda1, prec);
    cfg.lambda2 = RealInterval::from_decimal(raw.lambda2, prec);
    cfg.gamma = RealInterval::from_decimal(raw.gamma, prec);
    cfg.eta = RealInterval::from_decimal(raw.eta, prec);
    cfg.epsilon = std::stod(raw.epsilon);
    if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) {
        throw validation_error("validate_config: epsilon must lie in (0,1)");
    }
    if (!cfg.eta.is_positive()) {
        throw validation_error("validate_config: eta must be positive");
    }
    if (raw.mus.empty()) {
        throw validation_error("validate_config: at least one mu is required");
    }
    for (const auto& m : raw.mus) {
        RealInterval mu = RealInterval::from_decimal(m, prec);
        if (mu.contains_zero()) {
            throw validation_error("validate_config: mu literal '" + m + "' must be nonzero");
        }
        cfg.mus.push_back(mu);
    }

    auto fail = [&](const std::string& msg) {
        if (mode == ValidationMode::theorem) {
            throw validation_error("validate_config: " + msg);
        }
        cfg.warnings.push_back(msg);
    };

    // ratio_i must equal lambda_i / mu_i within the declared literal precision
    const RealInterval tol =
        RealInterval::from_decimal("1e" + std::to_string(1 - raw.literal_digits), prec);
    auto check_ratio = [&](const RealInterval& lam, const RealInterval& mu, const mpq_class& ratio,
                           const char* which) {
        RealInterval diff = (lam - RealInterval::from_rational(ratio, prec) * mu).abs();
        RealInterval scale = lam.abs() + RealInterval::from_int(1, prec);
        if ((tol * scale).strictly_less_than(diff)) {
            throw validation_error(std::string("validate_config: ") + which +
                                   " does not match lambda/mu at the declared literal precision");
        }
    };
    check_ratio(cfg.lambda1, cfg.mus.at(0), cfg.ratio1, "ratio1");
    if (cfg.mus.size() >= 2) {
        check_ratio(cfg.lambda2, cfg.mus.at(1), cfg.ratio2, "ratio2");
    }

    // Theorem hypotheses: lambda1 > 1, lambda2 < -1, |lambda1/lambda2| >= 1.
    const RealInterval one = RealInterval::from_int(1, prec);
    if (!one.strictly_less_than(cfg.lambda1)) {
        fail("theorem mode requires lambda1 > 1");
    }
    if (!cfg.lambda2.strictly_less_than(-one)) {
        fail("theorem mode requires lambda2 < -1");
    }
    if (cfg.lambda1.abs().strictly_less_than(cfg.lambda2.abs())) {
        fail("theorem mode requires |lambda1/lambda2| >= 1");
    }

    // eta < min(|lambda1/a1|, |lambda2/a2|)
    auto eta_cap = [&](const RealInterval& lam, const mpq_class& ratio) {
        mpq_class a_abs = abs(ratio.get_num());
        return lam.abs() / RealInterval::from_rational(a_abs, prec);
    };
    RealInterval cap1 = eta_cap(cfg.lambda1, cfg.ratio1);
    RealInterval cap2 = eta_cap(cfg.lambda2, cfg.ratio2);
    if (!cfg.eta.strictly_less_than(cap1) || !cfg.eta.strictly_less_than(cap2)) {
        fail("eta must satisfy eta < min(|lambda1/a1|, |lambda2/a2|) = min(" +
             cap1.to_string(6) + ", " + cap2.to_string(6) + ")");
    }
    return cfg;
}

RealInterval c_upper_constant(const RealInterval& b, const RealInterval& a1_estimate,
                              Precision prec) {
    mpq_class a1_literal("2792521041");
    a1_literal /= mpq_class("10000000000");
    if (!a1_estimate.contains(a1_literal)) {
        throw precondition_error("c_upper_constant: A(1) estimate must contain the certified "
                                 "literal 0.2792521041");
    }
    return (RealInterval::from_int(1, prec) + a1_estimate).mul_pow2(1) * b;
}

RealInterval c_upper_constant(BVariant v, const RealInterval& a1_estimate, Precision prec) {
    RealInterval b = v == BVariant::chen ? RealInterval::from_decimal(kChenB, prec)
                                         : RealInterval::from_int(1, prec);
    return c_upper_constant(b, a1_estimate, prec);
}

mpq_class c_upper_exact(BVariant v) {
    mpq_class a1("2792521041");
    a1 /= mpq_class("10000000000");
    mpq_class b = v == BVariant::chen ? mpq_class(39171, 10000) : mpq_class(1);
    return 2 * b * (1 + a1);
}

std::string c_upper_published(BVariant v) {
    return rational_ceil_decimal(c_upper_exact(v), 10);
}

RealInterval c_of_q(const Factorization& q1, const Factorization& q2, const RealInterval& c_const,
                    Precision prec) {
    if (!q1.complete() || !q2.complete()) {
        throw precondition_error("c_of_q: q1 and q2 must have complete factorizations");
    }
    const RealInterval log2 = RealInterval::from_int(2, prec).log();
    auto half = [&](const Factorization& q) {
        SingSeriesValue sp = singular_series_factor(q, prec);
        return (log2 + c_const * sp.interval).sqrt();
    };
    return half(q1) * half(q2);
}

S0Inputs s0_inputs(const CoefficientConfig& cfg) {
    S0Inputs in;
    in.q1 = cfg.q1();
    in.q2 = cfg.q2();
    in.abs_lambda_product = (cfg.lambda1 * cfg.lambda2).abs();
    in.eta = cfg.eta;
    in.ratio_class = cfg.ratio_class;
    return in;
}

namespace {

/// Certified ceiling of numerator/denominator, refining the working
/// precision until the quotient interval no longer straddles an integer.
/// `recompute` rebuilds both intervals from exact inputs at a given precision.
template <typename Recompute>
long certified_ceil(const Recompute& recompute, Precision prec, S0Result& result) {
    Precision p = prec;
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto [numerator, denominator] = recompute(p);
        RealInterval q = numerator / denominator;
        if (mpfr_sgn(q.hi_raw()) <= 0) {
            // s0 = 2 + ceil(q) >= 3 requires a positive quotient
            throw domain_error("s0 formula: eta is too large (nonpositive numerator)");
        }
        mpfr_t c;
        mpfr_init2(c, q.precision().bits());
        mpfr_ceil(c, q.lo_raw());
        long ceil_lo = mpfr_get_si(c, MPFR_RNDN);
        mpfr_ceil(c, q.hi_raw());
        long ceil_hi = mpfr_get_si(c, MPFR_RNDN);
        mpfr_clear(c);
        if (ceil_lo == ceil_hi) {
            result.numerator = numerator;
            result.certified_at_digits = p.digits();
            return ceil_lo;
        }
        p = p.doubled();
    }
    auto [numerator, denominator] = recompute(p);
    RealInterval q = numerator / denominator;
    throw precision_error("s0 ceiling not certified at maximum precision: quotient " +
                          q.to_string(20) + " straddles an integer; candidate s0 values " +
                          std::to_string(2 + static_cast<long>(std::floor(q.lo_double())) + 1) +
                          " and " +
                          std::to_string(2 + static_cast<long>(std::ceil(q.hi_double()))));
}

} // namespace

S0Result compute_s0(const S0Inputs& in, BVariant b, Precision prec) {
    S0Result result;
    result.ratio_class = in.ratio_class;
    result.b_variant = b;
    result.denominator_constant =
        in.ratio_class == RatioClass::algebraic ? kNuAlgebraic : kNuTranscendental;

    const std::string nu = result.denominator_constant;
    Factorization q1f = factorize(in.q1);
    Factorization q2f = factorize(in.q2);

    mpq_class a1_literal("2792521041");
    a1_literal /= mpq_class("10000000000");

    auto recompute = [&](Precision p) {
        RealInterval c_const =
            c_upper_constant(b, RealInterval::from_rational(a1_literal, p), p);
        RealInterval cq = c_of_q(q1f, q2f, c_const, p);
        RealInterval abs_ll = in.abs_lambda_product.at_precision(p);
        RealInterval eta = in.eta.at_precision(p);
        RealInterval numerator = (cq.mul_pow2(1) * abs_ll).log() - eta.log();
        RealInterval denominator = -RealInterval::from_decimal(nu, p).log();
        result.C_interval = c_const;
        result.Cq_interval = cq;
        return std::make_pair(numerator, denominator);
    };
    result.s0 = 2 + certified_ceil(recompute, prec, result);
    return result;
}

S0Result compute_s0(const CoefficientConfig& cfg, BVariant b, Precision prec) {
    return compute_s0(s0_inputs(cfg), b, prec);
}

S0Result parsell_s0(const S0Inputs& in, ParsellVariant variant, Precision prec) {
    S0Result result;
    result.ratio_class = in.ratio_class;
    result.denominator_constant = kParsellDenominator;

    Factorization q1f = factorize(in.q1);
    Factorization q2f = factorize(in.q2);

    auto recompute = [&](Precision p) {
        RealInterval c1q(p);
        if (variant == ParsellVariant::published_25log) {
            // 25 (log 2 q1)^(1/2) (log 2 q2)^(1/2)
            RealInterval l1 = RealInterval::from_uint(2 * in.q1, p).log().sqrt();
            RealInterval l2 = RealInterval::from_uint(2 * in.q2, p).log().sqrt();
            c1q = RealInterval::from_int(25, p) * l1 * l2;
        } else {
            // (1 + C1 sprime(q1))^(1/2) (1 + C1 sprime(q2))^(1/2), epsilon term 0
            RealInterval c1 = RealInterval::from_decimal(kParsellC1, p);
            RealInterval one = RealInterval::from_int(1, p);
            RealInterval h1 = (one + c1 * singular_series_factor(q1f, p).interval).sqrt();
            RealInterval h2 = (one + c1 * singular_series_factor(q2f, p).interval).sqrt();
            c1q = h1 * h2;
        }
        RealInterval abs_ll = in.abs_lambda_product.at_precision(p);
        RealInterval eta = in.eta.at_precision(p);
        RealInterval numerator = (c1q.mul_pow2(1) * abs_ll).log() - eta.log();
        RealInterval denominator = -RealInterval::from_decimal(kParsellDenominator, p).log();
        result.Cq_interval = c1q;
        result.C_interval = RealInterval::from_decimal(kParsellC1, p);
        return std::make_pair(numerator, denominator);
    };
    result.s0 = 2 + certified_ceil(recompute, prec, result);
    return result;
}

S0Result parsell_s0(const CoefficientConfig& cfg, ParsellVariant variant, Precision prec) {
    return parsell_s0(s0_inputs(cfg), variant, prec);
}

} // namespace linform
