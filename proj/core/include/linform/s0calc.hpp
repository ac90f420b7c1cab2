#ifndef LINFORM_S0CALC_HPP
#define LINFORM_S0CALC_HPP

#include "linform/interval.hpp"
#include "linform/ntcore.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace linform {

enum class RatioClass { algebraic, transcendental };
enum class BVariant { chen, conjectural }; // B = 3.9171 or B = 1
enum class ParsellVariant { published_25log, refined_C1 };
enum class ValidationMode { theorem, search };

std::string to_string(RatioClass c);
std::string to_string(BVariant v);

/// Raw problem instance: decimal literals plus exact rational ratios.
struct RawCoefficientConfig {
    std::string lambda1;
    std::string lambda2;
    std::vector<std::string> mus;
    std::string ratio1; // "a1/q1", reduced or not
    std::string ratio2;
    std::string gamma = "0";
    std::string eta;
    std::string epsilon = "0.1";
    RatioClass ratio_class = RatioClass::algebraic;
    int literal_digits = 15; // declared precision of the decimal literals
};

/// Validated instance. The ratios are authoritative for a/q; the literals
/// are authoritative for the magnitudes entering the s0 formulas.
struct CoefficientConfig {
    RawCoefficientConfig raw;
    mpq_class ratio1; // reduced, q > 0
    mpq_class ratio2;
    RealInterval lambda1;
    RealInterval lambda2;
    std::vector<RealInterval> mus;
    RealInterval gamma;
    RealInterval eta;
    double epsilon = 0.1;
    RatioClass ratio_class = RatioClass::algebraic;
    std::vector<std::string> warnings; // populated in search mode

    std::uint64_t q1() const;
    std::uint64_t q2() const;
    double mu_norm() const; // M = sum |mu_i|
};

/// Reduces the ratios and checks every hypothesis. Violations of the
/// theorem-side conditions are errors in theorem mode and warnings in search
/// mode; structural problems (zero mu, ratio/literal mismatch) are always
/// errors.
CoefficientConfig validate_config(const RawCoefficientConfig& raw, ValidationMode mode,
                                  Precision prec);

/// The constant 2 B (1 + A(1)) as a certified interval. Preconditions:
/// a1_estimate must contain the published literal 0.2792521041.
RealInterval c_upper_constant(const RealInterval& b, const RealInterval& a1_estimate,
                              Precision prec);
RealInterval c_upper_constant(BVariant v, const RealInterval& a1_estimate, Precision prec);
/// Exact rational 2 B (1 + A(1)) from the decimal literals.
mpq_class c_upper_exact(BVariant v);
/// Published rendering: the exact product rounded up at 10 decimals.
std::string c_upper_published(BVariant v);

/// C(q1,q2) = (log 2 + C * sprime(q1))^(1/2) * (log 2 + C * sprime(q2))^(1/2).
/// Requires complete factorizations of q1 and q2.
RealInterval c_of_q(const Factorization& q1, const Factorization& q2, const RealInterval& c_const,
                    Precision prec);

struct S0Result {
    long s0 = 0;
    RatioClass ratio_class = RatioClass::algebraic;
    RealInterval C_interval;
    RealInterval Cq_interval;
    RealInterval numerator;
    std::string denominator_constant; // "0.83372131685", "0.91237810306" or "0.954"
    BVariant b_variant = BVariant::chen;
    int certified_at_digits = 0; // working precision at which the ceiling resolved
};

/// Reduced inputs of the s0 formulas (also derivable from a full config).
struct S0Inputs {
    std::uint64_t q1 = 1;
    std::uint64_t q2 = 1;
    RealInterval abs_lambda_product; // |lambda1 * lambda2|
    RealInterval eta;
    RatioClass ratio_class = RatioClass::algebraic;
};

S0Inputs s0_inputs(const CoefficientConfig& cfg);

/// s0 = 2 + ceil((log(2 C(q1,q2) |l1 l2|) - log eta) / (-log nu)), with the
/// ceiling certified by interval refinement (precision_error when the
/// quotient straddles an integer at the precision cap, reporting both
/// candidates).
S0Result compute_s0(const S0Inputs& in, BVariant b, Precision prec);
S0Result compute_s0(const CoefficientConfig& cfg, BVariant b, Precision prec);

/// Parsell's baseline with denominator -log(0.954). The refined variant uses
/// (1 + C1 sprime(q))^(1/2) factors with the epsilon term set to zero.
S0Result parsell_s0(const S0Inputs& in, ParsellVariant variant, Precision prec);
S0Result parsell_s0(const CoefficientConfig& cfg, ParsellVariant variant, Precision prec);

} // namespace linform

#endif
