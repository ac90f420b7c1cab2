#include "linform/constants.hpp"

namespace linform {

RealInterval euler_gamma(Precision prec) {
    return RealInterval::from_decimal(kEulerGamma50, prec).widened_ulps(1);
}

namespace {

ConstantEntry literal_entry(const std::string& name, const char* literal, int digits,
                            const std::string& provenance, Precision prec) {
    RealInterval iv = RealInterval::from_decimal(literal, prec);
    return {name, iv.lo_string(digits + 2), iv.hi_string(digits + 2), digits, provenance};
}

} // namespace

std::vector<ConstantEntry> constants_table(const RealInterval& c0, Precision prec) {
    std::vector<ConstantEntry> t;
    const int d = prec.digits();
    t.push_back({"c0", c0.lo_string(d), c0.hi_string(d), d,
                 "twin-prime constant prod_{p>2}(1-1/(p-1)^2); certified here, window due to "
                 "Gourdon-Sebah (2001)"});
    t.push_back(literal_entry("B", kChenB, 4, "Chen (1978): admissible constant in the "
                                              "Bombieri-Davenport (1966) pair bound",
                              prec));
    t.push_back(literal_entry("A1", kA1Bound, 10,
                              "Khalfalah-Pintz (2006): numerical bound for A(1)", prec));
    t.push_back(literal_entry("C", kPublishedC, 10,
                              "2B(1+A(1)) with B=3.9171; published digits rounded up", prec));
    t.push_back(literal_entry("C_conjectural", kPublishedCConjectural, 10,
                              "2B(1+A(1)) with B=1 (twin-prime conjecture form)", prec));
    t.push_back(literal_entry("C1", kParsellC1, 10, "Parsell (2003): refined constant", prec));
    t.push_back(literal_entry("parsell_denominator", kParsellDenominator, 3,
                              "Parsell (2003): level constant in -log(0.954)", prec));
    t.push_back(literal_entry("nu_algebraic", kNuAlgebraic, 11,
                              "Pintz-Ruzsa method level constant, algebraic-ratio case", prec));
    t.push_back(literal_entry("nu_transcendental", kNuTranscendental, 11,
                              "Pintz-Ruzsa method level constant, transcendental-ratio case", prec));
    t.push_back(literal_entry("euler_gamma", kEulerGamma50, 50, "Euler-Mascheroni constant", prec));
    t.push_back(literal_entry("rosser_schoenfeld_coeff", kRosserSchoenfeldCoeff, 5,
                              "Rosser-Schoenfeld (1962), Theorem 15", prec));
    return t;
}

} // namespace linform
