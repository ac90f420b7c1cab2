#ifndef LINFORM_CONSTANTS_HPP
#define LINFORM_CONSTANTS_HPP

#include "linform/interval.hpp"

#include <string>
#include <vector>

namespace linform {

// Published decimal literals, treated as exact at their printed precision.

/// Euler-Mascheroni constant, 50 decimals.
inline constexpr const char* kEulerGamma50 =
    "0.57721566490153286060651209008240243104215933593992";

/// Chen's admissible constant B in the Bombieri-Davenport pair bound.
inline constexpr const char* kChenB = "3.9171";

/// Khalfalah-Pintz computational bound for A(1).
inline constexpr const char* kA1Bound = "0.2792521041";

/// Level constants for |G(alpha)| <= nu*L off an exceptional set
/// (outputs of the Pintz-Ruzsa algorithm).
inline constexpr const char* kNuAlgebraic = "0.83372131685";
inline constexpr const char* kNuTranscendental = "0.91237810306";

/// Parsell's constants.
inline constexpr const char* kParsellC1 = "11.4525218267";
inline constexpr const char* kParsellDenominator = "0.954";

/// Rosser-Schoenfeld Theorem 15 coefficient.
inline constexpr const char* kRosserSchoenfeldCoeff = "2.50637";

/// Published 10-decimal renderings of 2B(1+A(1)) (upper bounds, printed
/// rounded up).
inline constexpr const char* kPublishedC = "10.0219168340";
inline constexpr const char* kPublishedCConjectural = "2.5585042082";

struct ConstantEntry {
    std::string name;
    std::string lo;
    std::string hi;
    int precision_digits;
    std::string provenance;
};

/// The full certified-constants table (requires a computed c0 interval).
std::vector<ConstantEntry> constants_table(const RealInterval& c0, Precision prec);

/// Euler gamma as a certified interval (50-digit literal, 1-ulp padding).
RealInterval euler_gamma(Precision prec);

} // namespace linform

#endif
