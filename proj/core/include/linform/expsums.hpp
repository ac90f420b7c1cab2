#ifndef LINFORM_EXPSUMS_HPP
#define LINFORM_EXPSUMS_HPP

#include "linform/ntcore.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace linform {

// ---------------------------------------------------------------------------
// Exponential sums and kernels
// ---------------------------------------------------------------------------

/// G(alpha) = sum_{1 <= m <= L} e(2^m alpha). The fractional parts of
/// 2^m alpha are computed by repeated doubling, which is exact in binary
/// floating point.
std::complex<double> pow2_sum(double alpha, int L);

/// S(alpha) = sum_{eps X <= p <= X} log(p) e(p alpha).
std::complex<double> prime_sum(const PrimeTable& table, double alpha, const ScaleParams& params);

/// U(alpha) = sum_{eps X <= n <= X} e(n alpha), evaluated in closed form.
std::complex<double> box_sum(double alpha, const ScaleParams& params);

/// T(alpha) = int_{eps X}^{X} e(t alpha) dt; T(0) = (1 - eps) X.
std::complex<double> box_integral(double alpha, const ScaleParams& params);

/// Fejer kernel K(alpha, eta) = (sin(pi eta alpha) / (pi alpha))^2, with
/// K(0, eta) = eta^2 by continuity.
double fejer_kernel(double alpha, double eta);

/// Quadrature check of the kernel transform: integrates K(., eta) e(t .)
/// over [-truncation, truncation] adaptively and reports the certified tail
/// bound 2/(pi^2 truncation) for the discarded range.
struct KernelTransformCheck {
    double value;
    double quad_error_estimate;
    double tail_bound;
    double target; // max(0, eta - |t|)
};
KernelTransformCheck fejer_transform_check(double t, double eta, double truncation, double tol);

// ---------------------------------------------------------------------------
// Arc dissection
// ---------------------------------------------------------------------------

/// Dissection of the line at P = X^(1/3): major |alpha| <= P/X, minor
/// P/X < |alpha| <= L^2, trivial beyond. The trivial tail bound is
/// 2 int_{L^2}^inf dalpha/(pi^2 alpha^2) = 2/(pi^2 L^2).
struct ArcDissection {
    double X;
    double P;
    int L;
    double major_halfwidth; // major arc = [-major_halfwidth, major_halfwidth]
    double minor_upper;     // minor arcs = +/- (major_halfwidth, minor_upper]
    double trivial_tail_bound;
};
ArcDissection dissect(const ScaleParams& params);

// ---------------------------------------------------------------------------
// Level sets of |G|
// ---------------------------------------------------------------------------

/// Certified bounds on the measure of {alpha in (0,1) : |G(alpha)| > nu L},
/// by adaptive bisection with the Lipschitz bound |G'| <= 2 pi (2^{L+1} - 2).
struct LevelSetEstimate {
    int L;
    double nu;
    double measure_lo;
    double measure_hi;
    long cells_resolved;
    double lipschitz_bound;
    bool budget_exhausted; // bounds remain valid but may be wide
};
LevelSetEstimate level_set_measure(int L, double nu, double tol, long cell_budget = 80'000'000);

struct DecayRow {
    int L;
    double measure_lo;
    double measure_hi;
};
struct DecayReport {
    std::vector<DecayRow> rows;
    double fitted_exponent; // least-squares slope of log(measure_hi) vs L log 2
    bool degenerate;        // too few nonzero measures to fit
};
DecayReport decay_report(double nu, int L_min, int L_max, double tol,
                         long cell_budget = 80'000'000);

// ---------------------------------------------------------------------------
// Major arc main term
// ---------------------------------------------------------------------------

/// J(u) = int int_{[eps X, X]^2} max(0, eta - |l1 u1 + l2 u2 + u|) du1 du2,
/// evaluated exactly through the repeated antiderivative of the triangle
/// function (piecewise cubic). Requires l1 > 0 and l2 < 0.
double major_arc_main_term(double u, double X, double eta, double lambda1, double lambda2,
                           double eps);

/// The lower-bound reference (1 - 3 l1 eps) / (2 |l1 l2|) eta^2 X and whether
/// the side conditions for it hold at these parameters.
struct MajorArcBound {
    double value;
    bool side_conditions_hold; // eta < 2 eps (l1 - 1) X and the u2-window fits
};
MajorArcBound major_arc_lower_bound(double u, double X, double eta, double lambda1, double lambda2,
                                    double eps);

// ---------------------------------------------------------------------------
// Arc integrals of the full integrand
// ---------------------------------------------------------------------------

enum class ArcRegion { major, minor, trivial_truncated };

struct ArcIntegrandConfig {
    double lambda1;
    double lambda2;
    std::vector<double> mus;
    double gamma = 0.0;
    double eta = 1.0;
    double epsilon = 0.1;
};

struct ArcIntegral {
    std::complex<double> value;
    double quad_error_estimate;
    double tail_bound; // certified bound for the truncated part (trivial region)
    double cutoff;     // truncation point actually used
};

/// Adaptive quadrature of S(l1 a) S(l2 a) prod_j G(mu_j a) e(gamma a) K(a, eta)
/// over the named region. The trivial region is truncated at `cutoff`
/// (default 10 L^2) with tail bound 2 theta^2 L^s / (pi^2 cutoff).
/// Preconditions keep the oscillation tractable: X <= 1e4, s <= 4.
ArcIntegral integrate_arcs(ArcRegion region, const PrimeTable& table,
                           const ArcIntegrandConfig& cfg, double X, double quad_tol,
                           double cutoff = 0.0);

} // namespace linform

#endif
