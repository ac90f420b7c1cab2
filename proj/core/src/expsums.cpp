#include "linform/expsums.hpp"

#include "linform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace linform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPiSquared = std::numbers::pi * std::numbers::pi;

std::complex<double> unit_phase(double frac) {
    return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

double sinc(double x) {
    if (x == 0.0) {
        return 1.0;
    }
    return std::sin(x) / x;
}

} // namespace

std::complex<double> pow2_sum(double alpha, int L) {
    if (L < 1) {
        throw domain_error("pow2_sum: L must be >= 1");
    }
    double x = alpha - std::floor(alpha);
    std::complex<double> sum{0.0, 0.0};
    for (int m = 1; m <= L; ++m) {
        x += x; // exact
        if (x >= 1.0) {
            x -= 1.0; // exact (Sterbenz)
        }
        sum += unit_phase(x);
    }
    return sum;
}

std::complex<double> prime_sum(const PrimeTable& table, double alpha, const ScaleParams& params) {
    if (params.X > static_cast<double>(table.bound())) {
        throw domain_error("prime_sum: prime table does not cover [eps X, X]");
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t p : table.range(params.epsilon * params.X, params.X)) {
        const double prod = static_cast<double>(p) * alpha;
        sum += std::log(static_cast<double>(p)) * unit_phase(prod - std::floor(prod));
    }
    return sum;
}

std::complex<double> box_sum(double alpha, const ScaleParams& params) {
    const double n0 = std::ceil(params.epsilon * params.X);
    const double n1 = std::floor(params.X);
    const double count = n1 - n0 + 1;
    if (count < 1) {
        return {0.0, 0.0};
    }
    const double a = alpha - std::round(alpha); // periodicity: U(alpha+1) = U(alpha)
    if (a == 0.0) {
        return {count, 0.0};
    }
    // Dirichlet kernel form: e(a (n0+n1)/2) sin(pi a count) / sin(pi a)
    const double ratio = std::sin(std::numbers::pi * a * count) / std::sin(std::numbers::pi * a);
    const double mid = a * (n0 + n1) / 2.0;
    return ratio * unit_phase(mid - std::floor(mid));
}

std::complex<double> box_integral(double alpha, const ScaleParams& params) {
    const double len = (1.0 - params.epsilon) * params.X;
    if (alpha == 0.0) {
        return {len, 0.0};
    }
    // T(alpha) = len * e((X + eps X) alpha / 2) * sinc(pi len alpha)
    const double mid = (params.X + params.epsilon * params.X) / 2.0 * alpha;
    return len * sinc(std::numbers::pi * len * alpha) * unit_phase(mid - std::floor(mid));
}

double fejer_kernel(double alpha, double eta) {
    if (eta <= 0) {
        throw domain_error("fejer_kernel: eta must be positive");
    }
    const double s = sinc(std::numbers::pi * eta * alpha);
    return eta * eta * s * s;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson (real and complex)
// ---------------------------------------------------------------------------

namespace {

template <typename T, typename F>
struct SimpsonState {
    const F& f;
    double tol;
    int max_depth;
    long* nodes_left; // shared work budget across panels
    double error_estimate = 0.0;

    T recurse(double a, double b, T fa, T fm, T fb, T whole, double tol_here, int depth) {
        const double m = (a + b) / 2.0;
        const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
        const T flm = f(lm), frm = f(rm);
        const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const T delta = left + right - whole;
        // Below the rounding noise of the panel values no refinement can
        // certify anything further; likewise stop when the work budget is
        // gone, booking the residual into the error estimate either way.
        const double noise_floor =
            1e-16 * (b - a) * (std::abs(fa) + std::abs(fm) + std::abs(fb) + 1e-300);
        --*nodes_left;
        if (depth >= max_depth || *nodes_left <= 0 ||
            std::abs(delta) <= 15.0 * std::max(tol_here, noise_floor)) {
            error_estimate += std::abs(delta) / 15.0 + noise_floor;
            return left + right + delta / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, tol_here / 2.0, depth + 1) +
               recurse(m, b, fm, frm, fb, right, tol_here / 2.0, depth + 1);
    }

    T integrate(double a, double b) {
        const T fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
        const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, tol, 0);
    }
};

/// Integrates f over [a, b]: uniform panelization (to seed oscillatory
/// integrands) followed by adaptive Simpson in each panel.
template <typename T, typename F>
T panel_adaptive(const F& f, double a, double b, double tol, long min_panels,
                 double& error_estimate, int max_depth = 48, long node_budget = 40'000'000) {
    if (b <= a) {
        error_estimate = 0.0;
        return T{};
    }
    const long panels = std::max<long>(1, min_panels);
    const double h = (b - a) / static_cast<double>(panels);
    T total{};
    error_estimate = 0.0;
    long nodes_left = node_budget;
    for (long i = 0; i < panels; ++i) {
        const double x0 = a + h * static_cast<double>(i);
        const double x1 = (i == panels - 1) ? b : x0 + h;
        SimpsonState<T, F> state{f, tol / static_cast<double>(panels), max_depth, &nodes_left, 0.0};
        total += state.integrate(x0, x1);
        error_estimate += state.error_estimate;
    }
    return total;
}

} // namespace

KernelTransformCheck fejer_transform_check(double t, double eta, double truncation, double tol) {
    if (eta <= 0 || truncation <= 0 || tol <= 0) {
        throw domain_error("fejer_transform_check: eta, truncation and tol must be positive");
    }
    // K is even, so int_{-T}^{T} K e(t a) da = 2 int_0^T K(a) cos(2 pi t a) da.
    auto f = [&](double a) { return fejer_kernel(a, eta) * std::cos(kTwoPi * t * a); };
    const double cycles = truncation * (std::abs(t) + eta + 1.0);
    const long panels = std::min<long>(400'000, std::max<long>(64, static_cast<long>(4.0 * cycles)));
    double err = 0.0;
    const double half = panel_adaptive<double>(f, 0.0, truncation, tol / 2.0, panels, err);
    if (2.0 * err > tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "fejer_transform_check: requested tolerance %.3g not met; achieved error "
                      "estimate %.3g",
                      tol, 2.0 * err);
        throw tolerance_error(msg);
    }
    KernelTransformCheck out;
    out.value = 2.0 * half;
    out.quad_error_estimate = 2.0 * err;
    out.tail_bound = 2.0 / (kPiSquared * truncation);
    out.target = std::max(0.0, eta - std::abs(t));
    return out;
}

ArcDissection dissect(const ScaleParams& params) {
    ArcDissection d;
    d.X = params.X;
    d.P = std::cbrt(params.X);
    d.L = params.L; // ScaleParams::create already enforces L >= 1
    d.major_halfwidth = d.P / params.X;
    d.minor_upper = static_cast<double>(params.L) * static_cast<double>(params.L);
    if (d.major_halfwidth >= d.minor_upper) {
        throw domain_error("dissect: degenerate dissection (P/X >= L^2)");
    }
    d.trivial_tail_bound = 2.0 / (kPiSquared * d.minor_upper);
    return d;
}

// ---------------------------------------------------------------------------
// Level-set measure
// ---------------------------------------------------------------------------

LevelSetEstimate level_set_measure(int L, double nu, double tol, long cell_budget) {
    if (L < 1 || L > 24) {
        throw domain_error("level_set_measure: L must lie in [1, 24]");
    }
    if (!(nu > 0 && nu <= 1)) {
        throw domain_error("level_set_measure: nu must lie in (0, 1]");
    }
    if (!(tol > 0)) {
        throw domain_error("level_set_measure: tol must be positive");
    }
    const double lipschitz = kTwoPi * (std::ldexp(1.0, L + 1) - 2.0);
    const double threshold = nu * static_cast<double>(L);
    // Allowance for floating-point error in |G(mid)| (well above the true
    // rounding error of ~L ulps).
    const double slack = 1e-9;

    LevelSetEstimate est{L, nu, 0.0, 0.0, 0, lipschitz, false};
    double unresolved = 0.0;

    struct Cell {
        double a;
        double w;
    };
    std::vector<Cell> stack;
    stack.push_back({0.0, 1.0});
    long evals = 0;
    while (!stack.empty()) {
        if (evals >= cell_budget) {
            est.budget_exhausted = true;
            for (const Cell& c : stack) {
                unresolved += c.w;
            }
            break;
        }
        const Cell c = stack.back();
        stack.pop_back();
        ++evals;
        const double mid = c.a + c.w / 2.0;
        const double g = std::abs(pow2_sum(mid, L));
        const double margin = lipschitz * c.w / 2.0 + slack;
        if (g - margin > threshold) {
            est.measure_lo += c.w;
            ++est.cells_resolved;
        } else if (g + margin < threshold) {
            ++est.cells_resolved;
        } else if (c.w < tol) {
            unresolved += c.w;
        } else {
            stack.push_back({mid, c.w / 2.0});
            stack.push_back({c.a, c.w / 2.0});
        }
    }
    est.measure_hi = est.measure_lo + unresolved;
    return est;
}

DecayReport decay_report(double nu, int L_min, int L_max, double tol, long cell_budget) {
    if (L_min < 1 || L_max < L_min) {
        throw domain_error("decay_report: need 1 <= L_min <= L_max");
    }
    DecayReport rep;
    for (int L = L_min; L <= L_max; ++L) {
        LevelSetEstimate est = level_set_measure(L, nu, tol, cell_budget);
        rep.rows.push_back({L, est.measure_lo, est.measure_hi});
    }
    // slope of log(measure_hi) against L log 2
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (const DecayRow& r : rep.rows) {
        if (r.measure_hi > 0) {
            const double x = r.L * std::numbers::ln2;
            const double y = std::log(r.measure_hi);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
    }
    rep.degenerate = n < 2;
    rep.fitted_exponent =
        rep.degenerate ? 0.0 : (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);
    return rep;
}

// ---------------------------------------------------------------------------
// Major arc main term
// ---------------------------------------------------------------------------

namespace {

/// Second antiderivative of the triangle max(0, eta - |.|), zero at -inf.
double triangle_antideriv2(double t, double eta) {
    if (t <= -eta) {
        return 0.0;
    }
    if (t <= 0.0) {
        const double s = t + eta;
        return s * s * s / 6.0;
    }
    if (t <= eta) {
        return eta * eta * eta / 6.0 + eta * eta * t / 2.0 + eta * t * t / 2.0 - t * t * t / 6.0;
    }
    return eta * eta * t;
}

} // namespace

double major_arc_main_term(double u, double X, double eta, double lambda1, double lambda2,
                           double eps) {
    if (!(lambda1 > 0) || !(lambda2 < 0)) {
        throw domain_error("major_arc_main_term: requires lambda1 > 0 and lambda2 < 0");
    }
    if (!(X > 0) || !(eta > 0) || !(eps > 0) || !(eps < 1)) {
        throw domain_error("major_arc_main_term: requires X > 0, eta > 0, eps in (0,1)");
    }
    const double a = eps * X, b = X;
    const double theta1 = lambda1 * b + u;
    const double theta0 = lambda1 * a + u;
    const double v = triangle_antideriv2(lambda2 * a + theta1, eta) -
                     triangle_antideriv2(lambda2 * b + theta1, eta) -
                     triangle_antideriv2(lambda2 * a + theta0, eta) +
                     triangle_antideriv2(lambda2 * b + theta0, eta);
    return v / (lambda1 * std::abs(lambda2));
}

MajorArcBound major_arc_lower_bound(double u, double X, double eta, double lambda1, double lambda2,
                                    double eps) {
    MajorArcBound out;
    out.value = (1.0 - 3.0 * lambda1 * eps) / (2.0 * std::abs(lambda1 * lambda2)) * eta * eta * X;
    // Side conditions: |u| <= eps X, eta < 2 eps (l1 - 1) X, and the window
    // 2 eps l1 X <= |l2| u2 <= (1 - eps l1) X must meet [eps X, X] in a set of
    // length >= eta / l1 (so the inner interval exists).
    const double l2abs = std::abs(lambda2);
    const double w_lo = std::max(2.0 * eps * lambda1 * X / l2abs, eps * X);
    const double w_hi = std::min((1.0 - eps * lambda1) * X / l2abs, X);
    out.side_conditions_hold = std::abs(u) <= eps * X && eta < 2.0 * eps * (lambda1 - 1.0) * X &&
                               w_hi - w_lo >= eta / lambda1 && out.value > 0;
    return out;
}

// ---------------------------------------------------------------------------
// Arc integrals
// ---------------------------------------------------------------------------

ArcIntegral integrate_arcs(ArcRegion region, const PrimeTable& table,
                           const ArcIntegrandConfig& cfg, double X, double quad_tol,
                           double cutoff) {
    if (X > 1e4) {
        throw resource_error("integrate_arcs: X <= 1e4 enforced (integrand evaluation cost)");
    }
    if (cfg.mus.size() > 4) {
        throw resource_error("integrate_arcs: s <= 4 enforced");
    }
    if (!(quad_tol > 0)) {
        throw domain_error("integrate_arcs: quad_tol must be positive");
    }
    double mu_norm = 0.0;
    for (double m : cfg.mus) {
        mu_norm += std::abs(m);
    }
    // s = 0 needs no exponent range; use a harmless placeholder M.
    const ScaleParams params =
        ScaleParams::create(X, cfg.epsilon, cfg.mus.empty() ? 1.0 : mu_norm);
    const ArcDissection d = dissect(params);

    // Cache the prime range and logs once.
    auto primes = table.range(cfg.epsilon * X, X);
    std::vector<double> plogs(primes.size());
    std::vector<double> pvals(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        pvals[i] = static_cast<double>(primes[i]);
        plogs[i] = std::log(pvals[i]);
    }
    auto s_at = [&](double alpha) {
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t i = 0; i < pvals.size(); ++i) {
            const double prod = pvals[i] * alpha;
            sum += plogs[i] * unit_phase(prod - std::floor(prod));
        }
        return sum;
    };
    auto f = [&](double alpha) -> std::complex<double> {
        std::complex<double> v = s_at(cfg.lambda1 * alpha) * s_at(cfg.lambda2 * alpha);
        for (double mu : cfg.mus) {
            v *= pow2_sum(mu * alpha, params.L);
        }
        const double g = cfg.gamma * alpha;
        v *= unit_phase(g - std::floor(g));
        return v * fejer_kernel(alpha, cfg.eta);
    };

    // Oscillation rate governs the seed panel density.
    const double rate = (std::abs(cfg.lambda1) + std::abs(cfg.lambda2)) * X +
                        mu_norm * std::ldexp(1.0, params.L) + std::abs(cfg.gamma) + cfg.eta + 1.0;
    auto integrate_interval = [&](double a, double b, double tol, double& err) {
        const double cycles = (b - a) * rate;
        const long panels = std::min<long>(600'000, std::max<long>(16, static_cast<long>(2.0 * cycles)));
        return panel_adaptive<std::complex<double>>(f, a, b, tol, panels, err, 30);
    };

    ArcIntegral out;
    out.tail_bound = 0.0;
    out.cutoff = 0.0;
    double e1 = 0.0, e2 = 0.0;
    switch (region) {
    case ArcRegion::major:
        out.value = integrate_interval(-d.major_halfwidth, d.major_halfwidth, quad_tol, e1);
        out.quad_error_estimate = e1;
        break;
    case ArcRegion::minor: {
        std::complex<double> left = integrate_interval(-d.minor_upper, -d.major_halfwidth, quad_tol / 2, e1);
        std::complex<double> right = integrate_interval(d.major_halfwidth, d.minor_upper, quad_tol / 2, e2);
        out.value = left + right;
        out.quad_error_estimate = e1 + e2;
        break;
    }
    case ArcRegion::trivial_truncated: {
        const double A = cutoff > 0 ? cutoff : 10.0 * d.minor_upper;
        if (A <= d.minor_upper) {
            throw domain_error("integrate_arcs: trivial cutoff must exceed L^2");
        }
        std::complex<double> left = integrate_interval(-A, -d.minor_upper, quad_tol / 2, e1);
        std::complex<double> right = integrate_interval(d.minor_upper, A, quad_tol / 2, e2);
        out.value = left + right;
        out.quad_error_estimate = e1 + e2;
        const double theta = chebyshev_theta(table, X, cfg.epsilon * X);
        out.tail_bound = 2.0 * theta * theta *
                         std::pow(static_cast<double>(params.L), static_cast<double>(cfg.mus.size())) /
                         (kPiSquared * A);
        out.cutoff = A;
        break;
    }
    }
    if (out.quad_error_estimate > quad_tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "integrate_arcs: requested tolerance %.3g not met; achieved error estimate "
                      "%.3g",
                      quad_tol, out.quad_error_estimate);
        throw tolerance_error(msg);
    }
    return out;
}

} // namespace linform
