#include "linform/interval.hpp"

#include "linform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace linform {

namespace {

constexpr int kGuardBits = 16;

mpfr_prec_t bits_for_digits(int digits) {
    // log2(10) ~ 3.3219...; round up and add guard bits.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + kGuardBits;
}

} // namespace

Precision::Precision(int decimal_digits) : digits_(decimal_digits), bits_(bits_for_digits(decimal_digits)) {
    if (decimal_digits < 1) {
        throw domain_error("Precision: decimal digits must be >= 1");
    }
}

RealInterval::RealInterval() : RealInterval(Precision::standard()) {}

RealInterval::RealInterval(Precision prec) : prec_(prec) {
    mpfr_init2(lo_, prec.bits());
    mpfr_init2(hi_, prec.bits());
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, other.prec_.bits());
    mpfr_init2(hi_, other.prec_.bits());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, other.prec_.bits());
    mpfr_init2(hi_, other.prec_.bits());
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_.bits());
        mpfr_set_prec(hi_, other.prec_.bits());
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
        prec_ = other.prec_;
    }
    return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        prec_ = other.prec_;
    }
    return *this;
}

RealInterval::~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RealInterval RealInterval::from_int(long v, Precision prec) {
    RealInterval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_uint(unsigned long v, Precision prec) {
    RealInterval r(prec);
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_rational(const mpq_class& q, Precision prec) {
    RealInterval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_decimal(std::string_view s, Precision prec) {
    RealInterval r(prec);
    std::string str(s);
    if (mpfr_set_str(r.lo_, str.c_str(), 10, MPFR_RNDD) != 0) {
        throw validation_error("RealInterval: cannot parse decimal literal '" + str + "'");
    }
    mpfr_set_str(r.hi_, str.c_str(), 10, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_double(double v, Precision prec) {
    RealInterval r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_endpoints(double lo, double hi, Precision prec) {
    if (lo > hi) {
        throw domain_error("RealInterval: lo > hi");
    }
    RealInterval r(prec);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pi(Precision prec) {
    RealInterval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::hull(const RealInterval& a, const RealInterval& b) {
    Precision prec = a.prec_.bits() >= b.prec_.bits() ? a.prec_ : b.prec_;
    RealInterval r(prec);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

double RealInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RealInterval::mid_double() const {
    mpfr_t m;
    mpfr_init2(m, prec_.bits());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double v = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return v;
}

double RealInterval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_.bits());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double v = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return v;
}

namespace {

std::string format_endpoint(mpfr_srcptr x, int decimal_places, mpfr_rnd_t rnd) {
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*R*f", decimal_places, rnd, x);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

} // namespace

std::string RealInterval::lo_string(int decimal_places) const {
    return format_endpoint(lo_, decimal_places, MPFR_RNDD);
}

std::string RealInterval::hi_string(int decimal_places) const {
    return format_endpoint(hi_, decimal_places, MPFR_RNDU);
}

std::string RealInterval::to_string(int decimal_places) const {
    return "[" + lo_string(decimal_places) + ", " + hi_string(decimal_places) + "]";
}

bool RealInterval::contains(const RealInterval& inner) const {
    return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(inner.hi_, hi_) <= 0;
}

bool RealInterval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RealInterval::contains(double v) const {
    return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool RealInterval::intersects(const RealInterval& other) const {
    return mpfr_cmp(lo_, other.hi_) <= 0 && mpfr_cmp(other.lo_, hi_) <= 0;
}

bool RealInterval::strictly_less_than(const RealInterval& other) const {
    return mpfr_cmp(hi_, other.lo_) < 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RealInterval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

bool RealInterval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

RealInterval RealInterval::operator-() const {
    RealInterval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::abs() const {
    RealInterval r(prec_);
    if (mpfr_sgn(lo_) >= 0) {
        return *this;
    }
    if (mpfr_sgn(hi_) <= 0) {
        return -*this;
    }
    // straddles zero
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, prec_.bits());
    mpfr_neg(t, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t, hi_, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

RealInterval RealInterval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) {
        throw domain_error("RealInterval::sqrt: interval extends below zero");
    }
    RealInterval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::log() const {
    if (mpfr_sgn(lo_) <= 0) {
        throw domain_error("RealInterval::log: interval not strictly positive");
    }
    RealInterval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::exp() const {
    RealInterval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::recip() const {
    if (contains_zero()) {
        throw domain_error("RealInterval::recip: interval contains zero");
    }
    RealInterval r(prec_);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pow_int(long n) const {
    if (n == 0) {
        return from_int(1, prec_);
    }
    if (n < 0) {
        return pow_int(-n).recip();
    }
    RealInterval r(prec_);
    unsigned long un = static_cast<unsigned long>(n);
    bool even = (n % 2 == 0);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_pow_ui(r.lo_, lo_, un, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, un, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        if (even) {
            mpfr_pow_ui(r.lo_, hi_, un, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, lo_, un, MPFR_RNDU);
        } else {
            mpfr_pow_ui(r.lo_, lo_, un, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, hi_, un, MPFR_RNDU);
        }
    } else {
        if (even) {
            mpfr_set_zero(r.lo_, 1);
            mpfr_t a, b;
            mpfr_init2(a, prec_.bits());
            mpfr_init2(b, prec_.bits());
            mpfr_pow_ui(a, lo_, un, MPFR_RNDU);
            mpfr_pow_ui(b, hi_, un, MPFR_RNDU);
            mpfr_max(r.hi_, a, b, MPFR_RNDU);
            mpfr_clear(a);
            mpfr_clear(b);
        } else {
            mpfr_pow_ui(r.lo_, lo_, un, MPFR_RNDD);
            mpfr_pow_ui(r.hi_, hi_, un, MPFR_RNDU);
        }
    }
    return r;
}

RealInterval RealInterval::mul_pow2(int e) const {
    RealInterval r(prec_);
    if (e >= 0) {
        mpfr_mul_2ui(r.lo_, lo_, static_cast<unsigned long>(e), MPFR_RNDD);
        mpfr_mul_2ui(r.hi_, hi_, static_cast<unsigned long>(e), MPFR_RNDU);
    } else {
        mpfr_div_2ui(r.lo_, lo_, static_cast<unsigned long>(-e), MPFR_RNDD);
        mpfr_div_2ui(r.hi_, hi_, static_cast<unsigned long>(-e), MPFR_RNDU);
    }
    return r;
}

RealInterval RealInterval::widened_ulps(unsigned long ulps) const {
    RealInterval r(*this);
    for (unsigned long i = 0; i < ulps; ++i) {
        mpfr_nextbelow(r.lo_);
        mpfr_nextabove(r.hi_);
    }
    return r;
}

RealInterval RealInterval::at_precision(Precision prec) const {
    RealInterval r(prec);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

namespace {

Precision promote(const RealInterval& a, const RealInterval& b) {
    return a.precision().bits() >= b.precision().bits() ? a.precision() : b.precision();
}

} // namespace

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    RealInterval r(promote(a, b));
    mpfr_add(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
    mpfr_add(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
    return r;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    RealInterval r(promote(a, b));
    mpfr_sub(r.lo_raw(), a.lo_raw(), b.hi_raw(), MPFR_RNDD);
    mpfr_sub(r.hi_raw(), a.hi_raw(), b.lo_raw(), MPFR_RNDU);
    return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    Precision prec = promote(a, b);
    RealInterval r(prec);
    // Fast path: both operands nonnegative (the common case here).
    if (mpfr_sgn(a.lo_raw()) >= 0 && mpfr_sgn(b.lo_raw()) >= 0) {
        mpfr_mul(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
        mpfr_mul(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
        return r;
    }
    mpfr_t p, best_lo, best_hi;
    mpfr_init2(p, prec.bits());
    mpfr_init2(best_lo, prec.bits());
    mpfr_init2(best_hi, prec.bits());
    bool first = true;
    mpfr_srcptr as[2] = {a.lo_raw(), a.hi_raw()};
    mpfr_srcptr bs[2] = {b.lo_raw(), b.hi_raw()};
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(p, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(p, best_lo) < 0) {
                mpfr_set(best_lo, p, MPFR_RNDD);
            }
            mpfr_mul(p, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(p, best_hi) > 0) {
                mpfr_set(best_hi, p, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_set(r.lo_raw(), best_lo, MPFR_RNDD);
    mpfr_set(r.hi_raw(), best_hi, MPFR_RNDU);
    mpfr_clear(p);
    mpfr_clear(best_lo);
    mpfr_clear(best_hi);
    return r;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) {
        throw domain_error("RealInterval: division by interval containing zero");
    }
    return a * b.recip();
}

RealInterval& RealInterval::operator+=(const RealInterval& b) {
    *this = *this + b;
    return *this;
}

RealInterval& RealInterval::operator-=(const RealInterval& b) {
    *this = *this - b;
    return *this;
}

RealInterval& RealInterval::operator*=(const RealInterval& b) {
    *this = *this * b;
    return *this;
}

RealInterval zeta_even(unsigned long two_k, Precision prec) {
    if (two_k < 2 || two_k % 2 != 0) {
        throw domain_error("zeta_even: argument must be an even integer >= 2");
    }
    RealInterval r(prec);
    mpfr_zeta_ui(r.lo_raw(), two_k, MPFR_RNDD);
    mpfr_zeta_ui(r.hi_raw(), two_k, MPFR_RNDU);
    return r;
}

namespace {

// Writes q scaled by 10^dp as an integer, rounding per `mode`:
// mode = +1 ceil, 0 nearest (ties away from zero).
std::string scaled_decimal(const mpq_class& q, int decimal_places, int mode) {
    mpz_class pow10 = 1;
    for (int i = 0; i < decimal_places; ++i) {
        pow10 *= 10;
    }
    mpq_class scaled = q * mpq_class(pow10);
    scaled.canonicalize();
    mpz_class num = scaled.get_num();
    mpz_class den = scaled.get_den();
    mpz_class quo, rem;
    mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) {
        if (mode > 0) {
            quo += 1;
        } else {
            // nearest: compare 2*rem vs den (rem has floor semantics, 0 <= rem < den)
            if (2 * rem >= den) {
                quo += 1;
            }
        }
    }
    bool neg = quo < 0;
    mpz_class a = neg ? mpz_class(-quo) : quo;
    std::string digits = a.get_str();
    if (static_cast<int>(digits.size()) <= decimal_places) {
        digits.insert(0, decimal_places + 1 - digits.size(), '0');
    }
    std::string out = digits.substr(0, digits.size() - decimal_places) + "." +
                      digits.substr(digits.size() - decimal_places);
    if (neg) {
        out.insert(0, 1, '-');
    }
    return out;
}

} // namespace

std::string rational_ceil_decimal(const mpq_class& q, int decimal_places) {
    return scaled_decimal(q, decimal_places, +1);
}

std::string rational_round_decimal(const mpq_class& q, int decimal_places) {
    return scaled_decimal(q, decimal_places, 0);
}

} // namespace linform
