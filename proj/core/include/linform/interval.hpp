#ifndef LINFORM_INTERVAL_HPP
#define LINFORM_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace linform {

/// Working precision for certified arithmetic, expressed in significant
/// decimal digits. Internally mapped to binary precision with guard bits.
class Precision {
  public:
    explicit Precision(int decimal_digits);

    int digits() const { return digits_; }
    mpfr_prec_t bits() const { return bits_; }

    Precision doubled() const { return Precision(2 * digits_); }

    static Precision standard() { return Precision(30); }

  private:
    int digits_;
    mpfr_prec_t bits_;
};

/// Directed-rounded real interval [lo, hi]. Every operation rounds the lower
/// endpoint toward -inf and the upper endpoint toward +inf, so the result is
/// guaranteed to contain the exact value whenever the operands do.
///
/// Binary operations promote to the larger of the two operand precisions.
class RealInterval {
  public:
    RealInterval();
    explicit RealInterval(Precision prec);
    RealInterval(const RealInterval& other);
    RealInterval(RealInterval&& other) noexcept;
    RealInterval& operator=(const RealInterval& other);
    RealInterval& operator=(RealInterval&& other) noexcept;
    ~RealInterval();

    static RealInterval from_int(long v, Precision prec);
    static RealInterval from_uint(unsigned long v, Precision prec);
    /// Exact rational endpoint pair, outward rounded.
    static RealInterval from_rational(const mpq_class& q, Precision prec);
    /// Parses a decimal literal, outward rounded (1-ulp wide unless exact).
    static RealInterval from_decimal(std::string_view s, Precision prec);
    /// Point double value (doubles are binary-exact carriers).
    static RealInterval from_double(double v, Precision prec);
    static RealInterval from_endpoints(double lo, double hi, Precision prec);
    static RealInterval hull(const RealInterval& a, const RealInterval& b);
    static RealInterval pi(Precision prec);

    Precision precision() const { return prec_; }

    double lo_double() const; // rounded down
    double hi_double() const; // rounded up
    double mid_double() const;
    double width_double() const; // hi - lo, rounded up

    /// Decimal rendering of the endpoints: lo rounded down, hi rounded up.
    std::string lo_string(int decimal_places) const;
    std::string hi_string(int decimal_places) const;
    std::string to_string(int decimal_places) const; // "[lo, hi]"

    bool contains(const RealInterval& inner) const;
    bool contains(const mpq_class& q) const;
    bool contains(double v) const;
    bool intersects(const RealInterval& other) const;
    /// Certified strict comparison: hi < other.lo.
    bool strictly_less_than(const RealInterval& other) const;
    bool is_positive() const;    // lo > 0
    bool is_nonnegative() const; // lo >= 0
    bool contains_zero() const;

    RealInterval operator-() const;
    RealInterval abs() const;
    RealInterval sqrt() const;   // requires lo >= 0
    RealInterval log() const;    // requires lo > 0
    RealInterval exp() const;
    RealInterval recip() const;  // requires not containing 0
    RealInterval pow_int(long n) const;
    RealInterval mul_pow2(int e) const; // exact scaling by 2^e
    RealInterval widened_ulps(unsigned long ulps) const;
    RealInterval at_precision(Precision prec) const;

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

    RealInterval& operator+=(const RealInterval& b);
    RealInterval& operator-=(const RealInterval& b);
    RealInterval& operator*=(const RealInterval& b);

    // Low-level endpoint access for the few hot loops that accumulate
    // directly (lo must stay rounded down, hi rounded up).
    mpfr_ptr lo_raw() { return lo_; }
    mpfr_ptr hi_raw() { return hi_; }
    mpfr_srcptr lo_raw() const { return lo_; }
    mpfr_srcptr hi_raw() const { return hi_; }

  private:
    mpfr_t lo_;
    mpfr_t hi_;
    Precision prec_;
};

/// Certified interval for the even zeta value zeta(2k), k >= 1.
RealInterval zeta_even(unsigned long two_k, Precision prec);

/// Decimal string of an exact rational, rounded toward +inf at the given
/// number of decimal places (the convention for printing upper bounds).
std::string rational_ceil_decimal(const mpq_class& q, int decimal_places);
/// Same, rounded to nearest (ties away from zero).
std::string rational_round_decimal(const mpq_class& q, int decimal_places);

} // namespace linform

#endif
