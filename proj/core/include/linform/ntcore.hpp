#ifndef LINFORM_NTCORE_HPP
#define LINFORM_NTCORE_HPP

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace linform {

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// All primes in [2, bound], ascending. Memory use is about bound/16 bytes
/// for the sieve plus the output vector; exceeding `memory_budget_bytes`
/// raises resource_error naming the limit.
std::vector<std::uint64_t> sieve_primes(std::uint64_t bound,
                                        std::uint64_t memory_budget_bytes = 1ull << 30);

/// Immutable shared prime table; safe for concurrent readers.
class PrimeTable {
  public:
    explicit PrimeTable(std::uint64_t bound, std::uint64_t memory_budget_bytes = 1ull << 30);

    std::uint64_t bound() const { return bound_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    bool is_prime(std::uint64_t n) const; // n must be <= bound()

    /// Primes p with lo <= p <= hi (inclusive on both ends).
    std::span<const std::uint64_t> range(double lo, double hi) const;

  private:
    std::uint64_t bound_;
    std::vector<std::uint64_t> primes_;
};

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    bool operator==(const PrimePower&) const = default;
};

/// Exact factorization, possibly partial: n = prod(prime^exponent) * cofactor,
/// where cofactor == 1 for a complete factorization and otherwise has no
/// prime factor below cofactor_lower_prime_bound.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors; // strictly increasing primes, each certified
    std::uint64_t cofactor = 1;
    std::uint64_t cofactor_lower_prime_bound = 2;

    bool complete() const { return cofactor == 1; }
    /// Distinct odd prime divisors among the certified factors.
    std::vector<std::uint64_t> odd_primes() const;
};

struct FactorBudget {
    std::uint64_t trial_division_bound = 1'000'000;
    std::uint64_t pollard_rounds = 64; // Brent restarts before giving up
};

/// Trial division then Pollard-Brent rho with deterministic primality
/// certificates. Never fails: on budget exhaustion the remaining cofactor is
/// returned with a certified lower bound on its least prime factor.
Factorization factorize(std::uint64_t n, const FactorBudget& budget = {});

/// Euler totient from a complete factorization (precondition_error otherwise).
std::uint64_t euler_phi(const Factorization& f);

// ---------------------------------------------------------------------------
// Scale parameters
// ---------------------------------------------------------------------------

/// The (X, epsilon, M, L) tuple tying the prime range [eps*X, X] to the
/// power-of-two exponent range [1, L], L = floor(log2(eps*X / (2M))).
struct ScaleParams {
    double X;
    double epsilon;
    double mu_norm; // M = sum |mu_i|
    int L;

    /// Validates eps in (0,1), eps*X >= 2 and L >= 1.
    static ScaleParams create(double X, double epsilon, double mu_norm);
};

/// floor(log2(eps*X / (2*M))) without the L >= 1 requirement.
int scale_exponent_floor(double X, double epsilon, double mu_norm);

// ---------------------------------------------------------------------------
// Prime-counting diagnostics
// ---------------------------------------------------------------------------

/// Chebyshev theta restricted to lo <= p <= x (natural log).
double chebyshev_theta(const PrimeTable& table, double x, double lo = 2.0);

/// Sum over prime pairs p' - p = 2n with eps*X <= p <= X and p' <= X, of
/// log p * log p' (weighted) or 1 (unweighted). Requires 1 <= n <= (1-eps)X/2.
double twin_pair_sum(const PrimeTable& table, const ScaleParams& params, std::uint64_t n,
                     bool weighted);

/// Exact value of int_{eps X}^{X} (theta(x+h) - theta(x) - h)^2 dx.
/// The integrand is a step function of x (breakpoints where x or x+h crosses
/// a prime), so the integral is a finite sum of piece-length * piece-value.
double selberg_integral(const PrimeTable& table, double X, double h, double eps);

// ---------------------------------------------------------------------------
// Factorization cache (single writer, many readers)
// ---------------------------------------------------------------------------

/// Memoizing factorization cache with the on-disk format
///   n p1^e1 p2^e2 ... [cofactor=c,bound=b]
/// one entry per line, ASCII, newline-terminated.
class FactorCache {
  public:
    FactorCache() = default;

    const Factorization& get(std::uint64_t n, const FactorBudget& budget = {});
    void put(const Factorization& f);

    /// Factorizations of 2^d - 1 for all 1 <= d <= max_d (<= 64).
    void preload_mersenne(int max_d, const FactorBudget& budget = {});

    std::size_t size() const;

    /// Read-only merge; malformed or inconsistent lines are rejected.
    void load_file(const std::string& path);
    /// Appends the entries added since construction or the last append (the
    /// single-writer side of the cache file contract).
    void append_file(const std::string& path);

    static std::string format_entry(const Factorization& f);
    static Factorization parse_entry(const std::string& line);

  private:
    mutable std::mutex mu_;
    std::unordered_map<std::uint64_t, Factorization> entries_;
    std::vector<std::uint64_t> pending_; // keys not yet persisted
};

} // namespace linform

#endif
