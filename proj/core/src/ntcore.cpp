#include "linform/ntcore.hpp"

#include "linform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace linform {

// ---------------------------------------------------------------------------
// Sieve
// ---------------------------------------------------------------------------

std::vector<std::uint64_t> sieve_primes(std::uint64_t bound, std::uint64_t memory_budget_bytes) {
    if (bound < 2) {
        throw domain_error("sieve_primes: bound must be >= 2");
    }
    // Odd-only bitmap: one bit per odd number <= bound.
    const std::uint64_t bitmap_bytes = bound / 16 + 1;
    if (bitmap_bytes > memory_budget_bytes) {
        throw resource_error("sieve_primes: bound " + std::to_string(bound) +
                             " needs " + std::to_string(bitmap_bytes) +
                             " bytes, exceeding the memory budget of " +
                             std::to_string(memory_budget_bytes) + " bytes");
    }
    const std::uint64_t half = (bound - 1) / 2; // index i <-> odd number 2i+1
    std::vector<std::uint8_t> composite((half + 8) / 8, 0);
    auto test = [&](std::uint64_t i) { return (composite[i >> 3] >> (i & 7)) & 1; };
    auto set = [&](std::uint64_t i) { composite[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7)); };

    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= bound; ++i) {
        if (test(i)) {
            continue;
        }
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) {
            set(j);
        }
    }
    std::vector<std::uint64_t> primes;
    primes.reserve(bound > 10 ? static_cast<std::size_t>(bound / (std::log(static_cast<double>(bound)) - 1.1)) : 8);
    primes.push_back(2);
    for (std::uint64_t i = 1; i <= half; ++i) {
        if (!test(i)) {
            primes.push_back(2 * i + 1);
        }
    }
    return primes;
}

PrimeTable::PrimeTable(std::uint64_t bound, std::uint64_t memory_budget_bytes)
    : bound_(bound), primes_(sieve_primes(bound, memory_budget_bytes)) {}

bool PrimeTable::is_prime(std::uint64_t n) const {
    if (n > bound_) {
        throw domain_error("PrimeTable::is_prime: " + std::to_string(n) + " exceeds table bound");
    }
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::span<const std::uint64_t> PrimeTable::range(double lo, double hi) const {
    if (hi < lo) {
        return {};
    }
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo,
                                  [](std::uint64_t p, double v) { return static_cast<double>(p) < v; });
    auto last = std::upper_bound(primes_.begin(), primes_.end(), hi,
                                 [](double v, std::uint64_t p) { return v < static_cast<double>(p); });
    if (first >= last) {
        return {};
    }
    return {&*first, static_cast<std::size_t>(last - first)};
}

// ---------------------------------------------------------------------------
// Deterministic Miller-Rabin (64-bit)
// ---------------------------------------------------------------------------

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((u128)a * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t seed) {
    // Brent's cycle variant of Pollard rho; returns a nontrivial factor or 0.
    if (n % 2 == 0) {
        return 2;
    }
    std::uint64_t y = seed % n, c = 1 + seed % (n - 1), m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) {
            y = (mulmod(y, y, n) + c) % n;
        }
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                std::uint64_t diff = x > y ? x - y : y - x;
                q = mulmod(q, diff == 0 ? 1 : diff, n);
            }
            g = std::gcd(q, n);
            k += lim;
        }
        r <<= 1;
        if (r > (1ull << 24)) {
            return 0; // give up on this seed
        }
    }
    if (g == n) {
        // backtrack
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            std::uint64_t diff = x > ys ? x - ys : ys - x;
            g = std::gcd(diff == 0 ? n : diff, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

void factor_recursive(std::uint64_t n, const FactorBudget& budget,
                      std::vector<std::uint64_t>& primes_out, std::uint64_t& cofactor_out) {
    if (n == 1) {
        return;
    }
    if (is_prime_u64(n)) {
        primes_out.push_back(n);
        return;
    }
    for (std::uint64_t round = 0; round < budget.pollard_rounds; ++round) {
        std::uint64_t g = pollard_brent(n, 2 + 0x9e3779b97f4a7c15ull * (round + 1) % (n - 3));
        if (g != 0 && g != 1 && g != n) {
            factor_recursive(g, budget, primes_out, cofactor_out);
            factor_recursive(n / g, budget, primes_out, cofactor_out);
            return;
        }
    }
    // Budget exhausted on a certified composite: keep it as cofactor.
    if (cofactor_out != 1) {
        // merge (extremely unlikely at 64 bits; keep product, bound stays valid)
        cofactor_out *= n;
    } else {
        cofactor_out = n;
    }
}

} // namespace

Factorization factorize(std::uint64_t n, const FactorBudget& budget) {
    if (n == 0) {
        throw domain_error("factorize: n must be positive");
    }
    Factorization f;
    f.n = n;
    if (n == 1) {
        return f;
    }
    std::uint64_t rem = n;
    std::uint64_t trial_reached = 2;
    auto push = [&](std::uint64_t p) {
        unsigned e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        if (e > 0) {
            f.factors.push_back({p, e});
        }
    };
    push(2);
    push(3);
    for (std::uint64_t d = 5; d <= budget.trial_division_bound && d * d <= rem; d += 6) {
        push(d);
        push(d + 2);
        trial_reached = d + 2;
    }
    trial_reached = std::max<std::uint64_t>(trial_reached, 3);
    if (rem > 1) {
        if (rem <= trial_reached * trial_reached || is_prime_u64(rem)) {
            // Any remaining value below the square of the trial bound is prime.
            f.factors.push_back({rem, 1});
            rem = 1;
        } else {
            std::vector<std::uint64_t> primes_found;
            std::uint64_t cofactor = 1;
            factor_recursive(rem, budget, primes_found, cofactor);
            std::sort(primes_found.begin(), primes_found.end());
            for (std::size_t i = 0; i < primes_found.size();) {
                std::uint64_t p = primes_found[i];
                unsigned e = 0;
                while (i < primes_found.size() && primes_found[i] == p) {
                    ++e;
                    ++i;
                }
                f.factors.push_back({p, e});
            }
            f.cofactor = cofactor;
            if (cofactor > 1) {
                f.cofactor_lower_prime_bound = std::min<std::uint64_t>(trial_reached, budget.trial_division_bound);
            }
            rem = 1;
        }
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return f;
}

std::vector<std::uint64_t> Factorization::odd_primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& pp : factors) {
        if (pp.prime > 2) {
            out.push_back(pp.prime);
        }
    }
    return out;
}

std::uint64_t euler_phi(const Factorization& f) {
    if (!f.complete()) {
        throw precondition_error("euler_phi: factorization of " + std::to_string(f.n) + " is incomplete");
    }
    std::uint64_t phi = 1;
    for (const auto& pp : f.factors) {
        phi *= pp.prime - 1;
        for (unsigned e = 1; e < pp.exponent; ++e) {
            phi *= pp.prime;
        }
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Scale parameters
// ---------------------------------------------------------------------------

int scale_exponent_floor(double X, double epsilon, double mu_norm) {
    if (X <= 0 || epsilon <= 0 || epsilon >= 1 || mu_norm <= 0) {
        throw domain_error("scale parameters: need X > 0, epsilon in (0,1), mu_norm > 0");
    }
    return static_cast<int>(std::floor(std::log2(epsilon * X / (2.0 * mu_norm))));
}

ScaleParams ScaleParams::create(double X, double epsilon, double mu_norm) {
    const int L = scale_exponent_floor(X, epsilon, mu_norm);
    if (L < 1) {
        throw domain_error("ScaleParams: L = floor(log2(eps*X/(2M))) = " + std::to_string(L) +
                           " < 1; increase X");
    }
    if (epsilon * X < 2.0) {
        throw domain_error("ScaleParams: eps*X must be >= 2");
    }
    return ScaleParams{X, epsilon, mu_norm, L};
}

// ---------------------------------------------------------------------------
// Prime-counting diagnostics
// ---------------------------------------------------------------------------

double chebyshev_theta(const PrimeTable& table, double x, double lo) {
    if (x < 0) {
        throw domain_error("chebyshev_theta: x must be >= 0");
    }
    if (x > static_cast<double>(table.bound())) {
        throw domain_error("chebyshev_theta: x exceeds the prime table bound");
    }
    double sum = 0.0, comp = 0.0; // Kahan
    for (std::uint64_t p : table.range(lo, x)) {
        const double term = std::log(static_cast<double>(p));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double twin_pair_sum(const PrimeTable& table, const ScaleParams& params, std::uint64_t n,
                     bool weighted) {
    if (n < 1 || static_cast<double>(n) > params.X / 2.0) {
        throw domain_error("twin_pair_sum: n must satisfy 1 <= n <= X/2");
    }
    // n beyond (1-eps)X/2 leaves no room for a pair and sums to zero.
    if (params.X > static_cast<double>(table.bound())) {
        throw domain_error("twin_pair_sum: X exceeds the prime table bound");
    }
    const std::uint64_t gap = 2 * n;
    double sum = 0.0;
    for (std::uint64_t p : table.range(params.epsilon * params.X, params.X)) {
        const std::uint64_t q = p + gap;
        if (static_cast<double>(q) > params.X) {
            break;
        }
        if (table.is_prime(q)) {
            sum += weighted ? std::log(static_cast<double>(p)) * std::log(static_cast<double>(q)) : 1.0;
        }
    }
    return sum;
}

double selberg_integral(const PrimeTable& table, double X, double h, double eps) {
    // eps = 1 is allowed and gives the zero-length interval.
    if (X < 2 || h <= 0 || eps <= 0 || eps > 1) {
        throw domain_error("selberg_integral: need X >= 2, h > 0, eps in (0,1]");
    }
    const double a = eps * X, b = X;
    if (b <= a) {
        return 0.0;
    }
    if (b + h > static_cast<double>(table.bound())) {
        throw domain_error("selberg_integral: prime table must cover X + h");
    }
    // Breakpoints: x = p for p in (a, b), and x = p - h for p in (a+h, b+h).
    std::vector<double> cuts;
    cuts.push_back(a);
    cuts.push_back(b);
    for (std::uint64_t p : table.range(std::nextafter(a, b), b)) {
        const double v = static_cast<double>(p);
        if (v > a && v < b) {
            cuts.push_back(v);
        }
    }
    for (std::uint64_t p : table.range(a + h, b + h)) {
        const double v = static_cast<double>(p) - h;
        if (v > a && v < b) {
            cuts.push_back(v);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0, comp = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double left = cuts[i], right = cuts[i + 1];
        const double mid = left + (right - left) / 2.0;
        // theta(mid+h) - theta(mid): no prime lies strictly inside a piece or
        // at mid+h (it would be a breakpoint), so endpoint handling is moot.
        double window = 0.0;
        for (std::uint64_t p : table.range(mid, mid + h)) {
            window += std::log(static_cast<double>(p));
        }
        const double val = (window - h) * (window - h) * (right - left);
        const double y = val - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Factorization cache
// ---------------------------------------------------------------------------

const Factorization& FactorCache::get(std::uint64_t n, const FactorBudget& budget) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = entries_.find(n);
        if (it != entries_.end()) {
            return it->second;
        }
    }
    Factorization f = factorize(n, budget);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = entries_.emplace(n, std::move(f));
    if (inserted) {
        pending_.push_back(n);
    }
    return it->second;
}

void FactorCache::put(const Factorization& f) {
    std::lock_guard<std::mutex> lock(mu_);
    if (entries_.emplace(f.n, f).second) {
        pending_.push_back(f.n);
    } else {
        entries_[f.n] = f;
    }
}

void FactorCache::preload_mersenne(int max_d, const FactorBudget& budget) {
    if (max_d < 1 || max_d > 64) {
        throw domain_error("preload_mersenne: need 1 <= max_d <= 64");
    }
    for (int d = 1; d <= max_d; ++d) {
        const std::uint64_t n = (d == 64) ? ~0ull : ((1ull << d) - 1);
        get(n, budget);
    }
}

std::size_t FactorCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

std::string FactorCache::format_entry(const Factorization& f) {
    std::ostringstream os;
    os << f.n;
    for (const auto& pp : f.factors) {
        os << ' ' << pp.prime << '^' << pp.exponent;
    }
    if (f.cofactor != 1) {
        os << " [cofactor=" << f.cofactor << ",bound=" << f.cofactor_lower_prime_bound << "]";
    }
    return os.str();
}

Factorization FactorCache::parse_entry(const std::string& line) {
    std::istringstream is(line);
    Factorization f;
    if (!(is >> f.n) || f.n == 0) {
        throw validation_error("FactorCache: malformed cache line '" + line + "'");
    }
    std::string tok;
    u128 check = 1;
    while (is >> tok) {
        if (tok.front() == '[') {
            // [cofactor=c,bound=b]
            std::uint64_t c = 0, b = 0;
            if (std::sscanf(tok.c_str(), "[cofactor=%lu,bound=%lu]", &c, &b) != 2 || c < 2 || b < 2) {
                throw validation_error("FactorCache: malformed cofactor clause '" + tok + "'");
            }
            f.cofactor = c;
            f.cofactor_lower_prime_bound = b;
            check *= c;
            continue;
        }
        std::uint64_t p = 0;
        unsigned e = 1;
        const auto caret = tok.find('^');
        if (caret == std::string::npos) {
            p = std::stoull(tok);
        } else {
            p = std::stoull(tok.substr(0, caret));
            e = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
        }
        if (!is_prime_u64(p)) {
            throw validation_error("FactorCache: listed factor " + std::to_string(p) + " is not prime");
        }
        f.factors.push_back({p, e});
        for (unsigned i = 0; i < e; ++i) {
            check *= p;
        }
    }
    if (check != static_cast<u128>(f.n)) {
        throw validation_error("FactorCache: product check failed for '" + line + "'");
    }
    for (std::size_t i = 1; i < f.factors.size(); ++i) {
        if (f.factors[i - 1].prime >= f.factors[i].prime) {
            throw validation_error("FactorCache: factors not strictly increasing in '" + line + "'");
        }
    }
    return f;
}

void FactorCache::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw validation_error("FactorCache: cannot open '" + path + "'");
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        Factorization f = parse_entry(line);
        std::lock_guard<std::mutex> lock(mu_);
        entries_[f.n] = std::move(f); // loaded entries are already persisted
    }
}

void FactorCache::append_file(const std::string& path) {
    std::lock_guard<std::mutex> lock(mu_);
    if (pending_.empty()) {
        return;
    }
    std::sort(pending_.begin(), pending_.end());
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw validation_error("FactorCache: cannot open '" + path + "' for append");
    }
    for (std::uint64_t k : pending_) {
        out << format_entry(entries_.at(k)) << '\n';
    }
    pending_.clear();
}

} // namespace linform
