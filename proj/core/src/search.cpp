#include "linform/search.hpp"

#include "linform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace linform {

namespace {

// Screening slack: generous against double rounding in base + power sums.
constexpr double kScreenSlack = 1e-6;

struct PowerSums {
    std::vector<double> value;       // sorted
    std::vector<std::uint64_t> index; // lexicographic m-vector index, parallel
};

std::vector<int> decode_mvec(std::uint64_t index, int s, int L) {
    std::vector<int> ms(s);
    for (int i = s - 1; i >= 0; --i) {
        ms[i] = static_cast<int>(index % L) + 1;
        index /= L;
    }
    return ms;
}

PowerSums build_power_sums(const std::vector<double>& mus, int s, int L) {
    std::uint64_t total = 1;
    for (int i = 0; i < s; ++i) {
        total *= static_cast<std::uint64_t>(L);
    }
    std::vector<std::pair<double, std::uint64_t>> items;
    items.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        double sum = 0.0;
        for (int i = s - 1; i >= 0; --i) {
            const int m = static_cast<int>(rest % L) + 1;
            rest /= L;
            sum += mus[static_cast<std::size_t>(i)] * std::ldexp(1.0, m);
        }
        items.emplace_back(sum, idx);
    }
    std::sort(items.begin(), items.end());
    PowerSums ps;
    ps.value.reserve(items.size());
    ps.index.reserve(items.size());
    for (auto& [v, i] : items) {
        ps.value.push_back(v);
        ps.index.push_back(i);
    }
    return ps;
}

enum class Verdict { solution, non_solution, undecided };

/// Certified comparison of |l1 p1 + l2 p2 + sum mu_i 2^{m_i} + gamma| vs eta.
Verdict certify(const CoefficientConfig& cfg, std::uint64_t p1, std::uint64_t p2,
                const std::vector<int>& ms, Precision prec, RealInterval& value_out) {
    Precision p = prec;
    for (int attempt = 0; attempt < 3; ++attempt) {
        RealInterval v = cfg.lambda1.at_precision(p) * RealInterval::from_uint(p1, p) +
                         cfg.lambda2.at_precision(p) * RealInterval::from_uint(p2, p) +
                         cfg.gamma.at_precision(p);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            v += cfg.mus[i].at_precision(p).mul_pow2(ms[i]);
        }
        RealInterval residual = v.abs();
        RealInterval eta = cfg.eta.at_precision(p);
        value_out = v;
        if (residual.strictly_less_than(eta)) {
            return Verdict::solution;
        }
        if (eta.strictly_less_than(residual)) {
            return Verdict::non_solution;
        }
        p = p.doubled();
    }
    return Verdict::undecided;
}

SolutionRecord make_record(const CoefficientConfig&, std::uint64_t p1, std::uint64_t p2,
                           std::vector<int> ms, const RealInterval& value) {
    SolutionRecord rec;
    rec.p1 = p1;
    rec.p2 = p2;
    rec.ms = std::move(ms);
    rec.value = value.mid_double();
    rec.residual = std::abs(rec.value);
    rec.value_decimal = value.to_string(20);
    return rec;
}

} // namespace

SearchResult find_solutions(const CoefficientConfig& cfg, const PrimeTable& table, double X,
                            int s, Precision prec, const SearchOptions& options) {
    if (s < 1 || static_cast<std::size_t>(s) > cfg.mus.size()) {
        throw domain_error("find_solutions: s must lie in [1, #mus]");
    }
    if (X > static_cast<double>(table.bound())) {
        throw domain_error("find_solutions: X exceeds the prime table bound");
    }
    SearchResult out;
    const double M = cfg.mu_norm();
    if (options.L_override) {
        out.L = *options.L_override;
        if (out.L < 1) {
            throw domain_error("find_solutions: L override must be >= 1");
        }
    } else {
        const int raw = scale_exponent_floor(X, cfg.epsilon, M);
        out.L = std::max(1, raw);
        out.L_clamped = raw < 1;
    }
    const int L = out.L;

    auto primes = table.range(cfg.epsilon * X, X);
    const double predicted =
        static_cast<double>(primes.size()) * static_cast<double>(primes.size()) *
        std::pow(static_cast<double>(L), s);
    if (predicted > options.budget_ops) {
        throw resource_error("find_solutions: pi(X)^2 * L^s = " + std::to_string(predicted) +
                             " exceeds the budget of " + std::to_string(options.budget_ops) +
                             "; shrink X, s or L");
    }

    std::vector<double> mus_d(cfg.mus.size());
    for (std::size_t i = 0; i < cfg.mus.size(); ++i) {
        mus_d[i] = cfg.mus[i].mid_double();
    }
    mus_d.resize(static_cast<std::size_t>(s));
    const PowerSums ps = build_power_sums(mus_d, s, L);

    const double l1 = cfg.lambda1.mid_double();
    const double l2 = cfg.lambda2.mid_double();
    const double g = cfg.gamma.mid_double();
    const double eta_hi = cfg.eta.hi_double();

    auto process_p1 = [&](std::uint64_t p1, std::vector<SolutionRecord>& sols,
                          std::vector<SolutionRecord>& undec) {
        for (std::uint64_t p2 : primes) {
            const double base = l1 * static_cast<double>(p1) + l2 * static_cast<double>(p2) + g;
            // candidates: power sums in [-base - eta - slack, -base + eta + slack]
            const double lo = -base - eta_hi - kScreenSlack;
            const double hi = -base + eta_hi + kScreenSlack;
            auto first = std::lower_bound(ps.value.begin(), ps.value.end(), lo);
            auto last = std::upper_bound(ps.value.begin(), ps.value.end(), hi);
            if (first == last) {
                continue;
            }
            // certify in lexicographic m-order
            std::vector<std::uint64_t> cand;
            for (auto it = first; it != last; ++it) {
                cand.push_back(ps.index[static_cast<std::size_t>(it - ps.value.begin())]);
            }
            std::sort(cand.begin(), cand.end());
            for (std::uint64_t idx : cand) {
                std::vector<int> ms = decode_mvec(idx, s, L);
                RealInterval value;
                switch (certify(cfg, p1, p2, ms, prec, value)) {
                case Verdict::solution:
                    sols.push_back(make_record(cfg, p1, p2, std::move(ms), value));
                    break;
                case Verdict::undecided:
                    undec.push_back(make_record(cfg, p1, p2, std::move(ms), value));
                    break;
                case Verdict::non_solution:
                    break;
                }
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (std::uint64_t p1 : primes) {
            process_p1(p1, out.solutions, out.undecided);
            if (options.limit && static_cast<long>(out.solutions.size()) >= *options.limit) {
                out.solutions.resize(static_cast<std::size_t>(*options.limit));
                out.truncated = true;
                return out;
            }
        }
        return out;
    }

    // Partition by p1 across workers; chunks are contiguous in p1, so
    // concatenation in chunk order preserves the lexicographic contract.
    const std::size_t n = primes.size();
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(n, 1));
    std::vector<std::pair<std::vector<SolutionRecord>, std::vector<SolutionRecord>>> partial(chunks);
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        workers.emplace_back([&, c]() {
            const std::size_t i0 = n * c / chunks;
            const std::size_t i1 = n * (c + 1) / chunks;
            for (std::size_t i = i0; i < i1; ++i) {
                process_p1(primes[i], partial[c].first, partial[c].second);
            }
            mpfr_free_cache(); // thread-local caches die with the worker
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (auto& [sols, undec] : partial) {
        out.solutions.insert(out.solutions.end(), sols.begin(), sols.end());
        out.undecided.insert(out.undecided.end(), undec.begin(), undec.end());
    }
    if (options.limit && static_cast<long>(out.solutions.size()) > *options.limit) {
        out.solutions.resize(static_cast<std::size_t>(*options.limit));
        out.truncated = true;
    }
    return out;
}

SolutionCount count_solutions(const CoefficientConfig& cfg, const PrimeTable& table, double X,
                              int s, Precision prec, const SearchOptions& options) {
    SearchOptions opts = options;
    opts.limit.reset();
    SearchResult r = find_solutions(cfg, table, X, s, prec, opts);
    return {static_cast<long>(r.solutions.size()), static_cast<long>(r.undecided.size())};
}

std::vector<DensityRow> density_report(const CoefficientConfig& cfg, const PrimeTable& table,
                                       const std::vector<double>& x_grid, int s, Precision prec,
                                       const SearchOptions& options) {
    std::vector<DensityRow> rows;
    const double eta = cfg.eta.mid_double();
    for (double X : x_grid) {
        SolutionCount c = count_solutions(cfg, table, X, s, prec, options);
        const double reference = eta * X * std::pow(std::log(X), s - 2);
        rows.push_back({X, c.count, c.undecided, reference,
                        reference > 0 ? static_cast<double>(c.count) / reference : 0.0});
    }
    return rows;
}

} // namespace linform
