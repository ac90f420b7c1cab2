// linform: certified computations for linear forms in two primes and powers
// of two. Every subcommand writes machine-readable artifacts plus one
// manifest.json into --out.

#include "support.hpp"

#include "linform/constants.hpp"
#include "linform/errors.hpp"
#include "linform/expsums.hpp"
#include "linform/interval.hpp"
#include "linform/ntcore.hpp"
#include "linform/powers2.hpp"
#include "linform/s0calc.hpp"
#include "linform/search.hpp"
#include "linform/singular.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using nlohmann::json;
using namespace linform;
using namespace linform::tools;

namespace {

// Reference instance: lambda1 = sqrt(3), lambda2 = -sqrt(2),
// mu = (sqrt(3)/3, -sqrt(2)/2), exact ratios 3/1 and 2/1. The lambda
// literals are exact multiples of the mu literals, so the declared ratios
// hold exactly at 40 digits.
constexpr const char* kRefMu1 = "0.5773502691896257645091487805019574556476";
constexpr const char* kRefLambda1 = "1.7320508075688772935274463415058723669428";
constexpr const char* kRefMu2 = "-0.7071067811865475244008443621048490392848";
constexpr const char* kRefLambda2 = "-1.4142135623730950488016887242096980785696";

struct GlobalOpts {
    std::string out_dir = ".";
    int precision = 30;
    int jobs = 0; // 0 = available parallelism
    std::uint64_t seed = 1;
    std::string factor_cache_file;

    int effective_jobs() const {
        if (jobs > 0) {
            return jobs;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
};

struct CoeffFlags {
    std::string lambda1 = kRefLambda1;
    std::string lambda2 = kRefLambda2;
    std::vector<std::string> mus = {kRefMu1, kRefMu2};
    std::string ratio1 = "3/1";
    std::string ratio2 = "2/1";
    std::string gamma = "0";
    std::string eta = "0.5";
    std::string epsilon = "0.2";
    std::string ratio_class = "algebraic";
    int literal_digits = 40;

    RawCoefficientConfig raw() const {
        RawCoefficientConfig r;
        r.lambda1 = lambda1;
        r.lambda2 = lambda2;
        r.mus = mus;
        r.ratio1 = ratio1;
        r.ratio2 = ratio2;
        r.gamma = gamma;
        r.eta = eta;
        r.epsilon = epsilon;
        r.ratio_class =
            ratio_class == "transcendental" ? RatioClass::transcendental : RatioClass::algebraic;
        r.literal_digits = literal_digits;
        return r;
    }
};

void add_coeff_flags(CLI::App* cmd, CoeffFlags& c) {
    cmd->add_option("--lambda1", c.lambda1, "decimal literal for lambda1");
    cmd->add_option("--lambda2", c.lambda2, "decimal literal for lambda2");
    cmd->add_option("--mu", c.mus, "decimal literals for mu_1..mu_s");
    cmd->add_option("--ratio1", c.ratio1, "exact rational lambda1/mu1 as a/q");
    cmd->add_option("--ratio2", c.ratio2, "exact rational lambda2/mu2 as a/q");
    cmd->add_option("--gamma", c.gamma, "decimal literal for gamma");
    cmd->add_option("--eta", c.eta, "inequality threshold eta");
    cmd->add_option("--epsilon", c.epsilon, "prime-range parameter epsilon in (0,1)");
    cmd->add_option("--class", c.ratio_class, "ratio class of lambda1/lambda2")
        ->check(CLI::IsMember({"algebraic", "transcendental"}));
    cmd->add_option("--literal-digits", c.literal_digits, "declared precision of the literals");
}

void record_coeffs(RunManifest& m, const CoeffFlags& c) {
    m.parameters["lambda1"] = c.lambda1;
    m.parameters["lambda2"] = c.lambda2;
    for (std::size_t i = 0; i < c.mus.size(); ++i) {
        m.parameters["mu" + std::to_string(i + 1)] = c.mus[i];
    }
    m.parameters["ratio1"] = c.ratio1;
    m.parameters["ratio2"] = c.ratio2;
    m.parameters["gamma"] = c.gamma;
    m.parameters["eta"] = c.eta;
    m.parameters["epsilon"] = c.epsilon;
    m.parameters["class"] = c.ratio_class;
}

json s0_result_json(const S0Result& r, int dps) {
    return json{{"s0", r.s0},
                {"case", to_string(r.ratio_class)},
                {"C_interval", interval_json(r.C_interval, dps)},
                {"Cq_interval", interval_json(r.Cq_interval, dps)},
                {"numerator", interval_json(r.numerator, dps)},
                {"denominator_constant", r.denominator_constant},
                {"B_variant", to_string(r.b_variant)},
                {"certified_at_digits", r.certified_at_digits}};
}

json solution_json(const SolutionRecord& s) {
    return json{{"p1", s.p1},        {"p2", s.p2},
                {"ms", s.ms},        {"value", s.value},
                {"residual", s.residual}, {"value_interval", s.value_decimal}};
}

int run_all(CLI::App& app, int argc, char** argv);

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linform: certified machinery for the inequality "
                 "|l1 p1 + l2 p2 + mu_1 2^m1 + ... + mu_s 2^ms + gamma| < eta"};
    try {
        return run_all(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        app.exit(e);
        return 2; // usage
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 4;
    } catch (const tolerance_error& e) {
        std::cerr << "tolerance error: " << e.what() << "\n";
        return 5;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int run_all(CLI::App& app, int argc, char** argv) {
    GlobalOpts g;
    app.set_config("--config", "", "flat key=value config file, merged under explicit flags");
    app.add_option("--out", g.out_dir, "output directory for artifacts")->capture_default_str();
    app.add_option("--precision", g.precision, "working precision in decimal digits")
        ->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker parallelism (0 = available cores)");
    app.add_option("--seed", g.seed, "seed for seeded parameter draws");
    app.add_option("--factor-cache", g.factor_cache_file,
                   "factorization cache file (loaded read-only, appended on exit)");
    app.require_subcommand(1);
    app.fallthrough();

    // ---- c0 ----------------------------------------------------------------
    auto* cmd_c0 = app.add_subcommand("c0", "certified interval for the twin-prime constant");
    double c0_prime_bound = 1e6;
    cmd_c0->add_option("--prime-bound", c0_prime_bound, "Euler-product cutoff")
        ->capture_default_str();

    // ---- constants ---------------------------------------------------------
    auto* cmd_constants =
        app.add_subcommand("constants", "certified constants table (JSON and CSV)");
    cmd_constants->footer("writes constants.json and constants.csv "
                          "(columns: name,lo,hi,precision,provenance)");
    double constants_prime_bound = 1e6;
    cmd_constants->add_option("--prime-bound", constants_prime_bound, "c0 Euler-product cutoff")
        ->capture_default_str();

    // ---- singular ----------------------------------------------------------
    auto* cmd_singular =
        app.add_subcommand("singular", "singular series values and upper bounds at n");
    std::uint64_t singular_n = 3;
    double singular_prime_bound = 1e6;
    cmd_singular->add_option("--n", singular_n, "argument n")->required();
    cmd_singular->add_option("--prime-bound", singular_prime_bound, "c0 Euler-product cutoff")
        ->capture_default_str();

    // ---- s0 ----------------------------------------------------------------
    auto* cmd_s0 = app.add_subcommand("s0", "evaluate the s0 formulas");
    CoeffFlags s0_coeffs;
    std::uint64_t s0_q1 = 1, s0_q2 = 1;
    std::string s0_abs_l1l2, s0_eta = "1", s0_class = "algebraic", s0_bvariant = "chen";
    cmd_s0->add_option("--q1", s0_q1, "denominator q1 (reduced lambda1/mu1)");
    cmd_s0->add_option("--q2", s0_q2, "denominator q2 (reduced lambda2/mu2)");
    cmd_s0->add_option("--abs-l1l2", s0_abs_l1l2,
                       "|lambda1*lambda2| as a decimal literal (direct mode)");
    cmd_s0->add_option("--eta", s0_eta, "eta (direct mode)");
    cmd_s0->add_option("--class", s0_class, "ratio class")
        ->check(CLI::IsMember({"algebraic", "transcendental"}));
    cmd_s0->add_option("--b-variant", s0_bvariant, "B constant variant")
        ->check(CLI::IsMember({"chen", "conjectural"}));
    auto* cmd_s0_full = cmd_s0->add_subcommand("from-config", "derive inputs from a full config");
    add_coeff_flags(cmd_s0_full, s0_coeffs);

    // ---- rkk ---------------------------------------------------------------
    auto* cmd_rkk = app.add_subcommand("rkk", "representation-count table r_{k,k}");
    int rkk_k = 1, rkk_L = 8;
    cmd_rkk->add_option("--k", rkk_k)->capture_default_str();
    cmd_rkk->add_option("--L", rkk_L)->capture_default_str();

    // ---- skl ---------------------------------------------------------------
    auto* cmd_skl = app.add_subcommand("skl", "Khalfalah-Pintz sums S(k,L)");
    cmd_skl->footer("writes skl.json and skl.csv (columns: L,S_lo,S_hi,a_lo,a_hi)");
    int skl_k = 1, skl_L = 10, skl_Lmin = 0, skl_Lmax = 0;
    double skl_prime_bound = 1e6;
    cmd_skl->add_option("--k", skl_k)->capture_default_str();
    cmd_skl->add_option("--L", skl_L)->capture_default_str();
    cmd_skl->add_option("--L-min", skl_Lmin, "curve mode: first L");
    cmd_skl->add_option("--L-max", skl_Lmax, "curve mode: last L");
    cmd_skl->add_option("--prime-bound", skl_prime_bound)->capture_default_str();

    // ---- a-estimate ----------------------------------------------------------
    auto* cmd_aest = app.add_subcommand("a-estimate", "S(k,L)/(2 L^{2k}) - 1 estimates");
    cmd_aest->footer("writes a_estimate.json and a_estimate.csv "
                     "(columns: L,S_lo,S_hi,a_lo,a_hi)");
    int aest_k = 1, aest_L = 20;
    double aest_prime_bound = 1e6;
    cmd_aest->add_option("--k", aest_k)->capture_default_str();
    cmd_aest->add_option("--L", aest_L)->capture_default_str();
    cmd_aest->add_option("--prime-bound", aest_prime_bound)->capture_default_str();

    // ---- gmeasure ------------------------------------------------------------
    auto* cmd_gmeasure =
        app.add_subcommand("gmeasure", "certified level-set measure of |G| > nu L");
    int gm_L = 8;
    double gm_nu = 0.9, gm_tol = 1e-6;
    long gm_budget = 80'000'000;
    cmd_gmeasure->add_option("--L", gm_L)->capture_default_str();
    cmd_gmeasure->add_option("--nu", gm_nu)->capture_default_str();
    cmd_gmeasure->add_option("--tol", gm_tol)->capture_default_str();
    cmd_gmeasure->add_option("--cell-budget", gm_budget)->capture_default_str();

    // ---- decay ---------------------------------------------------------------
    auto* cmd_decay = app.add_subcommand("decay", "level-set measure decay across L");
    cmd_decay->footer("writes decay.json and decay.csv (columns: L,measure_lo,measure_hi)");
    double decay_nu = 0.9, decay_tol = 1e-9;
    int decay_Lmin = 8, decay_Lmax = 14;
    long decay_budget = 80'000'000;
    cmd_decay->add_option("--nu", decay_nu)->capture_default_str();
    cmd_decay->add_option("--L-min", decay_Lmin)->capture_default_str();
    cmd_decay->add_option("--L-max", decay_Lmax)->capture_default_str();
    cmd_decay->add_option("--tol", decay_tol)->capture_default_str();
    cmd_decay->add_option("--cell-budget", decay_budget)->capture_default_str();

    // ---- dissect ---------------------------------------------------------------
    auto* cmd_dissect = app.add_subcommand("dissect", "major/minor/trivial arc boundaries");
    double dis_x = 1e6, dis_eps = 0.1, dis_mu_norm = 1.0;
    cmd_dissect->add_option("--x", dis_x)->capture_default_str();
    cmd_dissect->add_option("--epsilon", dis_eps)->capture_default_str();
    cmd_dissect->add_option("--mu-norm", dis_mu_norm)->capture_default_str();

    // ---- kernel-check ---------------------------------------------------------
    auto* cmd_kernel = app.add_subcommand("kernel-check", "kernel transform quadrature check");
    double kc_t = 0.0, kc_eta = 1.0, kc_trunc = 2000.0, kc_tol = 1e-6;
    bool kc_grid = false;
    cmd_kernel->add_option("--t", kc_t)->capture_default_str();
    cmd_kernel->add_option("--eta", kc_eta)->capture_default_str();
    cmd_kernel->add_option("--truncation", kc_trunc)->capture_default_str();
    cmd_kernel->add_option("--tol", kc_tol)->capture_default_str();
    cmd_kernel->add_flag("--grid", kc_grid, "run the 7x5 (t, eta) verification grid");

    // ---- major-arc --------------------------------------------------------------
    auto* cmd_major = app.add_subcommand("major-arc", "exact major-arc main term J(u)");
    double ma_u = 0.0, ma_x = 100.0, ma_eta = 0.5, ma_l1 = 2.0, ma_l2 = -1.5, ma_eps = 0.05;
    cmd_major->add_option("--u", ma_u)->capture_default_str();
    cmd_major->add_option("--x", ma_x)->capture_default_str();
    cmd_major->add_option("--eta", ma_eta)->capture_default_str();
    cmd_major->add_option("--lambda1", ma_l1)->capture_default_str();
    cmd_major->add_option("--lambda2", ma_l2)->capture_default_str();
    cmd_major->add_option("--epsilon", ma_eps)->capture_default_str();

    // ---- integrate ---------------------------------------------------------------
    auto* cmd_integrate =
        app.add_subcommand("integrate", "adaptive quadrature of the full integrand over a region");
    std::string int_region = "major";
    double int_x = 100.0, int_quad_tol = 1e-6, int_cutoff = 0.0;
    double int_l1 = 2.0, int_l2 = -1.5, int_gamma = 0.0, int_eta = 0.5, int_eps = 0.05;
    std::vector<double> int_mus;
    cmd_integrate->add_option("--region", int_region)
        ->check(CLI::IsMember({"major", "minor", "trivial"}))
        ->capture_default_str();
    cmd_integrate->add_option("--x", int_x)->capture_default_str();
    cmd_integrate->add_option("--quad-tol", int_quad_tol)->capture_default_str();
    cmd_integrate->add_option("--cutoff", int_cutoff, "trivial-region truncation (0 = 10 L^2)");
    cmd_integrate->add_option("--lambda1", int_l1)->capture_default_str();
    cmd_integrate->add_option("--lambda2", int_l2)->capture_default_str();
    cmd_integrate->add_option("--mu", int_mus, "mu coefficients (defines s; s <= 4)");
    cmd_integrate->add_option("--gamma", int_gamma)->capture_default_str();
    cmd_integrate->add_option("--eta", int_eta)->capture_default_str();
    cmd_integrate->add_option("--epsilon", int_eps)->capture_default_str();

    // ---- selberg ---------------------------------------------------------------
    auto* cmd_selberg = app.add_subcommand("selberg", "exact Selberg integral");
    cmd_selberg->set_help_flag("--help", "print help");
    double sel_x = 1000.0, sel_h = 50.0, sel_eps = 0.1;
    cmd_selberg->add_option("--x", sel_x)->capture_default_str();
    cmd_selberg->add_option("--h", sel_h)->capture_default_str();
    cmd_selberg->add_option("--epsilon", sel_eps)->capture_default_str();

    // ---- twin ------------------------------------------------------------------
    auto* cmd_twin = app.add_subcommand("twin", "twin-pair counting function at gap 2n");
    double twin_x = 1000.0, twin_eps = 0.1, twin_mu_norm = 0.5;
    std::uint64_t twin_n = 1;
    bool twin_weighted = false;
    cmd_twin->add_option("--x", twin_x)->capture_default_str();
    cmd_twin->add_option("--epsilon", twin_eps)->capture_default_str();
    cmd_twin->add_option("--mu-norm", twin_mu_norm)->capture_default_str();
    cmd_twin->add_option("--n", twin_n)->capture_default_str();
    cmd_twin->add_flag("--weighted", twin_weighted, "weight pairs by log p log p'");

    // ---- search / count / density ------------------------------------------------
    CoeffFlags search_coeffs;
    auto* cmd_search = app.add_subcommand("search", "certified solution search");
    cmd_search->footer("writes solutions.jsonl (one record per line) and search.json");
    double search_x = 100.0;
    int search_s = 2, search_L = 0;
    long search_limit = 0;
    cmd_search->add_option("--x", search_x)->capture_default_str();
    cmd_search->add_option("--s", search_s)->capture_default_str();
    cmd_search->add_option("--limit", search_limit, "stop after this many solutions (0 = all)");
    cmd_search->add_option("--L", search_L, "exponent range override (0 = derived)");
    add_coeff_flags(cmd_search, search_coeffs);

    CoeffFlags count_coeffs;
    auto* cmd_count = app.add_subcommand("count", "certified solution count");
    double count_x = 100.0;
    int count_s = 2, count_L = 0;
    cmd_count->add_option("--x", count_x)->capture_default_str();
    cmd_count->add_option("--s", count_s)->capture_default_str();
    cmd_count->add_option("--L", count_L, "exponent range override (0 = derived)");
    add_coeff_flags(cmd_count, count_coeffs);

    CoeffFlags density_coeffs;
    auto* cmd_density = app.add_subcommand("density", "solution counts across an X grid");
    cmd_density->footer("writes density.json and density.csv "
                        "(columns: X,count,undecided,reference,ratio)");
    std::vector<double> density_grid = {100, 1000, 10000};
    int density_s = 2;
    cmd_density->add_option("--x-grid", density_grid, "X values")->capture_default_str();
    cmd_density->add_option("--s", density_s)->capture_default_str();
    add_coeff_flags(cmd_density, density_coeffs);

    // ---- paper-examples ----------------------------------------------------------
    auto* cmd_paper = app.add_subcommand(
        "paper-examples", "run the three published example instances and compare s0 values");

    app.parse(argc, argv);

    RunManifest manifest;
    manifest.precision = g.precision;
    manifest.started = iso8601_now();
    CLI::App* sub = app.get_subcommands().front();
    manifest.subcommand = sub->get_name();

    FactorCache cache;
    if (!g.factor_cache_file.empty()) {
        manifest.cache_version = g.factor_cache_file;
        if (std::filesystem::exists(g.factor_cache_file)) {
            cache.load_file(g.factor_cache_file);
        }
    }

    const Precision prec(g.precision);
    const int dps = g.precision;

    auto finish = [&](int code) {
        manifest.finished = iso8601_now();
        write_manifest(g.out_dir, manifest);
        return code;
    };

    try {
        if (sub == cmd_c0) {
            manifest.parameters["prime_bound"] = std::to_string(c0_prime_bound);
            PrimeTable table(static_cast<std::uint64_t>(c0_prime_bound));
            RealInterval c0 = twin_prime_constant(table, prec);
            json j{{"schema_version", kSchemaVersion},
                   {"name", "c0"},
                   {"prime_bound", c0_prime_bound},
                   {"precision", g.precision},
                   {"interval", interval_json(c0, dps)},
                   {"provenance",
                    "Euler product over odd primes with certified two-sided tail; reference "
                    "window due to Gourdon-Sebah (2001)"}};
            write_json(g.out_dir, "c0.json", j, manifest);
            std::cout << "c0 in " << c0.to_string(dps) << "\n";
        } else if (sub == cmd_constants) {
            manifest.parameters["prime_bound"] = std::to_string(constants_prime_bound);
            PrimeTable table(static_cast<std::uint64_t>(constants_prime_bound));
            RealInterval c0 = twin_prime_constant(table, prec);
            auto entries = constants_table(c0, prec);
            json j{{"schema_version", kSchemaVersion}, {"constants", json::array()}};
            std::vector<std::vector<std::string>> csv{{"name", "lo", "hi", "precision", "provenance"}};
            for (const auto& e : entries) {
                j["constants"].push_back(json{{"name", e.name},
                                              {"lo", e.lo},
                                              {"hi", e.hi},
                                              {"precision", e.precision_digits},
                                              {"provenance", e.provenance}});
                csv.push_back({e.name, e.lo, e.hi, std::to_string(e.precision_digits),
                               "\"" + e.provenance + "\""});
            }
            j["derived"] = {{"C_published", c_upper_published(BVariant::chen)},
                            {"C_conjectural_published", c_upper_published(BVariant::conjectural)}};
            write_json(g.out_dir, "constants.json", j, manifest);
            write_csv(g.out_dir, "constants.csv", csv, manifest);
            for (const auto& e : entries) {
                std::cout << e.name << " = [" << e.lo << ", " << e.hi << "]  (" << e.provenance
                          << ")\n";
            }
        } else if (sub == cmd_singular) {
            manifest.parameters["n"] = std::to_string(singular_n);
            manifest.parameters["prime_bound"] = std::to_string(singular_prime_bound);
            PrimeTable table(static_cast<std::uint64_t>(singular_prime_bound));
            RealInterval c0 = twin_prime_constant(table, prec);
            Factorization f = cache.get(singular_n);
            SingSeriesValue sp = singular_series_factor(f, prec);
            json j{{"schema_version", kSchemaVersion},
                   {"n", singular_n},
                   {"factorization", FactorCache::format_entry(f)},
                   {"sprime", interval_json(sp.interval, dps)},
                   {"complete", sp.complete},
                   {"s_full", interval_json(singular_series(sp, c0), dps)}};
            if (sp.exact) {
                j["sprime_exact"] = sp.exact->get_str();
            }
            if (singular_n >= 3 && f.complete()) {
                BoundComparison bc = bound_comparison(singular_n, c0, prec);
                j["f_bound"] = interval_json(bc.f_bound, dps);
                j["rs_bound"] = interval_json(bc.rs_bound, dps);
                j["parsell_2log2n"] = interval_json(bc.parsell_2log2n, dps);
                j["minimum_label"] = bc.minimum_label;
            }
            write_json(g.out_dir, "singular.json", j, manifest);
            std::cout << "sprime(" << singular_n << ") in " << sp.interval.to_string(dps) << "\n";
        } else if (sub == cmd_s0) {
            S0Inputs in;
            json j{{"schema_version", kSchemaVersion}};
            if (cmd_s0_full->parsed()) {
                CoefficientConfig cfg =
                    validate_config(s0_coeffs.raw(), ValidationMode::theorem, prec);
                in = s0_inputs(cfg);
                record_coeffs(manifest, s0_coeffs);
            } else {
                if (s0_abs_l1l2.empty()) {
                    throw validation_error("s0: provide --abs-l1l2 or the from-config subcommand");
                }
                in.q1 = s0_q1;
                in.q2 = s0_q2;
                in.abs_lambda_product = RealInterval::from_decimal(s0_abs_l1l2, prec);
                in.eta = RealInterval::from_decimal(s0_eta, prec);
                in.ratio_class = s0_class == "transcendental" ? RatioClass::transcendental
                                                              : RatioClass::algebraic;
                manifest.parameters["q1"] = std::to_string(s0_q1);
                manifest.parameters["q2"] = std::to_string(s0_q2);
                manifest.parameters["abs_l1l2"] = s0_abs_l1l2;
                manifest.parameters["eta"] = s0_eta;
                manifest.parameters["class"] = s0_class;
            }
            manifest.parameters["b_variant"] = s0_bvariant;
            const BVariant bv = s0_bvariant == "conjectural" ? BVariant::conjectural : BVariant::chen;
            S0Result main = compute_s0(in, bv, prec);
            S0Result p_pub = parsell_s0(in, ParsellVariant::published_25log, prec);
            S0Result p_ref = parsell_s0(in, ParsellVariant::refined_C1, prec);
            j["result"] = s0_result_json(main, dps);
            j["parsell_published"] = s0_result_json(p_pub, dps);
            j["parsell_refined"] = s0_result_json(p_ref, dps);
            write_json(g.out_dir, "s0.json", j, manifest);
            std::cout << "s0 = " << main.s0 << " (" << to_string(main.ratio_class)
                      << "), Parsell published = " << p_pub.s0 << ", refined = " << p_ref.s0
                      << "\n";
        } else if (sub == cmd_rkk) {
            manifest.parameters["k"] = std::to_string(rkk_k);
            manifest.parameters["L"] = std::to_string(rkk_L);
            RepTable t = rep_table(rkk_k, rkk_L);
            json counts = json::object();
            for (const auto& [m, c] : t.counts) {
                counts[int128_to_string(m)] = c;
            }
            json j{{"schema_version", kSchemaVersion},
                   {"k", t.k},
                   {"L", t.L},
                   {"total_mass", t.total_mass()},
                   {"nonzero_entries", t.counts.size()},
                   {"counts", counts}};
            write_json(g.out_dir, "rkk.json", j, manifest);
            std::cout << "r_{" << rkk_k << "," << rkk_k << "} with L=" << rkk_L << ": "
                      << t.counts.size() << " attained values, total mass " << t.total_mass()
                      << "\n";
        } else if (sub == cmd_skl || sub == cmd_aest) {
            const bool is_skl = sub == cmd_skl;
            const int k = is_skl ? skl_k : aest_k;
            const double pb = is_skl ? skl_prime_bound : aest_prime_bound;
            int Lmin = is_skl ? (skl_Lmin > 0 ? skl_Lmin : skl_L) : aest_L;
            int Lmax = is_skl ? (skl_Lmax > 0 ? skl_Lmax : skl_L) : aest_L;
            manifest.parameters["k"] = std::to_string(k);
            manifest.parameters["L_min"] = std::to_string(Lmin);
            manifest.parameters["L_max"] = std::to_string(Lmax);
            manifest.parameters["prime_bound"] = std::to_string(pb);
            PrimeTable table(static_cast<std::uint64_t>(pb));
            RealInterval c0 = twin_prime_constant(table, prec);
            if (k == 1) {
                cache.preload_mersenne(std::min(64, Lmax));
            }
            json rows = json::array();
            std::vector<std::vector<std::string>> csv{
                {"L", "S_lo", "S_hi", "a_lo", "a_hi"}};
            for (int L = Lmin; L <= Lmax; ++L) {
                RealInterval s = kp_sum(k, L, c0, cache, prec);
                RealInterval a = kp_limit_estimate(k, L, c0, cache, prec);
                json row{{"L", L},
                         {"S", interval_json(s, dps)},
                         {"a_estimate", interval_json(a, dps)},
                         {"distance_to_A1", 0.2792521041 - a.mid_double()}};
                if (k == 1 && L >= 2) {
                    row["S_closed_form"] = interval_json(kp_sum_closed_form(L, c0, cache, prec), dps);
                }
                rows.push_back(row);
                csv.push_back({std::to_string(L), s.lo_string(dps), s.hi_string(dps),
                               a.lo_string(dps), a.hi_string(dps)});
            }
            json j{{"schema_version", kSchemaVersion},
                   {"k", k},
                   {"A1_published", kA1Bound},
                   {"rows", rows}};
            const char* fname = is_skl ? "skl.json" : "a_estimate.json";
            const char* cname = is_skl ? "skl.csv" : "a_estimate.csv";
            write_json(g.out_dir, fname, j, manifest);
            write_csv(g.out_dir, cname, csv, manifest);
            std::cout << (is_skl ? "S(k,L)" : "a-estimate") << " rows written for L in ["
                      << Lmin << ", " << Lmax << "]\n";
        } else if (sub == cmd_gmeasure) {
            manifest.parameters["L"] = std::to_string(gm_L);
            manifest.parameters["nu"] = std::to_string(gm_nu);
            manifest.parameters["tol"] = std::to_string(gm_tol);
            LevelSetEstimate est = level_set_measure(gm_L, gm_nu, gm_tol, gm_budget);
            json j{{"schema_version", kSchemaVersion},
                   {"L", est.L},
                   {"nu", est.nu},
                   {"measure_lo", est.measure_lo},
                   {"measure_hi", est.measure_hi},
                   {"cells_resolved", est.cells_resolved},
                   {"lipschitz_bound", est.lipschitz_bound},
                   {"budget_exhausted", est.budget_exhausted}};
            write_json(g.out_dir, "gmeasure.json", j, manifest);
            std::cout << "measure(|G| > " << gm_nu << " * " << gm_L << ") in [" << est.measure_lo
                      << ", " << est.measure_hi << "]\n";
        } else if (sub == cmd_decay) {
            manifest.parameters["nu"] = std::to_string(decay_nu);
            manifest.parameters["L_min"] = std::to_string(decay_Lmin);
            manifest.parameters["L_max"] = std::to_string(decay_Lmax);
            manifest.parameters["tol"] = std::to_string(decay_tol);
            DecayReport rep = decay_report(decay_nu, decay_Lmin, decay_Lmax, decay_tol, decay_budget);
            json rows = json::array();
            std::vector<std::vector<std::string>> csv{{"L", "measure_lo", "measure_hi"}};
            for (const auto& r : rep.rows) {
                rows.push_back(json{{"L", r.L}, {"measure_lo", r.measure_lo}, {"measure_hi", r.measure_hi}});
                csv.push_back({std::to_string(r.L), std::to_string(r.measure_lo),
                               std::to_string(r.measure_hi)});
            }
            json j{{"schema_version", kSchemaVersion},
                   {"nu", decay_nu},
                   {"rows", rows},
                   {"fitted_exponent", rep.fitted_exponent},
                   {"degenerate", rep.degenerate}};
            write_json(g.out_dir, "decay.json", j, manifest);
            write_csv(g.out_dir, "decay.csv", csv, manifest);
            std::cout << "fitted exponent (d log measure / d log X): " << rep.fitted_exponent
                      << (rep.degenerate ? " (degenerate fit)" : "") << "\n";
        } else if (sub == cmd_dissect) {
            manifest.parameters["x"] = std::to_string(dis_x);
            manifest.parameters["epsilon"] = std::to_string(dis_eps);
            manifest.parameters["mu_norm"] = std::to_string(dis_mu_norm);
            ArcDissection d = dissect(ScaleParams::create(dis_x, dis_eps, dis_mu_norm));
            json j{{"schema_version", kSchemaVersion},
                   {"X", d.X},
                   {"P", d.P},
                   {"L", d.L},
                   {"major", {{"lo", -d.major_halfwidth}, {"hi", d.major_halfwidth}}},
                   {"minor",
                    {{"abs_lo", d.major_halfwidth}, {"abs_hi", d.minor_upper}}},
                   {"trivial_tail_bound", d.trivial_tail_bound}};
            write_json(g.out_dir, "dissect.json", j, manifest);
            std::cout << "P = " << d.P << ", L = " << d.L << ", major halfwidth " << d.major_halfwidth
                      << ", minor up to " << d.minor_upper << "\n";
        } else if (sub == cmd_kernel) {
            json j{{"schema_version", kSchemaVersion}, {"checks", json::array()}};
            auto run_check = [&](double t, double eta) {
                KernelTransformCheck c = fejer_transform_check(t, eta, kc_trunc, kc_tol);
                j["checks"].push_back(json{{"t", t},
                                           {"eta", eta},
                                           {"value", c.value},
                                           {"target", c.target},
                                           {"quad_error_estimate", c.quad_error_estimate},
                                           {"tail_bound", c.tail_bound},
                                           {"abs_deviation", std::abs(c.value - c.target)}});
            };
            manifest.parameters["truncation"] = std::to_string(kc_trunc);
            manifest.parameters["tol"] = std::to_string(kc_tol);
            if (kc_grid) {
                manifest.parameters["grid"] = "7x5";
                for (double eta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                    for (double mult : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
                        run_check(mult * eta, eta);
                    }
                }
            } else {
                manifest.parameters["t"] = std::to_string(kc_t);
                manifest.parameters["eta"] = std::to_string(kc_eta);
                run_check(kc_t, kc_eta);
            }
            write_json(g.out_dir, "kernel_check.json", j, manifest);
            std::cout << j["checks"].size() << " kernel transform checks written\n";
        } else if (sub == cmd_major) {
            manifest.parameters["u"] = std::to_string(ma_u);
            manifest.parameters["x"] = std::to_string(ma_x);
            manifest.parameters["eta"] = std::to_string(ma_eta);
            manifest.parameters["lambda1"] = std::to_string(ma_l1);
            manifest.parameters["lambda2"] = std::to_string(ma_l2);
            manifest.parameters["epsilon"] = std::to_string(ma_eps);
            const double jv = major_arc_main_term(ma_u, ma_x, ma_eta, ma_l1, ma_l2, ma_eps);
            MajorArcBound bound = major_arc_lower_bound(ma_u, ma_x, ma_eta, ma_l1, ma_l2, ma_eps);
            json j{{"schema_version", kSchemaVersion},
                   {"J", jv},
                   {"lower_bound", bound.value},
                   {"side_conditions_hold", bound.side_conditions_hold},
                   {"satisfies_lower_bound", jv >= bound.value}};
            write_json(g.out_dir, "major_arc.json", j, manifest);
            std::cout << "J(" << ma_u << ") = " << jv << ", reference lower bound " << bound.value
                      << (bound.side_conditions_hold ? "" : " (side conditions not met)") << "\n";
        } else if (sub == cmd_integrate) {
            manifest.parameters["region"] = int_region;
            manifest.parameters["x"] = std::to_string(int_x);
            manifest.parameters["quad_tol"] = std::to_string(int_quad_tol);
            ArcIntegrandConfig cfg;
            cfg.lambda1 = int_l1;
            cfg.lambda2 = int_l2;
            cfg.mus = int_mus;
            cfg.gamma = int_gamma;
            cfg.eta = int_eta;
            cfg.epsilon = int_eps;
            const ArcRegion region = int_region == "major"   ? ArcRegion::major
                                     : int_region == "minor" ? ArcRegion::minor
                                                             : ArcRegion::trivial_truncated;
            PrimeTable table(static_cast<std::uint64_t>(int_x) + 1);
            ArcIntegral r = integrate_arcs(region, table, cfg, int_x, int_quad_tol, int_cutoff);
            json j{{"schema_version", kSchemaVersion},
                   {"region", int_region},
                   {"value_re", r.value.real()},
                   {"value_im", r.value.imag()},
                   {"quad_error_estimate", r.quad_error_estimate},
                   {"tail_bound", r.tail_bound},
                   {"cutoff", r.cutoff}};
            write_json(g.out_dir, "integrate.json", j, manifest);
            std::cout << "I(" << int_region << ") = " << r.value.real() << " + " << r.value.imag()
                      << "i  (quad err <= " << r.quad_error_estimate << ", tail <= " << r.tail_bound
                      << ")\n";
        } else if (sub == cmd_selberg) {
            manifest.parameters["x"] = std::to_string(sel_x);
            manifest.parameters["h"] = std::to_string(sel_h);
            manifest.parameters["epsilon"] = std::to_string(sel_eps);
            PrimeTable table(static_cast<std::uint64_t>(sel_x + sel_h) + 2);
            const double v = selberg_integral(table, sel_x, sel_h, sel_eps);
            const double lg = std::log(sel_x);
            const double reference = sel_h * sel_h * sel_x / (lg * lg * lg);
            json j{{"schema_version", kSchemaVersion},
                   {"X", sel_x},
                   {"h", sel_h},
                   {"epsilon", sel_eps},
                   {"value", v},
                   {"reference_h2X_log3", reference},
                   {"ratio", v / reference}};
            write_json(g.out_dir, "selberg.json", j, manifest);
            std::cout << "J(X,h) = " << v << "  (ratio to h^2 X / log^3 X: " << v / reference
                      << ")\n";
        } else if (sub == cmd_twin) {
            manifest.parameters["x"] = std::to_string(twin_x);
            manifest.parameters["epsilon"] = std::to_string(twin_eps);
            manifest.parameters["n"] = std::to_string(twin_n);
            manifest.parameters["weighted"] = twin_weighted ? "true" : "false";
            PrimeTable table(static_cast<std::uint64_t>(twin_x) + 1);
            ScaleParams params = ScaleParams::create(twin_x, twin_eps, twin_mu_norm);
            const double v = twin_pair_sum(table, params, twin_n, twin_weighted);
            json j{{"schema_version", kSchemaVersion},
                   {"X", twin_x},
                   {"epsilon", twin_eps},
                   {"n", twin_n},
                   {"weighted", twin_weighted},
                   {"value", v}};
            write_json(g.out_dir, "twin.json", j, manifest);
            std::cout << "Z(X; 2n) = " << v << "\n";
        } else if (sub == cmd_search || sub == cmd_count) {
            const bool is_search = sub == cmd_search;
            const CoeffFlags& cf = is_search ? search_coeffs : count_coeffs;
            const double X = is_search ? search_x : count_x;
            const int s = is_search ? search_s : count_s;
            const int L = is_search ? search_L : count_L;
            record_coeffs(manifest, cf);
            manifest.parameters["x"] = std::to_string(X);
            manifest.parameters["s"] = std::to_string(s);
            CoefficientConfig cfg = validate_config(cf.raw(), ValidationMode::search, prec);
            PrimeTable table(static_cast<std::uint64_t>(X) + 1);
            SearchOptions opts;
            opts.jobs = g.effective_jobs();
            if (L > 0) {
                opts.L_override = L;
            }
            if (is_search && search_limit > 0) {
                opts.limit = search_limit;
                manifest.parameters["limit"] = std::to_string(search_limit);
            }
            SearchResult r = find_solutions(cfg, table, X, s, prec, opts);
            json j{{"schema_version", kSchemaVersion},
                   {"X", X},
                   {"s", s},
                   {"L", r.L},
                   {"L_clamped", r.L_clamped},
                   {"count", r.solutions.size()},
                   {"undecided", r.undecided.size()},
                   {"truncated", r.truncated},
                   {"warnings", cfg.warnings}};
            if (is_search) {
                std::string lines;
                for (const auto& sr : r.solutions) {
                    lines += solution_json(sr).dump() + "\n";
                }
                std::filesystem::create_directories(g.out_dir);
                const std::string path =
                    (std::filesystem::path(g.out_dir) / "solutions.jsonl").string();
                std::ofstream out(path, std::ios::trunc);
                out << lines;
                manifest.outputs.push_back(path);
                json undecided = json::array();
                for (const auto& sr : r.undecided) {
                    undecided.push_back(solution_json(sr));
                }
                j["undecided_records"] = undecided;
                write_json(g.out_dir, "search.json", j, manifest);
            } else {
                write_json(g.out_dir, "count.json", j, manifest);
            }
            std::cout << "solutions: " << r.solutions.size() << " (undecided "
                      << r.undecided.size() << ", L = " << r.L << ")\n";
        } else if (sub == cmd_density) {
            record_coeffs(manifest, density_coeffs);
            manifest.parameters["s"] = std::to_string(density_s);
            CoefficientConfig cfg = validate_config(density_coeffs.raw(), ValidationMode::search, prec);
            double max_x = 0;
            for (double x : density_grid) {
                max_x = std::max(max_x, x);
            }
            PrimeTable table(static_cast<std::uint64_t>(max_x) + 1);
            SearchOptions opts;
            opts.jobs = g.effective_jobs();
            auto rows = density_report(cfg, table, density_grid, density_s, prec, opts);
            json jrows = json::array();
            std::vector<std::vector<std::string>> csv{{"X", "count", "undecided", "reference", "ratio"}};
            for (const auto& r : rows) {
                jrows.push_back(json{{"X", r.X},
                                     {"count", r.count},
                                     {"undecided", r.undecided},
                                     {"reference", r.reference},
                                     {"ratio", r.ratio}});
                csv.push_back({std::to_string(r.X), std::to_string(r.count),
                               std::to_string(r.undecided), std::to_string(r.reference),
                               std::to_string(r.ratio)});
            }
            json j{{"schema_version", kSchemaVersion}, {"s", density_s}, {"rows", jrows}};
            write_json(g.out_dir, "density.json", j, manifest);
            write_csv(g.out_dir, "density.csv", csv, manifest);
            std::cout << rows.size() << " density rows written\n";
        } else if (sub == cmd_paper) {
            // The three published instances (eta = 1, q1 = q2 = 1):
            //   sqrt(3)/-sqrt(2) (algebraic, published s0 = 61),
            //   pi/-sqrt(2)      (transcendental, published s0 = 119),
            //   Parsell baseline (published s0 = 267).
            // Note: eta = 1 violates eta < min(lambda1/a1, |lambda2/a2|) for
            // these instances; the formulas are evaluated as stated and the
            // discrepancy is reported, not reconciled.
            const RealInterval eta = RealInterval::from_int(1, prec);
            const RealInterval sqrt6 = RealInterval::from_int(6, prec).sqrt();
            const RealInterval pi_sqrt2 =
                RealInterval::pi(prec) * RealInterval::from_int(2, prec).sqrt();
            json rows = json::array();
            auto run_instance = [&](const std::string& name, const RealInterval& absll,
                                    RatioClass rc, long published, long parsell_published) {
                S0Inputs in;
                in.q1 = 1;
                in.q2 = 1;
                in.abs_lambda_product = absll;
                in.eta = eta;
                in.ratio_class = rc;
                S0Result main = compute_s0(in, BVariant::chen, prec);
                S0Result parsell = parsell_s0(in, ParsellVariant::published_25log, prec);
                rows.push_back(json{{"instance", name},
                                    {"abs_l1l2", interval_json(absll, dps)},
                                    {"eta", "1"},
                                    {"class", to_string(rc)},
                                    {"computed_s0", main.s0},
                                    {"published_s0", published},
                                    {"discrepancy", main.s0 != published},
                                    {"computed_parsell_s0", parsell.s0},
                                    {"published_parsell_s0", parsell_published},
                                    {"parsell_discrepancy", parsell.s0 != parsell_published}});
            };
            run_instance("sqrt3_minus_sqrt2", sqrt6, RatioClass::algebraic, 61, 267);
            run_instance("pi_minus_sqrt2", pi_sqrt2, RatioClass::transcendental, 119, 267);
            json j{{"schema_version", kSchemaVersion},
                   {"note",
                    "published values evaluated from the stated formulas with eta=1 and "
                    "q1=q2=1; discrepancies are reported, not reconciled (eta=1 also violates "
                    "the stated eta constraint for these instances)"},
                   {"instances", rows}};
            write_json(g.out_dir, "paper_examples.json", j, manifest);
            std::cout << "instance            computed  published  discrepancy\n";
            for (const auto& r : rows) {
                std::cout << r["instance"].get<std::string>() << "  s0=" << r["computed_s0"]
                          << "  vs " << r["published_s0"] << "  "
                          << (r["discrepancy"].get<bool>() ? "YES" : "no") << "   (Parsell "
                          << r["computed_parsell_s0"] << " vs " << r["published_parsell_s0"]
                          << ")\n";
            }
        }
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error = e.what();
        finish(0);
        throw;
    }

    if (!g.factor_cache_file.empty()) {
        cache.append_file(g.factor_cache_file);
    }
    return finish(0);
}

} // namespace
