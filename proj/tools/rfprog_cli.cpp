#include "rfprog_cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <optional>
#include <sstream>

#include "rfprog/harness.hpp"
#include "rfprog/parallel.hpp"

namespace rfprog::cli {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Request is malformed (unknown literal, bad range spec, missing flags);
// maps to exit code 2 like flag-parse errors.
struct UsageError : Error {
    using Error::Error;
};

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// input helpers
// ---------------------------------------------------------------------------

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        throw UsageError("--p-range must look like 13..61, got '" + spec + "'");
    }
    try {
        const unsigned long lo = std::stoul(spec.substr(0, dots));
        const unsigned long hi = std::stoul(spec.substr(dots + 2));
        if (lo > hi) throw UsageError("--p-range bounds are reversed: " + spec);
        return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
    } catch (const std::invalid_argument&) {
        throw UsageError("--p-range must look like 13..61, got '" + spec + "'");
    } catch (const std::out_of_range&) {
        throw UsageError("--p-range bounds out of range: " + spec);
    }
}

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Good primes for (F, G) in [lo, hi]; skipped primes are logged to err.
std::vector<std::uint32_t> good_primes_in(const RationalFunction& F,
                                          const RationalFunction& G, std::uint32_t lo,
                                          std::uint32_t hi, std::ostream& err) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = std::max<std::uint32_t>(lo, 3); q <= hi; ++q) {
        if (!is_prime_u32(q)) continue;
        const auto rep = is_good_prime(F, G, Prime(q));
        if (rep.good) {
            out.push_back(q);
        } else {
            err << "notice: skipping p=" << q << " (" << rep.diagnostic << ")\n";
        }
    }
    return out;
}

std::vector<std::uint32_t> read_set_file(const std::string& path, Prime p) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open set file: " + path);
    std::vector<std::uint32_t> set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        long long v;
        if (!(row >> v) || v < 0 || v >= static_cast<long long>(p.value())) {
            throw FileFormatError("set file entry out of [0, p): '" + line + "'");
        }
        set.push_back(static_cast<std::uint32_t>(v));
    }
    return set;
}

// Built-in literals (ones, delta0, indicator:<file>, random:pm1) or a CSV
// path. The slot distinguishes the f0/f1/f2 random streams.
GridFunction load_grid(const std::string& literal, Prime p, std::uint64_t seed,
                       unsigned slot) {
    if (literal == "ones") {
        GridFunction f(p);
        for (auto& v : f.values) v = 1.0;
        return f;
    }
    if (literal == "delta0") {
        GridFunction f(p);
        f.values[0] = 1.0;
        return f;
    }
    if (literal == "random:pm1" || literal == "random:±1") {
        CounterRng rng(seed, p.value(), 1000 + slot);
        return random_pm1(p, rng);
    }
    if (literal.rfind("indicator:", 0) == 0) {
        const auto set = read_set_file(literal.substr(10), p);
        GridFunction f(p);
        for (const std::uint32_t x : set) f.values[x] = 1.0;
        return f;
    }
    std::ifstream in(literal);
    if (!in) {
        throw UsageError("unknown grid-function literal or unreadable file: '" + literal +
                         "' (expected ones, delta0, random:pm1, indicator:<file>, or a CSV path)");
    }
    return read_grid_csv(in, p);
}

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

ordered_json complex_json(std::complex<double> z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json sweep_json(const ErrorSweep& sweep, ordered_json parameters) {
    ordered_json records = ordered_json::array();
    for (const auto& r : sweep.records) {
        ordered_json rec{{"prime", r.prime}, {"trial", r.trial}, {"statistic", r.statistic}};
        if (sweep.experiment == "base_constant") rec["xi"] = r.xi;
        if (r.set_size >= 0) {
            rec["set_size"] = r.set_size;
            rec["count"] = r.count;
            rec["half_main_ok"] = r.half_main_ok;
        }
        records.push_back(std::move(rec));
    }
    ordered_json per_prime = ordered_json::object();
    for (const auto& r : sweep.records) {
        const std::string key = std::to_string(r.prime);
        if (!per_prime.contains(key)) per_prime[key] = sweep.max_statistic(r.prime);
    }
    return ordered_json{{"experiment", sweep.experiment},
                        {"parameters", std::move(parameters)},
                        {"seed", sweep.seed},
                        {"exponent", sweep.exponent},
                        {"records", std::move(records)},
                        {"summary",
                         {{"max_statistic", sweep.max_statistic()},
                          {"max_statistic_per_prime", std::move(per_prime)}}}};
}

void emit_sweep_csv(const ErrorSweep& sweep, std::ostream& out) {
    out << "prime,trial,xi,statistic,set_size,count\n";
    for (const auto& r : sweep.records) {
        out << r.prime << ',' << r.trial << ',' << r.xi << ',' << r.statistic << ','
            << r.set_size << ',' << r.count << '\n';
    }
}

// ---------------------------------------------------------------------------
// command implementations
// ---------------------------------------------------------------------------

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    std::string format = "json";

    void emit(const ordered_json& j) const { out << j.dump() << "\n"; }
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Ctx ctx{out, err};

    CLI::App app{"three-term progression counting over prime fields"};
    app.require_subcommand(1);
    app.fallthrough(false);

    // shared option storage; each subcommand registers the flags it uses
    std::string f_str, g_str, r_str, p_range, set_path, method = "staged";
    std::string strategy = "greedy";
    std::string f0_lit = "ones", f1_lit = "ones", f2_lit = "ones";
    std::uint32_t p_value = 0;
    std::uint32_t trials = 50, restarts = 20;
    std::vector<double> densities = {0.5};
    double epsilon = -1.0;  // <= 0 means "use p^{-1/10}"
    std::uint64_t seed = 1;
    unsigned threads = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_G = true) {
        cmd->add_option("--F", f_str, "first rational function of t")->required();
        if (needs_G) {
            cmd->add_option("--G", g_str, "second rational function of t")->required();
        }
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--format", ctx.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_p = [&](CLI::App* cmd) {
        cmd->add_option("--p", p_value, "prime modulus")->required();
    };

    CLI::App* lambda_cmd = app.add_subcommand("lambda", "averaged triple correlation");
    add_common(lambda_cmd);
    add_p(lambda_cmd);
    lambda_cmd->add_option("--f0", f0_lit, "grid function literal or CSV path");
    lambda_cmd->add_option("--f1", f1_lit, "grid function literal or CSV path");
    lambda_cmd->add_option("--f2", f2_lit, "grid function literal or CSV path");
    lambda_cmd->add_option("--seed", seed, "seed for random:* literals");

    CLI::App* count_cmd = app.add_subcommand("count", "exact progression count in a set");
    add_common(count_cmd);
    add_p(count_cmd);
    count_cmd->add_option("--set", set_path, "set file, one integer per line")->required();

    CLI::App* kernel_cmd = app.add_subcommand("kernel", "full exponential-sum kernel table");
    add_common(kernel_cmd);
    add_p(kernel_cmd);

    CLI::App* roth_cmd = app.add_subcommand("roth-count", "variety point count");
    add_common(roth_cmd);
    roth_cmd->add_option("--p", p_value, "prime modulus");
    roth_cmd->add_option("--p-range", p_range, "inclusive prime range lo..hi");
    roth_cmd->add_option("--method", method, "counting algorithm")
        ->check(CLI::IsMember({"brute", "staged", "charsum"}));

    CLI::App* strat_cmd = app.add_subcommand("stratify", "variety count by stratum");
    add_common(strat_cmd);
    add_p(strat_cmd);

    CLI::App* slope_cmd = app.add_subcommand("slope", "log-log growth of the point count");
    add_common(slope_cmd);
    slope_cmd->add_option("--p-range", p_range, "inclusive prime range lo..hi")->required();
    slope_cmd->add_option("--method", method, "counting algorithm")
        ->check(CLI::IsMember({"staged", "charsum"}));

    CLI::App* verify_cmd = app.add_subcommand("verify", "inequality verifiers");
    verify_cmd->require_subcommand(1);
    CLI::App* pet_cmd = verify_cmd->add_subcommand("pet", "counting-operator bound");
    add_common(pet_cmd);
    add_p(pet_cmd);
    pet_cmd->add_option("--trials", trials, "random sign triples");
    pet_cmd->add_option("--seed", seed, "rng seed");
    CLI::App* chain_cmd = verify_cmd->add_subcommand("chain", "full bound decomposition");
    add_common(chain_cmd);
    add_p(chain_cmd);
    chain_cmd->add_option("--trials", trials, "random sign triples");
    chain_cmd->add_option("--seed", seed, "rng seed");
    chain_cmd->add_option("--epsilon", epsilon, "split level (default p^{-1/10})");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "normalized-error sweeps");
    sweep_cmd->require_subcommand(1);
    CLI::App* main_cmd = sweep_cmd->add_subcommand("main", "triple-correlation asymptotic");
    add_common(main_cmd);
    main_cmd->add_option("--p", p_value, "prime modulus");
    main_cmd->add_option("--p-range", p_range, "inclusive prime range lo..hi");
    main_cmd->add_option("--trials", trials, "random sets per prime");
    main_cmd->add_option("--density", densities, "inclusion probabilities");
    main_cmd->add_option("--seed", seed, "rng seed");
    CLI::App* base_cmd = sweep_cmd->add_subcommand("base", "twisted two-term asymptotic");
    base_cmd->add_option("--F", f_str, "first rational function of t")->required();
    base_cmd->add_option("--R", r_str, "twisting rational function of t")->required();
    base_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    base_cmd->add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    base_cmd->add_option("--p", p_value, "prime modulus");
    base_cmd->add_option("--p-range", p_range, "inclusive prime range lo..hi");
    base_cmd->add_option("--trials", trials, "random pairs per prime");
    base_cmd->add_option("--seed", seed, "rng seed");

    CLI::App* ext_cmd = app.add_subcommand("extremal", "progression-free set search");
    add_common(ext_cmd);
    add_p(ext_cmd);
    ext_cmd->add_option("--strategy", strategy, "search strategy")
        ->check(CLI::IsMember({"greedy", "hill"}));
    ext_cmd->add_option("--restarts", restarts, "independent restarts");
    ext_cmd->add_option("--seed", seed, "rng seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    set_thread_count(threads);

    auto parse_F = [&] { return parse_rational_function(f_str); };
    auto parse_G = [&] { return parse_rational_function(g_str); };

    auto primes_for = [&](const RationalFunction& F, const RationalFunction& G) {
        std::vector<std::uint32_t> primes;
        if (!p_range.empty()) {
            const auto [lo, hi] = parse_range(p_range);
            primes = good_primes_in(F, G, lo, hi, err);
            if (primes.empty()) throw Error("no good primes in range " + p_range);
        } else if (p_value != 0) {
            const Prime p(p_value);
            const auto rep = is_good_prime(F, G, p);
            if (!rep.good) {
                throw BadPrime("p=" + std::to_string(p_value) + " is not good: " +
                               rep.diagnostic);
            }
            primes = {p_value};
        } else {
            throw UsageError("either --p or --p-range is required");
        }
        return primes;
    };

    if (*lambda_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto v = lambda_counting(F, G, load_grid(f0_lit, p, seed, 0),
                                       load_grid(f1_lit, p, seed, 1),
                                       load_grid(f2_lit, p, seed, 2));
        if (ctx.format == "csv") {
            out << "re,im\n" << v.real() << ',' << v.imag() << '\n';
        } else {
            ctx.emit(ordered_json{{"value", complex_json(v)}});
        }
        return 0;
    }

    if (*count_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto set = read_set_file(set_path, p);
        std::vector<std::uint8_t> mask(p.value(), 0);
        for (const std::uint32_t x : set) mask[x] = 1;
        const auto n = count_progressions_in_set(F, G, mask, p);
        if (ctx.format == "csv") {
            out << "prime,set_size,count\n" << p.value() << ',' << set.size() << ',' << n
                << '\n';
        } else {
            ctx.emit(ordered_json{
                {"prime", p.value()}, {"set_size", set.size()}, {"count", n}});
        }
        return 0;
    }

    if (*kernel_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const KernelTable k = kernel_table(F, G, p);
        if (ctx.format == "csv") {
            out << "n1,n2,re,im\n";
            for (std::uint32_t n1 = 0; n1 < p.value(); ++n1) {
                for (std::uint32_t n2 = 0; n2 < p.value(); ++n2) {
                    const auto z = k.at(n1, n2);
                    out << n1 << ',' << n2 << ',' << z.real() << ',' << z.imag() << '\n';
                }
            }
        } else {
            ordered_json rows = ordered_json::array();
            for (std::uint32_t n1 = 0; n1 < p.value(); ++n1) {
                ordered_json row = ordered_json::array();
                for (std::uint32_t n2 = 0; n2 < p.value(); ++n2) {
                    const auto z = k.at(n1, n2);
                    row.push_back(ordered_json::array({z.real(), z.imag()}));
                }
                rows.push_back(std::move(row));
            }
            ctx.emit(ordered_json{{"prime", p.value()},
                                  {"excluded_count", k.excluded_count},
                                  {"entries", std::move(rows)}});
        }
        return 0;
    }

    if (*roth_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const auto primes = primes_for(F, G);
        ordered_json results = ordered_json::array();
        if (ctx.format == "csv") out << "prime,method,count,wall_time_ms\n";
        for (const std::uint32_t q : primes) {
            const Prime p(q);
            const auto start = Clock::now();
            std::int64_t count;
            if (method == "brute") {
                count = count_points_brute(RothEquations(F, G, p));
            } else if (method == "staged") {
                count = count_points_staged(RothEquations(F, G, p));
            } else {
                count = count_points_charsum(F, G, p).count;
            }
            const double ms = ms_since(start);
            if (ctx.format == "csv") {
                out << q << ',' << method << ',' << count << ',' << ms << '\n';
            } else {
                results.push_back(ordered_json{{"prime", q},
                                               {"method", method},
                                               {"count", count},
                                               {"wall_time_ms", ms}});
            }
        }
        if (ctx.format != "csv") {
            ctx.emit(results.size() == 1 ? results[0] : results);
        }
        return 0;
    }

    if (*strat_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto start = Clock::now();
        const StratumCounts s = stratify_points(F, G, p);
        const double ms = ms_since(start);
        if (ctx.format == "csv") {
            out << "prime,total,y_gen,y_low,z_good,z_bad,z_low\n"
                << p.value() << ',' << s.total << ',' << s.y_gen << ',' << s.y_low << ','
                << s.z_good << ',' << s.z_bad << ',' << s.z_low << '\n';
        } else {
            ctx.emit(ordered_json{{"prime", p.value()},
                                  {"method", "staged"},
                                  {"count", s.total},
                                  {"strata",
                                   {{"y_gen", s.y_gen},
                                    {"y_low", s.y_low},
                                    {"z_good", s.z_good},
                                    {"z_bad", s.z_bad},
                                    {"z_low", s.z_low}}},
                                  {"wall_time_ms", ms}});
        }
        return 0;
    }

    if (*slope_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const auto primes = primes_for(F, G);
        const auto fit = slope_regression(
            F, G, primes, method == "staged" ? CountMethod::Staged : CountMethod::Charsum);
        if (ctx.format == "csv") {
            out << "prime,count\n";
            for (std::size_t i = 0; i < fit.primes.size(); ++i) {
                out << fit.primes[i] << ',' << fit.counts[i] << '\n';
            }
        } else {
            ordered_json records = ordered_json::array();
            for (std::size_t i = 0; i < fit.primes.size(); ++i) {
                records.push_back(
                    ordered_json{{"prime", fit.primes[i]}, {"count", fit.counts[i]}});
            }
            ctx.emit(ordered_json{
                {"experiment", "slope"},
                {"parameters",
                 {{"F", f_str}, {"G", g_str}, {"method", method}, {"p_range", p_range}}},
                {"records", std::move(records)},
                {"summary",
                 {{"slope", fit.slope}, {"constant", fit.constant},
                  {"residual", fit.residual}}}});
        }
        return 0;
    }

    if (*pet_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto rep = is_good_prime(F, G, p);
        if (!rep.good) throw BadPrime("p=" + std::to_string(p_value) + ": " + rep.diagnostic);
        const std::int64_t y_count = count_points_charsum(F, G, p).count;
        std::uint32_t violations = 0;
        double max_ratio = 0.0;
        ordered_json records = ordered_json::array();
        if (ctx.format == "csv") out << "trial,lhs,rhs,ratio\n";
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            CounterRng rng(seed, p.value(), trial);
            const GridFunction f0 = random_pm1(p, rng);
            const GridFunction f1 = random_pm1(p, rng);
            const GridFunction f2 = random_pm1(p, rng);
            const PetReport r = verify_pet_inequality(F, G, f0, f1, f2, y_count);
            max_ratio = std::max(max_ratio, r.ratio);
            if (r.ratio > 1.0 + 1e-9) ++violations;
            if (ctx.format == "csv") {
                out << trial << ',' << r.lhs << ',' << r.rhs << ',' << r.ratio << '\n';
            } else {
                records.push_back(ordered_json{
                    {"trial", trial}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}});
            }
        }
        if (ctx.format != "csv") {
            ctx.emit(ordered_json{
                {"experiment", "verify_pet"},
                {"parameters",
                 {{"F", f_str}, {"G", g_str}, {"p", p.value()}, {"trials", trials},
                  {"y_count", y_count}}},
                {"seed", seed},
                {"records", std::move(records)},
                {"summary", {{"max_ratio", max_ratio}, {"violations", violations}}}});
        }
        return violations == 0 ? 0 : 1;
    }

    if (*chain_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto rep = is_good_prime(F, G, p);
        if (!rep.good) throw BadPrime("p=" + std::to_string(p_value) + ": " + rep.diagnostic);
        const std::int64_t y_count = count_points_charsum(F, G, p).count;
        const std::optional<double> eps =
            epsilon > 0.0 ? std::optional<double>(epsilon) : std::nullopt;
        std::uint32_t violations = 0;
        ordered_json records = ordered_json::array();
        if (ctx.format == "csv") {
            out << "trial,deviation,bound_total,base_term,g_term,h_term,holds\n";
        }
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            CounterRng rng(seed, p.value(), trial);
            const GridFunction f0 = random_pm1(p, rng);
            const GridFunction f1 = random_pm1(p, rng);
            const GridFunction f2 = random_pm1(p, rng);
            const ProofChainReport r = proof_chain_report(F, G, f0, f1, f2, eps, y_count);
            if (!r.holds) ++violations;
            if (ctx.format == "csv") {
                out << trial << ',' << r.deviation << ',' << r.bound_total << ','
                    << r.base_term << ',' << r.g_term << ',' << r.h_term << ','
                    << (r.holds ? 1 : 0) << '\n';
            } else {
                records.push_back(ordered_json{{"trial", trial},
                                               {"epsilon", r.epsilon},
                                               {"deviation", r.deviation},
                                               {"base_term", r.base_term},
                                               {"g_term", r.g_term},
                                               {"h_term", r.h_term},
                                               {"bound_total", r.bound_total},
                                               {"dual_constant", r.dual_constant},
                                               {"holds", r.holds}});
            }
        }
        if (ctx.format != "csv") {
            ctx.emit(ordered_json{
                {"experiment", "verify_chain"},
                {"parameters",
                 {{"F", f_str}, {"G", g_str}, {"p", p.value()}, {"trials", trials},
                  {"y_count", y_count}}},
                {"seed", seed},
                {"records", std::move(records)},
                {"summary", {{"violations", violations}}}});
        }
        return violations == 0 ? 0 : 1;
    }

    if (*main_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const auto primes = primes_for(F, G);
        ordered_json all = ordered_json::array();
        // density probe: smallest swept density whose every trial reaches
        // count >= |A|^3 / (2p)
        double probe_density = -1.0;
        std::sort(densities.begin(), densities.end());
        for (const double density : densities) {
            const auto sweep = main_theorem_sweep(F, G, primes, trials, density, seed);
            bool all_ok = true;
            for (const auto& r : sweep.records) {
                if (r.set_size > 0 && !r.half_main_ok) all_ok = false;
            }
            if (all_ok && probe_density < 0.0) probe_density = density;
            if (ctx.format == "csv") {
                emit_sweep_csv(sweep, out);
            } else {
                all.push_back(sweep_json(sweep, ordered_json{{"F", f_str},
                                                             {"G", g_str},
                                                             {"trials", trials},
                                                             {"density", density}}));
            }
        }
        if (ctx.format != "csv") {
            if (all.size() == 1) {
                ctx.emit(all[0]);
            } else {
                ctx.emit(ordered_json{{"experiment", "main_theorem_density_probe"},
                                      {"smallest_density_with_half_main", probe_density},
                                      {"sweeps", std::move(all)}});
            }
        }
        return 0;
    }

    if (*base_cmd) {
        const auto F = parse_F();
        const auto R = parse_rational_function(r_str);
        const auto primes = primes_for(F, R);
        const auto sweep = base_constant_sweep(F, R, primes, trials, seed);
        if (ctx.format == "csv") {
            emit_sweep_csv(sweep, out);
        } else {
            ctx.emit(sweep_json(
                sweep, ordered_json{{"F", f_str}, {"R", r_str}, {"trials", trials}}));
        }
        return 0;
    }

    if (*ext_cmd) {
        const auto F = parse_F();
        const auto G = parse_G();
        const Prime p(p_value);
        const auto res = extremal_search(
            F, G, p, strategy == "hill" ? SearchStrategy::Hill : SearchStrategy::Greedy,
            restarts, seed);
        const bool verified = is_progression_free(F, G, p, res.best_set);
        if (ctx.format == "csv") {
            // one element per line: the output is itself a valid set file
            for (const std::uint32_t x : res.best_set) out << x << '\n';
        } else {
            ctx.emit(ordered_json{{"experiment", "extremal"},
                                  {"parameters",
                                   {{"F", f_str}, {"G", g_str}, {"p", p.value()},
                                    {"strategy", strategy}, {"restarts", restarts}}},
                                  {"seed", seed},
                                  {"size", res.best_set.size()},
                                  {"set", res.best_set},
                                  {"restart_sizes", res.restart_sizes},
                                  {"verified", verified}});
        }
        return verified ? 0 : 1;
    }

    throw Error("no command selected");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        err << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const DependentInput& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NonpositiveEpsilon& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedExponent& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FileFormatError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, out, err);
}

}  // namespace rfprog::cli
