#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfprog/progression.hpp"
#include "rfprog/rng.hpp"
#include "rfprog/roth_variety.hpp"

namespace rfprog {

// Least-squares fit of log(count) against log(p).
struct SlopeFit {
    std::vector<std::uint32_t> primes;
    std::vector<std::int64_t> counts;
    double slope = 0.0;
    double constant = 0.0;  // geometric mean of count / p^slope
    double residual = 0.0;  // RMS residual of the log-log fit
};

enum class CountMethod { Staged, Charsum };

SlopeFit slope_regression(const RationalFunction& F, const RationalFunction& G,
                          const std::vector<std::uint32_t>& primes,
                          CountMethod method = CountMethod::Charsum);

// Fit on caller-supplied counts (used for synthetic data and tests).
SlopeFit fit_power_law(const std::vector<std::uint32_t>& primes,
                       const std::vector<std::int64_t>& counts);

// One record of a normalized-error sweep. Reproducible from (seed, prime,
// trial) alone.
struct SweepRecord {
    std::uint32_t prime = 0;
    std::uint32_t trial = 0;
    std::uint32_t xi = 0;        // base sweeps only
    double statistic = 0.0;      // p^exponent * |error| / norm product
    double norm_product = 0.0;
    std::int64_t set_size = -1;      // main sweeps only
    std::int64_t count = -1;         // exact progression count (main sweeps)
    bool half_main_ok = false;       // count >= |A|^3 / (2p) (main sweeps)
};

struct ErrorSweep {
    std::string experiment;
    double exponent = 0.0;  // normalization power of p
    std::uint64_t seed = 0;
    std::vector<SweepRecord> records;

    double max_statistic(std::uint32_t prime) const;
    double max_statistic() const;
};

// Theorem-level sweep: random sets A of the given density, statistic
// p^{1/10} |Lambda*(1_A,1_A,1_A) - (|A|/p)^3| / ||1_A||_2^3 (0 for empty A).
ErrorSweep main_theorem_sweep(const RationalFunction& F, const RationalFunction& G,
                              const std::vector<std::uint32_t>& primes,
                              std::uint32_t trials, double density, std::uint64_t seed);

// Base-case sweep: random +-1 pairs (f0, f1), xi in {0, 1, g} for a
// primitive root g, statistic sqrt(p) |twisted - main| / (||f0||_2 ||f1||_2).
ErrorSweep base_constant_sweep(const RationalFunction& F, const RationalFunction& R,
                               const std::vector<std::uint32_t>& primes,
                               std::uint32_t trials, std::uint64_t seed);

// Executes the bound decomposition at split level epsilon and records
// every intermediate bound:
//   actual - main = base_exact + Lambda(g_part) + Lambda(h_part),
//   |Lambda(g_part)| <= ||g||_l1 ||dual_hat||_linf            (g_term)
//   |Lambda(h_part)| <= counting-operator bound with |Y(F_p)|  (h_term)
// so |actual - main| <= base_term + g_term + h_term unconditionally.
struct ProofChainReport {
    double epsilon = 0.0;
    std::int64_t y_count = 0;
    std::complex<double> actual_lambda;
    std::complex<double> main_term;
    double deviation = 0.0;
    double base_term = 0.0;
    double g_term = 0.0;
    double h_term = 0.0;
    double bound_total = 0.0;
    double g_actual = 0.0;        // |Lambda(g_part, f1, f2')|, must be <= g_term
    double h_actual = 0.0;        // |Lambda(h_part, f1, f2')|, must be <= h_term
    double dual_constant = 0.0;   // ||dual_hat||_linf sqrt(p)/(||f1||_2 ||f2'||_2), recorded
    bool holds = false;           // deviation <= bound_total (+fp slack)
};

ProofChainReport proof_chain_report(const RationalFunction& F, const RationalFunction& G,
                                    const GridFunction& f0, const GridFunction& f1,
                                    const GridFunction& f2,
                                    std::optional<double> epsilon = std::nullopt,
                                    std::optional<std::int64_t> y_count = std::nullopt);

// Progression-free set search. A pair (x, y) is a nontrivial progression in
// A when x, x+F(y), x+G(y) are all in A and not (F(y) = 0 and G(y) = 0).
enum class SearchStrategy { Greedy, Hill };

struct ExtremalResult {
    std::vector<std::uint32_t> best_set;  // ascending
    std::vector<std::uint32_t> restart_sizes;
};

ExtremalResult extremal_search(const RationalFunction& F, const RationalFunction& G,
                               Prime p, SearchStrategy strategy, std::uint32_t restarts,
                               std::uint64_t seed);

// Exhaustive progression check, independent of the search moves.
bool is_progression_free(const RationalFunction& F, const RationalFunction& G, Prime p,
                         const std::vector<std::uint32_t>& set);

// Random +-1 grid function and random subset mask from a counter generator.
GridFunction random_pm1(Prime p, CounterRng& rng);
std::vector<std::uint8_t> random_subset(Prime p, double density, CounterRng& rng);

// Least primitive root mod p.
std::uint32_t primitive_root(Prime p);

}  // namespace rfprog
