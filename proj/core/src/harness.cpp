#include "rfprog/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rfprog/summation.hpp"

namespace rfprog {

double ErrorSweep::max_statistic(std::uint32_t prime) const {
    double m = 0.0;
    for (const auto& r : records) {
        if (r.prime == prime) m = std::max(m, r.statistic);
    }
    return m;
}

double ErrorSweep::max_statistic() const {
    double m = 0.0;
    for (const auto& r : records) m = std::max(m, r.statistic);
    return m;
}

SlopeFit fit_power_law(const std::vector<std::uint32_t>& primes,
                       const std::vector<std::int64_t>& counts) {
    if (primes.size() < 3) {
        throw InsufficientData("slope regression needs at least 3 primes, got " +
                               std::to_string(primes.size()));
    }
    if (primes.size() != counts.size()) throw Error("primes/counts length mismatch");
    for (std::size_t i = 0; i + 1 < primes.size(); ++i) {
        if (primes[i] >= primes[i + 1]) throw Error("primes must be strictly increasing");
    }
    const std::size_t n = primes.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (counts[i] <= 0) throw Error("counts must be positive for a log-log fit");
        lx[i] = std::log(static_cast<double>(primes[i]));
        ly[i] = std::log(static_cast<double>(counts[i]));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.primes = primes;
    fit.counts = counts;
    fit.slope = sxy / sxx;
    // geometric mean of count / p^slope
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += ly[i] - fit.slope * lx[i];
    fit.constant = std::exp(acc / n);
    double rss = 0.0;
    const double intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.slope * lx[i] + intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

SlopeFit slope_regression(const RationalFunction& F, const RationalFunction& G,
                          const std::vector<std::uint32_t>& primes, CountMethod method) {
    if (primes.size() < 3) {
        throw InsufficientData("slope regression needs at least 3 primes, got " +
                               std::to_string(primes.size()));
    }
    std::vector<std::int64_t> counts;
    counts.reserve(primes.size());
    for (const std::uint32_t q : primes) {
        const Prime p(q);
        if (method == CountMethod::Staged) {
            counts.push_back(count_points_staged(RothEquations(F, G, p)));
        } else {
            counts.push_back(count_points_charsum(F, G, p).count);
        }
    }
    return fit_power_law(primes, counts);
}

GridFunction random_pm1(Prime p, CounterRng& rng) {
    GridFunction f(p);
    for (auto& v : f.values) v = static_cast<double>(rng.next_sign());
    return f;
}

std::vector<std::uint8_t> random_subset(Prime p, double density, CounterRng& rng) {
    std::vector<std::uint8_t> mask(p.value(), 0);
    for (auto& m : mask) m = rng.next_unit() < density ? 1 : 0;
    return mask;
}

ErrorSweep main_theorem_sweep(const RationalFunction& F, const RationalFunction& G,
                              const std::vector<std::uint32_t>& primes,
                              std::uint32_t trials, double density, std::uint64_t seed) {
    ErrorSweep sweep;
    sweep.experiment = "main_theorem";
    sweep.exponent = 0.1;
    sweep.seed = seed;
    for (const std::uint32_t q : primes) {
        const Prime p(q);
        const GoodPrimeReport rep = is_good_prime(F, G, p);
        if (!rep) throw BadPrime("p=" + std::to_string(q) + " is not good: " + rep.diagnostic);
        const PairTables tables = PairTables::build(F, G, p);
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            CounterRng rng(seed, q, trial);
            const auto mask = random_subset(p, density, rng);
            const std::int64_t size =
                std::count(mask.begin(), mask.end(), static_cast<std::uint8_t>(1));
            SweepRecord rec;
            rec.prime = q;
            rec.trial = trial;
            rec.set_size = size;
            if (size == 0) {
                // empty set: 0/0 guarded to 0 by convention
                sweep.records.push_back(rec);
                continue;
            }
            GridFunction ind(p);
            for (std::uint32_t x = 0; x < q; ++x) ind.values[x] = mask[x] ? 1.0 : 0.0;
            const std::complex<double> lam = lambda_counting(tables, ind, ind, ind);
            const double dens = static_cast<double>(size) / q;
            const double main = dens * dens * dens;
            const double l2 = std::sqrt(dens);
            rec.norm_product = l2 * l2 * l2;
            rec.statistic = std::abs(lam - main) * std::pow(static_cast<double>(q), 0.1) /
                            rec.norm_product;
            rec.count = count_progressions_in_set(F, G, mask, p);
            rec.half_main_ok =
                static_cast<double>(rec.count) >=
                0.5 * static_cast<double>(size) * size * size / static_cast<double>(q);
            sweep.records.push_back(rec);
        }
    }
    return sweep;
}

std::uint32_t primitive_root(Prime p) {
    const std::uint32_t q = p.value();
    // factor q-1 by trial division
    std::vector<std::uint32_t> factors;
    std::uint32_t m = q - 1;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= m; ++d) {
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) factors.push_back(m);
    auto pow_mod = [q](std::uint64_t base, std::uint32_t exp) {
        std::uint64_t acc = 1;
        base %= q;
        while (exp) {
            if (exp & 1u) acc = acc * base % q;
            base = base * base % q;
            exp >>= 1u;
        }
        return static_cast<std::uint32_t>(acc);
    };
    for (std::uint32_t g = 2; g < q; ++g) {
        bool ok = true;
        for (const std::uint32_t f : factors) {
            if (pow_mod(g, (q - 1) / f) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("no primitive root found (impossible for prime p)");
}

ErrorSweep base_constant_sweep(const RationalFunction& F, const RationalFunction& R,
                               const std::vector<std::uint32_t>& primes,
                               std::uint32_t trials, std::uint64_t seed) {
    if (!check_linear_independence(F, R)) {
        throw DependentInput("{1, F, R} are linearly dependent over Q");
    }
    ErrorSweep sweep;
    sweep.experiment = "base_constant";
    sweep.exponent = 0.5;
    sweep.seed = seed;
    for (const std::uint32_t q : primes) {
        const Prime p(q);
        const std::uint32_t root = primitive_root(p);
        std::vector<std::uint32_t> xis = {0, 1, root};
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            CounterRng rng(seed, q, trial);
            const GridFunction f0 = random_pm1(p, rng);
            const GridFunction f1 = random_pm1(p, rng);
            for (const std::uint32_t xi : xis) {
                const TwistedResult r = twisted_two_term(F, R, f0, f1, FieldElement(xi, p));
                SweepRecord rec;
                rec.prime = q;
                rec.trial = trial;
                rec.xi = xi;
                rec.statistic = r.normalized_error;
                rec.norm_product = norm_probability(f0, 2.0) * norm_probability(f1, 2.0);
                sweep.records.push_back(rec);
            }
        }
    }
    return sweep;
}

ProofChainReport proof_chain_report(const RationalFunction& F, const RationalFunction& G,
                                    const GridFunction& f0, const GridFunction& f1,
                                    const GridFunction& f2, std::optional<double> epsilon,
                                    std::optional<std::int64_t> y_count) {
    const Prime p = f0.prime;
    if (f1.prime != p || f2.prime != p) throw PrimeMismatch("proof_chain: prime mismatch");
    const std::uint32_t q = p.value();
    const double pd = static_cast<double>(q);
    ProofChainReport rep;
    rep.epsilon = epsilon.value_or(std::pow(pd, -0.1));
    if (!(rep.epsilon > 0.0)) throw NonpositiveEpsilon("epsilon must be > 0");
    rep.y_count = y_count ? *y_count : count_points_charsum(F, G, p).count;

    const PairTables tables = PairTables::build(F, G, p);

    auto mean = [q](const GridFunction& f) {
        ComplexCompensatedSum acc;
        for (const auto& v : f.values) acc.add(v);
        return acc.value() / static_cast<double>(q);
    };
    const std::complex<double> mu0 = mean(f0), mu1 = mean(f1), mu2 = mean(f2);
    rep.main_term = mu0 * mu1 * mu2;
    rep.actual_lambda = lambda_counting(tables, f0, f1, f2);
    rep.deviation = std::abs(rep.actual_lambda - rep.main_term);

    // Base part: Lambda(f0, f1, mu2) = mu2 * two-term average; its exact
    // deviation from the product of means is the base term.
    GridFunction ones(p);
    for (auto& v : ones.values) v = 1.0;
    const std::complex<double> two_term = lambda_counting(tables, f0, f1, ones);
    rep.base_term = std::abs(mu2 * two_term - rep.main_term);

    // Balanced third function.
    GridFunction f2p(p);
    for (std::uint32_t x = 0; x < q; ++x) f2p.values[x] = f2.values[x] - mu2;

    // Level-set split of f0.
    const LevelSplit split = level_set_split(f0, rep.epsilon);
    const GridFunction g_part = inverse_dft(split.g);
    const GridFunction h_part = inverse_dft(split.h);

    // Dual-function control of the g part.
    const GridFunction dual = dual_function(F, G, f1, f2p);
    const Spectrum dual_hat = dft(dual);
    const double dual_linf = norm_counting(dual_hat, std::numeric_limits<double>::infinity());
    const double g_l1 = norm_counting(split.g, 1.0);
    rep.g_term = g_l1 * dual_linf;
    rep.g_actual = std::abs(lambda_counting(tables, g_part, f1, f2p));

    const double n1 = norm_probability(f1, 2.0);
    const double n2p = norm_probability(f2p, 2.0);
    rep.dual_constant = (n1 > 0.0 && n2p > 0.0)
                            ? dual_linf * std::sqrt(pd) / (n1 * n2p)
                            : 0.0;

    // Counting-operator bound controls the h part.
    const double h_l2 = norm_probability(h_part, 2.0);
    const double h_l4 = norm_counting(split.h, 4.0);
    rep.h_term = std::sqrt(h_l2) * std::sqrt(h_l4) * n1 * n2p *
                 std::pow(static_cast<double>(rep.y_count) / (pd * pd * pd), 0.125);
    rep.h_actual = std::abs(lambda_counting(tables, h_part, f1, f2p));

    rep.bound_total = rep.base_term + rep.g_term + rep.h_term;
    rep.holds = rep.deviation <= rep.bound_total * (1.0 + 1e-9) + 1e-12;
    return rep;
}

namespace {

// All progressions that would exist in `member` if x were added: patterns
// where x is the base, the middle, or the top element.
bool insertion_blocked(const std::vector<std::uint8_t>& member, std::uint32_t x,
                       const PairTables& t) {
    const std::uint32_t p = t.prime.value();
    auto in = [&](std::uint32_t v) { return v == x || member[v] != 0; };
    for (const std::uint32_t y : t.non_pole) {
        const std::uint32_t a = t.first.values[y];
        const std::uint32_t b = t.second.values[y];
        if (a == 0 && b == 0) continue;  // trivial pattern
        const std::uint32_t xa = x + a >= p ? x + a - p : x + a;
        const std::uint32_t xb = x + b >= p ? x + b - p : x + b;
        if (in(xa) && in(xb)) return true;  // x as base
        const std::uint32_t base_mid = x >= a ? x - a : x + p - a;
        const std::uint32_t mid_top = base_mid + b >= p ? base_mid + b - p : base_mid + b;
        if (in(base_mid) && in(mid_top)) return true;  // x as middle
        const std::uint32_t base_top = x >= b ? x - b : x + p - b;
        const std::uint32_t top_mid = base_top + a >= p ? base_top + a - p : base_top + a;
        if (in(base_top) && in(top_mid)) return true;  // x as top
    }
    return false;
}

std::vector<std::uint32_t> greedy_fill(const PairTables& t, std::vector<std::uint8_t>& member,
                                       const std::vector<std::uint32_t>& order) {
    std::vector<std::uint32_t> added;
    for (const std::uint32_t x : order) {
        if (member[x]) continue;
        if (!insertion_blocked(member, x, t)) {
            member[x] = 1;
            added.push_back(x);
        }
    }
    return added;
}

std::vector<std::uint32_t> shuffled_indices(std::uint32_t p, CounterRng& rng) {
    std::vector<std::uint32_t> order(p);
    for (std::uint32_t i = 0; i < p; ++i) order[i] = i;
    for (std::uint32_t i = p; i > 1; --i) {
        const std::uint32_t j = rng.next_below(i);
        std::swap(order[i - 1], order[j]);
    }
    return order;
}

}  // namespace

bool is_progression_free(const RationalFunction& F, const RationalFunction& G, Prime p,
                         const std::vector<std::uint32_t>& set) {
    const PairTables t = PairTables::build(F, G, p);
    std::vector<std::uint8_t> member(p.value(), 0);
    for (const std::uint32_t x : set) member.at(x) = 1;
    const std::uint32_t n = p.value();
    for (const std::uint32_t y : t.non_pole) {
        const std::uint32_t a = t.first.values[y];
        const std::uint32_t b = t.second.values[y];
        if (a == 0 && b == 0) continue;  // trivial
        for (std::uint32_t x = 0; x < n; ++x) {
            if (!member[x]) continue;
            const std::uint32_t xa = x + a >= n ? x + a - n : x + a;
            const std::uint32_t xb = x + b >= n ? x + b - n : x + b;
            if (member[xa] && member[xb]) return false;
        }
    }
    return true;
}

ExtremalResult extremal_search(const RationalFunction& F, const RationalFunction& G,
                               Prime p, SearchStrategy strategy, std::uint32_t restarts,
                               std::uint64_t seed) {
    const PairTables t = PairTables::build(F, G, p);
    const std::uint32_t n = p.value();
    ExtremalResult result;
    std::size_t best = 0;
    for (std::uint32_t r = 0; r < restarts; ++r) {
        CounterRng rng(seed, p.value(), r);
        std::vector<std::uint8_t> member(n, 0);
        greedy_fill(t, member, shuffled_indices(n, rng));
        if (strategy == SearchStrategy::Hill) {
            // perturb-and-refill: drop a random tenth, refill greedily,
            // keep the move when the set does not shrink
            const std::uint32_t iterations = 30;
            for (std::uint32_t it = 0; it < iterations; ++it) {
                std::vector<std::uint8_t> trial = member;
                std::vector<std::uint32_t> present;
                for (std::uint32_t x = 0; x < n; ++x) {
                    if (trial[x]) present.push_back(x);
                }
                const std::size_t drop = std::max<std::size_t>(1, present.size() / 10);
                for (std::size_t d = 0; d < drop && !present.empty(); ++d) {
                    const std::uint32_t pick =
                        rng.next_below(static_cast<std::uint32_t>(present.size()));
                    trial[present[pick]] = 0;
                    present.erase(present.begin() + pick);
                }
                greedy_fill(t, trial, shuffled_indices(n, rng));
                const auto size_of = [n](const std::vector<std::uint8_t>& m) {
                    std::size_t s = 0;
                    for (std::uint32_t x = 0; x < n; ++x) s += m[x];
                    return s;
                };
                if (size_of(trial) >= size_of(member)) member = std::move(trial);
            }
        }
        std::vector<std::uint32_t> set;
        for (std::uint32_t x = 0; x < n; ++x) {
            if (member[x]) set.push_back(x);
        }
        result.restart_sizes.push_back(static_cast<std::uint32_t>(set.size()));
        if (!is_progression_free(F, G, p, set)) {
            throw Error("extremal search produced a set that fails the exhaustive check");
        }
        if (set.size() > best) {
            best = set.size();
            result.best_set = std::move(set);
        }
    }
    return result;
}

}  // namespace rfprog
