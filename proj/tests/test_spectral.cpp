#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "rfprog/rng.hpp"
#include "rfprog/spectral.hpp"

using namespace rfprog;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GridFunction ones(Prime p) {
    GridFunction f(p);
    for (auto& v : f.values) v = 1.0;
    return f;
}

GridFunction delta0(Prime p) {
    GridFunction f(p);
    f.values[0] = 1.0;
    return f;
}

GridFunction random_pm1_fn(Prime p, std::uint64_t seed, std::uint64_t trial) {
    CounterRng rng(seed, p.value(), trial);
    GridFunction f(p);
    for (auto& v : f.values) v = (rng.next() & 1) ? 1.0 : -1.0;
    return f;
}

double max_err(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("dft of elementary functions") {
    const Prime p(7);

    SUBCASE("constant maps to a single spike at frequency 0") {
        const Spectrum s = dft(ones(p));
        CHECK(std::abs(s.coefficients[0] - 1.0) < 1e-12);
        for (std::uint32_t xi = 1; xi < 7; ++xi) {
            CHECK(std::abs(s.coefficients[xi]) < 1e-12);
        }
    }

    SUBCASE("point mass spreads to the flat spectrum 1/p") {
        const Spectrum s = dft(delta0(p));
        for (std::uint32_t xi = 0; xi < 7; ++xi) {
            CHECK(std::abs(s.coefficients[xi] - 1.0 / 7) < 1e-12);
        }
    }

    SUBCASE("characters are frequency indicators") {
        const CharacterTable chars(p);
        for (std::uint32_t c = 0; c < 7; ++c) {
            GridFunction f(p);
            for (std::uint32_t x = 0; x < 7; ++x) {
                f.values[x] = chars(static_cast<std::uint64_t>(c) * x);
            }
            const Spectrum s = dft(f);
            for (std::uint32_t xi = 0; xi < 7; ++xi) {
                const double want = xi == c ? 1.0 : 0.0;
                CHECK(std::abs(s.coefficients[xi] - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("inverse dft") {
    const Prime p(11);

    Spectrum spike(p);
    spike.coefficients[0] = 1.0;
    const GridFunction back = inverse_dft(spike);
    for (const auto& v : back.values) CHECK(std::abs(v - 1.0) < 1e-12);

    Spectrum flat(p);
    for (auto& c : flat.coefficients) c = 1.0 / 11;
    const GridFunction d = inverse_dft(flat);
    CHECK(std::abs(d.values[0] - 1.0) < 1e-12);
    for (std::uint32_t x = 1; x < 11; ++x) CHECK(std::abs(d.values[x]) < 1e-12);

    // round trip on random data
    const GridFunction f = random_pm1_fn(p, 5, 0);
    const GridFunction rt = inverse_dft(dft(f));
    CHECK(max_err(f.values, rt.values) < 1e-9);
}

TEST_CASE("dft is linear") {
    const Prime p(31);
    const GridFunction f = random_pm1_fn(p, 9, 0);
    const GridFunction g = random_pm1_fn(p, 9, 1);
    const std::complex<double> a{2.0, -1.0}, b{-0.5, 3.0};
    GridFunction combo(p);
    for (std::uint32_t x = 0; x < 31; ++x) {
        combo.values[x] = a * f.values[x] + b * g.values[x];
    }
    const Spectrum sf = dft(f), sg = dft(g), sc = dft(combo);
    for (std::uint32_t xi = 0; xi < 31; ++xi) {
        CHECK(std::abs(sc.coefficients[xi] -
                       (a * sf.coefficients[xi] + b * sg.coefficients[xi])) < 1e-9);
    }
}

TEST_CASE("norm examples") {
    const Prime p(5);
    CHECK(norm_probability(ones(p), 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    const GridFunction d = delta0(p);
    CHECK(norm_probability(d, 2.0) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));

    const Spectrum s = dft(d);
    CHECK(norm_counting(s, 4.0) ==
          doctest::Approx(std::pow(5.0, -0.75)).epsilon(1e-12));

    CHECK(norm_probability(d, kInf) == doctest::Approx(1.0));
    CHECK(norm_probability(d, 1.0) == doctest::Approx(0.2).epsilon(1e-12));

    CHECK_THROWS_AS(norm_probability(d, 3.0), UnsupportedExponent);
    CHECK_THROWS_AS(norm_counting(s, 0.5), UnsupportedExponent);
}

TEST_CASE("parseval across primes") {
    for (const std::uint32_t q : {5u, 11u, 31u, 101u}) {
        const Prime p(q);
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            CounterRng rng(17, q, trial);
            GridFunction f(p);
            for (auto& v : f.values) {
                v = {2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
            }
            const double lhs = norm_probability(f, 2.0);
            const double rhs = norm_counting(dft(f), 2.0);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, lhs));
        }
    }
}

TEST_CASE("level set split") {
    SUBCASE("strict threshold: boundary coefficients stay in h") {
        // point mass at p=5, eps=1: threshold 0.2 equals every |f_hat|
        const Prime p(5);
        const LevelSplit split = level_set_split(delta0(p), 1.0);
        CHECK(split.threshold == doctest::Approx(0.2).epsilon(1e-12));
        for (std::uint32_t xi = 0; xi < 5; ++xi) {
            CHECK(std::abs(split.g.coefficients[xi]) == 0.0);
            CHECK(std::abs(split.h.coefficients[xi] - 0.2) < 1e-12);
        }
    }

    SUBCASE("zero function splits into zeros") {
        const Prime p(7);
        const LevelSplit split = level_set_split(GridFunction(p), 0.5);
        for (std::uint32_t xi = 0; xi < 7; ++xi) {
            CHECK(std::abs(split.g.coefficients[xi]) == 0.0);
            CHECK(std::abs(split.h.coefficients[xi]) == 0.0);
        }
    }

    SUBCASE("epsilon must be positive") {
        const Prime p(5);
        CHECK_THROWS_AS(level_set_split(delta0(p), 0.0), NonpositiveEpsilon);
        CHECK_THROWS_AS(level_set_split(delta0(p), -1.0), NonpositiveEpsilon);
    }

    SUBCASE("norm bounds recomputed directly at p=31") {
        const Prime p(31);
        const double eps = std::pow(31.0, -0.1);
        const GridFunction f = random_pm1_fn(p, 23, 0);
        const LevelSplit split = level_set_split(f, eps);
        const double l2 = norm_probability(f, 2.0);
        CHECK(norm_counting(split.g, 1.0) <= eps * std::sqrt(31.0) * l2 + 1e-9);
        CHECK(norm_counting(split.h, 4.0) <=
              std::pow(eps, -0.5) * std::pow(31.0, -0.25) * l2 + 1e-9);
    }

    SUBCASE("split reconstructs the function") {
        for (const std::uint32_t q : {11u, 31u}) {
            const Prime p(q);
            for (std::uint64_t trial = 0; trial < 20; ++trial) {
                const GridFunction f = random_pm1_fn(p, 29, trial);
                const LevelSplit split = level_set_split(f, 0.7);
                // supports are disjoint and g + h is the full spectrum
                const Spectrum full = dft(f);
                for (std::uint32_t xi = 0; xi < q; ++xi) {
                    const auto g = split.g.coefficients[xi];
                    const auto h = split.h.coefficients[xi];
                    CHECK((std::abs(g) == 0.0 || std::abs(h) == 0.0));
                    CHECK(std::abs(g + h - full.coefficients[xi]) < 1e-12);
                }
                const GridFunction gb = inverse_dft(split.g);
                const GridFunction hb = inverse_dft(split.h);
                double err = 0.0;
                for (std::uint32_t x = 0; x < q; ++x) {
                    err = std::max(err,
                                   std::abs(gb.values[x] + hb.values[x] - f.values[x]));
                }
                CHECK(err < 1e-9);
            }
        }
    }
}

TEST_CASE("grid csv round trip and validation") {
    const Prime p(5);
    GridFunction f(p);
    for (std::uint32_t x = 0; x < 5; ++x) f.values[x] = {x * 0.5, -1.25 * x};

    std::stringstream s;
    write_grid_csv(s, f);
    const GridFunction back = read_grid_csv(s, p);
    CHECK(max_err(f.values, back.values) == 0.0);

    SUBCASE("missing rows are an error") {
        std::stringstream bad("index,re,im\n0,1,0\n1,1,0\n");
        CHECK_THROWS_AS(read_grid_csv(bad, p), FileFormatError);
    }
    SUBCASE("missing header is an error") {
        std::stringstream bad("0,1,0\n1,1,0\n2,1,0\n3,1,0\n4,1,0\n");
        CHECK_THROWS_AS(read_grid_csv(bad, p), FileFormatError);
    }
    SUBCASE("duplicate index is an error") {
        std::stringstream bad("index,re,im\n0,1,0\n0,1,0\n2,1,0\n3,1,0\n4,1,0\n");
        CHECK_THROWS_AS(read_grid_csv(bad, p), FileFormatError);
    }
    SUBCASE("out of range index is an error") {
        std::stringstream bad("index,re,im\n0,1,0\n1,1,0\n2,1,0\n3,1,0\n9,1,0\n");
        CHECK_THROWS_AS(read_grid_csv(bad, p), FileFormatError);
    }
}
