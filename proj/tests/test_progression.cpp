#include <doctest.h>

#include <cmath>

#include "rfprog/harness.hpp"
#include "rfprog/progression.hpp"
#include "rfprog/rng.hpp"

using namespace rfprog;

namespace {

RationalFunction rf(const char* text) { return parse_rational_function(text); }

GridFunction ones(Prime p) {
    GridFunction f(p);
    for (auto& v : f.values) v = 1.0;
    return f;
}

GridFunction indicator(Prime p, std::initializer_list<std::uint32_t> xs) {
    GridFunction f(p);
    for (const std::uint32_t x : xs) f.values[x] = 1.0;
    return f;
}

// Pinned |Y(F_p)| for F=t, G=t^2 (independent enumeration oracle).
constexpr std::int64_t kY5_t_t2 = 409;
constexpr std::int64_t kY11_t_t2 = 4861;

}  // namespace

TEST_CASE("lambda counting examples") {
    SUBCASE("all-ones, pole-free pair") {
        const Prime p(7);
        const auto v = lambda_counting(rf("t"), rf("t^2"), ones(p), ones(p), ones(p));
        CHECK(std::abs(v - 1.0) < 1e-12);
    }
    SUBCASE("all-ones with one pole excluded") {
        const Prime p(7);
        const auto v = lambda_counting(rf("1/t"), rf("1/t^2"), ones(p), ones(p), ones(p));
        CHECK(std::abs(v - 6.0 / 7.0) < 1e-12);
    }
    SUBCASE("point mass contributes a single pair") {
        const Prime p(5);
        const GridFunction d = indicator(p, {0});
        const auto v = lambda_counting(rf("t"), rf("t^2"), d, d, d);
        CHECK(std::abs(v - 1.0 / 25.0) < 1e-12);
    }
    SUBCASE("prime mismatch is rejected") {
        const GridFunction a = ones(Prime(5));
        const GridFunction b = ones(Prime(7));
        CHECK_THROWS_AS(lambda_counting(rf("t"), rf("t^2"), a, a, b), PrimeMismatch);
    }
}

TEST_CASE("exact progression counts") {
    SUBCASE("full field") {
        std::vector<std::uint8_t> all(7, 1);
        CHECK(count_progressions_in_set(rf("t"), rf("t^2"), all, Prime(7)) == 49);
    }
    SUBCASE("empty set") {
        std::vector<std::uint8_t> none(7, 0);
        CHECK(count_progressions_in_set(rf("t"), rf("t^2"), none, Prime(7)) == 0);
    }
    SUBCASE("singleton") {
        std::vector<std::uint8_t> single(5, 0);
        single[0] = 1;
        CHECK(count_progressions_in_set(rf("t"), rf("t^2"), single, Prime(5)) == 1);
    }
    SUBCASE("p^2 Lambda* equals the count on random sets") {
        const Prime p(31);
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            CounterRng rng(3, 31, trial);
            std::vector<std::uint8_t> mask(31);
            GridFunction ind(p);
            for (std::uint32_t x = 0; x < 31; ++x) {
                mask[x] = rng.next_unit() < 0.4 ? 1 : 0;
                ind.values[x] = mask[x];
            }
            const auto lam = lambda_counting(rf("t"), rf("t^2"), ind, ind, ind);
            const auto count = count_progressions_in_set(rf("t"), rf("t^2"), mask, p);
            CHECK(std::abs(lam * (31.0 * 31.0) - static_cast<double>(count)) < 1e-6);
        }
    }
}

TEST_CASE("kernel table") {
    const Prime p(5);
    const KernelTable k = kernel_table(rf("t"), rf("t^2"), p);
    CHECK(k.excluded_count == 0);
    // K(0,0) = (p - excluded)/p exactly
    CHECK(k.at(0, 0) == std::complex<double>(1.0, 0.0));
    // full character sum vanishes
    CHECK(std::abs(k.at(1, 0)) < 1e-12);
    // quadratic character sum has modulus p^{-1/2}
    CHECK(std::abs(std::abs(k.at(0, 1)) - std::pow(5.0, -0.5)) < 1e-12);

    SUBCASE("entries bounded by 1, conjugate symmetry") {
        for (std::uint32_t n1 = 0; n1 < 5; ++n1) {
            for (std::uint32_t n2 = 0; n2 < 5; ++n2) {
                CHECK(std::abs(k.at(n1, n2)) <= 1.0 + 1e-12);
                const auto mirrored = k.at((5 - n1) % 5, (5 - n2) % 5);
                CHECK(std::abs(mirrored - std::conj(k.at(n1, n2))) < 1e-12);
            }
        }
    }

    SUBCASE("pole exclusion shows up in K(0,0)") {
        const KernelTable kp = kernel_table(rf("1/t"), rf("1/t^2"), Prime(7));
        CHECK(kp.excluded_count == 1);
        CHECK(kp.at(0, 0) == std::complex<double>(6.0 / 7.0, 0.0));
    }
}

TEST_CASE("twisted two-term operator") {
    const Prime p(5);
    SUBCASE("xi = 0 gives the untwisted main term") {
        const auto r = twisted_two_term(rf("t"), rf("t^2"), ones(p), ones(p),
                                        FieldElement(0, p));
        CHECK(std::abs(r.value - 1.0) < 1e-12);
        CHECK(r.normalized_error < 1e-12);
    }
    SUBCASE("xi = 1 reduces to the quadratic character sum") {
        const auto r = twisted_two_term(rf("t"), rf("t^2"), ones(p), ones(p),
                                        FieldElement(1, p));
        CHECK(std::abs(std::abs(r.value) - std::pow(5.0, -0.5)) < 1e-12);
        // the normalized statistic saturates at exactly 1 here
        CHECK(r.normalized_error == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("zero input") {
        const auto r = twisted_two_term(rf("t"), rf("t^2"), GridFunction(p), ones(p),
                                        FieldElement(1, p));
        CHECK(std::abs(r.value) == 0.0);
        CHECK(r.normalized_error == 0.0);
    }
    SUBCASE("dependent pair is rejected") {
        CHECK_THROWS_AS(twisted_two_term(rf("t"), rf("2t+3"), ones(p), ones(p),
                                         FieldElement(1, p)),
                        DependentInput);
    }
}

TEST_CASE("dual function") {
    SUBCASE("all ones") {
        const Prime p(7);
        const GridFunction d = dual_function(rf("t"), rf("t^2"), ones(p), ones(p));
        for (const auto& v : d.values) CHECK(std::abs(v - 1.0) < 1e-12);
    }
    SUBCASE("mean-zero second factor gives a mean-zero dual") {
        const Prime p(7);
        GridFunction f2(p);
        for (std::uint32_t x = 0; x < 7; ++x) f2.values[x] = (x % 2 == 0) ? 3.0 : -4.0;
        std::complex<double> mu = 0.0;
        for (const auto& v : f2.values) mu += v;
        for (auto& v : f2.values) v -= mu / 7.0;
        const GridFunction d = dual_function(rf("t"), rf("t^2"), ones(p), f2);
        std::complex<double> mean_d = 0.0;
        for (const auto& v : d.values) mean_d += v;
        CHECK(std::abs(mean_d / 7.0) < 1e-12);
    }
    SUBCASE("duality identity on random triples") {
        for (const std::uint32_t q : {5u, 11u, 31u}) {
            const Prime p(q);
            for (std::uint64_t trial = 0; trial < 30; ++trial) {
                CounterRng rng(31, q, trial);
                const GridFunction f0 = random_pm1(p, rng);
                const GridFunction f1 = random_pm1(p, rng);
                const GridFunction f2 = random_pm1(p, rng);
                const GridFunction d = dual_function(rf("t"), rf("t^2"), f1, f2);
                std::complex<double> pairing = 0.0;
                for (std::uint32_t x = 0; x < q; ++x) pairing += f0.values[x] * d.values[x];
                pairing /= static_cast<double>(q);
                const auto lam = lambda_counting(rf("t"), rf("t^2"), f0, f1, f2);
                CHECK(std::abs(pairing - lam) <= 1e-9 * std::max(1.0, std::abs(lam)));
            }
        }
    }
}

TEST_CASE("counting-operator bound") {
    SUBCASE("all-ones saturating direction") {
        const Prime p(5);
        const auto r = verify_pet_inequality(rf("t"), rf("t^2"), ones(p), ones(p), ones(p),
                                             kY5_t_t2);
        CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.rhs == doctest::Approx(std::pow(409.0 / 125.0, 0.125)).epsilon(1e-12));
        CHECK(r.ratio <= 1.0 + 1e-9);
    }
    SUBCASE("zero f0") {
        const Prime p(5);
        const auto r = verify_pet_inequality(rf("t"), rf("t^2"), GridFunction(p), ones(p),
                                             ones(p), kY5_t_t2);
        CHECK(r.lhs == 0.0);
        CHECK(r.ratio == 0.0);
    }
    SUBCASE("200 random sign triples at p=11") {
        const Prime p(11);
        for (std::uint64_t trial = 0; trial < 200; ++trial) {
            CounterRng rng(37, 11, trial);
            const GridFunction f0 = random_pm1(p, rng);
            const GridFunction f1 = random_pm1(p, rng);
            const GridFunction f2 = random_pm1(p, rng);
            const auto r =
                verify_pet_inequality(rf("t"), rf("t^2"), f0, f1, f2, kY11_t_t2);
            CHECK(r.ratio <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("base-case statistic stays bounded across primes") {
    // sup over xi and random pairs of sqrt(p)|error|/(||f0|| ||f1||) must
    // not double between p=31 and p=101
    const auto sweep = base_constant_sweep(rf("t"), rf("t^2"), {31, 61, 101}, 10, 99);
    const double at31 = sweep.max_statistic(31);
    const double at101 = sweep.max_statistic(101);
    CHECK(at31 > 0.0);
    CHECK(at101 <= 2.0 * at31);
}
