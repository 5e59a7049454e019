#include "rfprog/progression.hpp"

#include <cmath>
#include <limits>

#include "rfprog/summation.hpp"

namespace rfprog {

PairTables PairTables::build(const RationalFunction& A, const RationalFunction& B, Prime p) {
    PairTables t{p, tabulate_mod_p(A, p), tabulate_mod_p(B, p), {}, 0};
    for (std::uint32_t y = 0; y < p.value(); ++y) {
        if (t.first.pole[y] || t.second.pole[y]) {
            ++t.excluded;
        } else {
            t.non_pole.push_back(y);
        }
    }
    return t;
}

std::complex<double> lambda_counting(const PairTables& t, const GridFunction& f0,
                                     const GridFunction& f1, const GridFunction& f2) {
    const std::uint32_t p = t.prime.value();
    if (f0.prime != t.prime || f1.prime != t.prime || f2.prime != t.prime) {
        throw PrimeMismatch("lambda_counting: prime mismatch");
    }
    ComplexCompensatedSum total;
    for (const std::uint32_t y : t.non_pole) {
        const std::uint32_t a = t.first.values[y];
        const std::uint32_t b = t.second.values[y];
        std::uint32_t xa = a;  // (x + F(y)) mod p
        std::uint32_t xb = b;  // (x + G(y)) mod p
        ComplexCompensatedSum row;
        for (std::uint32_t x = 0; x < p; ++x) {
            row.add(f0.values[x] * f1.values[xa] * f2.values[xb]);
            if (++xa == p) xa = 0;
            if (++xb == p) xb = 0;
        }
        total.add(row.value());
    }
    const double scale = 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    return total.value() * scale;
}

std::complex<double> lambda_counting(const RationalFunction& F, const RationalFunction& G,
                                     const GridFunction& f0, const GridFunction& f1,
                                     const GridFunction& f2) {
    return lambda_counting(PairTables::build(F, G, f0.prime), f0, f1, f2);
}

std::int64_t count_progressions_in_set(const RationalFunction& F, const RationalFunction& G,
                                       const std::vector<std::uint8_t>& member, Prime p) {
    if (member.size() != p.value()) {
        throw PrimeMismatch("count_progressions_in_set: mask length != p");
    }
    const PairTables t = PairTables::build(F, G, p);
    const std::uint32_t n = p.value();
    std::int64_t count = 0;
    for (const std::uint32_t y : t.non_pole) {
        const std::uint32_t a = t.first.values[y];
        const std::uint32_t b = t.second.values[y];
        std::uint32_t xa = a, xb = b;
        for (std::uint32_t x = 0; x < n; ++x) {
            count += member[x] & member[xa] & member[xb];
            if (++xa == n) xa = 0;
            if (++xb == n) xb = 0;
        }
    }
    return count;
}

KernelTable kernel_table(const RationalFunction& F, const RationalFunction& G, Prime p) {
    const PairTables t = PairTables::build(F, G, p);
    const std::uint32_t n = p.value();
    const CharacterTable chars(p);
    const std::complex<double>* e = chars.data();
    KernelTable k{p, t.excluded, std::vector<std::complex<double>>(
                                     static_cast<std::size_t>(n) * n)};
    const double inv_p = 1.0 / n;
    for (std::uint32_t n1 = 0; n1 < n; ++n1) {
        for (std::uint32_t n2 = 0; n2 < n; ++n2) {
            ComplexCompensatedSum acc;
            for (const std::uint32_t y : t.non_pole) {
                const std::uint64_t phase =
                    (static_cast<std::uint64_t>(n1) * t.first.values[y] +
                     static_cast<std::uint64_t>(n2) * t.second.values[y]) % n;
                acc.add(e[phase]);
            }
            k.entries[static_cast<std::size_t>(n1) * n + n2] = acc.value() * inv_p;
        }
    }
    return k;
}

TwistedResult twisted_two_term(const RationalFunction& F, const RationalFunction& R,
                               const GridFunction& f0, const GridFunction& f1,
                               const FieldElement& xi) {
    if (!check_linear_independence(F, R)) {
        throw DependentInput("{1, F, R} are linearly dependent over Q");
    }
    const Prime p = f0.prime;
    if (f1.prime != p || xi.modulus != p) {
        throw PrimeMismatch("twisted_two_term: prime mismatch");
    }
    const std::uint32_t n = p.value();
    const PairTables t = PairTables::build(F, R, p);
    const CharacterTable chars(p);
    const std::complex<double>* e = chars.data();

    // corr[s] = sum_x f0(x) f1(x + s); then the double sum collapses to
    // sum over y of e_p(xi R(y)) corr[F(y)].
    std::vector<std::complex<double>> corr(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        ComplexCompensatedSum acc;
        std::uint32_t xs = s;
        for (std::uint32_t x = 0; x < n; ++x) {
            acc.add(f0.values[x] * f1.values[xs]);
            if (++xs == n) xs = 0;
        }
        corr[s] = acc.value();
    }
    ComplexCompensatedSum total;
    for (const std::uint32_t y : t.non_pole) {
        const std::uint64_t phase =
            static_cast<std::uint64_t>(xi.value) * t.second.values[y] % n;
        total.add(e[phase] * corr[t.first.values[y]]);
    }
    const double inv_p2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    const std::complex<double> value = total.value() * inv_p2;

    std::complex<double> mean0 = 0.0, mean1 = 0.0;
    {
        ComplexCompensatedSum a0, a1;
        for (std::uint32_t x = 0; x < n; ++x) {
            a0.add(f0.values[x]);
            a1.add(f1.values[x]);
        }
        mean0 = a0.value() / static_cast<double>(n);
        mean1 = a1.value() / static_cast<double>(n);
    }
    const std::complex<double> main = (xi.value == 0) ? mean0 * mean1 : 0.0;
    const double norms = norm_probability(f0, 2.0) * norm_probability(f1, 2.0);
    const double err = std::abs(value - main);
    const double stat = norms > 0.0 ? err * std::sqrt(static_cast<double>(n)) / norms : 0.0;
    return {value, stat};
}

GridFunction dual_function(const RationalFunction& F, const RationalFunction& G,
                           const GridFunction& f1, const GridFunction& f2) {
    const Prime p = f1.prime;
    if (f2.prime != p) throw PrimeMismatch("dual_function: prime mismatch");
    const std::uint32_t n = p.value();
    const PairTables t = PairTables::build(F, G, p);
    GridFunction d(p);
    const double inv_p = 1.0 / n;
    for (std::uint32_t x = 0; x < n; ++x) {
        ComplexCompensatedSum acc;
        for (const std::uint32_t y : t.non_pole) {
            const std::uint32_t xa = x + t.first.values[y] >= n
                                         ? x + t.first.values[y] - n
                                         : x + t.first.values[y];
            const std::uint32_t xb = x + t.second.values[y] >= n
                                         ? x + t.second.values[y] - n
                                         : x + t.second.values[y];
            acc.add(f1.values[xa] * f2.values[xb]);
        }
        d.values[x] = acc.value() * inv_p;
    }
    return d;
}

PetReport verify_pet_inequality(const RationalFunction& F, const RationalFunction& G,
                                const GridFunction& f0, const GridFunction& f1,
                                const GridFunction& f2, std::int64_t y_count) {
    const double p = static_cast<double>(f0.prime.value());
    const double lhs = std::abs(lambda_counting(F, G, f0, f1, f2));
    const Spectrum s0 = dft(f0);
    const double rhs = std::sqrt(norm_probability(f0, 2.0)) *
                       std::sqrt(norm_counting(s0, 4.0)) * norm_probability(f1, 2.0) *
                       norm_probability(f2, 2.0) *
                       std::pow(static_cast<double>(y_count) / (p * p * p), 0.125);
    double ratio;
    if (rhs > 0.0) {
        ratio = lhs / rhs;
    } else {
        ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return {lhs, rhs, y_count, ratio};
}

}  // namespace rfprog
